use alloc::vec::Vec;

use super::Matrix;

/// Relative pivot size below which a matrix is treated as singular.
const PIVOT_FLOOR: f64 = 1e-14;

/// Solves `a·x = b` by Gaussian elimination with partial pivoting.
///
/// Returns `None` when a pivot vanishes relative to the largest entry of `a`,
/// or when the result is not finite.
pub fn solve_linear(a: &Matrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.rows();
    assert!(a.is_square() && b.len() == n, "solve_linear: dimension mismatch");

    let scale = super::max_abs(a.as_slice().iter().copied());
    if !(scale.is_finite() && scale > 0.0) {
        return None;
    }

    let mut m = a.clone();
    let mut x: Vec<f64> = b.to_vec();

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| libm::fabs(m[(i, col)]).total_cmp(&libm::fabs(m[(j, col)])))
            .unwrap();
        let pivot = m[(pivot_row, col)];
        if !(libm::fabs(pivot) > PIVOT_FLOOR * scale) {
            return None;
        }
        if pivot_row != col {
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(pivot_row, j)];
                m[(pivot_row, j)] = tmp;
            }
            x.swap(col, pivot_row);
        }
        for row in col + 1..n {
            let factor = m[(row, col)] / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in col..n {
                m[(row, j)] -= factor * m[(col, j)];
            }
            x[row] -= factor * x[col];
        }
    }

    for row in (0..n).rev() {
        let mut acc = x[row];
        for j in row + 1..n {
            acc -= m[(row, j)] * x[j];
        }
        x[row] = acc / m[(row, row)];
    }

    x.iter().all(|v| v.is_finite()).then_some(x)
}
