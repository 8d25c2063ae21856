use alloc::vec::Vec;

use super::{max_abs, Matrix};
use crate::{Error, Result};

const SYMMETRY_TOLERANCE: f64 = 1e-12;
const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a real symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `i` is the unit eigenvector for `values[i]`.
    pub vectors: Matrix,
}

impl SymmetricEigen {
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i)
    }
}

/// Cyclic Jacobi eigendecomposition.
///
/// Sweeps over all off-diagonal pairs until the off-diagonal Frobenius norm
/// drops below `1e-12·‖A‖_F`.
pub fn jacobi_eigh(a: &Matrix) -> Result<SymmetricEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    let n = a.rows();
    let scale = max_abs(a.as_slice().iter().copied());
    for i in 0..n {
        for j in i + 1..n {
            if libm::fabs(a[(i, j)] - a[(j, i)]) > SYMMETRY_TOLERANCE * scale {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }

    // work on the symmetrized copy so rounding in the input cannot leak in
    let mut m = Matrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    let mut v = Matrix::identity(n);
    let norm = m.frobenius_norm();
    let target = OFF_DIAGONAL_TOLERANCE * norm;
    let negligible = f64::EPSILON * 1e-2 * norm / (n.max(1) as f64);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if libm::fabs(apq) <= negligible {
                    continue;
                }
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |row, col| v[(row, order[col])]);
    Ok(SymmetricEigen { values, vectors })
}

fn off_diagonal_norm(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[(i, j)] * m[(i, j)];
            }
        }
    }
    libm::sqrt(sum)
}

/// Annihilates `m[p][q]` with a plane rotation and accumulates it into `v`.
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let n = m.rows();
    let apq = m[(p, q)];
    let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
    let t = libm::copysign(1.0, theta) / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        m[(k, p)] = new_kp;
        m[(p, k)] = new_kp;
        m[(k, q)] = new_kq;
        m[(q, k)] = new_kq;
    }
    m[(p, p)] -= t * apq;
    m[(q, q)] += t * apq;
    m[(p, q)] = 0.0;
    m[(q, p)] = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}
