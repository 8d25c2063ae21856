//! Self-contained numerical kernels: damped Newton iteration, cyclic Jacobi
//! eigendecomposition and composite Simpson quadrature.

mod jacobi;
mod linsolve;
mod matrix;
mod newton;
mod simpson;

pub use jacobi::{jacobi_eigh, SymmetricEigen};
pub use linsolve::solve_linear;
pub use matrix::Matrix;
pub use newton::{newton_solve, newton_solve_real, NewtonConfig, NewtonReport};
pub use simpson::{simpson_1d, simpson_2d, simpson_weights, Rectangle};

pub(crate) fn max_abs<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().fold(0.0, |acc, v| {
        let a = libm::fabs(v);
        if a > acc || a.is_nan() {
            a
        } else {
            acc
        }
    })
}
