use alloc::vec::Vec;

use num_complex::Complex64;

use super::{max_abs, solve_linear, Matrix};
use crate::{Error, Result};

/// Settings for [`newton_solve`] and [`newton_solve_real`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonConfig {
    pub max_iterations: usize,
    /// Convergence threshold on the infinity norm of the residual.
    pub residual_tolerance: f64,
    /// Relative step size below which the iteration is considered stalled.
    pub step_tolerance: f64,
    /// Halve the step until it passes a monotonicity test.
    pub damping_enabled: bool,
    pub max_halvings: usize,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            residual_tolerance: 1e-12,
            step_tolerance: 1e-14,
            damping_enabled: true,
            max_halvings: 20,
        }
    }
}

impl NewtonConfig {
    pub fn with_residual_tolerance(mut self, tol: f64) -> Self {
        self.residual_tolerance = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1"));
        }
        if !(self.residual_tolerance > 0.0 && self.residual_tolerance.is_finite()) {
            return Err(Error::InvalidConfig("residual_tolerance must be positive"));
        }
        if !(self.step_tolerance > 0.0 && self.step_tolerance.is_finite()) {
            return Err(Error::InvalidConfig("step_tolerance must be positive"));
        }
        Ok(())
    }
}

/// Outcome of a converged Newton iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonReport<T> {
    pub solution: Vec<T>,
    pub iterations: usize,
    pub final_residual_norm: f64,
    pub converged: bool,
}

/// Damped Newton iteration on a real system `F(x) = 0`.
///
/// The Jacobian is solved by Gaussian elimination with partial pivoting. A
/// budget overrun yields [`Error::NoConvergence`] carrying the iterate with
/// the smallest residual seen.
pub fn newton_solve_real<R, J>(
    residual_fn: R,
    jacobian_fn: J,
    x0: &[f64],
    cfg: &NewtonConfig,
) -> Result<NewtonReport<f64>>
where
    R: Fn(&[f64]) -> Vec<f64>,
    J: Fn(&[f64]) -> Matrix,
{
    cfg.validate()?;
    let dim = x0.len();
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("newton initial point"));
    }

    let mut x = x0.to_vec();
    let mut f = residual_fn(&x);
    if f.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: f.len() });
    }
    let mut norm = max_abs(f.iter().copied());
    if !norm.is_finite() {
        return Err(Error::NonFinite("residual at initial point"));
    }
    let mut best = (norm, x.clone());

    let no_convergence = |iterations: usize, best: (f64, Vec<f64>)| Error::NoConvergence {
        iterations,
        residual_norm: best.0,
        best_iterate: best.1.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
    };

    for iteration in 0..cfg.max_iterations {
        if norm <= cfg.residual_tolerance {
            return Ok(NewtonReport {
                solution: x,
                iterations: iteration,
                final_residual_norm: norm,
                converged: true,
            });
        }

        let jac = jacobian_fn(&x);
        if jac.rows() != dim || jac.cols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: jac.rows() });
        }
        let rhs: Vec<f64> = f.iter().map(|v| -v).collect();
        let step = solve_linear(&jac, &rhs).ok_or(Error::SingularJacobian { iteration })?;

        // Accept on either a drop in ‖F‖₂ or the affine-invariant test
        // ‖J⁻¹F(x + λΔx)‖ ≤ (1 − λ/4)‖Δx‖. The second matters where F is badly
        // scaled, e.g. near a double zero where ‖F‖ is small far from the root.
        let merit = euclidean(&f);
        let step_norm = euclidean(&step);
        let mut lambda = 1.0;
        let mut halvings = 0;
        let (trial_x, trial_f, trial_norm) = loop {
            let trial_x: Vec<f64> = x.iter().zip(&step).map(|(a, d)| a + lambda * d).collect();
            let trial_f = residual_fn(&trial_x);
            let trial_norm = max_abs(trial_f.iter().copied());
            let improved = trial_norm.is_finite()
                && (euclidean(&trial_f) < merit || {
                    let rhs: Vec<f64> = trial_f.iter().map(|v| -v).collect();
                    solve_linear(&jac, &rhs).is_some_and(|s| euclidean(&s) <= (1.0 - lambda / 4.0) * step_norm)
                });
            if !cfg.damping_enabled || improved || halvings >= cfg.max_halvings {
                break (trial_x, trial_f, trial_norm);
            }
            lambda *= 0.5;
            halvings += 1;
        };
        if !trial_norm.is_finite() {
            return Err(no_convergence(iteration + 1, best));
        }

        let step_size = lambda * max_abs(step.iter().copied());
        let scale = 1.0 + max_abs(x.iter().copied());
        x = trial_x;
        f = trial_f;
        norm = trial_norm;
        if norm < best.0 {
            best = (norm, x.clone());
        }

        if norm > cfg.residual_tolerance && step_size <= cfg.step_tolerance * scale {
            // stalled: further iterations cannot move the iterate
            return Err(no_convergence(iteration + 1, best));
        }
    }

    if norm <= cfg.residual_tolerance {
        return Ok(NewtonReport {
            solution: x,
            iterations: cfg.max_iterations,
            final_residual_norm: norm,
            converged: true,
        });
    }
    Err(no_convergence(cfg.max_iterations, best))
}

fn euclidean(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|a| a * a).sum())
}

/// Newton iteration for an analytic complex system `F(z) = 0`.
///
/// Runs on the stacked real system `[Re z; Im z]`. For analytic `F` with
/// complex Jacobian `J = A + iB` the real Jacobian is `[[A, -B], [B, A]]`.
pub fn newton_solve<R, J>(
    residual_fn: R,
    jacobian_fn: J,
    z0: &[Complex64],
    cfg: &NewtonConfig,
) -> Result<NewtonReport<Complex64>>
where
    R: Fn(&[Complex64]) -> Vec<Complex64>,
    J: Fn(&[Complex64]) -> Matrix<Complex64>,
{
    let dim = z0.len();
    let unstack = |x: &[f64]| -> Vec<Complex64> {
        (0..dim).map(|i| Complex64::new(x[i], x[dim + i])).collect()
    };
    let stack = |z: &[Complex64]| -> Vec<f64> {
        z.iter().map(|c| c.re).chain(z.iter().map(|c| c.im)).collect()
    };

    let real_residual = |x: &[f64]| stack(&residual_fn(&unstack(x)));
    let real_jacobian = |x: &[f64]| {
        let jac = jacobian_fn(&unstack(x));
        Matrix::from_fn(2 * dim, 2 * dim, |i, j| {
            let c = jac[(i % dim, j % dim)];
            match (i < dim, j < dim) {
                (true, true) | (false, false) => c.re,
                (true, false) => -c.im,
                (false, true) => c.im,
            }
        })
    };

    let report = newton_solve_real(real_residual, real_jacobian, &stack(z0), cfg).map_err(|e| match e {
        Error::NoConvergence { iterations, residual_norm, best_iterate } => {
            let stacked: Vec<f64> = best_iterate.iter().map(|c| c.re).collect();
            Error::NoConvergence { iterations, residual_norm, best_iterate: unstack(&stacked) }
        }
        other => other,
    })?;

    Ok(NewtonReport {
        solution: unstack(&report.solution),
        iterations: report.iterations,
        final_residual_norm: report.final_residual_norm,
        converged: report.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn real_quadratic_root() {
        let report = newton_solve_real(
            |x| vec![x[0] * x[0] - 4.0],
            |x| Matrix::from_row_major(1, 1, vec![2.0 * x[0]]),
            &[3.0],
            &NewtonConfig::default(),
        )
        .unwrap();
        assert!(report.converged);
        assert!((report.solution[0] - 2.0).abs() < 1e-12);
        assert!(report.final_residual_norm <= 1e-12);
    }

    #[test]
    fn complex_unit_root() {
        let report = newton_solve(
            |z| vec![z[0] * z[0] + 1.0],
            |z| Matrix::from_row_major(1, 1, vec![z[0] * 2.0]),
            &[Complex64::new(0.0, 0.5)],
            &NewtonConfig::default(),
        )
        .unwrap();
        assert!((report.solution[0] - Complex64::i()).norm() < 1e-12);
    }

    #[test]
    fn singular_jacobian_is_reported() {
        let err = newton_solve_real(
            |x| vec![x[0] * x[0] + 1.0],
            |x| Matrix::from_row_major(1, 1, vec![2.0 * x[0]]),
            &[0.0],
            &NewtonConfig::default(),
        )
        .unwrap_err();
        assert_eq!(err, Error::SingularJacobian { iteration: 0 });
    }

    #[test]
    fn budget_exhaustion_carries_best_iterate() {
        // x² + 1 has no real root; iterates wander forever
        let cfg = NewtonConfig { max_iterations: 5, ..Default::default() };
        let err = newton_solve_real(
            |x| vec![x[0] * x[0] + 1.0],
            |x| Matrix::from_row_major(1, 1, vec![2.0 * x[0]]),
            &[0.3],
            &cfg,
        )
        .unwrap_err();
        match err {
            Error::NoConvergence { residual_norm, best_iterate, .. } => {
                assert_eq!(best_iterate.len(), 1);
                let x = best_iterate[0].re;
                assert!((x * x + 1.0 - residual_norm).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn damping_rescues_overshoot() {
        // atan overshoots from |x0| > 1.39 without a line search
        let cfg = NewtonConfig::default();
        let report = newton_solve_real(
            |x| vec![libm::atan(x[0])],
            |x| Matrix::from_row_major(1, 1, vec![1.0 / (1.0 + x[0] * x[0])]),
            &[3.0],
            &cfg,
        )
        .unwrap();
        assert!(report.solution[0].abs() < 1e-12);

        let undamped = NewtonConfig { damping_enabled: false, ..cfg };
        assert!(newton_solve_real(
            |x| vec![libm::atan(x[0])],
            |x| Matrix::from_row_major(1, 1, vec![1.0 / (1.0 + x[0] * x[0])]),
            &[3.0],
            &undamped,
        )
        .is_err());
    }

    #[test]
    fn invalid_config_rejected() {
        let cfg = NewtonConfig { max_iterations: 0, ..Default::default() };
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
        let cfg = NewtonConfig { residual_tolerance: 0.0, ..Default::default() };
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
    }
}
