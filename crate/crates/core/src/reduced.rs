//! Energy-constrained parameterization and the solve path for `n ≠ m`.
//!
//! Writing
//!
//! ```text
//! k1 = Ω·sin θ + iρ·cos θ
//! k2 = Ω·cos θ − iρ·sin θ,    Ω = √(Ẽ + ρ²)
//! ```
//!
//! makes `k1² + k2² = Ω² − ρ² = Ẽ` real by construction. With `Ẽ` taken from
//! the CI spectrum only `(ρ, θ)` remain free.
//!
//! The truncated CI energy is slightly off, so the two residual equations
//! cannot both vanish at fixed `Ẽ`. The solve therefore runs in two stages:
//! Gauss–Newton on `(ρ, θ)` at the CI energy, then an unconstrained real
//! Newton solve on `(k1, k2)` started from that point.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::cimethod::energy_for_state;
use crate::numerics::{newton_solve_real, solve_linear, Matrix, NewtonConfig};
use crate::transcend::{jacobian, residual, verify_solution};
use crate::{Error, MomentumPair, Result, StateLabel, TranscendentalCase};

const GAUSS_NEWTON_ITERATIONS: usize = 60;
const GAUSS_NEWTON_HALVINGS: usize = 40;
const RESIDUAL_ACCEPT: f64 = 1e-10;
const REALITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedParams {
    /// Scaled energy `Ẽ`.
    pub scaled_energy: f64,
    pub rho: f64,
    pub theta: f64,
}

impl ReducedParams {
    /// `Ω = √(Ẽ + ρ²)`.
    pub fn omega(&self) -> Result<f64> {
        let sq = self.scaled_energy + self.rho * self.rho;
        if !(sq >= 0.0) {
            return Err(Error::InvalidReduction);
        }
        Ok(libm::sqrt(sq))
    }
}

pub fn params_to_momenta(p: &ReducedParams) -> Result<(Complex64, Complex64)> {
    let omega = p.omega()?;
    let (sin, cos) = (libm::sin(p.theta), libm::cos(p.theta));
    Ok((
        Complex64::new(omega * sin, p.rho * cos),
        Complex64::new(omega * cos, -p.rho * sin),
    ))
}

/// Result of [`solve_nonidentical_with`], with stage diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct NonIdenticalSolve {
    pub pair: MomentumPair,
    /// CI energy used for the constrained stage.
    pub ci_energy: f64,
    /// End point of the constrained stage.
    pub constrained: ReducedParams,
    pub newton_iterations: usize,
    pub residual_norm: f64,
}

pub fn solve_nonidentical(u: f64, label: StateLabel, n_max: u32) -> Result<MomentumPair> {
    solve_nonidentical_with(u, label, n_max, &NewtonConfig::default()).map(|s| s.pair)
}

pub fn solve_nonidentical_with(
    u: f64,
    label: StateLabel,
    n_max: u32,
    cfg: &NewtonConfig,
) -> Result<NonIdenticalSolve> {
    if label.is_identical() {
        return Err(Error::WrongSolvePath { n: label.n(), m: label.m() });
    }
    let case = TranscendentalCase::for_label(u, label)?;
    let (n, m) = (label.n() as f64, label.m() as f64);

    if u == 0.0 {
        let pair = MomentumPair {
            k1: Complex64::new(n * PI, 0.0),
            k2: Complex64::new(m * PI, 0.0),
            case,
            label,
        }
        .canonicalized();
        let constrained = ReducedParams { scaled_energy: pair.energy(), rho: 0.0, theta: libm::atan2(m, n) };
        return Ok(NonIdenticalSolve { pair, ci_energy: pair.energy(), constrained, newton_iterations: 0, residual_norm: 0.0 });
    }

    let ci_energy = energy_for_state(u, label, n_max)?;
    let seed = ReducedParams { scaled_energy: ci_energy, rho: 0.0, theta: libm::atan2(m * PI, n * PI) };
    let constrained = constrained_stage(&case, seed)?;

    let (k1, k2) = params_to_momenta(&constrained)?;
    let start = [k1.re, k2.re];
    let report = newton_solve_real(
        |x| {
            let r = residual(&case, Complex64::new(x[0], 0.0), Complex64::new(x[1], 0.0));
            vec![r[0].re, r[1].re]
        },
        |x| {
            let j = jacobian(&case, Complex64::new(x[0], 0.0), Complex64::new(x[1], 0.0));
            Matrix::from_fn(2, 2, |r, c| j[r][c].re)
        },
        &start,
        cfg,
    )?;

    let pair = MomentumPair {
        k1: Complex64::new(report.solution[0], 0.0),
        k2: Complex64::new(report.solution[1], 0.0),
        case,
        label,
    }
    .canonicalized();

    let residual_norm = verify_solution(&pair);
    if !(residual_norm <= RESIDUAL_ACCEPT) {
        return Err(Error::SolutionRejected(format!("residual {residual_norm:e} for state {label}")));
    }
    if !pair.is_real(REALITY_TOLERANCE) {
        return Err(Error::SolutionRejected(format!("non-real momenta for state {label}")));
    }
    Ok(NonIdenticalSolve { pair, ci_energy, constrained, newton_iterations: report.iterations, residual_norm })
}

/// Stacked real residual `[Re f1, Re f2, Im f1, Im f2]` at fixed `Ẽ`.
fn stacked_residual(case: &TranscendentalCase, p: &ReducedParams) -> Result<[f64; 4]> {
    let (k1, k2) = params_to_momenta(p)?;
    let r = residual(case, k1, k2);
    Ok([r[0].re, r[1].re, r[0].im, r[1].im])
}

fn objective(r: &[f64; 4]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

/// Gauss–Newton on `(ρ, θ)` minimizing `‖F‖²` at fixed `Ẽ`.
fn constrained_stage(case: &TranscendentalCase, seed: ReducedParams) -> Result<ReducedParams> {
    let mut p = seed;
    let mut r = stacked_residual(case, &p)?;
    let mut value = objective(&r);
    if !value.is_finite() {
        return Err(Error::ReductionFailed("non-finite residual at the seed"));
    }

    for _ in 0..GAUSS_NEWTON_ITERATIONS {
        let jac = reduced_jacobian(case, &p)?;
        // normal equations JᵀJ·δ = −Jᵀr
        let mut normal = Matrix::zeros(2, 2);
        let mut rhs = [0.0; 2];
        for a in 0..2 {
            for b in 0..2 {
                normal[(a, b)] = (0..4).map(|i| jac[i][a] * jac[i][b]).sum();
            }
            rhs[a] = -(0..4).map(|i| jac[i][a] * r[i]).sum::<f64>();
        }
        let step = solve_linear(&normal, &rhs).ok_or(Error::ReductionFailed("singular normal equations"))?;

        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..GAUSS_NEWTON_HALVINGS {
            let trial = ReducedParams {
                scaled_energy: p.scaled_energy,
                rho: libm::fabs(p.rho + lambda * step[0]),
                theta: p.theta + lambda * step[1],
            };
            let trial_r = stacked_residual(case, &trial)?;
            let trial_value = objective(&trial_r);
            if trial_value.is_finite() && trial_value < value {
                accepted = Some((trial, trial_r, trial_value));
                break;
            }
            lambda *= 0.5;
        }
        let Some((trial, trial_r, trial_value)) = accepted else {
            // no descent direction left: constrained minimum reached
            break;
        };
        let moved = libm::fabs(trial.rho - p.rho) + libm::fabs(trial.theta - p.theta);
        p = trial;
        r = trial_r;
        value = trial_value;
        if moved <= 1e-14 * (1.0 + libm::fabs(p.theta)) {
            break;
        }
    }

    if !(p.rho.is_finite() && p.theta.is_finite()) {
        return Err(Error::ReductionFailed("non-finite parameters"));
    }
    Ok(p)
}

/// `∂[Re f1, Re f2, Im f1, Im f2]/∂(ρ, θ)` as four rows of two.
fn reduced_jacobian(case: &TranscendentalCase, p: &ReducedParams) -> Result<Vec<[f64; 2]>> {
    let omega = p.omega()?;
    let (k1, k2) = params_to_momenta(p)?;
    let (sin, cos) = (libm::sin(p.theta), libm::cos(p.theta));
    let ratio = if omega > 0.0 { p.rho / omega } else { 0.0 };
    let dk_drho = [Complex64::new(ratio * sin, cos), Complex64::new(ratio * cos, -sin)];
    let dk_dtheta = [Complex64::new(omega * cos, -p.rho * sin), Complex64::new(-omega * sin, -p.rho * cos)];
    let j = jacobian(case, k1, k2);
    let df = |dk: &[Complex64; 2]| [j[0][0] * dk[0] + j[0][1] * dk[1], j[1][0] * dk[0] + j[1][1] * dk[1]];
    let (dr, dt) = (df(&dk_drho), df(&dk_dtheta));
    Ok(vec![
        [dr[0].re, dt[0].re],
        [dr[1].re, dt[1].re],
        [dr[0].im, dt[0].im],
        [dr[1].im, dt[1].im],
    ])
}
