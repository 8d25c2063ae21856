//! Front door for solving a state: picks the case and solve path from the
//! label, runs continuation in `U`, and validates every pair it returns.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::cimethod::DEFAULT_BASIS_CUTOFF;
use crate::numerics::{newton_solve, NewtonConfig};
use crate::perturb::{initial_guess, TRUST_RADIUS};
use crate::reduced::solve_nonidentical_with;
use crate::transcend::{jacobian_matrix, residual, verify_solution};
use crate::{Error, MomentumPair, Result, StateLabel, TranscendentalCase};

/// Residual norm every returned pair must meet.
pub const RESIDUAL_ACCEPT: f64 = 1e-10;
/// Bound on `|Im Ẽ|`, on `|k2 − conj(k1)|` for complex pairs, and on `|Im k|` for real ones.
pub const PAIR_TOLERANCE: f64 = 1e-9;
/// `U` increment used when continuing past the perturbative trust radius.
const CONTINUATION_STEP: f64 = 0.05;
/// A sweep step may move at most this many times the previous step's change.
const CONTINUITY_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveRequest {
    pub u: f64,
    pub label: StateLabel,
    pub newton: Option<NewtonConfig>,
    /// CI cutoff for the `n ≠ m` path.
    pub n_max: Option<u32>,
}

impl SolveRequest {
    pub fn new(u: f64, label: StateLabel) -> Self {
        Self { u, label, newton: None, n_max: None }
    }

    fn config(&self) -> NewtonConfig {
        self.newton.unwrap_or_default()
    }

    fn accept_tolerance(&self) -> f64 {
        RESIDUAL_ACCEPT.max(self.config().residual_tolerance)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOutcome {
    pub pair: MomentumPair,
    /// Newton iterations of the final solve.
    pub iterations: usize,
    pub residual_norm: f64,
}

pub fn solve_state(req: &SolveRequest) -> Result<MomentumPair> {
    solve_state_detailed(req).map(|o| o.pair)
}

pub fn solve_state_detailed(req: &SolveRequest) -> Result<SolveOutcome> {
    if !req.u.is_finite() {
        return Err(Error::NonFinite("interaction strength U"));
    }
    let cfg = req.config();
    cfg.validate()?;
    let label = req.label;

    if req.u == 0.0 {
        return Ok(SolveOutcome { pair: free_pair(label)?, iterations: 0, residual_norm: 0.0 });
    }

    if !label.is_identical() {
        let solved = solve_nonidentical_with(req.u, label, req.n_max.unwrap_or(DEFAULT_BASIS_CUTOFF), &cfg)?;
        let outcome = SolveOutcome {
            pair: solved.pair,
            iterations: solved.newton_iterations,
            residual_norm: solved.residual_norm,
        };
        validate(&outcome.pair, req.accept_tolerance())?;
        return Ok(outcome);
    }

    let case = TranscendentalCase::for_label(req.u, label)?;
    if libm::fabs(req.u) <= TRUST_RADIUS {
        let seed = initial_guess(label, req.u)?;
        return newton_from(case, label, seed, &cfg, req.accept_tolerance());
    }

    // natural continuation from inside the trust radius out to the target
    let direction = libm::copysign(1.0, req.u);
    let start_u = direction * TRUST_RADIUS / 2.0;
    let start_case = TranscendentalCase::for_label(start_u, label)?;
    let mut current = newton_from(start_case, label, initial_guess(label, start_u)?, &cfg, req.accept_tolerance())?;
    let span = libm::fabs(req.u - start_u);
    let steps = libm::ceil(span / CONTINUATION_STEP) as usize;
    for i in 1..=steps {
        let u = if i == steps { req.u } else { start_u + direction * CONTINUATION_STEP * i as f64 };
        let case = TranscendentalCase::for_label(u, label)?;
        current = newton_from(case, label, (current.pair.k1, current.pair.k2), &cfg, req.accept_tolerance())?;
    }
    Ok(current)
}

/// `(nπ, mπ)`: the exact roots at `U = 0`, where the `n = m` Jacobian is singular.
fn free_pair(label: StateLabel) -> Result<MomentumPair> {
    Ok(MomentumPair {
        k1: Complex64::new(label.n() as f64 * PI, 0.0),
        k2: Complex64::new(label.m() as f64 * PI, 0.0),
        case: TranscendentalCase::for_label(0.0, label)?,
        label,
    }
    .canonicalized())
}

fn newton_from(
    case: TranscendentalCase,
    label: StateLabel,
    seed: (Complex64, Complex64),
    cfg: &NewtonConfig,
    accept: f64,
) -> Result<SolveOutcome> {
    let report = newton_solve(
        |z| residual(&case, z[0], z[1]).to_vec(),
        |z| jacobian_matrix(&case, z[0], z[1]),
        &[seed.0, seed.1],
        cfg,
    )?;
    let pair = MomentumPair { k1: report.solution[0], k2: report.solution[1], case, label }.canonicalized();
    let residual_norm = validate(&pair, accept)?;
    Ok(SolveOutcome { pair, iterations: report.iterations, residual_norm })
}

/// Checks the residual and the real-energy structure of a pair.
fn validate(pair: &MomentumPair, accept: f64) -> Result<f64> {
    let norm = verify_solution(pair);
    if !(norm <= accept) {
        return Err(Error::SolutionRejected(format!("residual {norm:e} exceeds {accept:e}")));
    }
    let energy_im = libm::fabs(pair.scaled_energy().im);
    if energy_im > PAIR_TOLERANCE {
        return Err(Error::SolutionRejected(format!("complex energy, Im = {energy_im:e}")));
    }
    if !pair.is_real(PAIR_TOLERANCE) {
        if !pair.label.is_identical() {
            return Err(Error::SolutionRejected(format!("complex momenta for state {}", pair.label)));
        }
        let gap = pair.conjugacy_gap();
        if gap > PAIR_TOLERANCE {
            return Err(Error::SolutionRejected(format!("complex momenta not conjugate (gap {gap:e})")));
        }
    }
    Ok(norm)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub u: f64,
    /// `None` marks a step that failed to solve.
    pub pair: Option<MomentumPair>,
}

impl SweepPoint {
    pub fn energy(&self) -> Option<f64> {
        self.pair.map(|p| p.energy())
    }

    pub fn residual_norm(&self) -> Option<f64> {
        self.pair.map(|p| verify_solution(&p))
    }
}

/// A state's momenta along a uniform `U` grid, in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub label: StateLabel,
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn gaps(&self) -> usize {
        self.points.iter().filter(|p| p.pair.is_none()).count()
    }
}

/// Solves `label` on `steps` uniform points from `u_start` to `u_end` inclusive.
///
/// The march starts at the grid point nearest `U = 0` and moves outward,
/// seeding each Newton solve with the neighbouring solution. A step that
/// fails, or jumps by more than ten times the previous step's change, is
/// retried from a fresh seed and recorded as a gap if that fails too.
pub fn sweep(label: StateLabel, u_start: f64, u_end: f64, steps: usize) -> Result<SweepResult> {
    sweep_with(label, u_start, u_end, steps, &NewtonConfig::default(), DEFAULT_BASIS_CUTOFF)
}

pub fn sweep_with(
    label: StateLabel,
    u_start: f64,
    u_end: f64,
    steps: usize,
    cfg: &NewtonConfig,
    n_max: u32,
) -> Result<SweepResult> {
    if steps < 2 {
        return Err(Error::InvalidConfig("a sweep needs at least 2 steps"));
    }
    if !(u_start.is_finite() && u_end.is_finite()) {
        return Err(Error::NonFinite("sweep bounds"));
    }
    cfg.validate()?;

    let du = (u_end - u_start) / (steps - 1) as f64;
    let grid: Vec<f64> = (0..steps)
        .map(|i| if i == steps - 1 { u_end } else { u_start + du * i as f64 })
        .collect();
    let origin = (0..steps)
        .min_by(|&a, &b| libm::fabs(grid[a]).total_cmp(&libm::fabs(grid[b])))
        .unwrap();

    let request = |u: f64| SolveRequest { u, label, newton: Some(*cfg), n_max: Some(n_max) };
    let mut pairs: Vec<Option<MomentumPair>> = vec![None; steps];
    pairs[origin] = solve_state(&request(grid[origin])).ok();

    let accept = request(0.0).accept_tolerance();
    let forward: Vec<usize> = (origin + 1..steps).collect();
    let backward: Vec<usize> = (0..origin).rev().collect();
    for direction in [forward, backward] {
        let mut previous = origin;
        let mut last_change: Option<f64> = None;
        for index in direction {
            let u = grid[index];
            let prior = pairs[previous];
            let within_guard = |candidate: &MomentumPair| match (prior, last_change) {
                (Some(p), Some(change)) => distance(&p, candidate) <= CONTINUITY_FACTOR * change + 1e-8,
                _ => true,
            };

            let continued = prior
                // the n = m root is a double root at U = 0: reseed perturbatively
                .filter(|p| !(label.is_identical() && p.case.u == 0.0))
                .and_then(|p| {
                    let case = TranscendentalCase::for_label(u, label).ok()?;
                    newton_from(case, label, (p.k1, p.k2), cfg, accept).ok()
                })
                .map(|o| o.pair)
                .filter(|c| within_guard(c));
            let solved = continued.or_else(|| solve_state(&request(u)).ok().filter(|c| within_guard(c)));

            last_change = match (prior, solved) {
                (Some(p), Some(c)) => Some(distance(&p, &c)),
                _ => None,
            };
            pairs[index] = solved;
            previous = index;
        }
    }

    Ok(SweepResult {
        label,
        points: grid.into_iter().zip(pairs).map(|(u, pair)| SweepPoint { u, pair }).collect(),
    })
}

fn distance(a: &MomentumPair, b: &MomentumPair) -> f64 {
    (a.k1 - b.k1).norm().max((a.k2 - b.k2).norm())
}
