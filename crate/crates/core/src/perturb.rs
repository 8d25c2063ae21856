//! Perturbative starting points for identical-parity states.
//!
//! Expanding the `s = +1` system to third order around `k1 = k2 = nπ` gives a
//! quadratic for the shifts with roots
//!
//! ```text
//! δx = U/(2nπ) ± √R,   δy = U/(2nπ) ∓ √R
//! R  = (U/(2nπ))² + (U − U³/(6n²π²)) / (2 + U/2)
//! ```
//!
//! A negative radicand makes the shifts, and hence the momenta, complex.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result, StateLabel};

/// Largest `|U|` for which the shifts are used directly as Newton seeds.
pub const TRUST_RADIUS: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbativeShift {
    pub delta_x: Complex64,
    pub delta_y: Complex64,
    pub n: u32,
    pub u: f64,
    pub branch: Branch,
}

/// The radicand `R`; its sign marks the real/complex transition.
pub fn radicand(n: u32, u: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidLabel { n, m: n });
    }
    if !u.is_finite() {
        return Err(Error::NonFinite("interaction strength U"));
    }
    let denominator = 2.0 + u / 2.0;
    if libm::fabs(denominator) < 1e-12 {
        return Err(Error::DegenerateDenominator);
    }
    let nf = n as f64;
    let linear = u / (2.0 * nf * PI);
    Ok(linear * linear + (u - u * u * u / (6.0 * nf * nf * PI * PI)) / denominator)
}

/// Both branches of the shift pair, plus branch first.
///
/// A negative radicand takes the principal root `+i√|R|`, so the plus branch
/// has `Im δx > 0`.
pub fn shifts(n: u32, u: f64) -> Result<(PerturbativeShift, PerturbativeShift)> {
    let r = radicand(n, u)?;
    let root = if r >= 0.0 {
        Complex64::new(libm::sqrt(r), 0.0)
    } else {
        Complex64::new(0.0, libm::sqrt(-r))
    };
    let centre = Complex64::new(u / (2.0 * n as f64 * PI), 0.0);
    let plus = PerturbativeShift { delta_x: centre + root, delta_y: centre - root, n, u, branch: Branch::Plus };
    let minus = PerturbativeShift { delta_x: centre - root, delta_y: centre + root, n, u, branch: Branch::Minus };
    Ok((plus, minus))
}

/// `(nπ + δx, nπ + δy)` from the plus branch.
pub fn initial_guess(label: StateLabel, u: f64) -> Result<(Complex64, Complex64)> {
    if !label.is_identical() {
        return Err(Error::WrongSolvePath { n: label.n(), m: label.m() });
    }
    let (plus, _) = shifts(label.n(), u)?;
    let base = label.n() as f64 * PI;
    Ok((plus.delta_x + base, plus.delta_y + base))
}
