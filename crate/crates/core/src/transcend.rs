//! The two transcendental systems a singlet momentum pair must satisfy.
//!
//! With `s = N/M = ±1` the matching conditions across `x1 = x2` read
//!
//! ```text
//! k1·sin(k2) / (k2·sin(k1)) = −s
//! 2·(k1·cot(k1) + k2·cot(k2)) = −U
//! ```
//!
//! Both are multiplied through by their denominators so the residual is an
//! entire function of `(k1, k2)`:
//!
//! ```text
//! f1 = k1·sin(k2) + s·k2·sin(k1)
//! f2 = 2·(k1·cos(k1)·sin(k2) + k2·cos(k2)·sin(k1)) + U·sin(k1)·sin(k2)
//! ```
//!
//! `U` is normalized so that these equations hold as written; any factor
//! from rewriting the contact term in relative coordinates is absorbed.

use core::fmt;

use num_complex::Complex64;

use crate::numerics::Matrix;
use crate::{Error, Result};

/// Below this magnitude a sine is treated as an exact zero.
const SINE_ZERO: f64 = 1e-8;

/// Quotient residual, relative to `1 + |U|`, above which a regularized root is
/// taken to sit on the double-zero family near `sin k1 = sin k2 = 0`.
const QUOTIENT_REJECT: f64 = 1e-3;

/// Ratio `s = N/M` of the two amplitudes of the singlet wavefunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RatioSign {
    /// `N/M = +1`: same-parity states.
    Plus,
    /// `N/M = −1`: different-parity states.
    Minus,
}

impl RatioSign {
    pub fn value(self) -> f64 {
        match self {
            RatioSign::Plus => 1.0,
            RatioSign::Minus => -1.0,
        }
    }
}

impl fmt::Display for RatioSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RatioSign::Plus => "+1",
            RatioSign::Minus => "-1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranscendentalCase {
    /// Dimensionless contact strength; positive is repulsive.
    pub u: f64,
    pub sign: RatioSign,
}

impl TranscendentalCase {
    pub fn new(u: f64, sign: RatioSign) -> Result<Self> {
        if !u.is_finite() {
            return Err(Error::NonFinite("interaction strength U"));
        }
        Ok(Self { u, sign })
    }

    /// The case a state's parity selects.
    pub fn for_label(u: f64, label: StateLabel) -> Result<Self> {
        Self::new(u, label.case_sign())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityClass {
    Same,
    Different,
}

/// Non-interacting parentage `(n, m)` of a two-particle state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateLabel {
    n: u32,
    m: u32,
}

impl StateLabel {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidLabel { n, m });
        }
        Ok(Self { n, m })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn m(self) -> u32 {
        self.m
    }

    pub fn parity_class(self) -> ParityClass {
        if (self.n + self.m).is_multiple_of(2) {
            ParityClass::Same
        } else {
            ParityClass::Different
        }
    }

    pub fn is_identical(self) -> bool {
        self.n == self.m
    }

    pub fn case_sign(self) -> RatioSign {
        match self.parity_class() {
            ParityClass::Same => RatioSign::Plus,
            ParityClass::Different => RatioSign::Minus,
        }
    }

    /// `(n, m)` and `(m, n)` describe the same symmetric state.
    pub fn same_state(self, other: StateLabel) -> bool {
        self.ordered() == other.ordered()
    }

    /// Label with the larger quantum number first.
    pub fn ordered(self) -> StateLabel {
        StateLabel { n: self.n.max(self.m), m: self.n.min(self.m) }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.m)
    }
}

/// A solved pair of dimensionless momenta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPair {
    pub k1: Complex64,
    pub k2: Complex64,
    pub case: TranscendentalCase,
    pub label: StateLabel,
}

impl MomentumPair {
    /// `k1² + k2²`; real for every physical solution.
    pub fn scaled_energy(&self) -> Complex64 {
        self.k1 * self.k1 + self.k2 * self.k2
    }

    pub fn energy(&self) -> f64 {
        self.scaled_energy().re
    }

    pub fn is_real(&self, tol: f64) -> bool {
        libm::fabs(self.k1.im) <= tol && libm::fabs(self.k2.im) <= tol
    }

    pub fn conjugacy_gap(&self) -> f64 {
        (self.k2 - self.k1.conj()).norm()
    }

    pub fn residual(&self) -> [Complex64; 2] {
        residual(&self.case, self.k1, self.k2)
    }

    /// Orders real pairs as `k1 ≥ k2` and complex pairs as `Im k1 > 0`.
    ///
    /// Swapping the momenta maps roots to roots in both cases.
    pub fn canonicalized(mut self) -> Self {
        let swap = if self.k1.im != 0.0 || self.k2.im != 0.0 {
            self.k1.im < self.k2.im
        } else {
            self.k1.re < self.k2.re
        };
        if swap {
            core::mem::swap(&mut self.k1, &mut self.k2);
        }
        self
    }
}

/// Regularized residual `(f1, f2)`.
pub fn residual(case: &TranscendentalCase, k1: Complex64, k2: Complex64) -> [Complex64; 2] {
    let s = case.sign.value();
    let (s1, c1) = (k1.sin(), k1.cos());
    let (s2, c2) = (k2.sin(), k2.cos());
    let f1 = k1 * s2 + k2 * s1 * s;
    let f2 = (k1 * c1 * s2 + k2 * c2 * s1) * 2.0 + s1 * s2 * case.u;
    [f1, f2]
}

/// Closed-form `∂(f1, f2)/∂(k1, k2)`.
pub fn jacobian(case: &TranscendentalCase, k1: Complex64, k2: Complex64) -> [[Complex64; 2]; 2] {
    let s = case.sign.value();
    let u = case.u;
    let (s1, c1) = (k1.sin(), k1.cos());
    let (s2, c2) = (k2.sin(), k2.cos());
    [
        [s2 + k2 * c1 * s, k1 * c2 + s1 * s],
        [
            (c1 * s2 - k1 * s1 * s2 + k2 * c2 * c1) * 2.0 + c1 * s2 * u,
            (k1 * c1 * c2 + c2 * s1 - k2 * s2 * s1) * 2.0 + s1 * c2 * u,
        ],
    ]
}

pub(crate) fn jacobian_matrix(case: &TranscendentalCase, k1: Complex64, k2: Complex64) -> Matrix<Complex64> {
    let j = jacobian(case, k1, k2);
    Matrix::from_fn(2, 2, |r, c| j[r][c])
}

/// The original quotient and cotangent forms, defined only away from `sin k = 0`.
pub fn quotient_residual(case: &TranscendentalCase, k1: Complex64, k2: Complex64) -> Option<[Complex64; 2]> {
    let (s1, s2) = (k1.sin(), k2.sin());
    if s1.norm() <= SINE_ZERO || s2.norm() <= SINE_ZERO || k2.norm() == 0.0 {
        return None;
    }
    let g1 = k1 * s2 / (k2 * s1) + case.sign.value();
    let g2 = (k1 * k1.cos() / s1 + k2 * k2.cos() / s2) * 2.0 + case.u;
    Some([g1, g2])
}

/// Diagnostics from [`verify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verification {
    /// Infinity norm of the regularized residual.
    pub residual_norm: f64,
    /// Infinity norm of the quotient form, when both sines are nonzero.
    pub quotient_norm: Option<f64>,
    /// At nonzero `U`, both sines vanish or the quotient form is far from zero:
    /// a root of the regularized system only.
    pub spurious: bool,
}

impl Verification {
    /// Residual norm, or infinity when the point is a spurious root.
    pub fn effective_norm(&self) -> f64 {
        if self.spurious {
            f64::INFINITY
        } else {
            self.residual_norm
        }
    }

    /// Whether the regularized and quotient forms agree on root status at `tol`.
    ///
    /// The quotient form is the regularized one divided by `k2·sin k1` and
    /// `sin k1·sin k2`, so its scale is set by those factors.
    pub fn root_status_agrees(&self, pair: &MomentumPair, tol: f64) -> bool {
        let Some(q) = self.quotient_norm else {
            return true;
        };
        let s1 = pair.k1.sin().norm();
        let s2 = pair.k2.sin().norm();
        let scale = (s1 * s2).min(s1 * pair.k2.norm());
        let regular_root = self.residual_norm <= tol;
        let quotient_root = q * scale <= tol * 1.5;
        regular_root == quotient_root
    }
}

pub fn verify(pair: &MomentumPair) -> Verification {
    let r = pair.residual();
    let residual_norm = r[0].norm().max(r[1].norm());
    let quotient_norm = quotient_residual(&pair.case, pair.k1, pair.k2).map(|g| g[0].norm().max(g[1].norm()));
    // Near sin k1 = sin k2 = 0 the regularized residual is quadratic in the
    // sines and can fall below any absolute tolerance without a real root.
    let spurious = pair.case.u != 0.0
        && match quotient_norm {
            Some(q) => !(q <= QUOTIENT_REJECT * (1.0 + libm::fabs(pair.case.u))),
            None => pair.k1.sin().norm() <= SINE_ZERO && pair.k2.sin().norm() <= SINE_ZERO,
        };
    Verification { residual_norm, quotient_norm, spurious }
}

/// `‖residual‖∞`, or infinity for spurious double-zero roots at `U ≠ 0`.
pub fn verify_solution(pair: &MomentumPair) -> f64 {
    verify(pair).effective_norm()
}
