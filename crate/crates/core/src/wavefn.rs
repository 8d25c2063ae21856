//! Two-particle wavefunctions on the unit square and their densities.
//!
//! The box width is fixed to 1 in the dimensionless units used throughout;
//! converting to physical energies only needs the factor `ħ²/(2mL²)`.
//!
//! The singlet amplitude for `x1 < x2` is
//!
//! ```text
//! Ψ = N·sin(k1·x1)·sin(k2·(1 − x2)) + M·sin(k2·x1)·sin(k1·(1 − x2))
//! ```
//!
//! continued to `x1 > x2` by exchange symmetry. Only the ratio `s = N/M` is
//! fixed by the solve; here `N = 1`, `M = s` and a global constant normalizes.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::numerics::{simpson_2d, simpson_weights, Rectangle};
use crate::{Error, MomentumPair, RatioSign, Result, StateLabel};

pub const DEFAULT_RESOLUTION: usize = 201;
/// Panels per axis for the normalization integral.
const NORMALIZATION_PANELS: usize = 400;
/// Samples per axis when locating the peak amplitude.
const PEAK_SAMPLES: usize = 101;
const FD_STEP: f64 = 1e-4;
/// Minimum distance of a residual probe from the boundary and the diagonal.
pub const PROBE_MARGIN: f64 = 0.05;

fn lower_branch(k1: Complex64, k2: Complex64, s: f64, x1: f64, x2: f64) -> Complex64 {
    (k1 * x1).sin() * (k2 * (1.0 - x2)).sin() + (k2 * x1).sin() * (k1 * (1.0 - x2)).sin() * s
}

/// Unnormalized singlet amplitude with `N = 1`, `M = s`.
pub fn singlet_amplitude(k1: Complex64, k2: Complex64, sign: RatioSign, x1: f64, x2: f64) -> Complex64 {
    if x1 <= x2 {
        lower_branch(k1, k2, sign.value(), x1, x2)
    } else {
        lower_branch(k1, k2, sign.value(), x2, x1)
    }
}

/// Normalized antisymmetric amplitude `√2·[sin(nπx1)sin(mπx2) − sin(mπx1)sin(nπx2)]`.
pub fn triplet_amplitude(n: u32, m: u32, x1: f64, x2: f64) -> Result<f64> {
    if n == m {
        return Err(Error::IdenticallyZero);
    }
    Ok(SQRT_2 * (mode(n, x1) * mode(m, x2) - mode(m, x1) * mode(n, x2)))
}

/// `sin(nπx)`, evaluated from the nearer wall so it is exactly zero at both.
fn mode(n: u32, x: f64) -> f64 {
    if x <= 0.5 {
        libm::sin(n as f64 * PI * x)
    } else {
        let mirrored = libm::sin(n as f64 * PI * (1.0 - x));
        if n.is_multiple_of(2) {
            -mirrored
        } else {
            mirrored
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingletWavefunction {
    pub pair: MomentumPair,
    pub sign: RatioSign,
    /// Global factor making `∫∫|Ψ|² = 1`.
    pub norm: f64,
    /// Largest sampled `|Ψ|` after normalization.
    pub peak: f64,
}

impl SingletWavefunction {
    pub fn amplitude(&self, x1: f64, x2: f64) -> Complex64 {
        singlet_amplitude(self.pair.k1, self.pair.k2, self.sign, x1, x2) * self.norm
    }

    pub fn density(&self, x1: f64, x2: f64) -> f64 {
        self.amplitude(x1, x2).norm_sqr()
    }
}

/// Normalizes the singlet built on `pair`, using the pair's own ratio sign.
///
/// The integrand has a kink on `x1 = x2`, so the integral is taken over the
/// triangle `x1 < x2` (mapped onto the unit square) and doubled.
pub fn normalize(pair: &MomentumPair) -> Result<SingletWavefunction> {
    let sign = pair.case.sign;
    let (k1, k2, s) = (pair.k1, pair.k2, sign.value());
    let half = simpson_2d(
        |t, x2| lower_branch(k1, k2, s, t * x2, x2).norm_sqr() * x2,
        Rectangle::UNIT,
        (NORMALIZATION_PANELS, NORMALIZATION_PANELS),
    )?;
    let integral = 2.0 * half;
    if !(integral.is_finite() && integral > f64::MIN_POSITIVE) {
        return Err(Error::DegenerateState);
    }
    let norm = 1.0 / libm::sqrt(integral);

    let mut peak: f64 = 0.0;
    for i in 0..PEAK_SAMPLES {
        for j in 0..=i {
            let (x1, x2) = (i as f64 / (PEAK_SAMPLES - 1) as f64, j as f64 / (PEAK_SAMPLES - 1) as f64);
            peak = peak.max(singlet_amplitude(k1, k2, sign, x1, x2).norm() * norm);
        }
    }
    Ok(SingletWavefunction { pair: *pair, sign, norm, peak })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Singlet,
    Triplet,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMetadata {
    pub symmetry: Symmetry,
    pub u: f64,
    pub label: StateLabel,
    pub k1: Complex64,
    pub k2: Complex64,
    /// Ratio sign of the singlet; `None` for the triplet.
    pub sign: Option<RatioSign>,
    pub norm: f64,
}

/// `|Ψ|²` sampled on a uniform inclusive grid over the unit square.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    pub resolution: usize,
    /// Row-major: `values[i·resolution + j]` is the density at `(x_i, x_j)`.
    pub values: Vec<f64>,
    pub metadata: GridMetadata,
}

impl DensityGrid {
    pub fn coordinate(&self, i: usize) -> f64 {
        i as f64 / (self.resolution - 1) as f64
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.resolution + j]
    }

    /// Composite Simpson estimate of `∫∫ density`.
    pub fn integral(&self) -> f64 {
        let panels = self.resolution - 1;
        let w = simpson_weights(panels, 1.0 / panels as f64).expect("resolution is odd");
        let mut total = 0.0;
        for i in 0..self.resolution {
            let row: f64 = (0..self.resolution).map(|j| w[j] * self.at(i, j)).sum();
            total += w[i] * row;
        }
        total
    }

    /// Mean density along `x1 = x2`.
    pub fn diagonal_mean(&self) -> f64 {
        (0..self.resolution).map(|i| self.at(i, i)).sum::<f64>() / self.resolution as f64
    }

    /// Mean density along `x1 + x2 = 1`.
    pub fn anti_diagonal_mean(&self) -> f64 {
        let last = self.resolution - 1;
        (0..self.resolution).map(|i| self.at(i, last - i)).sum::<f64>() / self.resolution as f64
    }
}

fn check_resolution(resolution: usize) -> Result<()> {
    if resolution < 3 || resolution.is_multiple_of(2) {
        return Err(Error::BadResolution(resolution));
    }
    Ok(())
}

fn sample(resolution: usize, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let step = 1.0 / (resolution - 1) as f64;
    let mut values = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        for j in 0..resolution {
            values.push(f(i as f64 * step, j as f64 * step));
        }
    }
    values
}

pub fn density_grid(wf: &SingletWavefunction, resolution: usize) -> Result<DensityGrid> {
    check_resolution(resolution)?;
    let values = sample(resolution, |x1, x2| wf.density(x1, x2));
    Ok(DensityGrid {
        resolution,
        values,
        metadata: GridMetadata {
            symmetry: Symmetry::Singlet,
            u: wf.pair.case.u,
            label: wf.pair.label,
            k1: wf.pair.k1,
            k2: wf.pair.k2,
            sign: Some(wf.sign),
            norm: wf.norm,
        },
    })
}

/// Density of the `(n, m)` triplet, which the contact term leaves untouched.
pub fn triplet_density_grid(label: StateLabel, u: f64, resolution: usize) -> Result<DensityGrid> {
    check_resolution(resolution)?;
    let (n, m) = (label.n(), label.m());
    triplet_amplitude(n, m, 0.5, 0.25)?;
    let values = sample(resolution, |x1, x2| {
        let a = triplet_amplitude(n, m, x1, x2).unwrap_or(0.0);
        a * a
    });
    Ok(DensityGrid {
        resolution,
        values,
        metadata: GridMetadata {
            symmetry: Symmetry::Triplet,
            u,
            label,
            k1: Complex64::new(n as f64 * PI, 0.0),
            k2: Complex64::new(m as f64 * PI, 0.0),
            sign: None,
            norm: SQRT_2,
        },
    })
}

/// `|(−∂²x1 − ∂²x2 − Ẽ)Ψ| / max|Ψ|` by fourth-order central differences.
///
/// Only meaningful away from the diagonal, where the contact term acts.
pub fn schrodinger_residual(wf: &SingletWavefunction, x1: f64, x2: f64) -> Result<f64> {
    let inside = |x: f64| (PROBE_MARGIN..=1.0 - PROBE_MARGIN).contains(&x);
    if !(inside(x1) && inside(x2) && libm::fabs(x1 - x2) >= PROBE_MARGIN) {
        return Err(Error::PointOutsideRegion { x1, x2, margin: PROBE_MARGIN });
    }
    let h = FD_STEP;
    let second = |f: &dyn Fn(f64) -> Complex64, x: f64| {
        (-f(x + 2.0 * h) + f(x + h) * 16.0 - f(x) * 30.0 + f(x - h) * 16.0 - f(x - 2.0 * h)) / (12.0 * h * h)
    };
    let d11 = second(&|x| wf.amplitude(x, x2), x1);
    let d22 = second(&|y| wf.amplitude(x1, y), x2);
    let energy = wf.pair.scaled_energy();
    let r = -d11 - d22 - energy * wf.amplitude(x1, x2);
    Ok(r.norm() / wf.peak)
}

/// Mismatch of the derivative jump across `x1 = x2 = x`, relative to `max|Ψ|`.
///
/// The contact term requires `(∂x1 − ∂x2)Ψ = (U/2)·Ψ` on the `x1 > x2` side
/// of the diagonal. Unlike [`schrodinger_residual`], this vanishes only for
/// momenta that solve the transcendental system.
pub fn cusp_residual(wf: &SingletWavefunction, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::PointOutsideRegion { x1: x, x2: x, margin: 0.0 });
    }
    let (k1, k2, s) = (wf.pair.k1, wf.pair.k2, wf.sign.value());
    // x1 > x2 branch: sin(k1·x2)·sin(k2·(1 − x1)) + s·sin(k2·x2)·sin(k1·(1 − x1))
    let (a1, a2) = ((k1 * x).sin(), (k2 * x).sin());
    let (b1, b2) = ((k1 * (1.0 - x)).sin(), (k2 * (1.0 - x)).sin());
    let (ca1, ca2) = ((k1 * x).cos(), (k2 * x).cos());
    let (cb1, cb2) = ((k1 * (1.0 - x)).cos(), (k2 * (1.0 - x)).cos());
    let d1 = -(k2 * a1 * cb2) - k1 * a2 * cb1 * s;
    let d2 = k1 * ca1 * b2 + k2 * ca2 * b1 * s;
    let psi = a1 * b2 + a2 * b1 * s;
    let mismatch = (d1 - d2 - psi * (wf.pair.case.u / 2.0)) * wf.norm;
    Ok(mismatch.norm() / wf.peak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TranscendentalCase;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pair(k1: Complex64, k2: Complex64, u: f64, n: u32, m: u32) -> MomentumPair {
        let label = StateLabel::new(n, m).unwrap();
        MomentumPair { k1, k2, case: TranscendentalCase::for_label(u, label).unwrap(), label }
    }

    #[test]
    fn vanishes_on_the_walls() {
        let (k1, k2) = (c(3.06, 0.52), c(3.06, -0.52));
        for x in [0.0, 0.2, 0.7, 1.0] {
            assert_eq!(singlet_amplitude(k1, k2, RatioSign::Plus, 0.0, x).norm(), 0.0);
            assert!(singlet_amplitude(k1, k2, RatioSign::Plus, x, 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn conjugate_pair_gives_real_amplitude() {
        let (k1, k2) = (c(3.06, 0.52), c(3.06, -0.52));
        for (x1, x2) in [(0.1, 0.8), (0.6, 0.3), (0.45, 0.45)] {
            let a = singlet_amplitude(k1, k2, RatioSign::Plus, x1, x2);
            assert!(a.im.abs() <= 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn branches_agree_on_the_seam() {
        let (k1, k2) = (c(3.06, 0.52), c(3.06, -0.52));
        let lower = lower_branch(k1, k2, 1.0, 0.3, 0.3);
        // the x1 > x2 branch with its arguments swapped back
        let upper = (k1 * 0.3).sin() * (k2 * 0.7).sin() + (k2 * 0.3).sin() * (k1 * 0.7).sin();
        assert_eq!(lower, upper);
    }

    #[test]
    fn triplet_properties() {
        assert_eq!(triplet_amplitude(2, 2, 0.1, 0.2), Err(Error::IdenticallyZero));
        assert_eq!(triplet_amplitude(1, 2, 0.37, 0.37).unwrap(), 0.0);
        let a = triplet_amplitude(1, 2, 0.2, 0.9).unwrap();
        let b = triplet_amplitude(1, 2, 0.9, 0.2).unwrap();
        assert!((a + b).abs() < 1e-15);
        let grid = triplet_density_grid(StateLabel::new(1, 2).unwrap(), 0.0, 101).unwrap();
        assert!((grid.integral() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn free_ground_state_norm() {
        // Ψ = 2·sin(πx1)·sin(πx2) is already normalized
        let wf = normalize(&pair(c(PI, 0.0), c(PI, 0.0), 0.0, 1, 1)).unwrap();
        assert!((wf.norm - 1.0).abs() < 1e-10);
        assert!((wf.peak - 2.0).abs() < 1e-10);
        let r = schrodinger_residual(&wf, 0.3, 0.7).unwrap();
        assert!(r <= 1e-6, "{r}");
        assert!(cusp_residual(&wf, 0.3).unwrap() < 1e-12);
    }

    #[test]
    fn norm_is_swap_invariant() {
        let a = normalize(&pair(c(3.06, 0.52), c(3.06, -0.52), -1.0, 1, 1)).unwrap();
        let b = normalize(&pair(c(3.06, -0.52), c(3.06, 0.52), -1.0, 1, 1)).unwrap();
        assert!(a.norm > 0.0 && a.norm.is_finite());
        assert!((a.norm - b.norm).abs() < 1e-12 * a.norm);
    }

    #[test]
    fn non_solution_fails_the_eigen_check() {
        let wf = normalize(&pair(c(PI + 0.3, 0.0), c(PI, 0.0), 0.0, 1, 1)).unwrap();
        // each term alone solves the free equation off the diagonal
        let r = schrodinger_residual(&wf, 0.3, 0.7).unwrap();
        assert!(r < 1e-6);
        // only the matching condition on the diagonal tells a non-solution apart
        let cusp = cusp_residual(&wf, 0.4).unwrap();
        assert!(cusp > 0.1, "{cusp}");
    }

    #[test]
    fn resolution_checks() {
        let wf = normalize(&pair(c(PI, 0.0), c(PI, 0.0), 0.0, 1, 1)).unwrap();
        assert_eq!(density_grid(&wf, 200).unwrap_err(), Error::BadResolution(200));
        assert_eq!(density_grid(&wf, 1).unwrap_err(), Error::BadResolution(1));
        assert!(matches!(schrodinger_residual(&wf, 0.5, 0.52), Err(Error::PointOutsideRegion { .. })));
    }
}
