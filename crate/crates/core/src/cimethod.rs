//! Configuration interaction in the truncated symmetric two-particle basis.
//!
//! Positions are scaled by the well width (`ξ = x1/L`, `η = x2/L`) and the
//! Hamiltonian by `ħ²/(2mL²)`, leaving `−∂²ξ − ∂²η + U·δ(ξ − η)`. The basis
//! states are
//!
//! ```text
//! |n, m⟩ = N_nm·(ψn(ξ)ψm(η) + ψm(ξ)ψn(η)),   ψn(x) = √2·sin(nπx)
//! ```
//!
//! with `N_nm = 1/2` for `n = m` and `1/√2` otherwise, for `1 ≤ n ≤ m ≤ n_max`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::numerics::{jacobi_eigh, Matrix};
use crate::{Error, Result, StateLabel};

pub const DEFAULT_BASIS_CUTOFF: u32 = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricBasis {
    n_max: u32,
    states: Vec<(u32, u32)>,
}

impl SymmetricBasis {
    pub fn new(n_max: u32) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::EmptyBasis);
        }
        let states = (1..=n_max).flat_map(|n| (n..=n_max).map(move |m| (n, m))).collect();
        Ok(Self { n_max, states })
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// States `(n, m)` with `n ≤ m`, in lexicographic order.
    pub fn states(&self) -> &[(u32, u32)] {
        &self.states
    }

    /// Row of `(n, m)` in either order, if inside the cutoff.
    pub fn index_of(&self, n: u32, m: u32) -> Option<usize> {
        let (lo, hi) = (n.min(m), n.max(m));
        if lo == 0 || hi > self.n_max {
            return None;
        }
        let (lo, hi, cap) = (lo as usize, hi as usize, self.n_max as usize);
        // rows for first index 1..lo-1 hold cap, cap-1, ... states
        Some((lo - 1) * (cap + 1) - (lo - 1) * lo / 2 + (hi - lo))
    }
}

/// `N_nm` of the symmetrized product state.
pub fn normalization(n: u32, m: u32) -> f64 {
    if n == m {
        0.5
    } else {
        FRAC_1_SQRT_2
    }
}

fn delta(a: u32, b: u32) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// `⟨n,m| −∂²ξ − ∂²η |ñ,m̃⟩`.
pub fn kinetic_element(n: u32, m: u32, nt: u32, mt: u32) -> f64 {
    let overlap = delta(n, nt) * delta(m, mt) + delta(n, mt) * delta(nt, m);
    if overlap == 0.0 {
        return 0.0;
    }
    let (ntf, mtf) = (nt as f64, mt as f64);
    2.0 * PI * PI * (ntf * ntf + mtf * mtf) * normalization(nt, mt) * normalization(n, m) * overlap
}

/// `⟨n,m| U·δ(ξ − η) |ñ,m̃⟩`.
///
/// The contact term reduces to `U·∫ψnψmψñψm̃`, a sum of Kronecker deltas over
/// the vanishing frequency combinations.
pub fn interaction_element(n: u32, m: u32, nt: u32, mt: u32, u: f64) -> f64 {
    let pattern = delta(n + mt, m + nt) + delta(n + nt, m + mt) - delta(m + nt + mt, n) - delta(n + nt + mt, m)
        - delta(n + m + mt, nt)
        - delta(n + m + nt, mt)
        + delta(n + m, nt + mt);
    2.0 * u * normalization(nt, mt) * normalization(n, m) * pattern
}

/// Scaled Hamiltonian over a symmetric basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CIHamiltonian {
    pub matrix: Matrix,
    pub u: f64,
    pub basis: SymmetricBasis,
}

pub fn build_hamiltonian(basis: &SymmetricBasis, u: f64) -> CIHamiltonian {
    let size = basis.len();
    let mut matrix = Matrix::zeros(size, size);
    let states = basis.states();
    for (i, &(n, m)) in states.iter().enumerate() {
        for (j, &(nt, mt)) in states.iter().enumerate().skip(i) {
            let value = kinetic_element(n, m, nt, mt) + interaction_element(n, m, nt, mt, u);
            matrix[(i, j)] = value;
            matrix[(j, i)] = value;
        }
    }
    CIHamiltonian { matrix, u, basis: basis.clone() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CIEigenstate {
    /// Scaled energy, in units of `ħ²/(2mL²)`.
    pub energy: f64,
    /// Unit vector over the basis, signed so the dominant entry is positive.
    pub coefficients: Vec<f64>,
    /// Basis state with the largest weight, larger quantum number first.
    pub dominant_label: StateLabel,
    pub leading_coefficient: f64,
}

impl CIHamiltonian {
    /// All eigenstates, ascending in energy.
    pub fn eigenstates(&self) -> Result<Vec<CIEigenstate>> {
        let eig = jacobi_eigh(&self.matrix)?;
        let states = self.basis.states();
        Ok(eig
            .values
            .iter()
            .enumerate()
            .map(|(col, &energy)| {
                let mut coefficients = eig.vector(col);
                // strict comparison keeps the lexicographically smallest state on ties
                let mut dominant = 0;
                for (i, c) in coefficients.iter().enumerate() {
                    if libm::fabs(*c) > libm::fabs(coefficients[dominant]) {
                        dominant = i;
                    }
                }
                if coefficients[dominant] < 0.0 {
                    coefficients.iter_mut().for_each(|c| *c = -*c);
                }
                let (n, m) = states[dominant];
                CIEigenstate {
                    energy,
                    leading_coefficient: coefficients[dominant],
                    coefficients,
                    dominant_label: StateLabel::new(m, n).expect("basis states start at 1"),
                }
            })
            .collect())
    }
}

/// The lowest `levels` eigenstates at cutoff `n_max`.
pub fn spectrum(u: f64, n_max: u32, levels: usize) -> Result<Vec<CIEigenstate>> {
    let basis = SymmetricBasis::new(n_max)?;
    if levels > basis.len() {
        return Err(Error::TooManyLevels { levels, size: basis.len() });
    }
    let mut states = build_hamiltonian(&basis, u).eigenstates()?;
    states.truncate(levels);
    Ok(states)
}

/// Energy of the lowest eigenstate whose dominant label is `label`.
pub fn energy_for_state(u: f64, label: StateLabel, n_max: u32) -> Result<f64> {
    let basis = SymmetricBasis::new(n_max)?;
    let not_found = Error::LabelNotFound { n: label.n(), m: label.m() };
    if basis.index_of(label.n(), label.m()).is_none() {
        return Err(not_found);
    }
    build_hamiltonian(&basis, u)
        .eigenstates()?
        .into_iter()
        .find(|s| s.dominant_label.same_state(label))
        .map(|s| s.energy)
        .ok_or(not_found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const PI2: f64 = PI * PI;

    #[test]
    fn basis_layout() {
        let b = SymmetricBasis::new(4).unwrap();
        assert_eq!(b.len(), 10);
        for (i, &(n, m)) in b.states().iter().enumerate() {
            assert_eq!(b.index_of(n, m), Some(i));
            assert_eq!(b.index_of(m, n), Some(i));
        }
        assert_eq!(b.index_of(1, 5), None);
        assert_eq!(SymmetricBasis::new(30).unwrap().len(), 465);
    }

    #[test]
    fn kinetic_examples() {
        assert!((kinetic_element(1, 1, 1, 1) - 2.0 * PI2).abs() < 1e-12);
        assert!((kinetic_element(1, 2, 1, 2) - 5.0 * PI2).abs() < 1e-12);
        assert_eq!(kinetic_element(1, 1, 2, 2), 0.0);
    }

    #[test]
    fn interaction_examples() {
        let u = -0.7;
        assert!((interaction_element(1, 1, 1, 1, u) - 1.5 * u).abs() < 1e-15);
        assert!((interaction_element(1, 1, 2, 2, u) - u).abs() < 1e-15);
        assert_eq!(interaction_element(1, 2, 1, 3, u), 0.0);
    }

    #[test]
    fn small_hamiltonians() {
        let h = build_hamiltonian(&SymmetricBasis::new(1).unwrap(), 2.5);
        assert!((h.matrix[(0, 0)] - (2.0 * PI2 + 3.75)).abs() < 1e-12);

        let h = build_hamiltonian(&SymmetricBasis::new(2).unwrap(), 0.0);
        let expected = [2.0 * PI2, 5.0 * PI2, 8.0 * PI2];
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { expected[i] } else { 0.0 };
                assert!((h.matrix[(i, j)] - e).abs() < 1e-12);
            }
        }

        let h = build_hamiltonian(&SymmetricBasis::new(2).unwrap(), -1.0);
        assert!((h.matrix[(0, 2)] + 1.0).abs() < 1e-15);
        assert_eq!(h.matrix, h.matrix.transpose());
    }

    #[test]
    fn non_interacting_spectrum() {
        let states = spectrum(0.0, 10, 4).unwrap();
        let energies: Vec<f64> = states.iter().map(|s| s.energy / PI2).collect();
        for (e, want) in energies.iter().zip([2.0, 5.0, 8.0, 10.0]) {
            assert!((e - want).abs() < 1e-10);
        }
        let labels: Vec<StateLabel> = states.iter().map(|s| s.dominant_label).collect();
        let want: Vec<StateLabel> =
            vec![(1, 1), (2, 1), (2, 2), (3, 1)].into_iter().map(|(n, m)| StateLabel::new(n, m).unwrap()).collect();
        assert_eq!(labels, want);
    }

    #[test]
    fn attraction_lowers_ground_state() {
        let e = energy_for_state(-1.0, StateLabel::new(1, 1).unwrap(), 10).unwrap();
        assert!(e < 2.0 * PI2);
        assert!((e - 18.19).abs() < 0.05);
    }

    #[test]
    fn level_and_label_errors() {
        assert_eq!(spectrum(0.0, 2, 4).unwrap_err(), Error::TooManyLevels { levels: 4, size: 3 });
        assert_eq!(
            energy_for_state(0.0, StateLabel::new(7, 1).unwrap(), 5).unwrap_err(),
            Error::LabelNotFound { n: 7, m: 1 }
        );
    }

    #[test]
    fn eigenvectors_are_unit_and_positive() {
        for s in spectrum(-1.0, 6, 5).unwrap() {
            let norm: f64 = s.coefficients.iter().map(|c| c * c).sum();
            assert!((norm - 1.0).abs() < 1e-10);
            assert!(s.leading_coefficient > 0.0);
        }
    }
}
