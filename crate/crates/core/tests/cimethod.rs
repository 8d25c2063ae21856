use std::f64::consts::PI;

use pairwell_core::cimethod::{build_hamiltonian, energy_for_state, spectrum, SymmetricBasis};
use pairwell_core::StateLabel;

#[test]
fn ground_energy_is_variational_in_the_cutoff() {
    let label = StateLabel::new(1, 1).unwrap();
    for u in [-1.0, 1.0] {
        let energies: Vec<f64> = [5, 10, 20, 30].iter().map(|&n| energy_for_state(u, label, n).unwrap()).collect();
        assert!(energies.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{energies:?} at U={u}");
    }
}

#[test]
fn free_spectrum_is_exact() {
    let states = spectrum(0.0, 12, 20).unwrap();
    let mut want: Vec<f64> = SymmetricBasis::new(12)
        .unwrap()
        .states()
        .iter()
        .map(|&(n, m)| PI * PI * (n * n + m * m) as f64)
        .collect();
    want.sort_by(f64::total_cmp);
    for (s, w) in states.iter().zip(want) {
        assert!((s.energy - w).abs() <= 1e-10, "{} vs {w}", s.energy);
    }
}

#[test]
fn hamiltonian_is_exactly_symmetric() {
    let h = build_hamiltonian(&SymmetricBasis::new(15).unwrap(), -2.7);
    assert_eq!(h.matrix, h.matrix.transpose());
    assert_eq!(h.basis.len(), 15 * 16 / 2);
}

#[test]
fn repulsion_raises_every_level() {
    let free = spectrum(0.0, 10, 6).unwrap();
    let repulsive = spectrum(2.0, 10, 6).unwrap();
    for (f, r) in free.iter().zip(&repulsive) {
        assert!(r.energy > f.energy);
    }
}
