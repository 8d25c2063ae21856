use std::f64::consts::PI;

use pairwell_core::perturb::{initial_guess, radicand, shifts, TRUST_RADIUS};
use pairwell_core::{Error, StateLabel};
use proptest::prelude::*;

proptest! {
    #[test]
    fn sum_rule(n in 1u32..20, u in -TRUST_RADIUS..TRUST_RADIUS) {
        let (plus, minus) = shifts(n, u).unwrap();
        let want = u / (n as f64 * PI);
        for s in [plus, minus] {
            prop_assert!(((s.delta_x + s.delta_y).re - want).abs() <= 1e-12);
            prop_assert!((s.delta_x + s.delta_y).im.abs() <= 1e-12);
        }
    }

    #[test]
    fn complex_shifts_are_conjugate(n in 1u32..20, u in -3.9f64..0.0) {
        prop_assume!(radicand(n, u).unwrap() < 0.0);
        let (plus, _) = shifts(n, u).unwrap();
        prop_assert_eq!(plus.delta_y, plus.delta_x.conj());
        prop_assert!(plus.delta_x.im > 0.0);
    }

    #[test]
    fn continuous_away_from_the_pole(n in 1u32..10, u in -3.5f64..6.0) {
        let h = 1e-7;
        let (a, _) = shifts(n, u).unwrap();
        let (b, _) = shifts(n, u + h).unwrap();
        // the square root is only Hölder-½ where R changes sign
        prop_assert!((a.delta_x - b.delta_x).norm() <= 1e-3);
    }

    #[test]
    fn small_u_asymptotics(n in 1u32..10, u in -1e-3f64..1e-3) {
        prop_assume!(u.abs() > 1e-9);
        let (plus, _) = shifts(n, u).unwrap();
        let root = if u >= 0.0 { (u / 2.0).sqrt() } else { 0.0 };
        let im_root = if u < 0.0 { (-u / 2.0).sqrt() } else { 0.0 };
        let linear = u / (2.0 * n as f64 * PI);
        let err = ((plus.delta_x.re - root - linear).powi(2) + (plus.delta_x.im - im_root).powi(2)).sqrt();
        prop_assert!(err <= 2.0 * u.abs().powf(1.5), "err {} at U={}", err, u);
    }
}

#[test]
fn guess_requires_identical_labels() {
    let label = StateLabel::new(2, 1).unwrap();
    assert_eq!(initial_guess(label, -1.0), Err(Error::WrongSolvePath { n: 2, m: 1 }));
    assert_eq!(radicand(1, -4.0), Err(Error::DegenerateDenominator));
}

#[test]
fn attractive_guess_is_within_newton_reach() {
    let (k1, k2) = initial_guess(StateLabel::new(1, 1).unwrap(), -1.0).unwrap();
    assert!((k1.im - 0.79).abs() < 0.01);
    assert_eq!(k2, k1.conj());
}
