use proptest::prelude::*;

use robinbox::boxes::{gap_box, lambda1_box, lambda2_box, spectrum_box, steklov_sigma1, BoxGeometry};
use robinbox::interval::{gap_interval, lambda1_interval, spectrum_interval, IntervalGeometry};
use robinbox::shapes::hear_rectangle;

fn widths(max_dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 1..=max_dim)
        .prop_map(|zs| zs.into_iter().map(|z| 10f64.powf(z)).collect())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scaling_law(w in widths(3), alpha in -8.0f64..8.0, c in prop::sample::select(vec![0.5, 2.0, 10.0])) {
        let g = BoxGeometry::new(w).unwrap();
        let gc = g.scaled(c).unwrap();
        let a = spectrum_box(&g, alpha, 4).unwrap().values();
        let b = spectrum_box(&gc, alpha / c, 4).unwrap().values();
        for (x, y) in a.iter().zip(&b) {
            // values near zero carry only absolute accuracy
            prop_assert!((y * c * c - x).abs() <= 1e-12 * x.abs().max(1.0 / g.min_half_width().powi(2)));
        }
    }

    #[test]
    fn permutation_invariance(w in widths(3), alpha in -8.0f64..8.0) {
        let g = BoxGeometry::new(w.clone()).unwrap();
        let mut r = w;
        r.reverse();
        let h = BoxGeometry::new(r).unwrap();
        prop_assert!(rel(lambda1_box(&g, alpha).unwrap(), lambda1_box(&h, alpha).unwrap()) < 1e-12);
        prop_assert!(rel(lambda2_box(&g, alpha).unwrap(), lambda2_box(&h, alpha).unwrap()) < 1e-12);
        prop_assert_eq!(gap_box(&g, alpha).unwrap(), gap_box(&h, alpha).unwrap());
    }

    #[test]
    fn separation_matches_closed_forms(w in widths(3), alpha in -8.0f64..8.0) {
        let g = BoxGeometry::new(w).unwrap();
        let s = spectrum_box(&g, alpha, 2).unwrap().values();
        let l1 = lambda1_box(&g, alpha).unwrap();
        let l2 = lambda2_box(&g, alpha).unwrap();
        prop_assert!((s[0] - l1).abs() <= 1e-12 * l1.abs().max(1.0));
        prop_assert!((s[1] - l2).abs() <= 1e-12 * l2.abs().max(1.0));
        prop_assert!(l1 <= l2);
    }

    #[test]
    fn gap_increases_with_alpha(w in widths(3), a in -20.0f64..20.0, d in 0.01f64..5.0) {
        let g = BoxGeometry::new(w).unwrap();
        let lo = gap_box(&g, a).unwrap();
        let hi = gap_box(&g, a + d).unwrap();
        prop_assert!(hi > lo || (lo == 0.0 && hi == 0.0));
    }

    #[test]
    fn interval_first_eigenvalue_increases_in_t_for_negative_alpha(t in 0.05f64..5.0, f in 1.01f64..2.0, alpha in -3.0f64..-0.1) {
        let a = lambda1_interval(IntervalGeometry::new(t).unwrap(), alpha).unwrap();
        let b = lambda1_interval(IntervalGeometry::new(t * f).unwrap(), alpha).unwrap();
        prop_assert!(b >= a);
        let ga = gap_interval(IntervalGeometry::new(t).unwrap(), alpha).unwrap();
        let gb = gap_interval(IntervalGeometry::new(t * f).unwrap(), alpha).unwrap();
        prop_assert!(gb <= ga);
    }

    #[test]
    fn interval_spectrum_is_sorted(t in 0.1f64..5.0, alpha in -10.0f64..10.0) {
        let v = spectrum_interval(IntervalGeometry::new(t).unwrap(), alpha, 8).unwrap().values();
        prop_assert_eq!(v.len(), 8);
        prop_assert!(v.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn steklov_makes_second_eigenvalue_vanish(w in widths(3)) {
        let g = BoxGeometry::new(w).unwrap();
        let s = steklov_sigma1(&g).unwrap();
        prop_assert!(s > 0.0);
        let l2 = lambda2_box(&g, -s).unwrap();
        prop_assert!(l2.abs() <= 1e-9 * (1.0 / g.min_half_width().powi(2)));
    }

    #[test]
    fn hearing_roundtrip(z in -0.5f64..0.5, q in 0.05f64..1.0, alpha in prop::sample::select(vec![-2.0, -0.3, 0.3, 2.0, 7.0])) {
        let t = 10f64.powf(z);
        let s = t * q;
        let g = BoxGeometry::new(vec![t, s]).unwrap();
        let h = hear_rectangle(lambda1_box(&g, alpha).unwrap(), lambda2_box(&g, alpha).unwrap(), alpha).unwrap();
        let w = h.geometry.half_widths();
        prop_assert!(rel(w[0], t) < 1e-9);
        prop_assert!(rel(w[1], s) < 1e-9);
    }
}
