//! Rectangular boxes `(-w1, w1) × … × (-wn, wn)`.
//!
//! Robin eigenvalues separate: every box eigenvalue is a sum of one interval
//! eigenvalue per axis. The first takes the ground mode on every axis, and
//! the second swaps in the second interval mode on the longest edge.

use crate::error::{Error, Result};
use crate::interval::{
    self, check_alpha, gap_interval, lambda1_interval, lambda2_interval, IntervalGeometry,
    ModeDescriptor, SpectralEntry, Spectrum,
};
use crate::rootfind::{self, Direction, Fallible, RootBracket, RootConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct BoxGeometry {
    half_widths: Vec<f64>,
}

impl BoxGeometry {
    pub fn new(half_widths: Vec<f64>) -> Result<Self> {
        if half_widths.is_empty() {
            return Err(Error::InvalidGeometry("a box needs at least one axis".into()));
        }
        for &w in &half_widths {
            IntervalGeometry::new(w)?;
        }
        Ok(Self { half_widths })
    }

    /// `n`-dimensional cube with half-width `w`.
    pub fn cube(n: usize, w: f64) -> Result<Self> {
        Self::new(vec![w; n])
    }

    pub fn dim(&self) -> usize {
        self.half_widths.len()
    }

    pub fn half_widths(&self) -> &[f64] {
        &self.half_widths
    }

    pub fn axis(&self, j: usize) -> IntervalGeometry {
        // widths were validated on construction
        IntervalGeometry::new(self.half_widths[j]).expect("validated half-width")
    }

    /// Lowest index among the longest edges.
    pub fn longest_axis(&self) -> usize {
        let mut best = 0;
        for (j, &w) in self.half_widths.iter().enumerate() {
            if w > self.half_widths[best] {
                best = j;
            }
        }
        best
    }

    pub fn max_half_width(&self) -> f64 {
        self.half_widths[self.longest_axis()]
    }

    pub fn min_half_width(&self) -> f64 {
        self.half_widths.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `V = ∏ 2wj` (area when `n = 2`, length when `n = 1`).
    pub fn volume(&self) -> f64 {
        self.half_widths.iter().map(|w| 2.0 * w).product()
    }

    /// Boundary measure `S = Σ 2V/(2wj)`. For `n = 2` this is the perimeter;
    /// for `n = 1` it counts the two endpoints.
    pub fn surface(&self) -> f64 {
        let v = self.volume();
        self.half_widths.iter().map(|w| v / w).sum()
    }

    pub fn perimeter(&self) -> Result<f64> {
        self.require_dim("perimeter", 2)?;
        Ok(4.0 * (self.half_widths[0] + self.half_widths[1]))
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.half_widths.iter().map(|w| w * w).sum::<f64>().sqrt()
    }

    /// The box dilated by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.half_widths.iter().map(|w| c * w).collect())
    }

    pub(crate) fn require_dim(&self, what: &'static str, n: usize) -> Result<()> {
        if self.dim() == n {
            Ok(())
        } else {
            Err(Error::Dimension {
                what,
                expected: n,
                got: self.dim(),
            })
        }
    }
}

/// Per-axis modes whose eigenvalues sum to a box eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxMode {
    pub axis_modes: Vec<ModeDescriptor>,
}

impl BoxMode {
    pub fn tag(&self) -> String {
        self.axis_modes
            .iter()
            .map(|m| m.tag())
            .collect::<Vec<_>>()
            .join("*")
    }
}

pub fn lambda1_box(geom: &BoxGeometry, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let mut sum = 0.0;
    for j in 0..geom.dim() {
        sum += lambda1_interval(geom.axis(j), alpha)?;
    }
    Ok(sum)
}

pub fn lambda2_box(geom: &BoxGeometry, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let longest = geom.longest_axis();
    let mut sum = 0.0;
    for j in 0..geom.dim() {
        sum += if j == longest {
            lambda2_interval(geom.axis(j), alpha)?
        } else {
            lambda1_interval(geom.axis(j), alpha)?
        };
    }
    Ok(sum)
}

/// The gap of the box, which is the gap of its longest edge.
pub fn gap_box(geom: &BoxGeometry, alpha: f64) -> Result<f64> {
    gap_interval(geom.axis(geom.longest_axis()), alpha)
}

/// `λ₂ / |λ₁|`, undefined at `α = 0` where `λ₁ = 0`.
pub fn ratio_box(geom: &BoxGeometry, alpha: f64) -> Result<f64> {
    if alpha == 0.0 {
        return Err(Error::AlphaZero);
    }
    Ok(lambda2_box(geom, alpha)? / lambda1_box(geom, alpha)?.abs())
}

/// The `k` lowest box eigenvalues. Each axis contributes its `k` lowest
/// interval modes, and the partial sums are pruned to `k` after every axis.
/// Equal sums keep the order in which they were generated.
pub fn spectrum_box(geom: &BoxGeometry, alpha: f64, k: usize) -> Result<Spectrum<BoxMode>> {
    check_alpha(alpha)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut partial: Vec<SpectralEntry<BoxMode>> = vec![SpectralEntry {
        value: 0.0,
        mode: BoxMode {
            axis_modes: Vec::new(),
        },
    }];
    for j in 0..geom.dim() {
        let axis = interval::spectrum_interval(geom.axis(j), alpha, k)?;
        let mut next = Vec::with_capacity(partial.len() * axis.len());
        for p in &partial {
            for a in axis.entries() {
                let mut axis_modes = p.mode.axis_modes.clone();
                axis_modes.push(a.mode);
                next.push(SpectralEntry {
                    value: p.value + a.value,
                    mode: BoxMode { axis_modes },
                });
            }
        }
        let mut sorted = Spectrum::from_unsorted(next).into_entries();
        sorted.truncate(k);
        partial = sorted;
    }
    Ok(Spectrum::from_unsorted(partial))
}

/// First nonzero Steklov eigenvalue `σ₁`: the Robin parameter `-σ₁` is
/// where `λ₂` crosses zero.
pub fn steklov_sigma1(geom: &BoxGeometry) -> Result<f64> {
    let mut f = Fallible::new(|a| lambda2_box(geom, a));
    let bracket = rootfind::expand_bracket(|a| f.call(a), 0.0, Direction::Down, 2.0);
    let root = bracket.and_then(|br| {
        rootfind::solve_bracketed(|a| f.call(a), &br, &RootConfig::default())
    });
    let root = f.finish(root).map_err(|e| match e {
        Error::BracketNotFound { .. } => {
            Error::NumericalFailure(format!("Steklov bracket expansion failed: {e}"))
        }
        other => other,
    })?;
    Ok(-root)
}

/// The root `x` of `tanh x = cot x` in `(0, π/2)` and `α₀ = -x tanh x`,
/// the Robin parameter at which `λ₂` of the square of side 2 vanishes.
pub fn square_zero_crossing() -> Result<(f64, f64)> {
    // tanh x sin x - cos x has no poles on [0, π/2]
    let f = |x: f64| x.tanh() * x.sin() - x.cos();
    let br = RootBracket::new(f, 0.0, std::f64::consts::FRAC_PI_2)?;
    let x = rootfind::solve_bracketed(f, &br, &RootConfig::ulp_tight())?;
    Ok((x, -x * x.tanh()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScaledQuantity {
    /// `λ₁(R; α/L)·A` for rectangles.
    PerimLambda1,
    /// `λ₂(R; α/L)·A` for rectangles.
    PerimLambda2,
    /// `λ₁(B; α/V^{1/n})·V^{2/n}`.
    VolLambda1,
    /// `λ₂(B; α/V^{1/n})·V^{2/n}`.
    VolLambda2,
    /// `λ₁(B; αV^{1-2/n}/S)·V^{2/n}`, which stays below `α`.
    LinearBoundLhs,
}

/// Scale-invariant combinations of eigenvalue, Robin parameter and size.
pub fn scaled_quantity(geom: &BoxGeometry, alpha: f64, which: ScaledQuantity) -> Result<f64> {
    let n = geom.dim() as f64;
    let v = geom.volume();
    match which {
        ScaledQuantity::PerimLambda1 | ScaledQuantity::PerimLambda2 => {
            let l = geom.perimeter()?;
            let a = alpha / l;
            let lam = if which == ScaledQuantity::PerimLambda1 {
                lambda1_box(geom, a)?
            } else {
                lambda2_box(geom, a)?
            };
            Ok(lam * v)
        }
        ScaledQuantity::VolLambda1 | ScaledQuantity::VolLambda2 => {
            let a = alpha / v.powf(1.0 / n);
            let lam = if which == ScaledQuantity::VolLambda1 {
                lambda1_box(geom, a)?
            } else {
                lambda2_box(geom, a)?
            };
            Ok(lam * v.powf(2.0 / n))
        }
        ScaledQuantity::LinearBoundLhs => {
            let a = alpha * v.powf(1.0 - 2.0 / n) / geom.surface();
            Ok(lambda1_box(geom, a)? * v.powf(2.0 / n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basisfn;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn bx(w: &[f64]) -> BoxGeometry {
        BoxGeometry::new(w.to_vec()).unwrap()
    }

    #[test]
    fn geometry() {
        assert!(BoxGeometry::new(vec![]).is_err());
        assert!(BoxGeometry::new(vec![1.0, 0.0]).is_err());
        let b = bx(&[2.0, 1.0]);
        assert_eq!(b.volume(), 8.0);
        assert_eq!(b.surface(), 12.0);
        assert_eq!(b.perimeter().unwrap(), 12.0);
        assert!((b.diameter() - 2.0 * 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(bx(&[1.0, 1.0, 1.0]).surface(), 24.0);
        assert!(matches!(
            bx(&[1.0, 1.0, 1.0]).perimeter(),
            Err(Error::Dimension { expected: 2, got: 3, .. })
        ));
        assert_eq!(bx(&[1.0, 3.0, 3.0]).longest_axis(), 1);
    }

    #[test]
    fn square_values() {
        let sq = bx(&[1.0, 1.0]);
        assert_eq!(lambda1_box(&sq, 0.0).unwrap(), 0.0);
        assert!((lambda2_box(&sq, 0.0).unwrap() - FRAC_PI_2.powi(2)).abs() < 1e-14);
        assert!((lambda1_box(&sq, 1.0).unwrap() - 1.480_347_768_789_934).abs() < 1e-13);
        let s = spectrum_box(&sq, 1.0, 2).unwrap().values();
        assert!((s[0] - 1.480_347_768_789_934).abs() < 1e-13);
        assert!((s[1] - 4.856_032_250_089_49).abs() < 1e-12);
        let s = spectrum_box(&sq, 0.0, 3).unwrap().values();
        assert_eq!(s[0], 0.0);
        assert!((s[1] - FRAC_PI_2.powi(2)).abs() < 1e-14);
        assert!((s[2] - FRAC_PI_2.powi(2)).abs() < 1e-14);
        let s = spectrum_box(&sq, 1e6, 2).unwrap().values();
        assert!((s[0] / (2.0 * FRAC_PI_2.powi(2)) - 1.0).abs() < 1e-5);
        assert!((s[1] / (FRAC_PI_2.powi(2) + PI * PI) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn square_zero_crossing_and_steklov() {
        let (x, a0) = square_zero_crossing().unwrap();
        assert!((x - 0.937_552_034_355_980_6).abs() < 1e-14);
        assert!((a0 + 0.688_252_742_336_267_4).abs() < 1e-14);
        let sq = bx(&[1.0, 1.0]);
        assert!(lambda2_box(&sq, a0).unwrap().abs() < 1e-13);
        let s = steklov_sigma1(&sq).unwrap();
        assert!((s + a0).abs() < 1e-12);
        let s3 = steklov_sigma1(&sq.scaled(3.0).unwrap()).unwrap();
        assert!((s3 * 3.0 - s).abs() < 1e-12);
        let rect = bx(&[2.0, 0.5]);
        assert!(steklov_sigma1(&rect).unwrap() < s);
    }

    #[test]
    fn gap_matches_longest_edge() {
        for &a in &[-5.0, -0.5, 0.0, 0.7, 12.0] {
            let g = gap_box(&bx(&[3.0, 1.0, 1.0]), a).unwrap();
            let gi = gap_interval(IntervalGeometry::new(3.0).unwrap(), a).unwrap();
            assert_eq!(g, gi);
            let b = bx(&[2.0, 1.0]);
            let diff = lambda2_box(&b, a).unwrap() - lambda1_box(&b, a).unwrap();
            let scale = lambda1_box(&b, a).unwrap().abs().max(lambda2_box(&b, a).unwrap().abs());
            assert!((gap_box(&b, a).unwrap() - diff).abs() <= 1e-12 * scale.max(1e-300));
        }
    }

    #[test]
    fn ratio_rules() {
        let sq = bx(&[1.0, 1.0]);
        assert_eq!(ratio_box(&sq, 0.0), Err(Error::AlphaZero));
        assert!(ratio_box(&sq, -0.5).unwrap() > 0.0);
        let (_, a0) = square_zero_crossing().unwrap();
        assert!(ratio_box(&sq, a0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn scaled_quantities() {
        let sq = bx(&[0.25, 0.25]);
        assert_eq!(scaled_quantity(&sq, 0.0, ScaledQuantity::PerimLambda1).unwrap(), 0.0);
        let ap = basisfn::alpha_plus().unwrap();
        let q = scaled_quantity(&sq, ap, ScaledQuantity::PerimLambda2).unwrap();
        assert!((q - ap).abs() < 1e-6);
        let big = bx(&[7.0, 7.0]);
        let q2 = scaled_quantity(&big, ap, ScaledQuantity::PerimLambda2).unwrap();
        assert!((q2 - q).abs() < 1e-9);
        assert!(scaled_quantity(&bx(&[1.0]), 1.0, ScaledQuantity::PerimLambda1).is_err());
        for &a in &[-10.0, -1.0, 1.0, 10.0] {
            let lhs = scaled_quantity(&bx(&[1.0, 0.3, 2.0]), a, ScaledQuantity::LinearBoundLhs).unwrap();
            assert!(lhs < a);
        }
    }

    #[test]
    fn one_axis_box_is_an_interval() {
        let i = IntervalGeometry::new(1.7).unwrap();
        let b = bx(&[1.7]);
        for &a in &[-3.0, 0.0, 2.0] {
            assert_eq!(lambda1_box(&b, a).unwrap(), lambda1_interval(i, a).unwrap());
            assert_eq!(lambda2_box(&b, a).unwrap(), lambda2_interval(i, a).unwrap());
            assert_eq!(
                spectrum_box(&b, a, 5).unwrap().values(),
                interval::spectrum_interval(i, a, 5).unwrap().values()
            );
        }
    }

    #[test]
    fn degenerating_first_eigenvalue() {
        let thin = bx(&[1.0, 1e-6]);
        assert!(lambda1_box(&thin, 1.0).unwrap() > 1e5);
        assert!(lambda1_box(&thin, -1.0).unwrap() < -1e5);
    }

    proptest! {
        #[test]
        fn permutation_invariance(w in prop::collection::vec(0.1f64..3.0, 3), a in -8.0f64..8.0) {
            let b = bx(&w);
            let p = bx(&[w[2], w[0], w[1]]);
            let tol = |x: f64| 1e-13 * x.abs().max(1.0);
            let (l1, l1p) = (lambda1_box(&b, a).unwrap(), lambda1_box(&p, a).unwrap());
            prop_assert!((l1 - l1p).abs() <= tol(l1));
            let (l2, l2p) = (lambda2_box(&b, a).unwrap(), lambda2_box(&p, a).unwrap());
            prop_assert!((l2 - l2p).abs() <= tol(l2));
            prop_assert_eq!(gap_box(&b, a).unwrap(), gap_box(&p, a).unwrap());
        }

        #[test]
        fn scaling_law(w in prop::collection::vec(0.1f64..3.0, 2), a in -8.0f64..8.0, ci in 0usize..3) {
            let c = [0.5, 2.0, 10.0][ci];
            let b = bx(&w);
            let s = b.scaled(c).unwrap();
            for (x, y) in [
                (lambda1_box(&b, a).unwrap(), lambda1_box(&s, a / c).unwrap()),
                (lambda2_box(&b, a).unwrap(), lambda2_box(&s, a / c).unwrap()),
            ] {
                prop_assert!((y * c * c - x).abs() <= 1e-12 * x.abs().max(1e-12));
            }
        }

        #[test]
        fn spectrum_starts_with_first_two(w in prop::collection::vec(0.1f64..3.0, 1..4), a in -6.0f64..6.0) {
            let b = bx(&w);
            let s = spectrum_box(&b, a, 4).unwrap();
            let v = s.values();
            prop_assert_eq!(v[0], lambda1_box(&b, a).unwrap());
            let l2 = lambda2_box(&b, a).unwrap();
            prop_assert!((v[1] - l2).abs() <= 1e-12 * l2.abs().max(1.0));
            prop_assert!(v.windows(2).all(|p| p[0] <= p[1]));
            prop_assert!(s.entries().iter().all(|e| e.mode.axis_modes.len() == w.len()));
        }
    }
}
