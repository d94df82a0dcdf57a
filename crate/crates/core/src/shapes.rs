//! One-parameter families of boxes, extremum scans over them, and recovery
//! of a rectangle from its first two Robin eigenvalues.

use crate::boxes::{
    gap_box, lambda1_box, lambda2_box, ratio_box, scaled_quantity, steklov_sigma1, BoxGeometry,
    ScaledQuantity,
};
use crate::error::{Error, Result};
use crate::interval::{check_alpha, gap_interval, lambda1_interval, IntervalGeometry};
use crate::rootfind::{self, Direction, Fallible, RootConfig};

/// Closest approach of the perimeter family to a degenerate rectangle.
pub const P_MIN: f64 = 1e-4;

/// Largest aspect ratio reached by the log-aspect families.
pub const MAX_ASPECT: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    FixedVolume,
    /// Rectangles `(0, p) × (0, 1 - p)` dilated to the given perimeter.
    FixedPerimeter,
    FixedDiameter,
    FixedSurface,
}

/// A one-parameter family of boxes of dimension `dim`, all sharing the
/// value `normalization` of the constrained size.
///
/// The perimeter family is parameterized by `p ∈ [P_MIN, 1 - P_MIN]`, the
/// others by a log-aspect `z` giving half-widths proportional to
/// `(e^z, e^-z)` in 2D and `(e^z, e^{-z/2}, e^{-z/2})` in 3D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangleFamily {
    pub kind: FamilyKind,
    pub dim: usize,
    pub normalization: f64,
}

impl RectangleFamily {
    pub fn new(kind: FamilyKind, dim: usize, normalization: f64) -> Result<Self> {
        if !(normalization > 0.0) || !normalization.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "normalization must be positive, got {normalization}"
            )));
        }
        match (kind, dim) {
            (FamilyKind::FixedPerimeter, 2) => {}
            (FamilyKind::FixedPerimeter, d) => {
                return Err(Error::Dimension {
                    what: "perimeter family",
                    expected: 2,
                    got: d,
                })
            }
            (_, 2 | 3) => {}
            (_, d) => {
                return Err(Error::InvalidParameter(format!(
                    "box families are 2- or 3-dimensional, got {d}"
                )))
            }
        }
        Ok(Self {
            kind,
            dim,
            normalization,
        })
    }

    /// The family through the square or cube of half-width 1.
    pub fn standard(kind: FamilyKind, dim: usize) -> Result<Self> {
        let n = dim as f64;
        let norm = match kind {
            FamilyKind::FixedVolume => 2f64.powf(n),
            FamilyKind::FixedPerimeter => 8.0,
            FamilyKind::FixedDiameter => 2.0 * n.sqrt(),
            FamilyKind::FixedSurface => 2.0 * n * 2f64.powf(n - 1.0),
        };
        Self::new(kind, dim, norm)
    }

    pub fn parameter_range(&self) -> (f64, f64) {
        match self.kind {
            FamilyKind::FixedPerimeter => (P_MIN, 1.0 - P_MIN),
            _ => {
                // aspect ratio e^{2z} in 2D, e^{3z/2} in 3D
                let rate = if self.dim == 2 { 2.0 } else { 1.5 };
                let z = MAX_ASPECT.ln() / rate;
                (-z, z)
            }
        }
    }

    /// Parameter of the square or cube.
    pub fn symmetric_parameter(&self) -> f64 {
        match self.kind {
            FamilyKind::FixedPerimeter => 0.5,
            _ => 0.0,
        }
    }

    pub fn geometry(&self, param: f64) -> Result<BoxGeometry> {
        let shape = match self.kind {
            FamilyKind::FixedPerimeter => {
                if !(param > 0.0 && param < 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "perimeter family parameter must lie in (0, 1), got {param}"
                    )));
                }
                BoxGeometry::new(vec![param / 2.0, (1.0 - param) / 2.0])?
            }
            _ => {
                let w = if self.dim == 2 {
                    vec![param.exp(), (-param).exp()]
                } else {
                    let s = (-param / 2.0).exp();
                    vec![param.exp(), s, s]
                };
                BoxGeometry::new(w)?
            }
        };
        let n = self.dim as f64;
        let c = match self.kind {
            FamilyKind::FixedVolume => (self.normalization / shape.volume()).powf(1.0 / n),
            FamilyKind::FixedPerimeter => self.normalization / shape.perimeter()?,
            FamilyKind::FixedDiameter => self.normalization / shape.diameter(),
            FamilyKind::FixedSurface => {
                (self.normalization / shape.surface()).powf(1.0 / (n - 1.0))
            }
        };
        shape.scaled(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Lambda1,
    Lambda2,
    Gap,
    /// `λ₂/|λ₁|`
    Ratio,
    /// `λ₁(R; α/L)·A`
    PerimLambda1,
    /// `λ₂(R; α/L)·A`
    PerimLambda2,
    /// `λ₂(R; α/L)/|λ₁(R; α/L)|`
    PerimRatio,
    /// `σ₁`; ignores `α`.
    Steklov,
    /// `σ₁·L`; ignores `α`.
    SteklovPerimeter,
}

pub fn objective_value(geom: &BoxGeometry, alpha: f64, objective: Objective) -> Result<f64> {
    match objective {
        Objective::Lambda1 => lambda1_box(geom, alpha),
        Objective::Lambda2 => lambda2_box(geom, alpha),
        Objective::Gap => gap_box(geom, alpha),
        Objective::Ratio => ratio_box(geom, alpha),
        Objective::PerimLambda1 => scaled_quantity(geom, alpha, ScaledQuantity::PerimLambda1),
        Objective::PerimLambda2 => scaled_quantity(geom, alpha, ScaledQuantity::PerimLambda2),
        Objective::PerimRatio => {
            let a = alpha / geom.perimeter()?;
            ratio_box(geom, a)
        }
        Objective::Steklov => steklov_sigma1(geom),
        Objective::SteklovPerimeter => Ok(steklov_sigma1(geom)? * geom.perimeter()?),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OptKind {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub parameter_grid: Vec<f64>,
    pub objective_values: Vec<f64>,
    pub argopt: f64,
    pub opt_value: f64,
    pub opt_kind: OptKind,
    /// Grid spacing, the resolution at which `argopt` is certified.
    pub cell: f64,
    /// The discrete optimum sat on an end of the grid, so the extremum is
    /// approached as the family degenerates rather than attained.
    pub at_boundary: bool,
}

impl ScanResult {
    /// Whether `argopt` lies within one grid cell of `param`.
    pub fn optimum_near(&self, param: f64) -> bool {
        (self.argopt - param).abs() <= self.cell
    }
}

pub fn scan_family(
    family: &RectangleFamily,
    alpha: f64,
    objective: Objective,
    opt_kind: OptKind,
    grid_size: usize,
) -> Result<ScanResult> {
    check_alpha(alpha)?;
    if grid_size < 16 {
        return Err(Error::InvalidParameter(format!(
            "scan grid needs at least 16 points, got {grid_size}"
        )));
    }
    let (lo, hi) = family.parameter_range();
    let cell = (hi - lo) / (grid_size - 1) as f64;
    let eval = |p: f64| objective_value(&family.geometry(p)?, alpha, objective);
    let sign = match opt_kind {
        OptKind::Min => 1.0,
        OptKind::Max => -1.0,
    };
    let mut grid = Vec::with_capacity(grid_size);
    let mut values = Vec::with_capacity(grid_size);
    for i in 0..grid_size {
        let p = if i + 1 == grid_size { hi } else { lo + cell * i as f64 };
        grid.push(p);
        values.push(eval(p)?);
    }
    // Objectives can have a kink at the symmetric shape that falls between
    // grid nodes, so every interior local optimum gets refined.
    let last = grid_size - 1;
    let (mut argopt, mut best) = (grid[0], sign * values[0]);
    let mut at_boundary = true;
    if sign * values[last] < best {
        (argopt, best) = (grid[last], sign * values[last]);
    }
    for i in 1..last {
        let v = sign * values[i];
        if v <= sign * values[i - 1] && v <= sign * values[i + 1] {
            let (p, r) = golden_section(|p| Ok(sign * eval(p)?), grid[i - 1], grid[i + 1])?;
            let (p, r) = if r < v { (p, r) } else { (grid[i], v) };
            if r < best {
                (argopt, best, at_boundary) = (p, r, false);
            }
        }
    }
    let opt_value = sign * best;
    Ok(ScanResult {
        parameter_grid: grid,
        objective_values: values,
        argopt,
        opt_value,
        opt_kind,
        cell,
        at_boundary,
    })
}

/// Minimizes `f` on `[a, b]`; returns the abscissa and the value.
fn golden_section<F: Fn(f64) -> Result<f64>>(f: F, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..80 {
        if (b - a).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}

/// The gap of a box beside the gap of the segment with the same diameter.
pub fn gap_vs_segment(geom: &BoxGeometry, alpha: f64) -> Result<(f64, f64)> {
    if geom.dim() < 2 {
        return Err(Error::InvalidGeometry(
            "segment comparison needs a box of dimension at least 2".into(),
        ));
    }
    let segment = IntervalGeometry::new(geom.diameter() / 2.0)?;
    Ok((gap_box(geom, alpha)?, gap_interval(segment, alpha)?))
}

/// Rectangle recovered from `(λ₁, λ₂)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeardRectangle {
    /// Half-widths `(t, s)` with `t >= s`.
    pub geometry: BoxGeometry,
    /// Largest eigenvalue mismatch of the recovered rectangle, relative to
    /// `max(|λ₁|, |λ₂|)`.
    pub residual: f64,
}

/// Relative residual above which the data are declared inconsistent.
pub const HEARING_TOLERANCE: f64 = 1e-8;

/// Relative width of the band in which `s` and `t` count as equal.
pub const SQUARE_TOLERANCE: f64 = 1e-9;

/// Finds the rectangle `(-t, t) × (-s, s)`, `t >= s`, whose first two Robin
/// eigenvalues at `alpha` are `lambda1` and `lambda2`.
///
/// The gap of a rectangle is the gap of its long edge and is strictly
/// decreasing in the edge length, so it fixes `t`. The first eigenvalue of
/// the short edge is then `λ₁ - λ₁(I(t))`, which is strictly monotone in
/// `s` and fixes `s`.
pub fn hear_rectangle(lambda1: f64, lambda2: f64, alpha: f64) -> Result<HeardRectangle> {
    check_alpha(alpha)?;
    if alpha == 0.0 {
        return Err(Error::AlphaZero);
    }
    if !lambda1.is_finite() || !lambda2.is_finite() {
        return Err(Error::InvalidParameter("eigenvalues must be finite".into()));
    }
    let gap = lambda2 - lambda1;
    if !(gap > 0.0) {
        return Err(Error::Inconsistent {
            reason: "the second eigenvalue must exceed the first".into(),
            residual: -gap,
        });
    }
    let cfg = RootConfig::new(1e-15, 4.0 * f64::EPSILON, 200)?;

    let log_gap = gap.ln();
    let mut f = Fallible::new(|u: f64| {
        Ok(gap_interval(IntervalGeometry::new(u.exp())?, alpha)?.ln() - log_gap)
    });
    let f0 = f.call(0.0);
    let dir = if f0 > 0.0 { Direction::Up } else { Direction::Down };
    let u = if f0 == 0.0 {
        Ok(0.0)
    } else {
        rootfind::expand_bracket(|u| f.call(u), 0.0, dir, 2.0)
            .and_then(|br| rootfind::solve_bracketed(|u| f.call(u), &br, &cfg))
    };
    let u = u.map_err(|e| Error::Inconsistent {
        reason: format!("no edge length reproduces the gap {gap}: {e}"),
        residual: f64::NAN,
    })?;
    let t = u.exp();
    let long = IntervalGeometry::new(t)?;

    let target = lambda1 - lambda1_interval(long, alpha)?;
    let scale = lambda1.abs().max(lambda2.abs()).max(gap);
    let mut g = Fallible::new(|v: f64| Ok(lambda1_interval(IntervalGeometry::new(v.exp())?, alpha)? - target));
    let g_at_t = g.call(u);
    // s <= t means λ₁(I(s)) lies on the far side of λ₁(I(t)) from 0
    let wrong_side = if alpha > 0.0 { g_at_t > 0.0 } else { g_at_t < 0.0 };
    let s = if g_at_t == 0.0 || (wrong_side && g_at_t.abs() <= SQUARE_TOLERANCE * scale) {
        t
    } else if wrong_side {
        return Err(Error::Inconsistent {
            reason: "the recovered short edge would exceed the long edge".into(),
            residual: g_at_t.abs() / scale,
        });
    } else {
        let v = rootfind::expand_bracket(|v| g.call(v), u, Direction::Down, 2.0)
            .and_then(|br| rootfind::solve_bracketed(|v| g.call(v), &br, &cfg))
            .map_err(|e| Error::Inconsistent {
                reason: format!("the first eigenvalue {lambda1} is out of reach: {e}"),
                residual: f64::NAN,
            })?;
        v.exp()
    };
    if s > t * (1.0 + SQUARE_TOLERANCE) {
        return Err(Error::Inconsistent {
            reason: "the recovered short edge exceeds the long edge".into(),
            residual: (s - t) / t,
        });
    }
    let s = s.min(t);
    let geometry = BoxGeometry::new(vec![t, s])?;
    let d1 = (lambda1_box(&geometry, alpha)? - lambda1).abs();
    let d2 = (lambda2_box(&geometry, alpha)? - lambda2).abs();
    let residual = d1.max(d2) / scale;
    if residual > HEARING_TOLERANCE {
        return Err(Error::Inconsistent {
            reason: "recovered rectangle does not reproduce the eigenvalues".into(),
            residual,
        });
    }
    Ok(HeardRectangle { geometry, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basisfn;
    use proptest::prelude::*;

    #[test]
    fn family_constraints_hold() {
        let fam = RectangleFamily::new(FamilyKind::FixedVolume, 3, 8.0).unwrap();
        for &z in &[-3.0, 0.0, 1.7] {
            assert!((fam.geometry(z).unwrap().volume() - 8.0).abs() < 1e-12);
        }
        assert_eq!(fam.geometry(0.0).unwrap().half_widths(), &[1.0, 1.0, 1.0]);
        let fam = RectangleFamily::new(FamilyKind::FixedPerimeter, 2, 2.0).unwrap();
        let g = fam.geometry(0.3).unwrap();
        assert!((g.half_widths()[0] - 0.15).abs() < 1e-15);
        assert!((g.perimeter().unwrap() - 2.0).abs() < 1e-15);
        let fam = RectangleFamily::new(FamilyKind::FixedDiameter, 2, 3.0).unwrap();
        assert!((fam.geometry(0.9).unwrap().diameter() - 3.0).abs() < 1e-12);
        let fam = RectangleFamily::new(FamilyKind::FixedSurface, 3, 24.0).unwrap();
        assert!((fam.geometry(-1.2).unwrap().surface() - 24.0).abs() < 1e-11);
        let (lo, hi) = RectangleFamily::new(FamilyKind::FixedVolume, 2, 1.0)
            .unwrap()
            .parameter_range();
        assert!(((2.0 * hi).exp() - MAX_ASPECT).abs() < 1e-8 && lo == -hi);
        assert!(RectangleFamily::new(FamilyKind::FixedPerimeter, 3, 1.0).is_err());
        assert!(RectangleFamily::new(FamilyKind::FixedVolume, 4, 1.0).is_err());
    }

    #[test]
    fn perimeter_lambda1_minimal_at_square() {
        let fam = RectangleFamily::new(FamilyKind::FixedPerimeter, 2, 2.0).unwrap();
        let r = scan_family(&fam, 5.0, Objective::PerimLambda1, OptKind::Min, 64).unwrap();
        assert!(r.optimum_near(0.5), "argmin {}", r.argopt);
        assert!(!r.at_boundary);
        assert_eq!(r.parameter_grid.len(), r.objective_values.len());
    }

    #[test]
    fn lambda2_window_edges() {
        let fam = RectangleFamily::new(FamilyKind::FixedPerimeter, 2, 2.0).unwrap();
        let ap = basisfn::alpha_plus().unwrap();
        let r = scan_family(&fam, ap - 0.5, Objective::PerimLambda2, OptKind::Max, 64).unwrap();
        assert!(r.optimum_near(0.5));
        let r = scan_family(&fam, ap + 0.5, Objective::PerimLambda2, OptKind::Max, 64).unwrap();
        assert!(r.at_boundary);
        assert!(r.opt_value < ap + 0.5);
        assert!((r.opt_value - (ap + 0.5)).abs() < 0.1);
    }

    #[test]
    fn cube_maximizes_first_eigenvalue_for_negative_alpha() {
        let fam = RectangleFamily::new(FamilyKind::FixedVolume, 3, 1.0).unwrap();
        let r = scan_family(&fam, -1.0, Objective::Lambda1, OptKind::Max, 64).unwrap();
        assert!(r.optimum_near(0.0));
    }

    #[test]
    fn segment_gap_is_smaller() {
        let (g, s) = gap_vs_segment(&BoxGeometry::new(vec![1.0, 1.0]).unwrap(), 1.0).unwrap();
        assert!(g > s);
        let (g, s) = gap_vs_segment(&BoxGeometry::new(vec![1.0, 1.0, 1.0]).unwrap(), -3.0).unwrap();
        assert!(g > s);
        let (g, s) = gap_vs_segment(&BoxGeometry::new(vec![1.0, 1e-7]).unwrap(), 2.0).unwrap();
        assert!(g > s && (g - s) < 1e-10);
        assert!(gap_vs_segment(&BoxGeometry::new(vec![1.0]).unwrap(), 1.0).is_err());
    }

    #[test]
    fn hears_the_square() {
        let g1 = 0.860_333_589_019_379_8f64;
        let g2 = 2.028_757_838_110_434f64;
        let h = hear_rectangle(2.0 * g1 * g1, g1 * g1 + g2 * g2, 1.0).unwrap();
        for w in h.geometry.half_widths() {
            assert!((w - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn hearing_rejects_bad_input() {
        assert_eq!(hear_rectangle(1.0, 2.0, 0.0), Err(Error::AlphaZero));
        assert!(matches!(hear_rectangle(2.0, 1.0, 1.0), Err(Error::Inconsistent { .. })));
        // perturbing λ₂ of the square must not come back as a square
        let sq = BoxGeometry::new(vec![1.0, 1.0]).unwrap();
        let l1 = lambda1_box(&sq, 1.0).unwrap();
        let l2 = lambda2_box(&sq, 1.0).unwrap();
        match hear_rectangle(l1, 1.1 * l2, 1.0) {
            Err(Error::Inconsistent { .. }) => {}
            Ok(h) => assert!((h.geometry.half_widths()[0] - 1.0).abs() > 1e-3),
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    proptest! {
        #[test]
        fn hearing_roundtrip(a in 0.1f64..3.0, b in 0.1f64..3.0, ai in 0usize..5) {
            let alpha = [0.3, -0.3, 2.0, -2.0, 7.0][ai];
            let (t, s) = if a >= b { (a, b) } else { (b, a) };
            let r = BoxGeometry::new(vec![t, s]).unwrap();
            let l1 = lambda1_box(&r, alpha).unwrap();
            let l2 = lambda2_box(&r, alpha).unwrap();
            let h = hear_rectangle(l1, l2, alpha).unwrap();
            let w = h.geometry.half_widths();
            prop_assert!((w[0] / t - 1.0).abs() < 1e-9, "t {} vs {}", w[0], t);
            prop_assert!((w[1] / s - 1.0).abs() < 1e-9, "s {} vs {}", w[1], s);
        }
    }
}
