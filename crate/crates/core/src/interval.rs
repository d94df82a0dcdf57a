//! Robin eigenvalues of the symmetric interval `(-t, t)` with boundary
//! condition `±u'(±t) + α u(±t) = 0`.
//!
//! Eigenfunctions are even (`cos ρx` or `cosh ρx`) or odd (`sin ρx` or
//! `sinh ρx`). Substituting into the boundary condition gives, with
//! `x = ρt` and `y = αt`:
//!
//! * even, positive: `x tan x = y`
//! * even, negative: `x tanh x = -y`
//! * odd, positive: `-x cot x = y`
//! * odd, negative: `x coth x = -y`
//!
//! The first two eigenvalues come straight from the inverses in
//! [`crate::basisfn`]; the rest of the spectrum is one root per branch of
//! `x tan x` and `-x cot x`.

use std::f64::consts::PI;

use crate::basisfn::{self, even_branch_residual, odd_branch_residual};
use crate::error::{Error, Result};
use crate::rootfind::{self, RootBracket, RootConfig};

/// Half-lengths below this are rejected: eigenvalues grow like `α/t`.
pub const MIN_HALF_LENGTH: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalGeometry {
    t: f64,
}

impl IntervalGeometry {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::InvalidGeometry(format!(
                "half-length must be positive and finite, got {t}"
            )));
        }
        if t < MIN_HALF_LENGTH {
            return Err(Error::InvalidGeometry(format!(
                "half-length {t} is below {MIN_HALF_LENGTH}"
            )));
        }
        Ok(Self { t })
    }

    pub fn half_length(&self) -> f64 {
        self.t
    }

    pub fn length(&self) -> f64 {
        2.0 * self.t
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignClass {
    Negative,
    Zero,
    Positive,
}

/// One 1D Robin mode: its symmetry, the sign of its eigenvalue, the branch
/// of the transcendental equation it came from, and the frequency `ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeDescriptor {
    pub parity: Parity,
    pub sign_class: SignClass,
    /// Branch index within its parity. Branch 0 holds the lowest mode.
    pub branch: usize,
    pub rho: f64,
}

impl ModeDescriptor {
    pub fn eigenvalue(&self) -> f64 {
        match self.sign_class {
            SignClass::Negative => -self.rho * self.rho,
            SignClass::Zero => 0.0,
            SignClass::Positive => self.rho * self.rho,
        }
    }

    /// Short tag such as `even:pos0` or `odd:neg0`: parity, sign of the
    /// eigenvalue, branch.
    pub fn tag(&self) -> String {
        let p = match self.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        };
        let s = match self.sign_class {
            SignClass::Negative => "neg",
            SignClass::Zero => "zero",
            SignClass::Positive => "pos",
        };
        format!("{p}:{s}{}", self.branch)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralEntry<M> {
    pub value: f64,
    pub mode: M,
}

/// Eigenvalues in ascending order, each tagged with its mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<M> {
    entries: Vec<SpectralEntry<M>>,
}

impl<M> Spectrum<M> {
    /// Sorts ascending. The sort is stable, so equal values keep input order.
    pub fn from_unsorted(mut entries: Vec<SpectralEntry<M>>) -> Self {
        entries.sort_by(|a, b| a.value.total_cmp(&b.value));
        Self { entries }
    }

    pub fn entries(&self) -> &[SpectralEntry<M>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<SpectralEntry<M>> {
        self.entries
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn truncate(&mut self, k: usize) {
        self.entries.truncate(k);
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "Robin parameter must be finite, got {alpha}"
        )))
    }
}

/// First eigenvalue: `g1⁻¹(αt)²/t²` for `α > 0`, `0` at `α = 0`,
/// `-h1⁻¹(-αt)²/t²` for `α < 0`.
pub fn lambda1_interval(geom: IntervalGeometry, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let t = geom.t;
    let y = alpha * t;
    Ok(if y > 0.0 {
        let x = basisfn::g1_inv(y)?;
        (x / t).powi(2)
    } else if y == 0.0 {
        0.0
    } else {
        let x = basisfn::h1_inv(-y)?;
        -(x / t).powi(2)
    })
}

/// Second eigenvalue: `g2⁻¹(αt)²/t²` for `αt > -1`, `0` at `αt = -1`,
/// `-h2⁻¹(-αt)²/t²` for `αt < -1`.
pub fn lambda2_interval(geom: IntervalGeometry, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let t = geom.t;
    let y = alpha * t;
    Ok(if y > -1.0 {
        let x = basisfn::g2_inv(y)?;
        (x / t).powi(2)
    } else if y == -1.0 {
        0.0
    } else {
        let x = basisfn::h2_inv(-y)?;
        -(x / t).powi(2)
    })
}

/// `λ₂ - λ₁`. For `αt < -1` both eigenvalues approach `-α²` exponentially,
/// so the difference is formed from `x1 - x2` directly, using
/// `x1 = Y coth x1` and `x2 = Y tanh x2` with `Y = -αt`.
pub fn gap_interval(geom: IntervalGeometry, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let t = geom.t;
    let y = alpha * t;
    if y < -1.0 {
        let big_y = -y;
        let x1 = basisfn::h1_inv(big_y)?;
        let x2 = basisfn::h2_inv(big_y)?;
        let diff = big_y * (2.0 / (2.0 * x1).exp_m1() + 2.0 / ((2.0 * x2).exp() + 1.0));
        Ok(diff * (x1 + x2) / (t * t))
    } else {
        Ok(lambda2_interval(geom, alpha)? - lambda1_interval(geom, alpha)?)
    }
}

/// Root of `residual` on the first candidate bracket that shows a sign
/// change.
fn branch_root<F: Fn(f64) -> f64>(residual: F, candidates: &[(f64, f64)]) -> Result<f64> {
    let cfg = RootConfig::ulp_tight();
    for &(lo, hi) in candidates {
        let (f_lo, f_hi) = (residual(lo), residual(hi));
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_hi == 0.0 {
            return Ok(hi);
        }
        if let Ok(br) = RootBracket::from_values(lo, hi, f_lo, f_hi) {
            return rootfind::solve_bracketed(&residual, &br, &cfg);
        }
    }
    Err(Error::NumericalFailure(format!(
        "no sign change on any branch bracket {candidates:?}"
    )))
}

/// Root of `x tan x = y` on branch `j ≥ 1`, i.e. in `((j-½)π, (j+½)π)`.
fn even_branch(j: usize, y: f64) -> Result<f64> {
    let m = j as f64 * PI;
    if y == 0.0 {
        return Ok(m);
    }
    let half = if y > 0.0 { (m, m + PI / 2.0) } else { (m - PI / 2.0, m) };
    branch_root(
        |x| even_branch_residual(x, y),
        &[(m - PI / 2.0, m + PI / 2.0), half],
    )
}

/// Root of `-x cot x = y` on branch `j ≥ 1`, i.e. in `(jπ, (j+1)π)`.
fn odd_branch(j: usize, y: f64) -> Result<f64> {
    let m = j as f64 * PI;
    let mid = m + PI / 2.0;
    if y == 0.0 {
        return Ok(mid);
    }
    let half = if y > 0.0 { (mid, m + PI) } else { (m, mid) };
    branch_root(|x| odd_branch_residual(x, y), &[(m, m + PI), half])
}

/// The lowest `count` modes of one parity, ascending.
fn parity_modes(parity: Parity, t: f64, y: f64, count: usize) -> Result<Vec<ModeDescriptor>> {
    let mut out = Vec::with_capacity(count);
    for j in 0..count {
        let (sign_class, x) = match (parity, j) {
            (Parity::Even, 0) => {
                if y < 0.0 {
                    (SignClass::Negative, basisfn::h1_inv(-y)?)
                } else if y == 0.0 {
                    (SignClass::Zero, 0.0)
                } else {
                    (SignClass::Positive, basisfn::g1_inv(y)?)
                }
            }
            (Parity::Odd, 0) => {
                if y < -1.0 {
                    (SignClass::Negative, basisfn::h2_inv(-y)?)
                } else if y == -1.0 {
                    (SignClass::Zero, 0.0)
                } else {
                    (SignClass::Positive, basisfn::g2_inv(y)?)
                }
            }
            (Parity::Even, j) => (SignClass::Positive, even_branch(j, y)?),
            (Parity::Odd, j) => (SignClass::Positive, odd_branch(j, y)?),
        };
        out.push(ModeDescriptor {
            parity,
            sign_class,
            branch: j,
            rho: x / t,
        });
    }
    Ok(out)
}

/// The `k` lowest eigenvalues with their modes.
pub fn spectrum_interval(
    geom: IntervalGeometry,
    alpha: f64,
    k: usize,
) -> Result<Spectrum<ModeDescriptor>> {
    check_alpha(alpha)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let t = geom.t;
    let y = alpha * t;
    let per_parity = k.div_ceil(2) + 2;
    let mut entries = Vec::with_capacity(2 * per_parity);
    for parity in [Parity::Even, Parity::Odd] {
        for mode in parity_modes(parity, t, y, per_parity)? {
            entries.push(SpectralEntry {
                value: mode.eigenvalue(),
                mode,
            });
        }
    }
    let mut spectrum = Spectrum::from_unsorted(entries);
    spectrum.truncate(k);
    Ok(spectrum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn iv(t: f64) -> IntervalGeometry {
        IntervalGeometry::new(t).unwrap()
    }

    const G1_SQ: f64 = 0.740_173_884_394_967;
    const G2_SQ: f64 = 4.115_858_365_694_523;
    const H1_SQ: f64 = 1.439_228_839_890_645;

    #[test]
    fn geometry_validation() {
        assert!(IntervalGeometry::new(0.0).is_err());
        assert!(IntervalGeometry::new(-1.0).is_err());
        assert!(IntervalGeometry::new(1e-13).is_err());
        assert!(IntervalGeometry::new(f64::NAN).is_err());
        assert_eq!(iv(1.5).diameter(), 3.0);
        assert!(lambda1_interval(iv(1.0), f64::INFINITY).is_err());
    }

    #[test]
    fn first_two_reference_values() {
        assert_eq!(lambda1_interval(iv(1.0), 0.0).unwrap(), 0.0);
        assert!((lambda1_interval(iv(1.0), 1.0).unwrap() - G1_SQ).abs() < 1e-14);
        assert!((lambda2_interval(iv(1.0), 1.0).unwrap() - G2_SQ).abs() < 1e-13);
        assert!((lambda2_interval(iv(1.0), 0.0).unwrap() - FRAC_PI_2.powi(2)).abs() < 1e-14);
        assert_eq!(lambda2_interval(iv(2.0), -0.5).unwrap(), 0.0);
        assert!((lambda1_interval(iv(1.0), -1.0).unwrap() + H1_SQ).abs() < 1e-14);
    }

    #[test]
    fn dirichlet_and_deep_negative_limits() {
        let l1 = lambda1_interval(iv(1.0), 1e6).unwrap();
        assert!((l1 / FRAC_PI_2.powi(2) - 1.0).abs() < 1e-5);
        let gap = gap_interval(iv(1.0), 1e6).unwrap();
        assert!((gap - 0.75 * PI * PI).abs() < 1e-4);
        let l1 = lambda1_interval(iv(1.0), -30.0).unwrap();
        assert!((l1 / -900.0 - 1.0).abs() < 1e-8);
        assert!(gap_interval(iv(1.0), -1e3).unwrap() >= 0.0);
        assert!(gap_interval(iv(1.0), -30.0).unwrap() < 1e-20);
    }

    #[test]
    fn gap_formulas_agree_where_both_are_accurate() {
        for &a in &[-1.5, -2.0, -3.0, -5.0] {
            let g = gap_interval(iv(1.0), a).unwrap();
            let d = lambda2_interval(iv(1.0), a).unwrap() - lambda1_interval(iv(1.0), a).unwrap();
            assert!((g - d).abs() < 1e-12 * g.max(1.0), "{a}: {g} vs {d}");
        }
    }

    #[test]
    fn neumann_spectrum() {
        let s = spectrum_interval(iv(1.0), 0.0, 6).unwrap();
        for (j, v) in s.values().iter().enumerate() {
            let want = (j as f64 * FRAC_PI_2).powi(2);
            assert!((v - want).abs() < 1e-12, "{j}: {v} vs {want}");
        }
        let e = s.entries();
        assert_eq!(e[0].mode.sign_class, SignClass::Zero);
        assert_eq!(e[1].mode.parity, Parity::Odd);
    }

    #[test]
    fn dirichlet_proxy_spectrum() {
        let s = spectrum_interval(iv(1.0), 1e6, 2).unwrap().values();
        assert!((s[0] / FRAC_PI_2.powi(2) - 1.0).abs() < 1e-5);
        assert!((s[1] / (PI * PI) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn odd_zero_mode_at_minus_one_over_t() {
        let s = spectrum_interval(iv(1.0), -1.0, 2).unwrap();
        let v = s.values();
        assert!((v[0] + H1_SQ).abs() < 1e-14);
        assert_eq!(v[1], 0.0);
        assert_eq!(s.entries()[1].mode.sign_class, SignClass::Zero);
    }

    #[test]
    fn spectrum_agrees_with_closed_forms() {
        for &t in &[0.3, 1.0, 4.0] {
            for &a in &[-7.0, -1.0, -0.2, 0.0, 0.5, 3.0, 40.0] {
                let s = spectrum_interval(iv(t), a, 2).unwrap().values();
                let l1 = lambda1_interval(iv(t), a).unwrap();
                let l2 = lambda2_interval(iv(t), a).unwrap();
                assert!((s[0] - l1).abs() <= 1e-13 * l1.abs().max(1.0));
                assert!((s[1] - l2).abs() <= 1e-13 * l2.abs().max(1.0));
            }
        }
    }

    #[test]
    fn at_most_two_nonpositive_entries() {
        for &a in &[-50.0, -3.0, -1.0, 0.0] {
            let s = spectrum_interval(iv(1.0), a, 8).unwrap();
            assert!(s.values().iter().filter(|v| **v <= 0.0).count() < 3);
        }
    }

    proptest! {
        #[test]
        fn modes_alternate_and_branches_ascend(t in 0.05f64..5.0, a in -40.0f64..40.0, k in 1usize..12) {
            let s = spectrum_interval(iv(t), a, k).unwrap();
            prop_assert_eq!(s.len(), k);
            let e = s.entries();
            for (i, entry) in e.iter().enumerate() {
                let want = if i % 2 == 0 { Parity::Even } else { Parity::Odd };
                prop_assert_eq!(entry.mode.parity, want);
                prop_assert_eq!(entry.mode.branch, i / 2);
                prop_assert!((entry.mode.eigenvalue() - entry.value).abs() == 0.0);
            }
            // λ₁ and λ₂ agree to all digits once e^{2αt} underflows
            for w in e.windows(2) {
                prop_assert!(w[0].value <= w[1].value);
            }
            prop_assert!(gap_interval(iv(t), a).unwrap() > 0.0);
        }

        #[test]
        fn branch_roots_solve_their_equations(t in 0.1f64..3.0, a in -20.0f64..20.0) {
            let s = spectrum_interval(iv(t), a, 10).unwrap();
            let y = a * t;
            for e in s.entries().iter().filter(|e| e.mode.sign_class == SignClass::Positive) {
                let x = e.mode.rho * t;
                let r = match e.mode.parity {
                    Parity::Even => even_branch_residual(x, y),
                    Parity::Odd => odd_branch_residual(x, y),
                };
                prop_assert!(r.abs() < 1e-11 * (x + y.abs() + 1.0), "{:?} residual {}", e.mode, r);
            }
        }

        #[test]
        fn scaling_in_t(t in 0.1f64..5.0, a in -10.0f64..10.0, c in 0.2f64..5.0) {
            let base = lambda1_interval(iv(t), a).unwrap();
            let scaled = lambda1_interval(iv(c * t), a / c).unwrap();
            prop_assert!((scaled * c * c - base).abs() <= 1e-12 * base.abs().max(1e-300) + 1e-300);
        }
    }
}
