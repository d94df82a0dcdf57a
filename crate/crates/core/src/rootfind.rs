//! Bracketed scalar root finding.
//!
//! Every transcendental inversion in the crate goes through
//! [`solve_bracketed`], a Brent-style hybrid of bisection, secant and
//! inverse quadratic interpolation that never leaves the initial bracket.
//! [`bisect`] is kept as a plain reference stepper.

use crate::error::{Error, Result};

/// An interval `[lo, hi]` on which `f` changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl RootBracket {
    /// Evaluates `f` at both ends and checks for a strict sign change.
    pub fn new<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64) -> Result<Self> {
        let f_lo = f(lo);
        let f_hi = f(hi);
        Self::from_values(lo, hi, f_lo, f_hi)
    }

    pub fn from_values(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let ordered = lo < hi;
        let opposite = (f_lo < 0.0 && f_hi > 0.0) || (f_lo > 0.0 && f_hi < 0.0);
        if !ordered || !opposite {
            return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Termination controls for [`solve_bracketed`] and [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl RootConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol >= 0.0) || max_iter == 0 {
            return Err(Error::InvalidParameter(format!(
                "root config needs abs_tol > 0, rel_tol >= 0, max_iter >= 1 \
                 (got {abs_tol}, {rel_tol}, {max_iter})"
            )));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_iter,
        })
    }

    /// Tolerance used by the special-function inverses: relative only,
    /// down to a few ulps, so tiny roots keep full relative precision.
    pub fn ulp_tight() -> Self {
        Self {
            abs_tol: f64::MIN_POSITIVE,
            rel_tol: 2.0 * f64::EPSILON,
            max_iter: 400,
        }
    }

    fn tolerance_at(&self, x: f64) -> f64 {
        self.abs_tol + self.rel_tol * x.abs()
    }
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 4.0 * f64::EPSILON,
            max_iter: 200,
        }
    }
}

/// Hybrid bracketed root finder.
///
/// Returns `x` inside the bracket with `|x - root| <= abs_tol + rel_tol * |x|`.
/// A non-finite function value at a trial point pulls the trial point back
/// toward the best finite iterate by repeated halving.
pub fn solve_bracketed<F: FnMut(f64) -> f64>(
    mut f: F,
    bracket: &RootBracket,
    cfg: &RootConfig,
) -> Result<f64> {
    let (mut a, mut fa) = (bracket.lo, bracket.f_lo);
    let (mut b, mut fb) = (bracket.hi, bracket.f_hi);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..cfg.max_iter {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 0.5 * cfg.tolerance_at(b);
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);

        if !fb.is_finite() {
            let mut halvings = 0;
            while !fb.is_finite() {
                if halvings == 64 {
                    return Err(Error::NumericalFailure(format!(
                        "non-finite function values near {b}"
                    )));
                }
                b = a + 0.5 * (b - a);
                fb = f(b);
                halvings += 1;
            }
            d = b - a;
            e = d;
        }
    }
    Err(Error::MaxIterExceeded {
        max_iter: cfg.max_iter,
        width: (c - b).abs(),
    })
}

/// Plain bisection on the sign of `f`. Slow, but trivially correct; used as
/// the reference for the hybrid stepper.
pub fn bisect<F: FnMut(f64) -> f64>(
    mut f: F,
    bracket: &RootBracket,
    cfg: &RootConfig,
) -> Result<f64> {
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let lo_negative = bracket.f_lo < 0.0;
    for _ in 0..cfg.max_iter {
        let mid = lo + 0.5 * (hi - lo);
        if 0.5 * (hi - lo) <= cfg.tolerance_at(mid) || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm.is_nan() {
            return Err(Error::NumericalFailure(format!("NaN at {mid}")));
        }
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::MaxIterExceeded {
        max_iter: cfg.max_iter,
        width: hi - lo,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Up => 1.0,
            Direction::Down => -1.0,
        }
    }
}

pub const MAX_EXPANSIONS: usize = 200;

/// Walks away from `seed` in geometrically growing steps until `f` changes
/// sign between two consecutive probes.
///
/// The first step has length `max(|seed|, 1) * (growth - 1)`. Probes where
/// `f` is exactly zero are stepped over so the returned bracket has a
/// strict sign change.
pub fn expand_bracket<F: FnMut(f64) -> f64>(
    mut f: F,
    seed: f64,
    direction: Direction,
    growth: f64,
) -> Result<RootBracket> {
    if !(growth > 1.0) || !growth.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "bracket growth must exceed 1, got {growth}"
        )));
    }
    let f_seed = f(seed);
    if !f_seed.is_finite() {
        return Err(Error::Domain {
            what: "expand_bracket seed",
            value: seed,
        });
    }
    let sign = direction.sign();
    let (mut prev, mut f_prev) = (seed, f_seed);
    let mut step = seed.abs().max(1.0) * (growth - 1.0);
    let mut x = seed;
    for _ in 0..MAX_EXPANSIONS {
        x += sign * step;
        step *= growth;
        let fx = f(x);
        if !fx.is_finite() {
            break;
        }
        if fx == 0.0 {
            continue;
        }
        if f_prev != 0.0 && (fx > 0.0) != (f_prev > 0.0) {
            let (lo, hi, f_lo, f_hi) = if prev < x {
                (prev, x, f_prev, fx)
            } else {
                (x, prev, fx, f_prev)
            };
            return RootBracket::from_values(lo, hi, f_lo, f_hi);
        }
        prev = x;
        f_prev = fx;
    }
    Err(Error::BracketNotFound {
        seed,
        expansions: MAX_EXPANSIONS,
    })
}

/// Adapts a fallible objective to the plain closures the solvers take.
/// The first error is kept and NaN is handed to the solver in its place.
pub(crate) struct Fallible<F> {
    f: F,
    error: Option<Error>,
}

impl<F: FnMut(f64) -> Result<f64>> Fallible<F> {
    pub(crate) fn new(f: F) -> Self {
        Self { f, error: None }
    }

    pub(crate) fn call(&mut self, x: f64) -> f64 {
        match (self.f)(x) {
            Ok(v) => v,
            Err(e) => {
                self.error.get_or_insert(e);
                f64::NAN
            }
        }
    }

    /// Prefers the stored objective error over whatever the solver reported.
    pub(crate) fn finish<T>(self, outcome: Result<T>) -> Result<T> {
        match self.error {
            Some(e) => Err(e),
            None => outcome,
        }
    }
}
