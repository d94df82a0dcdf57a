//! Finite-difference reference solver for the 1D Robin problem, kept
//! independent of the transcendental formulas so it can check them.
//!
//! The operator `-u''` on `[-t, t]` is discretized with central differences
//! on `n` nodes including both endpoints. The Robin condition enters through
//! a ghost node, `u(-1) = u(1) - 2hα u(0)`, which makes the two boundary rows
//! `(2(1 + hα) u0 - 2 u1) / h²`. A diagonal similarity (weight `√2` on the
//! end nodes, equivalent to giving boundary rows half-cell weight) turns the
//! result into a symmetric tridiagonal matrix with the same eigenvalues.
//!
//! Boxes need no separate check: the tensor-grid operator of a box is the
//! Kronecker sum of these 1D matrices, so its eigenvalues are sums of theirs.

use crate::error::{Error, Result};
use crate::interval::{check_alpha, IntervalGeometry};

/// Default coarsest grid for Richardson extrapolation.
pub const DEFAULT_BASE_GRID: usize = 401;

/// Target bound on `|α| h` for negative modes, whose eigenfunctions live in
/// a boundary layer of width about `1/|α|`.
pub const MAX_ALPHA_H: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator {
    pub n: usize,
    pub h: f64,
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl DiscreteOperator {
    /// Number of eigenvalues strictly below `x`, from the signs of the
    /// pivots of `LDLᵀ = T - xI`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.n {
            let e = self.offdiag[i - 1];
            let prev = if q == 0.0 { f64::EPSILON * e.abs() } else { q };
            q = self.diag[i] - x - e * e / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Interval containing every eigenvalue, from Gershgorin discs.
    pub fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < self.n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }
}

pub fn discretize(geom: IntervalGeometry, alpha: f64, n: usize) -> Result<DiscreteOperator> {
    check_alpha(alpha)?;
    if n < 8 {
        return Err(Error::InvalidParameter(format!(
            "grid needs at least 8 nodes, got {n}"
        )));
    }
    let h = geom.length() / (n - 1) as f64;
    let h2 = h * h;
    let mut diag = vec![2.0 / h2; n];
    let mut offdiag = vec![-1.0 / h2; n - 1];
    let end = 2.0 * (1.0 + h * alpha) / h2;
    diag[0] = end;
    diag[n - 1] = end;
    offdiag[0] = -std::f64::consts::SQRT_2 / h2;
    offdiag[n - 2] = -std::f64::consts::SQRT_2 / h2;
    Ok(DiscreteOperator {
        n,
        h,
        diag,
        offdiag,
    })
}

/// The `k` smallest eigenvalues by Sturm-count bisection, each to
/// `1e-12` absolute plus `1e-12` relative.
pub fn eigenvalues_sturm(op: &DiscreteOperator, k: usize) -> Result<Vec<f64>> {
    if k == 0 || k > op.n {
        return Err(Error::InvalidParameter(format!(
            "k must be in 1..={}, got {k}",
            op.n
        )));
    }
    let (g_lo, g_hi) = op.gershgorin();
    let pad = 1e-12 * (g_hi - g_lo).abs().max(1.0);
    let (g_lo, g_hi) = (g_lo - pad, g_hi + pad);
    if op.count_below(g_lo) != 0 || op.count_below(g_hi) != op.n {
        return Err(Error::NumericalFailure(
            "Sturm count disagrees with the Gershgorin enclosure".into(),
        ));
    }
    let mut out = Vec::with_capacity(k);
    let mut floor = g_lo;
    for j in 0..k {
        let (mut lo, mut hi) = (floor, g_hi);
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 1e-12 + 1e-12 * mid.abs() {
                break;
            }
            if op.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        // clusters closer than the tolerance may resolve out of order
        let value = out.last().map_or(0.5 * (lo + hi), |&prev: &f64| prev.max(0.5 * (lo + hi)));
        out.push(value);
        floor = lo;
    }
    Ok(out)
}

/// Extrapolated eigenvalues and the data behind them.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub values: Vec<f64>,
    /// `|R(2n-1, 4n-3) - R(n, 2n-1)|` per eigenvalue.
    pub error_estimates: Vec<f64>,
    /// Raw eigenvalues on grids `n`, `2n - 1`, `4n - 3`.
    pub levels: [Vec<f64>; 3],
    pub grids: [usize; 3],
}

/// Coarsest grid for a cell: at least `base`, and fine enough that
/// `|α| h <= MAX_ALPHA_H`.
pub fn grid_for(geom: IntervalGeometry, alpha: f64, base: usize) -> usize {
    let needed = (geom.length() * alpha.abs() / MAX_ALPHA_H).ceil() as usize + 1;
    base.max(needed)
}

pub fn oracle_eigs(geom: IntervalGeometry, alpha: f64, k: usize) -> Result<OracleResult> {
    oracle_eigs_with_grid(geom, alpha, k, grid_for(geom, alpha, DEFAULT_BASE_GRID))
}

/// Richardson extrapolation over the nested grids `n`, `2n - 1`, `4n - 3`,
/// which halve the step each time and share nodes.
pub fn oracle_eigs_with_grid(
    geom: IntervalGeometry,
    alpha: f64,
    k: usize,
    n: usize,
) -> Result<OracleResult> {
    if k == 0 || k > 10 {
        return Err(Error::InvalidParameter(format!(
            "oracle serves 1..=10 eigenvalues, got {k}"
        )));
    }
    let grids = [n, 2 * n - 1, 4 * n - 3];
    let mut levels: [Vec<f64>; 3] = Default::default();
    for (slot, &m) in levels.iter_mut().zip(&grids) {
        *slot = eigenvalues_sturm(&discretize(geom, alpha, m)?, k)?;
    }
    let mut values = Vec::with_capacity(k);
    let mut error_estimates = Vec::with_capacity(k);
    for ((&a, &b), &c) in levels[0].iter().zip(&levels[1]).zip(&levels[2]).take(k) {
        let coarse = (4.0 * b - a) / 3.0;
        let fine = (4.0 * c - b) / 3.0;
        values.push(fine);
        error_estimates.push((fine - coarse).abs());
    }
    Ok(OracleResult {
        values,
        error_estimates,
        levels,
        grids,
    })
}

/// Half-lengths and Robin parameters of the standard validation matrix.
/// `None` in the parameter list stands for `α = -1/t`.
pub const VALIDATION_HALF_LENGTHS: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
pub const VALIDATION_ALPHAS: [Option<f64>; 8] = [
    Some(-5.0),
    Some(-2.0),
    None,
    Some(-0.3),
    Some(0.0),
    Some(0.3),
    Some(1.0),
    Some(5.0),
];

/// All `(t, α)` cells of the validation matrix.
pub fn validation_matrix() -> Vec<(f64, f64)> {
    let mut cells = Vec::new();
    for &t in &VALIDATION_HALF_LENGTHS {
        for a in VALIDATION_ALPHAS {
            cells.push((t, a.unwrap_or(-1.0 / t)));
        }
    }
    cells
}

/// Acceptance threshold for closed form versus oracle.
pub fn agreement_tolerance(lambda: f64) -> f64 {
    (1e-6 * lambda.abs()).max(1e-8)
}
