//! Data behind the standard plots, as CSV tables, together with the
//! qualitative claims each plot is meant to show.
//!
//! Column 1 is the sweep variable; the rest are curves. Quantities that are
//! undefined at a sample (a ratio at `α = 0`, a basis function outside its
//! principal domain) are written as `nan`.

use std::f64::consts::PI;
use std::io;

use crate::basisfn::{self, BasisFunctionId};
use crate::boxes::{lambda1_box, lambda2_box, BoxGeometry};
use crate::interval::{lambda1_interval, lambda2_interval, spectrum_interval, IntervalGeometry};
use crate::verify::{linspace, Check};
use crate::{Error, Result};

/// Default sample count. Odd, so that symmetric windows such as
/// `[-10, 10]` contain `α = 0` as a node.
pub const DEFAULT_RESOLUTION: usize = 401;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum FigureId {
    #[value(name = "first_two_square_rect")]
    FirstTwoSquareRect,
    #[value(name = "ratio_square_rect")]
    RatioSquareRect,
    #[value(name = "perim_first_two")]
    PerimFirstTwo,
    #[value(name = "perim_closeup")]
    PerimCloseup,
    #[value(name = "perim_ratio")]
    PerimRatio,
    #[value(name = "basis_gh")]
    BasisGh,
    #[value(name = "basis_GH")]
    BasisGhScaled,
    #[value(name = "interval_first_six")]
    IntervalFirstSix,
    #[value(name = "interval_vs_t_neg")]
    IntervalVsTNeg,
    #[value(name = "interval_vs_t_pos")]
    IntervalVsTPos,
}

impl FigureId {
    pub const ALL: [FigureId; 10] = [
        Self::FirstTwoSquareRect,
        Self::RatioSquareRect,
        Self::PerimFirstTwo,
        Self::PerimCloseup,
        Self::PerimRatio,
        Self::BasisGh,
        Self::BasisGhScaled,
        Self::IntervalFirstSix,
        Self::IntervalVsTNeg,
        Self::IntervalVsTPos,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::FirstTwoSquareRect => "first_two_square_rect",
            Self::RatioSquareRect => "ratio_square_rect",
            Self::PerimFirstTwo => "perim_first_two",
            Self::PerimCloseup => "perim_closeup",
            Self::PerimRatio => "perim_ratio",
            Self::BasisGh => "basis_gh",
            Self::BasisGhScaled => "basis_GH",
            Self::IntervalFirstSix => "interval_first_six",
            Self::IntervalVsTNeg => "interval_vs_t_neg",
            Self::IntervalVsTPos => "interval_vs_t_pos",
        }
    }

    /// Default sweep window. The plotted ranges are not recorded anywhere
    /// numerically; these reproduce the shape of each curve.
    pub fn default_window(self) -> (f64, f64) {
        match self {
            Self::FirstTwoSquareRect | Self::RatioSquareRect => (-10.0, 30.0),
            Self::PerimFirstTwo | Self::PerimRatio => (-20.0, 50.0),
            Self::PerimCloseup => (-2.0, 2.0),
            Self::BasisGh => (0.0, PI),
            Self::BasisGhScaled => (-1.0, 5.0),
            Self::IntervalFirstSix => (-10.0, 10.0),
            Self::IntervalVsTNeg | Self::IntervalVsTPos => (0.05, 5.0),
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Self::FirstTwoSquareRect | Self::PerimFirstTwo | Self::PerimCloseup => &[
                "alpha",
                "lambda1_square",
                "lambda1_rect7",
                "lambda2_square",
                "lambda2_rect7",
            ],
            Self::RatioSquareRect | Self::PerimRatio => &["alpha", "ratio_square", "ratio_rect7"],
            Self::BasisGh => &["x", "g1", "g2", "h1", "h2"],
            Self::BasisGhScaled => &["y", "G1", "G2", "H1", "H2"],
            Self::IntervalFirstSix => &[
                "alpha", "lambda1", "lambda2", "lambda3", "lambda4", "lambda5", "lambda6",
            ],
            Self::IntervalVsTNeg => &["t", "lambda1", "lambda2", "asymptote"],
            Self::IntervalVsTPos => &["t", "lambda1", "lambda2"],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FigureTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// Writes the table with every number at `digits` significant digits.
    pub fn write_csv<W: io::Write>(&self, out: W, digits: usize) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&v| crate::cli::format_number(v, digits)))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: io::Read>(input: R) -> csv::Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers()?.iter().map(str::to_owned).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            // unparseable cells read as nan rather than aborting the check
            rows.push(rec.iter().map(|s| s.parse().unwrap_or(f64::NAN)).collect());
        }
        Ok(Self { header, rows })
    }
}

/// The unit square and the area-one rectangle of aspect ratio 7.
fn square_and_rect7() -> Result<(BoxGeometry, BoxGeometry)> {
    let r = 7f64.sqrt();
    Ok((
        BoxGeometry::cube(2, 0.5)?,
        BoxGeometry::new(vec![r / 2.0, 0.5 / r])?,
    ))
}

fn ratio(l1: f64, l2: f64) -> f64 {
    if l1 == 0.0 {
        f64::NAN
    } else {
        l2 / l1.abs()
    }
}

fn or_nan(v: Result<f64>) -> f64 {
    v.unwrap_or(f64::NAN)
}

/// Samples figure `id` at `resolution` points of `window`, or of its
/// default window.
pub fn figure_table(
    id: FigureId,
    resolution: usize,
    window: Option<(f64, f64)>,
) -> Result<FigureTable> {
    if resolution < 2 {
        return Err(Error::InvalidParameter(format!(
            "figure resolution must be at least 2, got {resolution}"
        )));
    }
    let (lo, hi) = window.unwrap_or_else(|| id.default_window());
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "figure window must satisfy from < to, got [{lo}, {hi}]"
        )));
    }
    let xs = linspace(lo, hi, resolution);
    let header = id.columns().iter().map(|s| s.to_string()).collect();
    let mut rows = Vec::with_capacity(resolution);
    for &x in &xs {
        let mut row = vec![x];
        row.extend(figure_row(id, x)?);
        rows.push(row);
    }
    Ok(FigureTable { header, rows })
}

fn figure_row(id: FigureId, x: f64) -> Result<Vec<f64>> {
    use FigureId::*;
    Ok(match id {
        FirstTwoSquareRect | PerimFirstTwo | PerimCloseup | RatioSquareRect | PerimRatio => {
            let (sq, rect) = square_and_rect7()?;
            let perim = matches!(id, PerimFirstTwo | PerimCloseup | PerimRatio);
            let (a_sq, a_rect) = if perim {
                (x / sq.perimeter()?, x / rect.perimeter()?)
            } else {
                (x, x)
            };
            let l1s = lambda1_box(&sq, a_sq)?;
            let l1r = lambda1_box(&rect, a_rect)?;
            let l2s = lambda2_box(&sq, a_sq)?;
            let l2r = lambda2_box(&rect, a_rect)?;
            if matches!(id, RatioSquareRect | PerimRatio) {
                vec![ratio(l1s, l2s), ratio(l1r, l2r)]
            } else {
                vec![l1s, l1r, l2s, l2r]
            }
        }
        BasisGh => BasisFunctionId::ALL
            .iter()
            .map(|&f| or_nan(basisfn::eval(f, x)))
            .collect(),
        BasisGhScaled => BasisFunctionId::ALL
            .iter()
            .map(|&f| or_nan(basisfn::scaled_inverse(f, x)))
            .collect(),
        IntervalFirstSix => spectrum_interval(IntervalGeometry::new(1.0)?, x, 6)?.values(),
        IntervalVsTNeg | IntervalVsTPos => {
            let alpha = if id == IntervalVsTNeg { -1.0 } else { 1.0 };
            let g = IntervalGeometry::new(x)?;
            let mut row = vec![lambda1_interval(g, alpha)?, lambda2_interval(g, alpha)?];
            if id == IntervalVsTNeg {
                row.push(-alpha * alpha);
            }
            row
        }
    })
}

// ---------------------------------------------------------------- checks

fn col(t: &FigureTable, name: &str) -> Vec<f64> {
    t.column(name).unwrap_or_default()
}

/// Worst relative step in the direction of `sign` over consecutive finite
/// samples; positive iff strictly monotone there.
fn monotone_margin(v: &[f64], sign: f64) -> f64 {
    v.windows(2)
        .filter(|w| w[0].is_finite() && w[1].is_finite())
        .map(|w| sign * (w[1] - w[0]) / w[0].abs().max(w[1].abs()).max(f64::MIN_POSITIVE))
        .fold(f64::INFINITY, f64::min)
}

/// `min (hi - lo)` over rows where `keep` holds and both are finite.
fn below_margin(lo: &[f64], hi: &[f64], keep: impl Fn(usize) -> bool) -> f64 {
    (0..lo.len())
        .filter(|&i| keep(i) && lo[i].is_finite() && hi[i].is_finite())
        .map(|i| hi[i] - lo[i])
        .fold(f64::INFINITY, f64::min)
}

/// Like [`below_margin`] but allowing equality where the two coincide,
/// as the square and rectangle ratios do at the ends of the windows where
/// both eigenvalues are shared.
fn not_below(lo: &[f64], hi: &[f64], keep: impl Fn(usize) -> bool) -> Check {
    let m = below_margin(lo, hi, keep);
    Check {
        name: String::new(),
        passed: m >= 0.0,
        margin: m,
        tolerance: 0.0,
    }
}

fn named(mut c: Check, name: String) -> Check {
    c.name = name;
    c
}

/// The claims figure `id` illustrates, checked on `table`.
pub fn figure_checks(id: FigureId, table: &FigureTable) -> Vec<Check> {
    use FigureId::*;
    let p = format!("figure.{}", id.name());
    let x = table.column(id.columns()[0]).unwrap_or_default();
    let mut out = vec![Check::flag(
        format!("{p}.schema"),
        table.header.iter().map(String::as_str).eq(id.columns().iter().copied())
            && !table.rows.is_empty(),
    )];
    if !out[0].passed {
        return out;
    }
    let at = |i: usize| x[i];
    match id {
        FirstTwoSquareRect | PerimFirstTwo | PerimCloseup => {
            let (l1s, l1r, l2s, l2r) = (
                col(table, "lambda1_square"),
                col(table, "lambda1_rect7"),
                col(table, "lambda2_square"),
                col(table, "lambda2_rect7"),
            );
            let mut zero_err = 0.0f64;
            for i in (0..x.len()).filter(|&i| at(i) == 0.0) {
                zero_err = zero_err.max(l1s[i].abs()).max(l1r[i].abs());
            }
            out.push(Check::within(format!("{p}.lambda1_zero_at_alpha_zero"), zero_err, 1e-12));
            let inc = [&l1s, &l1r, &l2s, &l2r]
                .iter()
                .map(|c| monotone_margin(c, 1.0))
                .fold(f64::INFINITY, f64::min);
            out.push(Check::positive(format!("{p}.increasing_in_alpha"), inc));
            if id == FirstTwoSquareRect {
                out.push(Check::positive(
                    format!("{p}.lambda1_square_below_for_positive_alpha"),
                    below_margin(&l1s, &l1r, |i| at(i) > 0.0),
                ));
                out.push(Check::positive(
                    format!("{p}.lambda1_square_above_for_negative_alpha"),
                    below_margin(&l1r, &l1s, |i| at(i) < 0.0),
                ));
                out.push(Check::positive(
                    format!("{p}.lambda2_square_above_for_nonpositive_alpha"),
                    below_margin(&l2r, &l2s, |i| at(i) <= 0.0),
                ));
            } else {
                out.push(Check::positive(
                    format!("{p}.lambda1_square_below"),
                    below_margin(&l1s, &l1r, |i| at(i) != 0.0),
                ));
                let (am, ap) = (
                    basisfn::alpha_minus().unwrap_or(f64::NAN),
                    basisfn::alpha_plus().unwrap_or(f64::NAN),
                );
                out.push(Check::positive(
                    format!("{p}.lambda2_square_above_inside_window"),
                    below_margin(&l2r, &l2s, |i| at(i) > am && at(i) < ap),
                ));
            }
        }
        RatioSquareRect | PerimRatio => {
            let (rs, rr) = (col(table, "ratio_square"), col(table, "ratio_rect7"));
            let nan_at_zero = (0..x.len())
                .filter(|&i| at(i) == 0.0)
                .all(|i| rs[i].is_nan() && rr[i].is_nan());
            out.push(Check::flag(format!("{p}.undefined_at_alpha_zero"), nan_at_zero));
            let keep: Box<dyn Fn(usize) -> bool> = if id == PerimRatio {
                Box::new(|i| at(i) > 0.0)
            } else {
                Box::new(|i| at(i) != 0.0)
            };
            out.push(named(not_below(&rr, &rs, keep), format!("{p}.square_not_below_rect")));
        }
        BasisGh => {
            let inc = ["g1", "g2", "h1", "h2"]
                .iter()
                .map(|c| monotone_margin(&col(table, c), 1.0))
                .fold(f64::INFINITY, f64::min);
            out.push(Check::positive(format!("{p}.increasing"), inc));
            let (h1, h2) = (col(table, "h1"), col(table, "h2"));
            out.push(Check::positive(
                format!("{p}.h1_below_h2"),
                below_margin(&h1, &h2, |_| true),
            ));
        }
        BasisGhScaled => {
            // G2 has a pole at y = 0; check each side separately
            let g2 = col(table, "G2");
            let neg: Vec<f64> = (0..x.len()).filter(|&i| at(i) < 0.0).map(|i| g2[i]).collect();
            let pos: Vec<f64> = (0..x.len()).filter(|&i| at(i) > 0.0).map(|i| g2[i]).collect();
            let dec = [col(table, "G1"), neg, pos, col(table, "H1")]
                .iter()
                .map(|c| monotone_margin(c, -1.0))
                .fold(f64::INFINITY, f64::min);
            out.push(Check::positive(format!("{p}.G1_G2_H1_decreasing"), dec));
            out.push(Check::positive(
                format!("{p}.H2_increasing"),
                monotone_margin(&col(table, "H2"), 1.0),
            ));
        }
        IntervalFirstSix => {
            let cols: Vec<Vec<f64>> = (1..=6).map(|k| col(table, &format!("lambda{k}"))).collect();
            let mut neumann = 0.0f64;
            let mut found = false;
            for i in (0..x.len()).filter(|&i| at(i) == 0.0) {
                found = true;
                for (j, c) in cols.iter().enumerate() {
                    neumann = neumann.max((c[i] - (j as f64 * PI / 2.0).powi(2)).abs());
                }
            }
            out.push(Check::within(
                format!("{p}.neumann_row"),
                if found { neumann } else { f64::INFINITY },
                1e-10,
            ));
            let pair = (0..3)
                .map(|m| below_margin(&cols[2 * m], &cols[2 * m + 1], |_| true))
                .fold(f64::INFINITY, f64::min);
            out.push(Check::positive(format!("{p}.even_below_odd"), pair));
            let inc = cols
                .iter()
                .map(|c| monotone_margin(c, 1.0))
                .fold(f64::INFINITY, f64::min);
            out.push(Check::positive(format!("{p}.increasing_in_alpha"), inc));
        }
        IntervalVsTNeg => {
            let (l1, l2, asy) = (
                col(table, "lambda1"),
                col(table, "lambda2"),
                col(table, "asymptote"),
            );
            out.push(Check::positive(
                format!("{p}.lambda1_increasing"),
                monotone_margin(&l1, 1.0),
            ));
            out.push(Check::positive(
                format!("{p}.lambda2_decreasing"),
                monotone_margin(&l2, -1.0),
            ));
            out.push(Check::positive(
                format!("{p}.asymptote_separates"),
                below_margin(&l1, &asy, |_| true).min(below_margin(&asy, &l2, |_| true)),
            ));
        }
        IntervalVsTPos => {
            let (l1, l2) = (col(table, "lambda1"), col(table, "lambda2"));
            out.push(Check::positive(
                format!("{p}.decreasing"),
                monotone_margin(&l1, -1.0).min(monotone_margin(&l2, -1.0)),
            ));
            out.push(Check::positive(
                format!("{p}.positive_and_ordered"),
                l1.iter()
                    .cloned()
                    .fold(f64::INFINITY, f64::min)
                    .min(below_margin(&l1, &l2, |_| true)),
            ));
        }
    }
    out
}
