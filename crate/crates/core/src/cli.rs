//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad arguments,
//! 3 numerical failure, 4 I/O error, 5 inconsistent inverse-problem data.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::basisfn;
use crate::boxes::{self, gap_box, ratio_box, spectrum_box, steklov_sigma1, BoxGeometry};
use crate::figures::{self, FigureId, FigureTable};
use crate::shapes::{self, FamilyKind, Objective, OptKind, RectangleFamily};
use crate::verify::{self, Suite, VerifyConfig};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_ARGS: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_INCONSISTENT: i32 = 5;

/// Significant digits of the fundamental constants.
const CONSTANT_DIGITS: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "robinbox",
    version,
    about = "Robin Laplacian spectra of intervals and rectangular boxes"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Significant digits of printed numbers.
    #[arg(long, global = true, env = "ROBINBOX_PRECISION", default_value_t = 12,
          value_parser = clap::value_parser!(u16).range(1..=17))]
    pub precision: u16,
    /// Absolute floor of the oracle agreement tolerance.
    #[arg(long, global = true, env = "ROBINBOX_TOL_ABS", default_value_t = 1e-8)]
    pub tol_abs: f64,
    /// Relative oracle agreement tolerance.
    #[arg(long, global = true, env = "ROBINBOX_TOL_REL", default_value_t = 1e-6)]
    pub tol_rel: f64,
    /// Base grid of the finite-difference oracle.
    #[arg(long, global = true, env = "ROBINBOX_ORACLE_GRID", default_value_t = crate::oracle::DEFAULT_BASE_GRID)]
    pub oracle_grid: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First k eigenvalues of a box, with mode tags.
    Eig {
        /// Half-widths, comma separated; one value gives an interval.
        #[arg(long = "box", value_delimiter = ',', required = true, allow_negative_numbers = true)]
        widths: Vec<f64>,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        csv: bool,
    },
    /// The critical Robin parameters and the square's zero crossing.
    Constants,
    /// Writes the data of a figure as CSV.
    Figure {
        #[arg(value_enum)]
        id: FigureId,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = figures::DEFAULT_RESOLUTION)]
        resolution: usize,
        /// Start of the sweep window.
        #[arg(long, allow_negative_numbers = true, requires = "to")]
        from: Option<f64>,
        /// End of the sweep window.
        #[arg(long, allow_negative_numbers = true, requires = "from")]
        to: Option<f64>,
        /// Also run the checks the figure is meant to illustrate.
        #[arg(long)]
        check: bool,
    },
    /// Runs an invariant suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Grid size of the shape scans.
        #[arg(long, default_value_t = 256)]
        scan_grid: usize,
    },
    /// Recovers a rectangle from its first two eigenvalues.
    Hear {
        #[arg(long, allow_negative_numbers = true)]
        lambda1: f64,
        #[arg(long, allow_negative_numbers = true)]
        lambda2: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Scans a one-parameter family of boxes for the optimum of an objective.
    Scan {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        alpha: f64,
        /// Dimension of the boxes; the perimeter family is 2D only.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Value of the constrained size; defaults to that of the unit-half-width cube.
        #[arg(long)]
        norm: Option<f64>,
        /// Minimize or maximize; by default the direction in which the
        /// symmetric shape is extremal.
        #[arg(long, value_enum)]
        opt: Option<OptArg>,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Print the sampled trace as CSV after the summary.
        #[arg(long)]
        csv: bool,
    },
    /// First nonzero Steklov eigenvalue of a box.
    Steklov {
        #[arg(long = "box", value_delimiter = ',', required = true, allow_negative_numbers = true)]
        widths: Vec<f64>,
    },
    /// Spectral gap of a box.
    Gap {
        #[arg(long = "box", value_delimiter = ',', required = true, allow_negative_numbers = true)]
        widths: Vec<f64>,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Spectral ratio `λ₂/|λ₁|` of a box.
    Ratio {
        #[arg(long = "box", value_delimiter = ',', required = true, allow_negative_numbers = true)]
        widths: Vec<f64>,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Volume,
    Perim,
    Diameter,
    Surface,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Lambda1,
    Lambda2,
    Gap,
    Ratio,
    Steklov,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OptArg {
    Min,
    Max,
}

/// Rounds `v` to `digits` significant digits and prints the shortest
/// decimal that reads back as the rounded value.
pub fn format_number(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let digits = digits.clamp(1, 17);
    let rounded: f64 = format!("{:.*e}", digits - 1, v).parse().unwrap_or(v);
    let a = rounded.abs();
    if rounded == 0.0 {
        "0".into()
    } else if (1e-5..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain { .. }
            | Error::InvalidGeometry(_)
            | Error::InvalidParameter(_)
            | Error::AlphaZero
            | Error::Dimension { .. } => EXIT_ARGS,
            Error::Inconsistent { .. } => EXIT_INCONSISTENT,
            Error::NoSignChange { .. }
            | Error::MaxIterExceeded { .. }
            | Error::BracketNotFound { .. }
            | Error::NumericalFailure(_) => EXIT_NUMERIC,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: format!("I/O error: {e}"),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: format!("I/O error: {e}"),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` and runs the command, writing to the given streams.
/// Returns the process exit code.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ARGS } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    run(&cli, out, err)
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn geometry(widths: &[f64]) -> std::result::Result<BoxGeometry, Failure> {
    Ok(BoxGeometry::new(widths.to_vec())?)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let p = cli.global.precision as usize;
    let num = |v: f64| format_number(v, p);
    match &cli.command {
        Command::Eig {
            widths,
            alpha,
            k,
            csv,
        } => {
            if *k == 0 {
                return Err(Error::InvalidParameter("k must be at least 1".into()).into());
            }
            let g = geometry(widths)?;
            let spectrum = spectrum_box(&g, *alpha, *k)?;
            if *csv {
                writeln!(out, "k,value,mode")?;
                for (i, e) in spectrum.entries().iter().enumerate() {
                    writeln!(out, "{},{},{}", i + 1, num(e.value), e.mode.tag())?;
                }
            } else {
                for (i, e) in spectrum.entries().iter().enumerate() {
                    writeln!(out, "{:>3}  {:>22}  {}", i + 1, num(e.value), e.mode.tag())?;
                }
            }
        }
        Command::Constants => {
            let d = CONSTANT_DIGITS;
            let (x, a0) = boxes::square_zero_crossing()?;
            writeln!(out, "alpha_plus {}", format_number(basisfn::alpha_plus()?, d))?;
            writeln!(out, "alpha_minus {}", format_number(basisfn::alpha_minus()?, d))?;
            writeln!(out, "alpha_0 {}", format_number(a0, d))?;
            writeln!(out, "x {}", format_number(x, d))?;
        }
        Command::Figure {
            id,
            out: path,
            resolution,
            from,
            to,
            check,
        } => {
            let window = from.zip(*to);
            let table = figures::figure_table(*id, *resolution, window)?;
            match path {
                Some(path) => {
                    let file = File::create(path)?;
                    let mut w = BufWriter::new(file);
                    table.write_csv(&mut w, p)?;
                    w.flush()?;
                }
                None => table.write_csv(&mut *out, p)?,
            }
            if *check {
                // checks read the table back as written, at the printed precision
                let mut buf = Vec::new();
                table.write_csv(&mut buf, p)?;
                let written = FigureTable::read_csv(buf.as_slice())?;
                let checks = figures::figure_checks(*id, &written);
                let sink: &mut dyn Write = if path.is_some() { out } else { err };
                for c in &checks {
                    writeln!(sink, "{c}")?;
                }
                if checks.iter().any(|c| !c.passed) {
                    return Ok(EXIT_VERIFY);
                }
            }
        }
        Command::Verify { suite, scan_grid } => {
            let cfg = VerifyConfig {
                tol_abs: cli.global.tol_abs,
                tol_rel: cli.global.tol_rel,
                oracle_grid: cli.global.oracle_grid,
                scan_grid: *scan_grid,
            };
            if cfg.oracle_grid < 8 || cfg.scan_grid < 16 {
                return Err(Error::InvalidParameter(
                    "oracle grid must be at least 8 and scan grid at least 16".into(),
                )
                .into());
            }
            let report = verify::run_suite(*suite, &cfg);
            write!(out, "{report}")?;
            let failed = report.failures().count();
            writeln!(err, "{} checks, {} failed", report.checks.len(), failed)?;
            if failed > 0 {
                return Ok(EXIT_VERIFY);
            }
        }
        Command::Hear {
            lambda1,
            lambda2,
            alpha,
        } => {
            if *alpha == 0.0 {
                return Err(Failure {
                    code: EXIT_ARGS,
                    message: "a rectangle is not determined by its first two Neumann \
                              eigenvalues; alpha must be nonzero"
                        .into(),
                });
            }
            match shapes::hear_rectangle(*lambda1, *lambda2, *alpha) {
                Ok(h) => {
                    let w = h.geometry.half_widths();
                    writeln!(out, "long_side {}", num(2.0 * w[0]))?;
                    writeln!(out, "short_side {}", num(2.0 * w[1]))?;
                    writeln!(out, "residual {}", format_number(h.residual, 3))?;
                }
                Err(Error::Inconsistent { reason, residual }) => {
                    writeln!(out, "inconsistent residual {}", format_number(residual, 3))?;
                    writeln!(err, "{reason}")?;
                    return Ok(EXIT_INCONSISTENT);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Scan {
            family,
            objective,
            alpha,
            dim,
            norm,
            opt,
            grid,
            csv,
        } => {
            let kind = match family {
                FamilyArg::Volume => FamilyKind::FixedVolume,
                FamilyArg::Perim => FamilyKind::FixedPerimeter,
                FamilyArg::Diameter => FamilyKind::FixedDiameter,
                FamilyArg::Surface => FamilyKind::FixedSurface,
            };
            let fam = match norm {
                Some(v) => RectangleFamily::new(kind, *dim, *v)?,
                None => RectangleFamily::standard(kind, *dim)?,
            };
            let perim = kind == FamilyKind::FixedPerimeter;
            let obj = match (objective, perim) {
                (ObjectiveArg::Lambda1, false) => Objective::Lambda1,
                (ObjectiveArg::Lambda1, true) => Objective::PerimLambda1,
                (ObjectiveArg::Lambda2, false) => Objective::Lambda2,
                (ObjectiveArg::Lambda2, true) => Objective::PerimLambda2,
                (ObjectiveArg::Gap, _) => Objective::Gap,
                (ObjectiveArg::Ratio, false) => Objective::Ratio,
                (ObjectiveArg::Ratio, true) => Objective::PerimRatio,
                (ObjectiveArg::Steklov, false) => Objective::Steklov,
                (ObjectiveArg::Steklov, true) => Objective::SteklovPerimeter,
            };
            let opt_kind = match opt {
                Some(OptArg::Min) => OptKind::Min,
                Some(OptArg::Max) => OptKind::Max,
                None => match obj {
                    Objective::PerimLambda1 => OptKind::Min,
                    Objective::Lambda1 if *alpha > 0.0 => OptKind::Min,
                    _ => OptKind::Max,
                },
            };
            let r = shapes::scan_family(&fam, *alpha, obj, opt_kind, *grid)?;
            let param = if perim { "p" } else { "z" };
            writeln!(out, "argopt {param}={}", num(r.argopt))?;
            writeln!(out, "opt_value {}", num(r.opt_value))?;
            writeln!(out, "cell {}", num(r.cell))?;
            writeln!(
                out,
                "optimum {}",
                if r.at_boundary {
                    "asymptotic (approached as the family degenerates)"
                } else {
                    "interior"
                }
            )?;
            if *csv {
                writeln!(out, "{param},value")?;
                for (x, v) in r.parameter_grid.iter().zip(&r.objective_values) {
                    writeln!(out, "{},{}", num(*x), num(*v))?;
                }
            }
        }
        Command::Steklov { widths } => {
            writeln!(out, "{}", num(steklov_sigma1(&geometry(widths)?)?))?;
        }
        Command::Gap { widths, alpha } => {
            writeln!(out, "{}", num(gap_box(&geometry(widths)?, *alpha)?))?;
        }
        Command::Ratio { widths, alpha } => {
            writeln!(out, "{}", num(ratio_box(&geometry(widths)?, *alpha)?))?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(2.4674011002723395, 12), "2.46740110027");
        assert_eq!(format_number(0.0, 12), "0");
        assert_eq!(format_number(-9.388460249426151, 10), "-9.388460249");
        assert_eq!(format_number(1.5e-20, 12), "1.5e-20");
        assert_eq!(format_number(f64::NAN, 12), "nan");
        assert_eq!(format_number(123456.0, 3), "123000");
    }
}
