//! The `tate` command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or parse
//! error, 3 insufficient series precision.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::detline::{commutator, commutator_closed_form, tame_symbol, Mode};
use crate::error::Error;
use crate::exact::FieldCtx;
use crate::index::index0;
use crate::laurent::{parse_laurent, parse_matrix, Automorphism, LaurentPoly};
use crate::lattice::{scalar_json, TateSpace};
use crate::suites::{self, DEFAULT_CASES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tate", version, about = "Exact computations with lattices in k((t))^n")]
pub struct Cli {
    /// `Q`, or a prime field as `Fp:<p>` or `F<p>`.
    #[arg(long, global = true, default_value = "Q")]
    pub field: FieldCtx,
    /// Number of series coefficients kept when inverting.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    pub precision: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Index of multiplication by a unit, or of a matrix in GL_n(k[t, t^-1]).
    Index(IndexArgs),
    /// Commutator of lifts of two multiplications to the determinant extension.
    Commutator(PairArgs),
    /// The tame symbol of two units.
    Tame(PairArgs),
    /// Run randomized property suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct IndexArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Rows separated by `;`, entries by `,`.
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<String>,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
    #[arg(long, default_value_t = Mode::Ungraded)]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// lattice, index, family, detline, simplicial or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = DEFAULT_CASES)]
    pub cases: usize,
}

/// Output of one invocation.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, value, text)) => {
            let stdout = if cli.json { format!("{}\n", serde_json::to_string_pretty(&value).expect("json")) } else { text };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = match e {
                Error::InsufficientPrecision { .. } => EXIT_PRECISION,
                _ => EXIT_USAGE,
            };
            let hint = match e {
                Error::InsufficientPrecision { required, .. } => format!(" (rerun with --precision {required} or more)"),
                _ => String::new(),
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}{hint}\n") }
        }
    }
}

fn unit(ctx: FieldCtx, text: &str) -> crate::Result<LaurentPoly> {
    let f = parse_laurent(ctx, text)?;
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(f)
}

fn execute(cli: &Cli) -> crate::Result<(i32, Value, String)> {
    let ctx = cli.field;
    let precision = cli.precision as usize;
    match &cli.command {
        Command::Index(args) => {
            let (g, input) = match (&args.f, &args.matrix) {
                (Some(f), _) => (Automorphism::mult_by_poly(&unit(ctx, f)?)?, f.clone()),
                (_, Some(m)) => (Automorphism::gl(parse_matrix(ctx, m)?)?, m.clone()),
                _ => unreachable!("clap requires one of --f, --matrix"),
            };
            let space = TateSpace::new(ctx, g.rank())?;
            let value = index0(&g, space)?.value;
            let json = json!({ "field": ctx.to_string(), "input": input, "rank": g.rank(), "index": value });
            Ok((EXIT_OK, json, format!("{value}\n")))
        }
        Command::Commutator(args) | Command::Tame(args) => {
            let (f, g) = (unit(ctx, &args.f)?, unit(ctx, &args.g)?);
            let (af, ag) = (Automorphism::mult_by_poly(&f)?, Automorphism::mult_by_poly(&g)?);
            let tame = matches!(cli.command, Command::Tame(_));
            // The tame symbol is the graded commutator.
            let mode = if tame { Mode::Graded } else { args.mode };
            let value = commutator(&af, &ag, mode, precision)?;
            let formula = match mode {
                Mode::Ungraded => commutator_closed_form(&f, &g)?,
                Mode::Graded => tame_symbol(&f, &g)?,
            };
            let key = if tame { "tame" } else { "commutator" };
            let json = json!({
                key: { "value": scalar_json(&value), "mode": mode.to_string() },
                "formula": scalar_json(&formula),
                "match": value == formula,
            });
            let shown = if tame { &formula } else { &value };
            Ok((EXIT_OK, json, format!("{shown}\n")))
        }
        Command::Verify(args) => {
            let list = suites::parse_suites(&args.suite)?;
            let report = suites::run(&list, args.cases, cli.seed, precision);
            let code = if report.all_pass() { EXIT_OK } else { EXIT_FAILED };
            Ok((code, report.to_json(), report.to_text()))
        }
    }
}

/// Runs the process arguments and writes the outcome to stdio.
pub fn main() -> i32 {
    let out = run(std::env::args_os());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tate(args: &[&str]) -> Outcome {
        run(std::iter::once("tate").chain(args.iter().copied()))
    }

    #[test]
    fn index_examples() {
        assert_eq!(tate(&["index", "--field", "Q", "--f", "1*t^1"]).stdout, "1\n");
        assert_eq!(tate(&["index", "--field", "F5", "--f", "1"]).stdout, "0\n");
        assert_eq!(tate(&["index", "--matrix", "t,0;0,t^2"]).stdout, "3\n");
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(tate(&["commutator", "--f", "1*t^1", "--g", "2", "--mode", "ungraded"]).stdout, "1/2\n");
        assert_eq!(tate(&["tame", "--f", "1*t^1", "--g", "1*t^1"]).stdout, "-1\n");
        assert_eq!(tate(&["commutator", "--f", "3", "--g", "-2/7"]).stdout, "1\n");
        let json = tate(&["--json", "commutator", "--f", "t", "--g", "2"]).stdout;
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["match"], Value::Bool(true));
        assert_eq!(v["commutator"]["value"], "1/2");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(tate(&["index", "--f", "t^"]).code, EXIT_USAGE);
        assert_eq!(tate(&["index"]).code, EXIT_USAGE);
        assert_eq!(tate(&["--field", "F4", "index", "--f", "t"]).code, EXIT_USAGE);
        assert_eq!(tate(&["verify", "--suite", "nope"]).code, EXIT_USAGE);
        let short = tate(&["--precision", "1", "commutator", "--f", "1+t", "--g", "t^5"]);
        assert_eq!(short.code, EXIT_PRECISION, "{}", short.stderr);
        assert!(short.stderr.contains("required"));
        assert_eq!(tate(&["--help"]).code, EXIT_OK);
    }
}
