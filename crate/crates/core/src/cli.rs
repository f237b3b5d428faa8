//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error,
//! 3 enumeration guard exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{bound_report, BoundReport};
use crate::document::FunctionDocument;
use crate::error::Error;
use crate::instances::InstanceGenerator;
use crate::liftings::reduce_via_ft;
use crate::model::{BoxDomain, Certificate, ClassKind, FunctionSpec, Limits, DEFAULT_MAX_POINTS};
use crate::oracle::{check_equivalent, EquivalenceVerdict};
use crate::reducelp::reduce_via_lp;

pub const MAX_POINTS_ENV: &str = "GAPFORGE_MAX_POINTS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gapforge", version, about = "Order-equivalent functions with small gaps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Lp,
    Ft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Linear,
    Separable,
    #[value(name = "separable_quadratic", alias = "separable-quadratic")]
    SeparableQuadratic,
    Quadratic,
}

impl From<ClassArg> for ClassKind {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Linear => ClassKind::Linear,
            ClassArg::Separable => ClassKind::Separable,
            ClassArg::SeparableQuadratic => ClassKind::SeparableQuadratic,
            ClassArg::Quadratic => ClassKind::Quadratic,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce the function in a document and write the result with its certificate.
    Reduce {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "lp")]
        method: RouteArg,
        /// Exit with status 1 if the result is not equivalent to the input.
        #[arg(long)]
        verify: bool,
        #[arg(long = "max-points")]
        max_points: Option<u64>,
    },
    /// Check two documents for order equivalence on their common box.
    Verify {
        #[arg(short = 'f')]
        f: PathBuf,
        #[arg(short = 'g')]
        g: PathBuf,
        #[arg(long = "max-points")]
        max_points: Option<u64>,
    },
    /// Print the gap ceilings of a class.
    Bounds {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(short = 'n', long = "dim")]
        n: usize,
        #[arg(short = 'N', long = "radius")]
        radius: i64,
        #[arg(long)]
        json: bool,
    },
    /// Reduce seeded random instances and print one row per trial.
    Bench {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(short = 'n', long = "dim")]
        n: usize,
        #[arg(short = 'N', long = "radius")]
        radius: i64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "lp")]
        method: RouteArg,
        #[arg(long = "max-points")]
        max_points: Option<u64>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeGuard { .. } => EXIT_GUARD,
        Error::Internal(_) | Error::Lp(_) => EXIT_VERIFY_FAILED,
        _ => EXIT_INPUT,
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the CLI with `GAPFORGE_MAX_POINTS` taken from the process environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(MAX_POINTS_ENV).ok();
    run_with_env(args, env.as_deref(), out, err)
}

/// Runs the CLI with an explicit value for the max-points environment override.
pub fn run_with_env<I, T>(args: I, max_points_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, max_points_env, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn limits(flag: Option<u64>, env: Option<&str>) -> Result<Limits, Failure> {
    if let Some(m) = flag {
        return Ok(Limits::new(m));
    }
    match env {
        None => Ok(Limits::new(DEFAULT_MAX_POINTS)),
        Some(s) => s.trim().parse().map(Limits::new).map_err(|_| Failure {
            code: EXIT_INPUT,
            message: format!("{MAX_POINTS_ENV} must be a nonnegative integer, got {s:?}"),
        }),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    }
}

fn read_spec(path: &Path) -> Result<FunctionSpec, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let doc = FunctionDocument::from_json(&text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(doc.to_spec()?)
}

fn route(method: RouteArg, f: &FunctionSpec, limits: &Limits) -> crate::Result<(FunctionSpec, Certificate)> {
    match method {
        RouteArg::Lp => reduce_via_lp(f, limits),
        RouteArg::Ft => reduce_via_ft(f, limits),
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: e.to_string(),
    }
}

fn dispatch(cmd: Command, env: Option<&str>, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Reduce {
            input,
            output,
            method,
            verify,
            max_points,
        } => {
            let limits = limits(max_points, env)?;
            let f = read_spec(&input)?;
            let (g, cert) = route(method, &f, &limits)?;
            let doc = FunctionDocument::from_spec(&g).with_certificate(&cert);
            std::fs::write(&output, doc.to_json() + "\n").map_err(|e| io_failure(&output, e))?;
            writeln!(
                out,
                "method {} gap {} bound {} verified {}",
                cert.method.as_str(),
                cert.gap,
                cert.bound,
                cert.verified
            )
            .map_err(io)?;
            Ok(if verify && !cert.verified {
                EXIT_VERIFY_FAILED
            } else {
                EXIT_OK
            })
        }
        Command::Verify { f, g, max_points } => {
            let limits = limits(max_points, env)?;
            let fs = read_spec(&f)?;
            let gs = read_spec(&g)?;
            if fs.domain() != gs.domain() {
                return Err(Failure {
                    code: EXIT_INPUT,
                    message: format!(
                        "boxes differ: n={} N={} versus n={} N={}",
                        fs.domain().dim(),
                        fs.domain().radius(),
                        gs.domain().dim(),
                        gs.domain().radius()
                    ),
                });
            }
            match check_equivalent(&fs, &gs, &limits)? {
                EquivalenceVerdict::Equivalent => {
                    writeln!(out, "equivalent").map_err(io)?;
                    Ok(EXIT_OK)
                }
                EquivalenceVerdict::Counterexample(c) => {
                    writeln!(out, "counterexample x={:?} y={:?} reason={}", c.x, c.y, c.reason).map_err(io)?;
                    Ok(EXIT_VERIFY_FAILED)
                }
            }
        }
        Command::Bounds { class, n, radius, json } => {
            BoxDomain::new(n, radius)?;
            let report = bound_report(class.into(), n, radius)?;
            let text = if json { report_json(&report) } else { report_text(&report) };
            write!(out, "{text}").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Bench {
            class,
            n,
            radius,
            trials,
            seed,
            method,
            max_points,
        } => {
            let limits = limits(max_points, env)?;
            let domain = BoxDomain::new(n, radius)?;
            let table = bench_table(class.into(), domain, trials, seed, method, &limits)?;
            write!(out, "{}", table.text).map_err(io)?;
            Ok(if table.all_verified {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
    }
}

/// Renders big integers exactly up to 40 digits, otherwise as a digit count.
fn compact(v: &crate::model::Int) -> String {
    let s = v.to_string();
    if s.len() <= 40 {
        s
    } else {
        format!("{}...({} digits)", &s[..12], s.len())
    }
}

fn report_text(r: &BoundReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "class        {}", r.class);
    let _ = writeln!(s, "n            {}", r.n);
    let _ = writeln!(s, "N            {}", r.radius);
    let _ = writeln!(s, "d            {}", r.d);
    let _ = writeln!(s, "a            {}", r.a);
    let _ = writeln!(s, "d!*a^d       {}", compact(&r.exact_dfact_bound));
    let _ = writeln!(s, "rho          {}", rho_text(r));
    if let Some(b) = &r.simple_bound {
        let _ = writeln!(s, "simple       {b}");
    }
    for (label, v) in &r.prior_bounds {
        let _ = writeln!(s, "{label:<12} {}", compact(v));
    }
    s
}

fn rho_text(r: &BoundReport) -> String {
    let digits = r.exact_dfact_bound.to_string().len();
    if digits <= 30 {
        r.rho.upper_decimal(4)
    } else {
        format!("~{} digits (upper end)", digits)
    }
}

fn report_json(r: &BoundReport) -> String {
    let prior: serde_json::Map<String, serde_json::Value> = r
        .prior_bounds
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v.to_string())))
        .collect();
    let v = json!({
        "class": r.class.as_str(),
        "n": r.n,
        "N": r.radius,
        "d": r.d,
        "a": r.a.to_string(),
        "dfact_bound": r.exact_dfact_bound.to_string(),
        "rho_upper": r.rho.upper_decimal(6),
        "simple_bound": r.simple_bound.as_ref().map(|b| b.to_string()),
        "prior_bounds": prior,
    });
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

pub struct BenchTable {
    pub text: String,
    pub all_verified: bool,
}

fn bench_table(
    kind: ClassKind,
    domain: BoxDomain,
    trials: usize,
    seed: u64,
    method: RouteArg,
    limits: &Limits,
) -> Result<BenchTable, Failure> {
    let report = bound_report(kind, domain.dim(), domain.radius())?;
    let rho = rho_text(&report);
    let dfact = compact(&report.exact_dfact_bound);
    let mut gen = InstanceGenerator::new(seed);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "# class={} n={} N={} method={} seed={} trials={}",
        kind,
        domain.dim(),
        domain.radius(),
        if method == RouteArg::Lp { "lp" } else { "ft" },
        seed,
        trials
    );
    let _ = writeln!(text, "trial\tgap\tbound\tdfact_bound\trho\tverified");
    let mut all = true;
    for t in 0..trials {
        let f = gen.of_kind(kind, domain);
        let (_, cert) = route(method, &f, limits)?;
        all &= cert.verified;
        let _ = writeln!(
            text,
            "{t}\t{}\t{}\t{dfact}\t{rho}\t{}",
            cert.gap,
            compact(&cert.bound),
            cert.verified
        );
    }
    Ok(BenchTable {
        text,
        all_verified: all,
    })
}
