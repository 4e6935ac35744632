//! Command-line front end: `.pbf`/`.mla` parsing, reports, and the `pbf`
//! subcommands.
//!
//! Exit codes: 0 on success, 1 when a checked inequality or kernel property
//! fails, 2 on usage, parse or input errors.

pub mod format;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use pbf_core::bounds::{self, Family};
use pbf_core::maxlin::{
    alon_witness_check_with, decide_with, kernelize, lower_bound_test, solve_bruteforce_with,
    SystemShape,
};
use pbf_core::suite::{self, FunctionShape, SuiteReport};
use pbf_core::{Execution, Limits};

use crate::report::{AnalysisReport, CheckReport, KernelReport, SolveReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pbf", version, about = "Exact Fourier analysis of pseudo-Boolean functions")]
struct Cli {
    /// Largest n for exact dense truth tables.
    #[arg(long, global = true, env = "PBF_DENSE_CAP")]
    dense_cap: Option<usize>,
    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degree, width, moments, norms and bound checks for a .pbf file.
    Analyze {
        file: PathBuf,
        /// Even moment orders r (E[f^{2r}]), comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        moments: Vec<u32>,
        /// p-norms to evaluate, comma separated.
        #[arg(long, value_delimiter = ',')]
        norms: Vec<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Hypercontractive coefficients.
    Bound(BoundArgs),
    /// Randomized verification suites.
    Verify(VerifyArgs),
    /// MaxLin-AA kernelization and exact search on a .mla file.
    Maxlin {
        action: MaxlinAction,
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write one of the extremal families as a .pbf file.
    Examples {
        family: ExampleFamily,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV of ||f||_{2r}/||f||_2 against sqrt(r rho) over a family.
    Scan {
        /// affine, full, linear, constant or all.
        #[arg(long)]
        family: String,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        rmax: u32,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("coefficient").required(true).args(["classical", "width42", "width2r", "qp"])))]
struct BoundArgs {
    /// ((q-1)/(p-1))^{d/2}
    #[arg(long, num_args = 3, value_names = ["Q", "P", "D"], allow_negative_numbers = true)]
    classical: Option<Vec<f64>>,
    /// (2 rho + 1 - 2 rho/m)^{1/4}
    #[arg(long, num_args = 2, value_names = ["RHO", "M"])]
    width42: Option<Vec<u64>>,
    /// ((2r)! rho^{r-1})^{1/2r}
    #[arg(long, num_args = 2, value_names = ["R", "RHO"])]
    width2r: Option<Vec<u64>>,
    /// Use the Bell-number coefficient with --width2r.
    #[arg(long, requires = "width2r")]
    refined: bool,
    /// ((2r)! rho^{r-1})^{1/2r} with r = ceil(q/2)
    #[arg(long, num_args = 3, value_names = ["Q", "P", "RHO"], allow_negative_numbers = true)]
    qp: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    target: VerifyTarget,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 10)]
    nmax: usize,
    #[arg(long, default_value_t = 32)]
    mmax: usize,
    #[arg(long, env = "PBF_SEED", default_value_t = 0)]
    seed: u64,
    /// Coefficient magnitude bound for random functions.
    #[arg(long, default_value_t = 10)]
    coef: i64,
    /// Moment order for theorem2 (default: 1, 2 and 3).
    #[arg(long, conflicts_with_all = ["q", "p"])]
    r: Option<u32>,
    /// Also check the Bell-number coefficient (theorem2).
    #[arg(long)]
    refined: bool,
    #[arg(long, requires = "p")]
    q: Option<f64>,
    #[arg(long, requires = "q")]
    p: Option<f64>,
    /// Maximum weight (maxlin).
    #[arg(long, default_value_t = 3)]
    wmax: i64,
    /// Maximum parameter k (maxlin).
    #[arg(long, default_value_t = 3)]
    kmax: i64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Theorem1,
    Theorem2,
    Corollary,
    Maxlin,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MaxlinAction {
    Kernel,
    Solve,
    Check,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExampleFamily {
    Affine,
    Full,
    Linear,
}

/// Pairs checked by `verify corollary` when none is given.
pub const COROLLARY_PAIRS: [(f64, f64); 4] = [(4.0, 2.0), (3.0, 2.0), (6.0, 2.0), (6.0, 4.0)];

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

struct Context<'a> {
    limits: Limits,
    exec: Execution,
    out: &'a mut dyn Write,
}

impl Context<'_> {
    fn emit(&mut self, text: &str) -> Outcome {
        self.out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("write failed: {e}")))?;
        Ok(EXIT_OK)
    }

    fn emit_json<T: serde::Serialize>(&mut self, value: &T) -> Outcome {
        let mut text = serde_json::to_string_pretty(value).map_err(Failure::usage)?;
        text.push('\n');
        self.emit(&text)
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut limits = Limits::default();
    if let Some(cap) = cli.dense_cap {
        limits.dense_exact = cap;
    }
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let mut ctx = Context { limits, exec, out };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn dispatch(command: Command, ctx: &mut Context<'_>) -> Outcome {
    match command {
        Command::Analyze {
            file,
            moments,
            norms,
            json,
        } => analyze(ctx, &file, &moments, &norms, json),
        Command::Bound(args) => bound(ctx, args),
        Command::Verify(args) => verify(ctx, args),
        Command::Maxlin { action, file, json } => maxlin(ctx, action, &file, json),
        Command::Examples { family, n, out } => examples(ctx, family, n, out.as_deref()),
        Command::Scan { family, nmax, rmax } => scan(ctx, &family, nmax, rmax),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn analyze(ctx: &mut Context<'_>, path: &Path, orders: &[u32], norms: &[f64], json: bool) -> Outcome {
    let f = format::parse_function(&read(path)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    if orders.contains(&0) {
        return Err(Failure::usage("moment orders must be positive"));
    }
    let report = AnalysisReport::build(&f, orders, norms, &ctx.limits, ctx.exec).map_err(Failure::usage)?;
    if json {
        ctx.emit_json(&report)?;
    } else {
        ctx.emit(&report.to_text())?;
    }
    Ok(if report.all_hold() { EXIT_OK } else { EXIT_VIOLATION })
}

fn bound(ctx: &mut Context<'_>, args: BoundArgs) -> Outcome {
    let text = if let Some(v) = args.classical {
        let (q, p, d) = (v[0], v[1], v[2]);
        if d < 0.0 || d.fract() != 0.0 {
            return Err(Failure::usage(format!("degree must be a nonnegative integer, got {d}")));
        }
        let c = bounds::coeff_classical(q, p, d as u32).map_err(Failure::usage)?;
        format!("classical q={q} p={p} d={d}: C = {c}\n")
    } else if let Some(v) = args.width42 {
        let (rho, m) = (v[0], v[1]);
        let c = bounds::coeff_width_42(rho, m).map_err(Failure::usage)?;
        format!("width42 rho={rho} m={m}: C^4 = {}, C = {}\n", c.fourth_power, c.value)
    } else if let Some(v) = args.width2r {
        let r = u32::try_from(v[0]).map_err(Failure::usage)?;
        let rho = v[1];
        if r == 0 || rho == 0 {
            return Err(Failure::usage("need r >= 1 and rho >= 1"));
        }
        if args.refined {
            let power = bounds::coeff_width_2r_refined(r, rho);
            let root = power.to_f64().unwrap_or(f64::INFINITY).powf(1.0 / (2.0 * r as f64));
            format!("refined2r r={r} rho={rho}: C^{} = {power}, C = {root}\n", 2 * r)
        } else {
            let c = bounds::coeff_width_2r(r, rho);
            format!("width2r r={r} rho={rho}: C^{} = {}, C = {}\n", 2 * r, c.power, c.root)
        }
    } else if let Some(v) = args.qp {
        let (q, p, rho) = (v[0], v[1], v[2]);
        if rho < 1.0 || rho.fract() != 0.0 {
            return Err(Failure::usage(format!("rho must be a positive integer, got {rho}")));
        }
        let c = bounds::coeff_width_qp(q, p, rho as u64).map_err(Failure::usage)?;
        format!("qp q={q} p={p} rho={rho}: r = {}, C = {}\n", c.r, c.value)
    } else {
        return Err(Failure::usage("no coefficient requested"));
    };
    ctx.emit(&text)
}

fn verify(ctx: &mut Context<'_>, args: VerifyArgs) -> Outcome {
    if args.nmax == 0 || args.mmax == 0 || args.coef < 1 {
        return Err(Failure::usage("--nmax, --mmax and --coef must be positive"));
    }
    let shape = FunctionShape::new(args.nmax, args.mmax, args.coef);
    let functions = || suite::generate_functions(args.trials, shape, args.seed).map_err(Failure::usage);
    let (label, report) = match args.target {
        VerifyTarget::Theorem1 => ("theorem1", suite::theorem1_suite(&functions()?, ctx.exec)),
        VerifyTarget::Theorem2 => {
            let orders = match args.r {
                Some(0) => return Err(Failure::usage("--r must be positive")),
                Some(r) => vec![r],
                None => vec![1, 2, 3],
            };
            ("theorem2", suite::theorem2_suite(&functions()?, &orders, args.refined, ctx.exec))
        }
        VerifyTarget::Corollary => {
            let pairs = match (args.q, args.p) {
                (Some(q), Some(p)) => vec![(q, p)],
                _ => COROLLARY_PAIRS.to_vec(),
            };
            let report = suite::corollary_suite(&functions()?, &pairs, &ctx.limits, ctx.exec)
                .map_err(Failure::usage)?;
            ("corollary", report)
        }
        VerifyTarget::Maxlin => {
            let shape = SystemShape {
                n_max: args.nmax,
                m_max: args.mmax,
                w_max: args.wmax,
                k_max: args.kmax,
            };
            let systems = suite::generate_systems(args.trials, shape, args.seed).map_err(Failure::usage)?;
            let report = suite::maxlin_suite(&systems, &ctx.limits, ctx.exec).map_err(Failure::usage)?;
            ctx.emit(&format!(
                "maxlin: yes_by_bound {} pass_through {} yes_instances {}\n",
                report.yes_by_bound, report.pass_through, report.yes_instances
            ))?;
            ("maxlin", report.suite)
        }
    };
    ctx.emit(&summary(label, args.seed, &report))?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VIOLATION })
}

fn summary(label: &str, seed: u64, report: &SuiteReport) -> String {
    let mut text = format!(
        "{label}: seed {seed} trials {} checks {} violations {}\n",
        report.trials,
        report.checks,
        report.failures.len()
    );
    for failure in report.failures.iter().take(20) {
        text.push_str(&format!("  trial {}: {}\n", failure.trial, failure.detail));
    }
    text
}

fn maxlin(ctx: &mut Context<'_>, action: MaxlinAction, path: &Path, json: bool) -> Outcome {
    let system = format::parse_maxlin(&read(path)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    match action {
        MaxlinAction::Kernel => {
            let report = KernelReport::new(system.m(), system.n(), system.k(), &kernelize(&system));
            if json {
                ctx.emit_json(&report)
            } else {
                ctx.emit(&report.to_text())
            }
        }
        MaxlinAction::Solve => {
            let solved = solve_bruteforce_with(&system, &ctx.limits, ctx.exec).map_err(Failure::usage)?;
            let report = SolveReport::new(system.total_weight(), system.k(), &solved);
            if json {
                ctx.emit_json(&report)
            } else {
                ctx.emit(&report.to_text())
            }
        }
        MaxlinAction::Check => {
            let test = lower_bound_test(&system).ok();
            let kernel = kernelize(&system);
            let decided = decide_with(&system, &ctx.limits, ctx.exec).map_err(Failure::usage)?;
            let alon = alon_witness_check_with(&system, &ctx.limits, ctx.exec).map_err(Failure::usage)?;
            let report = CheckReport::new(system.m(), test.as_ref(), &kernel, decided, &alon);
            if json {
                ctx.emit_json(&report)?;
            } else {
                ctx.emit(&report.to_text())?;
            }
            Ok(if report.ok() { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

fn examples(ctx: &mut Context<'_>, family: ExampleFamily, n: usize, out: Option<&Path>) -> Outcome {
    let f = match family {
        ExampleFamily::Affine => bounds::example_affine(n),
        ExampleFamily::Full => bounds::example_full(n),
        ExampleFamily::Linear => bounds::example_linear(n),
    }
    .map_err(Failure::usage)?;
    let text = format::write_function(&f);
    match out {
        Some(path) => fs::write(path, text)
            .map(|_| EXIT_OK)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => ctx.emit(&text),
    }
}

fn scan(ctx: &mut Context<'_>, family: &str, nmax: usize, rmax: u32) -> Outcome {
    let families: Vec<Family> = if family == "all" {
        Family::ALL.to_vec()
    } else {
        family
            .split(',')
            .map(|name| name.trim().parse::<Family>())
            .collect::<Result<_, _>>()
            .map_err(Failure::usage)?
    };
    let rows = bounds::conjecture_scan(&families, nmax, rmax).map_err(Failure::usage)?;
    let mut text = String::from("family,n,r,width,ratio,reference,implied_c\n");
    for row in rows {
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.family, row.n, row.r, row.width, row.ratio, row.reference, row.implied_c
        ));
    }
    ctx.emit(&text)
}
