//! Command-line front end: evaluate multiple zeta / t / Hurwitz zeta values
//! and Clausen functions, run the identity verification catalog, interrogate
//! the two conjectured series, and manage the constant cache.
//!
//! Exit codes: 0 success / all identities pass, 1 verification mismatch,
//! 2 usage error, 3 requested accuracy not reachable.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mzv_core::identities::{self, VerificationReport, VerificationStatus};
use mzv_core::numerics::{constants, PrecisionContext, Rational};
use mzv_core::oracle::{self, Composition, ShiftVector};
use mzv_core::{clausen, Error};

const CACHE_FILE: &str = "constants.tsv";

#[derive(Parser)]
#[command(name = "mzv", version, about = "Multiple zeta and t-value calculator and identity verifier")]
struct Cli {
    /// Directory holding the constant cache (overrides MZV_CACHE_DIR)
    #[arg(long, global = true, env = "MZV_CACHE_DIR", default_value = ".mzv-cache")]
    cache_dir: PathBuf,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Evaluate a single value and print it with an error certificate
    Eval(EvalArgs),
    /// Run identity verifications and write a machine-readable report
    Verify(VerifyArgs),
    /// Evaluate a conjectured series against its reference route
    Conjecture(ConjectureArgs),
    /// Inspect or reset the constant cache
    Cache(CacheArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalKind {
    /// Multiple zeta value by direct nested summation
    Mzv,
    /// Multiple t-value (odd denominators)
    T,
    /// Multiple Hurwitz zeta value with per-coordinate shifts
    Hurwitz,
    /// Clausen function Cl_m(theta)
    Clausen,
}

#[derive(Args)]
struct EvalArgs {
    /// What to evaluate
    #[arg(value_enum)]
    kind: EvalKind,

    /// Exponents `k1,k2,...` for mzv/t/hurwitz; order m for clausen
    first: String,

    /// Angle for clausen: `pi`, `pi/4`, `3pi/4`, or a decimal
    second: Option<String>,

    /// Shifts `a1,a2,...` (rationals) for hurwitz; defaults to zeros
    #[arg(long, allow_hyphen_values = true)]
    shifts: Option<String>,

    /// Digits printed after the decimal point
    #[arg(long, default_value_t = 12)]
    digits: u32,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity ids to run (repeatable); see `--all` for the catalog
    #[arg(long = "id")]
    ids: Vec<String>,

    /// Run every identity in the catalog
    #[arg(long)]
    all: bool,

    /// Decimal digits to verify
    #[arg(long, default_value_t = 25)]
    digits: u32,

    /// Largest r in parameter grids
    #[arg(long, default_value_t = 3)]
    r_max: u32,

    /// Largest s in parameter grids
    #[arg(long, default_value_t = 3)]
    s_max: u32,

    /// Largest p in parameter grids
    #[arg(long, default_value_t = 12)]
    p_max: u32,

    /// Report path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,

    /// Report format
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,

    /// Worker threads (defaults to the number of cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConjectureKind {
    H,
    T,
}

#[derive(Args)]
struct ConjectureArgs {
    /// Which conjectured family to check
    #[arg(value_enum)]
    which: ConjectureKind,

    /// Largest r in the grid
    #[arg(long, default_value_t = 2)]
    r_max: u32,

    /// Largest s in the grid
    #[arg(long, default_value_t = 2)]
    s_max: u32,

    /// Decimal digits to compare
    #[arg(long, default_value_t = 20)]
    digits: u32,

    /// Report path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,

    /// Report format
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,

    /// Worker threads (defaults to the number of cores)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct CacheArgs {
    #[command(subcommand)]
    action: CacheAction,
}

#[derive(Subcommand)]
enum CacheAction {
    /// List cached constants
    Show,
    /// Delete the cache file
    Clear,
}

fn parse_composition(s: &str) -> Result<Composition, String> {
    let exps: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
    let exps = exps.map_err(|_| format!("cannot parse composition `{s}`"))?;
    Composition::new(exps).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| format!("bad rational `{t}`"))?;
        let d: i64 = den.trim().parse().map_err(|_| format!("bad rational `{t}`"))?;
        if d == 0 {
            return Err(format!("zero denominator in `{t}`"));
        }
        Ok(mzv_core::numerics::rational_from_i64(n, d))
    } else {
        let n: i64 = t.parse().map_err(|_| format!("bad rational `{t}`"))?;
        Ok(mzv_core::numerics::rational_from_i64(n, 1))
    }
}

fn parse_shifts(s: &str) -> Result<ShiftVector, String> {
    let shifts: Result<Vec<Rational>, String> = s.split(',').map(parse_rational).collect();
    ShiftVector::new(shifts?).map_err(|e| e.to_string())
}

/// Angles: `pi`, `pi/4`, `3pi/4`, `2pi/3`, or a plain decimal.
fn parse_angle(s: &str, ctx: &PrecisionContext) -> Result<mzv_core::Real, String> {
    let t = s.trim().to_lowercase();
    if let Some(idx) = t.find("pi") {
        let (coef_str, rest) = (&t[..idx], &t[idx + 2..]);
        let coef: i64 = if coef_str.is_empty() {
            1
        } else {
            coef_str.parse().map_err(|_| format!("bad angle `{s}`"))?
        };
        let den: i64 = if rest.is_empty() {
            1
        } else if let Some(d) = rest.strip_prefix('/') {
            d.parse().map_err(|_| format!("bad angle `{s}`"))?
        } else {
            return Err(format!("bad angle `{s}`"));
        };
        if den == 0 {
            return Err(format!("zero denominator in `{s}`"));
        }
        Ok(&ctx.pi() * &ctx.from_rational(&mzv_core::numerics::rational_from_i64(coef, den)))
    } else {
        ctx.parse_decimal(&t).map_err(|e| e.to_string())
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::AccuracyNotReached { .. } => 3,
        Error::InvalidArgument(_) | Error::UnknownIdentity(_) => 2,
        Error::Io(_) => 2,
    }
}

fn cmd_eval(args: &EvalArgs) -> Result<(), (u8, String)> {
    let digits = args.digits.max(1);
    let ctx = PrecisionContext::new(digits).map_err(|e| (2, e.to_string()))?;
    let usage = |m: String| (2u8, m);
    match args.kind {
        EvalKind::Mzv | EvalKind::T | EvalKind::Hurwitz => {
            let comp = parse_composition(&args.first).map_err(usage)?;
            // half an ulp of the printed fixed-point output
            let target = ctx
                .parse_decimal(&format!("1e-{}", digits + 2))
                .map_err(|e| (2, e.to_string()))?;
            let value = match args.kind {
                EvalKind::Mzv => oracle::mzv_direct(&comp, &ctx, &target),
                EvalKind::T => oracle::tvalue_direct(&comp, &ctx, &target),
                EvalKind::Hurwitz => {
                    let shifts = match &args.shifts {
                        Some(s) => parse_shifts(s).map_err(usage)?,
                        None => ShiftVector::zeros(comp.depth()),
                    };
                    oracle::hurwitz_mzv_direct(&comp, &shifts, &ctx, &target)
                }
                EvalKind::Clausen => unreachable!("handled below"),
            }
            .map_err(|e| (exit_code_for(&e), e.to_string()))?;
            println!("{}", value.to_decimal_fixed(digits));
            println!("# |error| <= 1e-{} (certified summation tail bound)", digits + 2);
        }
        EvalKind::Clausen => {
            let m: u32 = args
                .first
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad order `{}`", args.first)))?;
            let theta_str = args
                .second
                .as_deref()
                .ok_or_else(|| usage("clausen needs an angle argument".into()))?;
            let theta = parse_angle(theta_str, &ctx).map_err(usage)?;
            let value = clausen::clausen_eval(m, &theta, &ctx)
                .map_err(|e| (exit_code_for(&e), e.to_string()))?;
            println!("{}", value.to_decimal_fixed(digits));
            println!(
                "# |error| <= 1e-{} (series truncation bound)",
                digits + ctx.guard_digits() - 2
            );
        }
    }
    Ok(())
}

/// Runs one grid cell; oracle failures become fail records with a diagnostic
/// instead of aborting the whole run.
fn run_cell(id: &str, params: &BTreeMap<String, i64>, ctx: &PrecisionContext) -> VerificationReport {
    match identities::run_verification(id, params, ctx) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("# {id} {params:?}: {e}");
            VerificationReport {
                id: id.to_string(),
                params: params.clone(),
                lhs: "nan".into(),
                rhs: "nan".into(),
                abs_diff: "nan".into(),
                digits_agreed: 0,
                precision_bits: ctx.bits(),
                wall_ms: 0,
                status: VerificationStatus::Fail,
            }
        }
    }
}

fn run_grid(
    work: &[(String, BTreeMap<String, i64>)],
    ctx: &PrecisionContext,
    jobs: Option<usize>,
) -> Vec<VerificationReport> {
    let run_all = || {
        use rayon::prelude::*;
        work.par_iter()
            .map(|(id, params)| run_cell(id, params, ctx))
            .collect::<Vec<_>>()
    };
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("worker pool")
            .install(run_all),
        None => run_all(),
    }
}

fn params_cell(params: &BTreeMap<String, i64>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn render_csv(reports: &[VerificationReport]) -> String {
    let mut out =
        String::from("id,params,lhs,rhs,abs_diff,digits_agreed,precision_bits,wall_ms,status\n");
    for r in reports {
        let status = match r.status {
            VerificationStatus::Pass => "pass",
            VerificationStatus::Fail => "fail",
            VerificationStatus::Supported => "supported",
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.id,
            params_cell(&r.params),
            r.lhs,
            r.rhs,
            r.abs_diff,
            r.digits_agreed,
            r.precision_bits,
            r.wall_ms,
            status
        ));
    }
    out
}

fn write_report(
    reports: &[VerificationReport],
    out: &Option<PathBuf>,
    format: ReportFormat,
) -> Result<(), (u8, String)> {
    let body = match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(reports).expect("reports serialize") + "\n"
        }
        ReportFormat::Csv => render_csv(reports),
    };
    match out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| (2, format!("cannot write report: {e}")))?;
            for r in reports {
                eprintln!(
                    "# {:9} {} {} -> {} digits",
                    format!("{:?}", r.status).to_lowercase(),
                    r.id,
                    params_cell(&r.params),
                    r.digits_agreed
                );
            }
        }
        None => {
            print!("{body}");
            std::io::stdout().flush().ok();
        }
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, (u8, String)> {
    let ids: Vec<String> = if args.all {
        identities::CATALOG.iter().map(|s| s.to_string()).collect()
    } else if args.ids.is_empty() {
        return Err((2, "pass --id <name> (repeatable) or --all".into()));
    } else {
        args.ids.clone()
    };
    // reject unknown ids before any computation
    for id in &ids {
        if !identities::CATALOG.contains(&id.as_str()) {
            return Err((2, format!("unknown identity id `{id}`")));
        }
    }
    let ctx = PrecisionContext::new(args.digits.max(1)).map_err(|e| (2, e.to_string()))?;
    let mut work = Vec::new();
    for id in &ids {
        for params in identities::default_grid(id, args.r_max, args.s_max, args.p_max) {
            work.push((id.clone(), params));
        }
    }
    let reports = run_grid(&work, &ctx, args.jobs);
    write_report(&reports, &args.out, args.format)?;
    let all_pass = reports
        .iter()
        .filter(|r| !identities::is_conjecture(&r.id))
        .all(|r| r.status == VerificationStatus::Pass);
    Ok(if all_pass { 0 } else { 1 })
}

fn cmd_conjecture(args: &ConjectureArgs) -> Result<u8, (u8, String)> {
    let id = match args.which {
        ConjectureKind::H => "conj-H",
        ConjectureKind::T => "conj-T",
    };
    let ctx = PrecisionContext::new(args.digits.max(1)).map_err(|e| (2, e.to_string()))?;
    let mut work = Vec::new();
    for r in 0..=args.r_max {
        for s in 0..=args.s_max {
            let params: BTreeMap<String, i64> =
                [("r".to_string(), r as i64), ("s".to_string(), s as i64)]
                    .into_iter()
                    .collect();
            work.push((id.to_string(), params));
        }
    }
    let reports = run_grid(&work, &ctx, args.jobs);
    write_report(&reports, &args.out, args.format)?;
    // "supported" never fails the exit code; budget exhaustion or a real
    // mismatch does.
    let ok = reports
        .iter()
        .all(|r| r.status == VerificationStatus::Supported);
    Ok(if ok { 0 } else { 1 })
}

fn cmd_cache(args: &CacheArgs, cache_path: &Path) -> Result<u8, (u8, String)> {
    match args.action {
        CacheAction::Show => {
            let cache = constants();
            cache
                .load(cache_path)
                .map_err(|e| (2, format!("cannot read cache: {e}")))?;
            for (name, bits, value) in cache.records() {
                println!("{name}\t{bits}\t{value}");
            }
            eprintln!("# {} records in {}", cache.len(), cache_path.display());
            Ok(0)
        }
        CacheAction::Clear => {
            match std::fs::remove_file(cache_path) {
                Ok(()) => {}
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
                Err(e) => return Err((2, format!("cannot clear cache: {e}"))),
            }
            eprintln!("# cleared {}", cache_path.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let cache_path = cli.cache_dir.join(CACHE_FILE);

    if let Commands::Cache(args) = &cli.command {
        return match cmd_cache(args, &cache_path) {
            Ok(code) => ExitCode::from(code),
            Err((code, msg)) => {
                eprintln!("error: {msg}");
                ExitCode::from(code)
            }
        };
    }

    // Warm the process-wide constant cache from disk; persist it afterwards.
    if let Err(e) = constants().load(&cache_path) {
        eprintln!("warning: cannot load cache: {e}");
    }

    let outcome = match &cli.command {
        Commands::Eval(args) => cmd_eval(args).map(|()| 0u8),
        Commands::Verify(args) => cmd_verify(args),
        Commands::Conjecture(args) => cmd_conjecture(args),
        Commands::Cache(_) => unreachable!(),
    };

    if !constants().is_empty() {
        if let Err(e) = constants().save(&cache_path) {
            eprintln!("warning: cannot persist cache: {e}");
        }
    }

    match outcome {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
