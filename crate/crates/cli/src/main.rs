use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hankel::arith::{format_rational, parse_rational, Rational};
use hankel::closed_forms::ClosedFormId;
use hankel::determinants::{det_with, Engine, LAPLACE_MAX_ORDER};
use hankel::harness::{
    bench, emit_bench, emit_report, entry, exit_code, registry, run_case, run_grid, GridSpec,
    IdentityCase, Lhs, Params, ReportFormat, RunMeta, Shape, VerificationReport,
};
use hankel::lgv::{
    count_nonintersecting, count_paths, enumerate_families, enumerate_paths, lgv_determinant,
    parse_points, render_ascii, EnumerationCap, PathSystemConfig, SlopeConstraint,
};
use hankel::matrices::{parse_matrix, ExactMatrix};

#[derive(Parser)]
#[command(
    name = "hankel",
    version,
    about = "Exact Hankel determinants, closed forms and lattice path checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an identity (or `all`) over a parameter grid.
    Verify(VerifyArgs),
    /// Evaluate one determinant.
    Det(DetArgs),
    /// Single paths and non-intersecting families.
    Paths {
        #[command(subcommand)]
        action: PathsAction,
    },
    /// Time the determinant engines on one matrix family.
    Bench(BenchArgs),
    /// Print the identity registry.
    List,
}

#[derive(Args, Default)]
struct ParamArgs {
    /// Values of k (comma separated).
    #[arg(long, value_delimiter = ',')]
    k: Vec<u32>,
    /// Values of beta (comma separated); default is every valid beta.
    #[arg(long, value_delimiter = ',')]
    beta: Option<Vec<u32>>,
    /// A fixed alpha vector instead of sampled ones.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Option<Vec<i64>>,
    /// Path-family corner and height.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<i64>,
    /// Product-lemma variables as comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    upper: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lower: Option<String>,
}

impl ParamArgs {
    fn rationals(text: &Option<String>) -> Result<Option<Vec<Rational>>, String> {
        text.as_deref()
            .map(|t| {
                if t.trim().is_empty() {
                    return Ok(Vec::new());
                }
                t.split(',')
                    .map(|s| parse_rational(s).map_err(|e| e.to_string()))
                    .collect()
            })
            .transpose()
    }

    /// Parameters that pin a single instance, if any were given.
    fn explicit(&self, n: Option<u32>) -> Result<Option<Params>, String> {
        let x = Self::rationals(&self.x)?;
        let explicit = x.is_some() || self.a.is_some() || self.b.is_some() || self.c.is_some();
        if !explicit {
            return Ok(None);
        }
        Ok(Some(Params {
            n,
            k: self.k.first().copied(),
            beta: self.beta.as_ref().and_then(|b| b.first().copied()),
            alpha: self.alpha.clone(),
            a: self.a,
            b: self.b,
            c: self.c,
            x,
            upper: Self::rationals(&self.upper)?,
            lower: Self::rationals(&self.lower)?,
        }))
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id from `hankel list`, or `all`.
    id: String,
    /// Shorthand for `--n-min N --n-max N`.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 1)]
    n_min: u32,
    #[arg(long, default_value_t = 6)]
    n_max: u32,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = GridSpec::default().seed)]
    seed: u64,
    /// Random instances per grid point.
    #[arg(long, default_value_t = 25)]
    samples: usize,
    /// Largest sampled alpha entry.
    #[arg(long, default_value_t = 12)]
    alpha_max: i64,
    #[arg(long, value_parser = parse_engine)]
    engine: Option<Engine>,
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include per-case wall-clock times (makes output non-reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct DetArgs {
    /// Matrix file: order on the first line, then rows of rationals.
    #[arg(long, conflicts_with = "identity")]
    file: Option<PathBuf>,
    /// Build the matrix of this identity.
    #[arg(long)]
    identity: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[command(flatten)]
    params: ParamArgs,
    /// Engine name or `all`.
    #[arg(long, default_value = "default")]
    engine: String,
    /// Print the matrix before its determinant.
    #[arg(long)]
    show: bool,
}

#[derive(Args)]
struct PathArgs {
    /// Start points as `x,y;x,y;...`.
    #[arg(long, allow_hyphen_values = true)]
    starts: String,
    /// End points as `x,y;x,y;...`.
    #[arg(long, allow_hyphen_values = true)]
    ends: String,
    /// Keep every point on or below `x = mu y`.
    #[arg(long)]
    mu: Option<u32>,
    /// Refuse enumerations larger than this.
    #[arg(long, default_value_t = EnumerationCap::default().0)]
    cap: u64,
}

#[derive(Subcommand)]
enum PathsAction {
    /// Number of single paths for each start/end pair.
    Count(PathArgs),
    /// List the single paths of each pair as step strings.
    Enumerate(PathArgs),
    /// Count vertex-disjoint families by brute force and by determinant.
    Families(PathArgs),
    /// Draw the configuration, optionally with one family.
    Render {
        #[command(flatten)]
        paths: PathArgs,
        /// Index of the family to draw, in enumeration order.
        #[arg(long)]
        family: Option<usize>,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 1)]
    n_min: u32,
    #[arg(long)]
    n_max: u32,
    #[arg(long, value_delimiter = ',', value_parser = parse_engine, default_value = "laplace,fraction-free,rational,condensation")]
    engines: Vec<Engine>,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: ReportFormat,
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: hankel::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: hankel::Error| e.to_string())
}

fn parse_id(s: &str) -> Result<ClosedFormId, String> {
    s.parse()
        .map_err(|e: hankel::Error| format!("{e}; see `hankel list`"))
}

/// What went wrong: a usage problem (exit 2) or a write failure.
type CliResult<T> = Result<T, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Det(args) => det(args),
        Command::Paths { action } => paths(action),
        Command::Bench(args) => run_bench(args),
        Command::List => {
            let text: String = registry()
                .iter()
                .map(|e| format!("{:<26} {}\n", e.id.name(), e.statement))
                .collect();
            emit(text.as_bytes(), None)?;
            Ok(0)
        }
    }
}

fn emit(bytes: &[u8], out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => match std::io::stdout().lock().write_all(bytes) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
            _ => Ok(()),
        },
    }
}

fn verify(args: VerifyArgs) -> CliResult<u8> {
    let ids = if args.id == "all" {
        ClosedFormId::all()
    } else {
        vec![parse_id(&args.id)?]
    };
    let (n_min, n_max) = args.n.map_or((args.n_min, args.n_max), |n| (n, n));
    let spec = GridSpec {
        n_min,
        n_max,
        k: args.params.k.clone(),
        beta: args.params.beta.clone(),
        alpha: args.params.alpha.clone(),
        samples: args.samples,
        alpha_max: args.alpha_max,
        seed: args.seed,
        engine: args.engine,
    };
    let mut reports: Vec<VerificationReport> = Vec::new();
    for id in ids {
        let explicit = args.params.explicit(args.n)?;
        match explicit {
            Some(p) if matches!(entry(id).shape, Shape::Families | Shape::Product) => {
                reports.push(run_case(&IdentityCase::new(id, p).with_engine(args.engine)));
            }
            _ => reports.extend(run_grid(id, &spec).map_err(|e| e.to_string())?),
        }
    }
    let meta = RunMeta {
        timings: args.timings,
        ..RunMeta::new(format!("verify {}", args.id), Some(args.seed))
    };
    let bytes = emit_report(&reports, args.format, &meta).map_err(|e| e.to_string())?;
    emit(&bytes, args.out.as_ref())?;
    Ok(exit_code(&reports) as u8)
}

fn identity_matrix(id: ClosedFormId, n: Option<u32>, params: &ParamArgs) -> CliResult<ExactMatrix> {
    let e = entry(id);
    let p = match params.explicit(n)? {
        Some(p) => p,
        None => Params {
            n,
            k: params.k.first().copied(),
            beta: params.beta.as_ref().and_then(|b| b.first().copied()),
            alpha: params.alpha.clone(),
            ..Params::default()
        },
    };
    e.validate(&p).map_err(|err| err.to_string())?;
    match e.lhs(&p).map_err(|err| err.to_string())? {
        Lhs::Matrix(m) => Ok(m),
        Lhs::Families(_) => Err(format!(
            "{id} is a path count, not a determinant; use `hankel paths families`"
        )),
    }
}

fn det(args: DetArgs) -> CliResult<u8> {
    let m = match (&args.file, &args.identity) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_matrix(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        (None, Some(id)) => identity_matrix(parse_id(id)?, args.n, &args.params)?,
        (None, None) => return Err("give --file or --identity".into()),
    };
    let mut out = String::new();
    if args.show {
        out.push_str(&m.to_string());
    }
    let engines: Vec<Engine> = match args.engine.as_str() {
        "all" => Engine::ALL
            .into_iter()
            .filter(|&e| e != Engine::Laplace || m.order() <= LAPLACE_MAX_ORDER)
            .filter(|&e| e != Engine::FractionFree || m.is_integral())
            .collect(),
        "default" => vec![hankel::determinants::default_engine(&m)],
        name => vec![parse_engine(name)?],
    };
    let mut values = Vec::new();
    for e in engines {
        let r = det_with(&m, e).map_err(|err| err.to_string())?;
        out.push_str(&format!(
            "{:<14} {}  (row swaps {}, fallbacks {})\n",
            e.name(),
            format_rational(&r.value),
            r.stats.row_swaps,
            r.stats.fallbacks
        ));
        values.push(r.value);
    }
    emit(out.as_bytes(), None)?;
    // engines disagreeing is a defect, reported like a failed identity
    Ok(u8::from(values.windows(2).any(|w| w[0] != w[1])))
}

fn config(args: &PathArgs) -> CliResult<PathSystemConfig> {
    let starts = parse_points(&args.starts).map_err(|e| format!("--starts: {e}"))?;
    let ends = parse_points(&args.ends).map_err(|e| format!("--ends: {e}"))?;
    let constraint = args
        .mu
        .map(SlopeConstraint::new)
        .transpose()
        .map_err(|e| e.to_string())?;
    PathSystemConfig::new(starts, ends, constraint).map_err(|e| e.to_string())
}

fn paths(action: PathsAction) -> CliResult<u8> {
    use std::fmt::Write as _;
    let mut out = String::new();
    match action {
        PathsAction::Count(args) => {
            let cfg = config(&args)?;
            for (a, e) in cfg.starts.iter().zip(&cfg.ends) {
                writeln!(out, "{a} -> {e}: {}", count_paths(*a, *e, cfg.constraint)).unwrap();
            }
        }
        PathsAction::Enumerate(args) => {
            let cfg = config(&args)?;
            for (a, e) in cfg.starts.iter().zip(&cfg.ends) {
                let list = enumerate_paths(*a, *e, cfg.constraint, EnumerationCap(args.cap))
                    .map_err(|e| e.to_string())?;
                writeln!(out, "{a} -> {e}: {} paths", list.len()).unwrap();
                for p in list {
                    writeln!(out, "  {}", p.step_string()).unwrap();
                }
            }
        }
        PathsAction::Families(args) => {
            let cfg = config(&args)?;
            let brute =
                count_nonintersecting(&cfg, EnumerationCap(args.cap)).map_err(|e| e.to_string())?;
            let det = lgv_determinant(&cfg).map_err(|e| e.to_string())?;
            writeln!(out, "families: {brute}").unwrap();
            writeln!(out, "determinant: {det}").unwrap();
        }
        PathsAction::Render { paths, family } => {
            let cfg = config(&paths)?;
            let chosen = match family {
                Some(i) => {
                    let all = enumerate_families(&cfg, EnumerationCap(paths.cap))
                        .map_err(|e| e.to_string())?;
                    let total = all.len();
                    Some(
                        all.into_iter()
                            .nth(i)
                            .ok_or_else(|| format!("family {i} out of range (have {total})"))?,
                    )
                }
                None => None,
            };
            out.push_str(&render_ascii(&cfg, chosen.as_deref()));
        }
    }
    emit(out.as_bytes(), None)?;
    Ok(0)
}

fn run_bench(args: BenchArgs) -> CliResult<u8> {
    let id = parse_id(&args.family)?;
    let rows =
        bench(id, args.n_min, args.n_max, &args.engines, args.reps).map_err(|e| e.to_string())?;
    let bytes = emit_bench(&rows, args.format).map_err(|e| e.to_string())?;
    emit(&bytes, None)?;
    Ok(0)
}
