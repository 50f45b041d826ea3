//! `shadowcodes` command-line tool.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check, 2 on bad usage or
//! inadmissible parameters.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use shadowcodes::binary::histogram_csv;
use shadowcodes::bounds::{
    deltacon, dg_params, gv_min_distance, k0, rm_dimension, shadow_lb_deg1, shadow_lb_deg2,
};
use shadowcodes::concat::ConcatSpec;
use shadowcodes::descriptor::CodeDescriptor;
use shadowcodes::field::{find_odd_prime_power, Field};
use shadowcodes::figures::{figure_data, Figure, FigureConfig, FigureData};
use shadowcodes::shadow::{
    degree_one_code, degree_one_code_for, degree_two_code, Selection, ShadowCode,
};
use shadowcodes::verify::{
    concat_distance_suite, cubic_threshold_suite, shadow_distance_suite, weil_suite, SuiteReport,
};
use shadowcodes::VERSION;

/// Seed used whenever a randomized path is run without `--seed`.
const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Serialize)]
#[command(
    name = "shadowcodes",
    version,
    about = "Binary shadow codes, RS-RM concatenation and bound tables"
)]
struct Cli {
    /// Worker threads (defaults to available parallelism). Output does not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
enum Command {
    /// Build a shadow code and write its JSON descriptor.
    Construct(ConstructArgs),
    /// Minimum distance of a code given by a descriptor.
    Dmin(DminArgs),
    /// Emit the data behind a rate/distance plot.
    Figure(FigureArgs),
    /// Run a batch check; nonzero exit and a counterexample dump on failure.
    Verify(VerifyArgs),
    /// Build an RS-RM concatenated code.
    Concat(ConcatArgs),
    /// Evaluate a closed-form bound.
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Deg1,
    Deg2,
}

#[derive(Args, Serialize)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Field order (odd prime power).
    #[arg(long)]
    q: Option<u64>,
    /// Evaluation set size for deg1 with --q.
    #[arg(long = "E-size", alias = "e-size")]
    e_size: Option<usize>,
    /// Code length for deg1 without --q.
    #[arg(long)]
    n: Option<usize>,
    /// Dimension: deg1 with --n, or the number of quadratics for deg2.
    #[arg(long)]
    k: Option<usize>,
    /// Draw the deg2 quadratics at random with this seed instead of lexicographically.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct DminArgs {
    descriptor: PathBuf,
    /// Exhaustive Gray-code enumeration.
    #[arg(long, conflicts_with = "sample")]
    exact: bool,
    /// Upper bound from this many random codewords.
    #[arg(long)]
    sample: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Also write the weight distribution as CSV.
    #[arg(long)]
    histogram: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Serialize)]
struct FigureArgs {
    /// fig1, fig3 or fig4
    figure: String,
    /// Lengths for fig3 (repeatable).
    #[arg(long)]
    n: Vec<u64>,
    #[arg(long)]
    n_min: Option<u64>,
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long)]
    points: Option<usize>,
    /// Exponent for fig4, k = floor(n^a).
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    m_min: Option<u32>,
    #[arg(long)]
    m_max: Option<u32>,
    /// Largest dimension enumerated exactly in fig3.
    #[arg(long)]
    exact_k_max: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Suite {
    Weil,
    Theorem4,
    Theorem6,
    Theorem7,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 121)]
    q_max: u32,
    /// Curves per field (weil).
    #[arg(long, default_value_t = 20)]
    curves: usize,
    #[arg(long, default_value_t = 5)]
    max_factors: usize,
    /// Largest dimension tried (theorem4).
    #[arg(long, default_value_t = 12)]
    k_max: usize,
    #[arg(long, default_value_t = 100_000)]
    n_max: u64,
    #[arg(long, default_value_t = 50)]
    grid: usize,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report (with counterexamples) here as well as to stdout.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct ConcatArgs {
    #[arg(long)]
    m: u32,
    /// Outer length (defaults to 2^m).
    #[arg(long = "N")]
    outer_length: Option<usize>,
    #[arg(long = "K")]
    outer_dim: usize,
    /// Message bits as a 0/1 string of length K(m+1).
    #[arg(long)]
    encode: Option<String>,
    /// Write the code descriptor here.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct BoundsArgs {
    #[command(subcommand)]
    bound: Bound,
}

#[derive(Subcommand, Serialize)]
#[serde(tag = "bound", rename_all = "lowercase")]
enum Bound {
    /// Delsarte-Goethals parameters.
    Dg {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: u32,
    },
    /// Reed-Muller dimension.
    Rm {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: u32,
    },
    /// Gilbert-Varshamov distance.
    Gv {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Cubic threshold k0(n).
    K0 {
        #[arg(long)]
        n: u64,
    },
    /// RS-RM relative distance at n = 4^m.
    Deltacon {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: f64,
    },
    /// Shadow distance bounds for degree <= 1 and degree 2.
    Shadow {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        k: f64,
    },
}

enum Failure {
    Usage(String),
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn config_json(cli: &Cli) -> Value {
    serde_json::to_value(cli).expect("config serializes")
}

fn csv_header(config: &Value) -> String {
    format!("# shadowcodes {VERSION}\n# config: {config}\n")
}

fn emit(text: &str, out: Option<&PathBuf>) -> Outcome {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn seed_or_default(seed: Option<u64>) -> u64 {
    seed.unwrap_or(DEFAULT_SEED)
}

fn construct(args: &ConstructArgs) -> Outcome {
    let code: ShadowCode = match args.kind {
        Kind::Deg1 => match (args.q, args.e_size, args.n, args.k) {
            (Some(q), Some(e), None, None) => degree_one_code(&field_for(q)?, e)?,
            (None, None, Some(n), Some(k)) => degree_one_code_for(n, k)?,
            _ => {
                return Err(Failure::Usage(
                    "deg1 needs either --q with --E-size, or --n with --k".into(),
                ))
            }
        },
        Kind::Deg2 => {
            let (Some(q), Some(k)) = (args.q, args.k) else {
                return Err(Failure::Usage("deg2 needs --q and --k".into()));
            };
            let selection = args
                .seed
                .map_or(Selection::Lexicographic, |seed| Selection::Random { seed });
            degree_two_code(&field_for(q)?, k, selection)?
        }
    };
    eprintln!(
        "constructed ({}, {}) code over GF({}), delta = {}{}",
        code.length(),
        code.claimed_dim(),
        code.field().order(),
        code.delta(),
        if code.bound_warning() {
            " (not positive: no distance guarantee)"
        } else {
            ""
        }
    );
    let text = CodeDescriptor::from_shadow(&code).to_json() + "\n";
    emit(&text, args.out.as_ref())
}

fn field_for(q: u64) -> Result<Field, Failure> {
    let (p, m) = find_odd_prime_power(q)
        .ok_or_else(|| Failure::Usage(format!("--q {q} is not an odd prime power")))?;
    Ok(Field::new(p, m, None)?)
}

fn dmin(args: &DminArgs, config: &Value) -> Outcome {
    let text = fs::read_to_string(&args.descriptor)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.descriptor.display())))?;
    let desc = CodeDescriptor::from_json(&text)?;
    let code = desc.binary_code()?;
    let (value, method, seed) = match (args.exact, args.sample) {
        (_, Some(trials)) => {
            let seed = seed_or_default(args.seed);
            (
                code.sampled_min_distance_upper(trials, seed)?,
                "sampled_upper_bound",
                Some(seed),
            )
        }
        (true, None) => (code.exact_min_distance()?, "exact", None),
        (false, None) => return Err(Failure::Usage("pass --exact or --sample TRIALS".into())),
    };
    if let Some(path) = &args.histogram {
        let hist = code.weight_distribution()?;
        fs::write(path, csv_header(config) + &histogram_csv(&hist))?;
    }
    let bound_ok = desc
        .delta
        .is_none_or(|d| method != "exact" || value as f64 >= d.ceil());
    match args.format {
        Format::Json => {
            let report = json!({
                "version": VERSION,
                "config": config,
                "n": code.length(),
                "k": code.dimension(),
                "dmin": value,
                "method": method,
                "seed": seed,
                "delta": desc.delta,
                "delta_exact": desc.delta_exact,
                "dmin_lb": desc.concat.as_ref().map(|c| c.dmin_lb),
            });
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Format::Csv => {
            print!(
                "{}n,k,dmin,method,delta\n{},{},{},{},{}\n",
                csv_header(config),
                code.length(),
                code.dimension(),
                value,
                method,
                desc.delta_exact.as_deref().unwrap_or("")
            );
        }
    }
    if bound_ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn figure(args: &FigureArgs, config: &Value) -> Outcome {
    let which: Figure = args.figure.parse().map_err(Failure::Usage)?;
    let mut fc = FigureConfig::default();
    if let Some(seed) = args.seed {
        fc.seed = seed;
    }
    if !args.n.is_empty() {
        fc.fig3_n = args.n.clone();
    }
    if let Some(v) = args.n_min {
        fc.fig1_n_min = v;
    }
    if let Some(v) = args.n_max {
        fc.fig1_n_max = v;
    }
    if let Some(v) = args.points {
        fc.fig1_points = v;
    }
    if let Some(a) = args.a {
        if !(a > 0.0 && a <= 0.5) {
            return Err(Failure::Usage(format!("--a {a} must lie in (0, 0.5]")));
        }
        fc.fig4_a = a;
    }
    if let Some(v) = args.m_min {
        fc.fig4_m_min = v;
    }
    if let Some(v) = args.m_max {
        fc.fig4_m_max = v;
    }
    if let Some(v) = args.exact_k_max {
        fc.exact_k_max = v.min(24);
    }
    if which == Figure::Fig3 {
        if let Some(bad) = fc.fig3_n.iter().find(|&&n| n < 2) {
            return Err(Failure::Usage(format!("--n {bad} is too small")));
        }
    }
    let data: FigureData = figure_data(which, &fc);
    let text = match args.format {
        Format::Csv => {
            csv_header(config)
                + &format!("# figure_config: {}\n", serde_json::to_string(&fc)?)
                + &data.to_csv()
        }
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "version": VERSION,
                "config": config,
                "figure_config": fc,
                "rows": data,
            }))? + "\n"
        }
    };
    emit(&text, args.out.as_ref())
}

fn verify(args: &VerifyArgs) -> Outcome {
    let seed = seed_or_default(args.seed);
    let report: SuiteReport = match args.suite {
        Suite::Weil => weil_suite(args.q_max, args.curves, args.max_factors, seed),
        Suite::Theorem4 => shadow_distance_suite(args.q_max, args.k_max),
        Suite::Theorem6 => cubic_threshold_suite(args.n_max, args.grid, args.tol),
        Suite::Theorem7 => {
            if args.m == 0 || args.m > 4 {
                return Err(Failure::Usage(format!("--m {} must be in 1..=4", args.m)));
            }
            concat_distance_suite(args.m)
        }
    };
    let text =
        serde_json::to_string_pretty(&json!({"version": VERSION, "seed": seed, "report": report}))?;
    println!("{text}");
    eprintln!(
        "{}: {} checks, {} skipped, {} failures",
        report.suite,
        report.checks,
        report.skipped,
        report.failures.len()
    );
    if let Some(path) = &args.dump {
        fs::write(path, text + "\n")?;
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn concat(args: &ConcatArgs) -> Outcome {
    let outer_length = args.outer_length.unwrap_or(1usize << args.m.min(19));
    let spec = ConcatSpec::new(args.m, outer_length, args.outer_dim)?;
    let params = spec.params();
    if let Some(bits) = &args.encode {
        let msg = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Failure::Usage(format!(
                    "--encode: unexpected character {other:?}"
                ))),
            })
            .collect::<Result<Vec<bool>, _>>()?;
        let word = spec.concat_encode(&msg)?;
        let text: String = word.iter().map(|&b| if b { '1' } else { '0' }).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({"params": params, "codeword": text}))?
        );
    } else {
        println!("{}", serde_json::to_string_pretty(&params)?);
    }
    if let Some(path) = &args.out {
        if spec.dimension() > 4096 || spec.length() > 1 << 22 {
            return Err(Failure::Usage(
                "code too large to write a generator matrix".into(),
            ));
        }
        let code = spec.binary_code()?;
        fs::write(
            path,
            CodeDescriptor::from_concat(&spec, &code).to_json() + "\n",
        )?;
    }
    Ok(())
}

fn bounds(args: &BoundsArgs) -> Outcome {
    let value = match &args.bound {
        Bound::Dg { m, d } => serde_json::to_value(dg_params(*m, *d)?)?,
        Bound::Rm { r, m } => json!({"r": r, "m": m, "dimension": rm_dimension(*r, *m)}),
        Bound::Gv { n, k } => serde_json::to_value(gv_min_distance(*n, *k)?)?,
        Bound::K0 { n } => {
            if *n < 3 {
                return Err(Failure::Usage("--n must be at least 3".into()));
            }
            serde_json::to_value(k0(*n))?
        }
        Bound::Deltacon { n, k } => serde_json::to_value(deltacon(*n, *k)?)?,
        Bound::Shadow { n, k } => json!({
            "deg1": shadow_lb_deg1(*n, *k),
            "deg2": shadow_lb_deg2(*n, *k),
        }),
    };
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()?;
    }
    let config = config_json(cli);
    match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Dmin(a) => dmin(a, &config),
        Command::Figure(a) => figure(a, &config),
        Command::Verify(a) => verify(a),
        Command::Concat(a) => concat(a),
        Command::Bounds(a) => bounds(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
