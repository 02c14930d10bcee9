use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use polyderive::generators::{
    alternating_sign_hexagon, random_generic_polygon, random_regular_pentagon,
    regular_hexagon_via_lift, GenConfig,
};
use polyderive::oracle::float_cross_validate;
use polyderive::pipeline::{
    run_analyze, run_check, run_derive, AlphaChoice, PipelineError, PolygonInput, Report,
};
use polyderive::suites::{run_suite, Suite, SuiteReport};
use polyderive::{Polygon, Rational, Scalar};

mod plot;

#[derive(Debug, Parser)]
#[command(
    name = "polyderive",
    version,
    about = "Regular and derived spatial polygons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Genericity, Δ values, sign pattern and regularity verdict.
    Check {
        /// Polygon JSON file, or `-` for stdin.
        file: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Support system and derived polygon of a regular polygon.
    Derive {
        file: PathBuf,
        /// Scaling parameter as `p/q`. Required for even n; for odd n it must square to α².
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<Rational>,
        /// Odd n only: use −√α² instead of +√α².
        #[arg(long, conflicts_with = "alpha")]
        negative_root: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Planarity, area, Δ′ values and hexagon structure of the polygon itself.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Write a random polygon fixture.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, env = "POLYDERIVE_SEED", default_value_t = 0)]
        seed: u64,
        /// Numerators and denominators are drawn from 1..=bound.
        #[arg(long, default_value_t = 5)]
        bound: i64,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run randomized property suites.
    Verify {
        /// `all` or one suite name.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, env = "POLYDERIVE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
    /// Line-based plot data for a polygon file or a derive report.
    Plot {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
struct OracleArgs {
    /// Re-run the computation in f64 and attach the comparison.
    #[arg(long)]
    oracle: bool,
    /// Relative tolerance for `--oracle`.
    #[arg(long, default_value_t = 1e-9, requires = "oracle")]
    tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// Generic quadrangle (always regular).
    Quad,
    /// Regular pentagon.
    Pentagon,
    /// Regular hexagon from a lifted zero-area planar hexagon, with its support system.
    HexagonLift,
    /// Hexagon with alternating Δ signs.
    AltSign,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Quad => "quad",
            Kind::Pentagon => "pentagon",
            Kind::HexagonLift => "hexagon-lift",
            Kind::AltSign => "alt-sign",
        }
    }
}

enum Failure {
    /// Exit 1.
    Property(anyhow::Error),
    /// Exit 2.
    Usage(anyhow::Error),
}

impl Failure {
    fn usage(e: impl Into<anyhow::Error>) -> Self {
        Failure::Usage(e.into())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Property(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check { file, oracle } => {
            let input = load(&file)?;
            let mut report = run_check(&input);
            let ok = report.is_regular() & attach_oracle(&mut report, &oracle);
            summarize(&report);
            emit(&report)?;
            Ok(ok)
        }
        Command::Derive {
            file,
            alpha,
            negative_root,
            oracle,
        } => {
            let input = load(&file)?;
            let choice = match alpha {
                Some(a) if a.is_zero() => return Err(Failure::usage(anyhow!("α must be nonzero"))),
                Some(a) => AlphaChoice::Rational(a),
                None => AlphaChoice::CanonicalRoot {
                    negative: negative_root,
                },
            };
            let mut report = run_derive(&input, &choice).map_err(classify)?;
            let ok = attach_oracle(&mut report, &oracle);
            summarize(&report);
            emit(&report)?;
            Ok(ok)
        }
        Command::Analyze { file, oracle } => {
            let input = load(&file)?;
            let mut report = run_analyze(&input);
            let ok = attach_oracle(&mut report, &oracle);
            summarize(&report);
            emit(&report)?;
            Ok(ok)
        }
        Command::Generate {
            kind,
            seed,
            bound,
            out,
        } => generate(kind, seed, bound, out.as_deref()),
        Command::Verify {
            suite,
            samples,
            seed,
            bound,
        } => verify(&suite, samples, seed, bound),
        Command::Plot { file, out } => {
            let text = read_input(&file)?;
            let plot = plot::render(&text).map_err(Failure::Usage)?;
            write_output(out.as_deref(), &plot)?;
            Ok(true)
        }
    }
}

fn classify(e: PipelineError) -> Failure {
    match e {
        PipelineError::NonGeneric(_) | PipelineError::NotRegular(_) | PipelineError::Support(_) => {
            Failure::Property(e.into())
        }
        PipelineError::Parse(_)
        | PipelineError::Polygon(_)
        | PipelineError::AlphaRequired(_)
        | PipelineError::Regularity(_) => Failure::Usage(e.into()),
    }
}

fn read_input(file: &Path) -> Result<String, Failure> {
    if file == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")
            .map_err(Failure::Usage)?;
        return Ok(s);
    }
    std::fs::read_to_string(file)
        .with_context(|| format!("reading {}", file.display()))
        .map_err(Failure::Usage)
}

fn load(file: &Path) -> Result<PolygonInput, Failure> {
    let text = read_input(file)?;
    PolygonInput::from_json(&text)
        .with_context(|| format!("in {}", file.display()))
        .map_err(Failure::Usage)
}

fn attach_oracle(report: &mut Report, args: &OracleArgs) -> bool {
    if !args.oracle {
        return true;
    }
    let v = float_cross_validate(report, args.tolerance);
    let pass = v.pass;
    eprintln!(
        "oracle: {} values compared, {} mismatches (tolerance {})",
        v.checked,
        v.failures.len(),
        v.tolerance
    );
    report.oracle_results = Some(v);
    pass
}

fn summarize(report: &Report) {
    let name = report.input.name.as_deref().unwrap_or("polygon");
    let deltas: Vec<String> = report
        .deltas
        .as_slice()
        .iter()
        .map(|d| d.to_string())
        .collect();
    eprintln!(
        "{name}: n = {}, Δ = ({})",
        report.input.n,
        deltas.join(", ")
    );
    for note in &report.notes {
        eprintln!("  {note}");
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value)
        .context("serializing output")
        .map_err(Failure::Property)?;
    s.push('\n');
    Ok(s)
}

fn emit<T: Serialize>(value: &T) -> Result<(), Failure> {
    write_output(None, &to_json(value)?)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Usage),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .context("writing stdout")
            .map_err(Failure::Usage),
    }
}

fn polygon_fields(p: &Polygon) -> (Value, Value) {
    (json!(p.vertices()), json!(p.edge_vectors().as_slice()))
}

fn generate(kind: Kind, seed: u64, bound: i64, out: Option<&Path>) -> Outcome {
    let cfg = GenConfig::new(seed).with_bound(bound);
    cfg.validate().map_err(Failure::usage)?;
    let mut doc = json!({
        "name": format!("{} (seed {seed})", kind.name()),
        "kind": kind.name(),
        "seed": seed,
        "coordinate_bound": bound,
    });
    let mut support = None;
    let polygon = match kind {
        Kind::Quad => random_generic_polygon(4, &cfg),
        Kind::Pentagon => random_regular_pentagon(&cfg),
        Kind::AltSign => alternating_sign_hexagon(&cfg),
        Kind::HexagonLift => regular_hexagon_via_lift(&cfg).map(|h| {
            doc["base_points"] = json!(h.base_points);
            doc["apex_height"] = json!(h.apex_height);
            doc["support"] = json!(h.support);
            support = Some(h.support);
            h.polygon
        }),
    }
    .map_err(|e| Failure::Property(e.into()))?;
    let (vertices, edges) = polygon_fields(&polygon);
    doc["vertices"] = vertices;
    doc["edges"] = edges;
    write_output(out, &to_json(&doc)?)?;
    if let (Some(path), Some(s)) = (out, support) {
        let side = support_path(path);
        write_output(Some(&side), &to_json(&s)?)?;
        eprintln!("wrote {} and {}", path.display(), side.display());
    } else if let Some(path) = out {
        eprintln!("wrote {}", path.display());
    }
    Ok(true)
}

/// `hex.json` → `hex.support.json`.
fn support_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "polygon".into());
    path.with_file_name(format!("{stem}.support.json"))
}

#[derive(Serialize)]
struct VerifyOutput {
    seed: u64,
    samples: usize,
    coordinate_bound: i64,
    pass: bool,
    suites: Vec<SuiteReport>,
}

fn verify(suite: &str, samples: usize, seed: u64, bound: i64) -> Outcome {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite
            .parse::<Suite>()
            .map_err(|e| Failure::usage(anyhow!(e)))?]
    };
    if samples == 0 {
        return Err(Failure::usage(anyhow!("--samples must be at least 1")));
    }
    let cfg = GenConfig::new(seed).with_bound(bound);
    cfg.validate().map_err(Failure::usage)?;
    let reports: Vec<SuiteReport> = suites
        .into_iter()
        .map(|s| {
            let r = run_suite(s, samples, &cfg);
            eprintln!(
                "{} {:<8} {}/{} passed",
                if r.pass() { "PASS" } else { "FAIL" },
                r.suite.name(),
                r.passed,
                r.samples
            );
            r
        })
        .collect();
    let pass = reports.iter().all(SuiteReport::pass);
    emit(&VerifyOutput {
        seed,
        samples,
        coordinate_bound: bound,
        pass,
        suites: reports,
    })?;
    Ok(pass)
}
