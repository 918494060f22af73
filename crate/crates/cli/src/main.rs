//! `tetragold`: build tetrahedral aggregates, analyze them and run the
//! verification suites.
//!
//! Exit status: 0 on success, 1 when a check fails or an input cannot be
//! read or written, 2 on usage errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use tetragold::aggregate::{self, TwistOptions};
use tetragold::analysis::{find_face_junctions, plane_classes};
use tetragold::helix::{self, Chirality, HelixSpec};
use tetragold::io;
use tetragold::report::{self, AnalysisOptions, Report};
use tetragold::verify::{self, Suite};
use tetragold::{Aggregate, ToleranceConfig, TwistSense};

/// Overrides the point tolerance (relative to the edge length). Testing aid.
const POINT_TOL_ENV: &str = "TETRA_TOLERANCE_POINT";

#[derive(Debug, Parser)]
#[command(name = "tetragold", version, about = "Golden-ratio twists of tetrahedral aggregates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an aggregate and write it as JSON and/or OBJ.
    Build(BuildArgs),
    /// Analyze an aggregate JSON file.
    Analyze(AnalyzeArgs),
    /// Run a built-in verification suite.
    Verify(VerifyArgs),
    /// Draw one face junction of an aggregate as SVG.
    JunctionSvg(JunctionSvgArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    EdgeRing,
    Icosahedral,
    BcHelix,
    #[value(name = "helix-5bc")]
    Helix5bc,
    #[value(name = "helix-3bc")]
    Helix3bc,
    ModifiedHelix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Hand {
    Right,
    Left,
}

impl From<Hand> for Chirality {
    fn from(h: Hand) -> Self {
        match h {
            Hand::Right => Chirality::Right,
            Hand::Left => Chirality::Left,
        }
    }
}

impl From<Hand> for TwistSense {
    fn from(h: Hand) -> Self {
        match h {
            Hand::Right => TwistSense::RightHanded,
            Hand::Left => TwistSense::LeftHanded,
        }
    }
}

#[derive(Debug, clap::Args)]
struct BuildArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Ring size for edge rings.
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..=5))]
    n: Option<u32>,
    /// Apply the gap-closing twist (edge rings and the icosahedral aggregate).
    #[arg(long)]
    twisted: bool,
    #[arg(long, value_enum)]
    twist_sense: Option<Hand>,
    #[arg(long, default_value_t = 1.0)]
    edge_length: f64,
    /// Number of tetrahedra in a helix.
    #[arg(long)]
    count: Option<usize>,
    /// Handedness of the centroid helix.
    #[arg(long, value_enum)]
    underlying: Option<Hand>,
    /// Sense of the β turn (modified helices).
    #[arg(long, value_enum)]
    rotation_sense: Option<Hand>,
    /// Aggregate JSON output; `-` for stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    obj: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct AnalyzeArgs {
    input: PathBuf,
    #[arg(long)]
    planes: bool,
    #[arg(long)]
    junctions: bool,
    #[arg(long)]
    period: bool,
    #[arg(long)]
    symmetry: bool,
    /// Report path; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Table1,
    Junctions,
    Helix,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Table1 => Suite::Table1,
            SuiteArg::Junctions => Suite::Junctions,
            SuiteArg::Helix => Suite::Helix,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct JunctionSvgArgs {
    input: PathBuf,
    /// Zero-based index into the junction list reported by `analyze`.
    #[arg(long, default_value_t = 0)]
    index: usize,
    #[arg(long, short)]
    output: PathBuf,
}

enum Failure {
    Usage(String),
    Runtime(String),
    ChecksFailed,
}

impl From<tetragold::Error> for Failure {
    fn from(e: tetragold::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn tolerance() -> std::result::Result<ToleranceConfig, Failure> {
    let base = ToleranceConfig::default();
    match std::env::var(POINT_TOL_ENV) {
        Err(_) => Ok(base),
        Ok(raw) => {
            let value: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{POINT_TOL_ENV}={raw} is not a number")))?;
            ToleranceConfig::new(value, base.angle_tol, base.parallel_tol)
                .map_err(|e| Failure::Usage(format!("{POINT_TOL_ENV}: {e}")))
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", p.display())))
        }
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| Failure::Runtime(format!("cannot write to stdout: {e}")))
        }
    }
}

fn read_aggregate(path: &Path) -> std::result::Result<Aggregate, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Runtime(format!("cannot read {}: {e}", path.display())))?;
    io::aggregate_from_json(&text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn reject(cond: bool, msg: &str) -> CmdResult {
    if cond {
        Err(Failure::Usage(msg.to_string()))
    } else {
        Ok(())
    }
}

fn build_aggregate(args: &BuildArgs) -> std::result::Result<Aggregate, Failure> {
    let a = args.edge_length;
    reject(!(a > 0.0 && a.is_finite()), "--edge-length must be positive")?;
    let ring_like = matches!(args.kind, Kind::EdgeRing | Kind::Icosahedral);
    reject(args.n.is_some() && args.kind != Kind::EdgeRing, "--n applies to edge rings only")?;
    reject(!ring_like && args.twisted, "--twisted applies to edge rings and the icosahedral aggregate")?;
    reject(args.twist_sense.is_some() && !args.twisted, "--twist-sense requires --twisted")?;
    reject(
        ring_like && (args.count.is_some() || args.underlying.is_some() || args.rotation_sense.is_some()),
        "--count, --underlying and --rotation-sense apply to helices only",
    )?;
    let opts = TwistOptions {
        sense: args.twist_sense.map(TwistSense::from).unwrap_or_default(),
        angle_override: None,
    };
    let count = args.count.unwrap_or(10);
    let underlying = args.underlying.map(Chirality::from).unwrap_or(Chirality::Right);
    let agg = match args.kind {
        Kind::EdgeRing => {
            let n = args.n.ok_or_else(|| Failure::Usage("edge-ring needs --n (3, 4 or 5)".into()))?;
            let ring = aggregate::build_edge_ring(n, a)?;
            if args.twisted {
                aggregate::twist_edge_ring_with(&ring, opts)?
            } else {
                ring
            }
        }
        Kind::Icosahedral => {
            let ico = aggregate::build_icosahedral(a)?;
            if args.twisted {
                aggregate::twist_icosahedral_with(&ico, opts)?
            } else {
                ico
            }
        }
        Kind::BcHelix => {
            reject(args.rotation_sense.is_some(), "--rotation-sense applies to modified helices only")?;
            helix::build_bc_helix(&HelixSpec::canonical(count, underlying, a))?
        }
        Kind::Helix5bc | Kind::Helix3bc => {
            reject(
                args.rotation_sense.is_some(),
                "helix-5bc and helix-3bc fix the rotation sense; use modified-helix to choose it",
            )?;
            let sense = if args.kind == Kind::Helix5bc { underlying } else { underlying.flipped() };
            helix::build_modified_helix(&HelixSpec::modified(count, underlying, sense, a))?
        }
        Kind::ModifiedHelix => {
            let sense = args.rotation_sense.map(Chirality::from).unwrap_or(underlying);
            helix::build_modified_helix(&HelixSpec::modified(count, underlying, sense, a))?
        }
    };
    Ok(agg)
}

fn cmd_build(args: BuildArgs) -> CmdResult {
    let tol = tolerance()?;
    let agg = build_aggregate(&args)?;
    let json_to_stdout = args.json.as_deref() == Some(Path::new("-")) || (args.json.is_none() && args.obj.is_none());
    if json_to_stdout {
        write_output(None, &io::aggregate_to_json(&agg))?;
    } else if let Some(p) = &args.json {
        write_output(Some(p), &io::aggregate_to_json(&agg))?;
    }
    if let Some(p) = &args.obj {
        write_output(Some(p), &io::aggregate_to_obj(&agg))?;
    }
    let summary = format!(
        "{}: {} tetrahedra, {} plane classes\n",
        agg.kind.as_str(),
        agg.len(),
        plane_classes(&agg, &tol).count
    );
    if json_to_stdout {
        eprint!("{summary}");
    } else {
        print!("{summary}");
    }
    Ok(())
}

fn emit_report(report: &Report, output: Option<&Path>) -> CmdResult {
    write_output(output, &report.to_json()?)?;
    for c in report.failed_checks() {
        eprintln!("FAIL {}: measured {} expected {}", c.name, c.measured, c.expected);
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> CmdResult {
    let tol = tolerance()?;
    let agg = read_aggregate(&args.input)?;
    let any = args.planes || args.junctions || args.period || args.symmetry;
    let opts = if any {
        AnalysisOptions {
            planes: args.planes,
            junctions: args.junctions,
            period: args.period,
            symmetry: args.symmetry,
        }
    } else {
        AnalysisOptions::default()
    };
    let report = report::analyze(&agg, opts, &tol)?;
    emit_report(&report, args.output.as_deref())
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let tol = tolerance()?;
    let report = verify::run_suite(args.suite.into(), &tol)?;
    eprintln!(
        "{} of {} checks passed",
        report.checks.iter().filter(|c| c.passed).count(),
        report.checks.len()
    );
    emit_report(&report, args.output.as_deref())
}

fn cmd_junction_svg(args: JunctionSvgArgs) -> CmdResult {
    let tol = tolerance()?;
    let agg = read_aggregate(&args.input)?;
    let junctions = find_face_junctions(&agg, &tol);
    let j = junctions.get(args.index).ok_or_else(|| {
        Failure::Usage(format!(
            "junction index {} out of range: {} has {} junctions",
            args.index,
            args.input.display(),
            junctions.len()
        ))
    })?;
    write_output(Some(&args.output), &io::junction_svg(j))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Verify(a) => cmd_verify(a),
        Command::JunctionSvg(a) => cmd_junction_svg(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::ChecksFailed) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => Cli::command().error(ErrorKind::ValueValidation, msg).exit(),
    }
}
