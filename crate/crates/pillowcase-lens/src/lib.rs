//! Command-line front end: intersection counts, verification suites and
//! figures.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pillowcase::intersect::{self, Family, Flag, IntersectionProblem, IntersectionReport};
use pillowcase::lagrangians::{PerturbationConfig, Shape};
use pillowcase::mcg::parse_word;

pub mod report;
pub mod svg;
pub mod verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_FLAGGED: i32 = 2;
pub const EXIT_SUITE_FAILED: i32 = 3;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PILLOWCASE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "pillowcase-lens", version, about = "Lagrangian intersection counts in the pillowcase")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count intersection points of L_s with L_d·f.
    Count(CountArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Draw the Lagrangians in the pillowcase.
    Plot(CommonArgs),
}

#[derive(Debug, Clone, Args)]
struct CommonArgs {
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "pillowcase-out")]
    out: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "csv,svg,json")]
    format: Vec<Format>,
    /// Omit the timestamp from SVG output.
    #[arg(long)]
    reproducible: bool,
}

#[derive(Debug, Args)]
struct CountArgs {
    /// Mapping class word, e.g. "s b1 a1^-1".
    #[arg(long, conflicts_with = "family")]
    word: Option<String>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value_t = 128)]
    grid: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    UnknotLens,
    SimpleLens,
    Trefoil,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::UnknotLens => Family::UnknotLens,
            FamilyArg::SimpleLens => Family::SimpleLens,
            FamilyArg::Trefoil => Family::Trefoil,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Mcg,
    Traces,
    Cohomology,
    All,
}

/// Validated settings of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub word: String,
    pub family: Option<Family>,
    pub p: Option<u32>,
    pub epsilon: f64,
    pub grid: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub formats: Vec<Format>,
    pub reproducible: bool,
}

fn config_error(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_CONFIG
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_CONFIG,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Err(msg) = init_threads() {
        return config_error(msg);
    }
    match cli.command {
        Command::Count(args) => match count_config(args) {
            Ok(cfg) => cmd_count(&cfg),
            Err(msg) => config_error(msg),
        },
        Command::Verify(args) => cmd_verify(args.suite, args.seed),
        Command::Plot(common) => {
            if !(common.epsilon > 0.0 && common.epsilon < 0.5) {
                return config_error(format!("epsilon must lie in (0, 0.5), got {}", common.epsilon));
            }
            cmd_plot(&common)
        }
    }
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {v:?}"))?;
    // a second initialization in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn count_config(args: CountArgs) -> Result<RunConfig, String> {
    let c = args.common;
    if !(c.epsilon > 0.0 && c.epsilon < 0.5) {
        return Err(format!("epsilon must lie in (0, 0.5), got {}", c.epsilon));
    }
    if args.grid < 64 {
        return Err(format!("grid must be at least 64, got {}", args.grid));
    }
    let (word, family) = match (args.word, args.family) {
        (Some(w), None) => {
            parse_word(&w).map_err(|e| format!("{e}"))?;
            (w, None)
        }
        (None, Some(f)) => {
            let fam = Family::from(f);
            let p = match (fam, args.p) {
                (Family::Trefoil, p) => p.unwrap_or(0),
                (_, Some(p)) => p,
                (_, None) => return Err(format!("--family {} needs --p", fam.name())),
            };
            (fam.word(p).to_string(), Some(fam))
        }
        _ => return Err("give either --word or --family".to_string()),
    };
    Ok(RunConfig {
        word,
        family,
        p: args.p,
        epsilon: c.epsilon,
        grid: args.grid,
        seed: c.seed,
        out: c.out,
        formats: c.format,
        reproducible: c.reproducible,
    })
}

/// Builds the solver problem for a validated config.
pub fn problem(cfg: &RunConfig) -> Result<IntersectionProblem, String> {
    let pert = PerturbationConfig::new(cfg.epsilon, Shape::Sine).map_err(|e| e.to_string())?;
    let mut prob = match cfg.family {
        Some(f) => IntersectionProblem::for_family(f, cfg.p.unwrap_or(0), pert),
        None => IntersectionProblem::new(parse_word(&cfg.word).map_err(|e| e.to_string())?, pert),
    };
    prob.grid = cfg.grid;
    prob.seed = cfg.seed;
    Ok(prob)
}

pub fn cmd_count(cfg: &RunConfig) -> i32 {
    let prob = match problem(cfg) {
        Ok(p) => p,
        Err(msg) => return config_error(msg),
    };
    let start = Instant::now();
    let rep = match intersect::solve(&prob) {
        Ok(r) => r,
        Err(e) => return config_error(e),
    };
    let elapsed = start.elapsed().as_secs_f64();
    print_report(&rep);
    eprintln!("solved in {elapsed:.2}s");
    if let Err(e) = write_count_outputs(cfg, &rep) {
        return config_error(e);
    }
    exit_code_for(&rep)
}

fn print_report(rep: &IntersectionReport) {
    println!("word: {}", rep.provenance.word);
    println!("count: {}", rep.count);
    for p in &rep.points {
        println!(
            "  chi={:.9} psi={:.9} phi={:.9} theta={:.9} residual={:.1e} transverse={}{}",
            p.disk.chi,
            p.disk.psi,
            p.sphere.phi,
            p.sphere.theta,
            p.residual,
            p.transverse.as_str(),
            if p.near_double_point { " near-double-point" } else { "" }
        );
    }
    for f in &rep.flags {
        println!("flag: {}", report::flag_name(*f));
    }
    if rep.provenance.no_convergence > 0 {
        println!("seeds without convergence: {} of {}", rep.provenance.no_convergence, rep.provenance.seeds_tried);
    }
}

fn write_count_outputs(cfg: &RunConfig, rep: &IntersectionReport) -> Result<(), String> {
    if cfg.formats.is_empty() {
        return Ok(());
    }
    fs::create_dir_all(&cfg.out).map_err(|e| format!("{}: {e}", cfg.out.display()))?;
    let write = |name: &str, body: &[u8]| -> Result<(), String> {
        let path = cfg.out.join(name);
        fs::write(&path, body).map_err(|e| format!("{}: {e}", path.display()))
    };
    for f in &cfg.formats {
        match f {
            Format::Json => write("report.json", report::json(cfg, rep).as_bytes())?,
            Format::Csv => write("points.csv", &report::points_csv(rep)?)?,
            Format::Svg => {
                let pert = PerturbationConfig::new(cfg.epsilon, Shape::Sine).map_err(|e| e.to_string())?;
                write("intersections.svg", svg::intersection_figure(rep, pert, cfg.reproducible).as_bytes())?
            }
        }
    }
    Ok(())
}

pub fn cmd_verify(suite: Suite, seed: u64) -> i32 {
    let results = match suite {
        Suite::Mcg => vec![verify::mcg_suite(seed)],
        Suite::Traces => vec![verify::traces_suite(seed)],
        Suite::Cohomology => vec![verify::cohomology_suite(seed)],
        Suite::All => vec![verify::mcg_suite(seed), verify::traces_suite(seed), verify::cohomology_suite(seed)],
    };
    let mut ok = true;
    for r in &results {
        for line in &r.lines {
            println!("{line}");
        }
        for f in &r.failures {
            eprintln!("FAILED [{}]: {f}", r.name);
            ok = false;
        }
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_SUITE_FAILED
    }
}

fn cmd_plot(c: &CommonArgs) -> i32 {
    let pert = match PerturbationConfig::new(c.epsilon, Shape::Sine) {
        Ok(p) => p,
        Err(e) => return config_error(e),
    };
    if c.epsilon < 1e-3 {
        println!("warning: epsilon {} is nearly degenerate, the L_s arcs collapse onto beta = 0", c.epsilon);
    }
    if let Err(e) = write_plot_outputs(&c.out, &c.format, pert, c.reproducible) {
        return config_error(e);
    }
    println!("wrote lagrangian figure to {}", c.out.display());
    EXIT_OK
}

fn write_plot_outputs(
    out: &Path,
    formats: &[Format],
    pert: PerturbationConfig,
    reproducible: bool,
) -> Result<(), String> {
    fs::create_dir_all(out).map_err(|e| format!("{}: {e}", out.display()))?;
    for f in formats {
        match f {
            Format::Svg => fs::write(out.join("lagrangians.svg"), svg::lagrangian_figure(pert, reproducible))
                .map_err(|e| e.to_string())?,
            Format::Csv => {
                fs::write(out.join("lagrangians.csv"), report::curves_csv(pert)?).map_err(|e| e.to_string())?
            }
            Format::Json => {}
        }
    }
    Ok(())
}

/// Exit code the count command uses for a report.
pub fn exit_code_for(rep: &IntersectionReport) -> i32 {
    if rep.has_flag(Flag::DoublePointHit) || rep.has_flag(Flag::NonTransversePoint) {
        EXIT_FLAGGED
    } else {
        EXIT_OK
    }
}
