use std::fs;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aca_core::atlas::{classify_all_eca, diff_against_reference, AsyncScheme, AtlasReport, InverseRef};
use aca_core::invertibility::{
    r2_counterexample, DecideOptions, DecisionReport, Verdict, DEFAULT_CANDIDATE_CAP, DEFAULT_WINDOW_CAP,
};
use aca_core::nakamura::{build_bar_pair, encoding_description, verify_theorem1};
use aca_core::simulate::{simulate, Ring, Scheme, Trace};
use aca_core::LocalRule;
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_INVERTIBLE: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_NOT_INVERTIBLE: u8 = 3;

#[derive(Parser)]
#[command(name = "aca", version, about = "Asynchronous cellular automata toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide phase-space invertibility of one rule.
    Decide(DecideArgs),
    /// Classify all 256 elementary automata.
    ClassifyEca(ClassifyArgs),
    /// Build the time-stamped purely asynchronous pair from a synchronous
    /// inverse pair.
    Nakamura(NakamuraArgs),
    /// Print two configurations with the same successor.
    WitnessR2(WitnessArgs),
    /// Run a random asynchronous simulation on a ring.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Purely,
    Fully,
}

impl From<SchemeArg> for AsyncScheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Purely => AsyncScheme::Purely,
            SchemeArg::Fully => AsyncScheme::Fully,
        }
    }
}

#[derive(Args)]
struct Workers {
    /// Worker threads.
    #[arg(long, env = "ACA_THREADS")]
    threads: Option<NonZeroUsize>,
    /// Keep wall-clock timings in reports (they are zeroed by default so
    /// reports are reproducible).
    #[arg(long)]
    timing: bool,
}

impl Workers {
    fn count(&self) -> usize {
        self.threads.map_or_else(rayon::current_num_threads, NonZeroUsize::get)
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        Ok(rayon::ThreadPoolBuilder::new().num_threads(self.count()).build()?)
    }
}

#[derive(Args)]
struct Caps {
    /// Largest number of windows one check may enumerate.
    #[arg(long, default_value_t = DEFAULT_WINDOW_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// Largest number of candidate tables the exhaustive search may try.
    #[arg(long, default_value_t = DEFAULT_CANDIDATE_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    candidate_cap: u64,
}

#[derive(Args)]
struct DecideArgs {
    /// Rule file, or a Wolfram number.
    #[arg(long, required_unless_present = "wolfram", conflicts_with = "wolfram")]
    rule: Option<String>,
    #[arg(long)]
    wolfram: Option<i64>,
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    /// Try every table over the minimal neighborhood if the derived candidate fails.
    #[arg(long)]
    exhaustive: bool,
    #[command(flatten)]
    caps: Caps,
    #[command(flatten)]
    workers: Workers,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Compare with the built-in reference list; exit 0 iff they agree.
    #[arg(long)]
    diff: bool,
    #[command(flatten)]
    caps: Caps,
    #[command(flatten)]
    workers: Workers,
}

#[derive(Args)]
struct NakamuraArgs {
    /// Rule file, or a Wolfram number.
    #[arg(long)]
    rule: String,
    /// Its synchronous inverse.
    #[arg(long)]
    inverse: String,
    #[arg(long)]
    out_dir: PathBuf,
    /// Check the constructed pair and exit as `decide` does.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = DEFAULT_WINDOW_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    #[command(flatten)]
    workers: Workers,
}

#[derive(Args)]
struct WitnessArgs {
    /// Rule file, or a Wolfram number.
    #[arg(long)]
    rule: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SimulateArgs {
    /// Rule file, or a Wolfram number.
    #[arg(long)]
    rule: String,
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    #[arg(long)]
    size: usize,
    #[arg(long)]
    steps: usize,
    #[arg(long)]
    seed: u64,
    /// Activation probability per cell (purely scheme).
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Initial states as digits, e.g. 0110; random from the seed if omitted.
    #[arg(long)]
    init: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Decide(a) => decide(a),
        Command::ClassifyEca(a) => classify(a),
        Command::Nakamura(a) => nakamura(a),
        Command::WitnessR2(a) => witness(a),
        Command::Simulate(a) => simulate_cmd(a),
    }
}

/// Reads a rule from a Wolfram number or a JSON rule file.
fn load_rule(arg: &str) -> Result<LocalRule> {
    if let Ok(n) = arg.parse::<i64>() {
        return Ok(LocalRule::eca_from_wolfram(n)?);
    }
    let text = fs::read_to_string(arg).with_context(|| format!("reading rule file {arg}"))?;
    LocalRule::from_json(&text).with_context(|| format!("parsing rule file {arg}"))
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn verdict_code(report: &DecisionReport) -> Result<u8> {
    match report.verdict {
        Verdict::Invertible => Ok(EXIT_INVERTIBLE),
        Verdict::NotInvertible => Ok(EXIT_NOT_INVERTIBLE),
        Verdict::ResourceCapExceeded => bail!("resource cap exceeded"),
    }
}

fn decide(a: DecideArgs) -> Result<u8> {
    let rule = match (&a.rule, a.wolfram) {
        (Some(r), _) => load_rule(r)?,
        (None, Some(n)) => LocalRule::eca_from_wolfram(n)?,
        (None, None) => unreachable!("clap requires one of --rule and --wolfram"),
    };
    let options =
        DecideOptions { window_cap: a.caps.cap, candidate_cap: a.caps.candidate_cap, exhaustive: a.exhaustive };
    let scheme = AsyncScheme::from(a.scheme);
    let mut report = a.workers.pool()?.install(|| scheme.decide(&rule, &options))?;
    if !a.workers.timing {
        report = report.without_timing();
    }
    print_json(&report)?;
    verdict_code(&report)
}

fn classify(a: ClassifyArgs) -> Result<u8> {
    let options = DecideOptions { window_cap: a.caps.cap, candidate_cap: a.caps.candidate_cap, exhaustive: false };
    let mut report = classify_all_eca(a.scheme.into(), &options, a.workers.count())?;
    if !a.workers.timing {
        report = report.without_timing();
    }
    if let Some(path) = &a.csv {
        write_csv(&report, path)?;
    }
    match &a.out {
        Some(path) => fs::write(path, serde_json::to_string_pretty(&report)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?,
        None if !a.diff => print_json(&report)?,
        None => {}
    }
    if !a.diff {
        return Ok(0);
    }
    let diff = diff_against_reference(&report);
    print_json(&diff)?;
    Ok(if diff.is_empty() { 0 } else { EXIT_MISMATCH })
}

fn write_csv(report: &AtlasReport, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    w.write_record(["rule", "verdict", "inverse", "millis"])?;
    for e in &report.entries {
        let inverse = match &e.inverse {
            None => String::new(),
            Some(InverseRef::Wolfram(n)) => n.to_string(),
            Some(InverseRef::Table(t)) => t.to_json_value().to_string(),
        };
        w.write_record([e.rule.to_string(), e.verdict.to_string(), inverse, e.millis.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

fn nakamura(a: NakamuraArgs) -> Result<u8> {
    let c = load_rule(&a.rule)?;
    let g = load_rule(&a.inverse)?;
    let pair = build_bar_pair(&c, &g)?;
    fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
    let encoding = encoding_description(pair.base_q());
    for (name, rule) in [("bar_rule.json", pair.bar_c()), ("bar_inverse.json", pair.bar_g())] {
        let mut doc = rule.to_json_value();
        doc["encoding"] = encoding.clone().into();
        let path = a.out_dir.join(name);
        fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        eprintln!("wrote {}", path.display());
    }
    if !a.verify {
        return Ok(0);
    }
    let mut report = a.workers.pool()?.install(|| verify_theorem1(&c, &g, a.cap))?;
    if !a.workers.timing {
        report = report.without_timing();
    }
    print_json(&report)?;
    verdict_code(&report)
}

fn witness(a: WitnessArgs) -> Result<u8> {
    match r2_counterexample(&load_rule(&a.rule)?)? {
        Some(w) => print_json(&w)?,
        None => println!("trivial rule"),
    }
    Ok(0)
}

fn simulate_cmd(a: SimulateArgs) -> Result<u8> {
    let rule = load_rule(&a.rule)?;
    let init = match &a.init {
        Some(digits) => Ring(
            digits
                .chars()
                .map(|ch| ch.to_digit(36).map(|d| d as u16).context("initial states must be digits"))
                .collect::<Result<_>>()?,
        ),
        None => Ring::random(a.size, rule.q(), a.seed),
    };
    if init.len() != a.size {
        bail!("--init has {} cells but --size is {}", init.len(), a.size);
    }
    let scheme = match a.scheme {
        SchemeArg::Purely => Scheme::Purely { p: a.p },
        SchemeArg::Fully => Scheme::Fully,
    };
    let trace = simulate(&rule, init, scheme, a.steps, a.seed)?;
    match a.format {
        Format::Json => print_json(&trace)?,
        Format::Text => print_text(&trace, rule.q())?,
    }
    Ok(0)
}

fn print_text(trace: &Trace, q: usize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    let sep = if q > 36 { " " } else { "" };
    for (t, step) in trace.steps.iter().enumerate() {
        let states: Vec<String> = step
            .config
            .0
            .iter()
            .map(|&s| if q > 36 { s.to_string() } else { char::from_digit(s as u32, 36).unwrap().to_string() })
            .collect();
        let active: Vec<String> = step.active.iter().map(usize::to_string).collect();
        writeln!(out, "{t:>5}  {}  [{}]", states.join(sep), active.join(","))?;
    }
    Ok(())
}
