use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hyperconv::format::{labels, parse_space, FilterDocument, LimEntry, Space};
use hyperconv::generate::{dedup_isomorphic, suite_instances, SuiteName};
use hyperconv::report::{family_text, set_text, Report, SearchReport, TOOL_VERSION};
use hyperconv::search::{search, SearchTarget};
use hyperconv::suite;
use hyperconv_core::fault::{self, Fault};
use hyperconv_core::setcalc::{nonempty_subsets, DEFAULT_BASE_MAX, DEFAULT_HYPER_BASE_MAX, MAX_POINTS};
use hyperconv_core::{CapSpace, Carrier, CarrierMode, ConvSpace, HyperFilter, HyperSpace, SetFamily, Structure};
use serde::Serialize;
use serde_json::json;

/// Largest carrier the generators of `verify` and `search` support.
const GENERATED_MAX: usize = 4;

#[derive(Parser)]
#[command(name = "hyperconv", version, about = "Finite convergence approach spaces and their hyperspace structures")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Deliberately break part of the core, to see the checks catch it.
    #[arg(long, global = true, value_enum)]
    inject: Option<Injected>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Injected {
    /// `∞ ⊖ y` returns 0 for finite `y`.
    TsubInf,
    /// The monotone-axiom validators accept every table.
    Monotone,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HyperCarrier {
    Closed,
    Rclosed,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a space document.
    Check { file: PathBuf },
    /// Report the classification flags of a space.
    Classify { file: PathBuf },
    /// Tabulate hyperspace structures.
    Hyper {
        file: PathBuf,
        /// uK, lK, K, uF, Fbar, F, lV, uV or LuF; every structure when omitted.
        #[arg(long, value_parser = parse_structure)]
        structure: Vec<Structure>,
        #[arg(long, value_enum, default_value = "closed")]
        hyper_carrier: HyperCarrier,
        /// Filter as `{"kernel": [["a"], ["a","b"]]}`; every principal filter when omitted.
        #[arg(long)]
        filter: Option<String>,
    },
    /// List the ε-levels of a space.
    Tower { file: PathBuf },
    /// Run the theorem suite.
    Verify {
        #[arg(long, value_parser = parse_suite, default_value = "all")]
        suite: SuiteName,
        #[arg(long, default_value_t = GENERATED_MAX)]
        max_n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Check ids or id prefixes such as `hyper` or `cap.tower_roundtrip`.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Keep one instance per isomorphism class.
        #[arg(long)]
        dedup: bool,
    },
    /// Search for a finite witness of a strict inequality.
    Search {
        #[arg(long, value_parser = parse_target)]
        target: SearchTarget,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn parse_structure(s: &str) -> Result<Structure, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_suite(s: &str) -> Result<SuiteName, String> {
    SuiteName::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite {s:?}"))
}

fn parse_target(s: &str) -> Result<SearchTarget, String> {
    s.parse()
}

/// Size caps: defaults from the core, overridden by `HYPERCONV_MAX_N`.
struct Caps {
    base: usize,
    hyper: usize,
}

fn caps() -> Result<Caps> {
    match std::env::var("HYPERCONV_MAX_N") {
        Ok(v) => {
            let n: usize = v.trim().parse().with_context(|| format!("HYPERCONV_MAX_N={v:?} is not a number"))?;
            if n == 0 || n > MAX_POINTS {
                bail!("HYPERCONV_MAX_N={n} is outside 1..={MAX_POINTS}");
            }
            Ok(Caps { base: n, hyper: n })
        }
        Err(_) => Ok(Caps { base: DEFAULT_BASE_MAX, hyper: DEFAULT_HYPER_BASE_MAX }),
    }
}

fn load(path: &Path, cap: usize) -> Result<Space> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let space = parse_space(&text).with_context(|| format!("{}", path.display()))?;
    let n = space.carrier().len();
    if n > cap {
        bail!("{}: {n} points exceed the size cap {cap} (set HYPERCONV_MAX_N to raise it)", path.display());
    }
    Ok(space)
}

fn emit(format: OutputFormat, json: &impl Serialize, text: String) {
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(json).expect("serializable")),
        OutputFormat::Text => print!("{text}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.inject {
        Some(Injected::TsubInf) => fault::inject(Fault::TruncSubInfinity),
        Some(Injected::Monotone) => fault::inject(Fault::MonotoneValidator),
        None => {}
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let caps = caps()?;
    match &cli.command {
        Command::Check { file } => check(cli.format, &load(file, caps.base)?),
        Command::Classify { file } => classify(cli.format, &load(file, caps.base)?),
        Command::Hyper { file, structure, hyper_carrier, filter } => {
            hyper(cli.format, &load(file, caps.hyper)?, structure, *hyper_carrier, filter.as_deref())
        }
        Command::Tower { file } => tower(cli.format, &load(file, caps.base)?),
        Command::Verify { suite, max_n, seed, checks, dedup } => {
            verify(cli, &caps, *suite, *max_n, *seed, checks, *dedup)
        }
        Command::Search { target, max_n, seed } => {
            let max_n = generated_max(&caps, *max_n)?;
            let outcome = search(*target, max_n, *seed);
            let config = json!({"target": target.name(), "max_n": max_n, "inject": injected_name(cli.inject)});
            let report = SearchReport::new("search", config, *seed, outcome);
            match cli.format {
                OutputFormat::Json => print!("{}", report.to_json()),
                OutputFormat::Text => print!("{}", report.to_text()),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn generated_max(caps: &Caps, max_n: usize) -> Result<usize> {
    let limit = caps.hyper.min(GENERATED_MAX);
    if max_n == 0 || max_n > limit {
        bail!("--max-n {max_n} is outside 1..={limit}");
    }
    Ok(max_n)
}

fn injected_name(inject: Option<Injected>) -> Option<&'static str> {
    inject.map(|i| match i {
        Injected::TsubInf => "tsub-inf",
        Injected::Monotone => "monotone",
    })
}

fn kind_name(space: &Space) -> &'static str {
    match space {
        Space::Conv(_) => "conv",
        Space::Cap(_) => "cap",
    }
}

fn check(format: OutputFormat, space: &Space) -> Result<ExitCode> {
    let cap = space.as_cap();
    let n = space.carrier().len();
    let out = json!({
        "valid": true,
        "kind": kind_name(space),
        "points": n,
        "centered": cap.is_centered(),
        "precentered": cap.is_precentered(),
    });
    let text = format!(
        "valid {} space on {n} points ({})\n",
        kind_name(space),
        if cap.is_centered() {
            "centered"
        } else if cap.is_precentered() {
            "precentered"
        } else {
            "not precentered"
        }
    );
    emit(format, &out, text);
    Ok(ExitCode::SUCCESS)
}

fn classify(format: OutputFormat, space: &Space) -> Result<ExitCode> {
    let cap = space.as_cap();
    let c = cap.classify();
    let carrier = cap.carrier();
    let mut flags = vec![
        ("centered", c.centered),
        ("precentered", c.precentered),
        ("finite_depth", c.finite_depth),
        ("psap", c.psap),
        ("prap", c.prap),
        ("approach", c.approach),
        ("non_archimedean", c.non_archimedean),
    ];
    if let Space::Conv(xi) = space {
        flags.push(("pretopological", xi.is_pretopological()));
        flags.push(("topological", xi.is_topological()));
    }
    let mut out = serde_json::Map::new();
    out.insert("kind".into(), json!(kind_name(space)));
    for (k, v) in &flags {
        out.insert((*k).into(), json!(v));
    }
    out.insert("diagonality_points".into(), json!(labels(carrier, c.diagonality_points)));
    let mut text: String = flags.iter().map(|(k, v)| format!("{k:16} {v}\n")).collect();
    text.push_str(&format!("{:16} {}\n", "diagonal points", carrier.format_set(c.diagonality_points)));
    emit(format, &out, text);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct HyperTable {
    structure: &'static str,
    filter: Vec<Vec<String>>,
    values: Vec<HyperValue>,
}

#[derive(Serialize)]
struct HyperValue {
    limit: Vec<String>,
    value: String,
}

fn hyper(
    format: OutputFormat,
    space: &Space,
    structures: &[Structure],
    carrier_mode: HyperCarrier,
    filter: Option<&str>,
) -> Result<ExitCode> {
    let mode = match carrier_mode {
        HyperCarrier::Closed => CarrierMode::Closed,
        HyperCarrier::Rclosed => CarrierMode::RClosed,
        HyperCarrier::All => CarrierMode::All,
    };
    let carrier = space.carrier().clone();
    let h = HyperSpace::new(space.as_cap(), mode).context("hyperspace")?;
    let filters: Vec<HyperFilter> = match filter {
        Some(text) => {
            let family = FilterDocument::parse(text, &carrier).context("--filter")?;
            vec![h.filter(SetFamily::new(family)).context("--filter")?]
        }
        None => h.points().iter().map(|&p| HyperFilter::principal(p)).collect(),
    };
    let structures: Vec<Structure> = if structures.is_empty() { Structure::ALL.to_vec() } else { structures.to_vec() };
    let mut tables = Vec::new();
    for &s in &structures {
        for f in &filters {
            let row = h.lambda_row(s, f);
            tables.push(HyperTable {
                structure: s.name(),
                filter: f.family().iter().map(|k| labels(&carrier, k)).collect(),
                values: h
                    .limits()
                    .iter()
                    .zip(row)
                    .map(|(a, v)| HyperValue { limit: labels(&carrier, a), value: v.to_string() })
                    .collect(),
            });
        }
    }
    let mut text = String::new();
    for t in &tables {
        text.push_str(&format!("{} at filter {}\n", t.structure, family_text(&t.filter)));
        for v in &t.values {
            text.push_str(&format!("  {:12} {}\n", set_text(&v.limit), v.value));
        }
    }
    let out = json!({
        "hyper_carrier": match carrier_mode { HyperCarrier::Closed => "closed", HyperCarrier::Rclosed => "rclosed", HyperCarrier::All => "all" },
        "points": h.points().iter().map(|&p| labels(&carrier, p)).collect::<Vec<_>>(),
        "tables": tables,
    });
    emit(format, &out, text);
    Ok(ExitCode::SUCCESS)
}

fn lim_entries(carrier: &Carrier, conv: &ConvSpace) -> Vec<LimEntry> {
    nonempty_subsets(carrier.len())
        .map(|k| LimEntry { kernel: labels(carrier, k), limit: labels(carrier, conv.lim(k)) })
        .collect()
}

fn tower(format: OutputFormat, space: &Space) -> Result<ExitCode> {
    let cap: CapSpace = space.as_cap();
    let carrier = cap.carrier();
    let t = cap.tower();
    let mut text = String::new();
    let mut levels = Vec::new();
    for (eps, layer) in t.layers() {
        text.push_str(&format!(
            "ε ≥ {eps}: {}{}\n",
            if layer.is_topological() {
                "topological"
            } else if layer.is_pretopological() {
                "pretopological"
            } else {
                "convergence"
            },
            if layer.is_centered() { "" } else { ", not centered" }
        ));
        for e in lim_entries(carrier, layer) {
            text.push_str(&format!("  lim {} = {}\n", set_text(&e.kernel), set_text(&e.limit)));
        }
        levels.push(json!({
            "threshold": eps.to_string(),
            "pretopological": layer.is_pretopological(),
            "topological": layer.is_topological(),
            "lim": lim_entries(carrier, layer),
        }));
    }
    emit(format, &json!({ "levels": levels }), text);
    Ok(ExitCode::SUCCESS)
}

fn verify(
    cli: &Cli,
    caps: &Caps,
    suite_name: SuiteName,
    max_n: usize,
    seed: u64,
    checks: &[String],
    dedup: bool,
) -> Result<ExitCode> {
    let max_n = generated_max(caps, max_n)?;
    let selectors: Vec<String> = if checks.is_empty() {
        suite_name.default_checks().iter().map(|s| s.to_string()).collect()
    } else {
        checks.to_vec()
    };
    let selected = suite::select(&selectors);
    if selected.is_empty() {
        bail!("no check matches {selectors:?}");
    }
    let mut instances = suite_instances(suite_name, max_n, seed);
    if dedup {
        instances = dedup_isomorphic(instances);
    }
    let run = suite::run(&instances, &selected, seed);
    let config = json!({
        "suite": suite_name.name(),
        "max_n": max_n,
        "checks": selectors,
        "dedup": dedup,
        "inject": injected_name(cli.inject),
        "tool_version": TOOL_VERSION,
    });
    let report = Report::new("verify", config, seed, &run);
    match cli.format {
        OutputFormat::Json => print!("{}", report.to_json()),
        OutputFormat::Text => print!("{}", report.to_text()),
    }
    Ok(if run.failures() == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
