//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines print in order; exits nonzero if any criterion fails.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use hyperconv::format::{parse_space, Space};
use hyperconv::generate::{conv_instances, suite_instances, SuiteName};
use hyperconv::suite::{self, SuiteRun, Verdict};
use hyperconv_core::conv::hyper::ConvHyperspace;
use hyperconv_core::fault::{self, Fault};
use hyperconv_core::{CarrierMode, SetFamily};
use serde_json::Value as Json;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn hyperconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperconv")).args(args).current_dir(root()).output().expect("binary runs")
}

fn json(out: &Output) -> Result<Json, String> {
    serde_json::from_slice(&out.stdout).map_err(|e| format!("unparsable report: {e}"))
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Zero failures, and the named checks actually ran somewhere.
fn clean(run: &SuiteRun, required: &[&str]) -> Result<(), String> {
    let failed: Vec<&str> = run.checks.iter().filter(|(_, o)| o.fail > 0).map(|(c, _)| c.id).collect();
    if !failed.is_empty() {
        return Err(format!("failing checks {failed:?}"));
    }
    for id in required {
        match run.checks.iter().find(|(c, _)| c.id == *id) {
            Some((_, o)) if o.pass > 0 => {}
            Some(_) => return Err(format!("{id} never had its hypothesis met")),
            None => return Err(format!("{id} is not registered")),
        }
    }
    Ok(())
}

fn totals(run: &SuiteRun) -> (u64, u64) {
    (run.checks.iter().map(|(_, o)| o.pass).sum(), run.checks.iter().map(|(_, o)| o.unmet).sum())
}

fn p3_reproduction() -> Outcome {
    let start = Instant::now();
    let text = std::fs::read_to_string(root().join("fixtures/P3.json")).map_err(|e| e.to_string())?;
    let Space::Conv(p3) = parse_space(&text).map_err(|e| e.to_string())? else {
        return Err("P3.json is not a convergence".into());
    };
    let c = p3.carrier().clone();
    let set = |s: &[&str]| c.set_of(s.iter().copied()).expect("label");
    let expected = SetFamily::new([set(&[]), set(&["c"]), set(&["b", "c"]), set(&["a", "b", "c"])]);
    if p3.closed_sets() != expected {
        return Err(format!("closed sets {:?}", p3.closed_sets()));
    }
    let h = ConvHyperspace::new(p3, CarrierMode::All);
    let f = h.filter(SetFamily::single(set(&["a"]))).map_err(|e| e.to_string())?;
    let lk: Vec<_> = h.closed().iter().filter(|&a| h.lim_lk(&f, a).unwrap()).collect();
    if lk != [set(&[])] {
        return Err(format!("lim_lK = {lk:?}"));
    }
    if let Some(a) = expected.iter().find(|&a| !h.lim_lv(&f, a).unwrap()) {
        return Err(format!("{a:?} is closed but not a lower-Vietoris limit"));
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(1) {
        return Err(format!("took {}", secs(t)));
    }
    Ok(format!("closed sets {{∅,{{c}},{{b,c}},X}}, lim_lK = {{∅}}, lim_lV ⊇ closed sets, {}", secs(t)))
}

fn exhaustive_suite() -> Outcome {
    let start = Instant::now();
    let instances = conv_instances(3, 42);
    let run = suite::run(&instances, &suite::registry(), 42);
    clean(&run, &["conv.uk_corollary", "hyper.uk_diagonality_theorem", "hyper.lk_approach_theorem"])?;
    let t = start.elapsed();
    if t >= Duration::from_secs(600) {
        return Err(format!("took {}", secs(t)));
    }
    let (pass, unmet) = totals(&run);
    Ok(format!(
        "{} convergences on ≤ 3 points, {} checks, {pass} pass, {unmet} unmet, {}",
        run.instances,
        run.checks.len(),
        secs(t)
    ))
}

fn random_suite() -> Outcome {
    let start = Instant::now();
    let instances = suite_instances(SuiteName::Random, 4, 42);
    let small = instances.iter().filter(|i| i.space.carrier().len() <= 3).count();
    let four = instances.iter().filter(|i| i.space.carrier().len() == 4).count();
    if small != 1000 || four < 100 {
        return Err(format!("{small} instances on ≤ 3 points, {four} on 4"));
    }
    let run = suite::run(&instances, &suite::registry(), 42);
    clean(
        &run,
        &[
            "hyper.uk_ge_uf",
            "hyper.lk_ge_lv",
            "hyper.uf_ge_luf",
            "hyper.fell_chain",
            "hyper.uf_non_archimedean",
            "cap.tower_roundtrip",
            "hyper.reflection_theorem",
        ],
    )?;
    if run.hyper_sampled == 0 {
        return Err("no hyperspace needed sampled filters".into());
    }
    let t = start.elapsed();
    if t >= Duration::from_secs(1800) {
        return Err(format!("took {}", secs(t)));
    }
    let (pass, unmet) = totals(&run);
    Ok(format!(
        "{small} instances on ≤ 3 points and {four} on 4 ({} hyperspaces sampled), {pass} pass, {unmet} unmet, {}",
        run.hyper_sampled,
        secs(t)
    ))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let checks = suite::select(&["oracle".to_string()]);
    let mut instances = suite_instances(SuiteName::Oracle, 3, 42);
    instances.extend(conv_instances(3, 42));
    let run = suite::run(&instances, &checks, 42);
    let ids: Vec<&str> = checks.iter().map(|c| c.id).collect();
    clean(&run, &ids)?;
    let (pass, _) = totals(&run);
    Ok(format!(
        "{} oracle checks on {} instances, {pass} agreements, {}",
        ids.len(),
        run.instances,
        secs(start.elapsed())
    ))
}

fn determinism() -> Outcome {
    let start = Instant::now();
    let args = ["--format", "json", "verify", "--suite", "all", "--seed", "42"];
    let a = hyperconv(&args);
    let b = hyperconv(&args);
    if a.status.code() != Some(0) {
        return Err(format!("exit {:?}: {}", a.status.code(), String::from_utf8_lossy(&a.stderr)));
    }
    if a.stdout != b.stdout {
        return Err("reports differ".into());
    }
    let report = json(&a)?;
    Ok(format!("two runs, {} identical bytes, status {}, {}", a.stdout.len(), report["status"], secs(start.elapsed())))
}

/// Runs the suite with a fault injected, then replays the first witness that
/// names an instance in process.
fn mutant(flag: &str, fault: Fault) -> Result<String, String> {
    let out = hyperconv(&["--inject", flag, "--format", "json", "verify", "--suite", "exhaustive", "--max-n", "2"]);
    if out.status.code() != Some(1) {
        return Err(format!("--inject {flag}: exit {:?}", out.status.code()));
    }
    let report = json(&out)?;
    let checks = report["checks"].as_array().ok_or("no checks")?;
    let (id, w) = checks
        .iter()
        .filter(|c| c["fail"].as_u64() > Some(0))
        .find_map(|c| {
            c["witnesses"].as_array()?.iter().find(|w| w.get("space").is_some()).map(|w| (c["id"].as_str(), w))
        })
        .ok_or_else(|| format!("--inject {flag}: no witness with a space"))?;
    let id = id.ok_or("check without id")?;
    let name = w["instance"].as_str().ok_or("witness without instance")?;
    let space = parse_space(&w["space"].to_string()).map_err(|e| format!("witness space: {e}"))?;
    let instances = suite_instances(SuiteName::Exhaustive, 2, 42);
    let inst = instances.iter().find(|i| i.id == name).ok_or("unknown instance")?;
    if inst.space != space {
        return Err(format!("witness space differs from instance {name}"));
    }
    let check = suite::registry().into_iter().find(|c| c.id == id).ok_or("unknown check")?;
    fault::inject(fault);
    let faulty = suite::run_one(check, inst, 42);
    fault::clear();
    let clean = suite::run_one(check, inst, 42);
    match (faulty, clean) {
        (Some(Verdict::Fail(_)), Some(v)) if !v.is_fail() => Ok(format!("{flag}: {id} on {name}")),
        (f, c) => Err(format!("replay of {id} on {name}: faulty {f:?}, clean {c:?}")),
    }
}

fn mutation_smoke() -> Outcome {
    let a = mutant("tsub-inf", Fault::TruncSubInfinity)?;
    let b = mutant("monotone", Fault::MonotoneValidator)?;
    Ok(format!("{a}; {b}; witnesses replay"))
}

fn search_reporting() -> Outcome {
    let out = hyperconv(&["--format", "json", "search", "--target", "lK-vs-lV", "--max-n", "3"]);
    let r = json(&out)?;
    let w = &r["witness"];
    let text = w["space"].to_string();
    let Space::Conv(xi) = parse_space(&text).map_err(|e| e.to_string())? else {
        return Err("witness is not a convergence".into());
    };
    let p3_class = xi.len() == 3 && xi.is_pretopological() && !xi.is_topological();
    let single = w["filter"].as_array().is_some_and(|f| f.len() == 1 && f[0].as_array().is_some_and(|s| s.len() == 1));
    if r["result"] != "witness" || !p3_class || !single || w["values"]["lK"] != "inf" || w["values"]["lV"] != "0" {
        return Err(format!("unexpected witness {w}"));
    }
    let mut others = Vec::new();
    for target in ["uF-vs-LuF", "strict-remark-inclusion"] {
        let out = hyperconv(&["--format", "json", "search", "--target", target, "--max-n", "3"]);
        let r = json(&out)?;
        match r["result"].as_str() {
            Some(res @ ("witness" | "exhausted")) if out.status.success() => others.push(format!("{target} {res}")),
            _ => return Err(format!("{target}: {}", String::from_utf8_lossy(&out.stdout))),
        }
    }
    Ok(format!("lK-vs-lV witness on {} at {}; {}", w["instance"], w["limit"], others.join(", ")))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("P3 reproduction", p3_reproduction),
        ("exhaustive suite", exhaustive_suite),
        ("randomized suite", random_suite),
        ("oracle equivalence", oracle_equivalence),
        ("determinism", determinism),
        ("mutation smoke test", mutation_smoke),
        ("search reporting", search_reporting),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {} {name}: PASS ({msg})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({msg})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
