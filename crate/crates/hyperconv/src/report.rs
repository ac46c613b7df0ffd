//! Versioned JSON reports and their text rendering.
//!
//! Reports carry no timings or host data, so a fixed configuration and seed
//! always serialize to the same bytes.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::format::SpaceDocument;
use crate::search::SearchOutcome;
use crate::suite::{SuiteRun, Witness};

pub const REPORT_SCHEMA: &str = "hyperconv.report/1";
pub const SEARCH_SCHEMA: &str = "hyperconv.search/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of the canonical (key-sorted, compact) JSON of `config`.
pub fn config_hash(config: &serde_json::Value) -> String {
    let canonical = serde_json::to_string(config).expect("JSON values serialize");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    pub config: serde_json::Value,
    pub spec_hash: String,
    pub seed: u64,
    pub summary: Summary,
    pub checks: Vec<CheckReport>,
    pub status: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub instances: u64,
    pub hyper_exhaustive: u64,
    pub hyper_sampled: u64,
    pub checks: usize,
    pub pass: u64,
    pub fail: u64,
    pub unmet: u64,
    pub failed_checks: Vec<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub pass: u64,
    pub fail: u64,
    pub unmet: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filter: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    pub detail: String,
}

impl From<&Witness> for WitnessReport {
    fn from(w: &Witness) -> Self {
        WitnessReport {
            instance: w.instance.clone(),
            space: w.space.clone(),
            filter: w.filter.clone(),
            limit: w.limit.clone(),
            point: w.point.clone(),
            detail: w.detail.clone(),
        }
    }
}

impl Report {
    pub fn new(command: &str, config: serde_json::Value, seed: u64, run: &SuiteRun) -> Report {
        let checks: Vec<CheckReport> = run
            .checks
            .iter()
            .map(|(c, o)| CheckReport {
                id: c.id,
                statement: c.statement,
                pass: o.pass,
                fail: o.fail,
                unmet: o.unmet,
                witnesses: o.witnesses.iter().map(WitnessReport::from).collect(),
            })
            .collect();
        let failed_checks: Vec<&'static str> = checks.iter().filter(|c| c.fail > 0).map(|c| c.id).collect();
        let summary = Summary {
            instances: run.instances,
            hyper_exhaustive: run.hyper_exhaustive,
            hyper_sampled: run.hyper_sampled,
            checks: checks.len(),
            pass: checks.iter().map(|c| c.pass).sum(),
            fail: checks.iter().map(|c| c.fail).sum(),
            unmet: checks.iter().map(|c| c.unmet).sum(),
            failed_checks,
        };
        let status = if summary.fail == 0 { Status::Pass } else { Status::Fail };
        Report {
            schema: REPORT_SCHEMA,
            tool_version: TOOL_VERSION,
            command: command.to_owned(),
            spec_hash: config_hash(&config),
            config,
            seed,
            summary,
            checks,
            status,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let _ = writeln!(out, "{:width$}  {:>7}  {:>5}  {:>7}", "check", "pass", "fail", "unmet");
        for c in &self.checks {
            let _ = writeln!(out, "{:width$}  {:>7}  {:>5}  {:>7}", c.id, c.pass, c.fail, c.unmet);
            for w in &c.witnesses {
                let _ = writeln!(out, "    witness: {}", witness_line(w));
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "\n{} instances ({} hyperspaces exhaustive, {} sampled); {} pass, {} fail, {} unmet; seed {}; status {}",
            s.instances,
            s.hyper_exhaustive,
            s.hyper_sampled,
            s.pass,
            s.fail,
            s.unmet,
            self.seed,
            match self.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            }
        );
        out
    }
}

fn witness_line(w: &WitnessReport) -> String {
    let mut parts = Vec::new();
    if let Some(i) = &w.instance {
        parts.push(format!("instance {i}"));
    }
    if let Some(f) = &w.filter {
        parts.push(format!("filter {}", family_text(f)));
    }
    if let Some(l) = &w.limit {
        parts.push(format!("set {}", set_text(l)));
    }
    if let Some(p) = &w.point {
        parts.push(format!("point {p}"));
    }
    parts.push(w.detail.clone());
    parts.join("; ")
}

pub fn set_text(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(","))
}

pub fn family_text(family: &[Vec<String>]) -> String {
    format!("{{{}}}", family.iter().map(|s| set_text(s)).collect::<Vec<_>>().join(", "))
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    pub config: serde_json::Value,
    pub spec_hash: String,
    pub seed: u64,
    #[serde(flatten)]
    pub outcome: SearchOutcome,
}

impl SearchReport {
    pub fn new(command: &str, config: serde_json::Value, seed: u64, outcome: SearchOutcome) -> SearchReport {
        SearchReport {
            schema: SEARCH_SCHEMA,
            tool_version: TOOL_VERSION,
            command: command.to_owned(),
            spec_hash: config_hash(&config),
            config,
            seed,
            outcome,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let o = &self.outcome;
        let mut out = format!(
            "target {}: {}\nscope: {}\nexamined {} spaces, {} comparisons\n",
            o.target, o.result, o.scope, o.spaces, o.comparisons
        );
        if let Some(w) = &o.witness {
            let _ = writeln!(out, "witness {}: family {}; {}", w.instance, family_text(&w.filter), w.detail);
        }
        out
    }
}
