//! The check registry and the suite runner.
//!
//! A check is either global (run once per suite) or runs on every instance.
//! Per-instance checks share a [`Ctx`] that computes the expensive data
//! (classification, hyperspace tables) at most once per instance.

mod global;
mod hyperspace;
mod space;

use std::cell::OnceCell;
use std::panic::{catch_unwind, AssertUnwindSafe};

use hyperconv_core::conv::hyper::ConvHyperspace;
use hyperconv_core::hyper::MAX_STRUCTURE_POINTS;
use hyperconv_core::setcalc::all_subsets;
use hyperconv_core::{
    CapSpace, CarrierMode, ClassReport, ConvSpace, HyperFilter, HyperSpace, Kernel, SetFamily, Structure, Value,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::format::{labels, Space, SpaceDocument};
use crate::generate::{rng_for, Instance};

/// Hyperspace carriers up to this size get every filter; larger ones a sample.
pub const EXHAUSTIVE_HYPER_POINTS: usize = 8;
/// Random filters drawn on larger hyperspace carriers, besides the principal ones.
pub const SAMPLED_FILTERS: usize = 48;
/// Failures kept per check.
pub const MAX_WITNESSES: usize = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Failure {
    pub detail: String,
    /// Kernel family of the offending hyperspace filter, or a family of base subsets.
    pub filter: Option<Vec<Kernel>>,
    pub limit: Option<Kernel>,
    pub point: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// The hypothesis of a conditional statement does not hold on the instance.
    Unmet,
    Fail(Box<Failure>),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

pub(crate) fn fail(detail: impl Into<String>) -> Verdict {
    Verdict::Fail(Box::new(Failure { detail: detail.into(), ..Failure::default() }))
}

pub(crate) fn fail_at(detail: impl Into<String>, filter: &SetFamily, limit: Kernel) -> Verdict {
    Verdict::Fail(Box::new(Failure {
        detail: detail.into(),
        filter: Some(filter.members().to_vec()),
        limit: Some(limit),
        point: None,
    }))
}

pub(crate) fn fail_family(detail: impl Into<String>, family: &SetFamily) -> Verdict {
    Verdict::Fail(Box::new(Failure {
        detail: detail.into(),
        filter: Some(family.members().to_vec()),
        ..Failure::default()
    }))
}

pub(crate) fn fail_set(detail: impl Into<String>, set: Kernel) -> Verdict {
    Verdict::Fail(Box::new(Failure { detail: detail.into(), limit: Some(set), ..Failure::default() }))
}

pub(crate) fn fail_point(detail: impl Into<String>, x: usize) -> Verdict {
    Verdict::Fail(Box::new(Failure { detail: detail.into(), point: Some(x), ..Failure::default() }))
}

#[derive(Clone, Copy)]
pub enum Runner {
    /// Runs once with the suite seed.
    Global(fn(u64) -> Verdict),
    /// Runs on convergence instances only.
    Conv(fn(&Ctx, &ConvSpace) -> Verdict),
    /// Runs on every instance, convergences through their 0/∞ embedding.
    Any(fn(&Ctx) -> Verdict),
}

pub struct Check {
    pub id: &'static str,
    pub statement: &'static str,
    pub runner: Runner,
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id)
    }
}

pub fn registry() -> Vec<&'static Check> {
    global::CHECKS.iter().chain(space::CHECKS).chain(hyperspace::CHECKS).collect()
}

/// Checks whose id equals one of `selectors` or starts with `selector.`.
pub fn select(selectors: &[String]) -> Vec<&'static Check> {
    registry()
        .into_iter()
        .filter(|c| {
            selectors.is_empty()
                || selectors
                    .iter()
                    .any(|s| c.id == s || c.id.strip_prefix(s.as_str()).is_some_and(|r| r.starts_with('.')))
        })
        .collect()
}

/// Every table of one hyperspace structure, filter by filter.
pub struct HyperData {
    pub h: HyperSpace,
    pub filters: Vec<HyperFilter>,
    /// Carrier-index kernel of each filter, ascending.
    pub kernels: Vec<Kernel>,
    pub exhaustive: bool,
    tables: Vec<Vec<Value>>,
}

impl HyperData {
    fn build(cap: &CapSpace, seed: u64) -> Option<HyperData> {
        let h = HyperSpace::new(cap.clone(), CarrierMode::Closed).ok()?;
        let m = h.points().len();
        let exhaustive = m <= EXHAUSTIVE_HYPER_POINTS;
        let kernels: Vec<Kernel> = if exhaustive {
            all_subsets(m).skip(1).collect()
        } else {
            let mut rng = rng_for(seed, STREAM_FILTERS);
            let mut ks: Vec<Kernel> = (0..m).map(Kernel::singleton).collect();
            ks.push(Kernel::full(m));
            ks.extend((0..SAMPLED_FILTERS).map(|_| random_nonempty(&mut rng, m)));
            ks.sort_unstable();
            ks.dedup();
            ks
        };
        let filters: Vec<HyperFilter> =
            kernels.iter().map(|&hk| HyperFilter::new(h.family_of(hk)).expect("nonempty kernel")).collect();
        let mut tables = Vec::with_capacity(Structure::ALL.len() * filters.len());
        for s in Structure::ALL {
            tables.extend(filters.iter().map(|f| h.lambda_row(s, f)));
        }
        Some(HyperData { h, filters, kernels, exhaustive, tables })
    }

    pub fn limits(&self) -> &[Kernel] {
        self.h.limits().members()
    }

    pub fn row(&self, s: Structure, fi: usize) -> &[Value] {
        let si = Structure::ALL.iter().position(|&t| t == s).expect("listed structure");
        &self.tables[si * self.filters.len() + fi]
    }

    pub fn filter_index(&self, hk: Kernel) -> Option<usize> {
        self.kernels.binary_search(&hk).ok()
    }

    /// The structure as a space on the carrier, from the stored tables.
    pub fn structure_space(&self, s: Structure) -> Option<CapSpace> {
        if !self.exhaustive || self.h.points().len() > MAX_STRUCTURE_POINTS {
            return None;
        }
        let base = self.h.base().carrier();
        let carrier = hyperconv_core::Carrier::new(self.h.points().iter().map(|&p| base.format_set(p))).ok()?;
        CapSpace::from_fn(carrier, |hk, i| self.row(s, hk.index() - 1)[i]).ok()
    }
}

const STREAM_FILTERS: u64 = 1;
const STREAM_FAMILIES: u64 = 2;

pub(crate) fn random_nonempty(rng: &mut ChaCha8Rng, m: usize) -> Kernel {
    loop {
        let k = Kernel::from_bits(rng.random::<u32>() & Kernel::full(m).bits());
        if !k.is_empty() {
            return k;
        }
    }
}

/// Per-instance context with lazily computed shared data.
pub struct Ctx<'a> {
    pub instance: &'a Instance,
    pub cap: CapSpace,
    class: OnceCell<ClassReport>,
    families: OnceCell<Vec<SetFamily>>,
    hyper: OnceCell<Option<HyperData>>,
    conv_hyper: OnceCell<Option<ConvHyperspace>>,
}

impl<'a> Ctx<'a> {
    pub fn new(instance: &'a Instance) -> Ctx<'a> {
        Ctx {
            instance,
            cap: instance.space.as_cap(),
            class: OnceCell::new(),
            families: OnceCell::new(),
            hyper: OnceCell::new(),
            conv_hyper: OnceCell::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.cap.len()
    }

    pub fn class(&self) -> &ClassReport {
        self.class.get_or_init(|| self.cap.classify())
    }

    /// Families of base subsets: all of them up to three points, a seeded
    /// sample (plus the degenerate ones) above.
    pub fn families(&self) -> &[SetFamily] {
        self.families.get_or_init(|| {
            let n = self.n();
            let subsets: Vec<Kernel> = all_subsets(n).collect();
            if n <= 3 {
                return (0u32..1 << subsets.len())
                    .map(|mask| (0..subsets.len()).filter(|i| mask & (1 << i) != 0).map(|i| subsets[i]).collect())
                    .collect();
            }
            let mut rng = self.rng(STREAM_FAMILIES);
            let mut out =
                vec![SetFamily::empty(), SetFamily::single(Kernel::EMPTY), SetFamily::single(self.cap.full())];
            for _ in 0..64 {
                let size = rng.random_range(1..=4);
                out.push((0..size).map(|_| subsets[rng.random_range(0..subsets.len())]).collect());
            }
            out
        })
    }

    /// Hyperspace tables on the `c(λ)`-closed sets; `None` for uncentered bases.
    pub fn hyper(&self) -> Option<&HyperData> {
        self.hyper.get_or_init(|| HyperData::build(&self.cap, self.instance.seed)).as_ref()
    }

    pub fn conv_hyper(&self) -> Option<&ConvHyperspace> {
        self.conv_hyper
            .get_or_init(|| match &self.instance.space {
                Space::Conv(c) => Some(ConvHyperspace::new(c.clone(), CarrierMode::Closed)),
                Space::Cap(_) => None,
            })
            .as_ref()
    }

    /// A random stream private to this instance and `stream`.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        rng_for(self.instance.seed, stream)
    }
}

/// A failure as reported: everything needed to replay it.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub instance: Option<String>,
    pub space: Option<SpaceDocument>,
    pub filter: Option<Vec<Vec<String>>>,
    pub limit: Option<Vec<String>>,
    pub point: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub pass: u64,
    pub fail: u64,
    pub unmet: u64,
    pub witnesses: Vec<Witness>,
}

impl Outcome {
    fn record(&mut self, verdict: Verdict, instance: Option<&Instance>) {
        match verdict {
            Verdict::Pass => self.pass += 1,
            Verdict::Unmet => self.unmet += 1,
            Verdict::Fail(f) => {
                self.fail += 1;
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push(witness(&f, instance));
                }
            }
        }
    }
}

fn witness(f: &Failure, instance: Option<&Instance>) -> Witness {
    let carrier = instance.map(|i| i.space.carrier());
    Witness {
        instance: instance.map(|i| i.id.clone()),
        space: instance.map(|i| SpaceDocument::from_space(&i.space, Some(&i.id))),
        filter: f.filter.as_ref().and_then(|fam| carrier.map(|c| fam.iter().map(|&k| labels(c, k)).collect())),
        limit: f.limit.and_then(|k| carrier.map(|c| labels(c, k))),
        point: f.point.and_then(|x| carrier.map(|c| c.label(x).to_string())),
        detail: f.detail.clone(),
    }
}

#[derive(Debug)]
pub struct SuiteRun {
    pub checks: Vec<(&'static Check, Outcome)>,
    pub instances: u64,
    pub hyper_exhaustive: u64,
    pub hyper_sampled: u64,
}

impl SuiteRun {
    pub fn failures(&self) -> u64 {
        self.checks.iter().map(|(_, o)| o.fail).sum()
    }
}

fn guarded(f: impl FnOnce() -> Verdict) -> Verdict {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(v) => v,
        Err(e) => {
            let msg = e
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| e.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(format!("panicked: {msg}"))
        }
    }
}

/// Runs `checks` on every instance. Instances are processed in parallel and
/// merged in input order, so the result does not depend on scheduling.
pub fn run(instances: &[Instance], checks: &[&'static Check], seed: u64) -> SuiteRun {
    let mut outcomes: Vec<Outcome> = vec![Outcome::default(); checks.len()];
    for (i, c) in checks.iter().enumerate() {
        if let Runner::Global(f) = c.runner {
            outcomes[i].record(guarded(|| f(seed)), None);
        }
    }
    let per_instance: Vec<(Vec<Option<Verdict>>, Option<bool>)> = instances
        .par_iter()
        .map(|inst| {
            let ctx = Ctx::new(inst);
            let verdicts = checks
                .iter()
                .map(|c| match (c.runner, &inst.space) {
                    (Runner::Global(_), _) | (Runner::Conv(_), Space::Cap(_)) => None,
                    (Runner::Conv(f), Space::Conv(xi)) => Some(guarded(|| f(&ctx, xi))),
                    (Runner::Any(f), _) => Some(guarded(|| f(&ctx))),
                })
                .collect();
            let mode = ctx.hyper.get().and_then(|h| h.as_ref().map(|h| h.exhaustive));
            (verdicts, mode)
        })
        .collect();
    let (mut hyper_exhaustive, mut hyper_sampled) = (0, 0);
    for (inst, (verdicts, mode)) in instances.iter().zip(per_instance) {
        match mode {
            Some(true) => hyper_exhaustive += 1,
            Some(false) => hyper_sampled += 1,
            None => {}
        }
        for (i, v) in verdicts.into_iter().enumerate() {
            if let Some(v) = v {
                outcomes[i].record(v, Some(inst));
            }
        }
    }
    SuiteRun {
        checks: checks.iter().copied().zip(outcomes).collect(),
        instances: instances.len() as u64,
        hyper_exhaustive,
        hyper_sampled,
    }
}

/// Runs one check on one instance, for replaying a witness.
pub fn run_one(check: &Check, instance: &Instance, seed: u64) -> Option<Verdict> {
    let ctx = Ctx::new(instance);
    match (check.runner, &instance.space) {
        (Runner::Global(f), _) => Some(guarded(|| f(seed))),
        (Runner::Conv(_), Space::Cap(_)) => None,
        (Runner::Conv(f), Space::Conv(xi)) => Some(guarded(|| f(&ctx, xi))),
        (Runner::Any(f), _) => Some(guarded(|| f(&ctx))),
    }
}
