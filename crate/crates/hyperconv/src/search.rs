//! Seeded searches for finite witnesses of strict inequalities.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use hyperconv_core::cap::level_set;
use hyperconv_core::setcalc::{all_subsets, nonempty_subsets};
use hyperconv_core::{frames, CapSpace, CarrierMode, HyperFilter, HyperSpace, Kernel, SetFamily, Value};
use rand::Rng;
use serde::Serialize;

use crate::format::{labels, Space, SpaceDocument};
use crate::generate::{
    cap_exhaustive_instances, conv_exhaustive, default_grid, random_batch, random_conv, rng_for, Instance,
};
use crate::oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    /// `λ_lK > λ_lV` somewhere over a convergence, filters on all subsets.
    LkVsLv,
    /// `λ_uF > λ_LuF` somewhere.
    UfVsLuf,
    /// `{adh 𝓕 < ε}^(0) ⊊ {adh 𝓕 ≤ ε}` with `0 < ε < ∞` on a pre-approach space.
    StrictRemark,
}

impl SearchTarget {
    pub const ALL: [SearchTarget; 3] = [SearchTarget::LkVsLv, SearchTarget::UfVsLuf, SearchTarget::StrictRemark];

    pub fn name(self) -> &'static str {
        match self {
            SearchTarget::LkVsLv => "lK-vs-lV",
            SearchTarget::UfVsLuf => "uF-vs-LuF",
            SearchTarget::StrictRemark => "strict-remark-inclusion",
        }
    }
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SearchTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SearchTarget::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| format!("unknown search target {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchWitness {
    pub instance: String,
    pub space: SpaceDocument,
    /// Kernel family of the hyperspace filter, or the base family.
    pub filter: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    pub values: BTreeMap<String, String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub target: &'static str,
    /// `"witness"` or `"exhausted"`.
    pub result: &'static str,
    pub scope: String,
    pub spaces: u64,
    pub comparisons: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SearchWitness>,
}

/// Random convergences on four points tried by the lK-vs-lV search.
pub const CONV_RANDOM_FOUR: u64 = 100;
/// Hyperspace filters sampled per space on large hyperspace carriers.
pub const SAMPLED_FILTERS: usize = 64;
/// Random approach tables tried per carrier size above the exhaustive range.
pub const CAP_RANDOM: u64 = 300;

pub fn search(target: SearchTarget, max_n: usize, seed: u64) -> SearchOutcome {
    match target {
        SearchTarget::LkVsLv => lk_vs_lv(max_n, seed),
        SearchTarget::UfVsLuf => uf_vs_luf(max_n, seed),
        SearchTarget::StrictRemark => strict_remark(max_n, seed),
    }
}

struct Tally {
    spaces: u64,
    comparisons: u64,
}

fn finish(target: SearchTarget, scope: String, t: Tally, witness: Option<SearchWitness>) -> SearchOutcome {
    SearchOutcome {
        target: target.name(),
        result: if witness.is_some() { "witness" } else { "exhausted" },
        scope,
        spaces: t.spaces,
        comparisons: t.comparisons,
        witness,
    }
}

/// Hyperspace filter kernels: every one on small carriers, a seeded sample otherwise.
fn filter_kernels(m: usize, seed: u64, stream: u64) -> Vec<Kernel> {
    if m <= 8 {
        let mut all: Vec<Kernel> = nonempty_subsets(m).collect();
        all.sort_by_key(|k| (k.len(), k.bits()));
        return all;
    }
    let mut rng = rng_for(seed, stream);
    let full = Kernel::full(m).bits();
    let mut out: Vec<Kernel> = (0..m).map(Kernel::singleton).collect();
    while out.len() < m + SAMPLED_FILTERS {
        let k = Kernel::from_bits(rng.random::<u32>() & full);
        if !k.is_empty() {
            out.push(k);
        }
    }
    out.sort_by_key(|k| (k.len(), k.bits()));
    out.dedup();
    out
}

fn hyper_witness(
    inst: &Instance,
    h: &HyperSpace,
    f: &HyperFilter,
    a: Kernel,
    values: [(&str, Value); 2],
) -> SearchWitness {
    let c = inst.space.carrier();
    SearchWitness {
        instance: inst.id.clone(),
        space: SpaceDocument::from_space(&inst.space, Some(&inst.id)),
        filter: f.family().iter().map(|k| labels(c, k)).collect(),
        limit: Some(labels(c, a)),
        point: None,
        eps: None,
        values: values.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        detail: format!(
            "{} = {} and {} = {} at {} (hyperspace of {} points)",
            values[0].0,
            values[0].1,
            values[1].0,
            values[1].1,
            c.format_set(a),
            h.points().len()
        ),
    }
}

fn lk_vs_lv(max_n: usize, seed: u64) -> SearchOutcome {
    let target = SearchTarget::LkVsLv;
    let mut t = Tally { spaces: 0, comparisons: 0 };
    let mut bases: Vec<Instance> = Vec::new();
    for n in 1..=max_n.min(3) {
        bases.extend(conv_exhaustive(n).into_iter().enumerate().map(|(i, c)| Instance {
            id: format!("conv/n{n}/{i}"),
            space: Space::Conv(c),
            seed,
        }));
    }
    for n in 4..=max_n {
        let mut rng = rng_for(seed, 0x5ea0 + n as u64);
        bases.extend((0..CONV_RANDOM_FOUR).map(|i| Instance {
            id: format!("conv-random/n{n}/{i}"),
            space: Space::Conv(random_conv(&mut rng, n)),
            seed: seed ^ i,
        }));
    }
    // Pretopologies first: on them lK stays pretopological, so a witness there
    // separates the two structures without any help from a non-pretopological base.
    bases.sort_by_key(|inst| match &inst.space {
        Space::Conv(c) => !c.is_pretopological(),
        Space::Cap(_) => true,
    });
    let scope = format!(
        "every centered convergence on 1..={} points{}, filters on all subsets (every filter up to 3 points, {} sampled above), limits the closed sets, pretopologies first and smaller filter bases first",
        max_n.min(3),
        if max_n >= 4 { format!(" and {CONV_RANDOM_FOUR} random ones per size up to {max_n}") } else { String::new() },
        SAMPLED_FILTERS
    );
    for inst in &bases {
        let h = HyperSpace::new(inst.space.as_cap(), CarrierMode::All).expect("centered convergence");
        t.spaces += 1;
        for hk in filter_kernels(h.points().len(), inst.seed, 1) {
            let f = HyperFilter::new(h.family_of(hk)).expect("nonempty");
            for a in h.limits().iter() {
                t.comparisons += 1;
                let lk = h.lambda_lk(&f, a).expect("limit");
                let lv = frames::lambda_lv(&h, &f, a).expect("limit");
                if lk > lv {
                    let w = hyper_witness(inst, &h, &f, a, [("lK", lk), ("lV", lv)]);
                    return finish(target, scope, t, Some(w));
                }
            }
        }
    }
    finish(target, scope, t, None)
}

/// Tables on at most two points over `{0, 1, ∞}`, then seeded random ones.
fn cap_bases(max_n: usize, seed: u64, batch: u32) -> Vec<Instance> {
    let mut out = cap_exhaustive_instances(max_n, seed);
    for n in 3..=max_n {
        let count = if n == 3 { CAP_RANDOM } else { CAP_RANDOM / 3 };
        out.extend(random_batch(seed, batch + n as u32, 0, count, &[n], &default_grid()));
    }
    out
}

fn cap_scope(max_n: usize) -> String {
    format!(
        "every table on 1..={} points over {{0,1,∞}}, then {CAP_RANDOM} random instances on 3 points and {} per larger size up to {max_n}",
        max_n.min(2),
        CAP_RANDOM / 3
    )
}

fn uf_vs_luf(max_n: usize, seed: u64) -> SearchOutcome {
    let target = SearchTarget::UfVsLuf;
    let mut t = Tally { spaces: 0, comparisons: 0 };
    let scope = format!("{}; centered bases only, filters on the c(λ)-closed sets", cap_scope(max_n));
    for inst in cap_bases(max_n, seed, 30) {
        let Ok(h) = HyperSpace::new(inst.space.as_cap(), CarrierMode::Closed) else { continue };
        t.spaces += 1;
        for hk in filter_kernels(h.points().len(), inst.seed, 1) {
            let f = HyperFilter::new(h.family_of(hk)).expect("nonempty");
            for a in h.limits().iter() {
                t.comparisons += 1;
                let uf = h.lambda_uf(&f, a).expect("limit");
                let luf = frames::lambda_luf(&h, &f, a).expect("limit");
                if uf > luf {
                    let w = hyper_witness(&inst, &h, &f, a, [("uF", uf), ("LuF", luf)]);
                    return finish(target, scope, t, Some(w));
                }
            }
        }
    }
    finish(target, scope, t, None)
}

fn families(cap: &CapSpace, seed: u64) -> Vec<SetFamily> {
    let n = cap.len();
    let subsets: Vec<Kernel> = all_subsets(n).collect();
    if n <= 3 {
        return (1u32..1 << subsets.len())
            .map(|mask| (0..subsets.len()).filter(|i| mask & (1 << i) != 0).map(|i| subsets[i]).collect())
            .collect();
    }
    let mut rng = rng_for(seed, 2);
    (0..64)
        .map(|_| (0..rng.random_range(1..=3)).map(|_| subsets[rng.random_range(0..subsets.len())]).collect())
        .collect()
}

fn strict_remark(max_n: usize, seed: u64) -> SearchOutcome {
    let target = SearchTarget::StrictRemark;
    let mut t = Tally { spaces: 0, comparisons: 0 };
    let scope = format!("{}; pre-approach bases only, 0 < ε < ∞ on a dense grid", cap_scope(max_n));
    for inst in cap_bases(max_n, seed, 40) {
        let cap = inst.space.as_cap();
        if !cap.is_prap() {
            continue;
        }
        t.spaces += 1;
        let eps: Vec<Value> = oracle::dense_grid(&cap).into_iter().filter(|e| e.is_finite() && !e.is_zero()).collect();
        for fam in families(&cap, inst.seed) {
            let adh = cap.adh(&fam);
            for &e in &eps {
                t.comparisons += 1;
                let inner = cap.enlarge(level_set(&adh, |v| v < e), Value::ZERO);
                let outer = level_set(&adh, |v| v <= e);
                if inner.is_subset(outer) && inner != outer {
                    let c = cap.carrier();
                    let x = outer.minus(inner).points().next().expect("nonempty difference");
                    let w = SearchWitness {
                        instance: inst.id.clone(),
                        space: SpaceDocument::from_space(&inst.space, Some(&inst.id)),
                        filter: fam.iter().map(|k| labels(c, k)).collect(),
                        limit: None,
                        point: Some(c.label(x).to_owned()),
                        eps: Some(e.to_string()),
                        values: [
                            ("adh<eps closure".to_owned(), c.format_set(inner)),
                            ("adh<=eps".to_owned(), c.format_set(outer)),
                        ]
                        .into_iter()
                        .collect(),
                        detail: format!(
                            "at ε = {e}: {{adh < ε}}^(0) = {} but {{adh ≤ ε}} = {}",
                            c.format_set(inner),
                            c.format_set(outer)
                        ),
                    };
                    return finish(target, scope, t, Some(w));
                }
            }
        }
    }
    finish(target, scope, t, None)
}
