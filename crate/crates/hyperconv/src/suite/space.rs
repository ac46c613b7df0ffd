//! Checks on a single base space: convergence theory, the approach layer,
//! reflectors, towers and the frame criterion.

use hyperconv_core::cap::{level_set, Combine};
use hyperconv_core::conv::hyper::ConvStructure;
use hyperconv_core::setcalc::{all_subsets, erect, is_saturated, nonempty_subsets, rdc};
use hyperconv_core::values::sup;
use hyperconv_core::{
    frames, CapSpace, ConvSpace, DClosure, Error, FrameFn, HyperFilter, Kernel, SetFamily, Tower, Value,
};
use rand::Rng;

use super::{fail, fail_at, fail_family, fail_point, fail_set, random_nonempty, Check, Ctx, Runner, Verdict};
use crate::format::{CompletionRule, SpaceDocument, ValueLiteral};
use crate::generate::triangle_closure;
use crate::oracle;

pub(super) static CHECKS: &[Check] = &[
    Check {
        id: "oracle.conv_adherence",
        statement: "convergence adherence of a family via minimal transversals equals the union over all meshing kernels",
        runner: Runner::Conv(conv_adherence),
    },
    Check {
        id: "conv.closed_open_duality",
        statement: "closed sets are closed for limits, opens are their complements, closure is the least closed superset",
        runner: Runner::Conv(closed_open_duality),
    },
    Check {
        id: "conv.reflectors",
        statement: "T and S₀ match their adherence/closure formulas, are idempotent and ordered ξ ≥ S₀ξ ≥ Tξ; S = S₀",
        runner: Runner::Conv(reflectors),
    },
    Check {
        id: "cap.embedding",
        statement: "c(iξ) = r(iξ) = ξ, closed sets are preserved, the tower of iξ is ξ below ∞",
        runner: Runner::Conv(embedding),
    },
    Check {
        id: "conv.uk_pseudotopological",
        statement: "upper-Kuratowski limits of a filter are the common limits of its ultrafilters",
        runner: Runner::Conv(uk_pseudotopological),
    },
    Check {
        id: "conv.uk_corollary",
        statement: "if the upper-Kuratowski convergence is pretopological then it is topological",
        runner: Runner::Conv(uk_corollary),
    },
    Check {
        id: "conv.grill_rdc_lemma",
        statement: "B ∈ (rdc𝔉)^# ⟺ B⁻ ∈ 𝔉^#; B ∈ (rdc𝔉^#)^# ⟺ B⁻ ∈ 𝔉; for saturated 𝔉, 𝓗: 𝓗 ∈ 𝔉^# ⟺ rdc𝓗 ∈ (rdc𝔉)^# (saturation over nonempty closed sets)",
        runner: Runner::Conv(grill_rdc_lemma),
    },
    Check {
        id: "conv.lk_pretopological",
        statement: "over a pretopology, lower-Kuratowski is pretopological with vicinity ⋁_{x∈A} {V⁻ : V ∈ 𝒱(x)}",
        runner: Runner::Conv(lk_pretopological),
    },
    Check {
        id: "conv.lv_eq_lk_topological",
        statement: "over a topology, lower Vietoris and lower Kuratowski agree on saturated filters; lower Kuratowski is topological",
        runner: Runner::Conv(lv_eq_lk),
    },
    Check {
        id: "conv.fell_sup",
        statement: "Fell convergence is upper-Fell and lower-Vietoris convergence; all three are topologies",
        runner: Runner::Conv(fell_sup),
    },
    Check {
        id: "setcalc.erect_saturated",
        statement: "erected sets are saturated and rdc(e(rdc 𝒜)) = rdc 𝒜 for saturated 𝒜",
        runner: Runner::Any(erect_saturated),
    },
    Check {
        id: "cap.validator_rejects_non_monotone",
        statement: "tables violating the monotone axiom are rejected, naming the axiom",
        runner: Runner::Any(validator),
    },
    Check {
        id: "cap.centered_lemma",
        statement: "centered ⟺ adh A ≤ θ_A ⟺ A ⊆ A^(ε) for finite ε ⟺ A ⊆ A^(0)",
        runner: Runner::Any(centered_lemma),
    },
    Check {
        id: "cap.precentered_lemma",
        statement: "precentered ⟺ A ⊆ ⋃_{ε<∞} A^(ε) for every A ⟺ r(λ) is centered",
        runner: Runner::Any(precentered_lemma),
    },
    Check {
        id: "cap.class_collapse",
        statement: "pseudo-approach = pre-approach = centered finite depth; approach ⟹ pre-approach; non-Archimedean ⟹ approach",
        runner: Runner::Any(class_collapse),
    },
    Check {
        id: "oracle.cap_adherence",
        statement: "adherence functions via minimal transversals equal the infimum over all meshing kernels",
        runner: Runner::Any(cap_adherence),
    },
    Check {
        id: "cap.adh_attainment",
        statement: "on pre-approach spaces adh A(x) is attained by some λ({t})(x), t ∈ A",
        runner: Runner::Any(adh_attainment),
    },
    Check {
        id: "cap.tower_adherence",
        statement: "{adh_λ 𝓕 ≤ ε} is the adherence of 𝓕 in the ε-layer",
        runner: Runner::Any(tower_adherence),
    },
    Check {
        id: "cap.reflector_adherence",
        statement: "adh_{r(λ)} 𝓕 = {adh_λ 𝓕 < ∞}; adh_{c(λ)} 𝓕 ⊆ {adh_λ 𝓕 = 0}, with equality on pre-approach spaces",
        runner: Runner::Any(reflector_adherence),
    },
    Check {
        id: "cap.closed_corollary",
        statement: "A is r(λ)-closed ⟺ A^(ε) = A for every finite ε; on pre-approach spaces A is c(λ)-closed ⟺ A^(0) = A",
        runner: Runner::Any(closed_corollary),
    },
    Check {
        id: "cap.eps_lemma",
        statement: "on approach spaces {adh 𝓕 ≤ ε}^(α) ⊆ {adh 𝓕 ≤ ε + α}",
        runner: Runner::Any(eps_lemma),
    },
    Check {
        id: "cap.remark_inclusion",
        statement: "on approach spaces {adh 𝓕 < ε}^(0) ⊆ {adh 𝓕 ≤ ε}",
        runner: Runner::Any(remark_inclusion),
    },
    Check {
        id: "cap.indicator_contraction",
        statement: "θ_A is a contraction into λ_V ⟺ A is r(λ)-closed, and then adh A = θ_A",
        runner: Runner::Any(indicator_contraction),
    },
    Check {
        id: "cap.tower_roundtrip",
        statement: "assembling the extracted tower gives back λ exactly; layers are constant between thresholds",
        runner: Runner::Any(tower_roundtrip),
    },
    Check {
        id: "cap.tower_equivalence",
        statement: "towers of pretopologies ⟺ pre-approach; plus the diagonal tower law ⟺ approach",
        runner: Runner::Any(tower_equivalence),
    },
    Check {
        id: "cap.two_diagonal_axioms",
        statement: "on convergence approach spaces the filter diagonal law implies the adherence law; on pre-approach spaces the converse holds",
        runner: Runner::Any(two_diagonal_axioms),
    },
    Check {
        id: "oracle.diagonality",
        statement: "points of 𝓕-diagonality (sum and join forms) agree with enumeration of every selector map",
        runner: Runner::Any(diagonality_oracle),
    },
    Check {
        id: "cap.breakpoint_oracle",
        statement: "the adherence law checked at breakpoints agrees with a dense ε grid",
        runner: Runner::Any(breakpoint_oracle),
    },
    Check {
        id: "cap.cri_adjunction",
        statement: "c(λ) ≥ r(λ), c(λ) is the 0-layer, every r(λ)-closed set is c(λ)-closed",
        runner: Runner::Any(cri_adjunction),
    },
    Check {
        id: "frames.d_closure",
        statement: "D is the min-plus closure of d: D ≤ d, zero diagonal, triangle law; D = d on approach spaces",
        runner: Runner::Any(d_closure),
    },
    Check {
        id: "oracle.contraction",
        statement: "the singleton contraction criterion agrees with quantifying over every kernel",
        runner: Runner::Any(contraction_oracle),
    },
];

fn all_sets(n: usize) -> impl Iterator<Item = Kernel> {
    all_subsets(n)
}

fn conv_adherence(ctx: &Ctx, xi: &ConvSpace) -> Verdict {
    for fam in ctx.families() {
        let fast = xi.adh(fam);
        let slow = oracle::adh_conv(xi, fam.members());
        if fast != slow {
            return fail_family(format!("adherence {fast:?}, brute force {slow:?}"), fam);
        }
    }
    Verdict::Pass
}

fn closed_open_duality(_: &Ctx, xi: &ConvSpace) -> Verdict {
    let n = xi.len();
    let closed = xi.closed_sets();
    let open = xi.open_sets();
    if !closed.contains(Kernel::EMPTY) || !closed.contains(xi.full()) {
        return fail("∅ or X is not closed");
    }
    for a in all_sets(n) {
        let below = nonempty_subsets(n).filter(|b| b.is_subset(a)).all(|b| xi.lim(b).is_subset(a));
        let meeting = nonempty_subsets(n).filter(|b| b.meets(a)).all(|b| xi.lim(b).is_subset(a));
        if below != closed.contains(a) || meeting != closed.contains(a) {
            return fail_set("closed-set test disagrees with the limit table", a);
        }
        if open.contains(a) != closed.contains(a.complement(n)) {
            return fail_set("open set is not a complement of a closed set", a);
        }
        let cl = xi.closure(a);
        let least = closed.iter().filter(|c| a.is_subset(*c)).fold(xi.full(), Kernel::intersection);
        if !a.is_subset(cl) || !closed.contains(cl) || xi.closure(cl) != cl || cl != least {
            return fail_set(format!("closure {cl:?} is not the least closed superset"), a);
        }
    }
    Verdict::Pass
}

fn reflectors(_: &Ctx, xi: &ConvSpace) -> Verdict {
    let n = xi.len();
    let t = xi.reflect_t();
    let s0 = xi.reflect_s0();
    if xi.reflect_s() != s0 {
        return fail("S differs from S₀");
    }
    for k in nonempty_subsets(n) {
        let meshing: Vec<Kernel> = all_sets(n).filter(|a| a.meets(k)).collect();
        let lit_s0 = meshing.iter().fold(xi.full(), |acc, &a| acc.intersection(xi.adh_set(a)));
        let lit_t = meshing.iter().fold(xi.full(), |acc, &a| acc.intersection(xi.closure(a)));
        if s0.lim(k) != lit_s0 {
            return fail_set(format!("S₀ limit {:?}, formula {lit_s0:?}", s0.lim(k)), k);
        }
        if t.lim(k) != lit_t {
            return fail_set(format!("T limit {:?}, formula {lit_t:?}", t.lim(k)), k);
        }
    }
    if t.reflect_t() != t || !t.is_topological() {
        return fail("T is not idempotent");
    }
    if s0.reflect_s0() != s0 || !s0.is_pretopological() {
        return fail("S₀ is not idempotent");
    }
    if !xi.is_finer_than(&s0) || !s0.is_finer_than(&t) {
        return fail("ξ ≥ S₀ξ ≥ Tξ fails");
    }
    if t.open_sets() != xi.open_sets() {
        return fail("T changes the open sets");
    }
    if xi.is_topological() != (t == *xi) || xi.is_pretopological() != (s0 == *xi) {
        return fail("fixed points of the reflectors disagree with the predicates");
    }
    Verdict::Pass
}

fn embedding(ctx: &Ctx, xi: &ConvSpace) -> Verdict {
    let cap = &ctx.cap;
    if cap.coreflect_c() != *xi || cap.reflect_r() != *xi {
        return fail("c(iξ) or r(iξ) differs from ξ");
    }
    if cap.coreflect_c().closed_sets() != xi.closed_sets() {
        return fail("closed sets not preserved");
    }
    let tower = cap.tower();
    if tower.thresholds().any(|e| !e.is_zero() && e.is_finite()) {
        return fail("tower of an embedding has a finite nonzero threshold");
    }
    if cap.layer(Value::ZERO) != *xi || cap.layer(Value::ONE) != *xi {
        return fail("finite layers differ from ξ");
    }
    Verdict::Pass
}

/// Filter kernels over an `m`-point hyperspace carrier: all of them, or a
/// seeded sample on large carriers.
fn hyper_kernels(ctx: &Ctx, m: usize, stream: u64) -> Vec<Kernel> {
    if m <= super::EXHAUSTIVE_HYPER_POINTS {
        return nonempty_subsets(m).collect();
    }
    let mut rng = ctx.rng(stream);
    let mut ks: Vec<Kernel> = (0..m).map(Kernel::singleton).collect();
    ks.extend((0..64).map(|_| random_nonempty(&mut rng, m)));
    ks.sort_unstable();
    ks.dedup();
    ks
}

fn uk_pseudotopological(ctx: &Ctx, _: &ConvSpace) -> Verdict {
    let ch = ctx.conv_hyper().expect("convergence instance");
    let points = ch.points();
    let single: Vec<SetFamily> =
        points.iter().map(|&c| ch.limits(ConvStructure::UpperKuratowski, &HyperFilter::principal(c))).collect();
    for hk in hyper_kernels(ctx, points.len(), 10) {
        let f = HyperFilter::new(ch.family_of(hk)).expect("nonempty");
        let lim = ch.limits(ConvStructure::UpperKuratowski, &f);
        let common: SetFamily = ch.closed().iter().filter(|a| hk.points().all(|i| single[i].contains(*a))).collect();
        if lim != common {
            return fail_family(format!("limits {lim:?}, ultrafilter limits {common:?}"), f.family());
        }
    }
    Verdict::Pass
}

const MAX_HYPER_SPACE: usize = hyperconv_core::hyper::MAX_STRUCTURE_POINTS;

fn uk_corollary(ctx: &Ctx, _: &ConvSpace) -> Verdict {
    let ch = ctx.conv_hyper().expect("convergence instance");
    if ch.points().len() > MAX_HYPER_SPACE {
        return Verdict::Unmet;
    }
    let uk = ch.as_conv_space(ConvStructure::UpperKuratowski).expect("closed carrier");
    if !uk.is_pretopological() {
        return Verdict::Unmet;
    }
    if uk.is_topological() {
        Verdict::Pass
    } else {
        fail("upper Kuratowski is pretopological but not topological")
    }
}

/// Masks `m ⊇ k` within `m` bits.
fn supersets(k: u32, m: usize) -> impl Iterator<Item = u32> {
    let free = ((1u32 << m) - 1) & !k;
    let mut sub = free;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = k | sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & free;
        }
        Some(out)
    })
}

fn grill_rdc_lemma(ctx: &Ctx, xi: &ConvSpace) -> Verdict {
    let ch = ctx.conv_hyper().expect("convergence instance");
    let p = ch.points();
    let m = p.len();
    if m > MAX_HYPER_SPACE {
        return Verdict::Unmet;
    }
    let n = xi.len();
    let full = (1u32 << m) - 1;
    let union: Vec<Kernel> = (0..=full).map(|mask| Kernel::from_points(0..0).union(fold_union(p, mask))).collect();
    let family = |mask: u32| -> SetFamily { (0..m).filter(|i| mask & (1 << i) != 0).map(|i| p[i]).collect() };
    for k in 1..=full {
        for b in all_sets(n) {
            let bm = (0..m).filter(|&i| p[i].meets(b)).fold(0u32, |acc, i| acc | 1 << i);
            let lhs = supersets(k, m).all(|mm| union[mm as usize].meets(b));
            let rhs = supersets(k, m).all(|mm| bm & mm != 0);
            if lhs != rhs {
                return fail_at("B ∈ (rdc𝔉)^# disagrees with B⁻ ∈ 𝔉^#", &family(k), b);
            }
            // the grill of a principal filter is the families meeting its kernel
            let lhs = (1..=full).filter(|h| h & k != 0).all(|h| union[h as usize].meets(b));
            let rhs = bm & k == k;
            if lhs != rhs {
                return fail_at("B ∈ (rdc𝔉^#)^# disagrees with B⁻ ∈ 𝔉", &family(k), b);
            }
        }
    }
    // saturation read over the nonempty closed sets
    let nonempty: u32 = (0..m).filter(|&i| !p[i].is_empty()).fold(0, |acc, i| acc | 1 << i);
    let saturated: Vec<u32> = (0..=full)
        .filter(|s| s & !nonempty == 0)
        .filter(|&s| {
            let u = union[s as usize];
            (0..m).filter(|&i| nonempty & (1 << i) != 0 && p[i].is_subset(u)).all(|i| s & (1 << i) != 0)
        })
        .collect();
    for &k in saturated.iter().filter(|&&k| k != 0) {
        for &h in &saturated {
            let lhs = supersets(k, m).filter(|mm| mm & !nonempty == 0).all(|mm| h & mm != 0);
            let rhs = supersets(k, m).all(|mm| union[h as usize].meets(union[mm as usize]));
            if lhs != rhs {
                return fail_at(
                    format!("𝓗 = {:?}: 𝓗 ∈ 𝔉^# disagrees with rdc𝓗 ∈ (rdc𝔉)^#", family(h)),
                    &family(k),
                    union[h as usize],
                );
            }
        }
    }
    Verdict::Pass
}

fn fold_union(p: &[Kernel], mask: u32) -> Kernel {
    (0..p.len()).filter(|i| mask & (1 << i) != 0).fold(Kernel::EMPTY, |acc, i| acc.union(p[i]))
}

fn lk_pretopological(ctx: &Ctx, xi: &ConvSpace) -> Verdict {
    if !xi.is_pretopological() {
        return Verdict::Unmet;
    }
    let ch = ctx.conv_hyper().expect("convergence instance");
    if ch.points().len() > MAX_HYPER_SPACE {
        return Verdict::Unmet;
    }
    let lk = ch.as_conv_space(ConvStructure::LowerKuratowski).expect("closed carrier");
    if !lk.is_pretopological() {
        return fail("lower Kuratowski is not pretopological");
    }
    for (i, &a) in ch.points().iter().enumerate() {
        let formula = ch.lk_vicinity(a);
        let idx = Kernel::from_points(formula.iter().map(|c| ch.points().binary_search(&c).expect("carrier member")));
        if lk.vicinity(i) != idx {
            return fail_at("vicinity differs from ⋁ V⁻", &formula, a);
        }
    }
    Verdict::Pass
}

fn lv_eq_lk(ctx: &Ctx, xi: &ConvSpace) -> Verdict {
    if !xi.is_topological() {
        return Verdict::Unmet;
    }
    let ch = ctx.conv_hyper().expect("convergence instance");
    if ch.points().len() > MAX_HYPER_SPACE {
        return Verdict::Unmet;
    }
    for fam in oracle::saturated_families(ch.closed()).into_iter().filter(|f| !f.is_empty()) {
        let f = HyperFilter::new(fam.into_iter().collect()).expect("nonempty");
        for a in ch.closed().iter() {
            if ch.lim_lv(&f, a).expect("closed") != ch.lim_lk(&f, a).expect("closed") {
                return fail_at("lower Vietoris and lower Kuratowski differ", f.family(), a);
            }
        }
    }
    if !ch.as_conv_space(ConvStructure::LowerKuratowski).expect("closed carrier").is_topological() {
        return fail("lower Kuratowski is not topological");
    }
    Verdict::Pass
}

fn fell_sup(ctx: &Ctx, _: &ConvSpace) -> Verdict {
    let ch = ctx.conv_hyper().expect("convergence instance");
    for hk in hyper_kernels(ctx, ch.points().len(), 11) {
        let f = HyperFilter::new(ch.family_of(hk)).expect("nonempty");
        for a in ch.closed().iter() {
            let fell = ch.lim_fell(&f, a).expect("closed");
            let both = ch.lim_uf(&f, a).expect("closed") && ch.lim_lv(&f, a).expect("closed");
            if fell != both {
                return fail_at("Fell convergence is not upper Fell and lower Vietoris", f.family(), a);
            }
        }
    }
    if ch.points().len() <= MAX_HYPER_SPACE {
        for s in [ConvStructure::UpperFell, ConvStructure::LowerVietoris, ConvStructure::Fell] {
            if !ch.as_conv_space(s).expect("closed carrier").is_topological() {
                return fail(format!("{s:?} is not a topology"));
            }
        }
    }
    Verdict::Pass
}

fn erect_saturated(ctx: &Ctx) -> Verdict {
    let closed = ctx.cap.coreflect_c().closed_sets();
    for f in all_sets(ctx.n()) {
        let e = erect(f, &closed);
        if !is_saturated(&e, &closed) {
            return fail_set("erected set is not saturated", f);
        }
    }
    let sat = oracle::saturated_families(&closed);
    let counted = (0u32..1 << closed.len())
        .filter(|mask| {
            let fam: SetFamily =
                (0..closed.len()).filter(|i| mask & (1 << i) != 0).map(|i| closed.members()[i]).collect();
            is_saturated(&fam, &closed)
        })
        .count();
    if counted != sat.len() {
        return fail(format!("{counted} saturated families, enumeration found {}", sat.len()));
    }
    for fam in sat {
        let fam = SetFamily::new(fam);
        let r = rdc(&fam);
        if rdc(&erect(r, &closed)) != r {
            return fail_family("rdc(e(rdc 𝒜)) ≠ rdc 𝒜", &fam);
        }
    }
    Verdict::Pass
}

fn validator(ctx: &Ctx) -> Verdict {
    let n = ctx.n();
    let cap = &ctx.cap;
    let mut table: Vec<Value> = all_sets(n).flat_map(|k| cap.row(k).to_vec()).collect();
    let mut broken = None;
    'search: for a in nonempty_subsets(n) {
        for p in a.complement(n).points() {
            let b = a.with(p);
            for x in 0..n {
                if cap.eval(b, x).is_finite() {
                    table[a.index() * n + x] = cap.eval(b, x) + Value::ONE;
                    broken = Some((a, x));
                    break 'search;
                }
                if !cap.eval(a, x).is_zero() {
                    table[b.index() * n + x] = Value::ZERO;
                    broken = Some((b, x));
                    break 'search;
                }
            }
        }
    }
    let Some((set, x)) = broken else {
        return Verdict::Unmet;
    };
    match CapSpace::new(cap.carrier().clone(), table.clone()) {
        Err(Error::Monotone { .. }) => {}
        Ok(_) => return fail_set(format!("non-monotone table accepted (changed at point {x})"), set),
        Err(e) => return fail_set(format!("rejected for the wrong reason: {e}"), set),
    }
    let mut doc = SpaceDocument::from_cap(cap, None);
    doc.completion = Some(CompletionRule::Explicit);
    doc.lambda = Some(
        nonempty_subsets(n)
            .map(|k| crate::format::LambdaEntry {
                kernel: crate::format::labels(cap.carrier(), k),
                values: (0..n)
                    .map(|y| (cap.carrier().label(y).to_string(), ValueLiteral::from(table[k.index() * n + y])))
                    .collect(),
            })
            .collect(),
    );
    match doc.to_space() {
        Err(crate::format::FormatError::Axiom { axiom: "monotone", .. }) => {}
        other => return fail_set(format!("document with a non-monotone table gave {other:?}"), set),
    }
    if let crate::format::Space::Conv(xi) = &ctx.instance.space {
        let mut lim: Vec<Kernel> = all_sets(n).map(|k| xi.lim(k)).collect();
        let mut changed = false;
        'conv: for a in nonempty_subsets(n) {
            for p in a.complement(n).points() {
                let b = a.with(p);
                if let Some(y) = a.complement(n).union(Kernel::EMPTY).points().find(|&y| !xi.lim(a).contains(y)) {
                    lim[b.index()] = lim[b.index()].with(y);
                    changed = true;
                    break 'conv;
                }
                if let Some(y) = xi.lim(b).points().next() {
                    lim[a.index()] = lim[a.index()].minus(Kernel::singleton(y));
                    changed = true;
                    break 'conv;
                }
            }
        }
        if changed && !matches!(ConvSpace::new(xi.carrier().clone(), lim), Err(Error::Monotone { .. })) {
            return fail("non-monotone limit table accepted");
        }
    }
    Verdict::Pass
}

fn centered_lemma(ctx: &Ctx) -> Verdict {
    let cap = &ctx.cap;
    let centered = cap.is_centered();
    let chars = cap.centered_characterizations();
    if chars.iter().any(|&c| c != centered) {
        return fail(format!("centered = {centered}, characterizations {chars:?}"));
    }
    let n = ctx.n();
    let eps: Vec<Value> = oracle::dense_grid(cap).into_iter().filter(Value::is_finite).collect();
    let literal = all_sets(n).all(|a| {
        let adh = oracle::adh_cap(cap, &[a]);
        eps.iter().all(|&e| a.points().all(|x| adh[x] <= e))
    });
    if literal != centered {
        return fail("dense-grid characterization disagrees");
    }
    Verdict::Pass
}

fn precentered_lemma(ctx: &Ctx) -> Verdict {
    let cap = &ctx.cap;
    let pre = cap.is_precentered();
    if pre != cap.is_precentered_by_adherence() || pre != cap.reflect_r().is_centered() {
        return fail(format!("precentered = {pre} but the characterizations disagree"));
    }
    let eps: Vec<Value> = oracle::dense_grid(cap).into_iter().filter(Value::is_finite).collect();
    let literal = all_sets(ctx.n()).all(|a| {
        let adh = oracle::adh_cap(cap, &[a]);
        a.points().all(|x| eps.iter().any(|&e| adh[x] <= e) || adh[x].is_finite())
    });
    if literal != pre {
        return fail("literal union characterization disagrees");
    }
    Verdict::Pass
}

fn class_collapse(ctx: &Ctx) -> Verdict {
    let cap = &ctx.cap;
    let c = ctx.class();
    let n = ctx.n();
    let singleton_sup =
        nonempty_subsets(n).all(|k| (0..n).all(|x| cap.eval(k, x) == sup(k.points().map(|t| cap.d(t, x)))));
    if c.psap != (c.centered && singleton_sup) {
        return fail("pseudo-approach flag disagrees with the ultrafilter law");
    }
    let kernels: Vec<Kernel> = nonempty_subsets(n).collect();
    let intersection_law = (1u64..1 << kernels.len()).all(|mask| {
        let chosen: Vec<Kernel> = (0..kernels.len()).filter(|i| mask & (1 << i) != 0).map(|i| kernels[i]).collect();
        let u = chosen.iter().fold(Kernel::EMPTY, |acc, k| acc.union(*k));
        (0..n).all(|x| cap.eval(u, x) == sup(chosen.iter().map(|&k| cap.eval(k, x))))
    });
    if c.prap != (c.centered && intersection_law) {
        return fail("pre-approach flag disagrees with the arbitrary intersection law");
    }
    if c.psap != c.prap || c.prap != (c.centered && c.finite_depth) {
        return fail("pseudo-approach and pre-approach differ");
    }
    if (c.approach && !c.prap) || (c.non_archimedean && !c.approach) {
        return fail("class inclusions fail");
    }
    Verdict::Pass
}

fn cap_adherence(ctx: &Ctx) -> Verdict {
    let cap = &ctx.cap;
    for fam in ctx.families() {
        let fast = cap.adh(fam);
        let slow = oracle::adh_cap(cap, fam.members());
        if fast != slow {
            return fail_family(format!("adherence {fast:?}, brute force {slow:?}"), fam);
        }
        if fam.contains(Kernel::EMPTY) && fast.iter().any(Value::is_finite) {
            return fail_family("family containing ∅ has finite adherence", fam);
        }
    }
    for a in all_sets(ctx.n()) {
        if cap.adh_set(a) != cap.adh(&SetFamily::single(a)) {
            return fail_set("principal adherence differs from the family adherence", a);
        }
    }
    Verdict::Pass
}

fn adh_attainment(ctx: &Ctx) -> Verdict {
    if !ctx.class().prap {
        return Verdict::Unmet;
    }
    let cap = &ctx.cap;
    for a in nonempty_subsets(ctx.n()) {
        let adh = cap.adh_set(a);
        for (x, &v) in adh.iter().enumerate() {
            if !a.points().any(|t| cap.d(t, x) == v) {
                return fail_set(format!("adherence {v} at point {x} not attained"), a);
            }
        }
    }
    Verdict::Pass
}

fn tower_adherence(ctx: &Ctx) -> Verdict {
    let cap = &ctx.cap;
    let layers: Vec<(Value, ConvSpace)> =
        cap.breakpoints().into_iter().filter(Value::is_finite).map(|e| (e, cap.layer(e))).collect();
    for fam in ctx.families() {
        let adh = cap.adh(fam);
        for (e, layer) in &layers {
            if level_set(&adh, |v| v <= *e) != layer.adh(fam) {
                return fail_family(format!("differs at ε = {e}"), fam);
            }
        }
    }
    Verdict::Pass
}

fn reflector_adherence(ctx: &Ctx) -> Verdict {
    let cap = &ctx.cap;
    let r = cap.reflect_r();
    let c = cap.coreflect_c();
    let prap = ctx.class().prap;
    for fam in ctx.families() {
        let adh = cap.adh(fam);
        if r.adh(fam) != level_set(&adh, |v| v.is_finite()) {
            return fail_family("adh_r differs from {adh < ∞}", fam);
        }
        let zero = level_set(&adh, |v| v.is_zero());
        let ca = c.adh(fam);
        if !ca.is_subset(zero) || (prap && ca != zero) {
            return fail_family("adh_c does not match {adh = 0}", fam);
        }
    }
    Verdict::Pass
}

fn closed_corollary(ctx: &Ctx) -> Verdict {
    let cap = &ctx.cap;
    if !cap.is_centered() {
        return Verdict::Unmet;
    }
    let r = cap.reflect_r();
    let c = cap.coreflect_c();
    let eps: Vec<Value> = oracle::dense_grid(cap).into_iter().filter(Value::is_finite).collect();
    let prap = ctx.class().prap;
    for a in all_sets(ctx.n()) {
        if r.is_closed(a) != eps.iter().all(|&e| cap.enlarge(a, e) == a) {
            return fail_set("r(λ)-closedness differs from A^(ε) = A", a);
        }
        if prap && c.is_closed(a) != (cap.enlarge(a, Value::ZERO) == a) {
            return fail_set("c(λ)-closedness differs from A^(0) = A", a);
        }
    }
    Verdict::Pass
}

fn eps_lemma(ctx: &Ctx) -> Verdict {
    if !ctx.class().approach {
        return Verdict::Unmet;
    }
    let cap = &ctx.cap;
    let bp = cap.breakpoints();
    for fam in ctx.families() {
        let adh = cap.adh(fam);
        for &e in &bp {
            let s = level_set(&adh, |v| v <= e);
            for &a in &bp {
                if !cap.enlarge(s, a).is_subset(level_set(&adh, |v| v <= e + a)) {
                    return fail_family(format!("fails at ε = {e}, α = {a}"), fam);
                }
            }
        }
    }
    Verdict::Pass
}

fn remark_inclusion(ctx: &Ctx) -> Verdict {
    if !ctx.class().approach {
        return Verdict::Unmet;
    }
    let cap = &ctx.cap;
    let eps = oracle::dense_grid(cap);
    for fam in ctx.families() {
        let adh = cap.adh(fam);
        for &e in &eps {
            let strict = level_set(&adh, |v| v < e);
            if !cap.enlarge(strict, Value::ZERO).is_subset(level_set(&adh, |v| v <= e)) {
                return fail_family(format!("fails at ε = {e}"), fam);
            }
        }
    }
    Verdict::Pass
}

fn indicator_contraction(ctx: &Ctx) -> Verdict {
    let cap = &ctx.cap;
    let r = cap.reflect_r();
    for a in all_sets(ctx.n()) {
        let theta = FrameFn::new(cap.indicator(a));
        let contraction = frames::is_contraction(cap, &theta);
        if contraction != r.is_closed(a) {
            return fail_set("θ_A contraction test differs from r(λ)-closedness", a);
        }
        if contraction && cap.is_centered() && cap.adh_set(a) != cap.indicator(a) {
            return fail_set("adh A ≠ θ_A for an r(λ)-closed set", a);
        }
    }
    Verdict::Pass
}

pub(super) fn midpoint(a: Value, b: Value) -> Value {
    let (ra, rb) = (a.as_ratio().expect("finite"), b.as_ratio().expect("finite"));
    let s = ra + rb;
    Value::ratio(*s.numer(), *s.denom() * 2)
}

fn tower_roundtrip(ctx: &Ctx) -> Verdict {
    let cap = &ctx.cap;
    let tower = cap.tower();
    if Tower::new(tower.layers().to_vec()).as_ref() != Ok(&tower) {
        return fail("extracted tower violates the tower invariants");
    }
    if tower.assemble() != *cap {
        return fail("assemble(extract(λ)) ≠ λ");
    }
    let th: Vec<Value> = tower.thresholds().collect();
    for w in th.windows(2) {
        let probe = if w[1].is_finite() { midpoint(w[0], w[1]) } else { w[0] + Value::ONE };
        if w[0].is_finite() && cap.layer(probe) != cap.layer(w[0]) {
            return fail(format!("layer changes strictly between thresholds {} and {}", w[0], w[1]));
        }
        if tower.at(w[0]) != Some(&cap.layer(w[0])) {
            return fail(format!("tower level at {} differs from the cut", w[0]));
        }
    }
    Verdict::Pass
}

fn tower_equivalence(ctx: &Ctx) -> Verdict {
    let c = ctx.class();
    let tower = ctx.cap.tower();
    let pretop = tower.all_pretopological() && ctx.cap.layer(Value::ZERO).is_centered();
    if pretop != c.prap {
        return fail(format!("tower of pretopologies = {pretop}, pre-approach = {}", c.prap));
    }
    let diag = c.prap && tower.satisfies_diagonal_law();
    if diag != c.approach {
        return fail(format!("pre-approach with diagonal tower = {diag}, approach = {}", c.approach));
    }
    Verdict::Pass
}

fn two_diagonal_axioms(ctx: &Ctx) -> Verdict {
    let cap = &ctx.cap;
    let c = ctx.class();
    if !c.centered {
        return Verdict::Unmet;
    }
    let filter_law = c.diagonality_points == cap.full();
    let adh_law = cap.satisfies_adherence_law();
    if filter_law && !adh_law {
        return fail("filter diagonal law holds but the adherence law fails");
    }
    if c.prap && adh_law && !filter_law {
        return fail("pre-approach space with the adherence law but not the filter diagonal law");
    }
    Verdict::Pass
}

fn diagonality_oracle(ctx: &Ctx) -> Verdict {
    let n = ctx.n();
    if n > 3 {
        return Verdict::Unmet;
    }
    let cap = &ctx.cap;
    for f in nonempty_subsets(n) {
        for x in 0..n {
            for op in [Combine::Sum, Combine::Join] {
                if cap.diagonal_at(f, x, op) != oracle::diagonal_at(cap, f, x, op) {
                    return Verdict::Fail(Box::new(super::Failure {
                        detail: format!("{op:?} diagonality differs from selector enumeration"),
                        filter: Some(vec![f]),
                        point: Some(x),
                        ..Default::default()
                    }));
                }
            }
        }
    }
    Verdict::Pass
}

fn breakpoint_oracle(ctx: &Ctx) -> Verdict {
    let fast = ctx.cap.satisfies_adherence_law();
    let dense = oracle::adherence_law_dense(&ctx.cap);
    if fast != dense {
        return fail(format!("breakpoints say {fast}, dense grid says {dense}"));
    }
    Verdict::Pass
}

fn cri_adjunction(ctx: &Ctx) -> Verdict {
    let cap = &ctx.cap;
    let c = cap.coreflect_c();
    let r = cap.reflect_r();
    if !c.is_finer_than(&r) {
        return fail("c(λ) is not finer than r(λ)");
    }
    if c != cap.layer(Value::ZERO) {
        return fail("c(λ) differs from the 0-layer");
    }
    if !r.closed_sets().is_subfamily(&c.closed_sets()) {
        return fail("an r(λ)-closed set is not c(λ)-closed");
    }
    if cap.is_precentered() != r.is_centered() {
        return fail("precentered but r(λ) not centered, or conversely");
    }
    Verdict::Pass
}

fn d_closure(ctx: &Ctx) -> Verdict {
    let cap = &ctx.cap;
    if !cap.is_centered() {
        return Verdict::Unmet;
    }
    let n = ctx.n();
    let dc = DClosure::new(cap);
    let literal = triangle_closure(cap.distances());
    for (t, row) in literal.iter().enumerate() {
        if !dc.get(t, t).is_zero() {
            return fail_point("nonzero diagonal", t);
        }
        for (x, &closed) in row.iter().enumerate() {
            if dc.get(t, x) != closed || dc.get(t, x) > cap.d(t, x) {
                return fail_point(format!("D({t},{x}) = {}, closure {closed}", dc.get(t, x)), x);
            }
            if (0..n).any(|s| dc.get(t, x) > dc.get(t, s) + dc.get(s, x)) {
                return fail_point("triangle law fails", x);
            }
            if ctx.class().approach && dc.get(t, x) != cap.d(t, x) {
                return fail_point("D ≠ d on an approach space", x);
            }
        }
    }
    Verdict::Pass
}

fn contraction_oracle(ctx: &Ctx) -> Verdict {
    let n = ctx.n();
    let lattice: Vec<Value> = ["0", "1/2", "1", "2", "inf"].iter().map(|s| s.parse().expect("literal")).collect();
    let fns: Vec<Vec<Value>> = if n <= 3 {
        (0..lattice.len().pow(n as u32))
            .map(|code| (0..n).map(|i| lattice[code / lattice.len().pow(i as u32) % lattice.len()]).collect())
            .collect()
    } else {
        let mut rng = ctx.rng(12);
        (0..200).map(|_| (0..n).map(|_| lattice[rng.random_range(0..lattice.len())]).collect()).collect()
    };
    for mu in fns {
        let fast = frames::is_contraction(&ctx.cap, &FrameFn::new(mu.clone()));
        if fast != oracle::is_contraction(&ctx.cap, &mu) {
            return fail(format!("criterion disagrees on μ = {mu:?}"));
        }
    }
    Verdict::Pass
}
