//! Checks on the hyperspace structures over the closed sets of a base.

use hyperconv_core::cap::Combine;
use hyperconv_core::conv::hyper::{CarrierMode, ConvHyperspace};
use hyperconv_core::setcalc::all_subsets;
use hyperconv_core::{frames, CapSpace, ConvSpace, HyperFilter, HyperSpace, Kernel, Structure, Value};
use rand::Rng;

use super::space::midpoint;
use super::{fail, fail_at, fail_set, random_nonempty, Check, Ctx, HyperData, Runner, Verdict};
use crate::oracle::{self, FrameOracle};

pub(super) static CHECKS: &[Check] = &[
    Check {
        id: "oracle.hyper_literal",
        statement: "λ_uK, λ_lK, λ_uF and m(H) agree with their literal reduction and ultrafilter forms",
        runner: Runner::Any(hyper_literal),
    },
    Check {
        id: "hyper.m_compact_collapse",
        statement: "over iξ, m(H) = 0 ⟺ H is compact and the zero set of λ_uF is upper-Fell convergence",
        runner: Runner::Conv(m_compact_collapse),
    },
    Check {
        id: "hyper.conv_collapse",
        statement: "over iξ the zero sets of λ_uK, λ_lK are the Kuratowski convergences; over a topology also λ_K, λ_F, λ_lV",
        runner: Runner::Conv(conv_collapse),
    },
    Check {
        id: "hyper.uk_lk_monotone_in_limit",
        statement: "A ⊆ B ⟹ λ_uK𝔉(B) ≤ λ_uK𝔉(A) and λ_lK𝔉(A) ≤ λ_lK𝔉(B)",
        runner: Runner::Any(monotone_in_limit),
    },
    Check {
        id: "hyper.uk_intersection_law",
        statement: "λ_uK𝔉(A ∩ B) = λ_uK𝔉(A) ∨ λ_uK𝔉(B) and λ_uK𝔉(X) = 0",
        runner: Runner::Any(intersection_law),
    },
    Check {
        id: "hyper.structure_prop",
        statement: "every structure is monotone in the filter; lK, lV, uV, LuF, uF, Fbar, F vanish at principal filters, uK and K at r(λ)-closed ones",
        runner: Runner::Any(structure_prop),
    },
    Check {
        id: "hyper.tower_prop",
        statement: "the uK and lK towers read off adherences are the level cuts of λ_uK and λ_lK; the ∞ level of lK is antidiscrete",
        runner: Runner::Any(tower_prop),
    },
    Check {
        id: "hyper.lk_approach_theorem",
        statement: "over an approach space λ_lK is an approach structure",
        runner: Runner::Any(lk_approach),
    },
    Check {
        id: "hyper.lk_layers_pretopological",
        statement: "over an approach space every level of the lK tower is pretopological",
        runner: Runner::Any(lk_layers),
    },
    Check {
        id: "hyper.reflection_theorem",
        statement: "c(λ_lK) = lK of c(λ) (pre-approach), c(λ_uK) = uK of r(λ), r(λ_lK) = lK of r(λ), r(λ_uK) = uK of c(λ) (pre-approach), c(λ_K) = r(λ_K) = K over a topology",
        runner: Runner::Any(reflection_theorem),
    },
    Check {
        id: "hyper.directed_family_lemma",
        statement: "for a directed family of filters λ_uK(⋁𝔉_A)(⋂𝒜) ≤ ⋁ λ_uK(𝔉_A)(A)",
        runner: Runner::Any(directed_family),
    },
    Check {
        id: "hyper.uk_diagonality_theorem",
        statement: "over an approach space with λ_uK pre-approach, adh_{r(λ)} rdc𝔉 is a point of 𝔉-diagonality of λ_uK",
        runner: Runner::Any(uk_diagonality),
    },
    Check {
        id: "hyper.uf_non_archimedean",
        statement: "λ_uF is a non-Archimedean approach structure",
        runner: Runner::Any(uf_non_archimedean),
    },
    Check {
        id: "hyper.uk_ge_uf",
        statement: "λ_uK ≥ λ_uF",
        runner: Runner::Any(uk_ge_uf),
    },
    Check {
        id: "hyper.lk_ge_lv",
        statement: "λ_lK ≥ λ_lV, with equality over approach spaces",
        runner: Runner::Any(lk_ge_lv),
    },
    Check {
        id: "hyper.uf_ge_luf",
        statement: "λ_uF ≥ the upper-Fell structure generated by the frame",
        runner: Runner::Any(uf_ge_luf),
    },
    Check {
        id: "hyper.fell_chain",
        statement: "λ_K ≥ λ_Fbar ≥ λ_F",
        runner: Runner::Any(fell_chain),
    },
    Check {
        id: "frames.cone_soundness",
        statement: "every cone candidate is a contraction",
        runner: Runner::Any(cone_soundness),
    },
    Check {
        id: "oracle.frames",
        statement: "cone-candidate λ_lV, λ_uV, λ_LuF equal the suprema over every grid-valued contraction",
        runner: Runner::Any(frames_oracle),
    },
];

/// A spread of at most `k` filter indices, always including the first and last.
fn spread(len: usize, k: usize) -> Vec<usize> {
    if len <= k {
        return (0..len).collect();
    }
    let mut out: Vec<usize> = (0..k - 1).map(|i| i * len / (k - 1)).collect();
    out.push(len - 1);
    out.dedup();
    out
}

fn pointwise(data: &HyperData, big: Structure, small: Structure, equal: bool) -> Verdict {
    let lim = data.limits();
    for (fi, f) in data.filters.iter().enumerate() {
        let (b, s) = (data.row(big, fi), data.row(small, fi));
        for (i, &a) in lim.iter().enumerate() {
            if b[i] < s[i] || (equal && b[i] != s[i]) {
                return fail_at(format!("{big} = {}, {small} = {}", b[i], s[i]), f.family(), a);
            }
        }
    }
    Verdict::Pass
}

fn hyper_literal(ctx: &Ctx) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    let h = &data.h;
    let cap = &ctx.cap;
    for hs in all_subsets(ctx.n()) {
        if hyperconv_core::hyper::measure_compactness(cap, hs) != oracle::measure(cap, hs) {
            return fail_set("measure differs from its ultrafilter form", hs);
        }
    }
    if h.points().len() > hyperconv_core::hyper::MAX_STRUCTURE_POINTS {
        return Verdict::Unmet;
    }
    let lim = data.limits();
    for fi in spread(data.filters.len(), 8) {
        let f = &data.filters[fi];
        for (i, &a) in lim.iter().enumerate() {
            let pairs = [
                (Structure::UK, oracle::lambda_uk(h, f, a)),
                (Structure::LK, oracle::lambda_lk(h, f, a)),
                (Structure::UF, oracle::lambda_uf(h, f, a)),
            ];
            for (s, slow) in pairs {
                if data.row(s, fi)[i] != slow {
                    return fail_at(format!("{s} = {}, literal {slow}", data.row(s, fi)[i]), f.family(), a);
                }
            }
        }
    }
    if let crate::format::Space::Conv(xi) = &ctx.instance.space {
        let mut modes = vec![CarrierMode::Closed];
        if ctx.n() <= 3 {
            modes.push(CarrierMode::All);
        }
        for mode in modes {
            let ch = ConvHyperspace::new(xi.clone(), mode);
            let m = ch.points().len();
            for hk in spread((1 << m) - 1, 16).into_iter().map(|i| Kernel::from_bits(i as u32 + 1)) {
                let f = HyperFilter::new(ch.family_of(hk)).expect("nonempty");
                for a in ch.closed().iter() {
                    let uk = ch.lim_uk(&f, a).expect("closed");
                    let lk = ch.lim_lk(&f, a).expect("closed");
                    if uk != oracle::lim_uk(xi, &f, ch.points(), a) || lk != oracle::lim_lk(xi, &f, ch.points(), a) {
                        return fail_at(
                            format!("{mode:?} Kuratowski limits differ from the literal form"),
                            f.family(),
                            a,
                        );
                    }
                }
            }
        }
    }
    Verdict::Pass
}

fn zero_set(data: &HyperData, s: Structure, fi: usize) -> Vec<bool> {
    data.row(s, fi).iter().map(|v| v.is_zero()).collect()
}

fn m_compact_collapse(ctx: &Ctx, xi: &ConvSpace) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    for hs in all_subsets(ctx.n()) {
        if hyperconv_core::hyper::measure_compactness(&ctx.cap, hs).is_zero() != xi.is_compact(hs) {
            return fail_set("m(H) = 0 disagrees with compactness", hs);
        }
    }
    let ch = ctx.conv_hyper().expect("convergence instance");
    for (fi, f) in data.filters.iter().enumerate() {
        let zeros = zero_set(data, Structure::UF, fi);
        for (i, &a) in data.limits().iter().enumerate() {
            if zeros[i] != ch.lim_uf(f, a).expect("closed") {
                return fail_at("λ_uF zero set differs from upper-Fell convergence", f.family(), a);
            }
        }
    }
    Verdict::Pass
}

fn conv_collapse(ctx: &Ctx, xi: &ConvSpace) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    let ch = ctx.conv_hyper().expect("convergence instance");
    type Lim = fn(&ConvHyperspace, &HyperFilter, Kernel) -> Result<bool, hyperconv_core::Error>;
    let mut pairs: Vec<(Structure, Lim)> =
        vec![(Structure::UK, ConvHyperspace::lim_uk), (Structure::LK, ConvHyperspace::lim_lk)];
    if xi.is_topological() {
        pairs.extend([
            (Structure::K, ConvHyperspace::lim_k as Lim),
            (Structure::F, ConvHyperspace::lim_fell),
            (Structure::LV, ConvHyperspace::lim_lv),
        ]);
    }
    for (fi, f) in data.filters.iter().enumerate() {
        for &(s, lim) in &pairs {
            let row = data.row(s, fi);
            for (i, &a) in data.limits().iter().enumerate() {
                let conv = lim(ch, f, a).expect("closed");
                if row[i].is_zero() != conv || row[i].is_finite() != conv {
                    return fail_at(format!("{s} = {}, convergence says {conv}", row[i]), f.family(), a);
                }
            }
        }
    }
    Verdict::Pass
}

fn monotone_in_limit(ctx: &Ctx) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    let lim = data.limits();
    for (fi, f) in data.filters.iter().enumerate() {
        let (uk, lk) = (data.row(Structure::UK, fi), data.row(Structure::LK, fi));
        for (i, &a) in lim.iter().enumerate() {
            for (j, &b) in lim.iter().enumerate() {
                if a.is_subset(b) && (uk[j] > uk[i] || lk[i] > lk[j]) {
                    return fail_at(format!("fails against the larger limit {b:?}"), f.family(), a);
                }
            }
        }
    }
    Verdict::Pass
}

fn intersection_law(ctx: &Ctx) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    let lim = data.limits();
    let full = ctx.cap.full();
    for (fi, f) in data.filters.iter().enumerate() {
        let uk = data.row(Structure::UK, fi);
        let at = |k: Kernel| lim.binary_search(&k).map(|i| uk[i]);
        if at(full) != Ok(Value::ZERO) {
            return fail_at("λ_uK𝔉(X) ≠ 0", f.family(), full);
        }
        for (i, &a) in lim.iter().enumerate() {
            for (j, &b) in lim.iter().enumerate().skip(i + 1) {
                match at(a.intersection(b)) {
                    Ok(v) if v == uk[i].join(uk[j]) => {}
                    Ok(v) => return fail_at(format!("with {b:?}: {v} ≠ {} ∨ {}", uk[i], uk[j]), f.family(), a),
                    Err(_) => return fail_at(format!("intersection with {b:?} is not closed"), f.family(), a),
                }
            }
        }
    }
    Verdict::Pass
}

fn structure_prop(ctx: &Ctx) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    let h = &data.h;
    let lim = data.limits();
    for (fi, &hk) in data.kernels.iter().enumerate() {
        for p in (0..h.points().len()).filter(|&p| !hk.contains(p)) {
            let Some(gi) = data.filter_index(hk.with(p)) else { continue };
            for s in Structure::ALL {
                let (fine, coarse) = (data.row(s, fi), data.row(s, gi));
                if let Some(i) = (0..lim.len()).find(|&i| fine[i] > coarse[i]) {
                    return fail_at(
                        format!("{s} not monotone against the coarser filter"),
                        data.filters[fi].family(),
                        lim[i],
                    );
                }
            }
        }
    }
    let r_closed = ctx.cap.reflect_r().closed_sets();
    for (i, &a) in lim.iter().enumerate() {
        let Some(fi) = h.points().binary_search(&a).ok().and_then(|p| data.filter_index(Kernel::singleton(p))) else {
            continue;
        };
        for s in Structure::ALL {
            let must = !matches!(s, Structure::UK | Structure::K) || r_closed.contains(a);
            let v = data.row(s, fi)[i];
            if must && !v.is_zero() {
                return fail_at(format!("{s} = {v} at its principal filter"), data.filters[fi].family(), a);
            }
        }
    }
    Verdict::Pass
}

fn tower_prop(ctx: &Ctx) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    let h = &data.h;
    let lim = data.limits();
    let picked = spread(data.filters.len(), 32);
    for s in [Structure::UK, Structure::LK] {
        let mut levels: Vec<Value> = picked.iter().flat_map(|&fi| data.row(s, fi).iter().copied()).collect();
        levels.extend([Value::ZERO, Value::INFINITY]);
        levels.sort_unstable();
        levels.dedup();
        let finite: Vec<Value> = levels.iter().copied().filter(Value::is_finite).collect();
        let mut probes = levels.clone();
        probes.extend(finite.windows(2).map(|w| midpoint(w[0], w[1])));
        probes.extend(finite.last().map(|&v| v + Value::ONE));
        for &fi in &picked {
            let f = &data.filters[fi];
            let row = data.row(s, fi);
            for &e in &probes {
                for (i, &a) in lim.iter().enumerate() {
                    if h.tower_converges(s, e, f, a).expect("limit") != (row[i] <= e) {
                        return fail_at(format!("{s} level {e} differs from the cut of {}", row[i]), f.family(), a);
                    }
                }
            }
        }
    }
    if data.exhaustive && h.points().len() <= super::EXHAUSTIVE_HYPER_POINTS {
        let top = h.tower_layer(Structure::LK, Value::INFINITY).expect("small carrier");
        let m = h.points().len();
        if all_subsets(m).skip(1).any(|k| top.lim(k) != Kernel::full(m)) {
            return fail("the ∞ level of the lK tower is not antidiscrete");
        }
    }
    Verdict::Pass
}

fn lk_approach(ctx: &Ctx) -> Verdict {
    if !ctx.class().approach {
        return Verdict::Unmet;
    }
    let Some(sp) = ctx.hyper().and_then(|d| d.structure_space(Structure::LK)) else { return Verdict::Unmet };
    if !sp.is_prap() {
        return fail("λ_lK is not pre-approach");
    }
    if !sp.satisfies_adherence_law() {
        return fail("λ_lK fails the adherence diagonal law");
    }
    Verdict::Pass
}

fn lk_layers(ctx: &Ctx) -> Verdict {
    if !ctx.class().approach {
        return Verdict::Unmet;
    }
    let Some(sp) = ctx.hyper().and_then(|d| d.structure_space(Structure::LK)) else { return Verdict::Unmet };
    for e in sp.breakpoints() {
        if !sp.layer(e).is_pretopological() {
            return fail(format!("lK level {e} is not pretopological"));
        }
    }
    Verdict::Pass
}

fn reflection_theorem(ctx: &Ctx) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    let cap = &ctx.cap;
    let c = cap.coreflect_c();
    let r = cap.reflect_r();
    let prap = ctx.class().prap;
    let over_c = ConvHyperspace::new(c.clone(), CarrierMode::Closed);
    let topological = *cap == CapSpace::from_conv(&c) && c.is_topological();
    let lim = data.limits();
    for (fi, f) in data.filters.iter().enumerate() {
        let (uk, lk, k) = (data.row(Structure::UK, fi), data.row(Structure::LK, fi), data.row(Structure::K, fi));
        let r_upper = r.adh_set(f.rdc());
        let r_lower = r.adh(f.family());
        let c_upper = c.adh_set(f.rdc());
        for (i, &a) in lim.iter().enumerate() {
            let checks = [
                (prap, lk[i].is_zero(), over_c.lim_lk(f, a).expect("closed"), "c(λ_lK) ≠ lK of c(λ)"),
                (true, uk[i].is_zero(), r_upper.is_subset(a), "c(λ_uK) ≠ uK of r(λ)"),
                (true, lk[i].is_finite(), a.is_subset(r_lower), "r(λ_lK) ≠ lK of r(λ)"),
                (prap, uk[i].is_finite(), c_upper.is_subset(a), "r(λ_uK) ≠ uK of c(λ)"),
                (topological, k[i].is_zero(), over_c.lim_k(f, a).expect("closed"), "c(λ_K) ≠ K"),
                (topological, k[i].is_finite(), over_c.lim_k(f, a).expect("closed"), "r(λ_K) ≠ K"),
            ];
            for (active, lhs, rhs, what) in checks {
                if active && lhs != rhs {
                    return fail_at(what, f.family(), a);
                }
            }
        }
    }
    Verdict::Pass
}

const DIRECTED_TRIALS: usize = 32;

fn directed_family(ctx: &Ctx) -> Verdict {
    if !ctx.class().approach {
        return Verdict::Unmet;
    }
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    let h = &data.h;
    let m = h.points().len();
    let lim = data.limits();
    let mut rng = ctx.rng(20);
    for _ in 0..DIRECTED_TRIALS {
        let finest = random_nonempty(&mut rng, m);
        let size = rng.random_range(1..=3.min(lim.len()));
        let mut sets: Vec<Kernel> = Vec::with_capacity(size);
        while sets.len() < size {
            let a = lim[rng.random_range(0..lim.len())];
            if !sets.contains(&a) {
                sets.push(a);
            }
        }
        let g = HyperFilter::new(h.family_of(finest)).expect("nonempty");
        let meet = sets.iter().fold(ctx.cap.full(), |acc, &a| acc.intersection(a));
        let lhs = h.lambda_uk(&g, meet).expect("intersection of closed sets");
        let mut rhs = Value::ZERO;
        for (j, &a) in sets.iter().enumerate() {
            let hk = if j == 0 {
                finest
            } else {
                finest.union(Kernel::from_bits(rng.random::<u32>() & Kernel::full(m).bits()))
            };
            let f = HyperFilter::new(h.family_of(hk)).expect("nonempty");
            rhs = rhs.join(h.lambda_uk(&f, a).expect("limit"));
        }
        if lhs > rhs {
            return fail_at(format!("λ_uK of the finest filter at ⋂𝒜 is {lhs}, bound {rhs}"), g.family(), meet);
        }
    }
    Verdict::Pass
}

fn uk_diagonality(ctx: &Ctx) -> Verdict {
    if !ctx.class().approach {
        return Verdict::Unmet;
    }
    let Ok(h) = HyperSpace::new(ctx.cap.clone(), CarrierMode::RClosed) else { return Verdict::Unmet };
    let m = h.points().len();
    if m > super::EXHAUSTIVE_HYPER_POINTS {
        return Verdict::Unmet;
    }
    let sp = h.structure_space(Structure::UK).expect("small carrier");
    if !sp.is_prap() {
        return Verdict::Unmet;
    }
    let r = ctx.cap.reflect_r();
    for hk in all_subsets(m).skip(1) {
        let f = HyperFilter::new(h.family_of(hk)).expect("nonempty");
        let a = r.adh_set(f.rdc());
        let Ok(idx) = h.points().binary_search(&a) else {
            return fail_at("adh_r(rdc 𝔉) is not an r(λ)-closed set", f.family(), a);
        };
        if !sp.diagonal_at(hk, idx, Combine::Sum) {
            return fail_at("adh_r(rdc 𝔉) is not a point of 𝔉-diagonality", f.family(), a);
        }
    }
    Verdict::Pass
}

fn uf_non_archimedean(ctx: &Ctx) -> Verdict {
    let Some(sp) = ctx.hyper().and_then(|d| d.structure_space(Structure::UF)) else { return Verdict::Unmet };
    if !sp.is_prap() {
        return fail("λ_uF is not pre-approach");
    }
    if !sp.is_non_archimedean() {
        return fail("λ_uF fails the non-Archimedean diagonal law");
    }
    if !sp.satisfies_adherence_law() {
        return fail("λ_uF is not an approach structure");
    }
    Verdict::Pass
}

fn uk_ge_uf(ctx: &Ctx) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    pointwise(data, Structure::UK, Structure::UF, false)
}

fn lk_ge_lv(ctx: &Ctx) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    pointwise(data, Structure::LK, Structure::LV, ctx.class().approach)
}

fn uf_ge_luf(ctx: &Ctx) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    pointwise(data, Structure::UF, Structure::LuF, false)
}

fn fell_chain(ctx: &Ctx) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    match pointwise(data, Structure::K, Structure::FBar, false) {
        Verdict::Pass => pointwise(data, Structure::FBar, Structure::F, false),
        v => v,
    }
}

fn cone_soundness(ctx: &Ctx) -> Verdict {
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    let h = &data.h;
    let targets = data.limits().iter().copied().chain((0..ctx.n()).map(Kernel::singleton));
    for s in targets {
        if let Some(mu) = frames::candidates(h, s).find(|mu| !frames::is_contraction(&ctx.cap, mu)) {
            return fail_set(format!("candidate {:?} is not a contraction", mu.values()), s);
        }
    }
    Verdict::Pass
}

fn frames_oracle(ctx: &Ctx) -> Verdict {
    if ctx.n() > 3 {
        return Verdict::Unmet;
    }
    let Some(data) = ctx.hyper() else { return Verdict::Unmet };
    let h = &data.h;
    let fo = FrameOracle::new(h);
    for fi in spread(data.filters.len(), 6) {
        let f = &data.filters[fi];
        for (i, &a) in data.limits().iter().enumerate() {
            let pairs = [
                (Structure::LV, fo.lambda_lv(f, a)),
                (Structure::UV, fo.lambda_uv(f, a)),
                (Structure::LuF, fo.lambda_luf(h, f, a)),
            ];
            for (s, slow) in pairs {
                if data.row(s, fi)[i] != slow {
                    return fail_at(format!("{s} = {}, frame enumeration {slow}", data.row(s, fi)[i]), f.family(), a);
                }
            }
        }
    }
    Verdict::Pass
}
