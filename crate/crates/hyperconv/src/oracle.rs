//! Definitional brute force for every optimized formula of the core crate.
//!
//! Nothing here calls the routine it is meant to guard: adherences quantify
//! over every meshing kernel, grills and reductions enumerate families, the
//! diagonal laws enumerate every selector map, and frame suprema run over every
//! lattice-valued contraction.

use std::collections::BTreeSet;

use hyperconv_core::cap::Combine;
use hyperconv_core::setcalc::{all_subsets, contour_kernel, nonempty_subsets};
use hyperconv_core::values::{inf, sup, trunc_sub};
use hyperconv_core::{CapSpace, ConvSpace, FrameFn, HyperFilter, HyperSpace, Kernel, SelectorMap, SetFamily, Value};
use num_integer::Integer;

/// Nonempty kernels meeting every member of `family`.
pub fn meshing_kernels(family: &[Kernel], n: usize) -> impl Iterator<Item = Kernel> + '_ {
    nonempty_subsets(n).filter(move |k| family.iter().all(|a| a.meets(*k)))
}

pub fn adh_conv(space: &ConvSpace, family: &[Kernel]) -> Kernel {
    meshing_kernels(family, space.len()).fold(Kernel::EMPTY, |acc, k| acc.union(space.lim(k)))
}

pub fn adh_cap(space: &CapSpace, family: &[Kernel]) -> Vec<Value> {
    let ks: Vec<Kernel> = meshing_kernels(family, space.len()).collect();
    (0..space.len()).map(|x| inf(ks.iter().map(|&k| space.eval(k, x)))).collect()
}

/// `⋀_{A∈K^#} ⋁A` over all subsets `A` of `universe` meeting `kernel`.
pub fn value_grill_inf(kernel: &[Value], universe: &[Value]) -> Value {
    let pool: Vec<Value> = universe.iter().chain(kernel).copied().collect::<BTreeSet<_>>().into_iter().collect();
    assert!(pool.len() <= 20, "value grill enumeration is exponential");
    let mut best = Value::INFINITY;
    for mask in 1u32..1 << pool.len() {
        let members: Vec<Value> = (0..pool.len()).filter(|i| mask & (1 << i) != 0).map(|i| pool[i]).collect();
        if members.iter().any(|m| kernel.contains(m)) {
            best = best.meet(sup(members));
        }
    }
    best
}

/// `λ_V(K↑)(v)` straight from the definition, over subsets of `universe ∪ K`.
pub fn lambda_v(kernel: &[Value], v: Value, universe: &[Value]) -> Value {
    trunc_sub(v, value_grill_inf(kernel, universe))
}

/// The contour `⋃_{F∈f↑} ⋂_{t∈F} 𝒢(t)` materialized as a set of subsets;
/// returns its kernel if it is a principal filter.
pub fn contour_literal(g: &SelectorMap, f: Kernel, n: usize) -> Option<Kernel> {
    let supersets: Vec<Kernel> = all_subsets(n).filter(|s| f.is_subset(*s)).collect();
    let members: Vec<Kernel> = all_subsets(n)
        .filter(|&b| {
            supersets.iter().any(|big| {
                // ⋂_{t∈F} 𝒢(t) contains B iff B contains every kernel g(t)
                big.points().all(|t| g.image(t).is_subset(b))
            })
        })
        .collect();
    let kernel = members.iter().fold(Kernel::full(n), |acc, m| acc.intersection(*m));
    let principal = all_subsets(n).all(|b| members.contains(&b) == kernel.is_subset(b));
    principal.then_some(kernel)
}

/// `⋂ {⋃𝓕 : family ⊆ 𝓕 ⊆ points}`.
pub fn rdc_literal(family: &[Kernel], points: &[Kernel]) -> Kernel {
    let free: Vec<Kernel> = points.iter().copied().filter(|p| !family.contains(p)).collect();
    let base = family.iter().fold(Kernel::EMPTY, |acc, c| acc.union(*c));
    let mut out: Option<Kernel> = None;
    for mask in 0u32..1 << free.len() {
        let u = (0..free.len()).filter(|i| mask & (1 << i) != 0).fold(base, |acc, i| acc.union(free[i]));
        out = Some(out.map_or(u, |o| o.intersection(u)));
    }
    out.expect("at least the family itself")
}

/// Every subfamily of `points`, as index masks.
fn subfamilies(points: &[Kernel]) -> impl Iterator<Item = Vec<Kernel>> + '_ {
    (0u32..1 << points.len())
        .map(move |mask| (0..points.len()).filter(|i| mask & (1 << i) != 0).map(|i| points[i]).collect())
}

fn unions<I: IntoIterator<Item = Vec<Kernel>>>(families: I) -> Vec<Kernel> {
    families
        .into_iter()
        .map(|f| f.iter().fold(Kernel::EMPTY, |acc, c| acc.union(*c)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// `rdc 𝔉 = {⋃𝓕 : 𝓕 ∈ 𝔉}`, the members of `𝔉` being the superfamilies of the kernel.
pub fn reduction(f: &HyperFilter, points: &[Kernel]) -> Vec<Kernel> {
    let kernel = f.family().members();
    unions(subfamilies(points).filter(|s| kernel.iter().all(|c| s.contains(c))))
}

/// `rdc 𝔉^# = {⋃𝓗 : 𝓗 meets every member of 𝔉}`.
pub fn grill_reduction(f: &HyperFilter, points: &[Kernel]) -> Vec<Kernel> {
    // Meeting the kernel family is the same as meeting every member; the
    // members are enumerated outright only on small carriers.
    let members: Vec<Vec<Kernel>> = if points.len() <= 4 {
        let kernel = f.family().members();
        subfamilies(points).filter(|s| kernel.iter().all(|c| s.contains(c))).collect()
    } else {
        vec![f.family().members().to_vec()]
    };
    unions(subfamilies(points).filter(|h| members.iter().all(|m| m.iter().any(|c| h.contains(c)))))
}

pub fn lambda_uk(h: &HyperSpace, f: &HyperFilter, a: Kernel) -> Value {
    let adh = adh_cap(h.base(), &reduction(f, h.points()));
    sup(a.complement(h.base().len()).points().map(|x| one_over(adh[x])))
}

pub fn lambda_lk(h: &HyperSpace, f: &HyperFilter, a: Kernel) -> Value {
    let adh = adh_cap(h.base(), &grill_reduction(f, h.points()));
    sup(a.points().map(|x| adh[x]))
}

/// Compactness measure in ultrafilter form, `⋁_{𝒰∈βH} ⋀_{x∈H} λ𝒰(x)`.
pub fn measure(base: &CapSpace, hset: Kernel) -> Value {
    sup(hset.points().map(|t| inf(hset.points().map(|x| base.eval(Kernel::singleton(t), x)))))
}

pub fn lambda_uf(h: &HyperSpace, f: &HyperFilter, a: Kernel) -> Value {
    let r = reduction(f, h.points());
    let n = h.base().len();
    sup(all_subsets(n)
        .filter(|hs| hs.is_subset(a.complement(n)) && r.iter().all(|m| m.meets(*hs)))
        .map(|hs| one_over(measure(h.base(), hs))))
}

pub fn lim_uk(space: &ConvSpace, f: &HyperFilter, points: &[Kernel], a: Kernel) -> bool {
    adh_conv(space, &reduction(f, points)).is_subset(a)
}

pub fn lim_lk(space: &ConvSpace, f: &HyperFilter, points: &[Kernel], a: Kernel) -> bool {
    a.is_subset(adh_conv(space, &grill_reduction(f, points)))
}

/// `1 ⊘ y` from the case table.
fn one_over(y: Value) -> Value {
    match y.as_ratio() {
        None => Value::ZERO,
        Some(r) if *r.numer() == 0 => Value::INFINITY,
        Some(r) => Value::ratio(*r.denom(), *r.numer()),
    }
}

/// `λ(𝒢(f))(x0) ≤ λ(f)(x0) ⊕ ⋁_t λ(𝒢(t))(t)` for every selector map `𝒢`.
pub fn diagonal_at(space: &CapSpace, f: Kernel, x0: usize, op: Combine) -> bool {
    let n = space.len();
    let kernels: Vec<Kernel> = nonempty_subsets(n).collect();
    let total = kernels.len().pow(n as u32);
    let lf = space.eval(f, x0);
    (0..total).all(|code| {
        let mut c = code;
        let images: Vec<Kernel> = (0..n)
            .map(|_| {
                let k = kernels[c % kernels.len()];
                c /= kernels.len();
                k
            })
            .collect();
        let cost = sup((0..n).map(|t| space.eval(images[t], t)));
        let g = SelectorMap::new(images).expect("nonempty images");
        space.eval(contour_kernel(&g, f), x0) <= op.apply(lf, cost)
    })
}

/// Greatest common divisor of the finite nonzero values, if any.
pub fn value_gcd(values: &[Value]) -> Option<Value> {
    let mut acc: Option<(u64, u64)> = None;
    for r in values.iter().filter_map(Value::as_ratio).filter(|r| *r.numer() != 0) {
        let (p, q) = (*r.numer(), *r.denom());
        acc = Some(match acc {
            None => (p, q),
            Some((ap, aq)) => (ap.gcd(&p), aq.lcm(&q)),
        });
    }
    acc.map(|(p, q)| Value::ratio(p, q))
}

/// Multiples of a quarter of the value gcd up to one unit past the largest
/// finite breakpoint, then `∞`: a grid finer than any breakpoint argument needs.
pub fn dense_grid(space: &CapSpace) -> Vec<Value> {
    let values = space.breakpoints();
    let step =
        value_gcd(&values).and_then(|g| g.as_ratio()).map_or(Value::ONE, |r| Value::ratio(*r.numer(), *r.denom() * 4));
    let top = sup(values.iter().copied().filter(Value::is_finite)) + Value::ONE;
    let mut eps = Vec::new();
    let mut e = Value::ZERO;
    while e <= top {
        eps.push(e);
        e = e + step;
    }
    eps.push(Value::INFINITY);
    eps
}

/// Adherence law `adh A(x) ≤ adh A^(ε)(x) + ε` at every value of the dense grid.
pub fn adherence_law_dense(space: &CapSpace) -> bool {
    let eps = dense_grid(space);
    let n = space.len();
    all_subsets(n).all(|a| {
        let adh = adh_cap(space, &[a]);
        eps.iter().all(|&e| {
            let big = Kernel::from_points((0..n).filter(|&x| adh[x] <= e));
            let adh_big = adh_cap(space, &[big]);
            (0..n).all(|x| adh[x] <= adh_big[x] + e)
        })
    })
}

/// `μ(x) ⊖ ⋀μ(K) ≤ λ(K)(x)` for every kernel `K` and point `x`.
pub fn is_contraction(space: &CapSpace, mu: &[Value]) -> bool {
    let n = space.len();
    nonempty_subsets(n).all(|k| {
        let low = inf(k.points().map(|t| mu[t]));
        (0..n).all(|x| trunc_sub(mu[x], low) <= space.eval(k, x))
    })
}

/// A contraction with its meets and joins over every subset precomputed.
struct Tabulated {
    meet: Vec<Value>,
    join: Vec<Value>,
}

/// Every contraction with values in the lattice of multiples of the grid gcd
/// up to the largest finite grid value, plus `∞`.
pub struct FrameOracle {
    fns: Vec<Tabulated>,
    lattice_size: usize,
}

impl FrameOracle {
    pub fn new(h: &HyperSpace) -> FrameOracle {
        let base = h.base();
        let n = base.len();
        let mut lattice = vec![Value::ZERO];
        if let Some(g) = value_gcd(h.grid()) {
            let top = sup(h.grid().iter().copied().filter(Value::is_finite));
            let mut v = g;
            while v <= top {
                lattice.push(v);
                v = v + g;
            }
        }
        lattice.push(Value::INFINITY);
        let total = lattice.len().pow(n as u32);
        let mut fns = Vec::new();
        for code in 0..total {
            let mut c = code;
            let mu: Vec<Value> = (0..n)
                .map(|_| {
                    let v = lattice[c % lattice.len()];
                    c /= lattice.len();
                    v
                })
                .collect();
            if is_contraction(base, &mu) {
                let f = FrameFn::new(mu);
                fns.push(Tabulated {
                    meet: all_subsets(n).map(|s| f.meet_over(s)).collect(),
                    join: all_subsets(n).map(|s| f.join_over(s)).collect(),
                });
            }
        }
        FrameOracle { fns, lattice_size: lattice.len() }
    }

    pub fn contractions(&self) -> usize {
        self.fns.len()
    }

    pub fn lattice_size(&self) -> usize {
        self.lattice_size
    }

    pub fn lambda_lv(&self, f: &HyperFilter, a: Kernel) -> Value {
        sup(self.fns.iter().map(|mu| trunc_sub(mu.join[a.index()], inf(f.family().iter().map(|c| mu.join[c.index()])))))
    }

    pub fn lambda_uv(&self, f: &HyperFilter, a: Kernel) -> Value {
        sup(self.fns.iter().map(|mu| trunc_sub(mu.meet[a.index()], inf(f.family().iter().map(|c| mu.meet[c.index()])))))
    }

    pub fn lambda_luf(&self, h: &HyperSpace, f: &HyperFilter, a: Kernel) -> Value {
        sup(h.compact_closed().iter().flat_map(|&b| {
            self.fns.iter().map(move |mu| {
                trunc_sub(
                    mu.meet[a.intersection(b).index()],
                    inf(f.family().iter().map(|c| mu.meet[c.intersection(b).index()])),
                )
            })
        }))
    }
}

/// Saturated subfamilies of `closed`: every closed subset of the union belongs.
pub fn saturated_families(closed: &SetFamily) -> Vec<Vec<Kernel>> {
    subfamilies(closed.members())
        .filter(|fam| {
            let u = fam.iter().fold(Kernel::EMPTY, |acc, c| acc.union(*c));
            closed.iter().filter(|c| c.is_subset(u)).all(|c| fam.contains(&c))
        })
        .collect()
}
