//! Contractions into `[0, ∞]` and the hyperspace structures they generate.
//!
//! The frame of all contractions is infinite. Every supremum below is taken
//! over cone candidates `t ↦ v ⊖ D(t, S)` (the pointwise-least contraction
//! that is at least `v` on `S`) for `v` in a finite grid, plus constants.
//! The objectives only improve when a contraction is lowered off `S`, and are
//! piecewise linear in `v` with breakpoints among sums of distances.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::cap::CapSpace;
use crate::conv::hyper::HyperFilter;
use crate::hyper::HyperSpace;
use crate::setcalc::Kernel;
use crate::values::{inf, sup, Value};
use crate::Error;

/// A function from the carrier to `[0, ∞]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrameFn(Vec<Value>);

impl FrameFn {
    pub fn new(values: Vec<Value>) -> FrameFn {
        FrameFn(values)
    }

    pub fn constant(n: usize, v: Value) -> FrameFn {
        FrameFn(alloc::vec![v; n])
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }

    #[inline]
    pub fn at(&self, x: usize) -> Value {
        self.0[x]
    }

    /// `⋀ μ(S)`; `∞` on `∅`.
    pub fn meet_over(&self, s: Kernel) -> Value {
        inf(s.points().map(|x| self.0[x]))
    }

    /// `⋁ μ(S)`; `0` on `∅`.
    pub fn join_over(&self, s: Kernel) -> Value {
        sup(s.points().map(|x| self.0[x]))
    }
}

/// `μ(x) ≤ μ(t) + d(t, x)` for all `t, x`: the singleton form of being a
/// contraction into the canonical structure on `[0, ∞]`.
pub fn is_contraction(base: &CapSpace, mu: &FrameFn) -> bool {
    let n = base.len();
    (0..n).all(|t| (0..n).all(|x| mu.at(x) <= mu.at(t) + base.d(t, x)))
}

/// Min-plus transitive closure of the singleton table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DClosure {
    n: usize,
    m: Vec<Value>,
}

impl DClosure {
    pub fn new(base: &CapSpace) -> DClosure {
        let n = base.len();
        let mut m: Vec<Value> = (0..n * n).map(|i| base.d(i / n, i % n)).collect();
        for x in 0..n {
            m[x * n + x] = Value::ZERO;
        }
        for s in 0..n {
            for t in 0..n {
                let ts = m[t * n + s];
                if !ts.is_finite() {
                    continue;
                }
                for x in 0..n {
                    let via = ts + m[s * n + x];
                    if via < m[t * n + x] {
                        m[t * n + x] = via;
                    }
                }
            }
        }
        DClosure { n, m }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, t: usize, x: usize) -> Value {
        self.m[t * self.n + x]
    }

    /// `⋀_{s∈S} D(t, s)`; `∞` for empty `S`.
    pub fn to_set(&self, t: usize, s: Kernel) -> Value {
        inf(s.points().map(|x| self.get(t, x)))
    }

    /// The least contraction that is at least `v` on `s`.
    pub fn cone(&self, s: Kernel, v: Value) -> FrameFn {
        FrameFn((0..self.n).map(|t| v.trunc_sub(self.to_set(t, s))).collect())
    }
}

/// Sums of at most `n` realized finite distances, with `0` and `∞`.
pub fn value_grid(base: &CapSpace) -> Vec<Value> {
    let finite: Vec<Value> = base.distance_values().into_iter().filter(Value::is_finite).collect();
    let mut grid: BTreeSet<Value> = BTreeSet::new();
    grid.insert(Value::ZERO);
    let mut layer: BTreeSet<Value> = grid.clone();
    for _ in 0..base.len() {
        let next: BTreeSet<Value> = layer.iter().flat_map(|&a| finite.iter().map(move |&b| a + b)).collect();
        let fresh: BTreeSet<Value> = next.difference(&grid).copied().collect();
        if fresh.is_empty() {
            break;
        }
        grid.extend(fresh.iter().copied());
        layer = next;
    }
    grid.insert(Value::INFINITY);
    grid.into_iter().collect()
}

/// Cone candidates for a target set `s`, followed by the constants.
pub fn candidates<'a>(h: &'a HyperSpace, s: Kernel) -> impl Iterator<Item = FrameFn> + 'a {
    let n = h.base().len();
    let grid = h.grid();
    grid.iter().map(move |&v| h.d_closure().cone(s, v)).chain(grid.iter().map(move |&v| FrameFn::constant(n, v)))
}

/// `μ^∨(A) ⊖ ⋀_{C∈𝒜} μ^∨(C)` for a principal hyperspace filter.
pub fn lower_objective(mu: &FrameFn, f: &HyperFilter, a: Kernel) -> Value {
    mu.join_over(a).trunc_sub(inf(f.family().iter().map(|c| mu.join_over(c))))
}

/// `μ^∧(A) ⊖ ⋀_{C∈𝒜} μ^∧(C)`.
pub fn upper_objective(mu: &FrameFn, f: &HyperFilter, a: Kernel) -> Value {
    mu.meet_over(a).trunc_sub(inf(f.family().iter().map(|c| mu.meet_over(c))))
}

/// `ν(A) ⊖ ⋀_{C∈𝒜} ν(C)` with `ν(C) = ⋀ μ(C ∩ B)`.
pub fn fell_objective(mu: &FrameFn, b: Kernel, f: &HyperFilter, a: Kernel) -> Value {
    mu.meet_over(a.intersection(b)).trunc_sub(inf(f.family().iter().map(|c| mu.meet_over(c.intersection(b)))))
}

/// Lower-Vietoris structure generated by `μ ↦ μ^∨`.
pub fn lambda_lv(h: &HyperSpace, f: &HyperFilter, a: Kernel) -> Result<Value, Error> {
    h.require_limit(a)?;
    Ok(sup(a.points().flat_map(|x| candidates(h, Kernel::singleton(x)).map(move |mu| lower_objective(&mu, f, a)))))
}

/// Upper-Vietoris structure generated by `μ ↦ μ^∧`.
pub fn lambda_uv(h: &HyperSpace, f: &HyperFilter, a: Kernel) -> Result<Value, Error> {
    h.require_limit(a)?;
    Ok(sup(candidates(h, a).map(|mu| upper_objective(&mu, f, a))))
}

/// Upper-Fell approach structure generated by `μ_B^∧` over `c(λ)`-closed `B`
/// of compactness measure `0`.
pub fn lambda_luf(h: &HyperSpace, f: &HyperFilter, a: Kernel) -> Result<Value, Error> {
    h.require_limit(a)?;
    Ok(sup(h
        .compact_closed()
        .iter()
        .flat_map(|&b| candidates(h, a.intersection(b)).map(move |mu| fell_objective(&mu, b, f, a)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cap::tests::{q2, v};
    use crate::conv::hyper::CarrierMode;
    use crate::conv::tests::p3;
    use crate::setcalc::SetFamily;

    fn k(p: &[usize]) -> Kernel {
        Kernel::from_points(p.iter().copied())
    }

    #[test]
    fn contraction_examples() {
        let q = q2();
        assert!(!is_contraction(&q, &FrameFn::new(alloc::vec![v("0"), v("2")])));
        assert!(is_contraction(&q, &FrameFn::constant(2, v("5"))));
        let closed = q.reflect_r().closed_sets();
        for a in crate::setcalc::all_subsets(2) {
            let theta = FrameFn::new(q.indicator(a));
            assert_eq!(is_contraction(&q, &theta), closed.contains(a));
        }
    }

    #[test]
    fn closure_examples() {
        let q = q2();
        let dc = DClosure::new(&q);
        assert!((0..2).all(|t| (0..2).all(|x| dc.get(t, x) == q.d(t, x))));
        let ip3 = CapSpace::from_conv(&p3());
        let dp = DClosure::new(&ip3);
        assert_eq!(ip3.d(0, 2), Value::INFINITY);
        assert_eq!(dp.get(0, 2), Value::ZERO);
    }

    #[test]
    fn q2_vietoris_values() {
        let h = HyperSpace::new(q2(), CarrierMode::Closed).unwrap();
        let f = h.filter(SetFamily::single(k(&[0]))).unwrap();
        assert_eq!(lambda_lv(&h, &f, k(&[1])).unwrap(), v("1"));
        for &c in h.limits().members() {
            let p = HyperFilter::principal(c);
            if h.points().contains(&c) {
                assert_eq!(lambda_lv(&h, &p, c).unwrap(), Value::ZERO);
                assert_eq!(lambda_uv(&h, &p, c).unwrap(), Value::ZERO);
                assert_eq!(lambda_luf(&h, &p, c).unwrap(), Value::ZERO);
            }
        }
    }

    #[test]
    fn grid_contains_sums() {
        assert_eq!(value_grid(&q2()), [v("0"), v("1"), v("2"), v("inf")]);
    }
}
