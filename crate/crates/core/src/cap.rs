//! Finite (pre)convergence approach spaces.
//!
//! `λ(K)(x)` is stored for every nonempty kernel `K` and point `x`. The
//! monotone axiom reads `A ⊆ B ⟹ λ(A) ≤ λ(B)` pointwise: a larger kernel is a
//! coarser filter and converges worse.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::conv::ConvSpace;
use crate::fault::{self, Fault};
use crate::setcalc::{
    all_subsets, maximal_elements, minimal_transversals, nonempty_subsets, Carrier, Kernel, SetFamily,
};
use crate::values::{inf, sup, Value};
use crate::Error;

/// How a table was specified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Completion {
    /// Every kernel listed.
    Explicit,
    /// Only singletons listed; `λ(B) = ⋁_{t∈B} λ({t})`.
    Prap,
}

#[derive(Clone, Debug)]
pub struct CapSpace {
    carrier: Carrier,
    // row-major: table[kernel * n + x]; the row of the empty kernel is ∞
    table: Vec<Value>,
    completion: Completion,
}

impl PartialEq for CapSpace {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.table == other.table
    }
}

impl Eq for CapSpace {}

impl CapSpace {
    /// Validates a full table of `2^n · n` values; the empty-kernel row is ignored.
    pub fn new(carrier: Carrier, mut table: Vec<Value>) -> Result<CapSpace, Error> {
        let n = carrier.len();
        let expected = n << n;
        if table.len() != expected {
            return Err(Error::TableSize { expected, got: table.len() });
        }
        for v in &mut table[..n] {
            *v = Value::INFINITY;
        }
        let space = CapSpace { carrier, table, completion: Completion::Explicit };
        space.check_monotone()?;
        Ok(space)
    }

    pub fn from_fn(carrier: Carrier, f: impl Fn(Kernel, usize) -> Value) -> Result<CapSpace, Error> {
        let n = carrier.len();
        let mut table = Vec::with_capacity(n << n);
        for k in all_subsets(n) {
            for x in 0..n {
                table.push(if k.is_empty() { Value::INFINITY } else { f(k, x) });
            }
        }
        CapSpace::new(carrier, table)
    }

    /// Completes a singleton table `d[t][x] = λ({t})(x)` by
    /// `λ(B)(x) = ⋁_{t∈B} d(t,x)`.
    pub fn from_distances(carrier: Carrier, d: &[Vec<Value>]) -> Result<CapSpace, Error> {
        let n = carrier.len();
        if d.len() != n {
            return Err(Error::TableSize { expected: n, got: d.len() });
        }
        if let Some(row) = d.iter().find(|r| r.len() != n) {
            return Err(Error::TableSize { expected: n, got: row.len() });
        }
        let mut space = CapSpace::from_fn(carrier, |k, x| sup(k.points().map(|t| d[t][x])))?;
        space.completion = Completion::Prap;
        Ok(space)
    }

    /// The 0/∞ embedding of a convergence.
    pub fn from_conv(conv: &ConvSpace) -> CapSpace {
        CapSpace::from_fn(
            conv.carrier().clone(),
            |k, x| {
                if conv.lim(k).contains(x) {
                    Value::ZERO
                } else {
                    Value::INFINITY
                }
            },
        )
        .expect("embedding preserves monotonicity")
    }

    fn check_monotone(&self) -> Result<(), Error> {
        if fault::is_active(Fault::MonotoneValidator) {
            return Ok(());
        }
        let n = self.len();
        for a in nonempty_subsets(n) {
            for p in a.complement(n).points() {
                let b = a.with(p);
                if let Some(point) = (0..n).find(|&x| self.eval(a, x) > self.eval(b, x)) {
                    return Err(Error::Monotone { smaller: a, larger: b, point });
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn full(&self) -> Kernel {
        self.carrier.full()
    }

    pub fn completion(&self) -> Completion {
        self.completion
    }

    /// Whether the table is the completion of its singleton rows.
    pub fn is_prap_completion(&self) -> bool {
        self.satisfies_singleton_sup()
    }

    #[inline]
    pub fn eval(&self, kernel: Kernel, x: usize) -> Value {
        self.table[kernel.index() * self.len() + x]
    }

    pub fn row(&self, kernel: Kernel) -> &[Value] {
        let n = self.len();
        &self.table[kernel.index() * n..(kernel.index() + 1) * n]
    }

    /// `d(t, x) = λ({t})(x)`.
    #[inline]
    pub fn d(&self, t: usize, x: usize) -> Value {
        self.eval(Kernel::singleton(t), x)
    }

    pub fn distances(&self) -> Vec<Vec<Value>> {
        (0..self.len()).map(|t| self.row(Kernel::singleton(t)).to_vec()).collect()
    }

    /// Distinct values of the table over nonempty kernels, ascending.
    pub fn realized_values(&self) -> Vec<Value> {
        let n = self.len();
        let set: BTreeSet<Value> = self.table[n..].iter().copied().collect();
        set.into_iter().collect()
    }

    /// Distinct values of the singleton table, ascending.
    pub fn distance_values(&self) -> Vec<Value> {
        let set: BTreeSet<Value> = (0..self.len()).flat_map(|t| self.row(Kernel::singleton(t)).to_vec()).collect();
        set.into_iter().collect()
    }

    /// `D ∪ {0, ∞}` for the realized singleton values `D`: the thresholds at
    /// which ε-quantified adherence laws can change.
    pub fn breakpoints(&self) -> Vec<Value> {
        let mut set: BTreeSet<Value> = self.distance_values().into_iter().collect();
        set.insert(Value::ZERO);
        set.insert(Value::INFINITY);
        set.into_iter().collect()
    }

    pub fn is_centered(&self) -> bool {
        (0..self.len()).all(|x| self.d(x, x).is_zero())
    }

    pub fn is_precentered(&self) -> bool {
        (0..self.len()).all(|x| self.d(x, x).is_finite())
    }

    /// The three adherence characterizations of centering, in order:
    /// `adh A ≤ θ_A`; `A ⊆ A^(ε)` for every finite breakpoint `ε`; `A ⊆ A^(0)`.
    pub fn centered_characterizations(&self) -> [bool; 3] {
        let mut out = [true; 3];
        let eps: Vec<Value> = self.breakpoints().into_iter().filter(Value::is_finite).collect();
        for a in all_subsets(self.len()) {
            let adh = self.adh_set(a);
            out[0] &= a.points().all(|x| adh[x].is_zero());
            out[1] &= eps.iter().all(|&e| a.is_subset(level_set(&adh, |v| v <= e)));
            out[2] &= a.is_subset(level_set(&adh, |v| v.is_zero()));
        }
        out
    }

    /// Precentered via adherences: `A ⊆ ⋃_{ε<∞} A^(ε) = {adh A < ∞}`.
    pub fn is_precentered_by_adherence(&self) -> bool {
        all_subsets(self.len()).all(|a| a.is_subset(level_set(&self.adh_set(a), |v| v.is_finite())))
    }

    /// Adherence of the principal filter of `a`: `⋀_{t∈a} d(t, ·)`.
    pub fn adh_set(&self, a: Kernel) -> Vec<Value> {
        (0..self.len()).map(|x| inf(a.points().map(|t| self.d(t, x)))).collect()
    }

    /// Adherence of a family: pointwise infimum of `λ(K)` over the meshing
    /// kernels, of which only the minimal transversals matter.
    pub fn adh(&self, family: &SetFamily) -> Vec<Value> {
        let ts = minimal_transversals(family, self.len());
        (0..self.len()).map(|x| inf(ts.iter().map(|k| self.eval(k, x)))).collect()
    }

    /// `A^(ε) = {adh A ≤ ε}`.
    pub fn enlarge(&self, a: Kernel, eps: Value) -> Kernel {
        level_set(&self.adh_set(a), |v| v <= eps)
    }

    pub fn indicator(&self, a: Kernel) -> Vec<Value> {
        (0..self.len()).map(|x| if a.contains(x) { Value::ZERO } else { Value::INFINITY }).collect()
    }

    /// Convergence of the `ε`-cut: `x ∈ lim K` iff `λ(K)(x) ≤ ε`.
    pub fn layer(&self, eps: Value) -> ConvSpace {
        self.cut(|v| v <= eps)
    }

    fn cut(&self, keep: impl Fn(Value) -> bool) -> ConvSpace {
        ConvSpace::from_fn(self.carrier.clone(), |k| level_set(self.row(k), &keep))
            .expect("cuts of a monotone table are monotone")
    }

    /// `c(λ)`: limits where `λ = 0`.
    pub fn coreflect_c(&self) -> ConvSpace {
        self.cut(|v| v.is_zero())
    }

    /// `r(λ)`: limits where `λ < ∞`.
    pub fn reflect_r(&self) -> ConvSpace {
        self.cut(|v| v.is_finite())
    }

    pub fn tower(&self) -> Tower {
        let mut thresholds = self.realized_values();
        if thresholds.last() != Some(&Value::INFINITY) {
            thresholds.push(Value::INFINITY);
        }
        let layers = thresholds.into_iter().map(|e| (e, self.layer(e))).collect();
        Tower { layers }
    }

    /// `λ(A ∪ B) = λ(A) ∨ λ(B)` for all kernel pairs.
    pub fn is_finite_depth(&self) -> bool {
        let n = self.len();
        nonempty_subsets(n).all(|a| {
            nonempty_subsets(n).filter(|b| a.bits() < b.bits()).all(|b| {
                let u = a.union(b);
                (0..n).all(|x| self.eval(u, x) == self.eval(a, x).join(self.eval(b, x)))
            })
        })
    }

    fn satisfies_singleton_sup(&self) -> bool {
        let n = self.len();
        nonempty_subsets(n).all(|k| (0..n).all(|x| self.eval(k, x) == sup(k.points().map(|t| self.d(t, x)))))
    }

    /// Centered and `λ(B) = ⋁_{t∈B} λ({t})`: the ultrafilter law.
    pub fn is_psap(&self) -> bool {
        self.is_centered() && self.satisfies_singleton_sup()
    }

    /// Centered and `λ` turns intersections of filters (unions of kernels)
    /// into suprema; on a finite carrier the pairwise law suffices.
    pub fn is_prap(&self) -> bool {
        self.is_centered() && self.is_finite_depth()
    }

    /// `adh A(x) ≤ adh A^(ε)(x) + ε` for every `A` and every breakpoint `ε`.
    pub fn adherence_diagonal_at(&self, x0: usize) -> bool {
        let eps = self.breakpoints();
        all_subsets(self.len()).all(|a| {
            let adh = self.adh_set(a);
            eps.iter().all(|&e| {
                let big = level_set(&adh, |v| v <= e);
                adh[x0] <= inf(big.points().map(|t| self.d(t, x0))) + e
            })
        })
    }

    pub fn satisfies_adherence_law(&self) -> bool {
        (0..self.len()).all(|x| self.adherence_diagonal_at(x))
    }

    pub fn is_approach(&self) -> bool {
        self.is_prap() && self.satisfies_adherence_law()
    }

    pub fn is_non_archimedean(&self) -> bool {
        self.is_prap()
            && nonempty_subsets(self.len()).all(|f| (0..self.len()).all(|x| self.diagonal_at(f, x, Combine::Join)))
    }

    /// Whether `x0` is a point of `f`-diagonality:
    /// `λ(𝒢(f))(x0) ≤ λ(f)(x0) ⊕ ⋁_t λ(𝒢(t))(t)` for every selector `𝒢`.
    ///
    /// For a bound `ε` on `⋁_t λ(𝒢(t))(t)` the worst selector picks, at each
    /// `t ∈ f`, a maximal kernel `K` with `λ(K)(t) ≤ ε`, and points outside `f`
    /// only need some admissible kernel. Every violation shows up at `ε` equal
    /// to its own realized bound, so realized values suffice.
    pub fn diagonal_at(&self, f: Kernel, x0: usize, op: Combine) -> bool {
        let n = self.len();
        let base = self.eval(f, x0);
        for eps in self.realized_values() {
            if !eps.is_finite() {
                continue;
            }
            let feasible = (0..n).all(|t| inf((0..n).map(|s| self.d(s, t))) <= eps);
            if !feasible {
                continue;
            }
            let mut unions = vec![Kernel::EMPTY];
            for t in f.points() {
                let admissible: Vec<Kernel> = nonempty_subsets(n).filter(|&k| self.eval(k, t) <= eps).collect();
                let tops = maximal_elements(admissible);
                let mut next = Vec::with_capacity(unions.len() * tops.len());
                for &u in &unions {
                    next.extend(tops.iter().map(|&m| u.union(m)));
                }
                unions = maximal_elements(next);
            }
            let bound = op.apply(base, eps);
            if unions.iter().any(|&u| self.eval(u, x0) > bound) {
                return false;
            }
        }
        true
    }

    /// Points of filter-diagonality: `f`-diagonal for every kernel `f`.
    pub fn diagonality_points(&self) -> Kernel {
        let n = self.len();
        Kernel::from_points((0..n).filter(|&x| nonempty_subsets(n).all(|f| self.diagonal_at(f, x, Combine::Sum))))
    }

    /// Points of `f`-diagonality.
    pub fn diagonality_points_for(&self, f: Kernel) -> Kernel {
        Kernel::from_points((0..self.len()).filter(|&x| self.diagonal_at(f, x, Combine::Sum)))
    }

    pub fn satisfies_filter_diagonal_law(&self) -> bool {
        self.diagonality_points() == self.full()
    }

    pub fn classify(&self) -> ClassReport {
        let centered = self.is_centered();
        let precentered = self.is_precentered();
        let finite_depth = self.is_finite_depth();
        let psap = self.is_psap();
        let prap = centered && finite_depth;
        let approach = prap && self.satisfies_adherence_law();
        let non_archimedean = approach && self.is_non_archimedean();
        ClassReport {
            centered,
            precentered,
            finite_depth,
            psap,
            prap,
            approach,
            non_archimedean,
            diagonality_points: self.diagonality_points(),
        }
    }
}

/// `{x : keep(v[x])}`.
pub fn level_set(values: &[Value], keep: impl Fn(Value) -> bool) -> Kernel {
    Kernel::from_points(values.iter().enumerate().filter(|(_, v)| keep(**v)).map(|(x, _)| x))
}

/// How the two sides of a diagonal law combine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Sum,
    Join,
}

impl Combine {
    pub fn apply(self, a: Value, b: Value) -> Value {
        match self {
            Combine::Sum => a + b,
            Combine::Join => a.join(b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub centered: bool,
    pub precentered: bool,
    pub finite_depth: bool,
    pub psap: bool,
    pub prap: bool,
    pub approach: bool,
    pub non_archimedean: bool,
    pub diagonality_points: Kernel,
}

/// The ε-cuts of a structure at its realized values, ending at `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    layers: Vec<(Value, ConvSpace)>,
}

impl Tower {
    pub fn new(layers: Vec<(Value, ConvSpace)>) -> Result<Tower, Error> {
        let Some((top, top_layer)) = layers.last() else {
            return Err(Error::TowerThresholds);
        };
        if *top != Value::INFINITY || layers.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::TowerThresholds);
        }
        let carrier = top_layer.carrier();
        if layers.iter().any(|(_, l)| l.carrier() != carrier) {
            return Err(Error::TowerCarrier);
        }
        if let Some(i) = layers.windows(2).position(|w| !w[0].1.is_finer_than(&w[1].1)) {
            return Err(Error::TowerAntitone(i));
        }
        if *top_layer != ConvSpace::antidiscrete(carrier.clone()) {
            return Err(Error::TowerTop);
        }
        Ok(Tower { layers })
    }

    pub fn layers(&self) -> &[(Value, ConvSpace)] {
        &self.layers
    }

    pub fn thresholds(&self) -> impl Iterator<Item = Value> + '_ {
        self.layers.iter().map(|(e, _)| *e)
    }

    /// The level at an arbitrary `ε`: the layer of the largest threshold `≤ ε`,
    /// or `None` below the first threshold.
    pub fn at(&self, eps: Value) -> Option<&ConvSpace> {
        self.layers.iter().rev().find(|(e, _)| *e <= eps).map(|(_, l)| l)
    }

    /// `λ(K)(x) = inf{ε : x ∈ lim_ε K}`.
    pub fn assemble(&self) -> CapSpace {
        let carrier = self.layers[0].1.carrier().clone();
        CapSpace::from_fn(carrier, |k, x| {
            self.layers.iter().find(|(_, l)| l.lim(k).contains(x)).map_or(Value::INFINITY, |(e, _)| *e)
        })
        .expect("assembled tables are monotone")
    }

    pub fn all_pretopological(&self) -> bool {
        self.layers.iter().all(|(_, l)| l.is_pretopological())
    }

    /// The diagonal tower law: if `y ∈ lim_ε 𝒮(y)` for all `y` and
    /// `x ∈ lim_γ K` then `x ∈ lim_{ε+γ} 𝒮(K)`, checked on the layers alone.
    pub fn satisfies_diagonal_law(&self) -> bool {
        let finite: Vec<&(Value, ConvSpace)> = self.layers.iter().filter(|(e, _)| e.is_finite()).collect();
        for (eps, le) in &finite {
            let n = le.len();
            let admissible: Vec<Vec<Kernel>> = (0..n)
                .map(|y| maximal_elements(nonempty_subsets(n).filter(|&k| le.lim(k).contains(y)).collect()))
                .collect();
            if admissible.iter().any(Vec::is_empty) {
                continue;
            }
            for (gamma, lg) in &finite {
                let target = self.at(*eps + *gamma).expect("sum exceeds a threshold");
                for f in nonempty_subsets(n) {
                    let lim_f = lg.lim(f);
                    if lim_f.is_empty() {
                        continue;
                    }
                    let mut unions = vec![Kernel::EMPTY];
                    for t in f.points() {
                        let mut next = Vec::new();
                        for &u in &unions {
                            next.extend(admissible[t].iter().map(|&m| u.union(m)));
                        }
                        unions = maximal_elements(next);
                    }
                    if unions.iter().any(|&u| !lim_f.is_subset(target.lim(u))) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::conv::tests::p3;

    pub fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    /// Two points with `d(0,1) = 1`, `d(1,0) = ∞`.
    pub fn q2() -> CapSpace {
        CapSpace::from_distances(Carrier::numbered(2), &[vec![v("0"), v("1")], vec![v("inf"), v("0")]]).unwrap()
    }

    fn k(p: &[usize]) -> Kernel {
        Kernel::from_points(p.iter().copied())
    }

    #[test]
    fn q2_evaluation_and_adherence() {
        let q = q2();
        assert_eq!(q.eval(k(&[0, 1]), 1), v("1"));
        assert_eq!(q.eval(k(&[0, 1]), 0), v("inf"));
        assert_eq!(q.adh(&SetFamily::single(k(&[0]))), [v("0"), v("1")]);
        assert_eq!(q.adh(&SetFamily::single(Kernel::EMPTY)), [v("inf"), v("inf")]);
        assert_eq!(q.enlarge(k(&[0]), v("1")), k(&[0, 1]));
        assert_eq!(q.enlarge(k(&[0]), v("1/2")), k(&[0]));
    }

    #[test]
    fn q2_reflections() {
        let q = q2();
        let c = q.coreflect_c();
        assert_eq!((c.lim(k(&[0])), c.lim(k(&[1])), c.lim(k(&[0, 1]))), (k(&[0]), k(&[1]), k(&[])));
        let r = q.reflect_r();
        assert_eq!((r.lim(k(&[0])), r.lim(k(&[1]))), (k(&[0, 1]), k(&[1])));
    }

    #[test]
    fn q2_tower() {
        let t = q2().tower();
        assert_eq!(t.at(v("1/2")).unwrap().lim(k(&[0])), k(&[0]));
        assert_eq!(t.at(v("1")).unwrap().lim(k(&[0])), k(&[0, 1]));
        assert_eq!(t.assemble(), q2());
        assert!(Tower::new(t.layers().to_vec()).is_ok());
    }

    #[test]
    fn q2_classification() {
        let r = q2().classify();
        assert!(r.centered && r.prap && r.psap && r.approach);
        assert!(r.non_archimedean);
        assert_eq!(r.diagonality_points, k(&[0, 1]));
    }

    #[test]
    fn embedded_p3_is_prap_but_not_approach() {
        let l = CapSpace::from_conv(&p3());
        let r = l.classify();
        assert!(r.prap);
        assert!(!r.approach);
        assert!(!r.non_archimedean);
        assert_ne!(r.diagonality_points, l.full());
        assert_eq!(l.coreflect_c(), p3());
        assert_eq!(l.reflect_r(), p3());
    }

    #[test]
    fn embedded_topology_is_non_archimedean() {
        let t = p3().reflect_t();
        assert!(CapSpace::from_conv(&t).classify().non_archimedean);
    }

    #[test]
    fn rejects_non_monotone_table() {
        let c = Carrier::numbered(2);
        let r = CapSpace::from_fn(c, |kk, _| if kk.len() == 2 { Value::ZERO } else { Value::ONE });
        assert!(matches!(r, Err(Error::Monotone { .. })));
    }

    #[test]
    fn tower_validation() {
        let c = Carrier::numbered(2);
        let a = ConvSpace::antidiscrete(c.clone());
        let d = ConvSpace::discrete(c);
        assert_eq!(
            Tower::new(vec![(Value::ZERO, a.clone()), (Value::INFINITY, d.clone())]),
            Err(Error::TowerAntitone(0))
        );
        assert_eq!(Tower::new(vec![(Value::ZERO, d.clone())]), Err(Error::TowerThresholds));
        assert!(Tower::new(vec![(Value::ZERO, d), (Value::INFINITY, a)]).is_ok());
    }
}
