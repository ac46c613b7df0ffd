//! Finite (pre)convergence spaces.
//!
//! A convergence on a finite carrier is a limit table indexed by filter
//! kernels. Kernel inclusion reverses the filter order, so the monotone axiom
//! reads `A ⊆ B ⟹ lim(B) ⊆ lim(A)`.

pub mod hyper;

use alloc::vec;
use alloc::vec::Vec;

use crate::fault::{self, Fault};
use crate::setcalc::{all_subsets, minimal_transversals, nonempty_subsets, Carrier, Kernel, SetFamily};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvSpace {
    carrier: Carrier,
    // indexed by kernel bitmask; slot 0 is unused
    lim: Vec<Kernel>,
}

impl ConvSpace {
    /// Validates a full limit table (`2^n` slots, slot 0 ignored).
    pub fn new(carrier: Carrier, mut lim: Vec<Kernel>) -> Result<ConvSpace, Error> {
        let n = carrier.len();
        if lim.len() != 1 << n {
            return Err(Error::TableSize { expected: 1 << n, got: lim.len() });
        }
        lim[0] = Kernel::EMPTY;
        let full = carrier.full();
        if let Some(bad) = lim.iter().find(|l| !l.is_subset(full)) {
            return Err(Error::OutOfCarrier(*bad));
        }
        let space = ConvSpace { carrier, lim };
        space.check_monotone()?;
        Ok(space)
    }

    pub fn from_fn(carrier: Carrier, f: impl Fn(Kernel) -> Kernel) -> Result<ConvSpace, Error> {
        let lim = all_subsets(carrier.len()).map(|k| if k.is_empty() { Kernel::EMPTY } else { f(k) }).collect();
        ConvSpace::new(carrier, lim)
    }

    /// The pretopology in which a filter converges to `x` iff it refines the
    /// vicinity filter of `x`, given by its kernel `vicinity[x]`.
    pub fn pretopology(carrier: Carrier, vicinity: &[Kernel]) -> Result<ConvSpace, Error> {
        if vicinity.len() != carrier.len() {
            return Err(Error::TableSize { expected: carrier.len(), got: vicinity.len() });
        }
        let v = vicinity.to_vec();
        ConvSpace::from_fn(carrier, |k| {
            Kernel::from_points(v.iter().enumerate().filter(|(_, vx)| k.is_subset(**vx)).map(|(x, _)| x))
        })
    }

    /// Only `{x}↑` converges, and only to `x`.
    pub fn discrete(carrier: Carrier) -> ConvSpace {
        ConvSpace::from_fn(carrier, |k| if k.len() == 1 { k } else { Kernel::EMPTY }).expect("discrete is monotone")
    }

    /// Every filter converges to every point.
    pub fn antidiscrete(carrier: Carrier) -> ConvSpace {
        let full = carrier.full();
        ConvSpace::from_fn(carrier, |_| full).expect("antidiscrete is monotone")
    }

    fn check_monotone(&self) -> Result<(), Error> {
        if fault::is_active(Fault::MonotoneValidator) {
            return Ok(());
        }
        let n = self.len();
        for a in nonempty_subsets(n) {
            for p in a.complement(n).points() {
                let b = a.with(p);
                let extra = self.lim(b).minus(self.lim(a));
                if let Some(point) = extra.points().next() {
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

    /// Limit set of the principal filter of `kernel`; `∅` for the empty kernel.
    pub fn lim(&self, kernel: Kernel) -> Kernel {
        self.lim[kernel.index()]
    }

    pub fn table(&self) -> &[Kernel] {
        &self.lim
    }

    pub fn is_centered(&self) -> bool {
        (0..self.len()).all(|x| self.lim(Kernel::singleton(x)).contains(x))
    }

    pub fn require_centered(&self) -> Result<(), Error> {
        match (0..self.len()).find(|&x| !self.lim(Kernel::singleton(x)).contains(x)) {
            Some(x) => Err(Error::Centered(x)),
            None => Ok(()),
        }
    }

    /// Adherence of the principal filter of `a`: `⋃_{t∈a} lim{t}`.
    pub fn adh_set(&self, a: Kernel) -> Kernel {
        a.points().fold(Kernel::EMPTY, |acc, t| acc.union(self.lim(Kernel::singleton(t))))
    }

    /// Adherence of a family: union of the limits of the filters meshing it.
    /// Filters with larger kernels have smaller limits, so the minimal
    /// transversals suffice.
    pub fn adh(&self, family: &SetFamily) -> Kernel {
        minimal_transversals(family, self.len()).iter().fold(Kernel::EMPTY, |acc, k| acc.union(self.lim(k)))
    }

    pub fn is_closed(&self, a: Kernel) -> bool {
        self.adh_set(a).is_subset(a)
    }

    pub fn is_open(&self, a: Kernel) -> bool {
        self.is_closed(a.complement(self.len()))
    }

    pub fn closed_sets(&self) -> SetFamily {
        all_subsets(self.len()).filter(|&a| self.is_closed(a)).collect()
    }

    pub fn open_sets(&self) -> SetFamily {
        all_subsets(self.len()).filter(|&a| self.is_open(a)).collect()
    }

    /// Closure in the topology of open sets: the least closed superset.
    pub fn closure(&self, a: Kernel) -> Kernel {
        all_subsets(self.len()).filter(|&c| a.is_subset(c) && self.is_closed(c)).fold(self.full(), Kernel::intersection)
    }

    /// Kernel of the vicinity filter of `x`: the union of all kernels whose
    /// filters converge to `x` (empty if none does).
    pub fn vicinity(&self, x: usize) -> Kernel {
        nonempty_subsets(self.len()).filter(|&k| self.lim(k).contains(x)).fold(Kernel::EMPTY, Kernel::union)
    }

    /// `lim(K) = ⋂_{t∈K} lim{t}` for every kernel.
    pub fn is_pretopological(&self) -> bool {
        *self == self.reflect_s0()
    }

    pub fn is_topological(&self) -> bool {
        *self == self.reflect_t()
    }

    /// Topological reflection: `lim_T(K) = ⋂_{t∈K} cl{t}`.
    pub fn reflect_t(&self) -> ConvSpace {
        let n = self.len();
        let cl: Vec<Kernel> = (0..n).map(|t| self.closure(Kernel::singleton(t))).collect();
        let lim = all_subsets(n)
            .map(|k| {
                if k.is_empty() {
                    Kernel::EMPTY
                } else {
                    k.points().fold(self.full(), |acc, t| acc.intersection(cl[t]))
                }
            })
            .collect();
        ConvSpace { carrier: self.carrier.clone(), lim }
    }

    /// Pretopological reflection: `lim(K) = ⋂_{t∈K} adh{t}`.
    pub fn reflect_s0(&self) -> ConvSpace {
        let n = self.len();
        let lim = all_subsets(n)
            .map(|k| {
                if k.is_empty() {
                    Kernel::EMPTY
                } else {
                    k.points().fold(self.full(), |acc, t| acc.intersection(self.lim(Kernel::singleton(t))))
                }
            })
            .collect();
        ConvSpace { carrier: self.carrier.clone(), lim }
    }

    /// Pseudotopological reflection. Every filter here is principal and its
    /// ultrafilters are the singletons of its kernel, so this coincides with
    /// [`ConvSpace::reflect_s0`].
    pub fn reflect_s(&self) -> ConvSpace {
        self.reflect_s0()
    }

    /// `self ≥ other`: every limit of `self` is a limit of `other`.
    pub fn is_finer_than(&self, other: &ConvSpace) -> bool {
        self.lim.iter().zip(&other.lim).all(|(a, b)| a.is_subset(*b))
    }

    /// Every ultrafilter on `k` has a limit in `k`.
    pub fn is_compact(&self, k: Kernel) -> bool {
        k.points().all(|t| self.lim(Kernel::singleton(t)).meets(k))
    }

    pub fn vicinities(&self) -> Vec<Kernel> {
        (0..self.len()).map(|x| self.vicinity(x)).collect()
    }
}

/// The table of limits as a plain vector, `lim[K]` for every kernel bitmask.
pub fn limit_table(space: &ConvSpace) -> Vec<Kernel> {
    let mut v = vec![Kernel::EMPTY; 1 << space.len()];
    for k in nonempty_subsets(space.len()) {
        v[k.index()] = space.lim(k);
    }
    v
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The three-point pretopology with vicinities `{a}`, `{a,b}`, `{b,c}`.
    pub fn p3() -> ConvSpace {
        let c = Carrier::new(["a", "b", "c"]).unwrap();
        ConvSpace::pretopology(c, &[Kernel::from_points([0]), Kernel::from_points([0, 1]), Kernel::from_points([1, 2])])
            .unwrap()
    }

    fn k(p: &[usize]) -> Kernel {
        Kernel::from_points(p.iter().copied())
    }

    #[test]
    fn p3_limits_and_closed_sets() {
        let s = p3();
        assert_eq!(s.lim(k(&[0])), k(&[0, 1]));
        assert_eq!(s.lim(k(&[1])), k(&[1, 2]));
        assert_eq!(s.lim(k(&[2])), k(&[2]));
        assert!(s.is_centered());
        assert!(s.is_pretopological());
        assert!(!s.is_topological());
        let closed = SetFamily::new([k(&[]), k(&[2]), k(&[1, 2]), k(&[0, 1, 2])]);
        assert_eq!(s.closed_sets(), closed);
        assert_eq!(s.adh(&SetFamily::single(k(&[0]))), k(&[0, 1]));
        assert_eq!(s.adh(&SetFamily::single(s.full())), s.full());
        assert_eq!(s.adh(&SetFamily::single(Kernel::EMPTY)), Kernel::EMPTY);
    }

    #[test]
    fn p3_topological_reflection() {
        let t = p3().reflect_t();
        assert_eq!(t.open_sets(), SetFamily::new([k(&[]), k(&[0]), k(&[0, 1]), k(&[0, 1, 2])]));
        assert!(t.is_topological());
        assert!(p3().is_finer_than(&t));
        assert_eq!(p3().reflect_s0(), p3());
    }

    #[test]
    fn discrete_and_antidiscrete() {
        let c = Carrier::numbered(3);
        let d = ConvSpace::discrete(c.clone());
        assert_eq!(d.closed_sets().len(), 8);
        assert!(d.is_topological());
        let a = ConvSpace::antidiscrete(c);
        assert_eq!(a.closed_sets().len(), 2);
        assert!(a.is_topological());
    }

    #[test]
    fn monotone_violation_is_reported() {
        let c = Carrier::numbered(2);
        // lim{0,1} = {0} but lim{0} = ∅
        let lim = vec![Kernel::EMPTY, Kernel::EMPTY, k(&[1]), k(&[0])];
        assert!(matches!(ConvSpace::new(c, lim), Err(Error::Monotone { .. })));
    }

    #[test]
    fn open_closed_duality() {
        let s = p3();
        for a in all_subsets(3) {
            assert_eq!(s.is_open(a), s.closed_sets().contains(a.complement(3)));
        }
    }
}
