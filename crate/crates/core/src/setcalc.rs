//! Powerset combinatorics on small carriers.
//!
//! Every filter on a finite set is principal, so a filter is carried by its
//! kernel (the intersection of its members). Kernels and arbitrary subsets
//! share the [`Kernel`] bitmask type; families of subsets are [`SetFamily`].

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// Hard upper bound on any carrier that gets a full kernel table.
pub const MAX_POINTS: usize = 16;
/// Default size cap for base spaces.
pub const DEFAULT_BASE_MAX: usize = 6;
/// Default size cap for base spaces whose hyperspaces are constructed.
pub const DEFAULT_HYPER_BASE_MAX: usize = 4;

/// A subset of a carrier `{0, .., n-1}` as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Kernel(u32);

impl Kernel {
    pub const EMPTY: Kernel = Kernel(0);

    pub const fn from_bits(bits: u32) -> Kernel {
        Kernel(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// Position of this set in tables indexed by bitmask.
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn singleton(point: usize) -> Kernel {
        Kernel(1 << point)
    }

    pub const fn full(n: usize) -> Kernel {
        if n >= 32 {
            Kernel(u32::MAX)
        } else {
            Kernel((1u32 << n) - 1)
        }
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Kernel {
        Kernel(points.into_iter().fold(0, |acc, p| acc | 1 << p))
    }

    pub const fn contains(self, point: usize) -> bool {
        self.0 >> point & 1 == 1
    }

    pub const fn is_subset(self, other: Kernel) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn meets(self, other: Kernel) -> bool {
        self.0 & other.0 != 0
    }

    pub const fn union(self, other: Kernel) -> Kernel {
        Kernel(self.0 | other.0)
    }

    pub const fn intersection(self, other: Kernel) -> Kernel {
        Kernel(self.0 & other.0)
    }

    pub const fn minus(self, other: Kernel) -> Kernel {
        Kernel(self.0 & !other.0)
    }

    pub const fn complement(self, n: usize) -> Kernel {
        Kernel(Kernel::full(n).0 & !self.0)
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn with(self, point: usize) -> Kernel {
        Kernel(self.0 | 1 << point)
    }

    pub fn points(self) -> Points {
        Points(self.0)
    }

    /// All subsets of `self`, the empty set first.
    pub fn subsets(self) -> Subsets {
        Subsets { full: self.0, next: Some(0) }
    }
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

/// Iterator over the points of a [`Kernel`], ascending.
#[derive(Clone, Debug)]
pub struct Points(u32);

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }
}

/// Submask enumeration in increasing numeric order.
#[derive(Clone, Debug)]
pub struct Subsets {
    full: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Kernel;

    fn next(&mut self) -> Option<Kernel> {
        let cur = self.next?;
        self.next = if cur == self.full { None } else { Some((cur.wrapping_sub(self.full)) & self.full) };
        Some(Kernel(cur))
    }
}

/// Every subset of an `n`-point carrier, `∅` first.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Kernel> + Clone {
    (0..1u32 << n).map(Kernel)
}

/// Every nonempty subset of an `n`-point carrier, i.e. every filter kernel.
pub fn nonempty_subsets(n: usize) -> impl Iterator<Item = Kernel> + Clone {
    (1..1u32 << n).map(Kernel)
}

/// Ordered, distinct point labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    labels: Vec<String>,
}

impl Carrier {
    pub fn new<I, S>(labels: I) -> Result<Carrier, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if labels.len() > MAX_POINTS {
            return Err(Error::CarrierTooLarge { size: labels.len(), max: MAX_POINTS });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Carrier { labels })
    }

    /// Points labelled `0`, `1`, ...
    pub fn numbered(n: usize) -> Carrier {
        Carrier::new((0..n).map(|i| alloc::format!("{i}"))).expect("valid numbered carrier")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, point: usize) -> &str {
        &self.labels[point]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> Kernel {
        Kernel::full(self.len())
    }

    /// Resolves labels into a set.
    pub fn set_of<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<Kernel, Error> {
        labels.into_iter().try_fold(Kernel::EMPTY, |acc, l| {
            self.index_of(l).map(|p| acc.with(p)).ok_or_else(|| Error::UnknownPoint(String::from(l)))
        })
    }

    /// `{a,b}` rendering of a subset.
    pub fn format_set(&self, set: Kernel) -> String {
        let mut s = String::from("{");
        for (i, p) in set.points().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&self.labels[p]);
        }
        s.push('}');
        s
    }
}

/// A finite family of subsets, kept sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SetFamily(Vec<Kernel>);

impl SetFamily {
    pub fn new<I: IntoIterator<Item = Kernel>>(members: I) -> SetFamily {
        let mut v: Vec<Kernel> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        SetFamily(v)
    }

    pub fn empty() -> SetFamily {
        SetFamily(Vec::new())
    }

    pub fn single(set: Kernel) -> SetFamily {
        SetFamily(alloc::vec![set])
    }

    pub fn members(&self) -> &[Kernel] {
        &self.0
    }

    pub fn iter(&self) -> core::iter::Copied<core::slice::Iter<'_, Kernel>> {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, set: Kernel) -> bool {
        self.0.binary_search(&set).is_ok()
    }

    pub fn is_subfamily(&self, other: &SetFamily) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    /// Union of all members (`∅` for the empty family).
    pub fn union_all(&self) -> Kernel {
        self.iter().fold(Kernel::EMPTY, Kernel::union)
    }

    /// Whether `set` meets every member.
    pub fn is_met_by(&self, set: Kernel) -> bool {
        self.iter().all(|m| m.meets(set))
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl FromIterator<Kernel> for SetFamily {
    fn from_iter<I: IntoIterator<Item = Kernel>>(iter: I) -> Self {
        SetFamily::new(iter)
    }
}

/// `𝒜^#`: every subset of the `n`-point carrier meeting every member.
pub fn grill(family: &SetFamily, n: usize) -> SetFamily {
    SetFamily(all_subsets(n).filter(|&b| family.is_met_by(b)).collect())
}

/// `𝒜^↑` within the `n`-point carrier.
pub fn isotone_hull(family: &SetFamily, n: usize) -> SetFamily {
    SetFamily(all_subsets(n).filter(|&b| family.iter().any(|a| a.is_subset(b))).collect())
}

/// Whether every member of `a` meets every member of `b`.
pub fn mesh(a: &SetFamily, b: &SetFamily) -> bool {
    a.iter().all(|x| b.is_met_by(x))
}

/// Kernel of the reduction of a hyperspace filter with kernel family `family`:
/// the union of the family. May be empty (the degenerate reduction).
pub fn rdc(family: &SetFamily) -> Kernel {
    family.union_all()
}

/// `eF`: the members of `closed` contained in `f`.
pub fn erect(f: Kernel, closed: &SetFamily) -> SetFamily {
    SetFamily(closed.iter().filter(|c| c.is_subset(f)).collect())
}

/// Whether every member of `closed` inside `⋃family` belongs to `family`.
pub fn is_saturated(family: &SetFamily, closed: &SetFamily) -> bool {
    let top = family.union_all();
    closed.iter().filter(|c| c.is_subset(top)).all(|c| family.contains(c))
}

/// A total map from points to nonempty kernels (a filter-valued map).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectorMap(Vec<Kernel>);

impl SelectorMap {
    pub fn new(images: Vec<Kernel>) -> Result<SelectorMap, Error> {
        if images.iter().any(|k| k.is_empty()) {
            return Err(Error::EmptyKernel);
        }
        Ok(SelectorMap(images))
    }

    pub fn image(&self, point: usize) -> Kernel {
        self.0[point]
    }

    pub fn images(&self) -> &[Kernel] {
        &self.0
    }
}

/// Kernel of the contour `𝒢(𝓕)` for the principal filter of `f`.
pub fn contour_kernel(g: &SelectorMap, f: Kernel) -> Kernel {
    f.points().fold(Kernel::EMPTY, |acc, t| acc.union(g.image(t)))
}

/// Inclusion-minimal nonempty sets meeting every member of `family`.
///
/// Incremental hypergraph dualization: after each member the candidate
/// transversals are extended by one of its points and pruned to the minimal
/// ones. Empty when `∅ ∈ family`; all singletons when `family` is empty.
pub fn minimal_transversals(family: &SetFamily, n: usize) -> SetFamily {
    if family.contains(Kernel::EMPTY) {
        return SetFamily::empty();
    }
    if family.is_empty() {
        return SetFamily((0..n).map(Kernel::singleton).collect());
    }
    let mut current: Vec<Kernel> = alloc::vec![Kernel::EMPTY];
    for member in family.iter() {
        let mut next = Vec::new();
        for &t in &current {
            if t.meets(member) {
                next.push(t);
            } else {
                next.extend(member.points().map(|p| t.with(p)));
            }
        }
        current = minimal_elements(next);
    }
    SetFamily::new(current)
}

/// Inclusion-minimal members of a collection.
pub fn minimal_elements(mut sets: Vec<Kernel>) -> Vec<Kernel> {
    sets.sort_unstable_by_key(|k| (k.len(), k.bits()));
    sets.dedup();
    let mut out: Vec<Kernel> = Vec::with_capacity(sets.len());
    for s in sets {
        if !out.iter().any(|m| m.is_subset(s)) {
            out.push(s);
        }
    }
    out
}

/// Inclusion-maximal members of a collection.
pub fn maximal_elements(mut sets: Vec<Kernel>) -> Vec<Kernel> {
    sets.sort_unstable_by_key(|k| (core::cmp::Reverse(k.len()), k.bits()));
    sets.dedup();
    let mut out: Vec<Kernel> = Vec::with_capacity(sets.len());
    for s in sets {
        if !out.iter().any(|m| s.is_subset(*m)) {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn k(points: &[usize]) -> Kernel {
        Kernel::from_points(points.iter().copied())
    }

    fn fam(sets: &[&[usize]]) -> SetFamily {
        sets.iter().map(|s| k(s)).collect()
    }

    #[test]
    fn grill_examples() {
        // carrier {a, b} = {0, 1}
        assert_eq!(grill(&fam(&[&[0]]), 2), fam(&[&[0], &[0, 1]]));
        assert_eq!(grill(&SetFamily::empty(), 2).len(), 4);
        assert!(grill(&fam(&[&[]]), 2).is_empty());
    }

    #[test]
    fn mesh_examples() {
        assert!(mesh(&fam(&[&[0]]), &fam(&[&[0, 1]])));
        assert!(!mesh(&fam(&[&[0]]), &fam(&[&[1]])));
    }

    #[test]
    fn rdc_examples() {
        assert_eq!(rdc(&fam(&[&[0], &[1]])), k(&[0, 1]));
        assert_eq!(rdc(&fam(&[&[]])), Kernel::EMPTY);
    }

    #[test]
    fn erect_and_saturation_on_three_points() {
        // closed sets ∅, {c}, {b,c}, X with a=0, b=1, c=2
        let closed = fam(&[&[], &[2], &[1, 2], &[0, 1, 2]]);
        assert_eq!(erect(k(&[1, 2]), &closed), fam(&[&[], &[2], &[1, 2]]));
        assert_eq!(erect(Kernel::EMPTY, &closed), fam(&[&[]]));
        assert!(is_saturated(&fam(&[&[], &[2]]), &closed));
        assert!(!is_saturated(&fam(&[&[1, 2]]), &closed));
    }

    #[test]
    fn erected_sets_are_saturated_exhaustively() {
        for n in 1..=3 {
            // every family containing ∅ and X is a candidate closed lattice here
            for closed_bits in 0u64..(1 << (1 << n)) {
                let closed: SetFamily = all_subsets(n).filter(|s| closed_bits >> s.index() & 1 == 1).collect();
                for f in all_subsets(n) {
                    let e = erect(f, &closed);
                    assert!(is_saturated(&e, &closed));
                }
            }
        }
    }

    #[test]
    fn contour_examples() {
        let constant = SelectorMap::new(vec![k(&[0]); 2]).unwrap();
        assert_eq!(contour_kernel(&constant, k(&[0, 1])), k(&[0]));
        let identity = SelectorMap::new(vec![k(&[0]), k(&[1]), k(&[2])]).unwrap();
        assert_eq!(contour_kernel(&identity, k(&[0, 2])), k(&[0, 2]));
        assert!(SelectorMap::new(vec![Kernel::EMPTY]).is_err());
    }

    #[test]
    fn transversal_examples() {
        // {{a,b},{b,c}} → {{b},{a,c}}
        let t = minimal_transversals(&fam(&[&[0, 1], &[1, 2]]), 3);
        assert_eq!(t, fam(&[&[1], &[0, 2]]));
        assert!(minimal_transversals(&fam(&[&[]]), 3).is_empty());
        assert_eq!(minimal_transversals(&SetFamily::empty(), 2), fam(&[&[0], &[1]]));
    }

    #[test]
    fn subsets_enumeration() {
        let s: Vec<Kernel> = k(&[0, 2]).subsets().collect();
        assert_eq!(s, vec![Kernel::EMPTY, k(&[0]), k(&[2]), k(&[0, 2])]);
        assert_eq!(Kernel::EMPTY.subsets().count(), 1);
        assert_eq!(k(&[1, 3]).points().collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn carrier_validation() {
        assert!(Carrier::new(Vec::<String>::new()).is_err());
        assert_eq!(Carrier::new(["a", "a"]), Err(Error::DuplicateLabel("a".into())));
        let c = Carrier::new(["a", "b", "c"]).unwrap();
        assert_eq!(c.set_of(["c", "a"]).unwrap(), k(&[0, 2]));
        assert!(c.set_of(["z"]).is_err());
        assert_eq!(c.format_set(k(&[1, 2])), "{b,c}");
    }

    fn arb_family(n: usize) -> impl Strategy<Value = SetFamily> {
        proptest::collection::vec(0u32..(1 << n), 0..5).prop_map(|v| v.into_iter().map(Kernel::from_bits).collect())
    }

    proptest! {
        #[test]
        fn transversals_match_brute_force(f in arb_family(5)) {
            let n = 5;
            let meeting: Vec<Kernel> =
                nonempty_subsets(n).filter(|&s| f.is_met_by(s)).collect();
            let brute = SetFamily::new(minimal_elements(meeting.clone()));
            let t = minimal_transversals(&f, n);
            prop_assert_eq!(&t, &brute);
            for m in &meeting {
                prop_assert!(t.iter().any(|x| x.is_subset(*m)));
            }
        }

        #[test]
        fn mesh_is_symmetric_and_matches_grill(a in arb_family(4), b in arb_family(4)) {
            prop_assert_eq!(mesh(&a, &b), mesh(&b, &a));
            prop_assert_eq!(mesh(&a, &b), a.is_subfamily(&grill(&b, 4)));
        }

        #[test]
        fn grill_is_antitone(a in arb_family(4), extra in arb_family(4)) {
            let b: SetFamily = a.iter().chain(extra.iter()).collect();
            prop_assert!(grill(&b, 4).is_subfamily(&grill(&a, 4)));
        }

        #[test]
        fn double_grill_is_isotone_hull(a in arb_family(4)) {
            let hull = isotone_hull(&a, 4);
            prop_assert_eq!(grill(&grill(&hull, 4), 4), hull);
        }

        #[test]
        fn rdc_is_least_union_over_superfamilies(a in arb_family(3)) {
            // members of the hyperspace filter: all families containing `a`
            let universe: Vec<Kernel> = all_subsets(3).collect();
            let mut least: Option<Kernel> = None;
            for extra in 0u32..(1 << universe.len()) {
                let fam: SetFamily = a.iter()
                    .chain((0..universe.len()).filter(|i| extra >> i & 1 == 1).map(|i| universe[i]))
                    .collect();
                let u = fam.union_all();
                if least.is_none_or(|l| u.is_subset(l)) {
                    least = Some(u);
                }
            }
            prop_assert_eq!(least.unwrap(), rdc(&a));
        }

        #[test]
        fn contour_matches_literal_construction(
            imgs in proptest::collection::vec(1u32..16, 4),
            f in 1u32..16,
        ) {
            let n = 4;
            let g = SelectorMap::new(imgs.iter().map(|&b| Kernel::from_bits(b)).collect()).unwrap();
            let f = Kernel::from_bits(f);
            // ⋃_{F ⊇ f} ⋂_{t∈F} 𝒢(t) as an explicit up-closed family of subsets
            let mut contour = 0u64;
            for big in all_subsets(n).filter(|s| f.is_subset(*s)) {
                let mut inter = u64::MAX >> (64 - (1 << n));
                for t in big.points() {
                    let filt: u64 = all_subsets(n)
                        .filter(|s| g.image(t).is_subset(*s))
                        .fold(0, |acc, s| acc | 1 << s.index());
                    inter &= filt;
                }
                contour |= inter;
            }
            let kernel = all_subsets(n)
                .filter(|s| contour >> s.index() & 1 == 1)
                .fold(Kernel::full(n), Kernel::intersection);
            prop_assert!(contour >> kernel.index() & 1 == 1, "contour is principal");
            prop_assert_eq!(kernel, contour_kernel(&g, f));
        }

        #[test]
        fn contour_is_monotone(
            imgs in proptest::collection::vec(1u32..16, 4),
            grow in proptest::collection::vec(0u32..16, 4),
            f in 1u32..16, f2 in 0u32..16,
        ) {
            let g = SelectorMap::new(imgs.iter().map(|&b| Kernel::from_bits(b)).collect()).unwrap();
            let g2 = SelectorMap::new(
                imgs.iter().zip(&grow).map(|(&b, &e)| Kernel::from_bits(b | e)).collect(),
            ).unwrap();
            let f = Kernel::from_bits(f);
            let bigger = f.union(Kernel::from_bits(f2));
            prop_assert!(contour_kernel(&g, f).is_subset(contour_kernel(&g, bigger)));
            prop_assert!(contour_kernel(&g, f).is_subset(contour_kernel(&g2, f)));
        }
    }
}
