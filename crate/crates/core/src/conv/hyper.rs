//! Hyperspace convergences on the closed sets of a finite convergence space.
//!
//! A filter on the hyperspace is principal, carried by its kernel family `𝒜`
//! (a set of subsets of the base carrier). Its members are the families
//! containing `𝒜`, so a hyperspace family `𝓗` meshes the filter iff it meets `𝒜`.

use alloc::vec::Vec;

use super::ConvSpace;
use crate::setcalc::{all_subsets, minimal_transversals, nonempty_subsets, rdc, Carrier, Kernel, SetFamily};
use crate::Error;

/// Which subsets of the base carrier a hyperspace filter may contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CarrierMode {
    /// Closed sets of the base (the closed sets of `c(λ)` for approach bases).
    Closed,
    /// Closed sets of `r(λ)`; for a convergence base this equals `Closed`.
    RClosed,
    /// Every subset; limits are still closed sets.
    All,
}

/// A filter on a hyperspace carrier, represented by its kernel family.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HyperFilter {
    family: SetFamily,
}

impl HyperFilter {
    pub fn new(family: SetFamily) -> Result<HyperFilter, Error> {
        if family.is_empty() {
            return Err(Error::EmptyHyperFilter);
        }
        Ok(HyperFilter { family })
    }

    /// `{A}↑`.
    pub fn principal(a: Kernel) -> HyperFilter {
        HyperFilter { family: SetFamily::single(a) }
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    /// Kernel of the reduction filter; may be empty.
    pub fn rdc(&self) -> Kernel {
        rdc(&self.family)
    }
}

/// The hyperspace convergences built from a convergence base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConvStructure {
    UpperKuratowski,
    LowerKuratowski,
    Kuratowski,
    LowerVietoris,
    UpperFell,
    Fell,
}

impl ConvStructure {
    pub const ALL: [ConvStructure; 6] = [
        ConvStructure::UpperKuratowski,
        ConvStructure::LowerKuratowski,
        ConvStructure::Kuratowski,
        ConvStructure::LowerVietoris,
        ConvStructure::UpperFell,
        ConvStructure::Fell,
    ];
}

#[derive(Clone, Debug)]
pub struct ConvHyperspace {
    base: ConvSpace,
    mode: CarrierMode,
    points: Vec<Kernel>,
    closed: SetFamily,
    open: SetFamily,
    compact: Vec<Kernel>,
}

impl ConvHyperspace {
    pub fn new(base: ConvSpace, mode: CarrierMode) -> ConvHyperspace {
        let closed = base.closed_sets();
        let open = base.open_sets();
        let points = match mode {
            CarrierMode::All => all_subsets(base.len()).collect(),
            _ => closed.members().to_vec(),
        };
        let compact = all_subsets(base.len()).filter(|&k| base.is_compact(k)).collect();
        ConvHyperspace { base, mode, points, closed, open, compact }
    }

    pub fn base(&self) -> &ConvSpace {
        &self.base
    }

    pub fn mode(&self) -> CarrierMode {
        self.mode
    }

    /// Sets a filter may contain.
    pub fn points(&self) -> &[Kernel] {
        &self.points
    }

    /// Sets that may be limits: the closed sets of the base.
    pub fn closed(&self) -> &SetFamily {
        &self.closed
    }

    pub fn compact_sets(&self) -> &[Kernel] {
        &self.compact
    }

    pub fn filter(&self, family: SetFamily) -> Result<HyperFilter, Error> {
        if let Some(bad) = family.iter().find(|c| self.points.binary_search(c).is_err()) {
            return Err(Error::NotInHyperCarrier(bad));
        }
        HyperFilter::new(family)
    }

    fn require_limit(&self, a: Kernel) -> Result<(), Error> {
        if self.closed.contains(a) {
            Ok(())
        } else {
            Err(Error::NotClosed(a))
        }
    }

    /// `adh(rdc 𝔉) ⊆ A`.
    pub fn lim_uk(&self, f: &HyperFilter, a: Kernel) -> Result<bool, Error> {
        self.require_limit(a)?;
        Ok(self.base.adh_set(f.rdc()).is_subset(a))
    }

    /// `A ⊆ adh(rdc 𝔉^#)`; the filters meshing `rdc 𝔉^#` are those whose
    /// kernels are transversals of `𝒜`.
    pub fn lim_lk(&self, f: &HyperFilter, a: Kernel) -> Result<bool, Error> {
        self.require_limit(a)?;
        Ok(a.is_subset(self.lower_adherence(f)))
    }

    /// `adh(rdc 𝔉^#)` of the base.
    pub fn lower_adherence(&self, f: &HyperFilter) -> Kernel {
        minimal_transversals(f.family(), self.base.len())
            .iter()
            .fold(Kernel::EMPTY, |acc, k| acc.union(self.base.lim(k)))
    }

    pub fn lim_k(&self, f: &HyperFilter, a: Kernel) -> Result<bool, Error> {
        Ok(self.lim_uk(f, a)? && self.lim_lk(f, a)?)
    }

    /// Every open `O` meeting `A` has `O⁻ ∈ 𝔉`, i.e. meets every member of `𝒜`.
    pub fn lim_lv(&self, f: &HyperFilter, a: Kernel) -> Result<bool, Error> {
        self.require_limit(a)?;
        Ok(self.open.iter().filter(|o| o.meets(a)).all(|o| f.family().is_met_by(o)))
    }

    /// Every compact `K` missing `A` has `K⁺ ∈ 𝔉`, i.e. misses every member of `𝒜`.
    pub fn lim_uf(&self, f: &HyperFilter, a: Kernel) -> Result<bool, Error> {
        self.require_limit(a)?;
        Ok(self.compact.iter().filter(|k| !k.meets(a)).all(|&k| f.family().iter().all(|c| !c.meets(k))))
    }

    /// Convergence in the topology generated by the union of the upper-Fell
    /// and lower-Vietoris subbases, computed from neighbourhood kernels.
    pub fn lim_fell(&self, f: &HyperFilter, a: Kernel) -> Result<bool, Error> {
        self.require_limit(a)?;
        let nbhd = self.fell_neighbourhood(a);
        Ok(f.family().iter().all(|c| nbhd.contains(c)))
    }

    /// Intersection of the Fell subbasic sets containing `a`, as a set of
    /// carrier points.
    pub fn fell_neighbourhood(&self, a: Kernel) -> SetFamily {
        self.points
            .iter()
            .copied()
            .filter(|&c| {
                self.compact.iter().filter(|k| !k.meets(a)).all(|k| !k.meets(c))
                    && self.open.iter().filter(|o| o.meets(a)).all(|o| o.meets(c))
            })
            .collect()
    }

    pub fn converges(&self, s: ConvStructure, f: &HyperFilter, a: Kernel) -> Result<bool, Error> {
        match s {
            ConvStructure::UpperKuratowski => self.lim_uk(f, a),
            ConvStructure::LowerKuratowski => self.lim_lk(f, a),
            ConvStructure::Kuratowski => self.lim_k(f, a),
            ConvStructure::LowerVietoris => self.lim_lv(f, a),
            ConvStructure::UpperFell => self.lim_uf(f, a),
            ConvStructure::Fell => self.lim_fell(f, a),
        }
    }

    /// All closed limits of `f`.
    pub fn limits(&self, s: ConvStructure, f: &HyperFilter) -> SetFamily {
        self.closed.iter().filter(|&a| self.converges(s, f, a).expect("closed limit")).collect()
    }

    /// Kernel family of the hyperspace filter whose kernel is the set of
    /// carrier points selected by `hk`.
    pub fn family_of(&self, hk: Kernel) -> SetFamily {
        hk.points().map(|i| self.points[i]).collect()
    }

    /// The structure as a convergence space on the hyperspace carrier, whose
    /// points are labelled by their sets. Requires the filter carrier to equal
    /// the limit carrier.
    pub fn as_conv_space(&self, s: ConvStructure) -> Result<ConvSpace, Error> {
        if self.mode == CarrierMode::All {
            return Err(Error::MixedHyperCarrier);
        }
        let labels = self.points.iter().map(|&p| self.base.carrier().format_set(p));
        let carrier = Carrier::new(labels)?;
        let m = self.points.len();
        let mut lim = alloc::vec![Kernel::EMPTY; 1 << m];
        for hk in nonempty_subsets(m) {
            let f = HyperFilter { family: self.family_of(hk) };
            lim[hk.index()] =
                Kernel::from_points((0..m).filter(|&i| self.converges(s, &f, self.points[i]).expect("closed limit")));
        }
        ConvSpace::new(carrier, lim)
    }

    /// Kernel family of the vicinity filter of `A` for the lower-Kuratowski
    /// convergence over a pretopological base: `⋂_{x∈A} v(x)⁻`.
    pub fn lk_vicinity(&self, a: Kernel) -> SetFamily {
        let v = self.base.vicinities();
        self.points.iter().copied().filter(|&c| a.points().all(|x| v[x].meets(c))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conv::tests::p3;

    fn k(p: &[usize]) -> Kernel {
        Kernel::from_points(p.iter().copied())
    }

    #[test]
    fn p3_example_all_mode() {
        let h = ConvHyperspace::new(p3(), CarrierMode::All);
        let f = h.filter(SetFamily::single(k(&[0]))).unwrap();
        assert_eq!(h.limits(ConvStructure::LowerKuratowski, &f), SetFamily::single(Kernel::EMPTY));
        assert_eq!(h.limits(ConvStructure::LowerVietoris, &f), h.closed().clone());
        assert!(!h.lim_uk(&f, Kernel::EMPTY).unwrap());
        assert!(h.lim_uk(&f, k(&[0, 1, 2])).unwrap());
        assert_eq!(h.lim_uk(&f, k(&[0])), Err(Error::NotClosed(k(&[0]))));
    }

    #[test]
    fn closed_mode_rejects_non_closed_members() {
        let h = ConvHyperspace::new(p3(), CarrierMode::Closed);
        assert_eq!(h.filter(SetFamily::single(k(&[0]))), Err(Error::NotInHyperCarrier(k(&[0]))));
        assert!(h.as_conv_space(ConvStructure::Kuratowski).is_ok());
    }

    #[test]
    fn principal_filters_converge_to_their_point() {
        let h = ConvHyperspace::new(p3(), CarrierMode::Closed);
        for &c in h.closed().members() {
            let f = HyperFilter::principal(c);
            assert!(h.lim_uk(&f, c).unwrap());
            assert!(h.lim_lk(&f, c).unwrap());
            assert!(h.lim_lv(&f, c).unwrap());
        }
    }

    #[test]
    fn p3_compact_singleton_gives_open_upper_set() {
        let h = ConvHyperspace::new(p3(), CarrierMode::Closed);
        assert!(h.compact_sets().contains(&k(&[0])));
        let plus: Vec<Kernel> = h.points().iter().copied().filter(|c| !c.meets(k(&[0]))).collect();
        assert_eq!(plus, [k(&[]), k(&[2]), k(&[1, 2])]);
    }
}
