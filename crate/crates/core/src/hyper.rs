//! Convergence approach structures on the closed sets of a finite
//! convergence approach space.
//!
//! Filters carry the same kernel-family representation as for convergence
//! hyperspaces ([`HyperFilter`]). The filter carrier and the limit carrier are
//! the `c(λ)`-closed sets by default, the `r(λ)`-closed sets in
//! [`CarrierMode::RClosed`], and in [`CarrierMode::All`] filters may contain
//! any subset while limits stay `c(λ)`-closed.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::cap::CapSpace;
use crate::conv::hyper::{CarrierMode, HyperFilter};
use crate::conv::ConvSpace;
use crate::frames::{self, value_grid, DClosure};
use crate::setcalc::{all_subsets, minimal_transversals, nonempty_subsets, Carrier, Kernel, SetFamily};
use crate::values::{inf, oslash, sup, Value};
use crate::Error;

/// Largest hyperspace carrier for which a full structure table is built.
pub const MAX_STRUCTURE_POINTS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Structure {
    /// Upper Kuratowski.
    UK,
    /// Lower Kuratowski.
    LK,
    /// Kuratowski: `uK ∨ lK`.
    K,
    /// Upper Fell.
    UF,
    /// `uF ∨ lK`.
    FBar,
    /// Fell: `uF ∨ lV`.
    F,
    /// Lower Vietoris.
    LV,
    /// Upper Vietoris.
    UV,
    /// Upper Fell generated by the frame of `μ_B^∧`.
    LuF,
}

impl Structure {
    pub const ALL: [Structure; 9] = [
        Structure::UK,
        Structure::LK,
        Structure::K,
        Structure::UF,
        Structure::FBar,
        Structure::F,
        Structure::LV,
        Structure::UV,
        Structure::LuF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Structure::UK => "uK",
            Structure::LK => "lK",
            Structure::K => "K",
            Structure::UF => "uF",
            Structure::FBar => "Fbar",
            Structure::F => "F",
            Structure::LV => "lV",
            Structure::UV => "uV",
            Structure::LuF => "LuF",
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Structure::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownStructure(alloc::string::String::from(s)))
    }
}

/// `m(H) = ⋁_{t∈H} ⋀_{x∈H} d(t, x)`; `0` for empty `H`.
pub fn measure_compactness(base: &CapSpace, h: Kernel) -> Value {
    sup(h.points().map(|t| inf(h.points().map(|x| base.d(t, x)))))
}

#[derive(Clone, Debug)]
pub struct HyperSpace {
    base: CapSpace,
    mode: CarrierMode,
    points: Vec<Kernel>,
    limits: SetFamily,
    closure: DClosure,
    grid: Vec<Value>,
    compact_closed: Vec<Kernel>,
}

impl HyperSpace {
    /// Requires a centered base.
    pub fn new(base: CapSpace, mode: CarrierMode) -> Result<HyperSpace, Error> {
        if let Some(x) = (0..base.len()).find(|&x| !base.d(x, x).is_zero()) {
            return Err(Error::Centered(x));
        }
        let c_closed = base.coreflect_c().closed_sets();
        let limits = match mode {
            CarrierMode::RClosed => base.reflect_r().closed_sets(),
            _ => c_closed.clone(),
        };
        let points = match mode {
            CarrierMode::All => all_subsets(base.len()).collect(),
            _ => limits.members().to_vec(),
        };
        let compact_closed = c_closed.iter().filter(|&b| measure_compactness(&base, b).is_zero()).collect();
        Ok(HyperSpace {
            closure: DClosure::new(&base),
            grid: value_grid(&base),
            base,
            mode,
            points,
            limits,
            compact_closed,
        })
    }

    pub fn base(&self) -> &CapSpace {
        &self.base
    }

    pub fn mode(&self) -> CarrierMode {
        self.mode
    }

    /// Sets a filter may contain, ascending by bitmask.
    pub fn points(&self) -> &[Kernel] {
        &self.points
    }

    /// Sets that may be limits.
    pub fn limits(&self) -> &SetFamily {
        &self.limits
    }

    pub fn d_closure(&self) -> &DClosure {
        &self.closure
    }

    /// Values of the cone candidates.
    pub fn grid(&self) -> &[Value] {
        &self.grid
    }

    /// `c(λ)`-closed sets of compactness measure `0`.
    pub fn compact_closed(&self) -> &[Kernel] {
        &self.compact_closed
    }

    pub fn filter(&self, family: SetFamily) -> Result<HyperFilter, Error> {
        if let Some(bad) = family.iter().find(|c| self.points.binary_search(c).is_err()) {
            return Err(Error::NotInHyperCarrier(bad));
        }
        HyperFilter::new(family)
    }

    pub fn require_limit(&self, a: Kernel) -> Result<(), Error> {
        if self.limits.contains(a) {
            Ok(())
        } else {
            Err(Error::NotInHyperCarrier(a))
        }
    }

    /// `adh_λ(rdc 𝔉)`.
    pub fn upper_adherence(&self, f: &HyperFilter) -> Vec<Value> {
        self.base.adh_set(f.rdc())
    }

    /// `adh_λ(rdc 𝔉^#)`: infimum over the transversals of the kernel family.
    pub fn lower_adherence(&self, f: &HyperFilter) -> Vec<Value> {
        self.base.adh(f.family())
    }

    pub fn lambda_uk(&self, f: &HyperFilter, a: Kernel) -> Result<Value, Error> {
        self.require_limit(a)?;
        let adh = self.upper_adherence(f);
        Ok(sup(a.complement(self.base.len()).points().map(|x| reciprocal(adh[x]))))
    }

    pub fn lambda_lk(&self, f: &HyperFilter, a: Kernel) -> Result<Value, Error> {
        self.require_limit(a)?;
        if a.is_empty() {
            return Ok(Value::ZERO);
        }
        let adh = self.lower_adherence(f);
        Ok(sup(a.points().map(|x| adh[x])))
    }

    pub fn lambda_k(&self, f: &HyperFilter, a: Kernel) -> Result<Value, Error> {
        Ok(self.lambda_uk(f, a)?.join(self.lambda_lk(f, a)?))
    }

    /// `⋁ 1 ⊘ m(H)` over `H ⊆ A^c` meeting `rdc 𝔉`.
    pub fn lambda_uf(&self, f: &HyperFilter, a: Kernel) -> Result<Value, Error> {
        self.require_limit(a)?;
        let r = f.rdc();
        Ok(sup(a
            .complement(self.base.len())
            .subsets()
            .filter(|h| h.meets(r))
            .map(|h| reciprocal(measure_compactness(&self.base, h)))))
    }

    pub fn lambda(&self, s: Structure, f: &HyperFilter, a: Kernel) -> Result<Value, Error> {
        match s {
            Structure::UK => self.lambda_uk(f, a),
            Structure::LK => self.lambda_lk(f, a),
            Structure::K => self.lambda_k(f, a),
            Structure::UF => self.lambda_uf(f, a),
            Structure::FBar => Ok(self.lambda_uf(f, a)?.join(self.lambda_lk(f, a)?)),
            Structure::F => Ok(self.lambda_uf(f, a)?.join(frames::lambda_lv(self, f, a)?)),
            Structure::LV => frames::lambda_lv(self, f, a),
            Structure::UV => frames::lambda_uv(self, f, a),
            Structure::LuF => frames::lambda_luf(self, f, a),
        }
    }

    /// Values of a structure at every limit, in the order of [`HyperSpace::limits`].
    pub fn lambda_row(&self, s: Structure, f: &HyperFilter) -> Vec<Value> {
        self.limits.iter().map(|a| self.lambda(s, f, a).expect("limit carrier member")).collect()
    }

    /// Kernel family selected by a subset of carrier indices.
    pub fn family_of(&self, hk: Kernel) -> SetFamily {
        hk.points().map(|i| self.points[i]).collect()
    }

    /// Carrier indices of a kernel family.
    pub fn hyper_kernel(&self, f: &HyperFilter) -> Kernel {
        Kernel::from_points(f.family().iter().map(|c| self.points.binary_search(&c).expect("member of carrier")))
    }

    fn hyper_carrier(&self) -> Result<Carrier, Error> {
        if self.mode == CarrierMode::All {
            return Err(Error::MixedHyperCarrier);
        }
        if self.points.len() > MAX_STRUCTURE_POINTS {
            return Err(Error::CarrierTooLarge { size: self.points.len(), max: MAX_STRUCTURE_POINTS });
        }
        Carrier::new(self.points.iter().map(|&p| self.base.carrier().format_set(p)))
    }

    /// The structure as a space whose points are the carrier sets.
    pub fn structure_space(&self, s: Structure) -> Result<CapSpace, Error> {
        let carrier = self.hyper_carrier()?;
        CapSpace::from_fn(carrier, |hk, i| {
            let f = HyperFilter::new(self.family_of(hk)).expect("nonempty kernel");
            self.lambda(s, &f, self.points[i]).expect("limit carrier member")
        })
    }

    /// Level-`ε` convergence of the Kuratowski towers, read off adherences:
    /// `A ⊆ {adh rdc 𝔉^# ≤ ε}` for `lK`, `{adh rdc 𝔉 < 1 ⊘ ε} ⊆ A` for `uK`.
    pub fn tower_converges(&self, s: Structure, eps: Value, f: &HyperFilter, a: Kernel) -> Result<bool, Error> {
        self.require_limit(a)?;
        match s {
            Structure::LK => {
                let adh = self.lower_adherence(f);
                Ok(a.points().all(|x| adh[x] <= eps))
            }
            Structure::UK => {
                let adh = self.upper_adherence(f);
                let cut = reciprocal(eps);
                Ok((0..self.base.len()).filter(|&x| adh[x] < cut).all(|x| a.contains(x)))
            }
            _ => Err(Error::MixedHyperCarrier),
        }
    }

    /// A tower level as a convergence on the hyperspace carrier.
    pub fn tower_layer(&self, s: Structure, eps: Value) -> Result<ConvSpace, Error> {
        let carrier = self.hyper_carrier()?;
        let m = self.points.len();
        let mut lim = alloc::vec![Kernel::EMPTY; 1 << m];
        for hk in nonempty_subsets(m) {
            let f = HyperFilter::new(self.family_of(hk)).expect("nonempty kernel");
            let mut out = Kernel::EMPTY;
            for (i, &a) in self.points.iter().enumerate() {
                if self.tower_converges(s, eps, &f, a)? {
                    out = out.with(i);
                }
            }
            lim[hk.index()] = out;
        }
        ConvSpace::new(carrier, lim)
    }

    /// Transversals of the kernel family, which index the filters meshing
    /// `rdc 𝔉^#`.
    pub fn lower_meshing(&self, f: &HyperFilter) -> SetFamily {
        minimal_transversals(f.family(), self.base.len())
    }
}

fn reciprocal(v: Value) -> Value {
    oslash(Value::ONE, v).expect("finite numerator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cap::tests::{q2, v};

    fn k(p: &[usize]) -> Kernel {
        Kernel::from_points(p.iter().copied())
    }

    #[test]
    fn q2_kuratowski_values() {
        let h = HyperSpace::new(q2(), CarrierMode::Closed).unwrap();
        assert_eq!(h.points(), [k(&[]), k(&[0]), k(&[1]), k(&[0, 1])]);
        let f = h.filter(SetFamily::single(k(&[0]))).unwrap();
        assert_eq!(h.lambda_uk(&f, k(&[0])).unwrap(), v("1"));
        assert_eq!(h.lambda_uk(&f, k(&[0, 1])).unwrap(), v("0"));
        assert_eq!(h.lambda_lk(&f, k(&[1])).unwrap(), v("1"));
        assert_eq!(h.lambda_lk(&f, k(&[0])).unwrap(), v("0"));
        assert_eq!(h.lambda_k(&f, k(&[0])).unwrap(), v("1"));
        assert_eq!(h.lambda_uf(&f, Kernel::EMPTY).unwrap(), v("inf"));
        assert_eq!(h.lambda_uf(&f, k(&[0])).unwrap(), v("0"));
    }

    #[test]
    fn compactness_measure() {
        let q = q2();
        assert_eq!(measure_compactness(&q, k(&[0, 1])), v("0"));
        assert_eq!(measure_compactness(&q, k(&[1])), v("0"));
        assert_eq!(measure_compactness(&q, Kernel::EMPTY), v("0"));
    }

    #[test]
    fn towers_match_cuts() {
        let h = HyperSpace::new(q2(), CarrierMode::Closed).unwrap();
        for s in [Structure::UK, Structure::LK] {
            let sp = h.structure_space(s).unwrap();
            for eps in [v("0"), v("1/2"), v("1"), v("2"), v("inf")] {
                assert_eq!(h.tower_layer(s, eps).unwrap(), sp.layer(eps), "{s} at {eps}");
            }
        }
    }

    #[test]
    fn structure_names_round_trip() {
        for s in Structure::ALL {
            assert_eq!(s.name().parse::<Structure>().unwrap(), s);
        }
    }
}
