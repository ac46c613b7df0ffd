//! The value lattice `[0, ∞]` with exact rational arithmetic.
//!
//! Every structure in this crate takes values here. Finite values are
//! nonnegative rationals in lowest terms; `Infinite` sits strictly above all of
//! them. Addition saturates at infinity, so `x + ∞ = ∞` for every `x`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, Zero};

use crate::fault::{self, Fault};
use crate::Error;

/// A point of `[0, ∞]`.
///
/// The derived order puts every `Finite` below `Infinite` and compares finite
/// values as rationals, which is exactly the order of the extended half-line.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Finite(Ratio<u64>),
    Infinite,
}

impl Value {
    pub const ZERO: Value = Value::Finite(Ratio::new_raw(0, 1));
    pub const ONE: Value = Value::Finite(Ratio::new_raw(1, 1));
    pub const INFINITY: Value = Value::Infinite;

    /// Builds `numer / denom`, reducing to lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn ratio(numer: u64, denom: u64) -> Value {
        Value::Finite(Ratio::new(numer, denom))
    }

    pub fn integer(n: u64) -> Value {
        Value::Finite(Ratio::from_integer(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Value::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Finite(r) if r.is_zero())
    }

    pub fn as_ratio(&self) -> Option<Ratio<u64>> {
        match self {
            Value::Finite(r) => Some(*r),
            Value::Infinite => None,
        }
    }

    pub fn join(self, other: Value) -> Value {
        self.max(other)
    }

    pub fn meet(self, other: Value) -> Value {
        self.min(other)
    }

    /// Truncated difference `self ⊖ other`.
    pub fn trunc_sub(self, other: Value) -> Value {
        trunc_sub(self, other)
    }

    /// `1 ⊘ self`, the reciprocal with `1 ⊘ 0 = ∞` and `1 ⊘ ∞ = 0`.
    pub fn reciprocal(self) -> Value {
        match self {
            Value::Infinite => Value::ZERO,
            Value::Finite(r) if r.is_zero() => Value::Infinite,
            Value::Finite(r) => Value::Finite(r.recip()),
        }
    }

    /// Sum that reports rational overflow instead of panicking.
    pub fn checked_add(self, other: Value) -> Option<Value> {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => a.checked_add(&b).map(Value::Finite),
            _ => Some(Value::Infinite),
        }
    }
}

impl Default for Value {
    fn default() -> Self {
        Value::ZERO
    }
}

impl Add for Value {
    type Output = Value;

    /// Panics on `u64` overflow of the reduced fraction; values reachable from
    /// the bounded textual format stay far below that.
    fn add(self, other: Value) -> Value {
        self.checked_add(other).expect("rational overflow in Value addition")
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::integer(n)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Infinite => f.write_str("inf"),
            Value::Finite(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Value::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Largest numerator or denominator accepted by the textual form.
pub const MAX_LITERAL: u64 = 1 << 24;

impl FromStr for Value {
    type Err = Error;

    /// Accepts decimal integers, `p/q` fractions and `inf`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::ValueSyntax(String::from(s));
        if s == "inf" {
            return Ok(Value::Infinite);
        }
        let parse_part = |p: &str| -> Result<u64, Error> {
            if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let n: u64 = p.parse().map_err(|_| bad())?;
            if n > MAX_LITERAL {
                return Err(bad());
            }
            Ok(n)
        };
        match s.split_once('/') {
            None => Ok(Value::integer(parse_part(s)?)),
            Some((p, q)) => {
                let (p, q) = (parse_part(p)?, parse_part(q)?);
                if q == 0 {
                    return Err(bad());
                }
                Ok(Value::ratio(p, q))
            }
        }
    }
}

/// `x ⊖ y`: `(x − y) ∨ 0` on finite arguments, `∞` when only `x` is infinite,
/// and `0` whenever `y = ∞`.
pub fn trunc_sub(x: Value, y: Value) -> Value {
    match (x, y) {
        (_, Value::Infinite) => Value::ZERO,
        (Value::Infinite, Value::Finite(_)) => {
            if fault::is_active(Fault::TruncSubInfinity) {
                Value::ZERO
            } else {
                Value::Infinite
            }
        }
        (Value::Finite(a), Value::Finite(b)) => match a.cmp(&b) {
            Ordering::Greater => Value::Finite(a - b),
            _ => Value::ZERO,
        },
    }
}

/// `x ⊘ y` for finite `x`: `x / y` off `{0, ∞}`, `0` at `y = ∞`, `∞` at `y = 0`.
pub fn oslash(x: Value, y: Value) -> Result<Value, Error> {
    let Value::Finite(x) = x else {
        return Err(Error::OslashInfiniteNumerator);
    };
    Ok(match y {
        Value::Infinite => Value::ZERO,
        Value::Finite(r) if r.is_zero() => Value::Infinite,
        Value::Finite(r) => Value::Finite(x.checked_div(&r).expect("nonzero divisor")),
    })
}

/// Supremum of a finite collection; `0` for the empty one.
pub fn sup<I: IntoIterator<Item = Value>>(values: I) -> Value {
    values.into_iter().fold(Value::ZERO, Value::join)
}

/// Infimum of a finite collection; `∞` for the empty one.
pub fn inf<I: IntoIterator<Item = Value>>(values: I) -> Value {
    values.into_iter().fold(Value::Infinite, Value::meet)
}

/// Kernel of a principal filter on `[0, ∞]`: a nonempty finite set of values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueKernel(BTreeSet<Value>);

impl ValueKernel {
    pub fn new<I: IntoIterator<Item = Value>>(values: I) -> Result<Self, Error> {
        let set: BTreeSet<Value> = values.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyKernel);
        }
        Ok(ValueKernel(set))
    }

    pub fn min(&self) -> Value {
        *self.0.iter().next().expect("nonempty by construction")
    }

    pub fn iter(&self) -> impl Iterator<Item = &Value> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The canonical structure on `[0, ∞]` evaluated on the principal filter of
/// `kernel` at `v`.
///
/// Every set meeting the kernel has supremum at least `min(kernel)`, and the
/// singleton of the minimum attains it, so the infimum over the grill collapses
/// to `min(kernel)`.
pub fn lambda_v_eval(kernel: &ValueKernel, v: Value) -> Value {
    trunc_sub(v, kernel.min())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn v(s: &str) -> Value {
        s.parse().unwrap()
    }

    #[test]
    fn trunc_sub_cases() {
        assert_eq!(trunc_sub(v("3/2"), v("1")), v("1/2"));
        assert_eq!(trunc_sub(Value::INFINITY, Value::INFINITY), Value::ZERO);
        assert_eq!(trunc_sub(Value::INFINITY, v("5")), Value::INFINITY);
        assert_eq!(trunc_sub(v("1"), v("3")), Value::ZERO);
    }

    #[test]
    fn oslash_cases() {
        assert_eq!(oslash(v("1"), Value::ZERO).unwrap(), Value::INFINITY);
        assert_eq!(oslash(v("1"), Value::INFINITY).unwrap(), Value::ZERO);
        assert_eq!(oslash(v("1"), v("1/2")).unwrap(), v("2"));
        assert_eq!(oslash(Value::INFINITY, v("1")), Err(Error::OslashInfiniteNumerator));
    }

    #[test]
    fn lambda_v_examples() {
        let k = ValueKernel::new([v("0"), v("1")]).unwrap();
        assert_eq!(lambda_v_eval(&k, v("2")), v("2"));
        let k = ValueKernel::new([v("7/3")]).unwrap();
        assert_eq!(lambda_v_eval(&k, v("7/3")), Value::ZERO);
        let k = ValueKernel::new([Value::INFINITY]).unwrap();
        assert_eq!(lambda_v_eval(&k, v("3")), Value::ZERO);
        assert!(ValueKernel::new([]).is_err());
    }

    /// Brute force over every subset of a small value grid that meets the
    /// kernel: the infimum of their suprema.
    #[test]
    fn lambda_v_reduction_matches_grill_enumeration() {
        let grid = [v("0"), v("1/2"), v("1"), v("2"), Value::INFINITY];
        for kmask in 1u32..(1 << grid.len()) {
            let kernel: Vec<Value> = (0..grid.len()).filter(|i| kmask >> i & 1 == 1).map(|i| grid[i]).collect();
            let mut best = Value::INFINITY;
            for amask in 1u32..(1 << grid.len()) {
                if amask & kmask == 0 {
                    continue;
                }
                let top = (0..grid.len()).filter(|i| amask >> i & 1 == 1).map(|i| grid[i]).max().unwrap();
                best = best.min(top);
            }
            let vk = ValueKernel::new(kernel).unwrap();
            for &x in &grid {
                assert_eq!(lambda_v_eval(&vk, x), trunc_sub(x, best));
            }
        }
    }

    #[test]
    fn text_form() {
        assert_eq!(v("4/6").to_string(), "2/3");
        assert_eq!(v(" 12 ").to_string(), "12");
        assert_eq!(v("inf"), Value::INFINITY);
        assert_eq!(Value::INFINITY.to_string(), "inf");
        for bad in ["", "-1", "1/0", "1.5", "a", "1/", "/2", "99999999999"] {
            assert!(bad.parse::<Value>().is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn order_puts_infinity_on_top() {
        let mut xs = vec![Value::INFINITY, v("3"), v("1/2"), Value::ZERO];
        xs.sort();
        assert_eq!(xs, vec![Value::ZERO, v("1/2"), v("3"), Value::INFINITY]);
        assert_eq!(v("1") + Value::INFINITY, Value::INFINITY);
        assert_eq!(sup([]), Value::ZERO);
        assert_eq!(inf([]), Value::INFINITY);
    }

    fn arb_value() -> impl Strategy<Value = Value> {
        prop_oneof![
            1 => Just(Value::INFINITY),
            1 => Just(Value::ZERO),
            6 => (0u64..40, 1u64..9).prop_map(|(p, q)| Value::ratio(p, q)),
        ]
    }

    /// Value grid with 0 and ∞ for exhaustive pairwise laws.
    fn grid() -> Vec<Value> {
        let mut g = vec![Value::ZERO, Value::INFINITY];
        for p in 1..=8 {
            for q in 1..=4 {
                g.push(Value::ratio(p, q));
            }
        }
        g
    }

    #[test]
    fn reciprocal_galois_connection_on_grid() {
        let g = grid();
        for &x in &g {
            for &y in &g {
                assert_eq!(x.reciprocal() <= y, y.reciprocal() <= x, "x={x} y={y}");
            }
        }
    }

    proptest! {
        #[test]
        fn reciprocal_of_inf_is_sup_of_reciprocals(xs in proptest::collection::vec(arb_value(), 0..6)) {
            let lhs = inf(xs.iter().copied()).reciprocal();
            let rhs = sup(xs.iter().map(|x| x.reciprocal()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn trunc_sub_bounds_and_monotonicity(x in arb_value(), y in arb_value(), z in arb_value()) {
            prop_assert!(trunc_sub(x, y) <= x);
            if y <= z {
                prop_assert!(trunc_sub(x, z) <= trunc_sub(x, y));
                prop_assert!(trunc_sub(y, x) <= trunc_sub(z, x));
            }
        }

        #[test]
        fn oslash_one_agrees_with_reciprocal(y in arb_value()) {
            prop_assert_eq!(oslash(Value::ONE, y).unwrap(), y.reciprocal());
        }

        #[test]
        fn display_parse_roundtrip(x in arb_value()) {
            prop_assert_eq!(x.to_string().parse::<Value>().unwrap(), x);
        }
    }
}
