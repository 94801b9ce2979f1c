//! Coefficient rings: the integers, the rationals and residues modulo `m`.
//!
//! A [`RingValue`] always knows which ring it lives in. Operations between
//! values of different rings are rejected; the only conversion offered is the
//! explicit lift from the integers into the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Modulus of a residue ring, always at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Modulus(m))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A commutative ring with identity.
///
/// Textual tags are `Z`, `Q` and `Zmod:<m>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Ring {
    Integers,
    Rationals,
    Modular(Modulus),
}

impl Ring {
    pub fn modular(m: u64) -> Result<Ring> {
        Modulus::new(m).map(Ring::Modular)
    }

    pub fn zero(self) -> RingValue {
        self.from_i64(0)
    }

    pub fn one(self) -> RingValue {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> RingValue {
        self.from_bigint(&BigInt::from(n))
    }

    /// Image of an integer under the canonical map `Z -> R`.
    pub fn from_bigint(self, n: &BigInt) -> RingValue {
        match self {
            Ring::Integers => RingValue::Int(n.clone()),
            Ring::Rationals => RingValue::Rat(BigRational::from_integer(n.clone())),
            Ring::Modular(m) => {
                let r = n.mod_floor(&BigInt::from(m.0));
                RingValue::Mod {
                    residue: r.to_u64().expect("residue below modulus"),
                    modulus: m,
                }
            }
        }
    }

    /// Builds `p/q` in the rationals, or `p * q^{-1}` in a residue ring.
    ///
    /// Over the integers this succeeds only when `q` divides `p`.
    pub fn from_fraction(self, p: i64, q: i64) -> Result<RingValue> {
        self.from_i64(p).exact_div_int(&BigInt::from(q))
    }

    /// Parses a payload string: decimal integer, `p/q`, or a residue.
    pub fn parse_value(self, s: &str) -> Result<RingValue> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid {} value {s:?}", self));
        match self {
            Ring::Integers => BigInt::from_str(s).map(RingValue::Int).map_err(|_| bad()),
            Ring::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((p, q)) => (
                        BigInt::from_str(p.trim()).map_err(|_| bad())?,
                        BigInt::from_str(q.trim()).map_err(|_| bad())?,
                    ),
                    None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
                };
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(RingValue::Rat(BigRational::new(num, den)))
            }
            Ring::Modular(_) => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(self.from_bigint(&n))
            }
        }
    }

    pub fn tag(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::Modular(m) => write!(f, "Zmod:{m}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        match s.trim() {
            "Z" => Ok(Ring::Integers),
            "Q" => Ok(Ring::Rationals),
            other => {
                let m = other
                    .strip_prefix("Zmod:")
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown ring tag {other:?}")))?;
                Ring::modular(m)
            }
        }
    }
}

impl TryFrom<String> for Ring {
    type Error = Error;

    fn try_from(s: String) -> Result<Ring> {
        s.parse()
    }
}

impl From<Ring> for String {
    fn from(r: Ring) -> String {
        r.to_string()
    }
}

/// An element of one of the supported rings.
///
/// Rationals are kept reduced with a positive denominator and residues are
/// kept in `[0, m)`, so derived equality is ring equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingValue {
    Int(BigInt),
    Rat(BigRational),
    Mod { residue: u64, modulus: Modulus },
}

impl RingValue {
    pub fn ring(&self) -> Ring {
        match self {
            RingValue::Int(_) => Ring::Integers,
            RingValue::Rat(_) => Ring::Rationals,
            RingValue::Mod { modulus, .. } => Ring::Modular(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingValue::Int(n) => n.is_zero(),
            RingValue::Rat(q) => q.is_zero(),
            RingValue::Mod { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingValue::Int(n) => n.is_one(),
            RingValue::Rat(q) => q.is_one(),
            RingValue::Mod { residue, .. } => *residue == 1,
        }
    }

    fn check_same(&self, other: &RingValue) -> Result<()> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring(),
                right: other.ring(),
            })
        }
    }

    pub fn try_add(&self, other: &RingValue) -> Result<RingValue> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &RingValue) -> Result<RingValue> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &RingValue) -> Result<RingValue> {
        self.check_same(other)?;
        Ok(self * other)
    }

    /// Multiplies by an integer through the canonical map `Z -> R`.
    pub fn mul_int(&self, n: &BigInt) -> RingValue {
        match self {
            RingValue::Int(a) => RingValue::Int(a * n),
            RingValue::Rat(a) => RingValue::Rat(a * BigRational::from_integer(n.clone())),
            RingValue::Mod { residue, modulus } => {
                let m = modulus.0;
                let k = n.mod_floor(&BigInt::from(m)).to_u64().expect("residue");
                RingValue::Mod {
                    residue: mulmod(*residue, k, m),
                    modulus: *modulus,
                }
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> RingValue {
        let mut base = self.clone();
        let mut acc = self.ring().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse.
    pub fn invert(&self) -> Result<RingValue> {
        let fail = || Error::NotInvertible(format!("{self} in {}", self.ring()));
        match self {
            RingValue::Int(n) => {
                if n.abs().is_one() {
                    Ok(self.clone())
                } else {
                    Err(fail())
                }
            }
            RingValue::Rat(q) => {
                if q.is_zero() {
                    Err(fail())
                } else {
                    Ok(RingValue::Rat(q.recip()))
                }
            }
            RingValue::Mod { residue, modulus } => inverse_mod(*residue, modulus.0)
                .map(|residue| RingValue::Mod {
                    residue,
                    modulus: *modulus,
                })
                .ok_or_else(fail),
        }
    }

    /// Returns `y` with `n * y = self`.
    pub fn exact_div_int(&self, n: &BigInt) -> Result<RingValue> {
        if n.is_zero() {
            return Err(Error::DomainViolation("division by zero".into()));
        }
        match self {
            RingValue::Int(a) => {
                let (q, r) = a.div_rem(n);
                if r.is_zero() {
                    Ok(RingValue::Int(q))
                } else {
                    Err(Error::NotDivisible {
                        value: a.to_string(),
                        divisor: n.to_string(),
                    })
                }
            }
            RingValue::Rat(a) => Ok(RingValue::Rat(a / BigRational::from_integer(n.clone()))),
            RingValue::Mod { .. } => {
                let inv = self.ring().from_bigint(n).invert()?;
                Ok(self * &inv)
            }
        }
    }

    /// Returns `y` with `other * y = self`.
    pub fn exact_div(&self, other: &RingValue) -> Result<RingValue> {
        self.check_same(other)?;
        match (self, other) {
            (RingValue::Int(_), RingValue::Int(d)) => self.exact_div_int(d),
            _ => Ok(self * &other.invert()?),
        }
    }

    /// Explicit lift from the integers into the rationals. Rationals are
    /// returned unchanged; residues cannot be lifted.
    pub fn lift_to_rationals(&self) -> Result<RingValue> {
        match self {
            RingValue::Int(n) => Ok(RingValue::Rat(BigRational::from_integer(n.clone()))),
            RingValue::Rat(_) => Ok(self.clone()),
            RingValue::Mod { .. } => Err(Error::RingUnsupported(self.ring())),
        }
    }

    /// Converts a rational with denominator 1 back into the integers.
    pub fn to_integer(&self) -> Result<RingValue> {
        match self {
            RingValue::Int(_) => Ok(self.clone()),
            RingValue::Rat(q) if q.is_integer() => Ok(RingValue::Int(q.to_integer())),
            RingValue::Rat(q) => Err(Error::IntegralityViolation(format!("{q} is not an integer"))),
            RingValue::Mod { .. } => Err(Error::RingUnsupported(self.ring())),
        }
    }

    /// Converts into `target`, which must be the ring itself, or the
    /// integers for a rational value with unit denominator.
    pub fn convert_to(&self, target: Ring) -> Result<RingValue> {
        match (self.ring(), target) {
            (a, b) if a == b => Ok(self.clone()),
            (Ring::Rationals, Ring::Integers) => self.to_integer(),
            (Ring::Integers, Ring::Rationals) => self.lift_to_rationals(),
            (a, b) => Err(Error::RingMismatch { left: a, right: b }),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            RingValue::Rat(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingValue::Int(n) => write!(f, "{n}"),
            RingValue::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            RingValue::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            RingValue::Mod { residue, .. } => write!(f, "{residue}"),
        }
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

macro_rules! binop {
    ($trait:ident, $method:ident, $int:expr, $modop:expr) => {
        impl<'a> $trait<&'a RingValue> for &'a RingValue {
            type Output = RingValue;

            /// Panics when the operands live in different rings; use the
            /// `try_*` methods at API boundaries.
            fn $method(self, rhs: &'a RingValue) -> RingValue {
                match (self, rhs) {
                    (RingValue::Int(a), RingValue::Int(b)) => RingValue::Int($int(a, b)),
                    (RingValue::Rat(a), RingValue::Rat(b)) => RingValue::Rat($int(a, b)),
                    (
                        RingValue::Mod { residue: a, modulus },
                        RingValue::Mod { residue: b, modulus: m2 },
                    ) if modulus == m2 => RingValue::Mod {
                        residue: $modop(*a, *b, modulus.0),
                        modulus: *modulus,
                    },
                    _ => panic!("ring mismatch: {} vs {}", self.ring(), rhs.ring()),
                }
            }
        }

        impl $trait<RingValue> for RingValue {
            type Output = RingValue;

            fn $method(self, rhs: RingValue) -> RingValue {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a + b, |a: u64, b: u64, m: u64| ((a as u128 + b as u128)
    % m as u128) as u64);
binop!(Sub, sub, |a, b| a - b, |a: u64, b: u64, m: u64| ((a as u128 + m as u128
    - b as u128)
    % m as u128) as u64);
binop!(Mul, mul, |a, b| a * b, mulmod);

impl Neg for &RingValue {
    type Output = RingValue;

    fn neg(self) -> RingValue {
        match self {
            RingValue::Int(a) => RingValue::Int(-a),
            RingValue::Rat(a) => RingValue::Rat(-a),
            RingValue::Mod { residue, modulus } => RingValue::Mod {
                residue: (modulus.0 - residue) % modulus.0,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for RingValue {
    type Output = RingValue;

    fn neg(self) -> RingValue {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> RingValue {
        Ring::Rationals.from_fraction(p, d).unwrap()
    }

    #[test]
    fn invert_examples() {
        assert_eq!(q(2, 3).invert().unwrap(), q(3, 2));
        let z = Ring::Integers;
        assert_eq!(z.from_i64(-1).invert().unwrap(), z.from_i64(-1));
        assert!(matches!(z.from_i64(2).invert(), Err(Error::NotInvertible(_))));
        let m10 = Ring::modular(10).unwrap();
        assert_eq!(m10.from_i64(3).invert().unwrap(), m10.from_i64(7));
        assert!(m10.from_i64(4).invert().is_err());
    }

    #[test]
    fn modular_inverse_matches_brute_force() {
        for m in 2u64..40 {
            let ring = Ring::modular(m).unwrap();
            for a in 0..m {
                let brute = (0..m).find(|b| a * b % m == 1);
                let fast = ring.from_i64(a as i64).invert().ok();
                assert_eq!(fast, brute.map(|b| ring.from_i64(b as i64)), "{a} mod {m}");
            }
        }
    }

    #[test]
    fn exact_division_examples() {
        let z = Ring::Integers;
        assert_eq!(z.from_i64(6).exact_div_int(&3.into()).unwrap(), z.from_i64(2));
        assert!(matches!(
            z.from_i64(7).exact_div_int(&2.into()),
            Err(Error::NotDivisible { .. })
        ));
        assert_eq!(q(1, 3).exact_div_int(&2.into()).unwrap(), q(1, 6));
        let m7 = Ring::modular(7).unwrap();
        assert_eq!(m7.from_i64(3).exact_div_int(&2.into()).unwrap(), m7.from_i64(5));
        let m10 = Ring::modular(10).unwrap();
        assert!(matches!(
            m10.from_i64(3).exact_div_int(&2.into()),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn cross_ring_is_rejected() {
        let a = Ring::Integers.one();
        let b = Ring::Rationals.one();
        assert!(matches!(a.try_add(&b), Err(Error::RingMismatch { .. })));
        let m5 = Ring::modular(5).unwrap().one();
        let m7 = Ring::modular(7).unwrap().one();
        assert!(m5.try_mul(&m7).is_err());
        assert_eq!(a.lift_to_rationals().unwrap(), b);
    }

    #[test]
    fn ring_tags_round_trip() {
        for tag in ["Z", "Q", "Zmod:2", "Zmod:1000003"] {
            assert_eq!(tag.parse::<Ring>().unwrap().tag(), tag);
        }
        assert!("Zmod:1".parse::<Ring>().is_err());
        assert!("Zmod:x".parse::<Ring>().is_err());
        assert!("R".parse::<Ring>().is_err());
    }

    #[test]
    fn payload_strings() {
        assert_eq!(q(-4, 6).to_string(), "-2/3");
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!(Ring::Rationals.parse_value("6/-4").unwrap(), q(-3, 2));
        assert_eq!(Ring::modular(7).unwrap().parse_value("-1").unwrap().to_string(), "6");
        assert!(Ring::Rationals.parse_value("1/0").is_err());
        assert!(Ring::Integers.parse_value("1/2").is_err());
    }

    fn ring_strategy() -> impl Strategy<Value = Ring> {
        prop_oneof![
            Just(Ring::Integers),
            Just(Ring::Rationals),
            (2u64..50).prop_map(|m| Ring::modular(m).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn double_inverse(ring in ring_strategy(), p in -50i64..50, d in 1i64..20) {
            let x = match ring {
                Ring::Rationals => q(p, d),
                _ => ring.from_i64(p),
            };
            if let Ok(y) = x.invert() {
                prop_assert!((&x * &y).is_one());
                prop_assert_eq!(y.invert().unwrap(), x);
            }
        }

        #[test]
        fn exact_division_inverts_scaling(ring in ring_strategy(), p in -500i64..500, n in -12i64..12) {
            prop_assume!(n != 0);
            let x = ring.from_i64(p);
            if let Ok(y) = x.exact_div_int(&BigInt::from(n)) {
                prop_assert_eq!(y.mul_int(&BigInt::from(n)), x);
            }
        }
    }
}
