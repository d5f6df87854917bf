//! Exact rationals with arbitrary-precision parts.
//!
//! `Ratio` is always stored reduced with a positive denominator, so
//! structural equality is numeric equality and ordering is exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(BigRational);

impl Ratio {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::param("zero denominator"));
        }
        Ok(Ratio(BigRational::new(num.into(), den)))
    }

    /// `u/v` already in lowest terms with `v > 0`.
    pub(crate) fn from_reduced(u: u64, v: u64) -> Self {
        debug_assert!(v > 0 && u.gcd(&v) == 1 || u == 0 && v == 1);
        Ratio(BigRational::new_raw(u.into(), v.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Ratio(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Ratio(BigRational::zero())
    }

    pub fn one() -> Self {
        Ratio(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Ratio(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("reciprocal of zero"));
        }
        Ok(Ratio(self.0.recip()))
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        -((-self.0.numer()).div_floor(self.0.denom()))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i32) -> Self {
        Ratio(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Numerator and denominator as `i128` when both fit in `i64`.
    ///
    /// The narrower range leaves headroom for one more `u64`-sized factor.
    pub fn small_parts(&self) -> Option<(i128, i128)> {
        let n = self.numer().to_i64()?;
        let d = self.denom().to_i64()?;
        Some((n as i128, d as i128))
    }

    /// A rational `r` with `r <= sqrt(self)` and `sqrt(self) - r < 2^-bits`.
    pub fn sqrt_lower(&self, bits: u32) -> Self {
        let (s, scale) = self.scaled_isqrt(bits);
        Ratio(BigRational::new(s, scale))
    }

    /// A rational `r` with `r >= sqrt(self)` and `r - sqrt(self) < 2^-bits`.
    pub fn sqrt_upper(&self, bits: u32) -> Self {
        let (s, scale) = self.scaled_isqrt(bits);
        let lower = BigRational::new(s.clone(), scale.clone());
        if &lower * &lower == self.0 {
            Ratio(lower)
        } else {
            Ratio(BigRational::new(s + 1, scale))
        }
    }

    // floor(sqrt(self) * 2^bits) and the scale 2^bits.
    fn scaled_isqrt(&self, bits: u32) -> (BigInt, BigInt) {
        assert!(!self.is_negative(), "square root of a negative rational");
        let scale = BigInt::one() << bits;
        // sqrt(n/d) * S = sqrt(n * d * S^2) / d
        let radicand = self.numer() * self.denom() * &scale * &scale;
        let root = radicand.sqrt();
        // floor(root / d) is floor(sqrt(n d S^2) / d) = floor(sqrt(self) * S)
        (root.div_floor(self.denom()), scale)
    }

    /// Always `p/q`, including `q = 1`; used by the certificate format.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// Accepts `p/q` or an integer. Decimal points and exponents are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg}: {s:?}") };
        if s.is_empty() {
            return Err(bad("empty rational"));
        }
        if s.contains(['.', 'e', 'E']) {
            return Err(bad("floating-point literal not accepted, use p/q"));
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad("invalid numerator"))?;
        let d: BigInt = d.parse().map_err(|_| bad("invalid denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Ratio(BigRational::new(n, d)))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Ratio {
            fn from(n: $t) -> Self {
                Ratio::from_integer(BigInt::from(n))
            }
        }
    )*};
}
from_int!(i32, i64, i128, u32, u64, u128, usize);

impl From<BigInt> for Ratio {
    fn from(n: BigInt) -> Self {
        Ratio::from_integer(n)
    }
}

impl From<BigRational> for Ratio {
    fn from(r: BigRational) -> Self {
        Ratio(r)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Ratio> for Ratio {
            type Output = Ratio;
            fn $m(self, rhs: Ratio) -> Ratio {
                Ratio(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Ratio> for Ratio {
            type Output = Ratio;
            fn $m(self, rhs: &'a Ratio) -> Ratio {
                Ratio(self.0.$m(&rhs.0))
            }
        }
        impl<'a> $tr<Ratio> for &'a Ratio {
            type Output = Ratio;
            fn $m(self, rhs: Ratio) -> Ratio {
                Ratio((&self.0).$m(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Ratio> for &'a Ratio {
            type Output = Ratio;
            fn $m(self, rhs: &'b Ratio) -> Ratio {
                Ratio((&self.0).$m(&rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio(-self.0)
    }
}

impl Neg for &Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio(-&self.0)
    }
}

/// Serializes a big integer as a decimal string.
pub(crate) fn ser_bigint<S: Serializer>(n: &BigInt, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&n.to_string())
}

/// Compares `a/b` with `c/d` for positive `b`, `d` without leaving integers.
pub fn cmp_fractions(a: i128, b: i128, c: i128, d: i128) -> Ordering {
    match (a.checked_mul(d), c.checked_mul(b)) {
        (Some(l), Some(r)) => l.cmp(&r),
        _ => (BigInt::from(a) * BigInt::from(d)).cmp(&(BigInt::from(c) * BigInt::from(b))),
    }
}

/// `floor(num * v / den)` for positive `den`.
pub fn floor_scaled(num: &BigInt, den: &BigInt, v: &BigInt) -> BigInt {
    (num * v).div_floor(den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Ratio {
        s.parse().unwrap()
    }

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(r("6/4"), Ratio::new(3, 2).unwrap());
        assert_eq!(r("-7"), Ratio::from(-7i64));
        assert_eq!(r("3/-6"), Ratio::new(-1, 2).unwrap());
        assert_eq!(r(" 10 "), Ratio::from(10u64));
    }

    #[test]
    fn rejects_floats_and_garbage() {
        for bad in ["1.5", "1e3", "", "1/0", "a/b", "1//2"] {
            assert!(bad.parse::<Ratio>().is_err(), "{bad}");
        }
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(r("23/10").floor(), BigInt::from(2));
        assert_eq!(r("23/10").ceil(), BigInt::from(3));
        assert_eq!(r("-23/10").floor(), BigInt::from(-3));
        assert_eq!(r("-23/10").ceil(), BigInt::from(-2));
        assert_eq!(r("4").ceil(), BigInt::from(4));
    }

    #[test]
    fn sqrt_bounds_bracket_root() {
        let two = r("2");
        let lo = two.sqrt_lower(30);
        let hi = two.sqrt_upper(30);
        assert!(&lo * &lo < two);
        assert!(&hi * &hi > two);
        let nine_quarters = r("9/4");
        assert_eq!(nine_quarters.sqrt_upper(10), r("3/2"));
        assert_eq!(nine_quarters.sqrt_lower(10), r("3/2"));
    }

    #[test]
    fn display_forms() {
        assert_eq!(r("4/2").to_string(), "2");
        assert_eq!(r("4/2").to_fraction_string(), "2/1");
        assert_eq!(r("-1/3").to_string(), "-1/3");
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(n in -10_000i64..10_000, d in 1i64..10_000, k in 1i64..1_000) {
            prop_assert_eq!(Ratio::new(n * k, d * k).unwrap(), Ratio::new(n, d).unwrap());
        }

        #[test]
        fn order_matches_cross_multiplication(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = Ratio::new(a, b).unwrap();
            let y = Ratio::new(c, d).unwrap();
            prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
            prop_assert_eq!(x.cmp(&y), cmp_fractions(a as i128, b as i128, c as i128, d as i128));
        }

        #[test]
        fn display_round_trips(n in -100_000i64..100_000, d in 1i64..100_000) {
            let x = Ratio::new(n, d).unwrap();
            prop_assert_eq!(x.to_string().parse::<Ratio>().unwrap(), x.clone());
            prop_assert_eq!(x.to_fraction_string().parse::<Ratio>().unwrap(), x);
        }
    }
}
