//! Elements of Z[sqrt(-d)] and of its fraction field Q(sqrt(-d)).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// Checks that `d` is a squarefree positive integer.
pub fn validate_d(d: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::param("d must be positive"));
    }
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return Err(Error::param(format!("d = {d} is not squarefree")));
        }
        p += 1;
    }
    Ok(())
}

/// `x + y*sqrt(-d)` with integer coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadInt {
    pub x: i64,
    pub y: i64,
    pub d: u64,
}

impl QuadInt {
    pub const fn new(x: i64, y: i64, d: u64) -> Self {
        QuadInt { x, y, d }
    }

    pub const fn zero(d: u64) -> Self {
        QuadInt { x: 0, y: 0, d }
    }

    pub const fn one(d: u64) -> Self {
        QuadInt { x: 1, y: 0, d }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// `x^2 + d*y^2`.
    pub fn norm(&self) -> u64 {
        let n = (self.x as i128).pow(2) + self.d as i128 * (self.y as i128).pow(2);
        u64::try_from(n).expect("norm exceeds u64")
    }

    pub fn conj(&self) -> Self {
        QuadInt { y: -self.y, ..*self }
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.d, other.d, "elements of different rings");
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        self.same_ring(rhs);
        let d = self.d as i128;
        let (a, b, c, e) = (self.x as i128, self.y as i128, rhs.x as i128, rhs.y as i128);
        let x = a * c - d * b * e;
        let y = a * e + b * c;
        Some(QuadInt { x: x.try_into().ok()?, y: y.try_into().ok()?, d: self.d })
    }

    pub fn to_rational(&self) -> QuadRational {
        QuadRational::new(Ratio::from(self.x), Ratio::from(self.y), self.d)
    }
}

impl Ord for QuadInt {
    /// By norm, then `x`, then `y`.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.norm(), self.x, self.y, self.d).cmp(&(other.norm(), other.x, other.y, other.d))
    }
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: QuadInt) -> QuadInt {
        self.same_ring(&rhs);
        QuadInt { x: self.x + rhs.x, y: self.y + rhs.y, d: self.d }
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        self.same_ring(&rhs);
        QuadInt { x: self.x - rhs.x, y: self.y - rhs.y, d: self.d }
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        self.checked_mul(&rhs).expect("overflow in Z[sqrt(-d)] product")
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { x: -self.x, y: -self.y, d: self.d }
    }
}

fn write_quad(f: &mut fmt::Formatter<'_>, x: &dyn fmt::Display, y: &str, d: u64) -> fmt::Result {
    let unit = if d == 1 { "i".to_string() } else { format!("sqrt(-{d})") };
    let (sign, mag) = match y.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("+", y),
    };
    if mag == "0" {
        write!(f, "{x}")
    } else if mag == "1" {
        write!(f, "{x}{sign}{unit}")
    } else {
        write!(f, "{x}{sign}{mag}*{unit}")
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_quad(f, &self.x, &self.y.to_string(), self.d)
    }
}

impl fmt::Debug for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `x + y*sqrt(-d)` with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadRational {
    pub x: Ratio,
    pub y: Ratio,
    pub d: u64,
}

impl QuadRational {
    pub fn new(x: Ratio, y: Ratio, d: u64) -> Self {
        QuadRational { x, y, d }
    }

    pub fn zero(d: u64) -> Self {
        QuadRational::new(Ratio::zero(), Ratio::zero(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Squared complex modulus, `x^2 + d*y^2`.
    pub fn norm(&self) -> Ratio {
        &self.x * &self.x + Ratio::from(self.d) * &self.y * &self.y
    }

    pub fn conj(&self) -> Self {
        QuadRational::new(self.x.clone(), -&self.y, self.d)
    }

    pub fn scale(&self, k: &Ratio) -> Self {
        QuadRational::new(&self.x * k, &self.y * k, self.d)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.d, rhs.d, "elements of different rings");
        let d = Ratio::from(self.d);
        QuadRational::new(
            &self.x * &rhs.x - d * &self.y * &rhs.y,
            &self.x * &rhs.y + &self.y * &rhs.x,
            self.d,
        )
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::domain("division by zero in Q(sqrt(-d))"));
        }
        let n = rhs.norm();
        Ok(self.mul(&rhs.conj()).scale(&n.recip()?))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        QuadRational::new(&self.x + &rhs.x, &self.y + &rhs.y, self.d)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        QuadRational::new(&self.x - &rhs.x, &self.y - &rhs.y, self.d)
    }

    /// Integer coordinates, when both are integral.
    pub fn to_quad_int(&self) -> Option<QuadInt> {
        if !self.x.is_integer() || !self.y.is_integer() {
            return None;
        }
        Some(QuadInt::new(self.x.numer().to_i64()?, self.y.numer().to_i64()?, self.d))
    }

    /// Approximate `(re, im)` in the complex plane.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64() * (self.d as f64).sqrt())
    }
}

impl fmt::Display for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let y = self.y.to_string();
        let y = if y.contains('/') { format!("({y})") } else { y };
        let y = y.replacen("(-", "-(", 1);
        write_quad(f, &self.x, &y, self.d)
    }
}

impl fmt::Debug for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Rounds away from zero: ceiling for positive input, floor for negative, and 0 at 0.
pub fn away_round(x: &Ratio) -> BigInt {
    if x.is_zero() {
        BigInt::zero()
    } else if x.is_positive() {
        x.ceil()
    } else {
        x.floor()
    }
}

/// `away_round` applied to both coordinates.
pub fn away_round_quad(z: &QuadRational) -> Result<QuadInt> {
    let x = away_round(&z.x);
    let y = away_round(&z.y);
    let fit = |v: BigInt| v.to_i64().ok_or_else(|| Error::domain("rounded coordinate exceeds i64"));
    Ok(QuadInt::new(fit(x)?, fit(y)?, z.d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Ratio {
        s.parse().unwrap()
    }

    #[test]
    fn squarefree_check() {
        for d in [1, 2, 3, 5, 6, 7, 10, 15] {
            assert!(validate_d(d).is_ok());
        }
        for d in [0, 4, 8, 9, 12, 18] {
            assert!(validate_d(d).is_err());
        }
    }

    #[test]
    fn away_round_examples() {
        assert_eq!(away_round(&r("23/10")), BigInt::from(3));
        assert_eq!(away_round(&r("-23/10")), BigInt::from(-3));
        assert_eq!(away_round(&r("2")), BigInt::from(2));
        assert_eq!(away_round(&r("0")), BigInt::from(0));
    }

    #[test]
    fn norm_and_display() {
        let z = QuadInt::new(2, -1, 1);
        assert_eq!(z.norm(), 5);
        assert_eq!(z.to_string(), "2-i");
        assert_eq!(QuadInt::new(0, 3, 2).to_string(), "0+3*sqrt(-2)");
        assert_eq!(QuadInt::new(0, 3, 2).norm(), 18);
    }

    #[test]
    fn rational_division_inverts_multiplication() {
        let a = QuadRational::new(r("1"), r("1"), 1);
        let g = QuadRational::new(r("5"), r("5"), 1);
        assert_eq!(g.div(&a).unwrap(), QuadRational::new(r("5"), r("0"), 1));
        assert!(g.div(&QuadRational::zero(1)).is_err());
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(
            x1 in -10_000i64..10_000, y1 in -10_000i64..10_000,
            x2 in -10_000i64..10_000, y2 in -10_000i64..10_000,
            d in prop::sample::select(vec![1u64, 2, 3, 5]),
        ) {
            let u = QuadInt::new(x1, y1, d);
            let v = QuadInt::new(x2, y2, d);
            prop_assert_eq!((u * v).norm() as u128, u.norm() as u128 * v.norm() as u128);
        }

        #[test]
        fn away_round_is_odd(p in -10_000i64..10_000, q in 1i64..1000) {
            let x = Ratio::new(p, q).unwrap();
            prop_assert_eq!(away_round(&-&x), -away_round(&x));
            let rounded = Ratio::from(away_round(&x));
            prop_assert!((&rounded - &x).abs() < Ratio::one());
            prop_assert!(rounded.abs() >= x.abs());
        }
    }
}
