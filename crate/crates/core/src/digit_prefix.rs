//! Integers with a restricted leading block in base `b`: the union of
//! `[a*b^k, c*b^k)` over `k >= 0`, optionally with every power `b^k`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::certificate::{params, GapCertificate, Region, Source};
use crate::error::{Error, Result};
use crate::ratio::{ser_bigint, Ratio};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DigitPrefixFamily {
    pub a: u64,
    pub c: u64,
    pub b: u64,
    pub include_powers: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    DenseWithPowers,
    NotDense,
    Indeterminate,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::DenseWithPowers => "dense-with-powers",
            Classification::NotDense => "not-dense",
            Classification::Indeterminate => "indeterminate",
        })
    }
}

/// Shape of the quotient used by an approximation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproxShape {
    /// member / power
    MemberOverPower,
    /// power / member
    PowerOverMember,
    /// member / member
    MemberOverMember,
    /// power / power
    PowerOverPower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproxResult {
    #[serde(serialize_with = "ser_bigint")]
    pub numerator: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub denominator: BigInt,
    pub value: Ratio,
    pub error: Ratio,
    pub shape: ApproxShape,
}

const MAX_REFINEMENTS: i32 = 400;

impl DigitPrefixFamily {
    pub fn new(a: u64, c: u64, b: u64, include_powers: bool) -> Result<Self> {
        if b < 2 {
            return Err(Error::param(format!("base b = {b} must be at least 2")));
        }
        if !(1 <= a && a < c && c <= b) {
            return Err(Error::param(format!("need 1 <= a < c <= b, got a={a}, c={c}, b={b}")));
        }
        Ok(DigitPrefixFamily { a, c, b, include_powers })
    }

    pub fn without_powers(self) -> Self {
        DigitPrefixFamily { include_powers: false, ..self }
    }

    /// Density of the family with powers, decided from the exact closure of
    /// its quotient set: dense when the closure has no gap; otherwise
    /// not-dense when `a^2*b > c^2`.
    pub fn classify(&self) -> Classification {
        if self.gaps(true).is_empty() {
            Classification::DenseWithPowers
        } else if self.sparse_condition() {
            Classification::NotDense
        } else {
            Classification::Indeterminate
        }
    }

    /// The three-way reading of the two sufficient conditions alone:
    /// `a*b < c^2`, then `a^2*b > c^2`, else indeterminate.
    pub fn classify_by_conditions(&self) -> Classification {
        if self.dense_condition() {
            Classification::DenseWithPowers
        } else if self.sparse_condition() {
            Classification::NotDense
        } else {
            Classification::Indeterminate
        }
    }

    /// `a*b < c^2`.
    pub fn dense_condition(&self) -> bool {
        (self.a as u128) * (self.b as u128) < (self.c as u128).pow(2)
    }

    /// `a^2*b > c^2`.
    pub fn sparse_condition(&self) -> bool {
        (self.a as u128).pow(2) * (self.b as u128) > (self.c as u128).pow(2)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.contains_big(&BigInt::from(n))
    }

    pub fn contains_big(&self, n: &BigInt) -> bool {
        if !n.is_positive() {
            return false;
        }
        let (a, c, b) = (BigInt::from(self.a), BigInt::from(self.c), BigInt::from(self.b));
        let mut p = BigInt::one();
        while &a * &p * &b <= *n {
            p *= &b;
        }
        if &a * &p <= *n && *n < &c * &p {
            return true;
        }
        self.include_powers && is_power_of(n, &b)
    }

    /// Members `<= bound`, ascending.
    pub fn enumerate(&self, bound: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut p: u64 = 1;
        while let Some(lo) = self.a.checked_mul(p) {
            if lo > bound {
                break;
            }
            let hi = self.c.checked_mul(p).map_or(bound, |h| (h - 1).min(bound));
            if self.include_powers && p < lo {
                out.push(p);
            }
            out.extend(lo..=hi);
            let Some(next) = p.checked_mul(self.b) else { break };
            p = next;
        }
        if self.include_powers {
            // powers beyond the last block start
            while p <= bound {
                if out.last().is_none_or(|&l| l < p) {
                    out.push(p);
                }
                match p.checked_mul(self.b) {
                    Some(n) => p = n,
                    None => break,
                }
            }
        }
        out
    }

    fn b_pow(&self, m: i32) -> Ratio {
        Ratio::from(self.b).pow(m)
    }

    /// Largest `m` with `x * b^m <= y`, for positive `x`, `y`.
    fn floor_log(&self, x: &Ratio, y: &Ratio) -> i32 {
        let est = ((y.to_f64() / x.to_f64()).ln() / (self.b as f64).ln()).floor();
        let mut m = if est.is_finite() { est as i32 } else { 0 };
        while x * &self.b_pow(m) > *y {
            m -= 1;
        }
        while x * &self.b_pow(m + 1) <= *y {
            m += 1;
        }
        m
    }

    /// Open gaps of the closure of the quotient set, reduced to one period
    /// `[1, b]`; the full gap set is their images under `b^Z`.
    ///
    /// The closure is `b^Z` times the union of `[a/c, c/a]` (member over
    /// member) and, with powers, `[a, c]`, `[1/c, 1/a]` and `{1}`.
    pub fn closure_gaps(&self) -> Vec<(Ratio, Ratio)> {
        self.gaps(self.include_powers)
    }

    fn gaps(&self, include_powers: bool) -> Vec<(Ratio, Ratio)> {
        let (a, c) = (Ratio::from(self.a), Ratio::from(self.c));
        let mut pieces = vec![(&a / &c, &c / &a)];
        if include_powers {
            pieces.push((a.clone(), c.clone()));
            pieces.push((c.recip().expect("c > 0"), a.recip().expect("a > 0")));
            pieces.push((Ratio::one(), Ratio::one()));
        }
        let one = Ratio::one();
        let top = Ratio::from(self.b);
        let mut clipped: Vec<(Ratio, Ratio)> = Vec::new();
        for (lo, hi) in pieces {
            let m0 = self.floor_log(&hi, &one);
            for m in m0..=m0 + 2 + self.floor_log(&lo, &hi).max(0) {
                let s = self.b_pow(m);
                let (l, h) = (&lo * &s, &hi * &s);
                let l = if l < one { one.clone() } else { l };
                let h = if h > top { top.clone() } else { h };
                if l <= h {
                    clipped.push((l, h));
                }
            }
        }
        clipped.sort();
        let mut merged: Vec<(Ratio, Ratio)> = Vec::new();
        for (l, h) in clipped {
            match merged.last_mut() {
                Some(last) if l <= last.1 => {
                    if h > last.1 {
                        last.1 = h;
                    }
                }
                _ => merged.push((l, h)),
            }
        }
        // The closure is b-periodic, so 1 and b are covered together or not at all.
        let mut gaps = Vec::new();
        let mut cursor = one;
        for (l, h) in merged {
            if l > cursor {
                gaps.push((cursor.clone(), l));
            }
            if h > cursor {
                cursor = h;
            }
        }
        if cursor < top {
            gaps.push((cursor, top));
        }
        gaps
    }

    /// The gap of the closure containing `xi`, scaled to `xi`'s period.
    pub fn gap_containing(&self, xi: &Ratio) -> Option<(Ratio, Ratio)> {
        let m = self.floor_log(&Ratio::one(), xi);
        let t = xi / &self.b_pow(m);
        let s = self.b_pow(m);
        self.closure_gaps()
            .into_iter()
            .find(|(lo, hi)| *lo < t && t < *hi)
            .map(|(lo, hi)| (&lo * &s, &hi * &s))
    }

    /// A quotient of two members within `epsilon` of `xi`.
    pub fn approximate(&self, xi: &Ratio, epsilon: &Ratio) -> Result<ApproxResult> {
        if !self.include_powers {
            return Err(Error::param("approximation needs the family with powers included"));
        }
        if !self.dense_condition() && self.classify() != Classification::DenseWithPowers {
            return Err(Error::Certification(format!(
                "family (a={}, c={}, b={}) is not dense and a*b >= c^2; use a gap certificate",
                self.a, self.c, self.b
            )));
        }
        if !xi.is_positive() {
            return Err(Error::param(format!("target {xi} must be positive")));
        }
        if !epsilon.is_positive() {
            return Err(Error::param(format!("epsilon {epsilon} must be positive")));
        }
        if let Some(r) = self.approximate_direct(xi, epsilon) {
            return Ok(r);
        }
        // Closure points outside every open piece: approximate a nearby interior point.
        let two = Ratio::from(2u64);
        let half = epsilon / &two;
        let mut shift = half.clone();
        for _ in 0..8 {
            for moved in [xi + &shift, xi - &shift] {
                if !moved.is_positive() {
                    continue;
                }
                if let Some(r) = self.approximate_direct(&moved, &half) {
                    let error = (xi - &r.value).abs();
                    if error < *epsilon {
                        return Ok(ApproxResult { error, ..r });
                    }
                }
            }
            shift = &shift / &two;
        }
        match self.gap_containing(xi) {
            Some((lo, hi)) => Err(Error::Certification(format!(
                "target {xi} lies in the gap ({lo}, {hi}) of the quotient-set closure; no quotient comes within {epsilon}"
            ))),
            None => Err(Error::domain(format!("no quotient found within {epsilon} of {xi}"))),
        }
    }

    fn approximate_direct(&self, xi: &Ratio, eps: &Ratio) -> Option<ApproxResult> {
        self.power_over_power(xi)
            .or_else(|| self.member_over_power(xi, eps))
            .or_else(|| self.member_over_member(xi, eps))
            .or_else(|| self.power_over_member(xi, eps))
    }

    fn result(&self, xi: &Ratio, num: BigInt, den: BigInt, shape: ApproxShape) -> ApproxResult {
        let value = Ratio::new(num.clone(), den.clone()).expect("positive denominator");
        let error = (xi - &value).abs();
        ApproxResult { numerator: num, denominator: den, value, error, shape }
    }

    fn big_pow(&self, k: i32) -> BigInt {
        num_traits::pow(BigInt::from(self.b), k as usize)
    }

    fn power_over_power(&self, xi: &Ratio) -> Option<ApproxResult> {
        let m = self.floor_log(&Ratio::one(), xi);
        if self.b_pow(m) != *xi {
            return None;
        }
        let (num, den) = if m >= 0 { (self.big_pow(m), BigInt::one()) } else { (BigInt::one(), self.big_pow(-m)) };
        Some(self.result(xi, num, den, ApproxShape::PowerOverPower))
    }

    // xi in [a, c) * b^m: floor(xi * b^j) / b^j with b^j * eps >= 1.
    fn member_over_power(&self, xi: &Ratio, eps: &Ratio) -> Option<ApproxResult> {
        let (a, c) = (Ratio::from(self.a), Ratio::from(self.c));
        let m = self.floor_log(&a, xi);
        if *xi >= &c * &self.b_pow(m) {
            return None;
        }
        let mut j = (-m).max(0);
        while &self.b_pow(j) * eps < Ratio::one() {
            j += 1;
        }
        let den = self.big_pow(j);
        let num = (xi * &Ratio::from(den.clone())).floor();
        let r = self.result(xi, num, den, ApproxShape::MemberOverPower);
        (r.error < *eps).then_some(r)
    }

    // xi in (b^m / c, b^m / a]: b^(k+m) / u with u near b^(k+m) / xi.
    fn power_over_member(&self, xi: &Ratio, eps: &Ratio) -> Option<ApproxResult> {
        let (a, c) = (Ratio::from(self.a), Ratio::from(self.c));
        let ax = &a * xi;
        let mut m = self.floor_log(&Ratio::one(), &ax);
        if self.b_pow(m) < ax {
            m += 1;
        }
        if self.b_pow(m) >= &c * xi {
            return None;
        }
        for k in (-m).max(0)..(-m).max(0) + MAX_REFINEMENTS {
            let j = k + m;
            let num = self.big_pow(j);
            let t = &Ratio::from(num.clone()) / xi;
            let best = self.clamped_candidates(&t, k).into_iter().map(|u| self.result(xi, num.clone(), u, ApproxShape::PowerOverMember)).min_by(|x, y| x.error.cmp(&y.error));
            if let Some(r) = best.filter(|r| r.error < *eps) {
                return Some(r);
            }
        }
        None
    }

    // xi = t * b^m with t in (a/c, c/a): fix one member at a*b^K, round the other.
    fn member_over_member(&self, xi: &Ratio, eps: &Ratio) -> Option<ApproxResult> {
        let (a, c) = (Ratio::from(self.a), Ratio::from(self.c));
        let (lo, hi) = (&a / &c, &c / &a);
        let m0 = self.floor_log(&Ratio::one(), xi);
        for m in m0 - 1..=m0 + 1 {
            let t = xi / &self.b_pow(m);
            if !(lo < t && t < hi) {
                continue;
            }
            let start = if t >= Ratio::one() { (-m).max(0) } else { m.max(0) };
            for big_k in start..start + MAX_REFINEMENTS {
                let fixed = BigInt::from(self.a) * self.big_pow(big_k);
                let fixed_r = Ratio::from(fixed.clone());
                let cands: Vec<ApproxResult> = if t >= Ratio::one() {
                    self.clamped_candidates(&(xi * &fixed_r), big_k + m)
                        .into_iter()
                        .map(|u| self.result(xi, u, fixed.clone(), ApproxShape::MemberOverMember))
                        .collect()
                } else {
                    self.clamped_candidates(&(&fixed_r / xi), big_k - m)
                        .into_iter()
                        .map(|v| self.result(xi, fixed.clone(), v, ApproxShape::MemberOverMember))
                        .collect()
                };
                if let Some(r) = cands.into_iter().filter(|r| r.error < *eps).min_by(|x, y| x.error.cmp(&y.error)) {
                    return Some(r);
                }
            }
        }
        None
    }

    // floor and ceil of `t`, clamped into the block [a*b^k, c*b^k - 1].
    fn clamped_candidates(&self, t: &Ratio, k: i32) -> Vec<BigInt> {
        if k < 0 {
            return Vec::new();
        }
        let p = self.big_pow(k);
        let lo = BigInt::from(self.a) * &p;
        let hi: BigInt = BigInt::from(self.c) * &p - 1;
        let mut out: Vec<BigInt> = [t.floor(), t.ceil()]
            .into_iter()
            .map(|u| u.clamp(lo.clone(), hi.clone()))
            .collect();
        out.dedup();
        out
    }

    /// Certified gap `(c/a * b^j, a/c * b^(j+1))` of the quotient set of the
    /// family without powers; needs `a^2*b > c^2`.
    pub fn gap_certificate(&self, j: i32) -> Result<GapCertificate> {
        if !self.sparse_condition() {
            return Err(Error::Certification(format!(
                "a^2*b > c^2 fails for (a={}, c={}, b={}); no gap is claimed",
                self.a, self.c, self.b
            )));
        }
        let (a, c) = (Ratio::from(self.a), Ratio::from(self.c));
        let lo = &c / &a * self.b_pow(j);
        let hi = &a / &c * self.b_pow(j + 1);
        if lo >= hi {
            return Err(Error::Certification(format!("consecutive windows overlap at j={j}")));
        }
        GapCertificate::new(
            Region::interval(lo, hi)?,
            Source::DigitPrefix,
            params([("a", self.a.to_string()), ("b", self.b.to_string()), ("c", self.c.to_string()), ("j", j.to_string())]),
        )
    }
}

impl fmt::Display for DigitPrefixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})*{}^k", self.a, self.c, self.b)?;
        if self.include_powers {
            write!(f, " + {}^k", self.b)?;
        }
        Ok(())
    }
}

fn is_power_of(n: &BigInt, b: &BigInt) -> bool {
    let mut n = n.clone();
    while (&n % b).to_u64() == Some(0) && n > BigInt::one() {
        n /= b;
    }
    n.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fam(a: u64, c: u64, b: u64) -> DigitPrefixFamily {
        DigitPrefixFamily::new(a, c, b, true).unwrap()
    }

    fn r(s: &str) -> Ratio {
        s.parse().unwrap()
    }

    fn check(f: &DigitPrefixFamily, xi: &Ratio, eps: &Ratio) {
        let res = f.approximate(xi, eps).unwrap();
        assert!(f.contains_big(&res.numerator), "{f} {res:?}");
        assert!(f.contains_big(&res.denominator), "{f} {res:?}");
        assert_eq!(res.value, Ratio::new(res.numerator.clone(), res.denominator.clone()).unwrap());
        assert_eq!(res.error, (xi - &res.value).abs());
        assert!(res.error < *eps, "{f} {xi} {res:?}");
    }

    #[test]
    fn validation() {
        assert!(DigitPrefixFamily::new(2, 2, 10, false).is_err());
        assert!(DigitPrefixFamily::new(1, 11, 10, false).is_err());
        assert!(DigitPrefixFamily::new(0, 1, 10, false).is_err());
        assert!(DigitPrefixFamily::new(1, 1, 1, false).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let f = DigitPrefixFamily::new(1, 2, 10, false).unwrap();
        let mut want = vec![1];
        want.extend(10..=19);
        assert_eq!(f.enumerate(25), want);
        let f = DigitPrefixFamily::new(2, 3, 10, false).unwrap();
        let mut want = vec![2];
        want.extend(20..=29);
        assert_eq!(f.enumerate(30), want);
        let f = fam(2, 3, 10);
        assert_eq!(f.enumerate(30), [1, 2, 10, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29]);
    }

    #[test]
    fn enumeration_matches_membership() {
        for (a, c, b) in [(1, 2, 3), (2, 3, 4), (3, 5, 7), (1, 10, 10), (4, 5, 5)] {
            for powers in [false, true] {
                let f = DigitPrefixFamily::new(a, c, b, powers).unwrap();
                let listed = f.enumerate(5000);
                let naive: Vec<u64> = (1..=5000).filter(|&n| f.contains(n)).collect();
                assert_eq!(listed, naive, "{f}");
            }
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(fam(1, 2, 3).classify(), Classification::DenseWithPowers);
        assert_eq!(fam(1, 2, 10).classify(), Classification::NotDense);
        assert_eq!(fam(2, 3, 4).classify(), Classification::DenseWithPowers);
        // ab = c^2 = 4: neither condition holds, yet [1/2, 2] spans a period
        assert_eq!(fam(1, 2, 4).classify_by_conditions(), Classification::Indeterminate);
        assert_eq!(fam(1, 2, 4).classify(), Classification::DenseWithPowers);
        // ab = 15 < 16, but (4/3, 5/3) * 5^j stays empty
        assert_eq!(fam(3, 4, 5).classify_by_conditions(), Classification::DenseWithPowers);
        assert_eq!(fam(3, 4, 5).classify(), Classification::NotDense);
    }

    #[test]
    fn approximation_examples() {
        let f = fam(1, 2, 3);
        check(&f, &r("5"), &r("1/10"));
        let one = f.approximate(&r("1"), &r("1/2")).unwrap();
        assert_eq!((one.value.clone(), one.error.is_zero()), (r("1"), true));
        check(&fam(2, 3, 4), &r("1/2"), &r("1/100"));
    }

    #[test]
    fn refuses_outside_hypothesis() {
        let err = fam(1, 2, 10).approximate(&r("3"), &r("1/10")).unwrap_err();
        assert!(matches!(err, Error::Certification(_)));
        assert!(matches!(fam(1, 2, 3).approximate(&r("0"), &r("1/10")), Err(Error::Parameter(_))));
        assert!(matches!(fam(1, 2, 3).approximate(&r("1"), &r("0")), Err(Error::Parameter(_))));
    }

    #[test]
    fn true_gap_reported() {
        // ab = 15 < 25 yet nothing lands strictly between 5/3 and 3.
        let f = fam(3, 5, 5);
        assert_eq!(f.closure_gaps(), vec![(r("5/3"), r("3"))]);
        let err = f.approximate(&r("2"), &r("1/1000")).unwrap_err();
        assert!(matches!(err, Error::Certification(ref m) if m.contains("gap")), "{err}");
        assert!(fam(1, 2, 3).closure_gaps().is_empty());
    }

    #[test]
    fn closure_endpoints_are_reachable() {
        let f = fam(3, 5, 5);
        check(&f, &r("5/3"), &r("1/1000"));
        check(&f, &r("3"), &r("1/1000"));
        check(&f, &r("5"), &r("1/1000"));
    }

    #[test]
    fn certificate_examples() {
        let f = DigitPrefixFamily::new(1, 2, 10, false).unwrap();
        let c0 = f.gap_certificate(0).unwrap();
        assert_eq!(c0.region, Region::interval(r("2"), r("5")).unwrap());
        let c1 = f.gap_certificate(1).unwrap();
        assert_eq!(c1.region, Region::interval(r("20"), r("50")).unwrap());
        let err = DigitPrefixFamily::new(1, 2, 4, false).unwrap().gap_certificate(0).unwrap_err();
        assert!(matches!(err, Error::Certification(_)));
    }

    #[test]
    fn classify_never_contradicts() {
        for b in 2..=40u64 {
            for c in 2..=b {
                for a in 1..c {
                    let f = fam(a, c, b);
                    match f.classify() {
                        Classification::DenseWithPowers => assert!(f.closure_gaps().is_empty()),
                        Classification::NotDense => assert!(f.sparse_condition() && !f.closure_gaps().is_empty()),
                        Classification::Indeterminate => panic!("{f}: a^2 b <= c^2 already makes A dense"),
                    }
                    // A alone is dense exactly when a^2 b <= c^2.
                    assert_eq!(f.without_powers().closure_gaps().is_empty(), !f.sparse_condition(), "{f}");
                }
            }
        }
    }

    #[test]
    fn leading_digit_pairs_meet_dense_condition() {
        for b in 4..=60u64 {
            for a in [b - 1, b - 2] {
                let f = fam(a, a + 1, b);
                assert_eq!(f.classify_by_conditions(), Classification::DenseWithPowers, "b={b} a={a}");
                if (a, b) == (2, 4) {
                    assert_eq!(f.classify(), Classification::DenseWithPowers);
                    continue;
                }
                // The condition alone leaves b/a < x < a uncovered.
                assert_eq!(f.classify(), Classification::NotDense, "b={b} a={a}");
                assert_eq!(f.closure_gaps(), [(Ratio::new(b, a).unwrap(), Ratio::from(a))], "b={b} a={a}");
            }
        }
    }

    proptest! {
        #[test]
        fn approximation_is_sound(
            b in 2u64..=12,
            seed_a in 0u64..100,
            seed_c in 0u64..100,
            (xn, xd) in (1i64..=1_000_000, 1i64..=1000),
            e in 0u32..=6,
        ) {
            let c = 2 + seed_c % (b - 1);
            let a = 1 + seed_a % (c - 1);
            let f = fam(a, c, b);
            prop_assume!(f.dense_condition() || f.classify() == Classification::DenseWithPowers);
            let xi = Ratio::new(xn, xd).unwrap();
            prop_assume!(xi > r("1/1000") && xi < r("1000"));
            prop_assume!(f.gap_containing(&xi).is_none());
            let eps = Ratio::new(1, 10i64.pow(e)).unwrap();
            check(&f, &xi, &eps);
        }
    }
}
