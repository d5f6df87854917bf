//! Prime infrastructure: a segmented sieve with a configurable ceiling, primes in
//! arithmetic progressions, the interval search `[alpha^n, alpha^(n+1)]`, the
//! Dirichlet diagnostic `G(x)` and the constructive prime-ratio search.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::Ratio;

pub const DEFAULT_SIEVE_CEILING: u64 = 100_000_000;

const SEGMENT: u64 = 1 << 18;

/// Segmented sieve of Eratosthenes over `[2, ceiling]`.
///
/// Only the base primes up to `sqrt(ceiling)` are cached, so every query is a
/// pure function of its arguments.
#[derive(Clone, Debug)]
pub struct Sieve {
    ceiling: u64,
    base: Arc<Vec<u64>>,
}

impl Default for Sieve {
    fn default() -> Self {
        Sieve::new(DEFAULT_SIEVE_CEILING)
    }
}

impl Sieve {
    pub fn new(ceiling: u64) -> Self {
        let root = ceiling.max(4).isqrt() + 1;
        Sieve { ceiling, base: Arc::new(simple_sieve(root)) }
    }

    pub fn ceiling(&self) -> u64 {
        self.ceiling
    }

    fn check(&self, hi: u64) -> Result<()> {
        if hi > self.ceiling {
            Err(Error::Capacity { requested: hi, ceiling: self.ceiling })
        } else {
            Ok(())
        }
    }

    /// All primes in `[lo, hi]`.
    pub fn primes_between(&self, lo: u64, hi: u64) -> Result<Vec<u64>> {
        self.check(hi)?;
        let lo = lo.max(2);
        if lo > hi {
            return Ok(Vec::new());
        }
        let starts: Vec<u64> = (lo..=hi).step_by(SEGMENT as usize).collect();
        let chunks: Vec<Vec<u64>> = starts
            .par_iter()
            .map(|&s| self.segment(s, (s + SEGMENT - 1).min(hi)))
            .collect();
        Ok(chunks.concat())
    }

    fn segment(&self, lo: u64, hi: u64) -> Vec<u64> {
        let len = (hi - lo + 1) as usize;
        let mut composite = vec![false; len];
        for &p in self.base.iter() {
            if p * p > hi {
                break;
            }
            let mut m = (lo.div_ceil(p) * p).max(p * p);
            while m <= hi {
                composite[(m - lo) as usize] = true;
                m += p;
            }
        }
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| lo + i as u64)
            .collect()
    }

    /// Number of primes `<= x`.
    pub fn count_up_to(&self, x: u64) -> Result<u64> {
        Ok(self.primes_between(2, x)?.len() as u64)
    }
}

fn simple_sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn totient(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The primes `p ≡ residue (mod modulus)`, with `gcd(residue, modulus) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ApFamily {
    residue: u64,
    modulus: u64,
}

impl ApFamily {
    pub fn new(residue: u64, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::param(format!("modulus {modulus} must be at least 2")));
        }
        let residue = residue % modulus;
        if residue.gcd(&modulus) != 1 {
            return Err(Error::param(format!(
                "gcd({residue}, {modulus}) != 1: the progression holds finitely many primes"
            )));
        }
        Ok(ApFamily { residue, modulus })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn contains(&self, n: u64) -> bool {
        n % self.modulus == self.residue && is_prime(n)
    }

    pub fn totient(&self) -> u64 {
        totient(self.modulus)
    }
}

impl std::fmt::Display for ApFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} mod {}", self.residue, self.modulus)
    }
}

/// All primes of the family in `[lo, hi]`, sorted.
pub fn primes_in_interval(family: &ApFamily, lo: u64, hi: u64, sieve: &Sieve) -> Result<Vec<u64>> {
    if lo < 2 || lo > hi {
        return Err(Error::param(format!("need 2 <= lo <= hi, got [{lo}, {hi}]")));
    }
    Ok(sieve
        .primes_between(lo, hi)?
        .into_iter()
        .filter(|p| p % family.modulus == family.residue)
        .collect())
}

/// `π(a, m, x)`: primes of the family up to `x`.
pub fn count_in_family(family: &ApFamily, x: u64, sieve: &Sieve) -> Result<u64> {
    if x < 2 {
        return Ok(0);
    }
    Ok(primes_in_interval(family, 2, x, sieve)?.len() as u64)
}

/// Integer span `[ceil(lo), floor(hi)]` of a rational interval, clamped below at 2.
fn integer_span(lo: &Ratio, hi: &Ratio) -> Option<(u64, u64)> {
    let lo = lo.ceil().max(BigInt::from(2)).to_u64()?;
    let hi = hi.floor().to_u64()?;
    Some((lo, hi))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalPrime {
    pub n: i64,
    pub lo: Ratio,
    pub hi: Ratio,
    /// Least prime of the family in `[lo, hi]`, if any.
    pub least: Option<u64>,
}

/// For each `n`, the least prime of the family in `[alpha^n, alpha^(n+1)]`.
pub fn interval_prime_search(
    family: &ApFamily,
    alpha: &Ratio,
    ns: std::ops::RangeInclusive<i64>,
    sieve: &Sieve,
) -> Result<Vec<IntervalPrime>> {
    if *alpha <= Ratio::one() {
        return Err(Error::param(format!("alpha = {alpha} must exceed 1")));
    }
    let mut rows = Vec::new();
    for n in ns {
        let exp = i32::try_from(n).map_err(|_| Error::param("exponent out of range"))?;
        let lo = alpha.pow(exp);
        let hi = &lo * alpha;
        let (ilo, ihi) = integer_span(&lo, &hi).ok_or(Error::Capacity {
            requested: u64::MAX,
            ceiling: sieve.ceiling(),
        })?;
        sieve.check(ihi)?;
        let least = if ilo > ihi {
            None
        } else {
            primes_in_interval(family, ilo, ihi, sieve)?.first().copied()
        };
        rows.push(IntervalPrime { n, lo, hi, least });
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirichletDiagnostic {
    pub x: Ratio,
    /// `π(a, m, x)`, exact.
    pub count: u64,
    /// `φ(m) π(a, m, x) ln(x) / x`, with `ln` from `f64`.
    pub g: f64,
    /// `log_alpha(G)`; absent when `G = 0`.
    pub l: Option<f64>,
}

pub fn dirichlet_diagnostic(
    family: &ApFamily,
    xs: &[Ratio],
    alpha: &Ratio,
    sieve: &Sieve,
) -> Result<Vec<DirichletDiagnostic>> {
    if *alpha <= Ratio::one() {
        return Err(Error::param(format!("alpha = {alpha} must exceed 1")));
    }
    let phi = family.totient() as f64;
    xs.iter()
        .map(|x| {
            if *x <= Ratio::one() {
                return Err(Error::param(format!("evaluation point {x} must exceed 1")));
            }
            let top = x.floor().to_u64().ok_or(Error::param("evaluation point too large"))?;
            let count = count_in_family(family, top, sieve)?;
            let xf = x.to_f64();
            let g = phi * count as f64 * xf.ln() / xf;
            let l = (g > 0.0).then(|| g.ln() / alpha.to_f64().ln());
            Ok(DirichletDiagnostic { x: x.clone(), count, g, l })
        })
        .collect()
}

/// Largest `1 + k/16` with `alpha^2 < ratio`, refining the denominator when no
/// such `k >= 1` exists.
pub fn choose_alpha(ratio: &Ratio) -> Result<Ratio> {
    if *ratio <= Ratio::one() {
        return Err(Error::param(format!("window ratio {ratio} must exceed 1")));
    }
    for shift in 4..48u32 {
        let den = BigInt::one() << shift;
        // (1 + k/den)^2 < ratio; start from an upper estimate and walk down.
        let guess = ((ratio.to_f64().sqrt() - 1.0) * 2f64.powi(shift as i32)).ceil() as i64 + 1;
        let mut k = guess.max(1);
        while k >= 1 {
            let a = Ratio::new(&den + k, den.clone())?;
            if &a * &a < *ratio {
                return Ok(a);
            }
            k -= 1;
        }
    }
    Err(Error::param(format!("window ratio {ratio} is too close to 1")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRatio {
    pub p: u64,
    pub q: u64,
    pub alpha: Ratio,
    /// Exponent with `[alpha^ell, alpha^(ell+1)] ⊂ [c q, d q]`.
    pub ell: i64,
    /// Denominators tried before success.
    pub attempts: u64,
}

impl PrimeRatio {
    pub fn value(&self) -> Ratio {
        Ratio::new(self.p, self.q).expect("q is prime")
    }
}

/// Finds primes `p` in `numer` and `q` in `denom` with `c <= p/q <= d`.
///
/// Walks `q` upward through the denominator family, places a power interval
/// `[alpha^ell, alpha^(ell+1)]` inside `[cq, dq]`, and looks for `p` there.
pub fn prime_ratio_in_window(
    numer: &ApFamily,
    denom: &ApFamily,
    c: &Ratio,
    d: &Ratio,
    sieve: &Sieve,
) -> Result<PrimeRatio> {
    if !c.is_positive() || c >= d {
        return Err(Error::param(format!("need 0 < c < d, got [{c}, {d}]")));
    }
    let alpha = choose_alpha(&(d / c))?;
    // Start where c*q >= 2 so the power interval can hold a prime.
    let q_start = (Ratio::from(2u64) / c).ceil().to_u64().unwrap_or(2).max(2);

    let mut ell: i64 = 0;
    let mut power = Ratio::one();
    let mut attempts = 0u64;
    let mut block_lo = q_start;
    const BLOCK: u64 = 1 << 14;
    loop {
        let block_hi = block_lo.saturating_add(BLOCK);
        if (d * Ratio::from(block_lo)).floor() > BigInt::from(sieve.ceiling()) || block_hi > sieve.ceiling() {
            return Err(Error::SearchExhausted(format!(
                "no p/q in [{c}, {d}] with p in {numer}, q in {denom} below sieve ceiling {} ({attempts} denominators tried)",
                sieve.ceiling()
            )));
        }
        for q in primes_in_interval(denom, block_lo, block_hi, sieve)? {
            attempts += 1;
            let cq = c * Ratio::from(q);
            while power < cq {
                power = &power * &alpha;
                ell += 1;
            }
            let top = &power * &alpha;
            debug_assert!(top <= d * Ratio::from(q));
            let (lo, hi) = match integer_span(&power, &top) {
                Some(span) => span,
                None => continue,
            };
            if hi > sieve.ceiling() {
                return Err(Error::SearchExhausted(format!(
                    "interval [{lo}, {hi}] passes sieve ceiling {}",
                    sieve.ceiling()
                )));
            }
            if lo > hi {
                continue;
            }
            if let Some(&p) = primes_in_interval(numer, lo, hi, sieve)?.first() {
                let out = PrimeRatio { p, q, alpha: alpha.clone(), ell, attempts };
                let v = out.value();
                assert!(*c <= v && v <= *d, "constructed ratio left the window");
                return Ok(out);
            }
        }
        block_lo = block_hi + 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
    }

    fn fam(a: u64, m: u64) -> ApFamily {
        ApFamily::new(a, m).unwrap()
    }

    #[test]
    fn interval_examples() {
        let s = Sieve::new(1_000_000);
        assert_eq!(primes_in_interval(&fam(1, 4), 16, 32, &s).unwrap(), vec![17, 29]);
        assert_eq!(primes_in_interval(&fam(3, 4), 2, 10, &s).unwrap(), vec![3, 7]);
        assert!(primes_in_interval(&fam(1, 4), 24, 28, &s).unwrap().is_empty());
    }

    #[test]
    fn capacity_is_enforced() {
        let s = Sieve::new(1000);
        assert_eq!(
            primes_in_interval(&fam(1, 4), 900, 1001, &s),
            Err(Error::Capacity { requested: 1001, ceiling: 1000 })
        );
    }

    #[test]
    fn family_requires_coprime_residue() {
        assert!(ApFamily::new(2, 4).is_err());
        assert!(ApFamily::new(1, 1).is_err());
        assert_eq!(ApFamily::new(5, 4).unwrap().residue(), 1);
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), naive_is_prime(n), "{n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn sieve_crosses_segment_boundaries() {
        let s = Sieve::new(2_000_000);
        let lo = SEGMENT - 50;
        let hi = 2 * SEGMENT + 50;
        let got = s.primes_between(lo, hi).unwrap();
        let want: Vec<u64> = (lo..=hi).filter(|&n| naive_is_prime(n)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn interval_search_examples() {
        let s = Sieve::new(1_000_000);
        let rows = interval_prime_search(&fam(1, 4), &Ratio::from(2u64), 4..=4, &s).unwrap();
        assert_eq!(rows[0].least, Some(17));
        let a = Ratio::new(3, 2).unwrap();
        let rows = interval_prime_search(&fam(1, 2), &a, 10..=10, &s).unwrap();
        assert_eq!(rows[0].least, Some(59));
    }

    #[test]
    fn dirichlet_examples() {
        let s = Sieve::new(1_000_000);
        let x = Ratio::from(10_000u64);
        let diag = dirichlet_diagnostic(&fam(1, 4), &[x], &Ratio::from(2u64), &s).unwrap();
        assert_eq!(diag[0].count, 609);
        let expected = 2.0 * 609.0 * (10_000f64).ln() / 10_000.0;
        assert!((diag[0].g - expected).abs() < 1e-12);
        assert!((diag[0].g - 1.122).abs() < 1e-3);
        assert!((diag[0].l.unwrap() - 0.166).abs() < 1e-3);

        let small = dirichlet_diagnostic(&fam(1, 4), &[Ratio::new(3, 2).unwrap()], &Ratio::from(2u64), &s).unwrap();
        assert_eq!(small[0].g, 0.0);
        assert_eq!(small[0].l, None);
    }

    #[test]
    fn alpha_choice() {
        assert_eq!(choose_alpha(&Ratio::from(2u64)).unwrap(), Ratio::new(22, 16).unwrap());
        // (17/16)^2 > 11/10, so the denominator is refined.
        let a = choose_alpha(&Ratio::new(11, 10).unwrap()).unwrap();
        assert!(a > Ratio::one() && &a * &a < Ratio::new(11, 10).unwrap());
        assert_eq!(a, Ratio::new(33, 32).unwrap());
    }

    #[test]
    fn prime_ratio_examples() {
        let s = Sieve::new(10_000_000);
        let r = prime_ratio_in_window(&fam(1, 4), &fam(3, 4), &Ratio::from(1u64), &Ratio::from(2u64), &s).unwrap();
        assert_eq!(r.p % 4, 1);
        assert_eq!(r.q % 4, 3);
        assert!(is_prime(r.p) && is_prime(r.q));
        assert!(r.value() >= Ratio::from(1u64) && r.value() <= Ratio::from(2u64));

        let r = prime_ratio_in_window(&fam(2, 3), &fam(1, 4), &Ratio::from(3u64), &Ratio::from(4u64), &s).unwrap();
        assert!(fam(2, 3).contains(r.p) && fam(1, 4).contains(r.q));
        assert!(r.value() >= Ratio::from(3u64) && r.value() <= Ratio::from(4u64));

        assert!(matches!(
            prime_ratio_in_window(&fam(1, 3), &fam(1, 3), &Ratio::one(), &Ratio::one(), &s),
            Err(Error::Parameter(_))
        ));
    }
}
