//! Prime elements of Z[i] and Z[sqrt(-2)], norm-gap probing, and the sparse
//! prime selection whose quotients avoid an annulus.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::certificate::{params, GapCertificate, Region, Source};
use crate::error::{Error, Result};
use crate::primes::{is_prime, Sieve};
use crate::quad::QuadInt;
use crate::ratio::Ratio;

fn check_ring(d: u64) -> Result<()> {
    match d {
        1 | 2 => Ok(()),
        _ => Err(Error::UnsupportedRing(d)),
    }
}

/// Whether a rational prime stays prime in the ring.
fn is_inert(p: u64, d: u64) -> bool {
    match d {
        1 => p % 4 == 3,
        2 => matches!(p % 8, 5 | 7),
        _ => unreachable!("ring checked by caller"),
    }
}

/// Whether `n` is the norm of some prime element.
pub fn is_prime_norm(n: u64, d: u64) -> Result<bool> {
    check_ring(d)?;
    if is_prime(n) {
        // Inert primes have no element of norm p.
        return Ok(!is_inert(n, d));
    }
    let r = n.isqrt();
    Ok(r * r == n && is_prime(r) && is_inert(r, d))
}

/// Prime test for an element of Z[i] or Z[sqrt(-2)].
pub fn is_prime_element(z: &QuadInt) -> Result<bool> {
    check_ring(z.d)?;
    let n = z.norm();
    if is_prime(n) {
        return Ok(true);
    }
    let r = n.isqrt();
    // An element of norm p^2 for an inert p is an associate of p.
    Ok(r * r == n && is_prime(r) && is_inert(r, z.d) && (z.x == 0 || z.y == 0))
}

/// Canonical associate: for `d = 1`, `x > 0` and `y >= 0`; for `d = 2`,
/// `x > 0`, or `x = 0` and `y > 0`.
pub fn is_canonical(z: &QuadInt) -> bool {
    match z.d {
        1 => z.x > 0 && z.y >= 0,
        _ => z.x > 0 || (z.x == 0 && z.y > 0),
    }
}

/// Canonical elements of norm exactly `n`, sorted by `(x, y)`.
fn canonical_with_norm(n: u64, d: u64) -> Vec<QuadInt> {
    let mut out = Vec::new();
    let ymax = (n / d).isqrt() as i64;
    for y in -ymax..=ymax {
        let rest = n - d * (y * y) as u64;
        let x = rest.isqrt();
        if x * x == rest {
            for x in [x as i64, -(x as i64)] {
                let z = QuadInt::new(x, y, d);
                if is_canonical(&z) && !out.contains(&z) {
                    out.push(z);
                }
            }
        }
    }
    out.sort_by_key(|z| (z.x, z.y));
    out
}

/// Prime elements with norm `<= bound`, one per associate class, sorted by `(norm, x, y)`.
pub fn quad_primes(d: u64, bound: u64) -> Result<Vec<QuadInt>> {
    check_ring(d)?;
    let mut out = Vec::new();
    let xmax = bound.isqrt() as i64;
    for x in 0..=xmax {
        let ymax = ((bound - (x * x) as u64) / d).isqrt() as i64;
        for y in -ymax..=ymax {
            let z = QuadInt::new(x, y, d);
            if is_canonical(&z) && is_prime_element(&z)? {
                out.push(z);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Sorted norms of prime elements up to `limit`.
pub fn prime_norms(d: u64, limit: u64, sieve: &Sieve) -> Result<Vec<u64>> {
    check_ring(d)?;
    let mut out: Vec<u64> = Vec::new();
    for p in sieve.primes_between(2, limit)? {
        if !is_inert(p, d) {
            out.push(p);
        }
    }
    for p in sieve.primes_between(2, limit.isqrt())? {
        if is_inert(p, d) {
            out.push(p * p);
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum BertrandProbe {
    /// Every `[x, B x]` with `x` in the range holds a prime-element norm.
    Ok { lo: Ratio, hi: Ratio },
    /// `[x, B x]` holds no prime-element norm.
    Counterexample { x: Ratio },
}

/// Checks, for every real `x` in `[lo, hi]`, that `[x, B x]` contains a
/// prime-element norm. Only evidence over the range; never a bound on the
/// true constant.
pub fn bertrand_probe(d: u64, base: &Ratio, lo: &Ratio, hi: &Ratio, sieve: &Sieve) -> Result<BertrandProbe> {
    check_ring(d)?;
    if *base <= Ratio::one() {
        return Err(Error::param(format!("B = {base} must exceed 1")));
    }
    if !lo.is_positive() || lo > hi {
        return Err(Error::param(format!("need 0 < lo <= hi, got [{lo}, {hi}]")));
    }
    let limit = (base * hi).floor().to_u64().ok_or(Error::param("probe range too large"))?;
    let norms = prime_norms(d, limit, sieve)?;
    let scaled = |n: u64| Ratio::from(n);

    // x = lo itself
    let first = norms.partition_point(|&n| scaled(n) < *lo);
    if norms.get(first).is_none_or(|&n| scaled(n) > base * lo) {
        return Ok(BertrandProbe::Counterexample { x: lo.clone() });
    }
    // x just above each norm in [lo, hi)
    for i in first..norms.len() {
        let n = scaled(norms[i]);
        if n >= *hi {
            break;
        }
        let next_ok = norms.get(i + 1).is_some_and(|&m| scaled(m) <= base * &n);
        if !next_ok {
            let reach = match norms.get(i + 1) {
                Some(&m) => (scaled(m) / base).min(hi.clone()),
                None => hi.clone(),
            };
            let x = (&n + &reach) / Ratio::from(2u64);
            return Ok(BertrandProbe::Counterexample { x });
        }
    }
    Ok(BertrandProbe::Ok { lo: lo.clone(), hi: hi.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelectedPrime {
    pub n: u32,
    pub element: QuadInt,
    pub norm: u64,
    pub band: (Ratio, Ratio),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeBandSelection {
    pub d: u64,
    pub base: Ratio,
    pub selected: Vec<SelectedPrime>,
    /// `1/B < |z|^2 < B`.
    pub annulus: Region,
    /// No quotient of two distinct selected elements lies in `annulus`.
    pub pairwise_clear: bool,
    /// `(1/B, 1)` and `(1, B)`: the annulus with `|z| = 1` removed, since
    /// every `alpha/alpha = 1` is a quotient.
    pub certificates: Vec<GapCertificate>,
}

/// Picks, for `n = 1..=n_max`, the prime element of least norm in
/// `[B^(2n-1), B^(2n)]`, ties broken by `(x, y)`.
pub fn prime_band_selection(d: u64, base: &Ratio, n_max: u32) -> Result<PrimeBandSelection> {
    check_ring(d)?;
    if *base <= Ratio::one() {
        return Err(Error::param(format!("B = {base} must exceed 1")));
    }
    if n_max == 0 {
        return Err(Error::param("n_max must be at least 1"));
    }
    let mut selected = Vec::new();
    for n in 1..=n_max {
        let lo = base.pow(2 * n as i32 - 1);
        let hi = base.pow(2 * n as i32);
        let start = lo.ceil().to_u64().ok_or(Error::param("band exceeds u64"))?;
        let end = hi.floor().to_u64().ok_or(Error::param("band exceeds u64"))?;
        let mut found = None;
        for norm in start.max(2)..=end {
            if is_prime_norm(norm, d)? {
                found = Some(norm);
                break;
            }
        }
        let norm = found.ok_or(Error::BandEmpty { n })?;
        let element = *canonical_with_norm(norm, d).first().expect("prime norm has an element");
        selected.push(SelectedPrime { n, element, norm, band: (lo, hi) });
    }

    let inv = base.recip()?;
    let annulus = Region::annulus(inv.clone(), base.clone())?;
    let pairwise_clear = selected.iter().all(|a| {
        selected
            .iter()
            .filter(|b| b.n != a.n)
            .all(|b| !annulus.contains_value(&Ratio::new(a.norm, b.norm).expect("nonzero norm")))
    });
    let p = |side: &str| {
        params([
            ("d", d.to_string()),
            ("base", base.to_string()),
            ("n_max", n_max.to_string()),
            ("side", side.to_string()),
        ])
    };
    let certificates = vec![
        GapCertificate::new(Region::annulus(inv, Ratio::one())?, Source::PrimeAnnulus, p("inner"))?,
        GapCertificate::new(Region::annulus(Ratio::one(), base.clone())?, Source::PrimeAnnulus, p("outer"))?,
    ];
    Ok(PrimeBandSelection { d, base: base.clone(), selected, annulus, pairwise_clear, certificates })
}
