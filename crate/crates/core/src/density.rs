//! Counting densities and the constructive search for a quotient in a window.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::certificate::{params, GapCertificate, Region, Source};
use crate::error::{Error, Result};
use crate::primes::{is_prime, Sieve};
use crate::ratio::Ratio;
use crate::sets::NaturalSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityMode {
    /// `|A(X)| / X`
    Natural,
    /// `|A(X)| / X` with its running minimum.
    Lower,
    /// `|A(X)| / pi(X)` for a set of primes.
    Relative,
}

impl FromStr for DensityMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(DensityMode::Natural),
            "lower" => Ok(DensityMode::Lower),
            "relative" => Ok(DensityMode::Relative),
            _ => Err(Error::param(format!("unknown density mode {s:?}"))),
        }
    }
}

impl fmt::Display for DensityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DensityMode::Natural => "natural",
            DensityMode::Lower => "lower",
            DensityMode::Relative => "relative",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityEstimate {
    pub mode: DensityMode,
    pub at: Vec<u64>,
    pub counts: Vec<u64>,
    pub ratios: Vec<Ratio>,
    /// Running minimum of `ratios`, in lower mode.
    pub running_min: Option<Vec<Ratio>>,
}

pub fn density_estimate(set: &NaturalSet, mode: DensityMode, points: &[u64]) -> Result<DensityEstimate> {
    if points.is_empty() {
        return Err(Error::param("no sample points"));
    }
    if points[0] == 0 || points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("sample points must be positive and strictly increasing"));
    }
    let top = *points.last().expect("nonempty");
    if top > set.bound {
        return Err(Error::param(format!("sample point {top} exceeds the element bound {}", set.bound)));
    }
    let elems = set.enumerate()?;
    let counts: Vec<u64> = points.iter().map(|&x| elems.partition_point(|&e| e <= x) as u64).collect();
    let ratios = match mode {
        DensityMode::Natural | DensityMode::Lower => {
            counts.iter().zip(points).map(|(&c, &x)| Ratio::new(c, x)).collect::<Result<Vec<_>>>()?
        }
        DensityMode::Relative => {
            if let Some(&w) = elems.iter().find(|&&e| e <= top && !is_prime(e)) {
                return Err(Error::domain(format!("relative density needs a set of primes; {w} is not prime")));
            }
            if points[0] < 2 {
                return Err(Error::param("relative density needs sample points >= 2"));
            }
            let sieve = Sieve::new(top);
            counts
                .iter()
                .zip(points)
                .map(|(&c, &x)| Ratio::new(c, sieve.count_up_to(x)?))
                .collect::<Result<Vec<_>>>()?
        }
    };
    let running_min = (mode == DensityMode::Lower).then(|| {
        let mut m: Option<Ratio> = None;
        ratios
            .iter()
            .map(|r| {
                let next = match m.take() {
                    Some(cur) if cur <= *r => cur,
                    _ => r.clone(),
                };
                m = Some(next.clone());
                next
            })
            .collect()
    });
    Ok(DensityEstimate { mode, at: points.to_vec(), counts, ratios, running_min })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowMethod {
    Counting,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowRatio {
    pub u: u64,
    pub v: u64,
    pub value: Ratio,
    /// Threshold where `U` first has a member in `(aX, bX]`, when found.
    pub x0: Option<u64>,
    pub method: WindowMethod,
}

// Smallest member of `elems` in (a*v, b*v].
fn first_in_window(elems: &[u64], a: &Ratio, b: &Ratio, v: u64) -> Option<u64> {
    let lo = (a * &Ratio::from(v)).floor().to_u64()?;
    let i = elems.partition_point(|&u| u <= lo);
    let u = *elems.get(i)?;
    (Ratio::new(u, v).ok()? <= *b).then_some(u)
}

/// Finds `u` in `U` and `v` in `V` with `a < u/v <= b`.
///
/// `gamma_hat` is the caller's lower estimate of the density of `U`; it only
/// seeds the threshold search. Failure within the bounds is reported as
/// exhaustion, never as evidence against density.
pub fn ratio_in_window(u_set: &NaturalSet, v_set: &NaturalSet, a: &Ratio, b: &Ratio, gamma_hat: &Ratio) -> Result<WindowRatio> {
    if !a.is_positive() || a >= b {
        return Err(Error::param(format!("need 0 < a < b, got ({a}, {b}]")));
    }
    if !gamma_hat.is_positive() {
        return Err(Error::param("density estimate must be positive"));
    }
    let us = u_set.enumerate()?;
    let vs = v_set.enumerate()?;
    if vs.is_empty() {
        return Err(Error::domain("denominator set is empty within its bound"));
    }
    let start = (gamma_hat * (b - a)).recip()?.floor().to_u64().unwrap_or(u64::MAX).max(1);
    let mut x0 = None;
    let mut x = start;
    while (b * &Ratio::from(x)).floor().to_u64().is_some_and(|top| top <= u_set.bound) {
        if first_in_window(&us, a, b, x).is_some() {
            x0 = Some(x);
            break;
        }
        match x.checked_mul(2) {
            Some(n) => x = n,
            None => break,
        }
    }
    let make = |u: u64, v: u64, method| WindowRatio { u, v, value: Ratio::new(u, v).expect("v > 0"), x0, method };
    if let Some(x0) = x0 {
        let i = vs.partition_point(|&v| v < x0);
        for &v in &vs[i..] {
            if let Some(u) = first_in_window(&us, a, b, v) {
                return Ok(make(u, v, WindowMethod::Counting));
            }
        }
    }
    for &v in &vs {
        if let Some(u) = first_in_window(&us, a, b, v) {
            return Ok(make(u, v, WindowMethod::Exhaustive));
        }
    }
    Err(Error::SearchExhausted(format!(
        "no u/v in ({a}, {b}] with u <= {} and v <= {}",
        u_set.bound, v_set.bound
    )))
}

/// An open interval around `t` free of `u / v_j` for every `u` in `U`.
///
/// The radius is the least `dist(t v_j, U) / v_j`. Members of `U` above its
/// bound are only known to be at least `bound + 1`, which keeps the radius
/// sound for the untruncated set.
pub fn finite_denominator_gap(u_set: &NaturalSet, vs: &[u64], t: &Ratio) -> Result<GapCertificate> {
    if vs.is_empty() || vs.contains(&0) {
        return Err(Error::param("denominators must be a nonempty list of positive integers"));
    }
    if !t.is_positive() {
        return Err(Error::param("target must be positive"));
    }
    let us = u_set.enumerate()?;
    let beyond = Ratio::from(u_set.bound + 1);
    let mut radius: Option<Ratio> = None;
    for &v in vs {
        let tv = t * &Ratio::from(v);
        if tv.is_integer() && tv.numer().to_u64().is_some_and(|n| u_set.is_member(n)) {
            return Err(Error::domain(format!("target {t} equals {tv}/{v}, a quotient of the set")));
        }
        let fl = tv.floor().to_u64().ok_or_else(|| Error::param("target too large"))?;
        let i = us.partition_point(|&u| u <= fl);
        let below = i.checked_sub(1).map(|k| &tv - &Ratio::from(us[k]));
        let above = us.get(i).map_or_else(|| &beyond - &tv, |&u| &Ratio::from(u) - &tv);
        let dist = match below {
            Some(bl) if bl < above => bl,
            _ => above,
        };
        let r = &dist / &Ratio::from(v);
        if radius.as_ref().is_none_or(|cur| r < *cur) {
            radius = Some(r);
        }
    }
    let radius = radius.expect("nonempty denominators");
    let lo = t - &radius;
    let lo = if lo.is_negative() { Ratio::zero() } else { lo };
    let vlist = vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_");
    GapCertificate::new(
        Region::interval(lo, t + &radius)?,
        Source::FiniteDenominators,
        params([("t", t.to_string()), ("v", vlist)]),
    )
}
