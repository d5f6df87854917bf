//! Finite truncations of the sets whose quotients are studied.
//!
//! Natural kinds are bounded by value and hold positive integers; quadratic
//! kinds are bounded by norm and hold nonzero elements. Enumeration is
//! sorted and duplicate-free, and agrees with `contains`.

use std::fmt;

use serde::Serialize;

use crate::digit_prefix::DigitPrefixFamily;
use crate::error::{Error, Result};
use crate::primes::{primes_in_interval, ApFamily, Sieve};
use crate::quad::{validate_d, QuadInt};
use crate::quadratic::{Band, Coloring, Ideal, NormBandPartition, Side};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NaturalKind {
    DigitPrefix { family: DigitPrefixFamily },
    ApPrimes { family: ApFamily },
    /// Positive integers `n ≡ residue (mod modulus)`; `0 mod 1` is all of N.
    Progression { residue: u64, modulus: u64 },
    /// Sorted and deduplicated on construction.
    Explicit { elements: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalSet {
    pub kind: NaturalKind,
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum QuadKind {
    Ideal { ideal: Ideal },
    NormBand { ideal: Ideal, partition: NormBandPartition, band: Band },
    Colored { ideal: Ideal, coloring: Coloring, side: Side },
    /// Sorted by `(norm, x, y)` and deduplicated on construction.
    Explicit { d: u64, elements: Vec<QuadInt> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticSet {
    pub kind: QuadKind,
    pub norm_bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "domain", rename_all = "lowercase")]
pub enum SetDescriptor {
    Natural(NaturalSet),
    Quadratic(QuadraticSet),
}

fn check_bound(bound: u64) -> Result<()> {
    if bound == 0 {
        return Err(Error::param("element bound must be at least 1"));
    }
    Ok(())
}

impl NaturalSet {
    pub fn new(kind: NaturalKind, bound: u64) -> Result<Self> {
        check_bound(bound)?;
        let kind = match kind {
            NaturalKind::Progression { residue, modulus } => {
                if modulus == 0 {
                    return Err(Error::param("progression modulus must be positive"));
                }
                NaturalKind::Progression { residue: residue % modulus, modulus }
            }
            NaturalKind::Explicit { mut elements } => {
                elements.sort_unstable();
                elements.dedup();
                NaturalKind::Explicit { elements }
            }
            k => k,
        };
        Ok(NaturalSet { kind, bound })
    }

    pub fn naturals(bound: u64) -> Result<Self> {
        Self::new(NaturalKind::Progression { residue: 0, modulus: 1 }, bound)
    }

    pub fn digit_prefix(family: DigitPrefixFamily, bound: u64) -> Result<Self> {
        Self::new(NaturalKind::DigitPrefix { family }, bound)
    }

    pub fn ap_primes(family: ApFamily, bound: u64) -> Result<Self> {
        Self::new(NaturalKind::ApPrimes { family }, bound)
    }

    pub fn explicit(elements: Vec<u64>, bound: u64) -> Result<Self> {
        Self::new(NaturalKind::Explicit { elements }, bound)
    }

    /// Membership in the untruncated set.
    pub fn is_member(&self, n: u64) -> bool {
        match &self.kind {
            NaturalKind::DigitPrefix { family } => family.contains(n),
            NaturalKind::ApPrimes { family } => family.contains(n),
            NaturalKind::Progression { residue, modulus } => n > 0 && n % modulus == *residue,
            NaturalKind::Explicit { elements } => elements.binary_search(&n).is_ok(),
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        n <= self.bound && self.is_member(n)
    }

    pub fn enumerate(&self) -> Result<Vec<u64>> {
        let n = self.bound;
        Ok(match &self.kind {
            NaturalKind::DigitPrefix { family } => family.enumerate(n),
            NaturalKind::ApPrimes { family } => {
                if n < 2 {
                    Vec::new()
                } else {
                    primes_in_interval(family, 2, n, &Sieve::new(n))?
                }
            }
            NaturalKind::Progression { residue, modulus } => {
                let first = if *residue == 0 { *modulus } else { *residue };
                (first..=n).step_by(*modulus as usize).collect()
            }
            NaturalKind::Explicit { elements } => elements.iter().copied().filter(|&e| e <= n).collect(),
        })
    }
}

impl fmt::Display for NaturalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            NaturalKind::DigitPrefix { family } => write!(f, "digit-prefix {family}")?,
            NaturalKind::ApPrimes { family } => write!(f, "primes {family}")?,
            NaturalKind::Progression { residue, modulus } => write!(f, "n = {residue} mod {modulus}")?,
            NaturalKind::Explicit { elements } => write!(f, "explicit ({} elements)", elements.len())?,
        }
        write!(f, ", n <= {}", self.bound)
    }
}

impl QuadraticSet {
    pub fn new(kind: QuadKind, norm_bound: u64) -> Result<Self> {
        check_bound(norm_bound)?;
        let kind = match kind {
            QuadKind::Explicit { d, mut elements } => {
                validate_d(d)?;
                if elements.iter().any(|z| z.d != d) {
                    return Err(Error::param(format!("explicit elements must lie in Z[sqrt(-{d})]")));
                }
                elements.sort();
                elements.dedup();
                QuadKind::Explicit { d, elements }
            }
            QuadKind::NormBand { ideal, partition, band } => {
                if partition.d != ideal.d() {
                    return Err(Error::param("partition and ideal lie in different rings"));
                }
                QuadKind::NormBand { ideal, partition, band }
            }
            k => k,
        };
        let set = QuadraticSet { kind, norm_bound };
        if let QuadKind::Colored { ideal, coloring, .. } = &set.kind {
            for z in ideal.enumerate(norm_bound) {
                if !z.is_zero() {
                    coloring.side(&z)?;
                }
            }
        }
        Ok(set)
    }

    pub fn ideal(ideal: Ideal, norm_bound: u64) -> Result<Self> {
        Self::new(QuadKind::Ideal { ideal }, norm_bound)
    }

    pub fn d(&self) -> u64 {
        match &self.kind {
            QuadKind::Ideal { ideal } | QuadKind::NormBand { ideal, .. } | QuadKind::Colored { ideal, .. } => ideal.d(),
            QuadKind::Explicit { d, .. } => *d,
        }
    }

    /// Membership in the untruncated set.
    pub fn is_member(&self, z: &QuadInt) -> bool {
        if z.is_zero() || z.d != self.d() {
            return false;
        }
        match &self.kind {
            QuadKind::Ideal { ideal } => ideal.contains(z),
            QuadKind::NormBand { ideal, partition, band } => ideal.contains(z) && partition.classify(z) == Some(*band),
            QuadKind::Colored { ideal, coloring, side } => {
                ideal.contains(z) && coloring.side(z).is_ok_and(|s| s == *side)
            }
            QuadKind::Explicit { elements, .. } => elements.binary_search(z).is_ok(),
        }
    }

    pub fn contains(&self, z: &QuadInt) -> bool {
        z.norm() <= self.norm_bound && self.is_member(z)
    }

    /// Sorted by `(norm, x, y)`.
    pub fn enumerate(&self) -> Vec<QuadInt> {
        let n = self.norm_bound;
        match &self.kind {
            QuadKind::Explicit { elements, .. } => elements.iter().copied().filter(|z| z.norm() <= n).collect(),
            QuadKind::Ideal { ideal } | QuadKind::NormBand { ideal, .. } | QuadKind::Colored { ideal, .. } => {
                ideal.enumerate(n).into_iter().filter(|z| self.is_member(z)).collect()
            }
        }
    }
}

impl fmt::Display for QuadraticSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d();
        match &self.kind {
            QuadKind::Ideal { ideal } => write!(f, "ideal ({}, {}) of Z[sqrt(-{d})]", ideal.gens().0, ideal.gens().1)?,
            QuadKind::NormBand { band, .. } => write!(f, "band {band} of Z[sqrt(-{d})]")?,
            QuadKind::Colored { side, .. } => write!(f, "side {side} of a two-coloring of Z[sqrt(-{d})]")?,
            QuadKind::Explicit { elements, .. } => write!(f, "explicit ({} elements) in Z[sqrt(-{d})]", elements.len())?,
        }
        write!(f, ", N(z) <= {}", self.norm_bound)
    }
}

impl SetDescriptor {
    pub fn bound(&self) -> u64 {
        match self {
            SetDescriptor::Natural(s) => s.bound,
            SetDescriptor::Quadratic(s) => s.norm_bound,
        }
    }

    /// Ring parameter `d` for quadratic sets.
    pub fn d(&self) -> Option<u64> {
        match self {
            SetDescriptor::Natural(_) => None,
            SetDescriptor::Quadratic(s) => Some(s.d()),
        }
    }
}

impl From<NaturalSet> for SetDescriptor {
    fn from(s: NaturalSet) -> Self {
        SetDescriptor::Natural(s)
    }
}

impl From<QuadraticSet> for SetDescriptor {
    fn from(s: QuadraticSet) -> Self {
        SetDescriptor::Quadratic(s)
    }
}

impl fmt::Display for SetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetDescriptor::Natural(s) => s.fmt(f),
            SetDescriptor::Quadratic(s) => s.fmt(f),
        }
    }
}
