//! Gap certificates: an open region claimed free of quotients, the parameters
//! behind the claim, and the largest enumeration bound at which a brute-force
//! scan agreed.
//!
//! Canonical text form (one line):
//!
//! ```text
//! gapcert v1 <source> region=<interval|annulus> lo=<p>/<q> hi=<p>/<q> params={k=v,...} verified=<N>
//! ```
//!
//! For annuli `lo` and `hi` bound the squared modulus.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{QuadInt, QuadRational};
use crate::quadratic::Band;
use crate::quotient::brute_force_gap_check;
use crate::ratio::Ratio;
use crate::sets::SetDescriptor;

pub const FORMAT_TAG: &str = "gapcert";
pub const FORMAT_VERSION: &str = "v1";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Region {
    /// `lo < x < hi` on the positive real line.
    Interval { lo: Ratio, hi: Ratio },
    /// `lo_sq < |z|^2 < hi_sq` in the complex plane.
    Annulus { lo_sq: Ratio, hi_sq: Ratio },
}

impl Region {
    pub fn interval(lo: Ratio, hi: Ratio) -> Result<Self> {
        Region::Interval { lo, hi }.validated()
    }

    pub fn annulus(lo_sq: Ratio, hi_sq: Ratio) -> Result<Self> {
        Region::Annulus { lo_sq, hi_sq }.validated()
    }

    pub fn bounds(&self) -> (&Ratio, &Ratio) {
        match self {
            Region::Interval { lo, hi } => (lo, hi),
            Region::Annulus { lo_sq, hi_sq } => (lo_sq, hi_sq),
        }
    }

    fn validated(self) -> Result<Self> {
        let (lo, hi) = self.bounds();
        if lo.is_negative() {
            return Err(Error::param(format!("region lower bound {lo} is negative")));
        }
        if lo >= hi {
            return Err(Error::param(format!("empty region: lo = {lo} is not below hi = {hi}")));
        }
        Ok(self)
    }

    fn kind(&self) -> &'static str {
        match self {
            Region::Interval { .. } => "interval",
            Region::Annulus { .. } => "annulus",
        }
    }

    /// Strict containment of a positive rational (intervals) or of a squared modulus (annuli).
    pub fn contains_value(&self, v: &Ratio) -> bool {
        let (lo, hi) = self.bounds();
        lo < v && v < hi
    }
}

/// Which construction produced a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Gap between consecutive ratio windows of a digit-prefix set.
    DigitPrefix,
    /// Neighbourhood of a target missed by `U/V` with `V` finite.
    FiniteDenominators,
    /// Gap annulus of one norm band.
    Band(Band),
    /// Annulus avoided by ratios of a prime-element selection.
    PrimeAnnulus,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Source::DigitPrefix => "digit-prefix",
            Source::FiniteDenominators => "finite-v",
            Source::Band(Band::A) => "band-a",
            Source::Band(Band::B) => "band-b",
            Source::Band(Band::C) => "band-c",
            Source::PrimeAnnulus => "prime-annulus",
        }
    }
}

impl FromStr for Source {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "digit-prefix" => Source::DigitPrefix,
            "finite-v" => Source::FiniteDenominators,
            "band-a" => Source::Band(Band::A),
            "band-b" => Source::Band(Band::B),
            "band-c" => Source::Band(Band::C),
            "prime-annulus" => Source::PrimeAnnulus,
            _ => return Err(Error::param(format!("unknown certificate source {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapCertificate {
    pub region: Region,
    pub source: Source,
    pub params: BTreeMap<String, String>,
    /// Largest enumeration bound at which the brute-force scan found nothing;
    /// zero when never checked. The underlying claim covers all elements.
    pub verified: u64,
}

/// A quotient found inside a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Real { u: u64, v: u64 },
    Complex { u: QuadInt, v: QuadInt },
}

impl Witness {
    pub fn real_value(&self) -> Option<Ratio> {
        match self {
            Witness::Real { u, v } => Some(Ratio::new(*u, *v).expect("nonzero denominator")),
            Witness::Complex { .. } => None,
        }
    }

    pub fn complex_value(&self) -> QuadRational {
        match self {
            Witness::Real { u, v } => {
                QuadRational::new(Ratio::new(*u, *v).expect("nonzero denominator"), Ratio::zero(), 1)
            }
            Witness::Complex { u, v } => u.to_rational().div(&v.to_rational()).expect("nonzero denominator"),
        }
    }

    /// `|u/v|^2`.
    pub fn squared_modulus(&self) -> Ratio {
        match self {
            Witness::Real { u, v } => Ratio::new(u * u, v * v).expect("nonzero denominator"),
            Witness::Complex { u, v } => Ratio::new(u.norm(), v.norm()).expect("nonzero denominator"),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Real { u, v } => write!(f, "{u}/{v}"),
            Witness::Complex { u, v } => write!(f, "({u})/({v})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Verification {
    Verified { certificate: GapCertificate },
    Refuted { certificate: GapCertificate, witness: Witness },
}

impl Verification {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verification::Verified { .. })
    }

    pub fn certificate(&self) -> &GapCertificate {
        match self {
            Verification::Verified { certificate } | Verification::Refuted { certificate, .. } => certificate,
        }
    }
}

impl GapCertificate {
    pub fn new(region: Region, source: Source, params: BTreeMap<String, String>) -> Result<Self> {
        for (k, v) in &params {
            if !is_token(k) || !is_token(v) {
                return Err(Error::param(format!("parameter {k}={v} is not a plain token")));
            }
        }
        Ok(GapCertificate { region: region.validated()?, source, params, verified: 0 })
    }

    /// Runs the brute-force oracle over `numer / denom` at their enumeration bounds.
    ///
    /// The bound used is the smaller of the two set bounds and must not be
    /// below the bound already recorded.
    pub fn verify(&self, numer: &SetDescriptor, denom: &SetDescriptor) -> Result<Verification> {
        let bound = numer.bound().min(denom.bound());
        if bound < self.verified {
            return Err(Error::param(format!(
                "bound {bound} is below the recorded verification bound {}",
                self.verified
            )));
        }
        match brute_force_gap_check(numer, denom, &self.region)? {
            None => {
                let mut certificate = self.clone();
                certificate.verified = bound;
                Ok(Verification::Verified { certificate })
            }
            Some(witness) => Ok(Verification::Refuted { certificate: self.clone(), witness }),
        }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(s: &str) -> Result<Self> {
        s.parse()
    }
}

fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "/-_.".contains(c))
}

impl fmt::Display for GapCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.region.bounds();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{FORMAT_TAG} {FORMAT_VERSION} {} region={} lo={} hi={} params={{{}}} verified={}",
            self.source.as_str(),
            self.region.kind(),
            lo.to_fraction_string(),
            hi.to_fraction_string(),
            params.join(","),
            self.verified
        )
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    // Next space-separated token and its starting offset.
    fn token(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start_matches(' ');
        let start = self.pos + (rest.len() - trimmed.len());
        if trimmed.is_empty() {
            self.pos = start;
            return Err(self.err(format!("unexpected end of record, expected {what}")));
        }
        let len = trimmed.find(' ').unwrap_or(trimmed.len());
        self.pos = start + len;
        Ok((start, &trimmed[..len]))
    }

    fn field(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (at, tok) = self.token(key)?;
        match tok.strip_prefix(key).and_then(|t| t.strip_prefix('=')) {
            Some(v) => Ok((at + key.len() + 1, v)),
            None => Err(Error::Parse { pos: at, msg: format!("expected {key}=..., found {tok:?}") }),
        }
    }
}

fn parse_fraction(at: usize, s: &str) -> Result<Ratio> {
    if !s.contains('/') {
        return Err(Error::Parse { pos: at, msg: format!("expected p/q, found {s:?}") });
    }
    s.parse::<Ratio>().map_err(|_| Error::Parse { pos: at, msg: format!("invalid rational {s:?}") })
}

impl FromStr for GapCertificate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let line = s.trim_end_matches(['\n', '\r']);
        let mut cur = Cursor { src: line, pos: 0 };
        let (at, tag) = cur.token("format tag")?;
        if tag != FORMAT_TAG {
            return Err(Error::Parse { pos: at, msg: format!("expected {FORMAT_TAG:?}, found {tag:?}") });
        }
        let (at, ver) = cur.token("version")?;
        if ver != FORMAT_VERSION {
            return Err(Error::Parse { pos: at, msg: format!("unsupported version {ver:?}") });
        }
        let (at, src) = cur.token("source")?;
        let source: Source = src.parse().map_err(|_| Error::Parse { pos: at, msg: format!("unknown source {src:?}") })?;
        let (at, kind) = cur.field("region")?;
        let (lo_at, lo) = cur.field("lo")?;
        let lo = parse_fraction(lo_at, lo)?;
        let (hi_at, hi) = cur.field("hi")?;
        let hi = parse_fraction(hi_at, hi)?;
        let (p_at, ptext) = cur.field("params")?;
        let inner = ptext
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse { pos: p_at, msg: "params must be wrapped in {}".into() })?;
        let mut params = BTreeMap::new();
        if !inner.is_empty() {
            for kv in inner.split(',') {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::Parse { pos: p_at, msg: format!("malformed parameter {kv:?}") })?;
                params.insert(k.to_string(), v.to_string());
            }
        }
        let (v_at, verified) = cur.field("verified")?;
        let verified: u64 = verified
            .parse()
            .map_err(|_| Error::Parse { pos: v_at, msg: format!("invalid bound {verified:?}") })?;
        if cur.pos < line.len() && !line[cur.pos..].trim().is_empty() {
            return Err(cur.err("trailing data after record"));
        }
        let region = match kind {
            "interval" => Region::Interval { lo, hi },
            "annulus" => Region::Annulus { lo_sq: lo, hi_sq: hi },
            _ => return Err(Error::Parse { pos: at, msg: format!("unknown region kind {kind:?}") }),
        };
        let mut cert = GapCertificate::new(region, source, params)?;
        cert.verified = verified;
        Ok(cert)
    }
}

/// Builds a parameter map from `(key, value)` pairs.
pub fn params<I, K, V>(pairs: I) -> BTreeMap<String, String>
where
    I: IntoIterator<Item = (K, V)>,
    K: ToString,
    V: ToString,
{
    pairs.into_iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Ratio {
        s.parse().unwrap()
    }

    fn sample() -> GapCertificate {
        let mut c = GapCertificate::new(
            Region::interval(r("2"), r("5")).unwrap(),
            Source::DigitPrefix,
            params([("a", "1"), ("b", "10"), ("c", "2"), ("j", "0")]),
        )
        .unwrap();
        c.verified = 100_000;
        c
    }

    #[test]
    fn canonical_text() {
        assert_eq!(
            sample().to_text(),
            "gapcert v1 digit-prefix region=interval lo=2/1 hi=5/1 params={a=1,b=10,c=2,j=0} verified=100000"
        );
    }

    #[test]
    fn round_trip() {
        let c = sample();
        assert_eq!(GapCertificate::from_text(&c.to_text()).unwrap(), c);
        let annulus = GapCertificate::new(
            Region::annulus(r("5/3"), r("3")).unwrap(),
            Source::Band(Band::C),
            params([("d", "1"), ("l", "0")]),
        )
        .unwrap();
        assert_eq!(GapCertificate::from_text(&annulus.to_text()).unwrap(), annulus);
    }

    #[test]
    fn truncated_record_fails_with_position() {
        let text = sample().to_text();
        let cut = &text[..text.find(" params").unwrap()];
        match GapCertificate::from_text(cut) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, cut.len()),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn inverted_bounds_fail_validation() {
        let text = "gapcert v1 digit-prefix region=interval lo=5/1 hi=2/1 params={} verified=0";
        assert!(matches!(GapCertificate::from_text(text), Err(Error::Parameter(_))));
        let text = "gapcert v1 digit-prefix region=interval lo=2/1 hi=2/1 params={} verified=0";
        assert!(matches!(GapCertificate::from_text(text), Err(Error::Parameter(_))));
    }

    #[test]
    fn malformed_fields() {
        for bad in [
            "gapcert v2 digit-prefix region=interval lo=1/1 hi=2/1 params={} verified=0",
            "gapcert v1 nope region=interval lo=1/1 hi=2/1 params={} verified=0",
            "gapcert v1 digit-prefix region=disc lo=1/1 hi=2/1 params={} verified=0",
            "gapcert v1 digit-prefix region=interval lo=1 hi=2/1 params={} verified=0",
            "gapcert v1 digit-prefix region=interval lo=1/1 hi=2/1 params=a=1 verified=0",
            "gapcert v1 digit-prefix region=interval lo=1/1 hi=2/1 params={} verified=x",
            "gapcert v1 digit-prefix region=interval lo=1/1 hi=2/1 params={} verified=0 extra",
        ] {
            assert!(matches!(GapCertificate::from_text(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn serialization_round_trips(
            lo_n in 0i64..10_000, lo_d in 1i64..1000, gap_n in 1i64..10_000, gap_d in 1i64..1000,
            annulus in any::<bool>(), verified in any::<u64>(), j in -5i64..5,
        ) {
            let lo = Ratio::new(lo_n, lo_d).unwrap();
            let hi = &lo + Ratio::new(gap_n, gap_d).unwrap();
            let region = if annulus { Region::annulus(lo, hi) } else { Region::interval(lo, hi) }.unwrap();
            let mut c = GapCertificate::new(region, Source::PrimeAnnulus, params([("j", j)])).unwrap();
            c.verified = verified;
            prop_assert_eq!(GapCertificate::from_text(&c.to_text()).unwrap(), c);
        }
    }
}
