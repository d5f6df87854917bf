//! Three-way partition of Z[sqrt(-d)] by norm bands `[5^k, 2*5^k)`, `[2*5^k, 3*5^k)`
//! and `[3*5^k, 5^(k+1))`, with the annuli each band's quotients avoid.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::certificate::{params, GapCertificate, Region, Source};
use crate::error::{Error, Result};
use crate::quad::{validate_d, QuadInt};
use crate::ratio::Ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Band {
    A,
    B,
    C,
}

impl Band {
    pub const ALL: [Band; 3] = [Band::A, Band::B, Band::C];

    /// `(lo, hi)` with the band equal to `[lo*5^k, hi*5^k)` over `k >= 0`.
    pub fn multipliers(self) -> (u64, u64) {
        match self {
            Band::A => (1, 2),
            Band::B => (2, 3),
            Band::C => (3, 5),
        }
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Band::A => "A",
            Band::B => "B",
            Band::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for Band {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Band::A),
            "B" | "b" => Ok(Band::B),
            "C" | "c" => Ok(Band::C),
            _ => Err(Error::param(format!("unknown band {s:?}, expected A, B or C"))),
        }
    }
}

/// Which quadratic form sizes an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormForm {
    /// `x^2 + d*y^2`, the field norm and squared complex modulus.
    Field,
    /// `x^2 + y^2` in the coordinates of `x + y*sqrt(-d)`.
    Coordinate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NormBandPartition {
    pub d: u64,
    pub form: NormForm,
}

impl NormBandPartition {
    pub fn new(d: u64) -> Result<Self> {
        Self::with_form(d, NormForm::Field)
    }

    pub fn with_form(d: u64, form: NormForm) -> Result<Self> {
        validate_d(d)?;
        Ok(NormBandPartition { d, form })
    }

    pub fn size(&self, z: &QuadInt) -> u64 {
        match self.form {
            NormForm::Field => z.norm(),
            NormForm::Coordinate => {
                u64::try_from((z.x as i128).pow(2) + (z.y as i128).pow(2)).expect("size exceeds u64")
            }
        }
    }

    /// Band of `z`, or `None` for zero.
    pub fn classify(&self, z: &QuadInt) -> Option<Band> {
        band_of_norm(self.size(z))
    }

    /// Gap annuli for one band over a range of scales `l`.
    ///
    /// Ratios of two band members have squared modulus in
    /// `(lo/hi * 5^l, hi/lo * 5^l)`; the annulus between consecutive windows,
    /// `(hi/lo * 5^l, lo/hi * 5^(l+1))`, is certified.
    pub fn gap_certificates(&self, band: Band, ls: std::ops::RangeInclusive<i32>) -> Result<Vec<GapCertificate>> {
        if self.form == NormForm::Coordinate && self.d != 1 {
            return Err(Error::param(
                "coordinate-form bands do not bound |z|^2 when d != 1; use the field norm",
            ));
        }
        let (lo, hi) = band.multipliers();
        let widen = Ratio::new(hi, lo)?;
        let narrow = Ratio::new(lo, hi)?;
        let five = Ratio::from(5u64);
        ls.map(|l| {
            let scale = five.pow(l);
            let region = Region::annulus(&widen * &scale, &narrow * &scale * &five)?;
            let form = match self.form {
                NormForm::Field => "field",
                NormForm::Coordinate => "coordinate",
            };
            GapCertificate::new(
                region,
                Source::Band(band),
                params([("d", self.d.to_string()), ("form", form.into()), ("l", l.to_string())]),
            )
        })
        .collect()
    }
}

/// Band of a norm value: `k` is found by integer comparison with powers of 5.
pub fn band_of_norm(n: u64) -> Option<Band> {
    if n == 0 {
        return None;
    }
    let mut p = 1u64;
    while let Some(next) = p.checked_mul(5) {
        if next > n {
            break;
        }
        p = next;
    }
    let (n, p) = (n as u128, p as u128);
    Some(if n < 2 * p {
        Band::A
    } else if n < 3 * p {
        Band::B
    } else {
        Band::C
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Ratio {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        let p = NormBandPartition::new(1).unwrap();
        assert_eq!(p.classify(&QuadInt::new(1, 0, 1)), Some(Band::A));
        assert_eq!(p.classify(&QuadInt::new(1, 1, 1)), Some(Band::B));
        assert_eq!(p.classify(&QuadInt::new(2, 1, 1)), Some(Band::A));
        assert_eq!(p.classify(&QuadInt::new(0, 0, 1)), None);
    }

    #[test]
    fn partition_is_total_and_disjoint() {
        for n in 1..=1_000_000u64 {
            let b = band_of_norm(n).unwrap();
            let mut k = 1u64;
            while k * 5 <= n {
                k *= 5;
            }
            let (lo, hi) = b.multipliers();
            assert!(lo * k <= n && n < hi * k, "{n}");
        }
    }

    #[test]
    fn band_edges() {
        assert_eq!(band_of_norm(4), Some(Band::C));
        assert_eq!(band_of_norm(5), Some(Band::A));
        assert_eq!(band_of_norm(9), Some(Band::A));
        assert_eq!(band_of_norm(10), Some(Band::B));
        assert_eq!(band_of_norm(15), Some(Band::C));
        assert_eq!(band_of_norm(24), Some(Band::C));
        assert_eq!(band_of_norm(25), Some(Band::A));
        assert_eq!(band_of_norm(u64::MAX), Some(Band::B));
    }

    #[test]
    fn certificate_regions() {
        let p = NormBandPartition::new(1).unwrap();
        let c = p.gap_certificates(Band::C, 0..=0).unwrap();
        assert_eq!(c[0].region, Region::annulus(r("5/3"), r("3")).unwrap());
        let a = p.gap_certificates(Band::A, 0..=0).unwrap();
        assert_eq!(a[0].region, Region::annulus(r("2"), r("5/2")).unwrap());
        let b = p.gap_certificates(Band::B, 0..=0).unwrap();
        assert_eq!(b[0].region, Region::annulus(r("3/2"), r("10/3")).unwrap());
        let neg = p.gap_certificates(Band::C, -1..=-1).unwrap();
        assert_eq!(neg[0].region, Region::annulus(r("1/3"), r("3/5")).unwrap());
    }

    #[test]
    fn coordinate_form_certificates_need_d_one() {
        let p = NormBandPartition::with_form(2, NormForm::Coordinate).unwrap();
        assert!(p.gap_certificates(Band::A, 0..=0).is_err());
        let p = NormBandPartition::with_form(2, NormForm::Coordinate).unwrap();
        assert_eq!(p.classify(&QuadInt::new(1, 1, 2)), Some(Band::B));
        assert_eq!(NormBandPartition::new(2).unwrap().classify(&QuadInt::new(1, 1, 2)), Some(Band::C));
    }
}
