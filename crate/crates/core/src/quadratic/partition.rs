//! Two-colorings of an ideal and the empirical check that one side has a
//! dense quotient set.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{QuadInt, QuadRational};
use crate::quadratic::Ideal;
use crate::quotient::{coverage_check, CoverageReport, Targets};
use crate::ratio::Ratio;
use crate::sets::{QuadKind, QuadraticSet, SetDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    C,
    D,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::C => "C",
            Side::D => "D",
        })
    }
}

/// Rule assigning each nonzero element to `C` or `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Coloring {
    /// `C` is the listed elements, `D` the rest.
    FiniteC { c: Vec<QuadInt> },
    /// `C` holds the elements of even norm.
    NormParity,
    /// Pseudo-random side from a seeded hash of the coordinates.
    Hashed { seed: u64 },
    /// `C` holds the elements whose norm mod `modulus` is listed.
    NormResidue { modulus: u64, c_residues: Vec<u64> },
    /// Both sides listed; anything else is undefined.
    Table { c: Vec<QuadInt>, d: Vec<QuadInt> },
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Coloring {
    pub fn side(&self, z: &QuadInt) -> Result<Side> {
        let pick = |in_c: bool| if in_c { Side::C } else { Side::D };
        match self {
            Coloring::FiniteC { c } => Ok(pick(c.contains(z))),
            Coloring::NormParity => Ok(pick(z.norm().is_multiple_of(2))),
            Coloring::Hashed { seed } => {
                let h = splitmix64(seed ^ splitmix64(z.x as u64 ^ splitmix64(z.y as u64)));
                Ok(pick(h & 1 == 0))
            }
            Coloring::NormResidue { modulus, c_residues } => {
                if *modulus == 0 {
                    return Err(Error::param("residue modulus must be positive"));
                }
                Ok(pick(c_residues.contains(&(z.norm() % modulus))))
            }
            Coloring::Table { c, d } => {
                if c.contains(z) {
                    Ok(Side::C)
                } else if d.contains(z) {
                    Ok(Side::D)
                } else {
                    Err(Error::param(format!("coloring undefined at {z}")))
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DenseSide {
    C,
    D,
    Both,
    /// Neither side reached full coverage at this bound; not a density claim.
    Inconclusive,
}

impl fmt::Display for DenseSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DenseSide::C => "C",
            DenseSide::D => "D",
            DenseSide::Both => "both",
            DenseSide::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionReport {
    pub dense_side: DenseSide,
    pub c_size: usize,
    pub d_size: usize,
    pub c_coverage: CoverageReport,
    pub d_coverage: CoverageReport,
}

/// Coverage of `R(C)` and `R(D)` over complex targets; a side counts as dense
/// when every target is covered.
pub fn partition_density_check(
    ideal: &Ideal,
    coloring: &Coloring,
    targets: &[QuadRational],
    epsilon: &Ratio,
    norm_bound: u64,
) -> Result<PartitionReport> {
    let side_set = |side: Side| -> Result<SetDescriptor> {
        let kind = QuadKind::Colored { ideal: ideal.clone(), coloring: coloring.clone(), side };
        Ok(QuadraticSet::new(kind, norm_bound)?.into())
    };
    let c = side_set(Side::C)?;
    let d = side_set(Side::D)?;
    let size = |s: &SetDescriptor| match s {
        SetDescriptor::Quadratic(q) => q.enumerate().len(),
        SetDescriptor::Natural(_) => unreachable!(),
    };
    let (c_size, d_size) = (size(&c), size(&d));
    if c_size + d_size == 0 {
        return Err(Error::domain("the ideal has no nonzero element within the norm bound"));
    }
    let targets = Targets::Complex(targets.to_vec());
    let cover = |s: &SetDescriptor, n: usize| -> Result<CoverageReport> {
        if n == 0 {
            Ok(CoverageReport::empty(&targets, epsilon))
        } else {
            coverage_check(s, s, &targets, epsilon)
        }
    };
    let c_coverage = cover(&c, c_size)?;
    let d_coverage = cover(&d, d_size)?;
    let dense_side = match (c_coverage.is_full(), d_coverage.is_full()) {
        (true, true) => DenseSide::Both,
        (true, false) => DenseSide::C,
        (false, true) => DenseSide::D,
        (false, false) => DenseSide::Inconclusive,
    };
    Ok(PartitionReport { dense_side, c_size, d_size, c_coverage, d_coverage })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::complex_box_grid;

    fn r(s: &str) -> Ratio {
        s.parse().unwrap()
    }

    #[test]
    fn finite_c_gives_dense_d() {
        let ring = Ideal::unit(1).unwrap();
        let coloring = Coloring::FiniteC { c: vec![QuadInt::new(1, 0, 1), QuadInt::new(0, 1, 1)] };
        let grid = complex_box_grid(&r("0"), &r("0"), &r("1"), &r("1"), 5, 1).unwrap();
        let rep = partition_density_check(&ring, &coloring, &grid, &r("1/10"), 2000).unwrap();
        assert_eq!(rep.dense_side, DenseSide::D);
        assert_eq!(rep.c_size, 2);
    }

    #[test]
    fn parity_has_a_dense_side() {
        let ring = Ideal::unit(1).unwrap();
        let grid = complex_box_grid(&r("0"), &r("0"), &r("1"), &r("1"), 5, 1).unwrap();
        let rep = partition_density_check(&ring, &Coloring::NormParity, &grid, &r("1/10"), 2000).unwrap();
        assert_ne!(rep.dense_side, DenseSide::Inconclusive);
    }

    #[test]
    fn undefined_coloring_is_rejected() {
        let ring = Ideal::unit(1).unwrap();
        let coloring = Coloring::Table { c: vec![QuadInt::new(1, 0, 1)], d: vec![] };
        let grid = complex_box_grid(&r("0"), &r("0"), &r("1"), &r("1"), 2, 1).unwrap();
        let err = partition_density_check(&ring, &coloring, &grid, &r("1/10"), 10);
        assert!(matches!(err, Err(Error::Parameter(_))));
    }

    #[test]
    fn hashed_coloring_is_deterministic_and_mixed() {
        let col = Coloring::Hashed { seed: 7 };
        let zs: Vec<QuadInt> = (1..200).map(|x| QuadInt::new(x, 3, 1)).collect();
        let sides: Vec<Side> = zs.iter().map(|z| col.side(z).unwrap()).collect();
        assert_eq!(sides, zs.iter().map(|z| col.side(z).unwrap()).collect::<Vec<_>>());
        let in_c = sides.iter().filter(|s| **s == Side::C).count();
        assert!(in_c > 60 && in_c < 140);
    }
}
