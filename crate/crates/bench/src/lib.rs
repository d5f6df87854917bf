//! Fixtures shared by the benchmarks.

use quotset::quadratic::Ideal;
use quotset::{DigitPrefixFamily, NaturalSet, QuadraticSet, Ratio, SetDescriptor};

pub fn ratio(p: i64, q: i64) -> Ratio {
    Ratio::new(p, q).expect("nonzero denominator")
}

/// `[a, c) * b^k` without powers, up to `bound`.
pub fn digit_prefix_set(a: u64, c: u64, b: u64, bound: u64) -> SetDescriptor {
    let fam = DigitPrefixFamily::new(a, c, b, false).expect("valid family");
    NaturalSet::digit_prefix(fam, bound).expect("valid bound").into()
}

/// All of `Z[sqrt(-d)]` up to a norm bound.
pub fn ring(d: u64, norm_bound: u64) -> SetDescriptor {
    QuadraticSet::ideal(Ideal::unit(d).expect("supported d"), norm_bound).expect("valid bound").into()
}
