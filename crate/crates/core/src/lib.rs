//! Quotient sets `R(A) = {a/a' : a, a' in A}` of structured integer sets and of
//! subsets of imaginary quadratic rings: exact density evidence, constructive
//! approximation, and certified gaps.

pub mod certificate;
pub mod density;
pub mod digit_prefix;
pub mod error;
pub mod primes;
pub mod quad;
pub mod quadratic;
pub mod quotient;
pub mod ratio;
pub mod sets;

pub use certificate::{GapCertificate, Region, Source, Verification, Witness};
pub use density::{density_estimate, finite_denominator_gap, ratio_in_window, DensityEstimate, DensityMode, WindowRatio};
pub use digit_prefix::{ApproxResult, Classification, DigitPrefixFamily};
pub use error::{Error, Result};
pub use primes::{ApFamily, Sieve};
pub use quad::{away_round, away_round_quad, QuadInt, QuadRational};
pub use quotient::{brute_force_gap_check, brute_force_gap_check_all, coverage_check, quotient_set, CoverageReport, Targets};
pub use ratio::Ratio;
pub use sets::{NaturalKind, NaturalSet, QuadKind, QuadraticSet, SetDescriptor};
