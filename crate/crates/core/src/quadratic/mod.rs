//! Z[sqrt(-d)]: ideals, the norm-band three-partition, prime elements and
//! their sparse selection, rounding witnesses, and two-coloring checks.

mod bands;
mod ideal;
mod partition;
mod primes;
mod witness;

pub use bands::{band_of_norm, Band, NormBandPartition, NormForm};
pub use ideal::Ideal;
pub use partition::{partition_density_check, Coloring, DenseSide, PartitionReport, Side};
pub use primes::{
    bertrand_probe, is_canonical, is_prime_element, is_prime_norm, prime_band_selection, prime_norms, quad_primes,
    BertrandProbe, PrimeBandSelection, SelectedPrime,
};
pub use witness::{gamma_admissible, neighbour_set, threshold_n0, witness_construct, WitnessTriple};
