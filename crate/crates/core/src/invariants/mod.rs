//! Local invariants at explicit primes: heights, dimensions, depth,
//! projective dimension, Bass numbers.

mod analysis;
mod prime;

pub use analysis::{
    gorenstein_type, height_in_s, is_regular_sequence, multiplication_kernel, subquotient, GorensteinType, LocalProfile,
    ModuleAnalysis,
};
pub use prime::{PrimeIdeal, Provenance};
