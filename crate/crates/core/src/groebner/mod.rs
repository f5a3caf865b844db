//! Groebner bases and ideal operations.

pub(crate) mod engine;
mod ideal;
mod primes;

pub use engine::ModuleOrder;
pub(crate) use ideal::grevlex_gb;
pub use ideal::{
    canonical, eliminate, groebner_basis, ideal_contained, ideal_equal, ideal_member, ideal_quotient,
    intersect, intersect_all, is_unit_ideal, krull_dim, normal_form, quotient_by_element, radical_contained,
    radical_member, saturate, GroebnerBasis, Ideal,
};
pub use primes::{minimal_primes, minimal_primes_declared, minimal_primes_with};
