//! Loci in `Spec R`: support, free, Cohen-Macaulay, maximal
//! Cohen-Macaulay, Serre's conditions, finite injective dimension and
//! Gorenstein, each with a closed form and an independent pointwise test.

mod compute;
mod subset;

pub use compute::{
    candidate_primes, cm_locus, compute_locus, fid_at, fid_by_candidates, fid_locus, free_locus, gor_locus,
    locally_free, mcm_locus, pointwise, serre_locus, supp_locus, LocusKind, LocusReport, Mode,
};
pub use subset::{SpecSubset, Verdict};
