//! Statement checks on sample primes, and the fixture harness that runs
//! them.

mod checks;
mod harness;
mod poset;

use serde::Serialize;

pub use checks::{
    verify_bass, verify_constructive_localization, verify_ext, verify_filtration_depth, verify_fitting_invariance,
    verify_gor_equivalence_all, verify_gor_fid_mcm, verify_gorenstein_type, verify_locus, verify_mcm_implies_sn_open,
    verify_nc_star, verify_oracle, verify_resolution, verify_stability, verify_theorem_gor_equivalence, ExpectedExt,
    ExpectedSubset, LocalizationItem,
};
pub use harness::{run_fixture, CheckOutcome, Outcome, Report};
pub use poset::{check_topological_nagata, nagata_exhaustive, SamplePoset, EXHAUSTIVE_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckVerdict {
    Pass,
    Fail,
    Inconclusive,
}

impl CheckVerdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckVerdict::Pass
        } else {
            CheckVerdict::Fail
        }
    }
}

/// Outcome of one statement check. A failure carries a concrete witness;
/// an inconclusive result names the budget it ran out of.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    #[serde(rename = "ref")]
    pub reference: String,
    pub verdict: CheckVerdict,
    pub witness: serde_json::Value,
    pub caveats: Vec<String>,
}

impl CheckResult {
    pub fn new(id: &str, reference: &str, verdict: CheckVerdict, witness: serde_json::Value) -> Self {
        CheckResult { id: id.to_string(), reference: reference.to_string(), verdict, witness, caveats: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.verdict == CheckVerdict::Pass
    }
}

#[cfg(test)]
mod tests;
