use serde_json::json;

use super::{CheckResult, CheckVerdict};
use crate::error::{Error, Result};
use crate::invariants::PrimeIdeal;

/// Largest poset on which subsets are enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Finite set of primes ordered by inclusion. Closures of points are
/// up-sets, so open sets are exactly the down-sets.
#[derive(Clone, Debug)]
pub struct SamplePoset {
    primes: Vec<PrimeIdeal>,
    // le[i] has bit j set iff primes[i] ⊆ primes[j]
    le: Vec<u64>,
}

impl SamplePoset {
    /// Builds the containment order by generator membership and checks the
    /// declared pairs `(q, p)`, meaning `primes[q] ⊆ primes[p]`.
    pub fn new(primes: Vec<PrimeIdeal>, declared: &[(usize, usize)]) -> Result<Self> {
        if primes.len() > 64 {
            return Err(Error::InvalidArgument("sample posets hold at most 64 primes".into()));
        }
        let le: Vec<u64> = primes
            .iter()
            .map(|q| {
                primes.iter().enumerate().filter(|(_, p)| q.is_contained_in(p)).fold(0u64, |a, (j, _)| a | (1 << j))
            })
            .collect();
        for &(q, p) in declared {
            if le[q] & (1 << p) == 0 {
                return Err(Error::Validation(format!("declared containment {q} ⊆ {p} does not hold")));
            }
        }
        Ok(SamplePoset { primes, le })
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[PrimeIdeal] {
        &self.primes
    }

    pub fn full(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// `V(p)` restricted to the sample.
    pub fn up(&self, i: usize) -> u64 {
        self.le[i]
    }

    pub fn down(&self, i: usize) -> u64 {
        (0..self.len()).filter(|&j| self.le[j] & (1 << i) != 0).fold(0, |a, j| a | (1 << j))
    }

    pub fn is_down_closed(&self, u: u64) -> bool {
        bits(u).all(|i| self.down(i) & !u == 0)
    }

    pub fn is_up_closed(&self, u: u64) -> bool {
        bits(u).all(|i| self.up(i) & !u == 0)
    }

    pub fn is_open(&self, u: u64) -> bool {
        self.is_down_closed(u)
    }

    /// Every open subset, in increasing bit order.
    pub fn opens(&self) -> Vec<u64> {
        (0..=self.full()).filter(|&u| self.is_open(u)).collect()
    }

    pub fn subset_names(&self, u: u64) -> Vec<String> {
        bits(u).map(|i| self.primes[i].name().unwrap_or("?").to_string()).collect()
    }

    fn mask_of(&self, member: impl Fn(&PrimeIdeal) -> bool) -> u64 {
        self.primes.iter().enumerate().filter(|(_, p)| member(p)).fold(0, |a, (i, _)| a | (1 << i))
    }

    pub fn subset_where(&self, member: impl Fn(&PrimeIdeal) -> bool) -> u64 {
        self.mask_of(member)
    }
}

pub(crate) fn bits(u: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| u & (1 << i) != 0)
}

/// Both sides of the topological Nagata criterion for `U`:
/// `U` open, versus `U` stable under generalization and containing, for
/// each `p ∈ U`, a nonempty relatively open subset of `V(p)`.
fn nagata_sides(poset: &SamplePoset, opens: &[u64], u: u64) -> (bool, bool) {
    let lhs = poset.is_open(u);
    let stable = poset.is_down_closed(u);
    let local = bits(u).all(|i| {
        let vp = poset.up(i);
        opens.iter().any(|&o| {
            let w = o & vp;
            w != 0 && w & !u == 0
        })
    });
    (lhs, stable && local)
}

pub fn check_topological_nagata(poset: &SamplePoset, u: u64) -> CheckResult {
    let opens = poset.opens();
    let (lhs, rhs) = nagata_sides(poset, &opens, u);
    let verdict = CheckVerdict::from_bool(lhs == rhs);
    CheckResult::new(
        "topological-nagata",
        "U open iff U is stable under generalization and contains a nonempty open subset of V(p) for each p in U",
        verdict,
        json!({"subset": poset.subset_names(u), "open": lhs, "criterion": rhs}),
    )
}

/// The criterion on every subset of the poset.
pub fn nagata_exhaustive(poset: &SamplePoset) -> CheckResult {
    let reference = "topological Nagata criterion on all subsets";
    if poset.len() > EXHAUSTIVE_LIMIT {
        let mut r = CheckResult::new(
            "topological-nagata",
            reference,
            CheckVerdict::Inconclusive,
            json!({"size": poset.len(), "limit": EXHAUSTIVE_LIMIT}),
        );
        r.caveats.push(format!("poset has more than {EXHAUSTIVE_LIMIT} primes"));
        return r;
    }
    let opens = poset.opens();
    let mut open_count = 0usize;
    for u in 0..=poset.full() {
        let (lhs, rhs) = nagata_sides(poset, &opens, u);
        if lhs != rhs {
            return CheckResult::new(
                "topological-nagata",
                reference,
                CheckVerdict::Fail,
                json!({"subset": poset.subset_names(u), "open": lhs, "criterion": rhs}),
            );
        }
        open_count += lhs as usize;
    }
    CheckResult::new(
        "topological-nagata",
        reference,
        CheckVerdict::Pass,
        json!({"subsets": poset.full() + 1, "open_subsets": open_count}),
    )
}
