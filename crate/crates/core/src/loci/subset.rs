use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::groebner::{canonical, intersect, is_unit_ideal, Ideal};
use crate::invariants::PrimeIdeal;
use crate::qpoly::Polynomial;

/// A subset of `Spec R`, described by ideals of the ambient ring. Primes of
/// `R` contain `J`, so only containments `a ⊆ p` are ever evaluated.
#[derive(Clone, Debug, PartialEq)]
pub enum SpecSubset {
    /// `D(a)`.
    Open(Ideal),
    /// `V(a)`.
    Closed(Ideal),
    /// `⋃ V(a_i) ∖ V(b_i)`.
    Union(Vec<(Ideal, Ideal)>),
    /// Only verdicts at sampled primes are known.
    PointwiseOnly(BTreeMap<String, bool>),
}

impl SpecSubset {
    pub fn everything(nvars: usize) -> Self {
        SpecSubset::Open(Ideal::unit(nvars))
    }

    /// `D(a)` with `a` replaced by the canonical basis of `a + J`.
    pub fn open_in(a: &Ideal, j: &Ideal) -> Result<Self> {
        Ok(SpecSubset::Open(canonical(&a.sum(j))?))
    }

    pub fn closed_in(a: &Ideal, j: &Ideal) -> Result<Self> {
        Ok(SpecSubset::Closed(canonical(&a.sum(j))?))
    }

    /// Membership of an explicit prime; `None` for pointwise-only subsets
    /// that never sampled `p`.
    pub fn member(&self, p: &PrimeIdeal) -> Option<bool> {
        match self {
            SpecSubset::Open(a) => Some(!p.contains_ideal(a)),
            SpecSubset::Closed(a) => Some(p.contains_ideal(a)),
            SpecSubset::Union(pieces) => {
                Some(pieces.iter().any(|(a, b)| p.contains_ideal(a) && !p.contains_ideal(b)))
            }
            SpecSubset::PointwiseOnly(v) => p.name().and_then(|n| v.get(n).copied()),
        }
    }

    pub fn complement(&self) -> Option<SpecSubset> {
        match self {
            SpecSubset::Open(a) => Some(SpecSubset::Closed(a.clone())),
            SpecSubset::Closed(a) => Some(SpecSubset::Open(a.clone())),
            _ => None,
        }
    }

    /// The ideal `a` with complement `V(a)`, for open subsets.
    pub fn complement_ideal(&self) -> Option<&Ideal> {
        match self {
            SpecSubset::Open(a) => Some(a),
            _ => None,
        }
    }

    /// `D(a) ∩ D(b) = D(a ∩ b)`; other combinations fall back to
    /// pointwise verdicts supplied by the caller.
    pub fn intersect_open(&self, other: &SpecSubset) -> Result<Option<SpecSubset>> {
        match (self, other) {
            (SpecSubset::Open(a), SpecSubset::Open(b)) => Ok(Some(SpecSubset::Open(canonical(&intersect(a, b)?)?))),
            _ => Ok(None),
        }
    }

    /// Whether the subset is all of `Spec R` (`j` is the defining ideal).
    pub fn is_everything(&self, j: &Ideal) -> Result<Option<bool>> {
        match self {
            SpecSubset::Open(a) => Ok(Some(is_unit_ideal(&a.sum(j))?)),
            SpecSubset::Closed(a) => Ok(Some(crate::groebner::radical_contained(a, j)?)),
            _ => Ok(None),
        }
    }

    pub fn is_empty(&self, j: &Ideal) -> Result<Option<bool>> {
        match self {
            SpecSubset::Open(a) => Ok(Some(crate::groebner::radical_contained(a, j)?)),
            SpecSubset::Closed(a) => Ok(Some(is_unit_ideal(&a.sum(j))?)),
            _ => Ok(None),
        }
    }

    /// An element `f ∉ p` with `D(f) ∩ V(p)` inside the subset, read off the
    /// normal form; `None` if no such element is visible from the form.
    pub fn nonempty_open_inside(&self, p: &PrimeIdeal) -> Option<Polynomial> {
        let n = p.nvars();
        let outside = |b: &Ideal| -> Option<Polynomial> {
            let mut cands: Vec<&Polynomial> = b.gens().iter().filter(|g| !p.contains(g)).collect();
            cands.sort_by_key(|g| (g.total_degree(), g.len()));
            cands.first().map(|g| (*g).clone())
        };
        match self {
            SpecSubset::Open(a) => outside(a),
            SpecSubset::Closed(a) => p.contains_ideal(a).then(|| Polynomial::one(n)),
            SpecSubset::Union(pieces) => {
                pieces.iter().find(|(a, b)| p.contains_ideal(a) && !p.contains_ideal(b)).and_then(|(_, b)| outside(b))
            }
            SpecSubset::PointwiseOnly(_) => None,
        }
    }

    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        use serde_json::json;
        let gens = |i: &Ideal| -> Vec<String> { i.gens().iter().map(|g| g.fmt_with(names).to_string()).collect() };
        match self {
            SpecSubset::Open(a) => json!({"form": "open", "complement_ideal": gens(a)}),
            SpecSubset::Closed(a) => json!({"form": "closed", "ideal": gens(a)}),
            SpecSubset::Union(pieces) => json!({
                "form": "union",
                "pieces": pieces.iter().map(|(a, b)| json!({"closed": gens(a), "minus": gens(b)})).collect::<Vec<_>>(),
            }),
            SpecSubset::PointwiseOnly(v) => json!({"form": "pointwise", "verdicts": v}),
        }
    }

    pub fn describe(&self, names: &[String]) -> String {
        let show = |i: &Ideal| format!("({})", i.fmt_with(names));
        match self {
            SpecSubset::Open(a) if a.gens().iter().any(|g| g.is_unit()) => "Spec".to_string(),
            SpecSubset::Open(a) => format!("Spec \\ V{}", show(a)),
            SpecSubset::Closed(a) => format!("V{}", show(a)),
            SpecSubset::Union(pieces) => pieces
                .iter()
                .map(|(a, b)| format!("V{} \\ V{}", show(a), show(b)))
                .collect::<Vec<_>>()
                .join(" ∪ "),
            SpecSubset::PointwiseOnly(v) => format!("pointwise ({} sampled primes)", v.len()),
        }
    }
}

/// Pointwise verdict at a single prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NotMember,
    Inconclusive(String),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Member
        } else {
            Verdict::NotMember
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Member => Some(true),
            Verdict::NotMember => Some(false),
            Verdict::Inconclusive(_) => None,
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::NotMember, _) | (_, Verdict::NotMember) => Verdict::NotMember,
            (Verdict::Inconclusive(r), _) | (_, Verdict::Inconclusive(r)) => Verdict::Inconclusive(r),
            _ => Verdict::Member,
        }
    }
}
