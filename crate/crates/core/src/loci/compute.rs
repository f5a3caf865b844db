use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{SpecSubset, Verdict};
use crate::error::{Error, Result};
use crate::groebner::{ideal_quotient, intersect_all, is_unit_ideal, minimal_primes_with, Ideal};
use crate::invariants::{ModuleAnalysis, PrimeIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocusKind {
    Supp,
    Free,
    Cm,
    Mcm,
    Sn(u32),
    Tn(u32),
    Fid,
    Gor,
}

impl LocusKind {
    pub fn all(n: u32) -> Vec<LocusKind> {
        use LocusKind::*;
        vec![Supp, Free, Cm, Mcm, Sn(n), Tn(n), Fid, Gor]
    }

    /// Kinds whose locus always contains the primes where `M_p = 0`.
    pub fn contains_zero_module(self) -> bool {
        !matches!(self, LocusKind::Supp)
    }
}

impl fmt::Display for LocusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocusKind::Supp => write!(f, "supp"),
            LocusKind::Free => write!(f, "free"),
            LocusKind::Cm => write!(f, "cm"),
            LocusKind::Mcm => write!(f, "mcm"),
            LocusKind::Sn(n) => write!(f, "sn:{n}"),
            LocusKind::Tn(n) => write!(f, "tn:{n}"),
            LocusKind::Fid => write!(f, "fid"),
            LocusKind::Gor => write!(f, "gor"),
        }
    }
}

impl FromStr for LocusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let num = |rest: &str| {
            rest.parse::<u32>().map_err(|_| Error::InvalidArgument(format!("bad Serre index in locus {s:?}")))
        };
        Ok(match s.as_str() {
            "supp" => LocusKind::Supp,
            "free" => LocusKind::Free,
            "cm" => LocusKind::Cm,
            "mcm" => LocusKind::Mcm,
            "fid" => LocusKind::Fid,
            "gor" => LocusKind::Gor,
            _ => {
                if let Some(r) = s.strip_prefix("sn:") {
                    LocusKind::Sn(num(r)?)
                } else if let Some(r) = s.strip_prefix("tn:") {
                    LocusKind::Tn(num(r)?)
                } else {
                    return Err(Error::InvalidArgument(format!("unknown locus kind {s:?}")));
                }
            }
        })
    }
}

impl Serialize for LocusKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    ClosedForm,
    CandidateEnumerated,
    Pointwise,
}

#[derive(Clone, Debug)]
pub struct LocusReport {
    pub kind: LocusKind,
    pub subset: SpecSubset,
    pub mode: Mode,
    pub caveats: Vec<String>,
    pub sample_verdicts: BTreeMap<String, Verdict>,
}

impl LocusReport {
    pub fn member(&self, p: &PrimeIdeal) -> Option<bool> {
        self.subset.member(p)
    }

    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        let mut v = serde_json::json!({
            "kind": self.kind,
            "mode": self.mode,
            "caveats": self.caveats,
            "sample_verdicts": self.sample_verdicts,
            "description": self.subset.describe(names),
        });
        if let (serde_json::Value::Object(o), serde_json::Value::Object(s)) = (&mut v, self.subset.to_json(names)) {
            o.extend(s);
        }
        v
    }
}

/// Computes the locus of the given kind, then records closed-form
/// membership at every catalog prime of `R`.
pub fn compute_locus(a: &ModuleAnalysis, kind: LocusKind) -> Result<LocusReport> {
    let mut rep = match kind {
        LocusKind::Supp => supp_locus(a)?,
        LocusKind::Free => free_locus(a)?,
        LocusKind::Cm => cm_locus(a)?,
        LocusKind::Mcm => mcm_locus(a)?,
        LocusKind::Sn(n) => serre_locus(a, kind, n)?,
        LocusKind::Tn(n) => serre_locus(a, kind, n)?,
        LocusKind::Fid => fid_locus(a)?,
        LocusKind::Gor => gor_locus(a)?,
    };
    let j = a.ring().relations();
    for p in a.catalog() {
        if !p.contains_ideal(j) {
            continue;
        }
        let name = p.label(a.ring().names());
        match rep.subset.member(p) {
            Some(b) => {
                rep.sample_verdicts.insert(name, Verdict::from_bool(b));
            }
            None => {
                let v = pointwise(a, kind, p)?;
                rep.sample_verdicts.insert(name, v);
            }
        }
    }
    Ok(rep)
}

fn report(kind: LocusKind, subset: SpecSubset, mode: Mode, caveats: Vec<String>) -> LocusReport {
    LocusReport { kind, subset, mode, caveats, sample_verdicts: BTreeMap::new() }
}

fn nv(a: &ModuleAnalysis) -> usize {
    a.ring().nvars()
}

pub fn supp_locus(a: &ModuleAnalysis) -> Result<LocusReport> {
    let s = SpecSubset::closed_in(a.annihilator()?, a.ring().relations())?;
    Ok(report(LocusKind::Supp, s, Mode::ClosedForm, Vec::new()))
}

/// `D(Σ_r Fitt_r · (J : Fitt_{r-1}))`: `M_p` is free of rank `r` exactly
/// when `Fitt_r ⊄ p` and `Fitt_{r-1}` vanishes after localizing at `p`.
pub fn free_locus(a: &ModuleAnalysis) -> Result<LocusReport> {
    let s = free_subset(a.module())?;
    Ok(report(LocusKind::Free, s, Mode::ClosedForm, Vec::new()))
}

pub(crate) fn free_subset(m: &crate::modres::ModulePresentation) -> Result<SpecSubset> {
    let j = m.ring().relations().clone();
    let n = m.nvars();
    let g = m.pruned()?.num_gens();
    let mut prev = j.clone();
    let mut gens = Vec::new();
    for r in 0..=g {
        let fr = m.fitting_ideal(r)?;
        let vanish = ideal_quotient(&j, &prev)?;
        gens.extend(fr.product(&vanish).gens().iter().cloned());
        prev = fr;
    }
    SpecSubset::open_in(&Ideal::new(n, gens), &j)
}

fn pair_union(pairs: Vec<Ideal>, n: usize, j: &Ideal) -> Result<SpecSubset> {
    let mut live = Vec::new();
    for p in pairs {
        if !is_unit_ideal(&p.sum(j))? {
            live.push(p);
        }
    }
    if live.is_empty() {
        return Ok(SpecSubset::everything(n));
    }
    SpecSubset::open_in(&intersect_all(&live, n)?, j)
}

/// Complement `V(⋂_{j<k} (a_j + a_k))`: `M_p` is Cohen-Macaulay iff
/// `pd = grade`, i.e. exactly one `a_j` lies in `p`.
pub fn cm_locus(a: &ModuleAnalysis) -> Result<LocusReport> {
    let e = a.ext_annihilators()?;
    let mut pairs = Vec::new();
    for j in 0..e.len() {
        for k in j + 1..e.len() {
            pairs.push(e[j].sum(&e[k]));
        }
    }
    let s = pair_union(pairs, nv(a), a.ring().relations())?;
    Ok(report(LocusKind::Cm, s, Mode::ClosedForm, Vec::new()))
}

/// Complement `V(⋂_{k<j} (a_j + b_k))`: `depth M_p < dim R_p` iff
/// `pd M_p > grade R_p`.
pub fn mcm_locus(a: &ModuleAnalysis) -> Result<LocusReport> {
    let e = a.ext_annihilators()?;
    let b = a.ring_ext_annihilators()?;
    let mut pairs = Vec::new();
    for j in 0..e.len() {
        for k in 0..j.min(b.len()) {
            pairs.push(e[j].sum(&b[k]));
        }
    }
    let s = pair_union(pairs, nv(a), a.ring().relations())?;
    Ok(report(LocusKind::Mcm, s, Mode::ClosedForm, Vec::new()))
}

/// Minimal primes of `ideal`, from exact decomposition or, failing that,
/// the minimal catalog primes containing it. The flag is false in the
/// second case.
fn primes_of(ideal: &Ideal, catalog: &[PrimeIdeal]) -> Result<(Vec<PrimeIdeal>, bool)> {
    match minimal_primes_with(ideal, catalog) {
        Ok(v) => Ok((v, true)),
        Err(Error::DecompositionUnavailable(_)) | Err(Error::NotMonomialAndNotDeclared) => {
            let inside: Vec<PrimeIdeal> = catalog.iter().filter(|p| p.contains_ideal(ideal)).cloned().collect();
            let minimal = inside
                .iter()
                .filter(|p| !inside.iter().any(|q| q.is_contained_in(p) && !p.is_contained_in(q)))
                .cloned()
                .collect();
            Ok((minimal, false))
        }
        Err(e) => Err(e),
    }
}

/// `(S_n)` or `(T_n)`. A prime `P` violates the pointwise inequality iff
/// for some `k < j` it contains `a_j + c_k` (with `c = b` for `S_n`,
/// `c = a` for `T_n`) and `height P < n + j`. The locus is the set of `q`
/// with no violating `P ⊆ q`, so its complement is the union of `V(P)`
/// over the violating minimal primes of the ideals `a_j + c_k`.
pub fn serre_locus(a: &ModuleAnalysis, kind: LocusKind, n: u32) -> Result<LocusReport> {
    let e = a.ext_annihilators()?;
    let c: Vec<Ideal> = match kind {
        LocusKind::Sn(_) => a.ring_ext_annihilators()?.to_vec(),
        _ => e.to_vec(),
    };
    let j_ideal = a.ring().relations();
    let mut bad: Vec<PrimeIdeal> = Vec::new();
    let mut exact = true;
    for j in 0..e.len() {
        for k in 0..j.min(c.len()) {
            let i = e[j].sum(&c[k]).sum(j_ideal);
            if is_unit_ideal(&i)? {
                continue;
            }
            let (primes, ok) = primes_of(&i, a.catalog())?;
            exact &= ok;
            for p in primes {
                if p.height()? < n as i64 + j as i64 && !bad.contains(&p) {
                    bad.push(p);
                }
            }
        }
    }
    let nvars = nv(a);
    let subset = if bad.is_empty() {
        SpecSubset::everything(nvars)
    } else {
        let ideals: Vec<Ideal> = bad.iter().map(|p| p.ideal().clone()).collect();
        SpecSubset::open_in(&intersect_all(&ideals, nvars)?, j_ideal)?
    };
    let (mode, caveats) = if exact {
        (Mode::ClosedForm, Vec::new())
    } else {
        (
            Mode::CandidateEnumerated,
            vec!["some ideals had no computable decomposition; their minimal primes were taken from the declared primes".into()],
        )
    };
    Ok(report(kind, subset, mode, caveats))
}

/// Candidate primes for enumeration: minimal primes of `J`, `Ann M`, the
/// Ext annihilators and their pairwise sums, plus every catalog prime of
/// `R`. The flag reports whether all decompositions were exact.
pub fn candidate_primes(a: &ModuleAnalysis) -> Result<(Vec<PrimeIdeal>, bool)> {
    let j = a.ring().relations().clone();
    let mut family: Vec<Ideal> = vec![j.clone(), a.annihilator()?.clone()];
    let e = a.ext_annihilators()?;
    let b = a.ring_ext_annihilators()?;
    let all: Vec<&Ideal> = e.iter().chain(b.iter()).collect();
    for x in &all {
        family.push((*x).clone());
    }
    for (i, x) in all.iter().enumerate() {
        for y in &all[i + 1..] {
            family.push(x.sum(y));
        }
    }
    let mut out: Vec<PrimeIdeal> = Vec::new();
    let mut exact = true;
    for f in family {
        let f = f.sum(&j);
        if is_unit_ideal(&f)? {
            continue;
        }
        let (ps, ok) = primes_of(&f, a.catalog())?;
        exact &= ok;
        for p in ps {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    for p in a.catalog() {
        if p.contains_ideal(&j) && !out.contains(p) {
            out.push(p.clone());
        }
    }
    Ok((out, exact))
}

/// Finite injective dimension. Over a certified Gorenstein ring this is the
/// free locus of `Ω^N M`, `N = dim R`; otherwise candidate primes are
/// tested pointwise and the complement is the union of `V(P)` over the
/// failing ones.
pub fn fid_locus(a: &ModuleAnalysis) -> Result<LocusReport> {
    let ring = a.ring();
    if let Some(cert) = ring.gorenstein_certificate()? {
        let dim = ring.dim()?.max(0) as usize;
        match a.module().syzygy(dim).and_then(|omega| free_subset(&omega)) {
            Ok(s) => {
                return Ok(report(
                    LocusKind::Fid,
                    s,
                    Mode::ClosedForm,
                    vec![format!("Gorenstein ring ({cert}); free locus of the syzygy of order {dim}")],
                ))
            }
            Err(Error::ResourceLimit { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    fid_by_candidates(a)
}

pub fn fid_by_candidates(a: &ModuleAnalysis) -> Result<LocusReport> {
    let (cands, exact) = candidate_primes(a)?;
    let mut bad: Vec<PrimeIdeal> = Vec::new();
    let mut caveats = vec!["candidate-enumerated: exact at every candidate prime, not proven complete".to_string()];
    if !exact {
        caveats.push("some candidate families had no computable decomposition".into());
    }
    let mut verdicts = BTreeMap::new();
    for p in &cands {
        let v = pointwise(a, LocusKind::Fid, p)?;
        match &v {
            Verdict::NotMember => bad.push(p.clone()),
            Verdict::Inconclusive(r) => caveats.push(format!("inconclusive at {}: {r}", p.label(a.ring().names()))),
            Verdict::Member => {}
        }
        verdicts.insert(p.label(a.ring().names()), v);
    }
    let n = nv(a);
    let subset = if bad.is_empty() {
        SpecSubset::everything(n)
    } else {
        let ideals: Vec<Ideal> = bad.iter().map(|p| p.ideal().clone()).collect();
        SpecSubset::open_in(&intersect_all(&ideals, n)?, a.ring().relations())?
    };
    let mut rep = report(LocusKind::Fid, subset, Mode::CandidateEnumerated, caveats);
    rep.sample_verdicts = verdicts;
    Ok(rep)
}

/// `gor = fid ∩ mcm`.
pub fn gor_locus(a: &ModuleAnalysis) -> Result<LocusReport> {
    let fid = fid_locus(a)?;
    let mcm = mcm_locus(a)?;
    let mut caveats = fid.caveats.clone();
    caveats.extend(mcm.caveats.iter().cloned());
    let subset = match fid.subset.intersect_open(&mcm.subset)? {
        Some(s) => s,
        None => return Err(Error::Validation("fid and mcm loci are not both open".into())),
    };
    Ok(report(LocusKind::Gor, subset, fid.mode.max(mcm.mode), caveats))
}

/// Membership of `p` decided from local invariants at `p` (and, for the
/// Serre conditions, at candidate primes inside `p`), independently of the
/// closed forms above.
pub fn pointwise(a: &ModuleAnalysis, kind: LocusKind, p: &PrimeIdeal) -> Result<Verdict> {
    let m = a.module();
    let zero = m.local_num_gens(p) == 0;
    if kind == LocusKind::Supp {
        return Ok(Verdict::from_bool(!zero));
    }
    if zero {
        return Ok(Verdict::Member);
    }
    match kind {
        LocusKind::Supp => unreachable!(),
        LocusKind::Free => Ok(Verdict::from_bool(locally_free(m, p)?)),
        LocusKind::Cm => {
            let depth = a.local_depth(p)?.unwrap();
            let dim = a.local_dim(p)?.unwrap();
            Ok(Verdict::from_bool(depth >= dim))
        }
        LocusKind::Mcm => Ok(Verdict::from_bool(is_mcm_at(a, p)?)),
        LocusKind::Sn(n) | LocusKind::Tn(n) => {
            let (cands, _) = candidate_primes(a)?;
            let mut below: Vec<&PrimeIdeal> = cands.iter().filter(|q| q.is_contained_in(p)).collect();
            if !below.contains(&p) {
                below.push(p);
            }
            for q in below {
                let Some(depth) = a.local_depth(q)? else { continue };
                let bound = match kind {
                    LocusKind::Sn(_) => a.ring_local_dim(q)?,
                    _ => a.local_dim(q)?.unwrap(),
                };
                if depth < bound.min(n as i64) {
                    return Ok(Verdict::NotMember);
                }
            }
            Ok(Verdict::Member)
        }
        LocusKind::Fid => fid_at(a, p),
        LocusKind::Gor => Ok(Verdict::from_bool(is_mcm_at(a, p)?).and(fid_at(a, p)?)),
    }
}

fn is_mcm_at(a: &ModuleAnalysis, p: &PrimeIdeal) -> Result<bool> {
    match a.local_depth(p)? {
        None => Ok(true),
        Some(d) => Ok(d >= a.ring_local_dim(p)?),
    }
}

/// `M_p` free: after splitting off entries that are units at `p`, every
/// remaining relation entry `e` must vanish in `R_p`, i.e. `(J : e) ⊄ p`.
pub fn locally_free(m: &crate::modres::ModulePresentation, p: &PrimeIdeal) -> Result<bool> {
    let pruned = m.pruned_at(p);
    let j = m.ring().relations();
    for c in pruned.relations().columns() {
        for e in c {
            if e.is_zero() {
                continue;
            }
            let ann = crate::groebner::quotient_by_element(j, e)?;
            if p.contains_ideal(&ann) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pointwise finite injective dimension. A nonzero `M_p` has finite
/// injective dimension iff `μ^{d+1}(p, M) = 0` with `d = dim R_p`, since
/// Bass numbers of a module of infinite injective dimension never vanish
/// past the depth. A non-Cohen-Macaulay `R_p` admits no such module.
pub fn fid_at(a: &ModuleAnalysis, p: &PrimeIdeal) -> Result<Verdict> {
    if a.is_zero_at(p)? {
        return Ok(Verdict::Member);
    }
    let d = a.ring_local_dim(p)?;
    if a.ring_local_depth(p)? < d {
        return Ok(Verdict::NotMember);
    }
    match a.bass_number(p, d.max(0) as usize + 1) {
        Ok(mu) => Ok(Verdict::from_bool(mu == 0)),
        Err(Error::ResourceLimit { what, budget }) => {
            Ok(Verdict::Inconclusive(format!("Bass number {} exceeded {what} budget {budget}", d + 1)))
        }
        Err(e) => Err(e),
    }
}
