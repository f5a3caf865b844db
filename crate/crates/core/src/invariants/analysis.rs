use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::PrimeIdeal;
use crate::budget;
use crate::error::{Error, Result};
use crate::groebner::{minimal_primes_with, Ideal};
use crate::modres::{
    ext_annihilators_over_ambient, ext_from_resolution, resolve, AffineRing, ModulePresentation, Pruning,
};
use crate::qpoly::Polynomial;

/// Local invariants of `M` at one prime.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalProfile {
    pub prime: String,
    pub height_s: i64,
    pub dim_r_local: i64,
    pub depth_r_local: i64,
    #[serde(serialize_with = "ser_empty")]
    pub dim_m_local: Option<i64>,
    #[serde(serialize_with = "ser_neg_inf")]
    pub pd_local: Option<i64>,
    #[serde(serialize_with = "ser_pos_inf")]
    pub depth_local: Option<i64>,
    /// `μ^0 .. μ^w`, or `None` if the computation ran out of budget.
    pub bass: Option<Vec<usize>>,
}

fn ser_opt<S: serde::Serializer>(v: &Option<i64>, s: S, none: &str) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_i64(*x),
        None => s.serialize_str(none),
    }
}

fn ser_empty<S: serde::Serializer>(v: &Option<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_opt(v, s, "empty")
}

fn ser_neg_inf<S: serde::Serializer>(v: &Option<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_opt(v, s, "-inf")
}

fn ser_pos_inf<S: serde::Serializer>(v: &Option<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_opt(v, s, "+inf")
}

impl LocalProfile {
    pub fn is_zero(&self) -> bool {
        self.pd_local.is_none()
    }
}

/// `Ann_S(M)`, the Ext annihilators of `M` and of `R` over `S`, and their
/// minimal primes, computed once and shared by all local questions.
pub struct ModuleAnalysis {
    module: ModulePresentation,
    catalog: Vec<PrimeIdeal>,
    ann: OnceLock<Result<Ideal>>,
    ext_anns: OnceLock<Result<Vec<Ideal>>>,
    ring_ext_anns: OnceLock<Result<Vec<Ideal>>>,
    ann_primes: OnceLock<Result<Vec<PrimeIdeal>>>,
    ring_primes: OnceLock<Result<Vec<PrimeIdeal>>>,
    profiles: Mutex<HashMap<Vec<Polynomial>, LocalProfile>>,
}

fn cached<T: Clone>(cell: &OnceLock<Result<T>>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

impl ModuleAnalysis {
    pub fn new(module: ModulePresentation) -> Self {
        ModuleAnalysis {
            module,
            catalog: Vec::new(),
            ann: OnceLock::new(),
            ext_anns: OnceLock::new(),
            ring_ext_anns: OnceLock::new(),
            ann_primes: OnceLock::new(),
            ring_primes: OnceLock::new(),
            profiles: Mutex::new(HashMap::new()),
        }
    }

    /// Primes used when an ideal has no computable decomposition.
    pub fn with_catalog(mut self, primes: Vec<PrimeIdeal>) -> Self {
        self.catalog = primes;
        self
    }

    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    pub fn ring(&self) -> &Arc<AffineRing> {
        self.module.ring()
    }

    pub fn catalog(&self) -> &[PrimeIdeal] {
        &self.catalog
    }

    pub fn annihilator(&self) -> Result<&Ideal> {
        cached(&self.ann, || self.module.annihilator())
    }

    /// `a_j = Ann_S Ext^j_S(M, S)` for `j = 0..=nvars`.
    pub fn ext_annihilators(&self) -> Result<&[Ideal]> {
        cached(&self.ext_anns, || ext_annihilators_over_ambient(&self.module)).map(|v| v.as_slice())
    }

    /// `b_k = Ann_S Ext^k_S(R, S)` for `k = 0..=nvars`.
    pub fn ring_ext_annihilators(&self) -> Result<&[Ideal]> {
        cached(&self.ring_ext_anns, || {
            let r = ModulePresentation::free(self.ring().clone(), 1);
            ext_annihilators_over_ambient(&r)
        })
        .map(|v| v.as_slice())
    }

    pub fn annihilator_primes(&self) -> Result<&[PrimeIdeal]> {
        cached(&self.ann_primes, || minimal_primes_with(self.annihilator()?, &self.catalog)).map(|v| v.as_slice())
    }

    pub fn ring_primes(&self) -> Result<&[PrimeIdeal]> {
        cached(&self.ring_primes, || minimal_primes_with(self.ring().relations(), &self.catalog))
            .map(|v| v.as_slice())
    }

    fn check_prime(&self, p: &PrimeIdeal) -> Result<()> {
        if p.nvars() != self.ring().nvars() || !p.contains_ideal(self.ring().relations()) {
            return Err(Error::InvalidArgument("prime does not contain the defining ideal of the ring".into()));
        }
        Ok(())
    }

    /// Whether `M_p = 0`.
    pub fn is_zero_at(&self, p: &PrimeIdeal) -> Result<bool> {
        Ok(!p.contains_ideal(self.annihilator()?))
    }

    fn indices_inside(ideals: &[Ideal], p: &PrimeIdeal) -> Vec<i64> {
        ideals.iter().enumerate().filter(|(_, a)| p.contains_ideal(a)).map(|(j, _)| j as i64).collect()
    }

    /// `pd_{S_p} M_p = max{ j : a_j ⊆ p }`; `None` when `M_p = 0`.
    pub fn local_pd(&self, p: &PrimeIdeal) -> Result<Option<i64>> {
        if self.is_zero_at(p)? {
            return Ok(None);
        }
        Ok(Self::indices_inside(self.ext_annihilators()?, p).into_iter().max())
    }

    /// `grade_p M = min{ j : a_j ⊆ p }`; `None` when `M_p = 0`.
    pub fn local_grade(&self, p: &PrimeIdeal) -> Result<Option<i64>> {
        if self.is_zero_at(p)? {
            return Ok(None);
        }
        Ok(Self::indices_inside(self.ext_annihilators()?, p).into_iter().min())
    }

    /// `depth M_p = height p - pd`; `None` (infinite) when `M_p = 0`.
    pub fn local_depth(&self, p: &PrimeIdeal) -> Result<Option<i64>> {
        let h = p.height()?;
        Ok(self.local_pd(p)?.map(|pd| h - pd))
    }

    /// `dim M_p` from the minimal primes of `Ann M` contained in `p`,
    /// falling back to `height p - grade` when no decomposition is known.
    pub fn local_dim(&self, p: &PrimeIdeal) -> Result<Option<i64>> {
        if self.is_zero_at(p)? {
            return Ok(None);
        }
        match self.annihilator_primes() {
            Ok(mins) => dim_from_primes(mins, p),
            Err(Error::DecompositionUnavailable(_)) | Err(Error::NotMonomialAndNotDeclared) => {
                self.local_dim_by_grade(p)
            }
            Err(e) => Err(e),
        }
    }

    /// `dim M_p = height p - grade_p M`.
    pub fn local_dim_by_grade(&self, p: &PrimeIdeal) -> Result<Option<i64>> {
        let h = p.height()?;
        Ok(self.local_grade(p)?.map(|g| h - g))
    }

    /// `dim R_p`.
    pub fn ring_local_dim(&self, p: &PrimeIdeal) -> Result<i64> {
        self.check_prime(p)?;
        let h = p.height()?;
        let g = Self::indices_inside(self.ring_ext_annihilators()?, p).into_iter().min().unwrap_or(h);
        Ok(h - g)
    }

    /// `depth R_p`.
    pub fn ring_local_depth(&self, p: &PrimeIdeal) -> Result<i64> {
        self.check_prime(p)?;
        let h = p.height()?;
        let pd = Self::indices_inside(self.ring_ext_annihilators()?, p).into_iter().max().unwrap_or(0);
        Ok(h - pd)
    }

    /// `μ^0(p, M) .. μ^upto(p, M)`.
    pub fn bass_numbers(&self, p: &PrimeIdeal, upto: usize) -> Result<Vec<usize>> {
        self.check_prime(p)?;
        if self.is_zero_at(p)? {
            return Ok(vec![0; upto + 1]);
        }
        let ring = self.ring().clone();
        let residue = ModulePresentation::cyclic(ring, p.ideal());
        let res = resolve(&residue, upto + 1, Pruning::Local(p))?;
        let m = self.module.pruned_at(p);
        (0..=upto).map(|i| Ok(ext_from_resolution(&res, i, &m)?.local_num_gens(p))).collect()
    }

    pub fn bass_number(&self, p: &PrimeIdeal, i: usize) -> Result<usize> {
        Ok(self.bass_numbers(p, i)?[i])
    }

    /// Last Bass index in the default window: `dim R_p` plus the
    /// configured extra.
    pub fn bass_window(&self, p: &PrimeIdeal) -> Result<usize> {
        Ok(self.ring_local_dim(p)?.max(0) as usize + budget::current().bass_window_extra)
    }

    /// The full local profile; Bass numbers are `None` when over budget.
    pub fn profile(&self, p: &PrimeIdeal) -> Result<LocalProfile> {
        self.profile_with(p, true)
    }

    /// Profile without Bass numbers.
    pub fn profile_lite(&self, p: &PrimeIdeal) -> Result<LocalProfile> {
        self.profile_with(p, false)
    }

    fn profile_with(&self, p: &PrimeIdeal, bass: bool) -> Result<LocalProfile> {
        self.check_prime(p)?;
        let key = p.gb().basis().to_vec();
        if let Some(prof) = self.profiles.lock().unwrap().get(&key) {
            if prof.bass.is_some() || !bass {
                return Ok(prof.clone());
            }
        }
        let bass_v = if bass {
            match self.bass_numbers(p, self.bass_window(p)?) {
                Ok(v) => Some(v),
                Err(Error::ResourceLimit { .. }) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        let prof = LocalProfile {
            prime: p.label(self.ring().names()),
            height_s: p.height()?,
            dim_r_local: self.ring_local_dim(p)?,
            depth_r_local: self.ring_local_depth(p)?,
            dim_m_local: self.local_dim(p)?,
            pd_local: self.local_pd(p)?,
            depth_local: self.local_depth(p)?,
            bass: bass_v,
        };
        if bass {
            self.profiles.lock().unwrap().insert(key, prof.clone());
        }
        Ok(prof)
    }
}

fn dim_from_primes(mins: &[PrimeIdeal], p: &PrimeIdeal) -> Result<Option<i64>> {
    let dp = p.dim()?;
    let mut best: Option<i64> = None;
    for q in mins {
        if q.is_contained_in(p) {
            let d = q.dim()? - dp;
            best = Some(best.map_or(d, |b| b.max(d)));
        }
    }
    Ok(best)
}

/// `height p = nvars - dim S/p`.
pub fn height_in_s(p: &PrimeIdeal) -> Result<i64> {
    p.height()
}

/// Outcome of the Gorenstein-module test at a maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GorensteinType {
    Type(usize),
    NotGorensteinModule,
    Inconclusive(String),
}

/// The type `r` of `M_m` if it is a Gorenstein module, checked over the
/// Bass window.
pub fn gorenstein_type(m: &ModulePresentation, max: &PrimeIdeal) -> Result<GorensteinType> {
    if !max.is_maximal()? {
        return Err(Error::InvalidArgument("gorenstein_type needs a maximal ideal".into()));
    }
    let a = ModuleAnalysis::new(m.clone());
    let d = a.ring_local_dim(max)?.max(0) as usize;
    let w = a.bass_window(max)?;
    let bass = match a.bass_numbers(max, w) {
        Ok(b) => b,
        Err(Error::ResourceLimit { what, budget }) => {
            return Ok(GorensteinType::Inconclusive(format!("{what} exceeded budget {budget}")))
        }
        Err(e) => return Err(e),
    };
    if bass.iter().enumerate().any(|(i, &b)| i != d && b != 0) || bass[d] == 0 {
        return Ok(GorensteinType::NotGorensteinModule);
    }
    Ok(GorensteinType::Type(bass[d]))
}

/// Whether `xs` is an `M`-regular sequence, or an `M_p`-regular sequence
/// when `at` is given (then every element must lie in `p`).
pub fn is_regular_sequence(xs: &[Polynomial], m: &ModulePresentation, at: Option<&PrimeIdeal>) -> Result<bool> {
    let ring = m.ring().clone();
    let n = ring.nvars();
    let mut cur = m.clone();
    for x in xs {
        if let Some(p) = at {
            if !p.contains(x) {
                return Ok(false);
            }
        }
        let g = cur.num_gens();
        let kernel = multiplication_kernel(&cur, x)?;
        let bad = match at {
            None => !kernel.is_zero()?,
            Some(p) => p.contains_ideal(&kernel.annihilator()?),
        };
        if bad {
            return Ok(false);
        }
        let mut cols = cur.relations().columns().to_vec();
        for i in 0..g {
            cols.push((0..g).map(|k| if k == i { x.clone() } else { Polynomial::zero(n) }).collect());
        }
        cur = ModulePresentation::from_columns(ring.clone(), g, cols);
    }
    match at {
        None => Ok(!cur.is_zero()?),
        Some(p) => Ok(p.contains_ideal(&cur.annihilator()?)),
    }
}

/// `(0 :_M x)` as a presented module.
pub fn multiplication_kernel(m: &ModulePresentation, x: &Polynomial) -> Result<ModulePresentation> {
    use crate::groebner::engine::syzygy_module;
    let ring = m.ring().clone();
    let n = ring.nvars();
    let g = m.num_gens();
    let rels = m.s_columns();
    let mut cols: Vec<Vec<Polynomial>> =
        (0..g).map(|i| (0..g).map(|k| if k == i { x.clone() } else { Polynomial::zero(n) }).collect()).collect();
    cols.extend(rels.iter().cloned());
    let colon: Vec<Vec<Polynomial>> =
        syzygy_module(ring.order(), n, g, &cols)?.into_iter().map(|s| s[..g].to_vec()).collect();
    subquotient(&ring, g, colon, &rels)
}

/// `(W + U) / U` inside `S^g`, with `U` given by S-level columns
/// (including `J·e_i`), presented by syzygies of `[W | U]`.
pub fn subquotient(
    ring: &Arc<AffineRing>,
    g: usize,
    w: Vec<Vec<Polynomial>>,
    u: &[Vec<Polynomial>],
) -> Result<ModulePresentation> {
    use crate::groebner::engine::syzygy_module;
    let n = ring.nvars();
    let gens = crate::modres::minimize_modulo(ring, g, u, w)?;
    let q = gens.len();
    if q == 0 {
        return Ok(ModulePresentation::free(ring.clone(), 0));
    }
    let mut all = gens;
    all.extend(u.iter().cloned());
    let syz: Vec<Vec<Polynomial>> =
        syzygy_module(ring.order(), n, g, &all)?.into_iter().map(|s| s[..q].to_vec()).collect();
    ModulePresentation::from_columns(ring.clone(), q, syz).pruned()
}
