use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::engine::{syzygy_module, ModuleOrder, ReducedModuleGb};
use crate::error::Result;
use crate::qpoly::{Monomial, Polynomial, TermOrder};

/// Ideal of `Q[x_1..x_n]` given by generators. The zero ideal has no
/// generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Polynomial>) -> Self {
        let mut out: Vec<Polynomial> = Vec::new();
        for g in gens {
            debug_assert_eq!(g.nvars(), nvars);
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ideal { nvars, gens: out }
    }

    pub fn zero(nvars: usize) -> Self {
        Ideal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        Ideal { nvars, gens: vec![Polynomial::one(nvars)] }
    }

    /// Ideal generated by the variables with the given indices.
    pub fn of_vars(nvars: usize, vars: &[usize]) -> Self {
        Ideal::new(nvars, vars.iter().map(|&v| Polynomial::var(nvars, v)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        Ideal::new(self.nvars, self.gens.iter().chain(other.gens.iter()).cloned())
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        Ideal::new(self.nvars, self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a.mul(b))))
    }

    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(self.nvars);
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    pub fn with_gen(&self, f: Polynomial) -> Ideal {
        let mut g = self.gens.clone();
        g.push(f);
        Ideal::new(self.nvars, g)
    }

    pub fn insert_vars(&self, at: usize, k: usize) -> Ideal {
        Ideal::new(self.nvars + k, self.gens.iter().map(|g| g.insert_vars(at, k)))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.gens.is_empty() {
            return "0".to_string();
        }
        self.gens.iter().map(|g| g.fmt_with(names).to_string()).collect::<Vec<_>>().join(", ")
    }
}

/// Groebner basis of an ideal with respect to a term order.
pub struct GroebnerBasis {
    order: TermOrder,
    basis: Vec<Polynomial>,
    reduced: bool,
    engine: ReducedModuleGb,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis").field("order", &self.order).field("basis", &self.basis).finish()
    }
}

impl GroebnerBasis {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        if self.basis.is_empty() || f.is_zero() {
            return f.clone();
        }
        self.engine.normal_form(std::slice::from_ref(f)).pop().unwrap()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens().iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.is_unit())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.engine.leading_terms().into_iter().map(|(_, m)| m).collect()
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal::new(self.nvars(), self.basis.iter().cloned())
    }
}

type GbKey = (TermOrder, Vec<Polynomial>);

fn gb_cache() -> &'static Mutex<HashMap<GbKey, Arc<GroebnerBasis>>> {
    static CACHE: OnceLock<Mutex<HashMap<GbKey, Arc<GroebnerBasis>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Reduced Groebner basis of `ideal`. Results are memoized.
pub fn groebner_basis(ideal: &Ideal, ord: &TermOrder) -> Result<Arc<GroebnerBasis>> {
    let key = (ord.clone(), ideal.gens().to_vec());
    if let Some(hit) = gb_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let gens: Vec<Vec<Polynomial>> = ideal.gens().iter().map(|g| vec![g.clone()]).collect();
    let engine = ReducedModuleGb::new(&ModuleOrder::top(ord.clone()), ideal.nvars(), 1, &gens)?;
    let basis: Vec<Polynomial> = engine.elements().into_iter().map(|mut v| v.pop().unwrap()).collect();
    let gb = Arc::new(GroebnerBasis { order: ord.clone(), basis, reduced: true, engine });
    let mut cache = gb_cache().lock().unwrap();
    if cache.len() > 20_000 {
        cache.clear();
    }
    cache.insert(key, gb.clone());
    Ok(gb)
}

pub(crate) fn grevlex_gb(ideal: &Ideal) -> Result<Arc<GroebnerBasis>> {
    groebner_basis(ideal, &TermOrder::grevlex(ideal.nvars()))
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    gb.normal_form(f)
}

/// Membership `f ∈ I`.
pub fn ideal_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    Ok(grevlex_gb(ideal)?.contains(f))
}

/// `I ⊆ J`.
pub fn ideal_contained(i: &Ideal, j: &Ideal) -> Result<bool> {
    let gb = grevlex_gb(j)?;
    Ok(gb.contains_ideal(i))
}

/// Equality of ideals, compared through reduced grevlex bases.
pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    Ok(grevlex_gb(i)?.basis() == grevlex_gb(j)?.basis())
}

pub fn is_unit_ideal(i: &Ideal) -> Result<bool> {
    if i.gens().iter().any(|g| g.is_unit()) {
        return Ok(true);
    }
    Ok(grevlex_gb(i)?.is_unit())
}

/// Replaces the generators by the reduced grevlex basis.
pub fn canonical(i: &Ideal) -> Result<Ideal> {
    Ok(grevlex_gb(i)?.to_ideal())
}

/// Eliminates the variables in `drop` (indices), returning `I ∩ Q[rest]`
/// expressed in the original ring.
pub fn eliminate(ideal: &Ideal, drop: &[usize]) -> Result<Ideal> {
    let n = ideal.nvars();
    if drop.is_empty() {
        return Ok(ideal.clone());
    }
    let mut prec: Vec<usize> = drop.to_vec();
    prec.extend((0..n).filter(|v| !drop.contains(v)));
    let ord = TermOrder::new(crate::qpoly::OrderKind::Block(drop.len()), prec);
    let gb = groebner_basis(ideal, &ord)?;
    let kept = gb.basis().iter().filter(|g| g.support().iter().all(|v| !drop.contains(v))).cloned();
    Ok(Ideal::new(n, kept))
}

/// `I ∩ J` via `t·I + (1 - t)·J` and elimination of `t`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    let n = i.nvars();
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(n));
    }
    if is_unit_ideal(i)? {
        return Ok(j.clone());
    }
    if is_unit_ideal(j)? {
        return Ok(i.clone());
    }
    let t = Polynomial::var(n + 1, 0);
    let one_minus_t = Polynomial::one(n + 1).sub(&t);
    let gens = i
        .gens()
        .iter()
        .map(|g| t.mul(&g.insert_vars(0, 1)))
        .chain(j.gens().iter().map(|g| one_minus_t.mul(&g.insert_vars(0, 1))));
    let big = Ideal::new(n + 1, gens);
    let elim = eliminate(&big, &[0])?;
    Ok(Ideal::new(n, elim.gens().iter().map(|g| g.remove_vars(0..1).expect("t eliminated"))))
}

pub fn intersect_all(ideals: &[Ideal], nvars: usize) -> Result<Ideal> {
    let mut acc = Ideal::unit(nvars);
    for i in ideals {
        acc = intersect(&acc, i)?;
    }
    canonical(&acc)
}

/// `(I : J) = {f | f·J ⊆ I}`, intersecting `(I : g)` over generators `g` of `J`.
pub fn ideal_quotient(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    let n = i.nvars();
    let mut acc = Ideal::unit(n);
    for g in j.gens() {
        let q = quotient_by_element(i, g)?;
        acc = intersect(&acc, &q)?;
    }
    canonical(&acc)
}

/// `(I : g)` from the syzygies of `(g, i_1, ..., i_k)`.
pub fn quotient_by_element(i: &Ideal, g: &Polynomial) -> Result<Ideal> {
    let n = i.nvars();
    if g.is_zero() {
        return Ok(Ideal::unit(n));
    }
    if i.is_zero() {
        return Ok(Ideal::zero(n));
    }
    let mut cols = vec![vec![g.clone()]];
    cols.extend(i.gens().iter().map(|h| vec![h.clone()]));
    let syz = syzygy_module(&TermOrder::grevlex(n), n, 1, &cols)?;
    canonical(&Ideal::new(n, syz.into_iter().map(|s| s[0].clone())))
}

/// `(I : J^∞)`, iterating quotients until they stabilize.
pub fn saturate(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    let mut cur = canonical(i)?;
    loop {
        let next = ideal_quotient(&cur, j)?;
        if ideal_equal(&next, &cur)? {
            return Ok(cur);
        }
        cur = next;
    }
}

/// `f ∈ √I` via `1 ∈ I + (1 - t·f)`.
pub fn radical_member(f: &Polynomial, i: &Ideal) -> Result<bool> {
    let n = i.nvars();
    if f.is_zero() {
        return Ok(true);
    }
    let t = Polynomial::var(n + 1, 0);
    let aux = Polynomial::one(n + 1).sub(&t.mul(&f.insert_vars(0, 1)));
    let big = i.insert_vars(0, 1).with_gen(aux);
    is_unit_ideal(&big)
}

/// `√I ⊆ √J` tested generator-wise.
pub fn radical_contained(i: &Ideal, j: &Ideal) -> Result<bool> {
    for g in i.gens() {
        if !radical_member(g, j)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Krull dimension of `S/I`: the largest set of variables containing no
/// leading monomial support of a grevlex basis. `-1` for the unit ideal.
pub fn krull_dim(i: &Ideal) -> Result<i64> {
    let n = i.nvars();
    let gb = grevlex_gb(i)?;
    if gb.is_unit() {
        return Ok(-1);
    }
    let supports: Vec<u64> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.support().iter().fold(0u64, |acc, &v| acc | (1 << v)))
        .collect();
    let mut best = 0i64;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as i64;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse_poly;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn ideal(v: &[String], gens: &[&str]) -> Ideal {
        Ideal::new(v.len(), gens.iter().map(|g| parse_poly(g, v).unwrap()))
    }

    fn p(v: &[String], s: &str) -> Polynomial {
        parse_poly(s, v).unwrap()
    }

    #[test]
    fn gb_examples() {
        let v = vars(&["x", "y"]);
        let gb = grevlex_gb(&ideal(&v, &["x*y"])).unwrap();
        assert_eq!(gb.basis(), &[p(&v, "x*y")]);
        let gb = grevlex_gb(&ideal(&v, &["x^2+y^2", "x*y"])).unwrap();
        let mut got: Vec<Polynomial> = gb.basis().to_vec();
        got.sort_by_key(|g| g.terms().to_vec());
        let mut want = vec![p(&v, "x^2+y^2"), p(&v, "x*y"), p(&v, "y^3")];
        want.sort_by_key(|g| g.terms().to_vec());
        assert_eq!(got, want);
        let gb = grevlex_gb(&ideal(&v, &["x-y"])).unwrap();
        assert_eq!(gb.basis(), &[p(&v, "x-y")]);
    }

    #[test]
    fn normal_forms() {
        let v = vars(&["x", "y"]);
        let gb = grevlex_gb(&ideal(&v, &["x^2+y^2", "x*y"])).unwrap();
        assert!(gb.normal_form(&p(&v, "y^3")).is_zero());
        let gb2 = grevlex_gb(&ideal(&v, &["x*y"])).unwrap();
        assert_eq!(gb2.normal_form(&p(&v, "x")), p(&v, "x"));
        assert!(gb2.normal_form(&Polynomial::zero(2)).is_zero());
    }

    #[test]
    fn quotients() {
        let v = vars(&["x", "y"]);
        let q = ideal_quotient(&ideal(&v, &["x*y"]), &ideal(&v, &["x"])).unwrap();
        assert!(ideal_equal(&q, &ideal(&v, &["y"])).unwrap());
        let i = ideal(&v, &["x^2+y^2", "x*y"]);
        assert!(ideal_equal(&ideal_quotient(&i, &Ideal::unit(2)).unwrap(), &i).unwrap());
        let q = ideal_quotient(&ideal(&v, &["x^2"]), &ideal(&v, &["x"])).unwrap();
        assert!(ideal_equal(&q, &ideal(&v, &["x"])).unwrap());
    }

    #[test]
    fn elimination() {
        let v = vars(&["t", "x", "y"]);
        let e = eliminate(&ideal(&v, &["x - t", "y - t^2"]), &[0]).unwrap();
        assert!(ideal_equal(&e, &ideal(&v, &["y - x^2"])).unwrap());
        let i = ideal(&v, &["x - t"]);
        assert_eq!(eliminate(&i, &[]).unwrap(), i);
        assert!(eliminate(&ideal(&v, &["t"]), &[0]).unwrap().is_zero());
    }

    #[test]
    fn intersections() {
        let v = vars(&["x", "y", "u", "w"]);
        let i = intersect(&ideal(&v, &["x", "y"]), &ideal(&v, &["u", "w"])).unwrap();
        assert!(ideal_equal(&i, &ideal(&v, &["x*u", "x*w", "y*u", "y*w"])).unwrap());
        let j = ideal(&v, &["x^2 - y", "u*w"]);
        assert!(ideal_equal(&intersect(&j, &j).unwrap(), &j).unwrap());
        assert!(ideal_equal(&intersect(&j, &Ideal::unit(4)).unwrap(), &j).unwrap());
    }

    #[test]
    fn radicals() {
        let v = vars(&["x", "y"]);
        assert!(radical_member(&p(&v, "x"), &ideal(&v, &["x^2"])).unwrap());
        assert!(!radical_member(&p(&v, "y"), &ideal(&v, &["x*y"])).unwrap());
        assert!(radical_member(&p(&v, "1"), &Ideal::unit(2)).unwrap());
    }

    #[test]
    fn dimensions() {
        let v = vars(&["x", "y"]);
        assert_eq!(krull_dim(&ideal(&v, &["x*y"])).unwrap(), 1);
        assert_eq!(krull_dim(&Ideal::zero(2)).unwrap(), 2);
        assert_eq!(krull_dim(&Ideal::unit(2)).unwrap(), -1);
    }

    #[test]
    fn saturations() {
        let v = vars(&["x", "y"]);
        let s = saturate(&ideal(&v, &["x*y"]), &ideal(&v, &["x"])).unwrap();
        assert!(ideal_equal(&s, &ideal(&v, &["y"])).unwrap());
        let i = ideal(&v, &["x^2 + y", "x*y^2"]);
        assert!(ideal_equal(&saturate(&i, &Ideal::unit(2)).unwrap(), &i).unwrap());
        let s = saturate(&ideal(&v, &["x^2*y"]), &ideal(&v, &["x"])).unwrap();
        assert!(ideal_equal(&s, &ideal(&v, &["y"])).unwrap());
    }
}
