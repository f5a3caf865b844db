//! Buchberger's algorithm for submodules of free modules `S^r`.
//!
//! Ideals are the rank-one case. Module elements are sparse lists of
//! `(position, monomial, coefficient)` terms sorted by a module order.
//! Selection follows the normal strategy (smallest lcm first, ties broken by
//! pair indices); pairs are discarded with the chain criterion, and with the
//! coprime-leading-terms criterion in rank one.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::sync::Arc;

use crate::budget;
use crate::error::{Error, Result};
use crate::qpoly::{Monomial, Polynomial, Rational, TermOrder};

/// Order on the terms `m * e_pos` of a free module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub term: TermOrder,
    /// Position over term: earlier positions dominate every monomial.
    pub pot: bool,
}

impl ModuleOrder {
    pub fn pot(term: TermOrder) -> Self {
        ModuleOrder { term, pot: true }
    }

    pub fn top(term: TermOrder) -> Self {
        ModuleOrder { term, pot: false }
    }

    #[inline]
    pub fn cmp(&self, p1: u32, m1: &Monomial, p2: u32, m2: &Monomial) -> Ordering {
        if self.pot {
            p2.cmp(&p1).then_with(|| self.term.cmp(m1, m2))
        } else {
            self.term.cmp(m1, m2).then_with(|| p2.cmp(&p1))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub pos: u32,
    pub mono: Monomial,
    pub coeff: Rational,
}

/// Element of `S^r`, terms strictly decreasing in the module order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn from_components(comps: &[Polynomial], ord: &ModuleOrder) -> Vector {
        let mut terms = Vec::new();
        for (pos, p) in comps.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(Term { pos: pos as u32, mono: m.clone(), coeff: c.clone() });
            }
        }
        terms.sort_by(|a, b| ord.cmp(b.pos, &b.mono, a.pos, &a.mono));
        Vector { terms }
    }

    pub fn to_components(&self, rank: usize, nvars: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.pos as usize].push((t.mono.clone(), t.coeff.clone()));
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(nvars, b)).collect()
    }

    fn scale(&mut self, c: &Rational) {
        for t in &mut self.terms {
            t.coeff = &t.coeff * c;
        }
    }

    fn make_monic(&mut self) {
        if let Some(l) = self.terms.first() {
            if !l.coeff.is_one() {
                let inv = l.coeff.recip();
                self.scale(&inv);
            }
        }
    }
}

/// `a[start..] - c * m * b`, merged in module order.
fn sub_scaled(ord: &ModuleOrder, a: &[Term], c: &Rational, m: &Monomial, b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<Term> = b.first().map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coeff: &t.coeff * c });
    while i < a.len() {
        let Some(bt) = bj.as_ref() else { break };
        match ord.cmp(a[i].pos, &a[i].mono, bt.pos, &bt.mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let mut t = bj.take().unwrap();
                t.coeff = -t.coeff;
                out.push(t);
                j += 1;
                bj = b.get(j).map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coeff: &t.coeff * c });
            }
            Ordering::Equal => {
                let nc = &a[i].coeff - &bt.coeff;
                if !nc.is_zero() {
                    out.push(Term { pos: a[i].pos, mono: a[i].mono.clone(), coeff: nc });
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coeff: &t.coeff * c });
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    while let Some(mut t) = bj.take() {
        t.coeff = -t.coeff;
        out.push(t);
        j += 1;
        bj = b.get(j).map(|t| Term { pos: t.pos, mono: t.mono.mul(m), coeff: &t.coeff * c });
    }
    out
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    pos: u32,
    lcm: Monomial,
    ord: Arc<ModuleOrder>,
}

impl PartialEq for Pair {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Pair {}
impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Pair {
    // max-heap: the pair with the smallest lcm must compare greatest
    fn cmp(&self, other: &Self) -> Ordering {
        self.ord
            .cmp(other.pos, &other.lcm, self.pos, &self.lcm)
            .then_with(|| (other.j, other.i).cmp(&(self.j, self.i)))
    }
}

/// Incremental Groebner basis computation.
pub(crate) struct GbBuilder {
    ord: Arc<ModuleOrder>,
    nvars: usize,
    basis: Vec<Vector>,
    by_pos: HashMap<u32, Vec<usize>>,
    pairs: BinaryHeap<Pair>,
    pending: HashSet<(usize, usize)>,
    steps: usize,
    budget: usize,
    rank_one: bool,
}

impl GbBuilder {
    pub fn new(ord: ModuleOrder, nvars: usize, rank: usize) -> Self {
        GbBuilder {
            ord: Arc::new(ord),
            nvars,
            basis: Vec::new(),
            by_pos: HashMap::new(),
            pairs: BinaryHeap::new(),
            pending: HashSet::new(),
            steps: 0,
            budget: budget::current().gb_steps,
            rank_one: rank == 1,
        }
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.ord
    }

    fn find_reducer(&self, pos: u32, mono: &Monomial) -> Option<usize> {
        let idxs = self.by_pos.get(&pos)?;
        idxs.iter().copied().find(|&k| self.basis[k].terms[0].mono.divides(mono))
    }

    /// Full reduction modulo the current basis.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut rem: Vec<Term> = Vec::new();
        let mut p: Vec<Term> = v.terms.clone();
        let mut start = 0;
        while start < p.len() {
            let lt = &p[start];
            match self.find_reducer(lt.pos, &lt.mono) {
                Some(k) => {
                    let g = &self.basis[k];
                    let q = g.terms[0].mono.quotient_of(&lt.mono);
                    let c = &lt.coeff / &g.terms[0].coeff;
                    p = sub_scaled(&self.ord, &p[start..], &c, &q, &g.terms);
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        Vector { terms: rem }
    }

    fn insert(&mut self, mut h: Vector) {
        h.make_monic();
        let n = self.basis.len();
        let (hp, hm) = {
            let l = h.lead().unwrap();
            (l.pos, l.mono.clone())
        };
        if let Some(idxs) = self.by_pos.get(&hp) {
            for &k in idxs {
                let km = &self.basis[k].terms[0].mono;
                let pair = Pair { i: k, j: n, pos: hp, lcm: km.lcm(&hm), ord: self.ord.clone() };
                self.pending.insert((k, n));
                self.pairs.push(pair);
            }
        }
        self.by_pos.entry(hp).or_default().push(n);
        self.basis.push(h);
    }

    /// Adds a generator; returns false if it already reduced to zero.
    pub fn add(&mut self, v: Vector) -> bool {
        let r = self.reduce(&v);
        if r.is_zero() {
            return false;
        }
        self.insert(r);
        true
    }

    fn chain_criterion(&self, p: &Pair) -> bool {
        let Some(idxs) = self.by_pos.get(&p.pos) else { return false };
        idxs.iter().any(|&k| {
            k != p.i
                && k != p.j
                && self.basis[k].terms[0].mono.divides(&p.lcm)
                && !self.pending.contains(&(p.i.min(k), p.i.max(k)))
                && !self.pending.contains(&(p.j.min(k), p.j.max(k)))
        })
    }

    pub fn complete(&mut self) -> Result<()> {
        while let Some(pair) = self.pairs.pop() {
            self.pending.remove(&(pair.i, pair.j));
            let (fi, fj) = (&self.basis[pair.i], &self.basis[pair.j]);
            let (li, lj) = (&fi.terms[0], &fj.terms[0]);
            if self.rank_one && li.mono.is_coprime(&lj.mono) {
                continue;
            }
            if self.chain_criterion(&pair) {
                continue;
            }
            self.steps += 1;
            if self.steps > self.budget {
                return Err(Error::resource("Groebner basis S-pair reductions", self.budget));
            }
            let qi = li.mono.quotient_of(&pair.lcm);
            let qj = lj.mono.quotient_of(&pair.lcm);
            // both leads are monic
            let mut s: Vec<Term> = fi
                .terms
                .iter()
                .skip(1)
                .map(|t| Term { pos: t.pos, mono: t.mono.mul(&qi), coeff: t.coeff.clone() })
                .collect();
            s = sub_scaled(&self.ord, &s, &Rational::one(), &qj, &fj.terms[1..]);
            let r = self.reduce(&Vector { terms: s });
            if !r.is_zero() {
                self.insert(r);
            }
        }
        Ok(())
    }

    /// Interreduced, monic basis sorted by increasing leading term.
    pub fn into_reduced(self) -> Vec<Vector> {
        let ord = self.ord.clone();
        let n = self.basis.len();
        let mut keep = vec![true; n];
        for a in 0..n {
            let la = &self.basis[a].terms[0];
            for b in 0..n {
                if a == b || !keep[b] {
                    continue;
                }
                let lb = &self.basis[b].terms[0];
                if lb.pos == la.pos && lb.mono.divides(&la.mono) && (lb.mono != la.mono || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let minimal: Vec<Vector> =
            self.basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(v, _)| v).collect();
        let mut out = Vec::with_capacity(minimal.len());
        for (idx, v) in minimal.iter().enumerate() {
            let mut others = GbBuilder::new((*ord).clone(), self.nvars, 2);
            for (k, w) in minimal.iter().enumerate() {
                if k != idx {
                    let pos = w.terms[0].pos;
                    others.by_pos.entry(pos).or_default().push(others.basis.len());
                    others.basis.push(w.clone());
                }
            }
            let head = v.terms[0].clone();
            let tail = others.reduce(&Vector { terms: v.terms[1..].to_vec() });
            let mut terms = vec![head];
            terms.extend(tail.terms);
            let mut r = Vector { terms };
            r.make_monic();
            out.push(r);
        }
        out.sort_by(|a, b| {
            let (x, y) = (&a.terms[0], &b.terms[0]);
            ord.cmp(x.pos, &x.mono, y.pos, &y.mono)
        });
        out
    }
}

/// Reduced Groebner basis of the submodule of `S^rank` generated by `gens`.
pub(crate) fn module_gb(
    ord: &ModuleOrder,
    nvars: usize,
    rank: usize,
    gens: &[Vec<Polynomial>],
) -> Result<Vec<Vector>> {
    let mut b = GbBuilder::new(ord.clone(), nvars, rank);
    for g in gens {
        let v = Vector::from_components(g, ord);
        if !v.is_zero() {
            b.add(v);
        }
    }
    b.complete()?;
    Ok(b.into_reduced())
}

/// A finished module Groebner basis usable for normal forms.
pub(crate) struct ReducedModuleGb {
    inner: GbBuilder,
    rank: usize,
}

impl ReducedModuleGb {
    pub fn new(ord: &ModuleOrder, nvars: usize, rank: usize, gens: &[Vec<Polynomial>]) -> Result<Self> {
        let basis = module_gb(ord, nvars, rank, gens)?;
        let mut inner = GbBuilder::new(ord.clone(), nvars, rank);
        for v in basis {
            let pos = v.terms[0].pos;
            inner.by_pos.entry(pos).or_default().push(inner.basis.len());
            inner.basis.push(v);
        }
        Ok(ReducedModuleGb { inner, rank })
    }

    pub fn normal_form(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        let vec = Vector::from_components(v, self.inner.order());
        self.inner.reduce(&vec).to_components(self.rank, self.inner.nvars)
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        let vec = Vector::from_components(v, self.inner.order());
        self.inner.reduce(&vec).is_zero()
    }

    /// Whether every standard basis vector lies in the submodule.
    pub fn is_everything(&self) -> bool {
        (0..self.rank).all(|i| {
            self.inner
                .by_pos
                .get(&(i as u32))
                .is_some_and(|ks| ks.iter().any(|&k| self.inner.basis[k].terms[0].mono.is_one()))
        })
    }

    pub fn elements(&self) -> Vec<Vec<Polynomial>> {
        self.inner.basis.iter().map(|v| v.to_components(self.rank, self.inner.nvars)).collect()
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.inner.basis.iter().map(|v| (v.terms[0].pos as usize, v.terms[0].mono.clone())).collect()
    }
}

/// Generators of the syzygy module of the columns `gens` (each of length
/// `rank`), via a POT basis of `[A; I]` and projection onto the lower block.
pub(crate) fn syzygy_module(
    term: &TermOrder,
    nvars: usize,
    rank: usize,
    gens: &[Vec<Polynomial>],
) -> Result<Vec<Vec<Polynomial>>> {
    let m = gens.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let ord = ModuleOrder::pot(term.clone());
    let total = rank + m;
    let aug: Vec<Vec<Polynomial>> = gens
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mut col: Vec<Polynomial> = g.clone();
            col.extend((0..m).map(|k| if k == j { Polynomial::one(nvars) } else { Polynomial::zero(nvars) }));
            col
        })
        .collect();
    let basis = module_gb(&ord, nvars, total, &aug)?;
    let mut out = Vec::new();
    for v in basis {
        if (v.terms[0].pos as usize) >= rank {
            let comps = v.to_components(total, nvars);
            out.push(comps[rank..].to_vec());
        }
    }
    Ok(out)
}
