use std::sync::Arc;

use super::{AffineRing, Matrix};
use crate::error::{Error, Result};
use crate::groebner::engine::{syzygy_module, GbBuilder, ModuleOrder, ReducedModuleGb, Vector};
use crate::groebner::{canonical, intersect_all, Ideal};
use crate::invariants::PrimeIdeal;
use crate::qpoly::Polynomial;

/// `coker(R^m --rels--> R^gens)` over `R = S/J`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: Arc<AffineRing>,
    gens: usize,
    rels: Matrix,
}

impl PartialEq for ModulePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens && self.rels == other.rels
    }
}

impl ModulePresentation {
    /// Entries are reduced modulo `J`; zero columns are dropped.
    pub fn new(ring: Arc<AffineRing>, gens: usize, rels: Matrix) -> Self {
        assert_eq!(rels.nrows(), gens, "relation matrix has wrong number of rows");
        let rels = rels.map_entries(|e| ring.reduce(e)).without_zero_columns();
        ModulePresentation { ring, gens, rels }
    }

    pub fn from_columns(ring: Arc<AffineRing>, gens: usize, cols: Vec<Vec<Polynomial>>) -> Self {
        let n = ring.nvars();
        Self::new(ring, gens, Matrix::from_columns(gens, n, cols))
    }

    pub fn free(ring: Arc<AffineRing>, rank: usize) -> Self {
        let n = ring.nvars();
        Self::new(ring, rank, Matrix::zero(rank, 0, n))
    }

    /// `R/I`.
    pub fn cyclic(ring: Arc<AffineRing>, ideal: &Ideal) -> Self {
        let cols = ideal.gens().iter().map(|g| vec![g.clone()]).collect();
        Self::from_columns(ring, 1, cols)
    }

    pub fn ring(&self) -> &Arc<AffineRing> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn num_gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &Matrix {
        &self.rels
    }

    pub fn direct_sum(&self, other: &ModulePresentation) -> ModulePresentation {
        let n = self.nvars();
        let g = self.gens + other.gens;
        let mut cols = Vec::new();
        for c in self.rels.columns() {
            let mut v = c.to_vec();
            v.resize(g, Polynomial::zero(n));
            cols.push(v);
        }
        for c in other.rels.columns() {
            let mut v = vec![Polynomial::zero(n); self.gens];
            v.extend(c.iter().cloned());
            cols.push(v);
        }
        Self::from_columns(self.ring.clone(), g, cols)
    }

    /// Relations over `S`: the columns of the matrix together with `g·e_i`
    /// for every generator `g` of `J`.
    pub fn s_columns(&self) -> Vec<Vec<Polynomial>> {
        let mut cols: Vec<Vec<Polynomial>> = self.rels.columns().to_vec();
        cols.extend(j_columns(&self.ring, self.gens));
        cols
    }

    /// The same module regarded over `S`.
    pub fn over_ambient(&self) -> ModulePresentation {
        Self::from_columns(self.ring.ambient(), self.gens, self.s_columns())
    }

    pub fn is_zero(&self) -> Result<bool> {
        if self.gens == 0 {
            return Ok(true);
        }
        let gb = ReducedModuleGb::new(
            &ModuleOrder::top(self.ring.order().clone()),
            self.nvars(),
            self.gens,
            &self.s_columns(),
        )?;
        Ok(gb.is_everything())
    }

    /// `M/IM` as a module over `R/I`.
    pub fn quotient_module(&self, ideal: &Ideal) -> Result<ModulePresentation> {
        let ring = self.ring.quotient(ideal)?;
        let mut cols = self.rels.columns().to_vec();
        for g in ideal.gens() {
            for i in 0..self.gens {
                cols.push(unit_vector(self.gens, i, g, self.nvars()));
            }
        }
        Ok(Self::from_columns(ring, self.gens, cols))
    }

    /// `M_f` over `R_f = R[t]/(t·f - 1)`.
    pub fn localized_at(&self, f: &Polynomial) -> Result<ModulePresentation> {
        let ring = self.ring.invert(f)?;
        let cols = self.rels.columns().iter().map(|c| c.iter().map(|e| e.insert_vars(0, 1)).collect()).collect();
        Ok(Self::from_columns(ring, self.gens, cols))
    }

    /// Removes relations with a constant entry together with the generator
    /// they eliminate, then drops redundant relations.
    pub fn pruned(&self) -> Result<ModulePresentation> {
        let ring = self.ring.clone();
        let mut cols = self.rels.columns().to_vec();
        let (gens, cols) = prune_presentation(self.gens, &mut cols, &|e| e.is_unit(), &|e| ring.reduce(e));
        let cols = minimize_columns(&ring, gens, cols)?;
        Ok(Self::from_columns(ring, gens, cols))
    }

    /// Prunes relations with an entry outside `p`; the result agrees with
    /// `M` after localizing at `p`.
    pub fn pruned_at(&self, p: &PrimeIdeal) -> ModulePresentation {
        let ring = self.ring.clone();
        let mut cols = self.rels.columns().to_vec();
        let (gens, cols) = prune_presentation(self.gens, &mut cols, &|e| !p.contains(e), &|e| ring.reduce(e));
        Self::from_columns(ring, gens, cols)
    }

    /// `Ann_S(M)`, an ideal of `S` containing `J`.
    pub fn annihilator(&self) -> Result<Ideal> {
        let n = self.nvars();
        let pres = self.pruned()?;
        if pres.gens == 0 {
            return Ok(Ideal::unit(n));
        }
        let rels = pres.s_columns();
        let mut parts = Vec::with_capacity(pres.gens);
        for i in 0..pres.gens {
            let mut cols = vec![unit_vector(pres.gens, i, &Polynomial::one(n), n)];
            cols.extend(rels.iter().cloned());
            let syz = syzygy_module(self.ring.order(), n, pres.gens, &cols)?;
            parts.push(canonical(&Ideal::new(n, syz.into_iter().map(|s| s[0].clone())))?);
        }
        canonical(&intersect_all(&parts, n)?)
    }

    /// `Fitt_r(M)` as an ideal of `S` containing `J`.
    pub fn fitting_ideal(&self, r: usize) -> Result<Ideal> {
        let n = self.nvars();
        let pres = self.pruned()?;
        if r >= pres.gens {
            return Ok(Ideal::unit(n));
        }
        let k = pres.gens - r;
        let mut gens: Vec<Polynomial> = self.ring.relations().gens().to_vec();
        gens.extend(minors(&pres.rels, k)?.into_iter().map(|m| self.ring.reduce(&m)));
        canonical(&Ideal::new(n, gens))
    }

    /// `μ(M_p)`, the minimal number of generators after localizing at `p`.
    pub fn local_num_gens(&self, p: &PrimeIdeal) -> usize {
        self.gens - rank_mod_prime(self.rels.columns(), self.gens, p)
    }

    /// `Ω^k M`: the image of `d_k` in a free resolution, for `k ≥ 1`;
    /// `M` itself for `k = 0`.
    pub fn syzygy(&self, k: usize) -> Result<ModulePresentation> {
        if k == 0 {
            return Ok(self.clone());
        }
        let res = super::free_resolution(self, k + 1)?;
        let rank = res.rank(k);
        let rels = match res.differential(k + 1) {
            Some(d) => d.clone(),
            None => Matrix::zero(rank, 0, self.nvars()),
        };
        Ok(Self::new(self.ring.clone(), rank, rels))
    }

    pub fn fmt_relations(&self) -> String {
        self.rels.fmt_with(self.ring.names())
    }
}

pub(crate) fn unit_vector(len: usize, i: usize, g: &Polynomial, nvars: usize) -> Vec<Polynomial> {
    (0..len).map(|k| if k == i { g.clone() } else { Polynomial::zero(nvars) }).collect()
}

pub(crate) fn j_columns(ring: &AffineRing, rows: usize) -> Vec<Vec<Polynomial>> {
    let mut cols = Vec::new();
    for g in ring.relations().gens() {
        for i in 0..rows {
            cols.push(unit_vector(rows, i, g, ring.nvars()));
        }
    }
    cols
}

/// Syzygies over `S` of the given columns.
pub(crate) fn s_syzygies(
    ring: &AffineRing,
    rows: usize,
    cols: &[Vec<Polynomial>],
) -> Result<Vec<Vec<Polynomial>>> {
    syzygy_module(ring.order(), ring.nvars(), rows, cols)
}

/// Generators of `ker(R^m --a--> R^r)`, reduced modulo `J` and minimized.
pub fn syzygies(ring: &AffineRing, a: &Matrix) -> Result<Matrix> {
    let m = a.ncols();
    let n = ring.nvars();
    if m == 0 {
        return Ok(Matrix::zero(0, 0, n));
    }
    let mut cols = a.columns().to_vec();
    cols.extend(j_columns(ring, a.nrows()));
    let syz = s_syzygies(ring, a.nrows(), &cols)?;
    let projected: Vec<Vec<Polynomial>> = syz
        .into_iter()
        .map(|s| s[..m].iter().map(|e| ring.reduce(e)).collect::<Vec<_>>())
        .filter(|c| c.iter().any(|e| !e.is_zero()))
        .collect();
    let kept = minimize_columns(ring, m, projected)?;
    Ok(Matrix::from_columns(m, n, kept))
}

fn col_key(c: &[Polynomial]) -> (i64, usize) {
    let deg = c.iter().filter(|e| !e.is_zero()).map(|e| e.total_degree()).max().unwrap_or(0);
    (deg, c.iter().map(|e| e.len()).sum())
}

/// Greedily drops columns lying in the span of the previous ones plus
/// `J·R^rows`, taking columns in order of increasing degree.
pub(crate) fn minimize_columns(
    ring: &AffineRing,
    rows: usize,
    cols: Vec<Vec<Polynomial>>,
) -> Result<Vec<Vec<Polynomial>>> {
    minimize_modulo(ring, rows, &j_columns(ring, rows), cols)
}

/// Columns of `cols` needed to generate `span(base, cols)` over `S`.
pub(crate) fn minimize_modulo(
    ring: &AffineRing,
    rows: usize,
    base: &[Vec<Polynomial>],
    mut cols: Vec<Vec<Polynomial>>,
) -> Result<Vec<Vec<Polynomial>>> {
    cols.retain(|c| c.iter().any(|e| !e.is_zero()));
    if rows == 0 || (cols.len() <= 1 && base.is_empty()) {
        return Ok(cols);
    }
    cols.sort_by_key(|c| col_key(c));
    let ord = ModuleOrder::top(ring.order().clone());
    let mut b = GbBuilder::new(ord.clone(), ring.nvars(), rows);
    for c in base {
        b.add(Vector::from_components(c, &ord));
    }
    b.complete()?;
    let mut kept = Vec::new();
    for c in cols {
        let v = Vector::from_components(&c, &ord);
        if b.add(v) {
            b.complete()?;
            kept.push(c);
        }
    }
    Ok(kept)
}

pub(crate) fn pick_pivot(cols: &[Vec<Polynomial>], is_unit: &dyn Fn(&Polynomial) -> bool) -> Option<(usize, usize)> {
    let mut best: Option<((u8, i64, usize), usize, usize)> = None;
    for (j, c) in cols.iter().enumerate() {
        for (i, e) in c.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let key = (if e.is_constant() { 0 } else { 1 }, e.total_degree(), e.len());
            if best.as_ref().is_some_and(|b| b.0 <= key) {
                continue;
            }
            if is_unit(e) {
                best = Some((key, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// One elimination step on a presentation: the pivot `(i, j)` is a unit, so
/// generator `i` and relation `j` split off. Fraction-free for non-constant
/// pivots.
pub(crate) fn eliminate_pivot(
    cols: &mut Vec<Vec<Polynomial>>,
    i: usize,
    j: usize,
    reduce: &dyn Fn(&Polynomial) -> Polynomial,
) {
    let pivot_col = cols.remove(j);
    let u = pivot_col[i].clone();
    let constant = u.constant_value();
    for c in cols.iter_mut() {
        let a = c[i].clone();
        if !a.is_zero() {
            match &constant {
                Some(cu) => {
                    let q = a.scale(&cu.recip());
                    for (e, p) in c.iter_mut().zip(&pivot_col) {
                        *e = reduce(&e.sub(&p.mul(&q)));
                    }
                }
                None => {
                    for (e, p) in c.iter_mut().zip(&pivot_col) {
                        *e = reduce(&u.mul(e).sub(&a.mul(p)));
                    }
                }
            }
        }
        c.remove(i);
    }
}

/// Repeatedly splits off unit entries. Returns the new number of generators
/// and the remaining nonzero relations.
fn prune_presentation(
    mut gens: usize,
    cols: &mut Vec<Vec<Polynomial>>,
    is_unit: &dyn Fn(&Polynomial) -> bool,
    reduce: &dyn Fn(&Polynomial) -> Polynomial,
) -> (usize, Vec<Vec<Polynomial>>) {
    let mut cols = std::mem::take(cols);
    while let Some((i, j)) = pick_pivot(&cols, is_unit) {
        eliminate_pivot(&mut cols, i, j, reduce);
        gens -= 1;
        cols.retain(|c| c.iter().any(|e| !e.is_zero()));
    }
    (gens, cols)
}

/// Rank over the fraction field of `S/p` of the matrix whose columns are
/// given, by fraction-free elimination with normal forms modulo `p`.
pub fn rank_mod_prime(cols: &[Vec<Polynomial>], rows: usize, p: &PrimeIdeal) -> usize {
    let mut m: Vec<Vec<Polynomial>> =
        cols.iter().map(|c| c.iter().map(|e| p.reduce(e)).collect()).filter(|c: &Vec<Polynomial>| c.iter().any(|e| !e.is_zero())).collect();
    let mut rank = 0;
    let mut live_rows: Vec<usize> = (0..rows).collect();
    while !m.is_empty() && !live_rows.is_empty() {
        let mut best: Option<((u8, i64, usize), usize, usize)> = None;
        for (j, c) in m.iter().enumerate() {
            for &i in &live_rows {
                let e = &c[i];
                if e.is_zero() {
                    continue;
                }
                let key = (if e.is_constant() { 0 } else { 1 }, e.total_degree(), e.len());
                if best.as_ref().is_none_or(|b| key < b.0) {
                    best = Some((key, i, j));
                }
            }
        }
        let Some((_, i, j)) = best else { break };
        let pc = m.swap_remove(j);
        let u = pc[i].clone();
        for c in m.iter_mut() {
            let a = c[i].clone();
            if a.is_zero() {
                continue;
            }
            for &r in &live_rows {
                c[r] = p.reduce(&u.mul(&c[r]).sub(&a.mul(&pc[r])));
            }
        }
        live_rows.retain(|&r| r != i);
        m.retain(|c| live_rows.iter().any(|&r| !c[r].is_zero()));
        rank += 1;
    }
    rank
}

/// All `k×k` minors of `a`.
pub fn minors(a: &Matrix, k: usize) -> Result<Vec<Polynomial>> {
    let (r, c) = (a.nrows(), a.ncols());
    if k == 0 {
        return Ok(vec![Polynomial::one(a.nvars())]);
    }
    if k > r || k > c {
        return Ok(Vec::new());
    }
    let count = binomial(r, k).saturating_mul(binomial(c, k));
    if count > 200_000 || k > 12 {
        return Err(Error::resource("minors", 200_000));
    }
    let mut out = Vec::new();
    for rs in subsets(r, k) {
        for cs in subsets(c, k) {
            let d = det(a, &rs, &cs);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(out)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Determinant of a submatrix by expansion along rows, memoized over column
/// subsets.
fn det(a: &Matrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    let k = rows.len();
    let nv = a.nvars();
    let mut memo: std::collections::HashMap<u32, Polynomial> = std::collections::HashMap::new();
    memo.insert(0, Polynomial::one(nv));
    // d[mask] = det of rows[k - |mask| ..] against the columns in mask
    for size in 1..=k {
        let row = rows[k - size];
        for mask in 0u32..(1 << k) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let mut acc = Polynomial::zero(nv);
            let mut sign_pos = true;
            for b in 0..k {
                if mask & (1 << b) == 0 {
                    continue;
                }
                let e = a.entry(row, cols[b]);
                if !e.is_zero() {
                    let sub = &memo[&(mask & !(1 << b))];
                    if !sub.is_zero() {
                        let t = e.mul(sub);
                        acc = if sign_pos { acc.add(&t) } else { acc.sub(&t) };
                    }
                }
                sign_pos = !sign_pos;
            }
            memo.insert(mask, acc);
        }
    }
    memo.remove(&((1u32 << k) - 1)).unwrap()
}
