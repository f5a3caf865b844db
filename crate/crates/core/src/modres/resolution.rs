use std::sync::Arc;

use super::module::{eliminate_pivot, minimize_columns, pick_pivot, s_syzygies, j_columns};
use super::{syzygies, AffineRing, Matrix, ModulePresentation};
use crate::budget;
use crate::error::{Error, Result};
use crate::groebner::engine::{ModuleOrder, ReducedModuleGb};
use crate::invariants::PrimeIdeal;
use crate::qpoly::Polynomial;

/// Which entries count as units while splitting off trivial summands.
#[derive(Clone, Copy, Debug)]
pub enum Pruning<'a> {
    /// Nonzero constants: the result is a resolution over `R`.
    Global,
    /// Entries outside `p`: the result is a resolution after localizing at `p`.
    Local(&'a PrimeIdeal),
}

/// `... -> F_2 --d_2--> F_1 --d_1--> F_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Arc<AffineRing>,
    ranks: Vec<usize>,
    diffs: Vec<Matrix>,
    complete: bool,
}

impl FreeResolution {
    pub fn ring(&self) -> &Arc<AffineRing> {
        &self.ring
    }

    /// `rank F_0, rank F_1, ...` as far as computed.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `rank F_k`; zero past the end of a complete resolution.
    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// `d_k : F_k -> F_{k-1}` for `k ≥ 1`.
    pub fn differential(&self, k: usize) -> Option<&Matrix> {
        if k == 0 {
            return None;
        }
        self.diffs.get(k - 1)
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.diffs
    }

    /// Number of nonzero free modules past `F_0`.
    pub fn length(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    /// Whether the last computed differential is known to be injective.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `d_k ∘ d_{k+1} = 0` in `R`.
    pub fn is_complex(&self) -> bool {
        self.diffs.windows(2).all(|w| w[0].mul(&w[1]).map_entries(|e| self.ring.reduce(e)).is_zero())
    }

    /// Checks that every syzygy of `d_k` lies in the image of `d_{k+1}`
    /// (modulo `J`), and that the last map is injective when the
    /// resolution is complete.
    pub fn is_exact(&self) -> Result<bool> {
        let ord = ModuleOrder::top(self.ring.order().clone());
        for (k, d) in self.diffs.iter().enumerate() {
            let rows = d.ncols();
            let mut cols: Vec<Vec<Polynomial>> = d.columns().to_vec();
            cols.extend(j_columns(&self.ring, d.nrows()));
            let syz = s_syzygies(&self.ring, d.nrows(), &cols)?;
            let next: Vec<Vec<Polynomial>> = match self.diffs.get(k + 1) {
                Some(n) => n.columns().to_vec(),
                None if self.complete => Vec::new(),
                None => continue,
            };
            let mut span = next;
            span.extend(j_columns(&self.ring, rows));
            let gb = ReducedModuleGb::new(&ord, self.ring.nvars(), rows, &span)?;
            for s in syz {
                let v: Vec<Polynomial> = s[..rows].to_vec();
                if !gb.contains(&v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A free resolution of `M` with at most `max_len` differentials, pruned of
/// constant entries.
pub fn free_resolution(m: &ModulePresentation, max_len: usize) -> Result<FreeResolution> {
    resolve(m, max_len, Pruning::Global)
}

/// Default length cutoff: `nvars + dim R + 2`, unless overridden.
pub fn default_cutoff(ring: &AffineRing) -> Result<usize> {
    let b = budget::current().resolution_cutoff;
    if b > 0 {
        return Ok(b);
    }
    Ok(ring.nvars() + ring.dim()?.max(0) as usize + 2)
}

pub fn resolve(m: &ModulePresentation, max_len: usize, pruning: Pruning<'_>) -> Result<FreeResolution> {
    let ring = m.ring().clone();
    let max_rank = budget::current().max_rank;
    let pres = match pruning {
        Pruning::Global => m.pruned()?,
        Pruning::Local(p) => {
            let q = m.pruned_at(p);
            let cols = minimize_columns(&ring, q.num_gens(), q.relations().columns().to_vec())?;
            ModulePresentation::from_columns(ring.clone(), q.num_gens(), cols)
        }
    };
    let is_unit = |e: &Polynomial| match pruning {
        Pruning::Global => e.is_unit(),
        Pruning::Local(p) => !e.is_zero() && !p.contains(e),
    };
    let reduce = |e: &Polynomial| ring.reduce(e);
    let mut ranks = vec![pres.num_gens()];
    let mut diffs: Vec<Matrix> = Vec::new();
    if pres.num_gens() == 0 || pres.relations().ncols() == 0 {
        return Ok(FreeResolution { ring, ranks, diffs, complete: true });
    }
    if max_len == 0 {
        return Ok(FreeResolution { ring, ranks, diffs, complete: false });
    }
    ranks.push(pres.relations().ncols());
    diffs.push(pres.relations().clone());
    let mut complete = false;
    while diffs.len() < max_len {
        let last = diffs.last().unwrap();
        let syz = syzygies(&ring, last)?;
        let mut cols = syz.into_columns();
        let mut last_cols = last.columns().to_vec();
        while let Some((i, j)) = pick_pivot(&cols, &is_unit) {
            eliminate_pivot(&mut cols, i, j, &reduce);
            last_cols.remove(i);
            cols.retain(|c| c.iter().any(|e| !e.is_zero()));
        }
        let rows = last_cols.len();
        let last_rows = last.nrows();
        *diffs.last_mut().unwrap() = Matrix::from_columns(last_rows, ring.nvars(), last_cols);
        *ranks.last_mut().unwrap() = rows;
        if rows > max_rank {
            return Err(Error::resource("free module rank in a resolution", max_rank));
        }
        if cols.is_empty() {
            complete = true;
            break;
        }
        ranks.push(cols.len());
        diffs.push(Matrix::from_columns(rows, ring.nvars(), cols));
    }
    // a later pruning step may have emptied earlier modules
    while diffs.last().is_some_and(|d| d.ncols() == 0) {
        diffs.pop();
        ranks.pop();
        complete = true;
    }
    if let Some(&r) = ranks.last() {
        if r > max_rank {
            return Err(Error::resource("free module rank in a resolution", max_rank));
        }
    }
    Ok(FreeResolution { ring, ranks, diffs, complete })
}
