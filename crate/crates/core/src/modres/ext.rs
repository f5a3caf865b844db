use super::module::{minimize_modulo, s_syzygies};
use super::{free_resolution, AffineRing, FreeResolution, Matrix, ModulePresentation};
use crate::error::Result;
use crate::groebner::Ideal;
use crate::qpoly::Polynomial;

/// Cohomology of `Hom(F•, N)` at `Hom(F_i, N) ≅ N^b`, where `d_in = d_i`
/// and `d_out = d_{i+1}` (absent past either end).
pub fn hom_cohomology(
    ring: &std::sync::Arc<AffineRing>,
    b: usize,
    d_in: Option<&Matrix>,
    d_out: Option<&Matrix>,
    n: &ModulePresentation,
) -> Result<ModulePresentation> {
    let nv = ring.nvars();
    let g = n.num_gens();
    if b == 0 || g == 0 {
        return Ok(ModulePresentation::free(ring.clone(), 0));
    }
    let phi = n.s_columns();
    let dim = b * g;
    let zero = || Polynomial::zero(nv);
    let blocks = |count: usize| -> Vec<Vec<Polynomial>> {
        let mut out = Vec::new();
        for k in 0..count {
            for c in &phi {
                let mut v = vec![zero(); count * g];
                v[k * g..(k + 1) * g].clone_from_slice(c);
                out.push(v);
            }
        }
        out
    };

    // cocycles
    let cycles: Vec<Vec<Polynomial>> = match d_out {
        None => (0..dim).map(|t| (0..dim).map(|s| if s == t { Polynomial::one(nv) } else { zero() }).collect()).collect(),
        Some(d) => {
            let c = d.ncols();
            let mut cols = Vec::with_capacity(dim);
            for l in 0..b {
                for a in 0..g {
                    let mut v = vec![zero(); c * g];
                    for k in 0..c {
                        v[k * g + a] = d.entry(l, k).clone();
                    }
                    cols.push(v);
                }
            }
            cols.extend(blocks(c));
            s_syzygies(ring, c * g, &cols)?.into_iter().map(|s| s[..dim].to_vec()).collect()
        }
    };

    // coboundaries, together with the relations of N^b
    let mut bounds = blocks(b);
    if let Some(d) = d_in {
        for m in 0..d.nrows() {
            for a in 0..g {
                let mut v = vec![zero(); dim];
                for l in 0..b {
                    v[l * g + a] = d.entry(m, l).clone();
                }
                bounds.push(v);
            }
        }
    }

    let gens = minimize_modulo(ring, dim, &bounds, cycles)?;
    let q = gens.len();
    if q == 0 {
        return Ok(ModulePresentation::free(ring.clone(), 0));
    }
    let mut cols = gens;
    cols.extend(bounds);
    let rels: Vec<Vec<Polynomial>> = s_syzygies(ring, dim, &cols)?.into_iter().map(|s| s[..q].to_vec()).collect();
    ModulePresentation::from_columns(ring.clone(), q, rels).pruned()
}

/// `Ext^i_R(M, N)` from a resolution of `M`.
pub fn ext_from_resolution(res: &FreeResolution, i: usize, n: &ModulePresentation) -> Result<ModulePresentation> {
    hom_cohomology(res.ring(), res.rank(i), res.differential(i), res.differential(i + 1), n)
}

/// `Ext^i_R(M, N)`.
pub fn ext_module(m: &ModulePresentation, n: &ModulePresentation, i: usize) -> Result<ModulePresentation> {
    let res = free_resolution(m, i + 1)?;
    ext_from_resolution(&res, i, n)
}

/// `Ann_S Ext^j_S(M, S)` for `j = 0..=nvars`, with `M` regarded over `S`.
pub fn ext_annihilators_over_ambient(m: &ModulePresentation) -> Result<Vec<Ideal>> {
    let ms = m.over_ambient();
    let s = ms.ring().clone();
    let n = s.nvars();
    let res = free_resolution(&ms, n + 1)?;
    let target = ModulePresentation::free(s, 1);
    (0..=n).map(|j| ext_from_resolution(&res, j, &target)?.annihilator()).collect()
}
