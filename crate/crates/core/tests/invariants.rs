//! Structural invariants swept over every module and prime of the shipped
//! fixtures.

mod common;

use locikit::fixture::Fixture;
use locikit::groebner::{ideal_contained, ideal_equal};
use locikit::invariants::{height_in_s, is_regular_sequence, ModuleAnalysis, PrimeIdeal};
use locikit::loci::{compute_locus, pointwise, LocusKind, SpecSubset};
use locikit::modres::{ext_module, free_resolution, syzygies, Matrix, ModulePresentation};
use locikit::qpoly::Polynomial;
use locikit::verify::{check_topological_nagata, SamplePoset};

use common::all_fixtures;

fn each_module(mut f: impl FnMut(&Fixture, &str, &ModuleAnalysis)) {
    for fx in all_fixtures() {
        for spec in &fx.modules {
            let a = ModuleAnalysis::new(fx.module(&spec.name).unwrap()).with_catalog(fx.sample_primes().to_vec());
            f(&fx, &spec.name, &a);
        }
    }
}

#[test]
fn resolutions_are_exact_complexes() {
    each_module(|fx, name, a| {
        let res = free_resolution(a.module(), 4).unwrap();
        assert!(res.is_complex(), "{}/{name}: d∘d ≠ 0", fx.name);
        assert!(res.is_exact().unwrap(), "{}/{name}: not exact", fx.name);
    });
}

/// `Hom_R(M, R)` as the kernel of the transposed presentation matrix.
fn hom_to_ring(m: &ModulePresentation) -> ModulePresentation {
    let r = m.ring().clone();
    let rels = m.relations().clone().without_zero_columns();
    if rels.ncols() == 0 {
        return ModulePresentation::free(r, m.num_gens());
    }
    let k = syzygies(&r, &rels.transpose()).unwrap();
    let pres = syzygies(&r, &k).unwrap();
    ModulePresentation::new(r, k.ncols(), pres)
}

#[test]
fn ext_zero_is_hom() {
    each_module(|fx, name, a| {
        let r = a.ring().clone();
        let ext = ext_module(a.module(), &ModulePresentation::free(r.clone(), 1), 0).unwrap().pruned().unwrap();
        let hom = hom_to_ring(a.module()).pruned().unwrap();
        assert_eq!(ext.num_gens(), hom.num_gens(), "{}/{name}", fx.name);
        assert!(ideal_equal(&ext.annihilator().unwrap(), &hom.annihilator().unwrap()).unwrap(), "{}/{name}", fx.name);
    });
}

#[test]
fn annihilator_kills_ext() {
    each_module(|fx, name, a| {
        let r = a.ring().clone();
        let ann = a.module().annihilator().unwrap();
        for i in 0..=3 {
            let e = ext_module(a.module(), &ModulePresentation::free(r.clone(), 1), i).unwrap();
            assert!(ideal_contained(&ann, &e.annihilator().unwrap()).unwrap(), "{}/{name} Ext^{i}", fx.name);
        }
    });
}

#[test]
fn fitting_ideals_do_not_depend_on_presentation() {
    let fx = common::load("regular_plane");
    let (m1, m2) = (fx.module("Mx").unwrap(), fx.module("Mx2").unwrap());
    for r in 0..=2 {
        assert!(ideal_equal(&m1.fitting_ideal(r).unwrap(), &m2.fitting_ideal(r).unwrap()).unwrap(), "Fitt_{r}");
    }
    // a redundant generator with a trivial relation
    let r = fx.ring().clone();
    let n = r.nvars();
    let mut cols = m1.relations().columns().to_vec();
    for c in &mut cols {
        c.push(Polynomial::zero(n));
    }
    cols.push(vec![Polynomial::zero(n), Polynomial::one(n)]);
    let m3 = ModulePresentation::new(r.clone(), 2, Matrix::from_columns(2, n, cols));
    for k in 0..=2 {
        assert!(ideal_equal(&m1.fitting_ideal(k).unwrap(), &m3.fitting_ideal(k).unwrap()).unwrap());
    }
}

/// Candidate elements of `p`: its generators and their pairwise sums.
fn candidates(p: &PrimeIdeal) -> Vec<Polynomial> {
    let g = p.ideal().gens();
    let mut out: Vec<Polynomial> = g.to_vec();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            out.push(g[i].add(&g[j]));
        }
    }
    out
}

/// Extends a regular sequence greedily from the candidates.
fn greedy_sequence(m: &ModulePresentation, p: &PrimeIdeal) -> Vec<Polynomial> {
    let cands = candidates(p);
    let mut seq: Vec<Polynomial> = Vec::new();
    loop {
        let next = cands.iter().find(|c| {
            let mut s = seq.clone();
            s.push((*c).clone());
            is_regular_sequence(&s, m, Some(p)).unwrap()
        });
        match next {
            Some(c) => seq.push(c.clone()),
            None => return seq,
        }
    }
}

#[test]
fn auslander_buchsbaum_and_depth_bounds() {
    each_module(|fx, name, a| {
        for p in fx.sample_primes() {
            let at = format!("{}/{name} at {}", fx.name, p.name().unwrap());
            let (Some(depth), Some(pd)) = (a.local_depth(p).unwrap(), a.local_pd(p).unwrap()) else {
                continue;
            };
            assert_eq!(depth + pd, height_in_s(p).unwrap(), "{at}");
            let dim = a.local_dim(p).unwrap().unwrap();
            assert!(depth <= dim, "{at}: depth {depth} > dim {dim}");
            let seq = greedy_sequence(a.module(), p);
            assert_eq!(seq.len() as i64, depth, "{at}: maximal regular sequence {seq:?}");
        }
    });
}

#[test]
fn bass_numbers_start_at_depth() {
    each_module(|fx, name, a| {
        for p in fx.sample_primes() {
            let Some(depth) = a.local_depth(p).unwrap() else { continue };
            let mu = a.bass_numbers(p, depth as usize).unwrap();
            let at = format!("{}/{name} at {}", fx.name, p.name().unwrap());
            assert!(mu[..depth as usize].iter().all(|&b| b == 0), "{at}: {mu:?}");
            assert!(mu[depth as usize] > 0, "{at}: {mu:?}");
        }
    });
}

#[test]
fn loci_conventions() {
    each_module(|fx, name, a| {
        let poset = SamplePoset::new(fx.sample_primes().to_vec(), &[]).unwrap();
        let j = fx.ring().relations();
        for kind in LocusKind::all(2).into_iter().chain([LocusKind::Sn(1), LocusKind::Tn(1), LocusKind::Sn(3)]) {
            let rep = compute_locus(a, kind).unwrap();
            let at = format!("{}/{name} {kind}", fx.name);
            let complement = rep.subset.complement();
            for p in fx.sample_primes() {
                let inside = rep.member(p).unwrap();
                if let Some(c) = &complement {
                    assert!(inside ^ c.member(p).unwrap(), "{at}: complement overlaps at {:?}", p.name());
                }
                if kind.contains_zero_module() && a.is_zero_at(p).unwrap() {
                    assert!(inside, "{at}: M_p = 0 outside the locus at {:?}", p.name());
                }
            }
            let mask = poset.subset_where(|p| rep.member(p) == Some(true));
            assert!(check_topological_nagata(&poset, mask).passed(), "{at}");
            if kind == LocusKind::Supp {
                assert!(poset.is_up_closed(mask), "{at}: support is not closed");
            } else {
                assert!(poset.is_open(mask), "{at}: not open on the sample");
                assert!(matches!(rep.subset, SpecSubset::Open(_)), "{at}: no single complement ideal");
                assert!(rep.subset.is_everything(j).unwrap().is_some());
            }
        }
    });
}

#[test]
fn gor_is_fid_and_mcm_pointwise() {
    each_module(|fx, name, a| {
        for p in fx.sample_primes() {
            let v = |k| pointwise(a, k, p).unwrap().as_bool();
            let (g, f, m) = (v(LocusKind::Gor), v(LocusKind::Fid), v(LocusKind::Mcm));
            if let (Some(g), Some(f), Some(m)) = (g, f, m) {
                assert_eq!(g, f && m, "{}/{name} at {:?}", fx.name, p.name());
            }
        }
    });
}
