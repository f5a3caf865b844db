use std::sync::Arc;

use super::*;
use crate::error::Error;
use crate::invariants::{ModuleAnalysis, PrimeIdeal};
use crate::loci::LocusKind;
use crate::modres::{AffineRing, ModulePresentation};

fn cyclic(r: &Arc<AffineRing>, gens: &[&str]) -> ModulePresentation {
    ModulePresentation::cyclic(r.clone(), &r.parse_ideal(gens).unwrap())
}

fn prime(r: &AffineRing, name: &str, gens: &[&str]) -> PrimeIdeal {
    PrimeIdeal::declared(&r.parse_ideal(gens).unwrap()).unwrap().with_name(name)
}

fn hyper() -> Arc<AffineRing> {
    AffineRing::parse(&["x", "y"], &["x*y"]).unwrap()
}

fn hyper_primes(r: &AffineRing) -> Vec<PrimeIdeal> {
    vec![
        prime(r, "px", &["x"]),
        prime(r, "py", &["y"]),
        prime(r, "m", &["x", "y"]),
        prime(r, "q1", &["x", "y - 1"]),
        prime(r, "q2", &["y", "x - 1"]),
    ]
}

fn two_planes() -> Arc<AffineRing> {
    AffineRing::parse(&["x", "y", "u", "v"], &["x*u", "x*v", "y*u", "y*v"]).unwrap()
}

fn two_planes_primes(r: &AffineRing) -> Vec<PrimeIdeal> {
    vec![
        prime(r, "p1", &["x", "y"]),
        prime(r, "p2", &["u", "v"]),
        prime(r, "q1", &["x", "y", "u"]),
        prime(r, "q2", &["x", "u", "v"]),
        prime(r, "m", &["x", "y", "u", "v"]),
    ]
}

fn analysis(m: ModulePresentation, primes: &[PrimeIdeal]) -> ModuleAnalysis {
    ModuleAnalysis::new(m).with_catalog(primes.to_vec())
}

fn chain() -> SamplePoset {
    let s = AffineRing::polynomial(&["x", "y"]);
    SamplePoset::new(vec![prime(&s, "q", &["x"]), prime(&s, "p", &["x", "y"])], &[(0, 1)]).unwrap()
}

#[test]
fn poset_order_from_generators() {
    let s = AffineRing::polynomial(&["x", "y"]);
    let ps = vec![prime(&s, "a", &["x"]), prime(&s, "b", &["y"]), prime(&s, "m", &["x", "y"])];
    let poset = SamplePoset::new(ps.clone(), &[(0, 2), (1, 2)]).unwrap();
    assert_eq!(poset.up(0), 0b101);
    assert_eq!(poset.down(2), 0b111);
    assert!(poset.is_open(0b011));
    assert!(!poset.is_open(0b100));
    assert!(matches!(SamplePoset::new(ps, &[(0, 1)]), Err(Error::Validation(_))));
}

#[test]
fn nagata_examples() {
    let poset = chain();
    let whole = check_topological_nagata(&poset, poset.full());
    assert!(whole.passed());
    assert_eq!(whole.witness["open"], true);
    assert_eq!(whole.witness["criterion"], true);

    let only_p = check_topological_nagata(&poset, 0b10);
    assert!(only_p.passed());
    assert_eq!(only_p.witness["open"], false);
    assert_eq!(only_p.witness["criterion"], false);

    // with closures as up-sets the generic point alone is open
    let only_q = check_topological_nagata(&poset, 0b01);
    assert!(only_q.passed());
    assert_eq!(only_q.witness["open"], only_q.witness["criterion"]);

    assert!(nagata_exhaustive(&poset).passed());
}

#[test]
fn nagata_exhaustive_on_fixture_posets() {
    let r = two_planes();
    let poset = SamplePoset::new(two_planes_primes(&r), &[]).unwrap();
    let res = nagata_exhaustive(&poset);
    assert!(res.passed());
    assert_eq!(res.witness["subsets"], 32);
}

#[test]
fn gor_fid_mcm_examples() {
    let r = hyper();
    let ps = hyper_primes(&r);
    assert!(verify_gor_fid_mcm(&analysis(cyclic(&r, &["x"]), &ps), &ps).unwrap().passed());
    assert!(verify_gor_fid_mcm(&analysis(cyclic(&r, &["1"]), &ps), &ps).unwrap().passed());
    let g = r.declare_gorenstein();
    let ps = hyper_primes(&g);
    assert!(verify_gor_fid_mcm(&analysis(ModulePresentation::free(g.clone(), 1), &ps), &ps).unwrap().passed());
}

#[test]
fn filtration_examples() {
    let s = AffineRing::polynomial(&["x", "y"]);
    let i = s.parse_ideal(&["x"]).unwrap();
    let ps = vec![prime(&s, "px", &["x"]), prime(&s, "m", &["x", "y"])];
    let seqs = vec![vec![s.parse_poly("y").unwrap()], vec![s.parse_poly("x").unwrap()]];

    let free = cyclic(&s, &["x"]).direct_sum(&cyclic(&s, &["x"]));
    let res = verify_filtration_depth(&free, &i, &ps, &seqs).unwrap();
    assert!(res.passed(), "{}", res.witness);

    let thick = cyclic(&s, &["x^2"]);
    let res = verify_filtration_depth(&thick, &i, &ps, &seqs).unwrap();
    assert!(res.passed(), "{}", res.witness);

    let r = verify_filtration_depth(&ModulePresentation::free(s.clone(), 1), &i, &ps, &seqs);
    assert!(matches!(r, Err(Error::HypothesisNotCertified(_))));
}

#[test]
fn nc_star_examples() {
    let r = hyper();
    let ps = hyper_primes(&r);
    let a = analysis(cyclic(&r, &["x"]), &ps);
    let res = verify_nc_star(&a, LocusKind::Fid, &ps).unwrap();
    assert!(res.passed(), "{}", res.witness);
    let c = r.parse_ideal(&["x", "y"]).unwrap();
    let got: Vec<_> =
        res.witness["complement"].as_array().unwrap().iter().map(|v| r.parse_poly(v.as_str().unwrap()).unwrap()).collect();
    let got = crate::groebner::Ideal::new(2, got);
    assert!(crate::groebner::radical_contained(&got.sum(r.relations()), &c).unwrap());
    assert!(crate::groebner::radical_contained(&c, &got.sum(r.relations())).unwrap());

    let zero = analysis(cyclic(&r, &["1"]), &ps);
    for k in LocusKind::all(2).into_iter().filter(|k| *k != LocusKind::Supp && *k != LocusKind::Free) {
        assert!(verify_nc_star(&zero, k, &ps).unwrap().passed());
    }

    let t = two_planes();
    let tps = two_planes_primes(&t);
    let res = verify_nc_star(&analysis(ModulePresentation::free(t.clone(), 1), &tps), LocusKind::Cm, &tps).unwrap();
    assert!(res.passed(), "{}", res.witness);
    assert_eq!(res.witness["open_witnesses"].as_array().unwrap().len(), 5);
}

#[test]
fn mcm_implies_sn_examples() {
    let t = two_planes();
    let tps = two_planes_primes(&t);
    let a = analysis(ModulePresentation::free(t.clone(), 1), &tps);
    assert!(verify_mcm_implies_sn_open(&a, 2, &tps).unwrap().passed());
    assert!(verify_mcm_implies_sn_open(&a, 0, &tps).unwrap().passed());

    let r = hyper();
    let ps = hyper_primes(&r);
    let k = analysis(cyclic(&r, &["x", "y"]), &ps);
    assert!(verify_mcm_implies_sn_open(&k, 1, &ps).unwrap().passed());
}

#[test]
fn gor_equivalence_examples() {
    let r = hyper();
    let ps = hyper_primes(&r);
    let a = analysis(cyclic(&r, &["x"]), &ps);
    let res = verify_theorem_gor_equivalence(&a, &ps[0], &ps).unwrap();
    assert!(res.passed());
    assert_eq!(res.witness["fid_contains_open_of_v_p"], true);
    assert_eq!(res.witness["gor_of_r_mod_p_contains_open"], true);

    let g = r.declare_gorenstein();
    let gps = hyper_primes(&g);
    let ga = analysis(ModulePresentation::free(g.clone(), 1), &gps);
    for p in &gps {
        assert!(verify_theorem_gor_equivalence(&ga, p, &gps).unwrap().passed(), "{:?}", p.name());
    }

    let t = two_planes();
    let tps = two_planes_primes(&t);
    let ta = analysis(ModulePresentation::free(t.clone(), 1), &tps);
    let m = &tps[4];
    assert!(matches!(verify_theorem_gor_equivalence(&ta, m, &tps), Err(Error::HypothesisFailed(_))));
}

#[test]
fn localization_examples() {
    let s = AffineRing::polynomial(&["x", "y"]);
    let py = prime(&s, "py", &["y"]);
    let px = prime(&s, "px", &["x"]);

    let m = cyclic(&s, &["x"]);
    let res = verify_constructive_localization(LocalizationItem::Vanishing { module: &m, prime: &py }).unwrap();
    assert_eq!(res.witness["f"], "x");
    let gate = verify_constructive_localization(LocalizationItem::Vanishing { module: &m, prime: &px });
    assert!(matches!(gate, Err(Error::HypothesisFailed(_))));

    let i = s.parse_ideal(&["x*y"]).unwrap();
    let catalog = vec![px.clone(), py.clone()];
    let res = verify_constructive_localization(LocalizationItem::Radical {
        ring: &s,
        ideal: &i,
        prime: &px,
        catalog: &catalog,
    })
    .unwrap();
    assert_eq!(res.witness["f"], "y");

    let torsion = ModulePresentation::free(s.clone(), 1).direct_sum(&cyclic(&s, &["x", "y - 1"]));
    let seq = vec![s.parse_poly("x").unwrap()];
    let res = verify_constructive_localization(LocalizationItem::Regular { module: &torsion, prime: &px, sequence: &seq })
        .unwrap();
    assert!(res.passed());
    assert_eq!(res.witness["f"], "y - 1");
}

#[test]
fn bass_and_type_on_regular_local_point() {
    let s = AffineRing::polynomial(&["x", "y", "z"]);
    let m = prime(&s, "m", &["x", "y", "z"]);
    let a = analysis(ModulePresentation::free(s.clone(), 1), std::slice::from_ref(&m));
    assert!(verify_bass(&a, &m, &[0, 0, 0, 1]).unwrap().passed());
    assert!(!verify_bass(&a, &m, &[0, 0, 1, 0]).unwrap().passed());
    assert!(verify_gorenstein_type(a.module(), &m, Some(1)).unwrap().passed());
}
