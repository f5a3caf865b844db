use super::*;
use crate::groebner::{ideal_contained, ideal_equal, Ideal};
use crate::invariants::PrimeIdeal;
use crate::qpoly::Polynomial;

fn s_xy() -> std::sync::Arc<AffineRing> {
    AffineRing::polynomial(&["x", "y"])
}

fn hyper() -> std::sync::Arc<AffineRing> {
    AffineRing::parse(&["x", "y"], &["x*y"]).unwrap()
}

fn cyclic(r: &std::sync::Arc<AffineRing>, gens: &[&str]) -> ModulePresentation {
    ModulePresentation::cyclic(r.clone(), &r.parse_ideal(gens).unwrap())
}

fn p(r: &AffineRing, s: &str) -> Polynomial {
    r.parse_poly(s).unwrap()
}

#[test]
fn syzygy_examples() {
    let r = s_xy();
    let a = Matrix::from_rows(2, vec![vec![p(&r, "x"), p(&r, "y")]]);
    let z = syzygies(&r, &a).unwrap();
    assert_eq!(z.ncols(), 1);
    let col = z.col(0);
    assert!(
        (col[0] == p(&r, "-y") && col[1] == p(&r, "x")) || (col[0] == p(&r, "y") && col[1] == p(&r, "-x"))
    );
    let one = Matrix::from_rows(2, vec![vec![Polynomial::one(2)]]);
    assert_eq!(syzygies(&r, &one).unwrap().ncols(), 0);
    let q = AffineRing::polynomial(&["x"]);
    let xm = Matrix::from_rows(1, vec![vec![p(&q, "x")]]);
    assert_eq!(syzygies(&q, &xm).unwrap().ncols(), 0);
}

#[test]
fn koszul_resolution() {
    let r = s_xy();
    let res = free_resolution(&cyclic(&r, &["x", "y"]), 5).unwrap();
    assert_eq!(res.ranks(), &[1, 2, 1]);
    assert!(res.is_complete());
    assert!(res.is_complex());
    assert!(res.is_exact().unwrap());
    let free = free_resolution(&ModulePresentation::free(r, 1), 5).unwrap();
    assert_eq!(free.length(), 0);
    assert_eq!(free.ranks(), &[1]);
}

#[test]
fn periodic_resolution() {
    let r = hyper();
    let res = free_resolution(&cyclic(&r, &["x"]), 5).unwrap();
    assert_eq!(res.ranks(), &[1, 1, 1, 1, 1, 1]);
    assert!(!res.is_complete());
    let expect = ["x", "y", "x", "y", "x"];
    for (k, e) in expect.iter().enumerate() {
        let d = res.differential(k + 1).unwrap();
        let entry = d.entry(0, 0);
        assert!(*entry == p(&r, e) || *entry == p(&r, e).neg(), "d_{} = {:?}", k + 1, entry);
    }
    assert!(res.is_complex());
    assert!(res.is_exact().unwrap());
}

#[test]
fn fitting_examples() {
    let r = s_xy();
    let m = cyclic(&r, &["x", "y"]);
    assert!(ideal_equal(&m.fitting_ideal(0).unwrap(), &r.parse_ideal(&["x", "y"]).unwrap()).unwrap());
    assert!(ideal_equal(&m.fitting_ideal(1).unwrap(), &Ideal::unit(2)).unwrap());
    let f = ModulePresentation::free(r.clone(), 3);
    for j in 0..3 {
        assert!(f.fitting_ideal(j).unwrap().is_zero());
    }
    assert!(ideal_equal(&f.fitting_ideal(3).unwrap(), &Ideal::unit(2)).unwrap());
    let sq = cyclic(&r, &["x^2"]);
    assert!(ideal_equal(&sq.fitting_ideal(0).unwrap(), &r.parse_ideal(&["x^2"]).unwrap()).unwrap());
}

#[test]
fn annihilator_examples() {
    let r = s_xy();
    let a = cyclic(&r, &["x", "y"]).annihilator().unwrap();
    assert!(ideal_equal(&a, &r.parse_ideal(&["x", "y"]).unwrap()).unwrap());
    let m = ModulePresentation::free(r.clone(), 1).direct_sum(&cyclic(&r, &["x"]));
    assert!(m.annihilator().unwrap().is_zero());
    let m = cyclic(&r, &["x"]).direct_sum(&cyclic(&r, &["y"]));
    assert!(ideal_equal(&m.annihilator().unwrap(), &r.parse_ideal(&["x*y"]).unwrap()).unwrap());
}

#[test]
fn ext_examples() {
    let r = s_xy();
    let k = cyclic(&r, &["x", "y"]);
    let s1 = ModulePresentation::free(r.clone(), 1);
    for j in 0..=3 {
        let e = ext_module(&k, &s1, j).unwrap();
        if j == 2 {
            assert_eq!(e.num_gens(), 1);
            assert!(ideal_equal(&e.annihilator().unwrap(), &r.parse_ideal(&["x", "y"]).unwrap()).unwrap());
        } else {
            assert!(e.is_zero().unwrap(), "Ext^{j} should vanish");
        }
    }
    let e0 = ext_module(&s1, &s1, 0).unwrap();
    assert_eq!(e0.num_gens(), 1);
    assert!(e0.annihilator().unwrap().is_zero());

    let h = hyper();
    let m = cyclic(&h, &["x"]);
    let rr = ModulePresentation::free(h.clone(), 1);
    for i in 1..=3 {
        assert!(ext_module(&m, &rr, i).unwrap().is_zero().unwrap(), "Ext^{i}");
    }
    // Hom(R/(x), R) = (0 : x) = (y)
    let hom = ext_module(&m, &rr, 0).unwrap();
    assert_eq!(hom.num_gens(), 1);
    assert!(ideal_equal(&hom.annihilator().unwrap(), &h.parse_ideal(&["x"]).unwrap().sum(h.relations())).unwrap());
}

#[test]
fn ext_annihilators_koszul() {
    let r = AffineRing::polynomial(&["x", "y", "z"]);
    let a = ext_annihilators_over_ambient(&cyclic(&r, &["x", "y"])).unwrap();
    assert_eq!(a.len(), 4);
    assert!(ideal_equal(&a[0], &Ideal::unit(3)).unwrap());
    assert!(ideal_equal(&a[1], &Ideal::unit(3)).unwrap());
    assert!(ideal_equal(&a[2], &r.parse_ideal(&["x", "y"]).unwrap()).unwrap());
    assert!(ideal_equal(&a[3], &Ideal::unit(3)).unwrap());
}

#[test]
fn quotient_module_examples() {
    let r = s_xy();
    let i = r.parse_ideal(&["x", "y"]).unwrap();
    let k = ModulePresentation::free(r.clone(), 1).quotient_module(&i).unwrap();
    assert_eq!(k.num_gens(), 1);
    assert!(!k.is_zero().unwrap());
    assert!(ideal_equal(k.ring().relations(), &i).unwrap());
    let m = cyclic(&r, &["x^2"]);
    let same = m.quotient_module(&Ideal::zero(2)).unwrap();
    assert!(ideal_equal(&same.annihilator().unwrap(), &m.annihilator().unwrap()).unwrap());

    let h = hyper();
    let q = cyclic(&h, &["x"]).quotient_module(&h.parse_ideal(&["y"]).unwrap()).unwrap();
    assert_eq!(q.num_gens(), 1);
    assert!(ideal_equal(&q.annihilator().unwrap(), &h.parse_ideal(&["x", "y"]).unwrap()).unwrap());
}

#[test]
fn local_generators_and_pruning() {
    let r = s_xy();
    // S/(x) ⊕ S/(y-1): at (x) only the first summand survives
    let m = cyclic(&r, &["x"]).direct_sum(&cyclic(&r, &["y - 1"]));
    let px = PrimeIdeal::of_vars(2, &[0]);
    assert_eq!(m.local_num_gens(&px), 1);
    assert_eq!(m.pruned_at(&px).num_gens(), 1);
    let m0 = PrimeIdeal::of_vars(2, &[0, 1]);
    assert_eq!(m.local_num_gens(&m0), 1);
    let zero = PrimeIdeal::certify(&Ideal::zero(2)).unwrap().unwrap();
    assert_eq!(m.local_num_gens(&zero), 0);
    let res = resolve(&cyclic(&r, &["x", "y"]), 4, Pruning::Local(&px)).unwrap();
    assert_eq!(res.ranks(), &[0]);
}

#[test]
fn annihilator_contains_in_ext_annihilators() {
    let h = hyper();
    let m = cyclic(&h, &["x"]).direct_sum(&cyclic(&h, &["x^2", "y"]));
    let n = cyclic(&h, &["y"]);
    let ann = m.annihilator().unwrap();
    for i in 0..3 {
        let e = ext_module(&m, &n, i).unwrap();
        assert!(ideal_contained(&ann, &e.annihilator().unwrap()).unwrap());
    }
}
