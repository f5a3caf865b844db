#![allow(dead_code)]

use std::path::PathBuf;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use locikit::fixture::Fixture;
use locikit::groebner::GroebnerBasis;
use locikit::qpoly::{Monomial, Polynomial, Rational, TermOrder};

pub const FIXTURES: &[&str] =
    &["two_planes", "hypersurface", "koszul", "regular_plane", "thickening", "cusp", "artinian_line"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.fix"))
}

pub fn load(name: &str) -> Fixture {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    Fixture::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn all_fixtures() -> Vec<Fixture> {
    FIXTURES.iter().map(|n| load(n)).collect()
}

fn big(r: &Rational) -> BigRational {
    BigRational::new(r.numer(), r.denom())
}

/// Monomials of total degree at most `d` in `n` variables.
pub fn monomials_upto(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, left: u32, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if acc.len() == n {
            out.push(Monomial::from_exponents(acc));
            return;
        }
        for e in 0..=left {
            acc.push(e);
            go(n, left - e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::new(), &mut out);
    out
}

/// Decides whether `f = Σ gᵢ hᵢ` has a solution with `deg hᵢ ≤ d`, by exact
/// Gaussian elimination on the coefficient system.
pub fn member_bounded(f: &Polynomial, gens: &[Polynomial], d: u32) -> bool {
    let n = f.nvars();
    let mults = monomials_upto(n, d);
    let mut rows: Vec<Monomial> = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut row_of = |m: Monomial, rows: &mut Vec<Monomial>| -> usize {
        *index.entry(m.clone()).or_insert_with(|| {
            rows.push(m);
            rows.len() - 1
        })
    };
    // columns: one per (generator, multiplier), plus the right-hand side
    let mut cols: Vec<Vec<(usize, BigRational)>> = Vec::new();
    for g in gens {
        for u in &mults {
            let col = g.terms().iter().map(|(m, c)| (row_of(m.mul(u), &mut rows), big(c))).collect();
            cols.push(col);
        }
    }
    let rhs: Vec<(usize, BigRational)> = f.terms().iter().map(|(m, c)| (row_of(m.clone(), &mut rows), big(c))).collect();
    let nr = rows.len();
    let nc = cols.len();
    let mut a = vec![vec![BigRational::zero(); nc + 1]; nr];
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col {
            a[*i][j] = c.clone();
        }
    }
    for (i, c) in rhs {
        a[i][nc] = c;
    }
    let mut r = 0;
    for c in 0..nc {
        let Some(piv) = (r..nr).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, piv);
        let inv = BigRational::one() / a[r][c].clone();
        for x in a[r].iter_mut().skip(c) {
            *x = &*x * &inv;
        }
        for i in 0..nr {
            if i != r && !a[i][c].is_zero() {
                let k = a[i][c].clone();
                for j in c..=nc {
                    let t = &a[r][j] * &k;
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        r += 1;
    }
    // inconsistent iff some zero row has a nonzero right-hand side
    (r..nr).all(|i| a[i][nc].is_zero())
}

pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, maxdeg: u32, terms: usize) -> Polynomial {
    let pool = monomials_upto(n, maxdeg);
    let mut out = Vec::new();
    for _ in 0..terms {
        let m = pool[rng.gen_range(0..pool.len())].clone();
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            out.push((m, Rational::from_int(c)));
        }
    }
    let p = Polynomial::from_terms(n, out);
    if p.is_zero() {
        Polynomial::var(n, rng.gen_range(0..n))
    } else {
        p
    }
}

/// `S(f, g)` computed from leading terms.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &TermOrder) -> Polynomial {
    let (mf, cf) = f.leading_term(ord).unwrap();
    let (mg, cg) = g.leading_term(ord).unwrap();
    let l = mf.lcm(&mg);
    let a = f.mul_monomial(&mf.quotient_of(&l), &cf.recip());
    let b = g.mul_monomial(&mg.quotient_of(&l), &cg.recip());
    a.sub(&b)
}

pub fn s_pairs_reduce(gb: &GroebnerBasis) -> bool {
    let b = gb.basis();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if !gb.normal_form(&s_polynomial(&b[i], &b[j], gb.order())).is_zero() {
                return false;
            }
        }
    }
    true
}
