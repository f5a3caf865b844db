//! Minimal primes: exact for monomial and linear ideals, otherwise checked
//! against a declared list.

use super::{grevlex_gb, intersect_all, radical_member, Ideal};
use crate::error::{Error, Result};
use crate::invariants::PrimeIdeal;

/// Minimal primes of a monomial (or linear) ideal.
pub fn minimal_primes(ideal: &Ideal) -> Result<Vec<PrimeIdeal>> {
    let n = ideal.nvars();
    let gb = grevlex_gb(ideal)?;
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    if let Some(p) = PrimeIdeal::certify(ideal)? {
        return Ok(vec![p]);
    }
    if !gb.basis().iter().all(|g| g.is_monomial()) {
        return Err(Error::NotMonomialAndNotDeclared);
    }
    // minimal vertex covers of the supports of the generators
    let supports: Vec<u64> = gb
        .basis()
        .iter()
        .map(|g| g.terms()[0].0.support().iter().fold(0u64, |a, &v| a | (1 << v)))
        .collect();
    let covers: Vec<u64> = (0u64..(1 << n)).filter(|&s| supports.iter().all(|&g| g & s != 0)).collect();
    let mut minimal: Vec<u64> = covers
        .iter()
        .copied()
        .filter(|&s| !covers.iter().any(|&t| t != s && t & s == t))
        .collect();
    // order: fewer variables first, then by lowest variable index
    minimal.sort_by_key(|&s| (s.count_ones(), (0..n).filter(|&v| s & (1 << v) != 0).collect::<Vec<_>>()));
    Ok(minimal
        .into_iter()
        .map(|s| {
            let vars: Vec<usize> = (0..n).filter(|&v| s & (1 << v) != 0).collect();
            PrimeIdeal::of_vars(n, &vars)
        })
        .collect())
}

/// Checks a declared list of primes against `I`: each must contain `I`, and
/// their intersection must lie in `√I`. Returns the minimal members.
pub fn minimal_primes_declared(ideal: &Ideal, declared: &[PrimeIdeal]) -> Result<Vec<PrimeIdeal>> {
    for p in declared {
        if !p.contains_ideal(ideal) {
            return Err(Error::DeclaredDecompositionInconsistent(format!(
                "declared prime {:?} does not contain the ideal",
                p.name().unwrap_or("?")
            )));
        }
    }
    let mut minimal: Vec<PrimeIdeal> = Vec::new();
    for (i, p) in declared.iter().enumerate() {
        let dominated = declared
            .iter()
            .enumerate()
            .any(|(j, q)| j != i && q.is_contained_in(p) && (!p.is_contained_in(q) || j < i));
        if !dominated {
            minimal.push(p.clone());
        }
    }
    if minimal.is_empty() {
        return Err(Error::DeclaredDecompositionInconsistent("no primes declared".into()));
    }
    let inter = intersect_all(&minimal.iter().map(|p| p.ideal().clone()).collect::<Vec<_>>(), ideal.nvars())?;
    for g in inter.gens() {
        if !radical_member(g, ideal)? {
            return Err(Error::DeclaredDecompositionInconsistent(
                "intersection of declared primes is not inside the radical".into(),
            ));
        }
    }
    Ok(minimal)
}

/// Exact minimal primes when decidable, otherwise the minimal members of
/// `catalog` containing `I`, verified as a decomposition.
pub fn minimal_primes_with(ideal: &Ideal, catalog: &[PrimeIdeal]) -> Result<Vec<PrimeIdeal>> {
    match minimal_primes(ideal) {
        Ok(v) => Ok(v),
        Err(Error::NotMonomialAndNotDeclared) => {
            let containing: Vec<PrimeIdeal> = catalog.iter().filter(|p| p.contains_ideal(ideal)).cloned().collect();
            if containing.is_empty() {
                return Err(Error::DecompositionUnavailable("no declared prime contains the ideal".into()));
            }
            minimal_primes_declared(ideal, &containing)
                .map_err(|e| Error::DecompositionUnavailable(e.to_string()))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideal_equal;
    use crate::qpoly::parse_poly;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn ideal(v: &[String], gens: &[&str]) -> Ideal {
        Ideal::new(v.len(), gens.iter().map(|g| parse_poly(g, v).unwrap()))
    }

    #[test]
    fn two_planes() {
        let v = vars(&["x", "y", "u", "w"]);
        let mp = minimal_primes(&ideal(&v, &["x*u", "x*w", "y*u", "y*w"])).unwrap();
        assert_eq!(mp.len(), 2);
        assert!(ideal_equal(mp[0].ideal(), &ideal(&v, &["x", "y"])).unwrap());
        assert!(ideal_equal(mp[1].ideal(), &ideal(&v, &["u", "w"])).unwrap());
    }

    #[test]
    fn simple_monomials() {
        let v = vars(&["x", "y"]);
        let mp = minimal_primes(&ideal(&v, &["x*y"])).unwrap();
        assert_eq!(mp.len(), 2);
        let mp = minimal_primes(&ideal(&v, &["x^2", "x*y"])).unwrap();
        assert_eq!(mp.len(), 1);
        assert!(ideal_equal(mp[0].ideal(), &ideal(&v, &["x"])).unwrap());
        assert!(minimal_primes(&Ideal::unit(2)).unwrap().is_empty());
    }

    #[test]
    fn declared_decomposition() {
        let v = vars(&["x", "y"]);
        let i = ideal(&v, &["y^2 - x^3"]);
        assert_eq!(minimal_primes(&i), Err(Error::NotMonomialAndNotDeclared));
        let p = PrimeIdeal::declared(&i).unwrap();
        let got = minimal_primes_declared(&i, &[p]).unwrap();
        assert_eq!(got.len(), 1);
        let bad = PrimeIdeal::declared(&ideal(&v, &["x", "y"])).unwrap();
        assert!(matches!(
            minimal_primes_declared(&i, &[bad]),
            Err(Error::DeclaredDecompositionInconsistent(_))
        ));
    }
}
