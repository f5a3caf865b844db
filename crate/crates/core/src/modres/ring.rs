use std::sync::Arc;

use crate::error::Result;
use crate::groebner::{canonical, groebner_basis, krull_dim, GroebnerBasis, Ideal};
use crate::qpoly::{parse_poly, Polynomial, TermOrder};

/// `R = S/J` with `S = Q[names]`.
#[derive(Debug)]
pub struct AffineRing {
    names: Vec<String>,
    order: TermOrder,
    relations: Ideal,
    gb: Arc<GroebnerBasis>,
    declared_gorenstein: bool,
}

impl PartialEq for AffineRing {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.gb.basis() == other.gb.basis()
    }
}

impl AffineRing {
    pub fn new(names: Vec<String>, relations: Ideal) -> Result<Arc<Self>> {
        Self::with_order(names.clone(), TermOrder::grevlex(names.len()), relations)
    }

    pub fn with_order(names: Vec<String>, order: TermOrder, relations: Ideal) -> Result<Arc<Self>> {
        let relations = canonical(&relations)?;
        let gb = groebner_basis(&relations, &order)?;
        Ok(Arc::new(AffineRing { names, order, relations, gb, declared_gorenstein: false }))
    }

    /// The polynomial ring itself.
    pub fn polynomial(names: &[&str]) -> Arc<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let n = names.len();
        Self::new(names, Ideal::zero(n)).expect("zero ideal")
    }

    /// Parses `relations` in the given variables.
    pub fn parse(names: &[&str], relations: &[&str]) -> Result<Arc<Self>> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let gens = relations.iter().map(|r| parse_poly(r, &names)).collect::<Result<Vec<_>>>()?;
        let n = names.len();
        Self::new(names, Ideal::new(n, gens))
    }

    pub fn declare_gorenstein(self: &Arc<Self>) -> Arc<Self> {
        Arc::new(AffineRing {
            names: self.names.clone(),
            order: self.order.clone(),
            relations: self.relations.clone(),
            gb: self.gb.clone(),
            declared_gorenstein: true,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.gb.is_unit()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if self.relations.is_zero() {
            f.clone()
        } else {
            self.gb.normal_form(f)
        }
    }

    pub fn parse_poly(&self, s: &str) -> Result<Polynomial> {
        Ok(self.reduce(&parse_poly(s, &self.names)?))
    }

    pub fn parse_ideal(&self, gens: &[&str]) -> Result<Ideal> {
        let g = gens.iter().map(|s| parse_poly(s, &self.names)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(self.nvars(), g))
    }

    /// `S` with the same variables and order.
    pub fn ambient(&self) -> Arc<AffineRing> {
        Arc::new(AffineRing {
            names: self.names.clone(),
            order: self.order.clone(),
            relations: Ideal::zero(self.nvars()),
            gb: groebner_basis(&Ideal::zero(self.nvars()), &self.order).expect("zero ideal"),
            declared_gorenstein: false,
        })
    }

    /// `R/I`, i.e. `S/(J + I)`.
    pub fn quotient(&self, i: &Ideal) -> Result<Arc<AffineRing>> {
        AffineRing::with_order(self.names.clone(), self.order.clone(), self.relations.sum(i))
    }

    /// `dim R`.
    pub fn dim(&self) -> Result<i64> {
        krull_dim(&self.relations)
    }

    /// Why `R` is known to be Gorenstein, if it is: polynomial rings,
    /// complete intersections (`height J` equal to the number of
    /// generators of `J`), and fixture declarations.
    pub fn gorenstein_certificate(&self) -> Result<Option<&'static str>> {
        if self.is_zero_ring() {
            return Ok(None);
        }
        if self.relations.is_zero() {
            return Ok(Some("polynomial ring"));
        }
        let height = self.nvars() as i64 - self.dim()?;
        let ngens = self.relations.gens().len() as i64;
        if ngens == 1 {
            return Ok(Some("hypersurface"));
        }
        if height == ngens {
            return Ok(Some("complete intersection"));
        }
        if self.declared_gorenstein {
            return Ok(Some("declared"));
        }
        Ok(None)
    }

    /// `R[t]/(t·f - 1)`, the localization at `f`, with `t` as a new first
    /// variable.
    pub fn invert(&self, f: &Polynomial) -> Result<Arc<AffineRing>> {
        let mut names = vec![unique_name(&self.names, "t")];
        names.extend(self.names.iter().cloned());
        let t = Polynomial::var(self.nvars() + 1, 0);
        let rel = t.mul(&f.insert_vars(0, 1)).sub(&Polynomial::one(self.nvars() + 1));
        let rels = self.relations.insert_vars(0, 1).with_gen(rel);
        AffineRing::with_order(names.clone(), TermOrder::grevlex(names.len()), rels)
    }
}

fn unique_name(names: &[String], base: &str) -> String {
    let mut cand = format!("{base}_inv");
    let mut k = 0;
    while names.contains(&cand) {
        k += 1;
        cand = format!("{base}_inv{k}");
    }
    cand
}
