use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{grevlex_gb, krull_dim, GroebnerBasis, Ideal};
use crate::qpoly::Polynomial;

/// How primality of an ideal is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Generated by a subset of the variables.
    MonomialChecked,
    /// Generated by linear polynomials (an affine-linear subspace).
    LinearChecked,
    /// Asserted by a fixture; only properness and containments are checked.
    Declared,
}

/// A prime ideal of the ambient polynomial ring. Primes of a quotient
/// `R = S/J` are the primes of `S` containing `J`.
#[derive(Clone)]
pub struct PrimeIdeal {
    name: Option<String>,
    ideal: Ideal,
    provenance: Provenance,
    gb: Arc<GroebnerBasis>,
}

impl fmt::Debug for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeIdeal({:?}, {:?}, {:?})", self.name, self.ideal.gens(), self.provenance)
    }
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.gb.basis() == other.gb.basis()
    }
}

impl PrimeIdeal {
    /// Certifies primality if the reduced basis consists of variables or of
    /// linear polynomials; otherwise `None`.
    pub fn certify(ideal: &Ideal) -> Result<Option<PrimeIdeal>> {
        let gb = grevlex_gb(ideal)?;
        if gb.is_unit() {
            return Ok(None);
        }
        let basis = gb.basis();
        let provenance = if basis.iter().all(|g| g.is_monomial() && g.is_linear_form()) {
            Provenance::MonomialChecked
        } else if basis.iter().all(|g| g.is_linear()) {
            Provenance::LinearChecked
        } else {
            return Ok(None);
        };
        Ok(Some(PrimeIdeal { name: None, ideal: gb.to_ideal(), provenance, gb }))
    }

    /// Accepts a fixture-declared prime after checking it is proper.
    /// Ideals that can be certified keep the stronger provenance.
    pub fn declared(ideal: &Ideal) -> Result<PrimeIdeal> {
        if let Some(p) = Self::certify(ideal)? {
            return Ok(p);
        }
        let gb = grevlex_gb(ideal)?;
        if gb.is_unit() {
            return Err(Error::Validation("declared prime is the unit ideal".into()));
        }
        Ok(PrimeIdeal { name: None, ideal: gb.to_ideal(), provenance: Provenance::Declared, gb })
    }

    /// The prime generated by the given variables.
    pub fn of_vars(nvars: usize, vars: &[usize]) -> PrimeIdeal {
        Self::certify(&Ideal::of_vars(nvars, vars)).unwrap().expect("variables generate a prime")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self, names: &[String]) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => format!("({})", self.ideal.fmt_with(names)),
        }
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.gb.contains(f)
    }

    pub fn contains_ideal(&self, i: &Ideal) -> bool {
        self.gb.contains_ideal(i)
    }

    /// `self ⊆ other`.
    pub fn is_contained_in(&self, other: &PrimeIdeal) -> bool {
        other.contains_ideal(&self.ideal)
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.gb.normal_form(f)
    }

    /// `dim S/p`.
    pub fn dim(&self) -> Result<i64> {
        krull_dim(&self.ideal)
    }

    /// `height p = nvars - dim S/p`.
    pub fn height(&self) -> Result<i64> {
        Ok(self.nvars() as i64 - self.dim()?)
    }

    pub fn is_maximal(&self) -> Result<bool> {
        Ok(self.dim()? == 0)
    }
}
