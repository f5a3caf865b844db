//! Loci of finitely presented modules over affine algebras `Q[x_1..x_n]/J`.

pub mod budget;
pub mod error;
pub mod fixture;
pub mod groebner;
pub mod invariants;
pub mod loci;
pub mod modres;
pub mod qpoly;
pub mod verify;

pub use error::{Error, Result};
