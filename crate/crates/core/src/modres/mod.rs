//! Finitely presented modules over affine algebras: presentations,
//! syzygies, free resolutions, Fitting ideals, annihilators and Ext.

mod ext;
mod matrix;
mod module;
mod resolution;
mod ring;

pub use ext::{ext_annihilators_over_ambient, ext_from_resolution, ext_module, hom_cohomology};
pub use matrix::Matrix;
pub(crate) use module::minimize_modulo;
pub use module::{minors, rank_mod_prime, syzygies, ModulePresentation};
pub use resolution::{default_cutoff, free_resolution, resolve, FreeResolution, Pruning};
pub use ring::AffineRing;

#[cfg(test)]
mod tests;
