//! Matrix representations and the functors between them.

mod hom;
mod induce;
mod module;

pub use hom::{end_space, hom_space, HomBasis};
pub use induce::{coset_matrices, induce, Induced, INDEX_CAP};
pub use module::{ElementEvaluator, Rep};
