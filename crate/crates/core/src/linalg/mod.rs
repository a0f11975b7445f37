//! Exact integer and modular linear algebra.

mod int;
mod snf;
mod sparse;
pub mod zmod;

pub use int::Int;
pub use snf::{rank_and_torsion, smith_normal_form, snf_with_transforms, SnfTransforms};
pub use sparse::IntMatrix;
