//! Exact computations with finite racks: construction from conjugacy
//! classes and affine data, type-D decisions, rack homology, scalar
//! 2-cocycles and Hilbert series of Nichols algebras.

pub mod caps;
pub mod cli;
pub mod cocycles;
pub mod error;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod nichols;
pub mod perm;
pub mod rack;
pub mod thr;
pub mod typed;
pub mod verify;

pub use caps::Caps;
pub use error::{Error, Result};
