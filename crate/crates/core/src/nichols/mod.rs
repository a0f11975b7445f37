//! Nichols algebras of braided vector spaces `(ℂX, c^q)`: Hilbert series by
//! derivations, the symmetrizer oracle and the quadratic cover.

mod braided;
mod engine;
mod quadratic;
mod rref;
mod scalar;
mod symmetrizer;

use serde::{Deserialize, Serialize};

pub use braided::{BraidedSpace, Grading};
pub use engine::{dimensions, Component, SeriesOptions, Stop};
pub use quadratic::{quadratic_cover_dims, quadratic_relations};
pub use rref::{Echelon, Rref, SparseVec};
pub use scalar::{cyclotomic_polynomial, CycScalar, Scalar, Q};
pub use symmetrizer::{reduced_words, symmetrizer, symmetrizer_rank};

use crate::caps::Caps;
use crate::cocycles::{twist, ScalarCocycle};
use crate::error::Result;
use crate::rack::Rack;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NicholsReport {
    pub dims: Vec<usize>,
    pub finite: bool,
    pub total: Option<u64>,
    pub top: Option<usize>,
    pub truncated: bool,
    /// Dimension of `ker Q₂`.
    pub quadratic_relations: usize,
}

fn uses_rationals(q: &ScalarCocycle) -> bool {
    q.m <= 2 || q.exponents.iter().flatten().all(|&e| (2 * e) % q.m == 0)
}

fn report<S: Scalar>(space: &BraidedSpace<S>, opts: &SeriesOptions) -> Result<NicholsReport> {
    let (dims, stop) = dimensions(space, opts)?;
    let n = space.dim();
    let finite = stop == Stop::Finite;
    let quadratic_relations = if dims.len() > 2 { n * n - dims[2] } else { quadratic::quadratic_relations(space).len() };
    Ok(NicholsReport {
        total: finite.then(|| dims.iter().map(|&d| d as u64).sum()),
        top: finite.then(|| dims.len() - 2),
        truncated: !finite,
        finite,
        quadratic_relations,
        dims,
    })
}

/// Hilbert series of `B(X, q)` with exact arithmetic: rationals when `q`
/// takes values `±1`, cyclotomic fields otherwise.
pub fn hilbert_series(x: &Rack, q: &ScalarCocycle, max_degree: usize, caps: &Caps) -> Result<NicholsReport> {
    let opts = SeriesOptions { max_degree: max_degree.min(caps.nichols_degree), max_dim: caps.nichols_dim };
    if uses_rationals(q) {
        report(&BraidedSpace::<Q>::new(x.clone(), q.clone(), caps)?, &opts)
    } else {
        report(&BraidedSpace::<CycScalar>::new(x.clone(), q.clone(), caps)?, &opts)
    }
}

/// `dim B_n` via the symmetrizer for `n = 0..=max_degree`.
pub fn symmetrizer_dims(x: &Rack, q: &ScalarCocycle, max_degree: usize, caps: &Caps) -> Result<Vec<usize>> {
    if uses_rationals(q) {
        let v = BraidedSpace::<Q>::new(x.clone(), q.clone(), caps)?;
        (0..=max_degree).map(|n| symmetrizer_rank(&v, n, caps)).collect()
    } else {
        let v = BraidedSpace::<CycScalar>::new(x.clone(), q.clone(), caps)?;
        (0..=max_degree).map(|n| symmetrizer_rank(&v, n, caps)).collect()
    }
}

/// Quadratic cover dimensions for `n = 0..=max_degree`.
pub fn quadratic_dims(x: &Rack, q: &ScalarCocycle, max_degree: usize, caps: &Caps) -> Result<Vec<usize>> {
    if uses_rationals(q) {
        quadratic_cover_dims(&BraidedSpace::<Q>::new(x.clone(), q.clone(), caps)?, max_degree, caps)
    } else {
        quadratic_cover_dims(&BraidedSpace::<CycScalar>::new(x.clone(), q.clone(), caps)?, max_degree, caps)
    }
}

/// Compares the Hilbert series of `B(X, q)` and `B(X, q^φ)` up to `max_degree`.
pub fn poincare_twist_check(x: &Rack, q: &ScalarCocycle, phi: &ScalarCocycle, max_degree: usize, caps: &Caps) -> Result<bool> {
    let twisted = twist(x, q, phi)?;
    let a = hilbert_series(x, q, max_degree, caps)?;
    let b = hilbert_series(x, &twisted, max_degree, caps)?;
    Ok(a.dims == b.dims)
}
