//! Permutations, enumerated permutation groups, finite fields and
//! permutation realizations of small matrix groups.

mod field;
mod group;
mod matrix;
mod permutation;

pub use field::Field;
pub use group::{conjugation_orbit, GroupAutomorphism, PermGroup};
pub use matrix::{action_points, matrix_group_to_perm, sl2_generators, Action, FqMatrix};
pub use permutation::{CycleType, Permutation};

use crate::error::Result;

/// `Sym(m)` generated by `(0 1)` and the m-cycle.
pub fn symmetric_group(m: usize) -> Result<PermGroup> {
    if m < 2 {
        return PermGroup::generate_with_degree(m, &[], 1);
    }
    let t = Permutation::parse("(0 1)", m)?;
    let c = Permutation::from_images((0..m as u32).map(|i| (i + 1) % m as u32).collect())?;
    PermGroup::generate(&[t, c], usize::MAX)
}

/// `Alt(m)` generated by `(0 1 2)` and an (m−1)- or m-cycle of even sign.
pub fn alternating_group(m: usize) -> Result<PermGroup> {
    if m < 3 {
        return PermGroup::generate_with_degree(m, &[], 1);
    }
    let t = Permutation::parse("(0 1 2)", m)?;
    let c = if m % 2 == 1 {
        Permutation::from_images((0..m as u32).map(|i| (i + 1) % m as u32).collect())?
    } else {
        let mut images: Vec<u32> = (0..m as u32).collect();
        for i in 1..m {
            images[i] = if i + 1 == m { 1 } else { i as u32 + 1 };
        }
        Permutation::from_images(images)?
    };
    PermGroup::generate(&[t, c], usize::MAX)
}

/// The Mathieu group M₁₁ in its natural action on 11 points.
pub fn mathieu11() -> Result<PermGroup> {
    let a = Permutation::parse("(0 1 2 3 4 5 6 7 8 9 10)", 11)?;
    let b = Permutation::parse("(2 6 10 7)(3 9 4 5)", 11)?;
    PermGroup::generate(&[a, b], usize::MAX)
}

/// PSL(2, q) acting on the projective line.
pub fn psl2(q: u64, max_points: usize) -> Result<PermGroup> {
    let f = Field::new(q)?;
    let gens = matrix_group_to_perm(&f, 2, &sl2_generators(&f), Action::Projective, max_points)?;
    PermGroup::generate(&gens, usize::MAX)
}
