//! Degree-by-degree construction of the Nichols algebra through the joint
//! left derivations.
//!
//! `B_n` is identified with the image of `D : ℂX ⊗ B_{n−1} → ⊕_y B_{n−1}`,
//! `D(e_x ⊗ b)_y = ∂_y(e_x b) = δ_{x,y} b + q_{x,z} e_x ∂_z(b)` with
//! `z = x ▷⁻¹ y`. Its basis is the reduced row echelon basis of that image,
//! so the derivations of a basis vector are read off its segments and the
//! product `e_x · b` is read off at the pivot positions.

use rayon::prelude::*;

use crate::error::Result;
use crate::rack::RackOps;

use super::braided::BraidedSpace;
use super::rref::{Accumulator, Echelon, SparseVec};
use super::scalar::Scalar;

/// One homogeneous piece `B_n[g]`.
pub struct Block<S> {
    /// Segment offsets of the ambient `⊕_y B_{n−1}[φ_y⁻¹ g]`, length `|X| + 1`.
    seg: Vec<u32>,
    /// Basis in reduced row echelon form inside the ambient.
    rows: Vec<SparseVec<S>>,
    /// `proj[x][i]`: coordinates of `e_x · b_i` for `b_i` in `B_{n−1}[φ_x⁻¹ g]`.
    proj: Vec<Vec<SparseVec<S>>>,
}

impl<S: Scalar> Block<S> {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `∂_y` of basis vector `k`, in coordinates of `B_{n−1}[φ_y⁻¹ g]`.
    pub fn derivation(&self, k: usize, y: usize) -> impl Iterator<Item = (u32, &S)> {
        let (lo, hi) = (self.seg[y], self.seg[y + 1]);
        let row = &self.rows[k];
        let start = row.partition_point(|e| e.0 < lo);
        row[start..].iter().take_while(move |e| e.0 < hi).map(move |(p, v)| (p - lo, v))
    }
}

/// The homogeneous component `B_n`.
pub struct Component<S> {
    pub degree: usize,
    pub blocks: Vec<Block<S>>,
}

impl<S: Scalar> Component<S> {
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }

    /// `B_0 = ℂ` in the trivial degree.
    pub fn unit(space: &BraidedSpace<S>) -> Self {
        let n = space.dim();
        let g = space.grading();
        let blocks = (0..g.order())
            .map(|h| Block {
                seg: vec![0; n + 1],
                rows: if h == g.identity() { vec![Vec::new()] } else { Vec::new() },
                proj: Vec::new(),
            })
            .collect();
        Component { degree: 0, blocks }
    }

    /// Builds `B_{n+1}` from `B_n`.
    pub fn next(&self, space: &BraidedSpace<S>) -> Component<S> {
        let grading = space.grading();
        let blocks = (0..grading.order()).into_par_iter().map(|g| self.next_block(space, g)).collect();
        Component { degree: self.degree + 1, blocks }
    }

    fn next_block(&self, space: &BraidedSpace<S>, g: usize) -> Block<S> {
        let rack = space.rack();
        let grading = space.grading();
        let n = space.dim();
        let mut seg = Vec::with_capacity(n + 1);
        seg.push(0u32);
        for y in 0..n {
            let d = self.blocks[grading.left_inv(y, g)].dim() as u32;
            seg.push(seg[y] + d);
        }
        let ambient = seg[n] as usize;
        let mut acc = Accumulator::new(ambient);
        let mut ech = Echelon::new(ambient);
        let mut columns: Vec<Vec<SparseVec<S>>> = Vec::with_capacity(n);
        for x in 0..n {
            let h = grading.left_inv(x, g);
            let src = &self.blocks[h];
            let mut per_x = Vec::with_capacity(src.dim());
            for i in 0..src.dim() {
                acc.add(seg[x] + i as u32, &S::one());
                for y in 0..n {
                    let z = rack.op_inv(x, y);
                    let target = &self.blocks[grading.left_inv(y, g)];
                    let q = space.q(x, z);
                    for (j, c) in src.derivation(i, z) {
                        let f = q.mul(c);
                        for (k, v) in &target.proj[x][j as usize] {
                            acc.add(seg[y] + k, &v.mul(&f));
                        }
                    }
                }
                let col = acc.take();
                ech.insert(&col);
                per_x.push(col);
            }
            columns.push(per_x);
        }
        let rref = ech.into_rref();
        let proj = columns.iter().map(|cols| cols.iter().map(|c| rref.coordinates(c)).collect()).collect();
        debug_assert!(columns.iter().flatten().all(|c| rref.contains(c)));
        Block { seg, rows: rref.rows, proj }
    }
}

/// Options for a Hilbert series run.
#[derive(Clone, Debug)]
pub struct SeriesOptions {
    pub max_degree: usize,
    pub max_dim: usize,
}

/// Dimensions `dim B_n` for `n = 0, 1, …` until a zero component, the degree
/// cap or the dimension cap.
pub fn dimensions<S: Scalar>(space: &BraidedSpace<S>, opts: &SeriesOptions) -> Result<(Vec<usize>, Stop)> {
    let mut comp = Component::unit(space);
    let mut dims = vec![1usize];
    while comp.degree < opts.max_degree {
        let next = comp.next(space);
        let d = next.dim();
        if d > opts.max_dim {
            return Ok((dims, Stop::DimensionCap { degree: next.degree, dim: d }));
        }
        dims.push(d);
        if d == 0 {
            // Generated in degree one: the following component must vanish too.
            debug_assert_eq!(next.next(space).dim(), 0);
            return Ok((dims, Stop::Finite));
        }
        comp = next;
    }
    Ok((dims, Stop::DegreeCap))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stop {
    Finite,
    DegreeCap,
    DimensionCap { degree: usize, dim: usize },
}
