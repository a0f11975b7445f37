//! The quadratic cover `T(V)/⟨ker Q₂⟩`.

use crate::caps::Caps;
use crate::error::Result;

use super::braided::BraidedSpace;
use super::rref::{Echelon, SparseVec};
use super::scalar::Scalar;

fn decode(mut code: usize, n: usize, len: usize) -> Vec<usize> {
    let mut w = vec![0; len];
    for slot in w.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    w
}

/// A basis of `ker(id + c) ⊂ V ⊗ V`, coordinates indexed by `x·|X| + y`.
pub fn quadratic_relations<S: Scalar>(space: &BraidedSpace<S>) -> Vec<SparseVec<S>> {
    let n = space.dim();
    let g = space.grading();
    let mut out = Vec::new();
    for grade in 0..g.order() {
        let members: Vec<usize> = (0..n * n).filter(|&c| g.of_word(&[c / n, c % n]) == grade).collect();
        if members.is_empty() {
            continue;
        }
        let local = |c: usize| members.binary_search(&c).expect("homogeneous") as u32;
        // Rows of id + c: entry (row, col) for col = e_x ⊗ e_y.
        let s = members.len();
        let mut dense = vec![vec![S::zero(); s]; s];
        for (j, &c) in members.iter().enumerate() {
            let (x, y) = (c / n, c % n);
            dense[j][j] = dense[j][j].add(&S::one());
            let (q, a, b) = space.braid(x, y);
            let i = local(a * n + b) as usize;
            dense[i][j] = dense[i][j].add(&q);
        }
        let mut ech = Echelon::new(s);
        for row in &dense {
            let sparse: SparseVec<S> =
                row.iter().enumerate().filter(|e| !e.1.is_zero()).map(|(i, v)| (i as u32, v.clone())).collect();
            ech.insert(&sparse);
        }
        let rref = ech.into_rref();
        // Null space from the free columns.
        for free in (0..s as u32).filter(|c| !rref.pivots.contains(c)) {
            let mut v: SparseVec<S> = vec![(members[free as usize] as u32, S::one())];
            for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
                if let Some(x) = row.iter().find(|e| e.0 == free) {
                    v.push((members[p as usize] as u32, x.1.neg()));
                }
            }
            v.sort_unstable_by_key(|e| e.0);
            out.push(v);
        }
    }
    out
}

/// `dim (T(V)/⟨ker Q₂⟩)_n` for `n = 0..=max_degree`.
pub fn quadratic_cover_dims<S: Scalar>(space: &BraidedSpace<S>, max_degree: usize, caps: &Caps) -> Result<Vec<usize>> {
    let n = space.dim();
    let total = (n as u128).checked_pow(max_degree as u32).unwrap_or(u128::MAX);
    caps.check("quadratic cover tensor power", usize::try_from(total).unwrap_or(usize::MAX), caps.quadratic_dim)?;
    let rels = quadratic_relations(space);
    let g = space.grading();
    let mut dims = Vec::with_capacity(max_degree + 1);
    for degree in 0..=max_degree {
        let dim = n.pow(degree as u32);
        if degree < 2 {
            dims.push(dim);
            continue;
        }
        let grades: Vec<usize> = (0..dim).map(|c| g.of_word(&decode(c, n, degree))).collect();
        let mut local = vec![0u32; dim];
        let mut counts = vec![0u32; g.order()];
        for c in 0..dim {
            local[c] = counts[grades[c]];
            counts[grades[c]] += 1;
        }
        let mut echs: Vec<Echelon<S>> = counts.iter().map(|&k| Echelon::new(k as usize)).collect();
        for i in 0..=degree - 2 {
            let (pre, post) = (n.pow(i as u32), n.pow((degree - 2 - i) as u32));
            for u in 0..pre {
                for v in 0..post {
                    for r in &rels {
                        let mut vec: SparseVec<S> = r
                            .iter()
                            .map(|(k, s)| (((u * n * n + *k as usize) * post + v) as u32, s.clone()))
                            .collect();
                        let grade = grades[vec[0].0 as usize];
                        for e in vec.iter_mut() {
                            e.0 = local[e.0 as usize];
                        }
                        vec.sort_unstable_by_key(|e| e.0);
                        echs[grade].insert(&vec);
                    }
                }
            }
        }
        dims.push(dim - echs.iter().map(Echelon::rank).sum::<usize>());
    }
    Ok(dims)
}
