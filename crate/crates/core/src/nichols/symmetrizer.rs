//! The quantum symmetrizer `Q_n = Σ_{σ∈S_n} M(σ)` over reduced words, as a
//! definitional oracle at small scale.

use rustc_hash::FxHashMap;

use crate::caps::Caps;
use crate::error::{Error, Result};

use super::braided::BraidedSpace;
use super::rref::{Accumulator, Echelon, SparseVec};
use super::scalar::Scalar;

/// A reduced word for every permutation of `0..n`, in lexicographic order of
/// the permutations. Bubble sort records one adjacent transposition per
/// inversion, so the words are reduced.
pub fn reduced_words(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let mut p = perm.clone();
        let mut word = Vec::new();
        let mut swapped = true;
        while swapped {
            swapped = false;
            for i in 0..n.saturating_sub(1) {
                if p[i] > p[i + 1] {
                    p.swap(i, i + 1);
                    word.push(i);
                    swapped = true;
                }
            }
        }
        out.push(word);
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    out
}

fn encode(word: &[usize], n: usize) -> u32 {
    word.iter().fold(0usize, |acc, &x| acc * n + x) as u32
}

fn decode(mut code: usize, n: usize, len: usize) -> Vec<usize> {
    let mut w = vec![0; len];
    for slot in w.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    w
}

/// Column `w` of `Q_n`, basis tensors indexed lexicographically.
pub fn symmetrizer_column<S: Scalar>(space: &BraidedSpace<S>, words: &[Vec<usize>], w: &[usize]) -> SparseVec<S> {
    let n = space.dim();
    let mut acc: FxHashMap<u32, S> = FxHashMap::default();
    for word in words {
        let mut t = w.to_vec();
        let mut s = S::one();
        // M(s_{i₁}⋯s_{i_k}) = σ_{i₁}⋯σ_{i_k}: the rightmost letter acts first.
        for &i in word.iter().rev() {
            s = s.mul(&space.apply_generator(&mut t, i));
        }
        let e = acc.entry(encode(&t, n)).or_insert_with(S::zero);
        *e = e.add(&s);
    }
    let mut col: SparseVec<S> = acc.into_iter().filter(|e| !e.1.is_zero()).collect();
    col.sort_unstable_by_key(|e| e.0);
    col
}

fn tensor_dim(space_dim: usize, degree: usize, caps: &Caps) -> Result<usize> {
    let dim = (space_dim as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
    let dim = usize::try_from(dim).unwrap_or(usize::MAX);
    caps.check("symmetrizer tensor power", dim, caps.oracle_tensor)?;
    Ok(dim)
}

/// The full matrix of `Q_n` as sparse columns.
pub fn symmetrizer<S: Scalar>(space: &BraidedSpace<S>, degree: usize, caps: &Caps) -> Result<Vec<SparseVec<S>>> {
    let dim = tensor_dim(space.dim(), degree, caps)?;
    let words = reduced_words(degree);
    Ok((0..dim).map(|c| symmetrizer_column(space, &words, &decode(c, space.dim(), degree))).collect())
}

/// `rank Q_n = dim B_n`, computed per homogeneous piece.
pub fn symmetrizer_rank<S: Scalar>(space: &BraidedSpace<S>, degree: usize, caps: &Caps) -> Result<usize> {
    if degree == 0 {
        return Ok(1);
    }
    let dim = tensor_dim(space.dim(), degree, caps)?;
    let words = reduced_words(degree);
    let n = space.dim();
    let mut by_grade: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
    for c in 0..dim {
        by_grade.entry(space.grading().of_word(&decode(c, n, degree))).or_default().push(c);
    }
    let mut grades: Vec<_> = by_grade.into_iter().collect();
    grades.sort_unstable();
    let mut rank = 0;
    for (_, members) in grades {
        let local: FxHashMap<u32, u32> = members.iter().enumerate().map(|(i, &c)| (c as u32, i as u32)).collect();
        let mut ech = Echelon::new(members.len());
        for &c in &members {
            let col = symmetrizer_column(space, &words, &decode(c, n, degree));
            let mut acc = Accumulator::new(members.len());
            for (p, v) in col {
                let l = *local.get(&p).ok_or_else(|| Error::invalid("symmetrizer is not homogeneous"))?;
                acc.add(l, &v);
            }
            ech.insert(&acc.take());
        }
        rank += ech.rank();
    }
    Ok(rank)
}
