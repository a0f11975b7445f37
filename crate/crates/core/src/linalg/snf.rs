use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::sparse::eliminate_units;
use super::{Int, IntMatrix};

/// Nonzero invariant factors `d₁ | d₂ | …` of `m`, all positive.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<Int> {
    let elim = eliminate_units(m);
    let mut divisors = vec![Int::ONE; elim.unit_pivots];
    let mut rest = dense_divisors(elim.rest);
    divisors.append(&mut rest);
    normalize_chain(&mut divisors);
    divisors
}

/// Rank and the invariant factors greater than 1.
pub fn rank_and_torsion(m: &IntMatrix) -> (usize, Vec<Int>) {
    let d = smith_normal_form(m);
    let rank = d.len();
    (rank, d.into_iter().filter(|x| !x.is_unit()).collect())
}

/// Turns a list of positive integers into the invariant factors of the
/// diagonal matrix they form.
pub(crate) fn normalize_chain(d: &mut [Int]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if d[j].is_multiple_of(&d[i]) {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = (&d[i] * &d[j]).div_floor(&g);
            d[i] = g;
            d[j] = l;
        }
    }
}

fn min_abs_entry(a: &[Vec<Int>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| v.cmp_abs(&a[bi][bj]).is_lt()) {
                best = Some((i, j));
                if v.is_unit() {
                    return best;
                }
            }
        }
    }
    best
}

/// Invariant factors of a dense matrix by smallest-pivot elimination.
fn dense_divisors(mut a: Vec<Vec<Int>>) -> Vec<Int> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (top, bottom) = a.split_at_mut(i);
                for j in t..cols {
                    if !top[t][j].is_zero() {
                        bottom[0][j] = bottom[0][j].sub_mul(&q, &top[t][j]);
                    }
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        row[j] = row[j].sub_mul(&q, &row[t]);
                    }
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // A smaller remainder appeared in row or column t: move it to the pivot.
                let (mut bi, mut bj) = (t, t);
                for i in t..rows {
                    if !a[i][t].is_zero() && a[i][t].cmp_abs(&a[bi][bj]).is_lt() {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && a[t][j].cmp_abs(&a[bi][bj]).is_lt() {
                        (bi, bj) = (t, j);
                    }
                }
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            // Row and column cleared; enforce divisibility of the remainder.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let (top, bottom) = a.split_at_mut(i);
                    for j in t..cols {
                        top[t][j] = &top[t][j] + &bottom[0][j];
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Smith normal form with transforms: `u · a · v = diag(d)` with `u`, `v`
/// unimodular. Intended for small dense matrices.
#[derive(Clone, Debug)]
pub struct SnfTransforms {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    /// Diagonal entries, a divisibility chain of nonnegative integers padded
    /// with zeros to `min(rows, cols)`.
    pub d: Vec<BigInt>,
}

pub fn snf_with_transforms(a: &[Vec<BigInt>]) -> SnfTransforms {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // Smallest nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let s = &q * &a[t][j];
                        a[i][j] -= s;
                    }
                    for j in 0..rows {
                        let s = &q * &u[t][j];
                        u[i][j] -= s;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for i in 0..rows {
                        let s = &q * &a[i][t];
                        a[i][j] -= s;
                    }
                    for i in 0..cols {
                        let s = &q * &v[i][t];
                        v[i][j] -= s;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in 0..cols {
                        let s = a[i][j].clone();
                        a[t][j] += s;
                    }
                    for j in 0..rows {
                        let s = u[i][j].clone();
                        u[t][j] += s;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let d = (0..n).map(|i| a[i][i].clone()).collect();
    SnfTransforms { u, v, d }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

#[cfg(test)]
fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        let m = IntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m), ints(&[1, 6]));
        assert!(smith_normal_form(&IntMatrix::zeros(3, 4)).is_empty());
        let m = IntMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_normal_form(&m), ints(&[2, 6, 12]));
    }

    /// Random unimodular matrix as a product of elementary operations.
    fn unimodular(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<BigInt>> {
        let mut m = identity(n);
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            let f = BigInt::from(rng.gen_range(-3i64..=3));
            for k in 0..n {
                let s = &f * &m[j][k];
                m[i][k] += s;
            }
        }
        m
    }

    #[test]
    fn recovers_planted_divisors() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let planted: Vec<i64> = vec![1, 1, 2, 2, 6, 12, 12, 24, 0, 0];
        for trial in 0..5 {
            let n = 20;
            let mut d = vec![vec![BigInt::zero(); n]; n];
            for (i, &x) in planted.iter().enumerate() {
                d[i + trial][i] = BigInt::from(x);
            }
            let m = mat_mul(&mat_mul(&unimodular(n, &mut rng), &d), &unimodular(n, &mut rng));
            let dense: Vec<Vec<i64>> = m
                .iter()
                .map(|r| r.iter().map(|x| i64::try_from(x).expect("fits")).collect())
                .collect();
            let got = smith_normal_form(&IntMatrix::from_dense(&dense));
            assert_eq!(got, ints(&[1, 1, 2, 2, 6, 12, 12, 24]));
            let t = snf_with_transforms(&m);
            let check = mat_mul(&mat_mul(&t.u, &m), &t.v);
            for i in 0..n {
                for j in 0..n {
                    let expect = if i == j { t.d[i].clone() } else { BigInt::zero() };
                    assert_eq!(check[i][j], expect);
                }
            }
            let nonzero: Vec<_> = t.d.iter().filter(|x| !x.is_zero()).cloned().collect();
            assert_eq!(nonzero, planted[..8].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        }
    }

    proptest! {
        #[test]
        fn sparse_and_dense_routes_agree(entries in proptest::collection::vec(-3i64..=3, 48)) {
            let a: Vec<Vec<i64>> = entries.chunks(8).map(|c| c.to_vec()).collect();
            let sparse = smith_normal_form(&IntMatrix::from_dense(&a));
            let big: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let t = snf_with_transforms(&big);
            let dense: Vec<Int> = t.d.iter().filter(|x| !x.is_zero()).map(|x| Int::from(x.clone())).collect();
            prop_assert_eq!(sparse, dense);
        }
    }
}
