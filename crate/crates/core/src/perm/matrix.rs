use serde::{Deserialize, Serialize};

use super::{Field, Permutation};
use crate::error::{Error, Result};

/// How a matrix group acts on points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    /// On the `q^n − 1` nonzero column vectors.
    Vectors,
    /// On the `(q^n − 1)/(q − 1)` lines, each normalized so that its first
    /// nonzero coordinate is 1.
    Projective,
}

/// An `n×n` matrix over 𝔽_q, entries in the field's integer encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMatrix {
    pub n: usize,
    pub entries: Vec<u32>,
}

impl FqMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        FqMatrix { n, entries }
    }

    pub fn from_rows(field: &Field, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix must be square"));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&v| field.element(v))
            .collect::<Result<_>>()?;
        Ok(FqMatrix { n, entries })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, f: &Field, other: &FqMatrix) -> FqMatrix {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.get(i, k), other.get(k, j)));
                }
                entries[i * n + j] = acc;
            }
        }
        FqMatrix { n, entries }
    }

    pub fn apply(&self, f: &Field, v: &[u32]) -> Vec<u32> {
        (0..self.n)
            .map(|i| (0..self.n).fold(0, |acc, k| f.add(acc, f.mul(self.get(i, k), v[k]))))
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, f: &Field) -> u32 {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return 0;
            };
            if r != c {
                for j in 0..n {
                    a.swap(r * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = a[c * n + c];
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("nonzero pivot");
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.mul(factor, a[c * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], v);
                }
            }
        }
        det
    }
}

/// The points of the action in lexicographic order of coordinate tuples.
pub fn action_points(field: &Field, n: usize, action: Action) -> Vec<Vec<u32>> {
    let q = field.order();
    let total = (q as u64).pow(n as u32);
    let mut out = Vec::new();
    for code in 1..total {
        let mut v = vec![0u32; n];
        let mut c = code;
        for i in (0..n).rev() {
            v[i] = (c % q as u64) as u32;
            c /= q as u64;
        }
        if action == Action::Projective && v.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        out.push(v);
    }
    out
}

fn vector_code(q: u32, v: &[u32]) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

/// Permutation realizations of matrices acting by `v ↦ Mv` on the points of
/// [`action_points`]. The map is a homomorphism: `perm(AB) = perm(A)∘perm(B)`.
pub fn matrix_group_to_perm(
    field: &Field,
    n: usize,
    gens: &[FqMatrix],
    action: Action,
    max_points: usize,
) -> Result<Vec<Permutation>> {
    let q = field.order();
    let total = (q as u128).pow(n as u32) - 1;
    let npoints = match action {
        Action::Vectors => total,
        Action::Projective => total / (q as u128 - 1),
    };
    if npoints > max_points as u128 {
        return Err(Error::CapExceeded {
            what: "matrix action points",
            size: npoints.min(usize::MAX as u128) as usize,
            cap: max_points,
        });
    }
    let points = action_points(field, n, action);
    let mut lookup = vec![u32::MAX; total as usize + 1];
    for (i, v) in points.iter().enumerate() {
        lookup[vector_code(q, v)] = i as u32;
    }
    let normalize = |mut v: Vec<u32>| -> Vec<u32> {
        if action == Action::Projective {
            if let Some(&lead) = v.iter().find(|&&x| x != 0) {
                let inv = field.inv(lead).expect("nonzero");
                for x in v.iter_mut() {
                    *x = field.mul(*x, inv);
                }
            }
        }
        v
    };
    gens.iter()
        .map(|m| {
            if m.n != n {
                return Err(Error::DegreeMismatch(n, m.n));
            }
            if m.det(field) == 0 {
                return Err(Error::SingularMatrix);
            }
            let images = points
                .iter()
                .map(|v| lookup[vector_code(q, &normalize(m.apply(field, v)))])
                .collect();
            Permutation::from_images(images)
        })
        .collect()
}

/// Standard generators of SL(2, q): the transvection, the Weyl element and,
/// when the field is not prime, `diag(ξ, ξ⁻¹)`.
pub fn sl2_generators(field: &Field) -> Vec<FqMatrix> {
    let one = 1;
    let minus_one = field.neg(1);
    let mut gens = vec![
        FqMatrix { n: 2, entries: vec![one, one, 0, one] },
        FqMatrix { n: 2, entries: vec![0, minus_one, one, 0] },
    ];
    if field.degree() > 1 {
        let xi = field.primitive();
        let xi_inv = field.inv(xi).expect("nonzero");
        gens.push(FqMatrix { n: 2, entries: vec![xi, 0, 0, xi_inv] });
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;

    #[test]
    fn gl22_is_s3() {
        let f = Field::new(2).unwrap();
        let a = FqMatrix::from_rows(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = FqMatrix::from_rows(&f, &[vec![0, 1], vec![1, 1]]).unwrap();
        let perms = matrix_group_to_perm(&f, 2, &[a, b], Action::Vectors, 100).unwrap();
        assert_eq!(perms[0].degree(), 3);
        assert_eq!(PermGroup::generate(&perms, 100).unwrap().order(), 6);
    }

    #[test]
    fn psl25_has_order_60() {
        let f = Field::new(5).unwrap();
        let gens = sl2_generators(&f);
        let vec_perms = matrix_group_to_perm(&f, 2, &gens, Action::Vectors, 100).unwrap();
        assert_eq!(vec_perms[0].degree(), 24);
        assert_eq!(PermGroup::generate(&vec_perms, 1000).unwrap().order(), 120);
        let proj = matrix_group_to_perm(&f, 2, &gens, Action::Projective, 100).unwrap();
        assert_eq!(proj[0].degree(), 6);
        assert_eq!(PermGroup::generate(&proj, 1000).unwrap().order(), 60);
    }

    #[test]
    fn psl29_has_order_360() {
        let f = Field::new(9).unwrap();
        let proj = matrix_group_to_perm(&f, 2, &sl2_generators(&f), Action::Projective, 100).unwrap();
        assert_eq!(PermGroup::generate(&proj, 10_000).unwrap().order(), 360);
    }

    #[test]
    fn identity_and_products() {
        let f = Field::new(4).unwrap();
        let id = FqMatrix::identity(2);
        let perms = matrix_group_to_perm(&f, 2, &[id], Action::Vectors, 100).unwrap();
        assert!(perms[0].is_identity());
        let gens = sl2_generators(&f);
        let ab = gens[0].mul(&f, &gens[1]);
        let all = matrix_group_to_perm(&f, 2, &[gens[0].clone(), gens[1].clone(), ab], Action::Vectors, 100).unwrap();
        assert_eq!(all[2], all[0].compose(&all[1]).unwrap());
    }

    #[test]
    fn singular_and_oversized_inputs() {
        let f = Field::new(3).unwrap();
        let z = FqMatrix::from_rows(&f, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert!(matches!(
            matrix_group_to_perm(&f, 2, &[z], Action::Vectors, 100),
            Err(Error::SingularMatrix)
        ));
        let id = FqMatrix::identity(3);
        assert!(matches!(
            matrix_group_to_perm(&f, 3, &[id], Action::Vectors, 10),
            Err(Error::CapExceeded { .. })
        ));
    }
}
