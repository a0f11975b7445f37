use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rustc_hash::FxHashMap;

use super::{affine, AffineSpec, Rack};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::snf_with_transforms;
use crate::perm::{matrix_group_to_perm, Action, Field, FqMatrix, Permutation};

/// The affine model `((ℤ/(q−1))^{n−1}, g)` with
/// `g(x₁, …, x_{n−1}) = (−Σ xᵢ, x₁, …, x_{n−2})`.
pub fn torus_model(n: usize, q: u64, caps: &Caps) -> Result<Rack> {
    if n < 2 {
        return Err(Error::invalid("torus racks need n ≥ 2"));
    }
    let d = n - 1;
    let matrix: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| if i == 0 { -1 } else { (j + 1 == i) as i64 }).collect())
        .collect();
    affine(&AffineSpec::Module { moduli: vec![q - 1; d], matrix }, caps)
}

/// The rack `X_{a,ξ} = {μ_x = n_a ξ_x : Σ xᵢ ≡ 0 mod q−1}` realized by
/// permutations of the nonzero vectors of 𝔽_q^n, together with its affine
/// model. Elements are ordered lexicographically by `(x₁, …, x_{n−1})`.
pub fn torus_rack(n: usize, q: u64, a: i64, caps: &Caps) -> Result<(Rack, Rack)> {
    let field = Field::new(q)?;
    let a = field.element(a)?;
    if a == 0 {
        return Err(Error::SingularMatrix);
    }
    let m = (q - 1) as usize;
    let size = m.checked_pow((n - 1) as u32).ok_or_else(|| Error::invalid("torus rack too large"))?;
    caps.check("torus rack", size, caps.rack_size)?;
    let mut mats = Vec::with_capacity(size);
    let mut labels = Vec::with_capacity(size);
    for code in 0..size {
        let mut x = vec![0usize; n];
        let mut c = code;
        for i in (0..n - 1).rev() {
            x[i] = c % m;
            c /= m;
        }
        x[n - 1] = (m - x[..n - 1].iter().sum::<usize>() % m) % m;
        // μ_x = n_a ξ_x: column j < n−1 carries ξ^{x_j} in row j+1, the last
        // column carries a ξ^{x_n} in row 0.
        let mut entries = vec![0u32; n * n];
        for j in 0..n - 1 {
            entries[(j + 1) * n + j] = field.pow_primitive(x[j] as i64);
        }
        entries[n - 1] = field.mul(a, field.pow_primitive(x[n - 1] as i64));
        mats.push(FqMatrix { n, entries });
        labels.push(format!("({})", x[..n - 1].iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")));
    }
    let perms = matrix_group_to_perm(&field, n, &mats, Action::Vectors, caps.matrix_points)?;
    let index: FxHashMap<&Permutation, u32> = perms.iter().zip(0u32..).collect();
    let mut table = Vec::with_capacity(size * size);
    for x in &perms {
        for y in &perms {
            let z = Permutation::conjugate_unchecked(x, y);
            let i = index
                .get(&z)
                .ok_or_else(|| Error::invalid("torus set is not closed under conjugation"))?;
            table.push(*i);
        }
    }
    let realized = Rack::from_flat(size, table, labels, format!("torus(n={n},q={q},a={a})"))?;
    Ok((realized, torus_model(n, q, caps)?))
}

/// Certificate for the affine model `((ℤ/m)^d, g)`: true iff
/// `x ∉ Im(1 − g)` and `x − gx + g²x − g³x ≠ 0`.
pub fn affine_model_type_d_certificate(g: &[Vec<i64>], m: u64, x: &[i64]) -> Result<bool> {
    let d = g.len();
    if d == 0 || g.iter().any(|r| r.len() != d) || x.len() != d {
        return Err(Error::invalid("g must be square and match x"));
    }
    let mi = m as i128;
    let apply = |v: &[i128]| -> Vec<i128> {
        (0..d)
            .map(|i| (0..d).map(|j| g[i][j] as i128 * v[j]).sum::<i128>().rem_euclid(mi))
            .collect()
    };
    // Invertibility: g must be a bijection of (ℤ/m)^d, i.e. det g a unit.
    let big: Vec<Vec<BigInt>> = g.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let det = snf_with_transforms(&big).d.iter().fold(BigInt::from(1), |acc, v| acc * v);
    if !det.gcd(&BigInt::from(m)).eq(&BigInt::from(1)) {
        return Err(Error::SingularMatrix);
    }
    let x0: Vec<i128> = x.iter().map(|&v| (v as i128).rem_euclid(mi)).collect();
    let x1 = apply(&x0);
    let x2 = apply(&x1);
    let x3 = apply(&x2);
    let alt_nonzero = (0..d).any(|i| (x0[i] - x1[i] + x2[i] - x3[i]).rem_euclid(mi) != 0);
    // x ∈ Im(1−g) over ℤ/m iff x is in the ℤ-span of the columns of [1−g | m·I].
    let mut aug: Vec<Vec<BigInt>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| BigInt::from((i == j) as i64 - g[i][j]))
                .chain((0..d).map(|j| BigInt::from(if i == j { m as i64 } else { 0 })))
                .collect()
        })
        .collect();
    let t = snf_with_transforms(&aug);
    let ux: Vec<BigInt> = t
        .u
        .iter()
        .map(|row| row.iter().zip(&x0).map(|(a, b)| a * BigInt::from(*b)).sum())
        .collect();
    let in_image = ux.iter().enumerate().all(|(i, v)| {
        let di = t.d.get(i).cloned().unwrap_or_else(BigInt::zero);
        if di.is_zero() {
            v.is_zero()
        } else {
            v.is_multiple_of(&di)
        }
    });
    aug.clear();
    Ok(!in_image && alt_nonzero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rack::is_isomorphic;

    #[test]
    fn torus_racks_match_models() {
        let caps = Caps::default();
        let (x, model) = torus_rack(2, 5, -1, &caps).unwrap();
        assert_eq!(x.size(), 4);
        let d4 = affine(&AffineSpec::Cyclic { m: 4, t: -1 }, &caps).unwrap();
        assert!(is_isomorphic(&x, &d4, &caps).unwrap().is_some());
        assert!(is_isomorphic(&x, &model, &caps).unwrap().is_some());
        let (x, model) = torus_rack(3, 4, 1, &caps).unwrap();
        assert_eq!(x.size(), 9);
        assert!(is_isomorphic(&x, &model, &caps).unwrap().is_some());
        for (n, q, a) in [(2, 7, -1), (3, 5, 2), (2, 9, 1), (4, 3, -1)] {
            let (x, model) = torus_rack(n, q, a, &caps).unwrap();
            assert!(is_isomorphic(&x, &model, &caps).unwrap().is_some(), "n={n} q={q} a={a}");
            for i in 0..x.size() {
                assert_eq!(crate::rack::RackOps::op(&x, i, i), i);
            }
        }
    }

    #[test]
    fn certificates() {
        assert!(affine_model_type_d_certificate(&[vec![-1]], 8, &[1]).unwrap());
        assert!(!affine_model_type_d_certificate(&[vec![-1]], 8, &[0]).unwrap());
        assert!(!affine_model_type_d_certificate(&[vec![1]], 8, &[1]).unwrap());
        assert!(!affine_model_type_d_certificate(&[vec![1, 0], vec![0, 1]], 6, &[1, 2]).unwrap());
        assert!(matches!(
            affine_model_type_d_certificate(&[vec![2]], 8, &[1]),
            Err(Error::SingularMatrix)
        ));
        // g = −1 on ℤ/4: Im(1−g) = 2ℤ/4, x − gx + g²x − g³x = 4x ≡ 0.
        assert!(!affine_model_type_d_certificate(&[vec![-1]], 4, &[1]).unwrap());
    }
}
