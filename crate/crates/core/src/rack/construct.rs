use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{Rack, RackOps};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::{Field, GroupAutomorphism, PermGroup, Permutation};

/// The conjugacy class of `x` in `g`, with `a ▷ b = a b a⁻¹`.
pub fn from_conjugacy_class(g: &PermGroup, x: &Permutation, caps: &Caps) -> Result<Rack> {
    let class = g.conjugacy_class(x)?;
    caps.check("conjugacy-class rack", class.len(), caps.rack_size)?;
    let index: FxHashMap<&Permutation, u32> = class.iter().zip(0u32..).collect();
    let n = class.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &class {
        for b in &class {
            table.push(index[&Permutation::conjugate_unchecked(a, b)]);
        }
    }
    let labels = class.iter().map(|p| p.to_string()).collect();
    Rack::from_flat(n, table, labels, format!("conj({x})"))
}

/// The twisted class of `x`: its orbit under `g ⇀ y = g y u(g)⁻¹`, with
/// `y ▷ z = y u(z y⁻¹)`.
pub fn from_twisted_class(g: &PermGroup, u: &GroupAutomorphism, x: &Permutation, caps: &Caps) -> Result<Rack> {
    if u.domain().order() != g.order() || u.domain().elements() != g.elements() {
        return Err(Error::InvalidAutomorphism("automorphism of a different group".into()));
    }
    let idx = |p: &Permutation| g.index_of(p).ok_or_else(|| Error::NotMember(p.to_string()));
    let elems = g.elements();
    let x_i = idx(x)?;
    let mut orbit = vec![x_i];
    let mut pos: FxHashMap<usize, u32> = FxHashMap::default();
    pos.insert(x_i, 0);
    let gens_inv: Vec<(Permutation, Permutation)> = g
        .generators()
        .iter()
        .map(|h| {
            let ug_inv = elems[u.apply_index(idx(h)?)].inverse();
            Ok((h.clone(), ug_inv))
        })
        .collect::<Result<_>>()?;
    let mut head = 0;
    while head < orbit.len() {
        let y = &elems[orbit[head]];
        head += 1;
        for (h, ug_inv) in &gens_inv {
            let z = idx(&h.compose_unchecked(y).compose_unchecked(ug_inv))?;
            if !pos.contains_key(&z) {
                caps.check("twisted-class rack", orbit.len() + 1, caps.rack_size)?;
                pos.insert(z, orbit.len() as u32);
                orbit.push(z);
            }
        }
    }
    let n = orbit.len();
    let mut table = Vec::with_capacity(n * n);
    for &a in &orbit {
        let ya = &elems[a];
        let ya_inv = ya.inverse();
        for &b in &orbit {
            let zy = idx(&elems[b].compose_unchecked(&ya_inv))?;
            let w = ya.compose_unchecked(&elems[u.apply_index(zy)]);
            let wi = idx(&w)?;
            let p = *pos
                .get(&wi)
                .ok_or_else(|| Error::InvalidAutomorphism("twisted orbit not closed under ▷".into()))?;
            table.push(p);
        }
    }
    let labels = orbit.iter().map(|&i| elems[i].to_string()).collect();
    Rack::from_flat(n, table, labels, format!("twisted({x})"))
}

/// Data of an affine rack `x ▷ y = (1 − T)x + Ty`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AffineSpec {
    /// ℤ/m with T = multiplication by t.
    Cyclic { m: u64, t: i64 },
    /// ℤ/m₁ × … × ℤ/m_d with an integer matrix acting on column vectors.
    Module { moduli: Vec<u64>, matrix: Vec<Vec<i64>> },
    /// 𝔽_q with T = multiplication by the field element `a` (integer code).
    Field { q: u64, a: i64 },
}

pub fn affine(spec: &AffineSpec, caps: &Caps) -> Result<Rack> {
    match spec {
        AffineSpec::Cyclic { m, t } => affine_module(&[*m], &[vec![*t]], caps, format!("affine(Z/{m},{t})")),
        AffineSpec::Module { moduli, matrix } => {
            affine_module(moduli, matrix, caps, format!("affine({moduli:?},{matrix:?})"))
        }
        AffineSpec::Field { q, a } => {
            let f = Field::new(*q)?;
            let a = f.element(*a)?;
            if a == 0 {
                return Err(Error::SingularMatrix);
            }
            let n = f.order() as usize;
            caps.check("affine rack", n, caps.rack_size)?;
            let one_minus_a = f.sub(1, a);
            let mut table = Vec::with_capacity(n * n);
            for x in 0..n as u32 {
                for y in 0..n as u32 {
                    table.push(f.add(f.mul(one_minus_a, x), f.mul(a, y)));
                }
            }
            let labels = (0..n).map(|i| i.to_string()).collect();
            Rack::from_flat(n, table, labels, format!("affine(F_{q},{a})"))
        }
    }
}

fn affine_module(moduli: &[u64], matrix: &[Vec<i64>], caps: &Caps, provenance: String) -> Result<Rack> {
    let d = moduli.len();
    if d == 0 || matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
        return Err(Error::invalid("affine matrix must be square and match the moduli"));
    }
    if moduli.iter().any(|&m| m == 0) {
        return Err(Error::invalid("moduli must be positive"));
    }
    // T must be well defined on ⊕ ℤ/m_i: m_j · T_ij ≡ 0 (mod m_i).
    for i in 0..d {
        for j in 0..d {
            if (moduli[j] as i128 * matrix[i][j] as i128).rem_euclid(moduli[i] as i128) != 0 {
                return Err(Error::invalid(format!("matrix entry ({i},{j}) is not a well-defined map")));
            }
        }
    }
    let n = moduli.iter().try_fold(1usize, |acc, &m| acc.checked_mul(m as usize));
    let n = n.ok_or_else(|| Error::invalid("module too large"))?;
    caps.check("affine rack", n, caps.rack_size)?;
    let decode = |mut code: usize| -> Vec<i64> {
        let mut v = vec![0i64; d];
        for i in (0..d).rev() {
            v[i] = (code % moduli[i] as usize) as i64;
            code /= moduli[i] as usize;
        }
        v
    };
    let encode = |v: &[i64]| -> usize {
        v.iter()
            .zip(moduli)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x.rem_euclid(m as i64) as usize)
    };
    let apply = |a: &[Vec<i64>], v: &[i64]| -> Vec<i64> {
        (0..d)
            .map(|i| {
                let s: i128 = (0..d).map(|j| a[i][j] as i128 * v[j] as i128).sum();
                s.rem_euclid(moduli[i] as i128) as i64
            })
            .collect()
    };
    let one_minus: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| (i == j) as i64 - matrix[i][j]).collect())
        .collect();
    let elems: Vec<Vec<i64>> = (0..n).map(decode).collect();
    let ty: Vec<usize> = elems.iter().map(|v| encode(&apply(matrix, v))).collect();
    let mut seen = vec![false; n];
    for &t in &ty {
        if std::mem::replace(&mut seen[t], true) {
            return Err(Error::SingularMatrix);
        }
    }
    let ty_vecs: Vec<Vec<i64>> = ty.iter().map(|&t| decode(t)).collect();
    let mut table = Vec::with_capacity(n * n);
    for x in &elems {
        let ux = apply(&one_minus, x);
        for tyv in &ty_vecs {
            let s: Vec<i64> = ux.iter().zip(tyv).map(|(a, b)| a + b).collect();
            table.push(encode(&s) as u32);
        }
    }
    let labels = elems
        .iter()
        .map(|v| {
            if d == 1 {
                v[0].to_string()
            } else {
                format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
        })
        .collect();
    Rack::from_flat(n, table, labels, provenance)
}

/// `X^[j]`: the same set with `x ▷ y = φ_x^j(y)`.
pub fn power_rack(x: &Rack, j: i64) -> Result<Rack> {
    let n = x.size();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        table.extend_from_slice(x.translation(a).pow(j).images());
    }
    Rack::from_flat(n, table, x.labels().to_vec(), format!("power({},{j})", x.provenance()))
}

/// The componentwise product, element `(a, b)` at index `a·|Z| + b`.
pub fn product(x: &Rack, z: &Rack, caps: &Caps) -> Result<Rack> {
    let (n, m) = (x.size(), z.size());
    caps.check("product rack", n * m, caps.rack_size)?;
    let mut table = Vec::with_capacity(n * m * n * m);
    for a in 0..n {
        for b in 0..m {
            for c in 0..n {
                for d in 0..m {
                    table.push((x.op(a, c) * m + z.op(b, d)) as u32);
                }
            }
        }
    }
    let labels = if x.labels().is_empty() && z.labels().is_empty() {
        Vec::new()
    } else {
        (0..n)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", x.label(a), z.label(b)))
            .collect()
    };
    Rack::from_flat(n * m, table, labels, format!("product({},{})", x.provenance(), z.provenance()))
}

/// `X ⊔ Z` where elements of different parts act trivially on each other.
pub fn disjoint_union(x: &Rack, z: &Rack, caps: &Caps) -> Result<Rack> {
    let (n, m) = (x.size(), z.size());
    caps.check("union rack", n + m, caps.rack_size)?;
    let s = n + m;
    let mut table = Vec::with_capacity(s * s);
    for a in 0..s {
        for b in 0..s {
            let v = match (a < n, b < n) {
                (true, true) => x.op(a, b),
                (false, false) => n + z.op(a - n, b - n),
                _ => b,
            };
            table.push(v as u32);
        }
    }
    let labels = if x.labels().is_empty() && z.labels().is_empty() {
        Vec::new()
    } else {
        (0..n).map(|a| x.label(a)).chain((0..m).map(|b| z.label(b))).collect()
    };
    Rack::from_flat(s, table, labels, format!("union({},{})", x.provenance(), z.provenance()))
}

/// The trivial rack `x ▷ y = y` on `n` points.
pub fn trivial_rack(n: usize) -> Rack {
    let table = (0..n).flat_map(|_| 0..n as u32).collect();
    Rack::from_trusted(n, table, Vec::new(), format!("trivial({n})"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{alternating_group, symmetric_group};
    use crate::rack::is_isomorphic;

    fn caps() -> Caps {
        Caps::default()
    }

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn class_racks() {
        let s3 = symmetric_group(3).unwrap();
        let x = from_conjugacy_class(&s3, &p("(0 1)", 3), &caps()).unwrap();
        assert_eq!(x.size(), 3);
        let d3 = affine(&AffineSpec::Cyclic { m: 3, t: -1 }, &caps()).unwrap();
        assert!(is_isomorphic(&x, &d3, &caps()).unwrap().is_some());
        let a4 = alternating_group(4).unwrap();
        let t = from_conjugacy_class(&a4, &p("(0 1 2)", 4), &caps()).unwrap();
        assert_eq!(t.size(), 4);
        assert!(t.is_indecomposable());
        let e = from_conjugacy_class(&s3, &p("()", 3), &caps()).unwrap();
        assert_eq!(e.size(), 1);
    }

    #[test]
    fn twisted_class_matches_odd_class() {
        let a4 = std::sync::Arc::new(alternating_group(4).unwrap());
        let u = GroupAutomorphism::from_conjugator(a4.clone(), &p("(0 1)", 4)).unwrap();
        let tw = from_twisted_class(&a4, &u, &p("(0 1)(2 3)", 4), &caps()).unwrap();
        let s4 = symmetric_group(4).unwrap();
        let cl = from_conjugacy_class(&s4, &p("(2 3)", 4), &caps()).unwrap();
        assert_eq!(tw.size(), 6);
        assert!(is_isomorphic(&tw, &cl, &caps()).unwrap().is_some());

        let id = GroupAutomorphism::identity(a4.clone());
        let plain = from_twisted_class(&a4, &id, &p("(0 1 2)", 4), &caps()).unwrap();
        let class = from_conjugacy_class(&a4, &p("(0 1 2)", 4), &caps()).unwrap();
        assert_eq!(plain.table(), class.table());
        assert_eq!(from_twisted_class(&a4, &id, &p("()", 4), &caps()).unwrap().size(), 1);
    }

    #[test]
    fn affine_racks() {
        let q5 = affine(&AffineSpec::Cyclic { m: 5, t: 2 }, &caps()).unwrap();
        assert_eq!(q5.op(0, 1), 2);
        let f4 = affine(&AffineSpec::Field { q: 4, a: 2 }, &caps()).unwrap();
        assert_eq!(f4.size(), 4);
        assert!(f4.is_indecomposable());
        assert!(matches!(
            affine(&AffineSpec::Cyclic { m: 4, t: 2 }, &caps()),
            Err(Error::SingularMatrix)
        ));
        let m = affine(
            &AffineSpec::Module { moduli: vec![3, 3], matrix: vec![vec![0, -1], vec![1, -1]] },
            &caps(),
        )
        .unwrap();
        assert_eq!(m.size(), 9);
    }

    #[test]
    fn power_racks() {
        let q5 = affine(&AffineSpec::Cyclic { m: 5, t: 2 }, &caps()).unwrap();
        assert_eq!(power_rack(&q5, 1).unwrap().table(), q5.table());
        let q3 = affine(&AffineSpec::Cyclic { m: 5, t: 3 }, &caps()).unwrap();
        assert_eq!(power_rack(&q5, -1).unwrap().table(), q3.table());
        let d3 = affine(&AffineSpec::Cyclic { m: 3, t: -1 }, &caps()).unwrap();
        assert_eq!(power_rack(&d3, -1).unwrap().table(), d3.table());
        for (j, k) in [(2, 3), (-1, 2), (3, -2)] {
            let lhs = power_rack(&power_rack(&q5, j).unwrap(), k).unwrap();
            assert_eq!(lhs.table(), power_rack(&q5, j * k).unwrap().table());
        }
    }

    #[test]
    fn products_and_unions() {
        let d3 = affine(&AffineSpec::Cyclic { m: 3, t: -1 }, &caps()).unwrap();
        let pr = product(&d3, &d3, &caps()).unwrap();
        assert_eq!(pr.size(), 9);
        let one = trivial_rack(1);
        assert!(is_isomorphic(&product(&one, &d3, &caps()).unwrap(), &d3, &caps()).unwrap().is_some());
        let u = disjoint_union(&d3, &d3, &caps()).unwrap();
        assert_eq!(u.orbit_decomposition().len(), 2);
        assert_eq!(u.defect_rank(), 2);
        let dec = product(&u, &d3, &caps()).unwrap();
        assert!(dec.orbit_decomposition().len() >= 2);
    }

    #[test]
    fn inner_groups() {
        let s4 = symmetric_group(4).unwrap();
        let o42 = from_conjugacy_class(&s4, &p("(0 1)", 4), &caps()).unwrap();
        assert_eq!(o42.inner_group(&caps()).unwrap().order(), 24);
        let s5 = symmetric_group(5).unwrap();
        let o52 = from_conjugacy_class(&s5, &p("(0 1)", 5), &caps()).unwrap();
        assert_eq!(o52.inner_group(&caps()).unwrap().order(), 120);
        assert_eq!(trivial_rack(3).inner_group(&caps()).unwrap().order(), 1);
        assert_eq!(trivial_rack(1).defect_rank(), 1);
    }
}
