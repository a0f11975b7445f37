//! Scalar 2-cocycles with values in the m-th roots of unity, stored as
//! exponents: `q_{x,y} = ζ_m^{e[x][y]}`.

use std::sync::OnceLock;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::zmod::{self, SparseRow};
use crate::perm::{matrix_group_to_perm, Action, Field, FqMatrix, Permutation};
use crate::rack::{power_rack, Rack, RackOps};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarCocycle {
    pub m: u64,
    pub exponents: Vec<Vec<u64>>,
}

impl ScalarCocycle {
    pub fn new(m: u64, exponents: Vec<Vec<u64>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("root order must be positive"));
        }
        let n = exponents.len();
        if exponents.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("exponent array must be square"));
        }
        Ok(ScalarCocycle { m, exponents: exponents.into_iter().map(|r| r.into_iter().map(|e| e % m).collect()).collect() })
    }

    pub fn constant(n: usize, m: u64, e: u64) -> Self {
        ScalarCocycle { m, exponents: vec![vec![e % m; n]; n] }
    }

    pub fn size(&self) -> usize {
        self.exponents.len()
    }

    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.exponents[x][y]
    }

    fn check_rack(&self, x: &Rack) -> Result<()> {
        if self.size() != x.size() {
            return Err(Error::DegreeMismatch(self.size(), x.size()));
        }
        Ok(())
    }
}

/// A triple where the cocycle law fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// `q_{x,y▷z} q_{y,z} = q_{x▷y,x▷z} q_{x,z}` for all triples.
pub fn is_cocycle(x: &Rack, q: &ScalarCocycle) -> Result<std::result::Result<(), Violation>> {
    q.check_rack(x)?;
    let (n, m) = (x.size(), q.m);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = (q.get(a, x.op(b, c)) + q.get(b, c)) % m;
                let rhs = (q.get(x.op(a, b), x.op(a, c)) + q.get(a, c)) % m;
                if lhs != rhs {
                    return Ok(Err(Violation { x: a, y: b, z: c }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// An abelian group `⊕ ℤ/dᵢ`, factors listed in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    /// Drops `copies` factors equal to `m`: the part of `H²(X, ℤ/m)` left
    /// after removing the contribution of the free part of `H₂`.
    pub fn without_free(&self, m: u64, copies: usize) -> Option<AbelianGroup> {
        let mut factors = self.factors.clone();
        for _ in 0..copies {
            let i = factors.iter().rposition(|&d| d == m)?;
            factors.remove(i);
        }
        Some(AbelianGroup { factors })
    }

    fn from_prime_profile(p: u64, counts: &[u64]) -> Vec<u64> {
        // counts[j-1] = number of cyclic factors of order ≥ p^j.
        let mut out = Vec::new();
        for j in 1..=counts.len() {
            let at_least = counts[j - 1];
            let next = counts.get(j).copied().unwrap_or(0);
            for _ in next..at_least {
                out.push(p.pow(j as u32));
            }
        }
        out
    }

    /// Combines primary components into invariant factors.
    fn from_primary(mut parts: Vec<Vec<u64>>) -> Self {
        for part in &mut parts {
            part.sort_unstable_by(|a, b| b.cmp(a));
        }
        let len = parts.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors: Vec<u64> =
            (0..len).map(|i| parts.iter().map(|part| part.get(i).copied().unwrap_or(1)).product()).collect();
        factors.sort_unstable();
        AbelianGroup { factors }
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleSpace {
    pub m: u64,
    pub z2: AbelianGroup,
    pub b2: AbelianGroup,
    pub h2: AbelianGroup,
    /// Cocycles whose classes generate H² (empty unless m is squarefree).
    pub representatives: Vec<ScalarCocycle>,
}

fn cocycle_rows(x: &Rack, modulus: u64) -> Vec<SparseRow> {
    let n = x.size();
    let var = |a: usize, b: usize| (a * n + b) as u32;
    let mut rows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut acc: FxHashMap<u32, i64> = FxHashMap::default();
                *acc.entry(var(a, x.op(b, c))).or_default() += 1;
                *acc.entry(var(b, c)).or_default() += 1;
                *acc.entry(var(x.op(a, b), x.op(a, c))).or_default() -= 1;
                *acc.entry(var(a, c)).or_default() -= 1;
                let mut row: SparseRow = acc
                    .into_iter()
                    .filter(|e| e.1 != 0)
                    .map(|(c, v)| (c, v.rem_euclid(modulus as i64) as u64))
                    .filter(|e| e.1 != 0)
                    .collect();
                if !row.is_empty() {
                    row.sort_unstable();
                    rows.push(row);
                }
            }
        }
    }
    rows.sort_unstable();
    rows.dedup();
    rows
}

/// Rows of the coboundary `δγ(x,y) = γ(y) − γ(x▷y)`, one per pair.
fn coboundary_rows(x: &Rack, modulus: u64) -> Vec<SparseRow> {
    let n = x.size();
    let mut rows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let c = x.op(a, b);
            if c != b {
                let mut row = vec![(b as u32, 1), (c as u32, modulus - 1)];
                row.sort_unstable();
                rows.push(row);
            }
        }
    }
    rows
}

fn coboundary(x: &Rack, gamma: &[u64], m: u64) -> Vec<Vec<u64>> {
    let n = x.size();
    (0..n).map(|a| (0..n).map(|b| (gamma[b] + m - gamma[x.op(a, b)]) % m).collect()).collect()
}

/// `Z²`, `B²` and `H² = Z²/B²` over ℤ/m. Each prime power `p^k ∥ m` is
/// solved separately; the sizes over ℤ/p^j for `j ≤ k` determine the
/// p-primary structure.
pub fn cocycle_space(x: &Rack, m: u64, caps: &Caps) -> Result<CocycleSpace> {
    caps.check("cocycle rack", x.size(), caps.cocycle_rack)?;
    if m == 0 {
        return Err(Error::invalid("root order must be positive"));
    }
    let n = x.size();
    let (mut z_parts, mut b_parts, mut h_parts) = (Vec::new(), Vec::new(), Vec::new());
    for (p, k) in zmod::factor(m) {
        let pk = p.pow(k);
        let z = zmod::eliminate(cocycle_rows(x, pk), n * n, p, k);
        let d = zmod::eliminate(coboundary_rows(x, pk), n, p, k);
        let z_log: Vec<u64> = (1..=k).map(|j| z.kernel_log_size(j)).collect();
        let b_log: Vec<u64> = (1..=k).map(|j| j as u64 * n as u64 - d.kernel_log_size(j)).collect();
        let diff = |logs: &[u64]| -> Vec<u64> { (0..logs.len()).map(|i| logs[i] - if i == 0 { 0 } else { logs[i - 1] }).collect() };
        let h_log: Vec<u64> = z_log.iter().zip(&b_log).map(|(a, b)| a - b).collect();
        z_parts.push(AbelianGroup::from_prime_profile(p, &diff(&z_log)));
        b_parts.push(AbelianGroup::from_prime_profile(p, &diff(&b_log)));
        h_parts.push(AbelianGroup::from_prime_profile(p, &diff(&h_log)));
    }
    let representatives = if zmod::factor(m).iter().all(|&(_, k)| k == 1) {
        representatives(x, m)?
    } else {
        Vec::new()
    };
    Ok(CocycleSpace {
        m,
        z2: AbelianGroup::from_primary(z_parts),
        b2: AbelianGroup::from_primary(b_parts),
        h2: AbelianGroup::from_primary(h_parts),
        representatives,
    })
}

/// Incremental row echelon form over 𝔽_p.
struct Echelon {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    fn reduce(&self, v: &mut [u64]) {
        let p = self.p;
        for (c, row) in &self.rows {
            let f = v[*c];
            if f != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a = (*a + (p - f) * b) % p;
                }
            }
        }
    }

    /// Adds `v` if independent; returns whether it was.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&e| e != 0) else { return false };
        let inv = zmod::inv_mod(v[c], self.p).expect("prime field");
        for e in v.iter_mut() {
            *e = *e * inv % self.p;
        }
        for (_, row) in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                for (a, b) in row.iter_mut().zip(&v) {
                    *a = (*a + (self.p - f) * b) % self.p;
                }
            }
        }
        self.rows.push((c, v));
        true
    }
}

fn representatives(x: &Rack, m: u64) -> Result<Vec<ScalarCocycle>> {
    let n = x.size();
    let mut out = Vec::new();
    for (p, _) in zmod::factor(m) {
        let z = zmod::eliminate(cocycle_rows(x, p), n * n, p, 1);
        let mut ech = Echelon { p, rows: Vec::new() };
        for y in 0..n {
            let mut gamma = vec![0u64; n];
            gamma[y] = 1;
            ech.insert(coboundary(x, &gamma, p).concat());
        }
        let scale = m / p;
        for v in z.kernel_basis(p) {
            if ech.insert(v.clone()) {
                let e = v.chunks(n).map(|r| r.iter().map(|&a| a * scale % m).collect()).collect();
                out.push(ScalarCocycle { m, exponents: e });
            }
        }
    }
    Ok(out)
}

/// `q̃_{ij} = γ_{i▷j}^{-1} q_{ij} γ_j`.
pub fn gauge_transform(x: &Rack, q: &ScalarCocycle, gamma: &[u64]) -> Result<ScalarCocycle> {
    q.check_rack(x)?;
    if gamma.len() != x.size() {
        return Err(Error::DegreeMismatch(gamma.len(), x.size()));
    }
    let m = q.m;
    let g: Vec<u64> = gamma.iter().map(|e| e % m).collect();
    let d = coboundary(x, &g, m);
    let exponents = (0..x.size()).map(|a| (0..x.size()).map(|b| (q.get(a, b) + d[a][b]) % m).collect()).collect();
    Ok(ScalarCocycle { m, exponents })
}

/// Solves `q'_{ij} − q_{ij} = γ_j − γ_{i▷j}` by propagating along the
/// edges `j → i▷j`; each inner orbit is a connected component, so the
/// system is solvable iff propagation meets no contradiction.
pub fn are_gauge_equivalent(x: &Rack, q: &ScalarCocycle, q2: &ScalarCocycle) -> Result<Option<Vec<u64>>> {
    q.check_rack(x)?;
    q2.check_rack(x)?;
    if q.m != q2.m {
        return Err(Error::invalid("cocycles use different root orders"));
    }
    let (n, m) = (x.size(), q.m);
    let mut gamma: Vec<Option<u64>> = vec![None; n];
    for root in 0..n {
        if gamma[root].is_some() {
            continue;
        }
        gamma[root] = Some(0);
        let mut stack = vec![root];
        while let Some(b) = stack.pop() {
            let gb = gamma[b].unwrap();
            for a in 0..n {
                let c = x.op(a, b);
                let d = (q2.get(a, b) + m - q.get(a, b)) % m;
                let want = (gb + m - d) % m;
                match gamma[c] {
                    None => {
                        gamma[c] = Some(want);
                        stack.push(c);
                    }
                    Some(v) if v != want => return Ok(None),
                    _ => {}
                }
            }
        }
    }
    let gamma: Vec<u64> = gamma.into_iter().map(|g| g.unwrap()).collect();
    debug_assert_eq!(&gauge_transform(x, q, &gamma)?, q2);
    Ok(Some(gamma))
}

/// `χ(σ, τ) = ±1` on the transpositions of `S_m`, `+1` iff `σ(i) < σ(j)` for `τ = (i j)`, `i < j`.
pub fn chi_cocycle(x: &Rack, degree: usize) -> Result<ScalarCocycle> {
    let perms = perm_labels(x, degree)?;
    let mut exponents = vec![vec![0u64; x.size()]; x.size()];
    for (a, s) in perms.iter().enumerate() {
        for (b, t) in perms.iter().enumerate() {
            let moved: Vec<usize> = (0..degree).filter(|&i| t.apply(i) != i).collect();
            if moved.len() != 2 || t.order() != 2 {
                return Err(Error::invalid(format!("{t} is not a transposition")));
            }
            let (i, j) = (moved[0], moved[1]);
            exponents[a][b] = u64::from(s.apply(i) > s.apply(j));
        }
    }
    Ok(ScalarCocycle { m: 2, exponents })
}

fn perm_labels(x: &Rack, degree: usize) -> Result<Vec<Permutation>> {
    if x.labels().len() != x.size() {
        return Err(Error::invalid("rack has no permutation labels"));
    }
    x.labels().iter().map(|l| Permutation::parse(l, degree)).collect()
}

/// `φ(x,z)φ(x▷y,x▷z)φ(x▷(y▷z),x)φ(y▷z,y) = φ(y,z)φ(x,y▷z)φ(x▷(y▷z),x▷y)φ(x▷z,x)`.
pub fn twist_condition(x: &Rack, phi: &ScalarCocycle) -> Result<std::result::Result<(), Violation>> {
    phi.check_rack(x)?;
    let (n, m) = (x.size(), phi.m);
    let f = |a: usize, b: usize| phi.get(a, b);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let bc = x.op(b, c);
                let abc = x.op(a, bc);
                let (ab, ac) = (x.op(a, b), x.op(a, c));
                let lhs = f(a, c) + f(ab, ac) + f(abc, a) + f(bc, b);
                let rhs = f(b, c) + f(a, bc) + f(abc, ab) + f(ac, a);
                if lhs % m != rhs % m {
                    return Ok(Err(Violation { x: a, y: b, z: c }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// `q^φ_{xy} = φ(x,y) φ(x▷y, x)^{-1} q_{xy}`.
pub fn twist(x: &Rack, q: &ScalarCocycle, phi: &ScalarCocycle) -> Result<ScalarCocycle> {
    q.check_rack(x)?;
    if phi.m != q.m {
        return Err(Error::invalid("twist and cocycle use different root orders"));
    }
    if let Err(v) = twist_condition(x, phi)? {
        return Err(Error::invalid(format!("twist condition fails at ({}, {}, {})", v.x, v.y, v.z)));
    }
    let (n, m) = (x.size(), q.m);
    let exponents = (0..n)
        .map(|a| (0..n).map(|b| (q.get(a, b) + phi.get(a, b) + m - phi.get(x.op(a, b), a)) % m).collect())
        .collect();
    Ok(ScalarCocycle { m, exponents })
}

/// The exponent matrix `(q_{ij})_{i,j∈S}` on an abelian subrack.
pub fn diagonal_braiding(x: &Rack, q: &ScalarCocycle, s: &[usize]) -> Result<Vec<Vec<u64>>> {
    q.check_rack(x)?;
    for &a in s {
        for &b in s {
            if a >= x.size() || b >= x.size() {
                return Err(Error::invalid("subrack index out of range"));
            }
            if x.op(a, b) != b {
                return Err(Error::invalid(format!("{a} and {b} do not commute")));
            }
        }
    }
    Ok(s.iter().map(|&a| s.iter().map(|&b| q.get(a, b)).collect()).collect())
}

/// `(X^{[−1]}, q̂)` with `q̂_{x,y} = q_{x, x▷^{-1}y}`.
pub fn dual_cocycle(x: &Rack, q: &ScalarCocycle) -> Result<(Rack, ScalarCocycle)> {
    q.check_rack(x)?;
    let dual = power_rack(x, -1)?;
    let n = x.size();
    let exponents = (0..n).map(|a| (0..n).map(|b| q.get(a, x.op_inv(a, b))).collect()).collect();
    Ok((dual, ScalarCocycle { m: q.m, exponents }))
}

struct SchurTable {
    cocycle: FxHashMap<(Permutation, Permutation), u64>,
}

/// The group 2-cocycle of `S₄ ≅ PGL(2,3)` obtained from the central
/// extension `GL(2,3)`: `s(a)s(b) = ±s(ab)` for the section `s` picking the
/// lexicographically least matrix over each permutation of `P¹(𝔽₃)`.
/// Returns the exponent mod 2.
pub fn s4_projective_cocycle(a: &Permutation, b: &Permutation) -> Result<u64> {
    static TABLE: OnceLock<SchurTable> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let f = Field::new(3).expect("prime field");
        let mut mats = Vec::new();
        for code in 0..81i64 {
            let e = [code % 3, code / 3 % 3, code / 9 % 3, code / 27];
            let m = FqMatrix::from_rows(&f, &[vec![e[3], e[2]], vec![e[1], e[0]]]).expect("entries in range");
            if m.det(&f) != 0 {
                mats.push(m);
            }
        }
        let perms = matrix_group_to_perm(&f, 2, &mats, Action::Projective, 16).expect("four points");
        let mut section: FxHashMap<Permutation, FqMatrix> = FxHashMap::default();
        for (p, m) in perms.iter().zip(&mats) {
            section.entry(p.clone()).or_insert_with(|| m.clone());
        }
        let minus = FqMatrix::from_rows(&f, &[vec![-1, 0], vec![0, -1]]).unwrap();
        let mut cocycle = FxHashMap::default();
        for (p, mp) in &section {
            for (r, mr) in &section {
                let pr = p.compose_unchecked(r);
                let prod = mp.mul(&f, mr);
                let e = if prod == section[&pr] {
                    0
                } else {
                    debug_assert_eq!(prod, section[&pr].mul(&f, &minus));
                    1
                };
                cocycle.insert((p.clone(), r.clone()), e);
            }
        }
        SchurTable { cocycle }
    });
    table
        .cocycle
        .get(&(a.clone(), b.clone()))
        .copied()
        .ok_or_else(|| Error::invalid("expected permutations of degree 4"))
}

/// Restriction of [`s4_projective_cocycle`] to a rack of permutations of degree 4.
pub fn s4_projective_twist(x: &Rack) -> Result<ScalarCocycle> {
    let perms = perm_labels(x, 4)?;
    let exponents = perms
        .iter()
        .map(|a| perms.iter().map(|b| s4_projective_cocycle(a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(ScalarCocycle { m: 2, exponents })
}
