//! Integral rack homology through Smith normal forms of boundary matrices.
//!
//! `∂_n(x₁,…,x_n) = Σ_{i=2}^{n} (−1)^i [(x₁,…,x̂ᵢ,…,x_n) − (xᵢ▷x₁,…,xᵢ▷x_{i−1},x_{i+1},…,x_n)]`
//! and `∂₁ = 0`. Chain bases are tuples in lexicographic order.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::{rank_and_torsion, IntMatrix};
use crate::rack::{Rack, RackOps};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl std::fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn chain_dim(x: &Rack, n: usize, caps: &Caps) -> Result<usize> {
    let dim = (x.size() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let dim = usize::try_from(dim).unwrap_or(usize::MAX);
    caps.check("chain basis", dim, caps.chain_basis)?;
    Ok(dim)
}

/// The matrix of `∂_n : ℤ[Xⁿ] → ℤ[X^{n−1}]` (rows indexed by `X^{n−1}`).
pub fn boundary_matrix(x: &Rack, n: usize, caps: &Caps) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    let cols = chain_dim(x, n, caps)?;
    let rows = chain_dim(x, n - 1, caps)?;
    if n == 1 {
        return Ok(IntMatrix::zeros(rows, cols));
    }
    let size = x.size();
    let mut triplets = Vec::with_capacity(cols * 2 * (n - 1));
    let mut tuple = vec![0usize; n];
    let encode = |it: &mut dyn Iterator<Item = usize>| it.fold(0usize, |acc, v| acc * size + v);
    for col in 0..cols {
        let mut c = col;
        for slot in tuple.iter_mut().rev() {
            *slot = c % size;
            c /= size;
        }
        for i in 1..n {
            // Position i (0-based) is the (i+1)-th entry, sign (−1)^{i+1}.
            let sign: i64 = if i % 2 == 1 { 1 } else { -1 };
            let face = encode(&mut (0..n).filter(|&k| k != i).map(|k| tuple[k]));
            let xi = tuple[i];
            let moved = encode(&mut (0..n).filter(|&k| k != i).map(|k| if k < i { x.op(xi, tuple[k]) } else { tuple[k] }));
            if face != moved {
                triplets.push((face, col, sign));
                triplets.push((moved, col, -sign));
            }
        }
    }
    Ok(IntMatrix::from_triplets(rows, cols, triplets))
}

fn to_u64(d: &crate::linalg::Int) -> Result<u64> {
    d.to_i64()
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::invalid("torsion coefficient exceeds 64 bits"))
}

/// `H_n(X, ℤ) = ker ∂_n / im ∂_{n+1}`.
pub fn rack_homology(x: &Rack, n: usize, caps: &Caps) -> Result<HomologyResult> {
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    if n <= 2 {
        caps.check("homology rack", x.size(), caps.homology_rack)?;
    }
    let dim = chain_dim(x, n, caps)?;
    let (rank_n, _) = rank_and_torsion(&boundary_matrix(x, n, caps)?);
    let (rank_next, divisors) = rank_and_torsion(&boundary_matrix(x, n + 1, caps)?);
    let torsion = divisors.iter().filter(|d| !d.is_unit()).map(to_u64).collect::<Result<Vec<_>>>()?;
    Ok(HomologyResult { degree: n, betti: dim - rank_n - rank_next, torsion })
}

/// `Hom(H₂, ℤ/m)` as a list of cyclic orders (trivial factors dropped).
pub fn h2_dual(h2: &HomologyResult, m: u64) -> Vec<u64> {
    if m <= 1 {
        return Vec::new();
    }
    let mut out = vec![m; h2.betti];
    out.extend(h2.torsion.iter().map(|&d| d.gcd(&m)).filter(|&g| g > 1));
    out.sort_unstable();
    out
}

/// Order of a finite abelian group given by cyclic orders.
pub fn group_order(cyclic: &[u64]) -> u128 {
    cyclic.iter().map(|&c| c as u128).product()
}
