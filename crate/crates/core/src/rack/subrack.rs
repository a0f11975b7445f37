use std::collections::BTreeSet;

use super::{Rack, RackOps};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// A subrack of `parent` given by its sorted members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubrackHandle<'a> {
    pub parent: &'a Rack,
    pub members: Vec<usize>,
}

impl SubrackHandle<'_> {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_rack(&self) -> Result<Rack> {
        self.parent.restrict(&self.members)
    }
}

/// `⟪S⟫`: the closure of `seeds` under `▷` and `▷⁻¹`, sorted.
pub fn subrack_closure<R: RackOps + ?Sized>(x: &R, seeds: &[usize]) -> Vec<usize> {
    let n = x.len();
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    for &s in seeds {
        if !std::mem::replace(&mut inside[s], true) {
            members.push(s);
        }
    }
    // Every new element is combined with every earlier one, both ways round.
    let mut head = 0;
    while head < members.len() {
        let a = members[head];
        let mut k = 0;
        while k <= head {
            let b = members[k];
            for c in [x.op(a, b), x.op(b, a), x.op_inv(a, b), x.op_inv(b, a)] {
                if !inside[c] {
                    inside[c] = true;
                    members.push(c);
                }
            }
            k += 1;
        }
        head += 1;
    }
    members.sort_unstable();
    members
}

/// All subracks with at most `max_size` elements, by size then members.
pub fn enumerate_subracks<'a>(x: &'a Rack, max_size: usize, caps: &Caps) -> Result<Vec<SubrackHandle<'a>>> {
    let n = x.size();
    caps.check("exhaustive subrack enumeration", n, caps.subrack_exhaustive.min(63))?;
    let to_mask = |m: &[usize]| m.iter().fold(0u64, |acc, &i| acc | 1 << i);
    let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let mut seen: rustc_hash::FxHashSet<u64> = Default::default();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        let c = subrack_closure(x, &[s]);
        if seen.insert(to_mask(&c)) {
            frontier.push(c);
        }
    }
    while let Some(y) = frontier.pop() {
        if y.len() > max_size {
            continue;
        }
        for z in 0..n {
            if y.binary_search(&z).is_ok() {
                continue;
            }
            let mut seeds = y.clone();
            seeds.push(z);
            let c = subrack_closure(x, &seeds);
            if seen.insert(to_mask(&c)) {
                frontier.push(c);
            }
        }
        found.insert((y.len(), y));
    }
    Ok(found
        .into_iter()
        .map(|(_, members)| SubrackHandle { parent: x, members })
        .collect())
}

/// Maximal sets of pairwise commuting elements (`x ▷ y = y`, `y ▷ x = x`).
pub fn abelian_subracks<R: RackOps + ?Sized>(x: &R, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let n = x.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| b != a && x.op(a, b) == b && x.op(b, a) == a)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(&adj, &mut r, (0..n).collect(), Vec::new(), &mut out, caps.clique_count)?;
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    adj: &[Vec<usize>],
    r: &mut Vec<usize>,
    p: Vec<usize>,
    mut x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if p.is_empty() && x.is_empty() {
        if out.len() >= cap {
            return Err(Error::CapExceeded { what: "maximal abelian subracks", size: out.len() + 1, cap });
        }
        out.push(r.clone());
        return Ok(());
    }
    let nbr = |v: usize, set: &[usize]| -> Vec<usize> {
        set.iter().copied().filter(|w| adj[v].binary_search(w).is_ok()).collect()
    };
    let pivot = p
        .iter()
        .chain(&x)
        .copied()
        .max_by_key(|&u| nbr(u, &p).len())
        .expect("nonempty");
    let mut p = p;
    let candidates: Vec<usize> = p.iter().copied().filter(|v| adj[pivot].binary_search(v).is_err()).collect();
    for v in candidates {
        r.push(v);
        bron_kerbosch(adj, r, nbr(v, &p), nbr(v, &x), out, cap)?;
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
    Ok(())
}
