//! Linear algebra over ℤ/p^k for sparse systems: invariant-factor
//! valuations and, for k = 1, kernel bases.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rustc_hash::{FxHashMap, FxHashSet};

/// A sparse row: `(column, value)` pairs with values already reduced.
pub type SparseRow = Vec<(u32, u64)>;

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

fn valuation(mut a: u64, p: u64, k: u32) -> u32 {
    let mut v = 0;
    while a % p == 0 && v < k {
        a /= p;
        v += 1;
    }
    v
}

/// Outcome of eliminating a system over ℤ/p^k.
#[derive(Clone, Debug, Default)]
pub struct Elimination {
    /// Valuations of the nonzero invariant factors (each `< k`).
    pub valuations: Vec<u32>,
    /// For k = 1: pivot column and its row scaled so the pivot is 1.
    pivots: Vec<(u32, SparseRow)>,
    ncols: usize,
}

impl Elimination {
    /// `log_p` of the kernel size over ℤ/p^j for any `j ≤ k`.
    pub fn kernel_log_size(&self, j: u32) -> u64 {
        let free = self.ncols - self.valuations.len();
        self.valuations.iter().map(|&v| v.min(j) as u64).sum::<u64>() + j as u64 * free as u64
    }

    pub fn rank(&self) -> usize {
        self.valuations.len()
    }

    /// A basis of the kernel over 𝔽_p (only available when eliminating with k = 1).
    pub fn kernel_basis(&self, p: u64) -> Vec<Vec<u64>> {
        let pivoted: FxHashSet<u32> = self.pivots.iter().map(|e| e.0).collect();
        let mut out = Vec::new();
        for f in (0..self.ncols as u32).filter(|c| !pivoted.contains(c)) {
            let mut x = vec![0u64; self.ncols];
            x[f as usize] = 1;
            for (c, row) in self.pivots.iter().rev() {
                let s = row
                    .iter()
                    .filter(|e| e.0 != *c)
                    .fold(0u64, |acc, &(j, v)| (acc + mulmod(v, x[j as usize], p)) % p);
                x[*c as usize] = (p - s) % p;
            }
            out.push(x);
        }
        out
    }
}

/// Eliminates `rows` (over `ncols` columns) modulo `p^k`. Unit pivots are
/// taken sparsely, cheapest column first; the rest uses minimal-valuation
/// pivots.
pub fn eliminate(rows: Vec<SparseRow>, ncols: usize, p: u64, k: u32) -> Elimination {
    let m = p.pow(k);
    let record = k == 1;
    let mut rows: Vec<FxHashMap<u32, u64>> = rows
        .into_iter()
        .map(|r| {
            let mut h: FxHashMap<u32, u64> = FxHashMap::default();
            for (c, v) in r {
                let e = h.entry(c).or_insert(0);
                *e = (*e + v % m) % m;
            }
            h.retain(|_, v| *v != 0);
            h
        })
        .collect();
    let mut cols: Vec<FxHashSet<u32>> = vec![FxHashSet::default(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            cols[c as usize].insert(r as u32);
        }
    }
    let mut col_alive = vec![true; ncols];
    let mut out = Elimination { ncols, ..Default::default() };
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        (0..ncols).filter(|&c| !cols[c].is_empty()).map(|c| Reverse((cols[c].len(), c as u32))).collect();

    // Removes pivot (r, c) by the Schur complement; the pivot must be a unit.
    let pivot_step = |rows: &mut Vec<FxHashMap<u32, u64>>,
                      cols: &mut Vec<FxHashSet<u32>>,
                      r: usize,
                      c: usize,
                      scale: u64|
     -> SparseRow {
        let mut prow: SparseRow = rows[r].drain().map(|(j, v)| (j, mulmod(v, scale, m))).collect();
        prow.sort_unstable_by_key(|e| e.0);
        for &(j, _) in &prow {
            cols[j as usize].remove(&(r as u32));
        }
        let pv = prow.iter().find(|e| e.0 as usize == c).expect("pivot").1;
        let targets: Vec<u32> = cols[c].iter().copied().collect();
        for i in targets {
            let i = i as usize;
            let a = rows[i][&(c as u32)];
            // row_i −= (a / pv) · prow; pv divides a.
            let f = if pv == 1 { a } else { exact_div(a, pv, p, m) };
            for &(j, v) in &prow {
                let e = rows[i].entry(j).or_insert(0);
                let was_zero = *e == 0;
                *e = (*e + m - mulmod(f, v, m)) % m;
                if *e == 0 {
                    rows[i].remove(&j);
                    if !was_zero {
                        cols[j as usize].remove(&(i as u32));
                    }
                } else if was_zero {
                    cols[j as usize].insert(i as u32);
                }
            }
        }
        prow
    };

    while let Some(Reverse((len, c))) = heap.pop() {
        let c = c as usize;
        if !col_alive[c] || cols[c].is_empty() {
            continue;
        }
        if cols[c].len() != len {
            heap.push(Reverse((cols[c].len(), c as u32)));
            continue;
        }
        let pivot_row = cols[c]
            .iter()
            .copied()
            .filter(|&r| rows[r as usize][&(c as u32)] % p != 0)
            .min_by_key(|&r| (rows[r as usize].len(), r));
        let Some(r) = pivot_row else { continue };
        let r = r as usize;
        let scale = inv_mod(rows[r][&(c as u32)], m).expect("unit");
        let prow = pivot_step(&mut rows, &mut cols, r, c, scale);
        col_alive[c] = false;
        out.valuations.push(0);
        for &(j, _) in &prow {
            if col_alive[j as usize] && !cols[j as usize].is_empty() {
                heap.push(Reverse((cols[j as usize].len(), j)));
            }
        }
        if record {
            out.pivots.push((c as u32, prow));
        }
    }

    // Dense phase: no unit entries remain.
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            for (&c, &v) in row {
                let val = valuation(v, p, k);
                if best.map_or(true, |b| (val, r, c as usize) < b) {
                    best = Some((val, r, c as usize));
                }
            }
        }
        let Some((v, r, c)) = best else { break };
        let unit = rows[r][&(c as u32)] / p.pow(v);
        let scale = inv_mod(unit % m, m).expect("unit part");
        let prow = pivot_step(&mut rows, &mut cols, r, c, scale);
        // Column operations clear the rest of the pivot row; they do not
        // touch other rows because column c is now zero elsewhere.
        let _ = prow;
        col_alive[c] = false;
        out.valuations.push(v);
    }
    out
}

/// `a / b` in ℤ/p^k when `v_p(b) ≤ v_p(a)`.
fn exact_div(a: u64, b: u64, p: u64, m: u64) -> u64 {
    let mut a = a;
    let mut b = b;
    let mut mm = m;
    while b % p == 0 {
        b /= p;
        a /= p;
        mm /= p;
    }
    mulmod(a % mm, inv_mod(b % mm, mm).unwrap_or(0), mm)
}

/// Factorization into prime powers.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
