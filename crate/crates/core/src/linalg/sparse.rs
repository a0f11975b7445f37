use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rustc_hash::{FxHashMap, FxHashSet};

use super::Int;

/// A sparse integer matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, Int)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Accumulates `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut acc: Vec<FxHashMap<u32, i64>> = vec![FxHashMap::default(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) out of range");
            *acc[r].entry(c as u32).or_insert(0) += v;
        }
        let data = acc
            .into_iter()
            .map(|m| {
                let mut row: Vec<(u32, Int)> = m.into_iter().filter(|&(_, v)| v != 0).map(|(c, v)| (c, Int::from(v))).collect();
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect();
        IntMatrix { rows, cols, data }
    }

    pub fn from_dense(a: &[Vec<i64>]) -> Self {
        let cols = a.first().map_or(0, |r| r.len());
        IntMatrix::from_triplets(
            a.len(),
            cols,
            a.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, r: usize) -> &[(u32, Int)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Int {
        self.data[r]
            .binary_search_by_key(&(c as u32), |e| e.0)
            .map_or(Int::ZERO, |i| self.data[r][i].1.clone())
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut out = vec![vec![Int::ZERO; self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[r][*c as usize] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c as usize].push((r as u32, v.clone()));
            }
        }
        IntMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// `self · other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: FxHashMap<u32, Int> = FxHashMap::default();
                for (k, a) in row {
                    for (c, b) in &other.data[*k as usize] {
                        let e = acc.entry(*c).or_insert(Int::ZERO);
                        *e = &*e + &(a * b);
                    }
                }
                let mut out: Vec<(u32, Int)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                out.sort_unstable_by_key(|e| e.0);
                out
            })
            .collect();
        IntMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }
}

/// Result of sparse unit-pivot elimination: the number of ±1 pivots taken
/// and the leftover block with no unit entries reachable by the pivot rule.
pub(crate) struct Eliminated {
    pub unit_pivots: usize,
    pub rest: Vec<Vec<Int>>,
}

/// Eliminates unit pivots, cheapest first (Markowitz cost on a lazily
/// updated column heap). Each pivot is a Schur-complement step that removes
/// one row and one column without changing the remaining invariant factors.
pub(crate) fn eliminate_units(m: &IntMatrix) -> Eliminated {
    // Long rows are expensive to update; work on the orientation with more rows.
    let owned;
    let m = if m.cols > m.rows {
        owned = m.transpose();
        &owned
    } else {
        m
    };
    let mut rows: Vec<FxHashMap<u32, Int>> = m.data.iter().map(|r| r.iter().cloned().collect()).collect();
    let mut cols: Vec<FxHashSet<u32>> = vec![FxHashSet::default(); m.cols];
    for (r, row) in m.data.iter().enumerate() {
        for (c, _) in row {
            cols[*c as usize].insert(r as u32);
        }
    }
    let mut row_alive = vec![true; m.rows];
    let mut col_alive = vec![true; m.cols];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        (0..m.cols).filter(|&c| !cols[c].is_empty()).map(|c| Reverse((cols[c].len(), c as u32))).collect();
    let mut unit_pivots = 0;
    while let Some(Reverse((len, c))) = heap.pop() {
        let c = c as usize;
        if !col_alive[c] || cols[c].len() != len {
            if col_alive[c] && !cols[c].is_empty() && cols[c].len() != len {
                heap.push(Reverse((cols[c].len(), c as u32)));
            }
            continue;
        }
        // Unit entry in the shortest row of this column.
        let pivot_row = cols[c]
            .iter()
            .copied()
            .filter(|&r| rows[r as usize][&(c as u32)].is_unit())
            .min_by_key(|&r| (rows[r as usize].len(), r));
        let Some(r) = pivot_row else {
            continue;
        };
        let r = r as usize;
        unit_pivots += 1;
        let prow: Vec<(u32, Int)> = rows[r].drain().collect();
        let piv = prow.iter().find(|e| e.0 as usize == c).expect("pivot").1.clone();
        for &(j, _) in &prow {
            cols[j as usize].remove(&(r as u32));
        }
        row_alive[r] = false;
        let targets: Vec<u32> = cols[c].iter().copied().collect();
        for i in targets {
            let i = i as usize;
            // row_i −= (a_ic / piv) · row_r, with piv = ±1.
            let f = {
                let a = &rows[i][&(c as u32)];
                if piv == Int::ONE { a.clone() } else { -a }
            };
            for (j, v) in &prow {
                let entry = rows[i].entry(*j).or_insert(Int::ZERO);
                let was_zero = entry.is_zero();
                *entry = entry.sub_mul(&f, v);
                if entry.is_zero() {
                    rows[i].remove(j);
                    if !was_zero {
                        cols[*j as usize].remove(&(i as u32));
                    }
                } else if was_zero {
                    cols[*j as usize].insert(i as u32);
                }
            }
        }
        debug_assert!(cols[c].is_empty());
        col_alive[c] = false;
        for &(j, _) in &prow {
            let j = j as usize;
            if col_alive[j] && !cols[j].is_empty() {
                heap.push(Reverse((cols[j].len(), j as u32)));
            }
        }
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| row_alive[r] && !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&c| col_alive[c] && !cols[c].is_empty()).collect();
    let col_pos: FxHashMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let rest = live_rows
        .iter()
        .map(|&r| {
            let mut dense = vec![Int::ZERO; live_cols.len()];
            for (c, v) in &rows[r] {
                dense[col_pos[&(*c as usize)]] = v.clone();
            }
            dense
        })
        .collect();
    Eliminated { unit_pivots, rest }
}
