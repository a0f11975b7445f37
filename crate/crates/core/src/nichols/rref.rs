//! Exact sparse row reduction over a [`Scalar`] field.

use super::scalar::Scalar;

pub type SparseVec<S> = Vec<(u32, S)>;

/// Dense scratch space for accumulating sparse vectors.
pub struct Accumulator<S> {
    values: Vec<S>,
    touched: Vec<u32>,
    live: Vec<bool>,
}

impl<S: Scalar> Accumulator<S> {
    pub fn new(len: usize) -> Self {
        Accumulator { values: vec![S::zero(); len], touched: Vec::new(), live: vec![false; len] }
    }

    pub fn add(&mut self, pos: u32, v: &S) {
        let p = pos as usize;
        if !self.live[p] {
            self.live[p] = true;
            self.touched.push(pos);
            self.values[p] = v.clone();
        } else {
            self.values[p] = self.values[p].add(v);
        }
    }

    pub fn add_scaled(&mut self, row: &[(u32, S)], f: &S) {
        for (p, v) in row {
            self.add(*p, &v.mul(f));
        }
    }

    pub fn get(&self, pos: u32) -> Option<&S> {
        self.live[pos as usize].then(|| &self.values[pos as usize])
    }

    /// Drains the nonzero entries in increasing position order.
    pub fn take(&mut self) -> SparseVec<S> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &p in &self.touched {
            self.live[p as usize] = false;
            let v = std::mem::replace(&mut self.values[p as usize], S::zero());
            if !v.is_zero() {
                out.push((p, v));
            }
        }
        self.touched.clear();
        out
    }
}

fn lookup<S>(row: &[(u32, S)], pos: u32) -> Option<&S> {
    row.binary_search_by_key(&pos, |e| e.0).ok().map(|i| &row[i].1)
}

/// Row echelon basis of a subspace of `S^len`, grown one vector at a time.
/// Each stored row is monic at its leading position and vanishes at the
/// leading positions of all rows stored before it.
pub struct Echelon<S> {
    len: usize,
    rows: Vec<SparseVec<S>>,
    pivot_row: Vec<u32>,
    acc: Accumulator<S>,
}

const NO_ROW: u32 = u32::MAX;

impl<S: Scalar> Echelon<S> {
    pub fn new(len: usize) -> Self {
        Echelon { len, rows: Vec::new(), pivot_row: vec![NO_ROW; len], acc: Accumulator::new(len) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows.
    fn reduce(&mut self, v: &[(u32, S)]) -> SparseVec<S> {
        for (p, x) in v {
            self.acc.add(*p, x);
        }
        for (k, row) in self.rows.iter().enumerate() {
            let lead = row[0].0;
            if let Some(c) = self.acc.get(lead) {
                if !c.is_zero() {
                    let f = c.neg();
                    debug_assert_eq!(self.pivot_row[lead as usize], k as u32);
                    for (p, x) in row {
                        self.acc.add(*p, &x.mul(&f));
                    }
                }
            }
        }
        self.acc.take()
    }

    /// Inserts `v`; returns whether it was independent.
    pub fn insert(&mut self, v: &[(u32, S)]) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv();
        for e in r.iter_mut() {
            e.1 = e.1.mul(&inv);
        }
        self.pivot_row[r[0].0 as usize] = self.rows.len() as u32;
        self.rows.push(r);
        true
    }

    /// The reduced row echelon form, rows sorted by leading position.
    pub fn into_rref(mut self) -> Rref<S> {
        self.rows.sort_by_key(|r| r[0].0);
        let mut pivot_row = vec![NO_ROW; self.len];
        for (k, r) in self.rows.iter().enumerate() {
            pivot_row[r[0].0 as usize] = k as u32;
        }
        let mut acc = Accumulator::new(self.len);
        for k in (0..self.rows.len()).rev() {
            let needs = self.rows[k][1..].iter().any(|(p, _)| pivot_row[*p as usize] != NO_ROW);
            if !needs {
                continue;
            }
            let row = std::mem::take(&mut self.rows[k]);
            for (p, x) in &row {
                acc.add(*p, x);
            }
            for (p, x) in &row[1..] {
                let l = pivot_row[*p as usize];
                if l != NO_ROW {
                    acc.add_scaled(&self.rows[l as usize], &x.neg());
                }
            }
            self.rows[k] = acc.take();
        }
        let pivots = self.rows.iter().map(|r| r[0].0).collect();
        Rref { rows: self.rows, pivots, pivot_row }
    }
}

/// A subspace in reduced row echelon form.
pub struct Rref<S> {
    pub rows: Vec<SparseVec<S>>,
    pub pivots: Vec<u32>,
    pivot_row: Vec<u32>,
}

impl<S: Scalar> Rref<S> {
    /// Coordinates of a vector known to lie in the span.
    pub fn coordinates(&self, v: &[(u32, S)]) -> SparseVec<S> {
        v.iter()
            .filter_map(|(p, x)| {
                let k = self.pivot_row[*p as usize];
                (k != NO_ROW).then(|| (k, x.clone()))
            })
            .collect()
    }

    /// Checks membership by reconstructing from coordinates.
    pub fn contains(&self, v: &[(u32, S)]) -> bool {
        let mut acc = Accumulator::new(self.pivot_row.len());
        for (p, x) in v {
            acc.add(*p, x);
        }
        for (k, c) in self.coordinates(v) {
            acc.add_scaled(&self.rows[k as usize], &c.neg());
        }
        acc.take().is_empty()
    }

    pub fn entry(row: &[(u32, S)], pos: u32) -> Option<&S> {
        lookup(row, pos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nichols::scalar::Q;

    fn q(v: i64) -> Q {
        Q::from_int(v)
    }

    #[test]
    fn rref_is_canonical() {
        let vs = vec![
            vec![(0, q(1)), (1, q(2)), (3, q(1))],
            vec![(1, q(1)), (2, q(1))],
            vec![(0, q(1)), (1, q(3)), (2, q(1)), (3, q(1))],
            vec![(2, q(5))],
        ];
        let build = |order: &[usize]| {
            let mut e = Echelon::new(4);
            for &i in order {
                e.insert(&vs[i]);
            }
            e.into_rref()
        };
        let a = build(&[0, 1, 2, 3]);
        let b = build(&[3, 2, 1, 0]);
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.pivots, vec![0, 1, 2]);
        for v in &vs {
            assert!(a.contains(v));
        }
        assert!(!a.contains(&[(3, q(1))]));
    }
}
