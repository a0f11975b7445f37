//! Finite racks: validated operation tables, constructions, subracks and
//! isomorphism search.

mod construct;
mod iso;
mod subrack;
mod torus;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

pub use construct::{
    affine, disjoint_union, from_conjugacy_class, from_twisted_class, power_rack, product,
    trivial_rack, AffineSpec,
};
pub use iso::is_isomorphic;
pub use subrack::{abelian_subracks, enumerate_subracks, subrack_closure, SubrackHandle};
pub use torus::{affine_model_type_d_certificate, torus_model, torus_rack};

/// First violated axiom found while validating a table.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum AxiomViolation {
    #[error("table is not square or has an entry out of range at row {row}")]
    Shape { row: usize },
    #[error("translation φ_{x} is not a bijection")]
    NonBijective { x: usize },
    #[error("quandle axiom fails: {x} ▷ {x} ≠ {x}")]
    Quandle { x: usize },
    #[error("crossed-set axiom fails at ({x}, {y}): {x} ▷ {y} = {y} but {y} ▷ {x} ≠ {x}")]
    CrossedSet { x: usize, y: usize },
    #[error("self-distributivity fails at ({x}, {y}, {z})")]
    SelfDistributivity { x: usize, y: usize, z: usize },
}

/// Common interface of dense and implicitly represented racks.
pub trait RackOps: Sync {
    fn len(&self) -> usize;
    /// `x ▷ y`.
    fn op(&self, x: usize, y: usize) -> usize;
    /// `x ▷⁻¹ y`, the unique `z` with `x ▷ z = y`.
    fn op_inv(&self, x: usize, y: usize) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A finite rack as a dense operation table, `x ▷ y = table[x·n + y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rack {
    size: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    provenance: String,
}

/// Serialized form of a rack.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RackFile {
    pub size: usize,
    pub table: Vec<Vec<u32>>,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub provenance: String,
}

impl RackOps for Rack {
    #[inline]
    fn len(&self) -> usize {
        self.size
    }

    #[inline]
    fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y] as usize
    }

    #[inline]
    fn op_inv(&self, x: usize, y: usize) -> usize {
        self.inv[x * self.size + y] as usize
    }
}

impl Rack {
    /// Validates a table against the rack, quandle and crossed-set axioms.
    pub fn validate(table: Vec<Vec<u32>>) -> Result<Rack> {
        let n = table.len();
        let mut flat = Vec::with_capacity(n * n);
        for (row, r) in table.iter().enumerate() {
            if r.len() != n || r.iter().any(|&v| v as usize >= n) {
                return Err(AxiomViolation::Shape { row }.into());
            }
            flat.extend_from_slice(r);
        }
        Rack::from_flat(n, flat, Vec::new(), String::new())
    }

    /// Validates a flat row-major table and attaches labels and provenance.
    pub fn from_flat(n: usize, table: Vec<u32>, labels: Vec<String>, provenance: String) -> Result<Rack> {
        if table.len() != n * n {
            return Err(Error::invalid(format!("table has {} entries, expected {}", table.len(), n * n)));
        }
        if !labels.is_empty() && labels.len() != n {
            return Err(Error::invalid(format!("{} labels for {n} elements", labels.len())));
        }
        let mut inv = vec![u32::MAX; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = table[x * n + y];
                if z as usize >= n {
                    return Err(AxiomViolation::Shape { row: x }.into());
                }
                let slot = &mut inv[x * n + z as usize];
                if *slot != u32::MAX {
                    return Err(AxiomViolation::NonBijective { x }.into());
                }
                *slot = y as u32;
            }
        }
        let rack = Rack { size: n, table, inv, labels, provenance };
        rack.check_axioms()?;
        Ok(rack)
    }

    /// Builds from a table already known to satisfy the axioms; checked in
    /// debug builds only.
    pub(crate) fn from_trusted(n: usize, table: Vec<u32>, labels: Vec<String>, provenance: String) -> Rack {
        let mut inv = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                inv[x * n + table[x * n + y] as usize] = y as u32;
            }
        }
        let rack = Rack { size: n, table, inv, labels, provenance };
        debug_assert!(rack.check_axioms().is_ok());
        rack
    }

    fn check_axioms(&self) -> std::result::Result<(), AxiomViolation> {
        let n = self.size;
        for x in 0..n {
            if self.op(x, x) != x {
                return Err(AxiomViolation::Quandle { x });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.op(x, y) == y && self.op(y, x) != x {
                    return Err(AxiomViolation::CrossedSet { x, y });
                }
            }
        }
        self.check_self_distributive()
    }

    /// Self-distributivity in O(k·n²): it suffices that φ_s is an
    /// automorphism for each s in a set S whose orbits under ⟨φ_s : s ∈ S⟩
    /// cover X, since φ_{s▷x} = φ_s φ_x φ_s⁻¹ whenever φ_s is an automorphism.
    fn check_self_distributive(&self) -> std::result::Result<(), AxiomViolation> {
        let n = self.size;
        let mut covered = vec![false; n];
        let mut gens: Vec<usize> = Vec::new();
        for s in 0..n {
            if covered[s] {
                continue;
            }
            for y in 0..n {
                for z in 0..n {
                    if self.op(s, self.op(y, z)) != self.op(self.op(s, y), self.op(s, z)) {
                        return Err(AxiomViolation::SelfDistributivity { x: s, y, z });
                    }
                }
            }
            gens.push(s);
            covered.iter_mut().for_each(|c| *c = false);
            let mut queue: VecDeque<usize> = gens.iter().copied().collect();
            for &g in &gens {
                covered[g] = true;
            }
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    for y in [self.op(g, x), self.op_inv(g, x)] {
                        if !covered[y] {
                            covered[y] = true;
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> String {
        self.labels.get(x).cloned().unwrap_or_else(|| x.to_string())
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Rack {
        self.provenance = provenance.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Rack> {
        if labels.len() != self.size {
            return Err(Error::invalid(format!("{} labels for {} elements", labels.len(), self.size)));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn row(&self, x: usize) -> &[u32] {
        &self.table[x * self.size..(x + 1) * self.size]
    }

    /// The translation φ_x as a permutation.
    pub fn translation(&self, x: usize) -> Permutation {
        Permutation::from_images_unchecked(self.row(x).to_vec())
    }

    pub fn to_file(&self) -> RackFile {
        RackFile {
            size: self.size,
            table: (0..self.size).map(|x| self.row(x).to_vec()).collect(),
            labels: self.labels.clone(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn from_file(file: RackFile) -> Result<Rack> {
        if file.size != file.table.len() {
            return Err(Error::invalid(format!("size {} but {} rows", file.size, file.table.len())));
        }
        let rack = Rack::validate(file.table)?;
        let rack = if file.labels.is_empty() { rack } else { rack.with_labels(file.labels)? };
        Ok(rack.with_provenance(file.provenance))
    }

    /// Orbits of the inner group, each sorted, ordered by smallest element.
    pub fn orbit_decomposition(&self) -> Vec<Vec<usize>> {
        orbit_decomposition(self)
    }

    pub fn is_indecomposable(&self) -> bool {
        self.orbit_decomposition().len() <= 1
    }

    /// Inn(X), generated by the distinct translations.
    pub fn inner_group(&self, caps: &Caps) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = Vec::new();
        for x in 0..self.size {
            let t = self.translation(x);
            if !t.is_identity() && !gens.contains(&t) {
                gens.push(t);
            }
        }
        PermGroup::generate_with_degree(self.size, &gens, caps.group_elements)
    }

    /// Free rank of the defect group: the number of inner orbits.
    pub fn defect_rank(&self) -> usize {
        self.orbit_decomposition().len()
    }

    /// The subrack on `members` (sorted), relabelled `0..k`.
    pub fn restrict(&self, members: &[usize]) -> Result<Rack> {
        let mut pos = vec![u32::MAX; self.size];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i as u32;
        }
        let k = members.len();
        let mut table = Vec::with_capacity(k * k);
        for &x in members {
            for &y in members {
                let z = pos[self.op(x, y)];
                if z == u32::MAX {
                    return Err(Error::invalid("member set is not closed under ▷"));
                }
                table.push(z);
            }
        }
        let labels = if self.labels.is_empty() {
            Vec::new()
        } else {
            members.iter().map(|&m| self.labels[m].clone()).collect()
        };
        Ok(Rack::from_trusted(k, table, labels, format!("sub({})", self.provenance)))
    }
}

/// Orbits of ⟨φ_x⟩ on any rack, each sorted, ordered by smallest element.
pub fn orbit_decomposition<R: RackOps + ?Sized>(x: &R) -> Vec<Vec<usize>> {
    let n = x.len();
    let mut orbit_of = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        orbit_of[start] = id;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let y = members[head];
            head += 1;
            for g in 0..n {
                let z = x.op(g, y);
                if orbit_of[z] == usize::MAX {
                    orbit_of[z] = id;
                    members.push(z);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3() -> Vec<Vec<u32>> {
        // affine Z/3 with T = −1: x ▷ y = 2x − y
        (0..3u32).map(|x| (0..3u32).map(|y| (2 * x + 3 - y) % 3).collect()).collect()
    }

    #[test]
    fn validates_dihedral_rack() {
        let r = Rack::validate(d3()).unwrap();
        assert_eq!(r.size(), 3);
        assert_eq!(r.orbit_decomposition(), vec![vec![0, 1, 2]]);
        assert_eq!(r.defect_rank(), 1);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(r.op(x, r.op_inv(x, y)), y);
            }
        }
    }

    #[test]
    fn rejects_constant_translation() {
        let mut t = d3();
        t[0] = vec![0, 0, 0];
        assert!(matches!(
            Rack::validate(t),
            Err(Error::Axiom(AxiomViolation::NonBijective { x: 0 }))
        ));
    }

    #[test]
    fn rejects_permutation_rack() {
        // φ_x = (0 1 2) for every x.
        let t = vec![vec![1, 2, 0]; 3];
        assert!(matches!(
            Rack::validate(t),
            Err(Error::Axiom(AxiomViolation::Quandle { x: 0 }))
        ));
    }

    #[test]
    fn rejects_non_distributive_table() {
        // Quandle and crossed-set axioms hold, distributivity does not.
        let t = vec![
            vec![0, 2, 1, 3],
            vec![0, 1, 3, 2],
            vec![3, 1, 2, 0],
            vec![1, 0, 2, 3],
        ];
        let err = Rack::validate(t).unwrap_err();
        assert!(matches!(
            err,
            Error::Axiom(AxiomViolation::SelfDistributivity { .. }) | Error::Axiom(AxiomViolation::CrossedSet { .. })
        ));
    }

    #[test]
    fn rejects_crossed_set_failure() {
        // 0 ▷ 1 = 1 but 1 ▷ 0 = 2.
        let t = vec![vec![0, 1, 2], vec![2, 1, 0], vec![1, 0, 2]];
        assert!(matches!(
            Rack::validate(t),
            Err(Error::Axiom(AxiomViolation::CrossedSet { x: 0, y: 1 }))
        ));
    }

    #[test]
    fn file_round_trip() {
        let r = Rack::validate(d3()).unwrap().with_provenance("affine(3,-1)");
        let json = serde_json::to_string(&r.to_file()).unwrap();
        let back = Rack::from_file(serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
