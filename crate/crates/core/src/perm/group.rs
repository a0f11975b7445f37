use std::collections::VecDeque;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::Permutation;
use crate::error::{Error, Result};

/// A finite permutation group, always fully enumerated in BFS order from the
/// identity (right multiplication by generators in input order).
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: FxHashMap<Permutation, u32>,
}

impl PermGroup {
    /// Enumerates `⟨gens⟩`, failing with `EnumerationOverflow` past `bound` elements.
    pub fn generate(gens: &[Permutation], bound: usize) -> Result<PermGroup> {
        let degree = gens.first().map_or(0, |g| g.degree());
        Self::generate_with_degree(degree, gens, bound)
    }

    pub fn generate_with_degree(degree: usize, gens: &[Permutation], bound: usize) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = FxHashMap::default();
        index.insert(id, 0u32);
        let mut head = 0;
        while head < elements.len() {
            for g in gens {
                let y = elements[head].compose_unchecked(g);
                if !index.contains_key(&y) {
                    if elements.len() >= bound {
                        return Err(Error::EnumerationOverflow { cap: bound });
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                }
            }
            head += 1;
        }
        Ok(PermGroup {
            degree,
            generators: gens.to_vec(),
            elements,
            index,
        })
    }

    /// Subgroup given by an explicit closed element list. A small generating
    /// set is chosen greedily in list order.
    fn from_closed_elements(degree: usize, elements: Vec<Permutation>) -> PermGroup {
        let mut generators: Vec<Permutation> = Vec::new();
        let mut covered: rustc_hash::FxHashSet<Permutation> = Default::default();
        covered.insert(Permutation::identity(degree));
        for x in &elements {
            if covered.contains(x) {
                continue;
            }
            generators.push(x.clone());
            let sub = PermGroup::generate_with_degree(degree, &generators, usize::MAX)
                .expect("subgroup of a finite group");
            covered = sub.elements.into_iter().collect();
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i as u32))
            .collect();
        PermGroup {
            degree,
            generators,
            elements,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.index.contains_key(x)
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    fn require(&self, x: &Permutation) -> Result<()> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, x.degree()));
        }
        if !self.contains(x) {
            return Err(Error::NotMember(x.to_string()));
        }
        Ok(())
    }

    /// The conjugacy class of `x` in BFS order under conjugation by generators.
    pub fn conjugacy_class(&self, x: &Permutation) -> Result<Vec<Permutation>> {
        self.require(x)?;
        Ok(conjugation_orbit(&self.generators, x))
    }

    pub fn centralizer(&self, x: &Permutation) -> Result<PermGroup> {
        self.require(x)?;
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| g.compose_unchecked(x) == x.compose_unchecked(g))
            .cloned()
            .collect();
        Ok(PermGroup::from_closed_elements(self.degree, elements))
    }

    /// Representatives of all conjugacy classes, in order of first appearance.
    pub fn class_representatives(&self) -> Vec<Permutation> {
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for (i, x) in self.elements.iter().enumerate() {
            if seen[i] {
                continue;
            }
            for y in conjugation_orbit(&self.generators, x) {
                seen[self.index[&y] as usize] = true;
            }
            reps.push(x.clone());
        }
        reps
    }
}

/// Orbit of `x` under conjugation by `gens`, in BFS order.
pub fn conjugation_orbit(gens: &[Permutation], x: &Permutation) -> Vec<Permutation> {
    let mut orbit = vec![x.clone()];
    let mut seen: rustc_hash::FxHashSet<Permutation> = Default::default();
    seen.insert(x.clone());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let y = Permutation::conjugate_unchecked(g, &orbit[i]);
            if seen.insert(y.clone()) {
                queue.push_back(orbit.len());
                orbit.push(y);
            }
        }
    }
    orbit
}

/// An automorphism of an enumerated group, stored as a table on element indices.
#[derive(Clone, Debug)]
pub struct GroupAutomorphism {
    domain: Arc<PermGroup>,
    table: Vec<u32>,
}

impl GroupAutomorphism {
    pub fn identity(domain: Arc<PermGroup>) -> Self {
        let table = (0..domain.order() as u32).collect();
        GroupAutomorphism { domain, table }
    }

    /// Conjugation `x ↦ t x t⁻¹` by a permutation normalizing the group.
    pub fn from_conjugator(domain: Arc<PermGroup>, t: &Permutation) -> Result<Self> {
        if t.degree() != domain.degree() {
            return Err(Error::DegreeMismatch(domain.degree(), t.degree()));
        }
        for g in domain.generators() {
            if !domain.contains(&Permutation::conjugate_unchecked(t, g)) {
                return Err(Error::NotNormalizing(t.to_string()));
            }
        }
        let table = domain
            .elements()
            .iter()
            .map(|x| domain.index[&Permutation::conjugate_unchecked(t, x)])
            .collect();
        Ok(GroupAutomorphism { domain, table })
    }

    /// Builds an automorphism from an explicit table, checking that it is a
    /// bijective homomorphism.
    pub fn from_table(domain: Arc<PermGroup>, table: Vec<u32>) -> Result<Self> {
        let n = domain.order();
        if table.len() != n {
            return Err(Error::InvalidAutomorphism(format!("table has {} entries, group has {n}", table.len())));
        }
        let mut seen = vec![false; n];
        for &t in &table {
            if t as usize >= n || std::mem::replace(&mut seen[t as usize], true) {
                return Err(Error::InvalidAutomorphism("table is not a bijection".into()));
            }
        }
        let aut = GroupAutomorphism { domain, table };
        if let Some((x, y)) = aut.first_non_multiplicative(usize::MAX) {
            return Err(Error::InvalidAutomorphism(format!("not multiplicative at ({x}, {y})")));
        }
        Ok(aut)
    }

    pub fn domain(&self) -> &Arc<PermGroup> {
        &self.domain
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &t)| i as u32 == t)
    }

    #[inline]
    pub fn apply_index(&self, i: usize) -> usize {
        self.table[i] as usize
    }

    pub fn apply(&self, x: &Permutation) -> Result<Permutation> {
        let i = self
            .domain
            .index_of(x)
            .ok_or_else(|| Error::NotMember(x.to_string()))?;
        Ok(self.domain.elements()[self.table[i] as usize].clone())
    }

    pub fn inverse(&self) -> GroupAutomorphism {
        let mut inv = vec![0u32; self.table.len()];
        for (i, &t) in self.table.iter().enumerate() {
            inv[t as usize] = i as u32;
        }
        GroupAutomorphism {
            domain: self.domain.clone(),
            table: inv,
        }
    }

    /// Checks `u(xy) = u(x)u(y)` on all pairs when `|G|² ≤ limit`, otherwise on
    /// a deterministic stride sample of about `limit` pairs.
    pub fn first_non_multiplicative(&self, limit: usize) -> Option<(Permutation, Permutation)> {
        let g = &self.domain;
        let n = g.order();
        let total = n.saturating_mul(n);
        let step = if total <= limit { 1 } else { total / limit.max(1) | 1 };
        let mut k = 0usize;
        while k < total {
            let (i, j) = (k / n, k % n);
            let (x, y) = (&g.elements[i], &g.elements[j]);
            let xy = g.index[&x.compose_unchecked(y)] as usize;
            let lhs = self.table[xy] as usize;
            let rhs = &g.elements[self.table[i] as usize].compose_unchecked(&g.elements[self.table[j] as usize]);
            if g.elements[lhs] != *rhs {
                return Some((x.clone(), y.clone()));
            }
            k += step;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn group(gens: &[&str], n: usize) -> PermGroup {
        let gens: Vec<_> = gens.iter().map(|s| p(s, n)).collect();
        PermGroup::generate(&gens, 1_000_000).unwrap()
    }

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(group(&["(0 1)", "(0 1 2)"], 3).order(), 6);
        assert_eq!(group(&["(0 1 2 3 4)", "(2 3 4)"], 5).order(), 60);
        assert_eq!(group(&["()"], 4).order(), 1);
    }

    #[test]
    fn enumeration_overflow_is_an_error() {
        let gens = [p("(0 1)", 5), p("(0 1 2 3 4)", 5)];
        assert!(matches!(
            PermGroup::generate(&gens, 100),
            Err(Error::EnumerationOverflow { cap: 100 })
        ));
    }

    #[test]
    fn conjugacy_classes() {
        let s4 = group(&["(0 1)", "(0 1 2 3)"], 4);
        assert_eq!(s4.conjugacy_class(&p("(0 1)", 4)).unwrap().len(), 6);
        assert_eq!(s4.conjugacy_class(&p("()", 4)).unwrap().len(), 1);
        let a5 = group(&["(0 1 2 3 4)", "(2 3 4)"], 5);
        assert_eq!(a5.conjugacy_class(&p("(0 1 2 3 4)", 5)).unwrap().len(), 12);
        assert!(matches!(a5.conjugacy_class(&p("(0 1)", 5)), Err(Error::NotMember(_))));
        assert_eq!(a5.class_representatives().len(), 5);
    }

    #[test]
    fn centralizers() {
        let s3 = group(&["(0 1)", "(0 1 2)"], 3);
        assert_eq!(s3.centralizer(&p("(0 1 2)", 3)).unwrap().order(), 3);
        assert_eq!(s3.centralizer(&p("()", 3)).unwrap().order(), 6);
        let s4 = group(&["(0 1)", "(0 1 2 3)"], 4);
        let c = s4.centralizer(&p("(0 1)", 4)).unwrap();
        assert_eq!(c.order(), 4);
        assert!(c.contains(&p("(2 3)", 4)));
        let regen = PermGroup::generate(c.generators(), 100).unwrap();
        assert_eq!(regen.order(), 4);
    }

    #[test]
    fn orbit_stabilizer_on_s5() {
        let s5 = group(&["(0 1)", "(0 1 2 3 4)"], 5);
        for x in s5.class_representatives() {
            let class = s5.conjugacy_class(&x).unwrap();
            let cent = s5.centralizer(&x).unwrap();
            assert_eq!(class.len() * cent.order(), 120);
        }
    }

    #[test]
    fn outer_automorphism_of_a4() {
        let a4 = Arc::new(group(&["(0 1 2)", "(0 1)(2 3)"], 4));
        let u = GroupAutomorphism::from_conjugator(a4.clone(), &p("(0 1)", 4)).unwrap();
        assert!(u.first_non_multiplicative(usize::MAX).is_none());
        assert!(GroupAutomorphism::from_table(a4.clone(), u.table().to_vec()).is_ok());
        // Not inner: no element of A4 conjugates like (0 1).
        let inner: Vec<Vec<u32>> = a4
            .elements()
            .iter()
            .map(|t| GroupAutomorphism::from_conjugator(a4.clone(), t).unwrap().table().to_vec())
            .collect();
        assert!(!inner.contains(&u.table().to_vec()));
        let id = GroupAutomorphism::from_conjugator(a4.clone(), &p("()", 4)).unwrap();
        assert!(id.is_identity());
        assert!(matches!(
            GroupAutomorphism::from_conjugator(Arc::new(group(&["(0 1 2)"], 4)), &p("(0 3)", 4)),
            Err(Error::NotNormalizing(_))
        ));
    }

    #[test]
    fn bad_tables_are_rejected() {
        let s3 = Arc::new(group(&["(0 1)", "(0 1 2)"], 3));
        assert!(GroupAutomorphism::from_table(s3.clone(), vec![0, 0, 1, 2, 3, 4]).is_err());
        let mut t: Vec<u32> = (0..6).collect();
        t.swap(1, 2);
        // Swapping a transposition with a 3-cycle cannot be multiplicative.
        let x = &s3.elements()[1];
        let y = &s3.elements()[2];
        if x.order() != y.order() {
            assert!(GroupAutomorphism::from_table(s3, t).is_err());
        }
    }
}
