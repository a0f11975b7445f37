use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, …, degree − 1}` stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::invalid(format!("images {images:?} are not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from images already known to be a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Parses 0-based disjoint-cycle notation such as `"(0 1)(2 3 4)"`.
    /// `"()"`, `"e"` and the empty string denote the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= degree || b >= degree {
                    return Err(Error::Parse(format!("point {} out of range for degree {degree} in {text:?}", a.max(b))));
                }
                if moved[a] {
                    return Err(Error::Parse(format!("point {a} repeated in {text:?}")));
                }
                moved[a] = true;
                images[a] = b as u32;
            }
        }
        Permutation::from_images(images)
    }

    /// Parses cycle notation, taking the degree from the largest point.
    pub fn parse_infer(text: &str) -> Result<Self> {
        let degree = parse_cycles(text)?
            .iter()
            .flatten()
            .map(|&p| p + 1)
            .max()
            .unwrap_or(0);
        Permutation::parse(text, degree)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `(self ∘ r)(i) = self(r(i))`.
    pub fn compose(&self, r: &Permutation) -> Result<Permutation> {
        if self.degree() != r.degree() {
            return Err(Error::DegreeMismatch(self.degree(), r.degree()));
        }
        Ok(self.compose_unchecked(r))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, r: &Permutation) -> Permutation {
        Permutation {
            images: r.images.iter().map(|&j| self.images[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g·h·g⁻¹`.
    pub fn conjugate(g: &Permutation, h: &Permutation) -> Result<Permutation> {
        if g.degree() != h.degree() {
            return Err(Error::DegreeMismatch(g.degree(), h.degree()));
        }
        Ok(Self::conjugate_unchecked(g, h))
    }

    #[inline]
    pub(crate) fn conjugate_unchecked(g: &Permutation, h: &Permutation) -> Permutation {
        // (g h g⁻¹)(g(i)) = g(h(i))
        let mut images = vec![0u32; g.degree()];
        for i in 0..g.degree() {
            images[g.images[i] as usize] = g.images[h.images[i] as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, mut e: i64) -> Permutation {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        e = e.abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.apply(j);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut counts = BTreeMap::new();
        for c in self.cycles() {
            *counts.entry(c.len()).or_insert(0) += 1;
        }
        CycleType(counts)
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Sign as `true` for even permutations.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let t = text.trim();
    if t.is_empty() || t == "e" || t == "()" || t == "id" {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        rest = rest.trim_start();
        if rest.is_empty() {
            break;
        }
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
        let end = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
        let points = body[..end]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = &body[end + 1..];
    }
    Ok(cycles)
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Permutation::from_images(v)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Multiset of cycle lengths, fixed points included: `n_j` cycles of length `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType(pub BTreeMap<usize, usize>);

impl CycleType {
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        CycleType(pairs.iter().copied().filter(|&(_, n)| n > 0).collect())
    }

    pub fn count(&self, len: usize) -> usize {
        self.0.get(&len).copied().unwrap_or(0)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, (len, n)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            if *n == 1 {
                write!(f, "{len}")?;
            } else {
                write!(f, "{len}^{n}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn compose_evaluates_right_to_left() {
        let c = p("(0 1)", 3).compose(&p("(1 2)", 3)).unwrap();
        assert_eq!(c.images(), &[1, 2, 0]);
        assert_eq!(c, p("(0 1 2)", 3));
    }

    #[test]
    fn compose_identity_and_inverse() {
        let x = p("(0 3 1)(2 4)", 5);
        assert_eq!(x.compose(&Permutation::identity(5)).unwrap(), x);
        assert!(x.compose(&x.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        assert!(matches!(
            p("(0 1)", 2).compose(&p("(0 1)", 3)),
            Err(Error::DegreeMismatch(2, 3))
        ));
    }

    #[test]
    fn conjugation_relabels_points() {
        // 1-based (1 2) conjugating (2 3) gives (1 3).
        let g = p("(0 1)", 3);
        let h = p("(1 2)", 3);
        assert_eq!(Permutation::conjugate(&g, &h).unwrap(), p("(0 2)", 3));
        let e = Permutation::identity(3);
        assert_eq!(Permutation::conjugate(&e, &h).unwrap(), h);
        assert_eq!(Permutation::conjugate(&h, &h).unwrap(), h);
    }

    #[test]
    fn cycle_types() {
        assert_eq!(p("(0 1)(2 3 4)", 5).cycle_type().to_string(), "(2,3)");
        assert_eq!(Permutation::identity(5).cycle_type().to_string(), "(1^5)");
        assert_eq!(p("(0 1 2 3)", 7).cycle_type().to_string(), "(1^3,4)");
    }

    #[test]
    fn parse_is_whitespace_insensitive() {
        assert_eq!(p(" ( 0  1 )( 2 ,3 ) ", 4), p("(0 1)(2 3)", 4));
        assert!(Permutation::parse("(0 1)(1 2)", 3).is_err());
        assert!(Permutation::parse("(0 5)", 3).is_err());
        assert_eq!(p("e", 4), Permutation::identity(4));
    }

    #[test]
    fn display_round_trips() {
        let x = p("(1 4)(0 2 3)", 6);
        assert_eq!(x.to_string(), "(0 2 3)(1 4)");
        assert_eq!(Permutation::parse(&x.to_string(), 6).unwrap(), x);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn composition_is_associative(a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)) {
            let l = a.compose(&b).unwrap().compose(&c).unwrap();
            let r = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn conjugate_matches_products(g in arb_perm(6), h in arb_perm(6)) {
            let direct = g.compose(&h).unwrap().compose(&g.inverse()).unwrap();
            prop_assert_eq!(Permutation::conjugate(&g, &h).unwrap(), direct);
        }

        #[test]
        fn pow_matches_order(g in arb_perm(8)) {
            prop_assert!(g.pow(g.order() as i64).is_identity());
            prop_assert_eq!(g.pow(-1), g.inverse());
        }
    }
}
