//! Type-D decisions: rack-level pair scans, the group algorithm on
//! conjugacy classes, and auxiliary criteria.

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::rack::{orbit_decomposition, subrack_closure, RackOps};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "TYPE_D")]
    TypeD,
    #[serde(rename = "NOT_TYPE_D")]
    NotTypeD,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::TypeD => "TYPE_D",
            Status::NotTypeD => "NOT_TYPE_D",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// A decomposable subrack `⟪{r,s}⟫ = R ⊔ S` with `r ∈ R`, `s ∈ S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub r: usize,
    pub s: usize,
    pub closure_size: usize,
    pub orbit_sizes: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeDVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub method: String,
}

impl TypeDVerdict {
    fn new(status: Status, witness: Option<Witness>, method: &str) -> Self {
        TypeDVerdict { status, witness, method: method.to_string() }
    }

    pub fn is_type_d(&self) -> bool {
        self.status == Status::TypeD
    }
}

/// `r ▷ (s ▷ (r ▷ s)) ≠ s`.
pub fn condition_pair<R: RackOps + ?Sized>(x: &R, r: usize, s: usize) -> bool {
    x.op(r, x.op(s, x.op(r, s))) != s
}

/// Orbit of `a` under ⟨φ_r, φ_s⟩.
fn orbit2<R: RackOps + ?Sized>(x: &R, r: usize, s: usize, a: usize) -> Vec<usize> {
    let mut out = vec![a];
    let mut seen = rustc_hash::FxHashSet::default();
    seen.insert(a);
    let mut head = 0;
    while head < out.len() {
        let y = out[head];
        head += 1;
        for z in [x.op(r, y), x.op(s, y)] {
            if seen.insert(z) {
                out.push(z);
            }
        }
    }
    out
}

/// Tests one pair. `⟪{r,s}⟫` is the union of the ⟨φ_r, φ_s⟩-orbits of `r`
/// and `s`, and these orbits are its inner orbits; the pair witnesses type D
/// iff the condition holds and the orbits differ.
pub fn test_pair<R: RackOps + ?Sized>(x: &R, r: usize, s: usize) -> Option<Witness> {
    if r == s || !condition_pair(x, r, s) {
        return None;
    }
    let or = orbit2(x, r, s, r);
    if or.contains(&s) {
        return None;
    }
    let os = orbit2(x, r, s, s);
    Some(Witness { r, s, closure_size: or.len() + os.len(), orbit_sizes: [or.len(), os.len()] })
}

fn scan_row<R: RackOps + ?Sized>(x: &R, r: usize) -> Option<Witness> {
    (0..x.len()).into_par_iter().find_map_first(|s| test_pair(x, r, s))
}

/// Exhaustive pair scan in lexicographic order.
pub fn is_type_d_rack<R: RackOps + ?Sized>(x: &R) -> TypeDVerdict {
    for r in 0..x.len() {
        if let Some(w) = scan_row(x, r) {
            return TypeDVerdict::new(Status::TypeD, Some(w), "rack-scan");
        }
    }
    TypeDVerdict::new(Status::NotTypeD, None, "rack-scan")
}

/// Scan for racks whose automorphism group is transitive (conjugacy classes,
/// twisted classes): fixing `r = 0` loses nothing.
pub fn is_type_d_homogeneous<R: RackOps + ?Sized>(x: &R, method: &str) -> TypeDVerdict {
    if x.is_empty() {
        return TypeDVerdict::new(Status::NotTypeD, None, method);
    }
    match scan_row(x, 0) {
        Some(w) => TypeDVerdict::new(Status::TypeD, Some(w), method),
        None => TypeDVerdict::new(Status::NotTypeD, None, method),
    }
}

/// Independent re-check of a witness: naive fixpoint closure, inner orbit of
/// `r` under all translations of the closure, closedness of both parts.
pub fn verify_witness<R: RackOps + ?Sized>(x: &R, w: &Witness) -> bool {
    if !condition_pair(x, w.r, w.s) {
        return false;
    }
    let y = subrack_closure(x, &[w.r, w.s]);
    if y.len() != w.closure_size {
        return false;
    }
    let mut in_r = rustc_hash::FxHashSet::default();
    in_r.insert(w.r);
    let mut queue = vec![w.r];
    while let Some(a) = queue.pop() {
        for &g in &y {
            let b = x.op(g, a);
            if in_r.insert(b) {
                queue.push(b);
            }
        }
    }
    if in_r.contains(&w.s) || in_r.len() != w.orbit_sizes[0] || y.len() - in_r.len() != w.orbit_sizes[1] {
        return false;
    }
    // Y ▷ R ⊆ R and Y ▷ S ⊆ S.
    y.iter().all(|&g| y.iter().all(|&a| in_r.contains(&x.op(g, a)) == in_r.contains(&a)))
}

/// A conjugacy class represented implicitly, element 0 being the representative.
pub struct ClassRack {
    elements: Vec<Permutation>,
    index: FxHashMap<Permutation, u32>,
}

impl ClassRack {
    pub fn new(g: &PermGroup, x: &Permutation) -> Result<Self> {
        let elements = g.conjugacy_class(x)?;
        let index = elements.iter().cloned().zip(0u32..).collect();
        Ok(ClassRack { elements, index })
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }
}

impl RackOps for ClassRack {
    fn len(&self) -> usize {
        self.elements.len()
    }

    fn op(&self, a: usize, b: usize) -> usize {
        self.index[&Permutation::conjugate_unchecked(&self.elements[a], &self.elements[b])] as usize
    }

    fn op_inv(&self, a: usize, b: usize) -> usize {
        let inv = self.elements[a].inverse();
        self.index[&Permutation::conjugate_unchecked(&inv, &self.elements[b])] as usize
    }
}

/// `(rs)² ≠ (sr)²`.
pub fn group_condition(r: &Permutation, s: &Permutation) -> bool {
    let rs = r.compose_unchecked(s);
    let sr = s.compose_unchecked(r);
    rs.compose_unchecked(&rs) != sr.compose_unchecked(&sr)
}

/// The group algorithm: fix `r = x`, run over `s` in the class, and on
/// `(rs)² ≠ (sr)²` compare the classes of `r` and `s` in `H = ⟨r, s⟩`. The
/// H-classes are orbits under conjugation by `r` and `s`, so `H` itself is
/// never enumerated.
pub fn is_type_d_class(g: &PermGroup, x: &Permutation) -> Result<TypeDVerdict> {
    let class = ClassRack::new(g, x)?;
    Ok(type_d_class_rack(&class))
}

pub(crate) fn type_d_class_rack(class: &ClassRack) -> TypeDVerdict {
    let r = &class.elements[0];
    let found = (0..class.len()).into_par_iter().find_map_first(|s| {
        let sp = &class.elements[s];
        let cond = group_condition(r, sp);
        debug_assert_eq!(cond, condition_pair(class, 0, s), "group and rack conditions disagree");
        if !cond {
            return None;
        }
        test_pair(class, 0, s)
    });
    match found {
        Some(w) => TypeDVerdict::new(Status::TypeD, Some(w), "algorithm"),
        None => TypeDVerdict::new(Status::NotTypeD, None, "algorithm"),
    }
}

/// Exponents `j ∈ 2..ord(g)` with `g^j ≠ g` and `g^j` conjugate to `g`.
pub fn quasi_real_types(g: &PermGroup, x: &Permutation) -> Result<Vec<u64>> {
    let class: rustc_hash::FxHashSet<Permutation> = g.conjugacy_class(x)?.into_iter().collect();
    let ord = x.order();
    Ok((2..ord)
        .filter(|&j| {
            let y = x.pow(j as i64);
            y != *x && class.contains(&y)
        })
        .collect())
}

/// The quasi-real criterion for `g = τκ`. One-directional: never returns
/// NOT_TYPE_D. When the hypotheses hold the witness is produced by the
/// class scan.
pub fn jordan_criterion(g: &PermGroup, tau: &Permutation, kappa: &Permutation) -> Result<TypeDVerdict> {
    if tau.compose(kappa)? != kappa.compose(tau)? {
        return Err(Error::invalid("τ and κ do not commute"));
    }
    if tau.is_identity() || kappa.is_identity() {
        return Err(Error::invalid("τ and κ must be nontrivial"));
    }
    let inconclusive = Ok(TypeDVerdict::new(Status::Inconclusive, None, "jordan"));
    let (n, m) = (tau.order(), kappa.order());
    if num_integer::gcd(n, m) != 1 {
        return inconclusive;
    }
    let prod = tau.compose_unchecked(kappa);
    let k = g.centralizer(kappa)?;
    let jg = quasi_real_types(g, &prod)?;
    let tau_class: rustc_hash::FxHashSet<Permutation> = k.conjugacy_class(tau)?.into_iter().collect();
    let common = |j: u64| {
        let y = tau.pow(j as i64);
        y != *tau && tau_class.contains(&y)
    };
    let Some(_j) = jg.iter().find(|&&j| common(j) && (j - 1) % m != 0) else {
        return inconclusive;
    };
    let small = ClassRack::new(&k, tau)?;
    let has_pair = (0..small.len()).any(|r| (0..small.len()).any(|s| condition_pair(&small, r, s)));
    if !has_pair {
        return inconclusive;
    }
    let mut v = is_type_d_class(g, &prod)?;
    v.method = "jordan".into();
    if !v.is_type_d() {
        v.status = Status::Inconclusive;
    }
    Ok(v)
}

/// If the K-class of τ is of type D, so is the G-class of τκ, via the
/// injective rack morphism `y ↦ yκ`.
pub fn subrack_lift_check(g: &PermGroup, k: &PermGroup, kappa: &Permutation, tau: &Permutation) -> Result<TypeDVerdict> {
    for h in k.generators() {
        if h.compose(kappa)? != kappa.compose(h)? {
            return Err(Error::invalid("κ does not centralize K"));
        }
        if !g.contains(h) {
            return Err(Error::NotMember(h.to_string()));
        }
    }
    let small = ClassRack::new(k, tau)?;
    let inner = type_d_class_rack(&small);
    let Some(w) = inner.witness else {
        return Ok(TypeDVerdict::new(Status::Inconclusive, None, "subrack-lift"));
    };
    let big = ClassRack::new(g, &tau.compose_unchecked(kappa))?;
    let image: Vec<usize> = small
        .elements
        .iter()
        .map(|y| big.index_of(&y.compose_unchecked(kappa)).ok_or_else(|| Error::invalid("lift leaves the class")))
        .collect::<Result<_>>()?;
    let mut sorted = image.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != image.len() {
        return Err(Error::invalid("lift is not injective"));
    }
    for a in 0..small.len() {
        for b in 0..small.len() {
            if image[small.op(a, b)] != big.op(image[a], image[b]) {
                return Err(Error::invalid("lift is not a rack morphism"));
            }
        }
    }
    let lifted = test_pair(&big, image[w.r], image[w.s])
        .ok_or_else(|| Error::invalid("lifted witness does not decompose"))?;
    Ok(TypeDVerdict::new(Status::TypeD, Some(lifted), "subrack-lift"))
}

/// True iff every `⟪{r,s}⟫` is indecomposable or equal to `{r, s}`.
pub fn is_type_m<R: RackOps + ?Sized>(x: &R) -> Result<bool> {
    if orbit_decomposition(x).len() > 1 {
        return Err(Error::invalid("type M is defined for indecomposable racks"));
    }
    let n = x.len();
    Ok((0..n).into_par_iter().all(|r| {
        (0..n).all(|s| {
            if r == s {
                return true;
            }
            let or = orbit2(x, r, s, r);
            if or.contains(&s) {
                return true;
            }
            let os = orbit2(x, r, s, s);
            or.len() + os.len() == 2
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::perm::{alternating_group, symmetric_group};
    use crate::rack::{affine, from_conjugacy_class, product, trivial_rack, AffineSpec};

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn condition_basics() {
        let d3 = affine(&AffineSpec::Cyclic { m: 3, t: -1 }, &Caps::default()).unwrap();
        for r in 0..3 {
            assert!(!condition_pair(&d3, r, r));
        }
        let t = trivial_rack(3);
        assert!(!condition_pair(&t, 0, 1));
        assert_eq!(is_type_d_rack(&d3).status, Status::NotTypeD);
        assert_eq!(is_type_d_rack(&trivial_rack(1)).status, Status::NotTypeD);
        assert!(is_type_m(&d3).unwrap());
    }

    #[test]
    fn s5_classes() {
        let s5 = symmetric_group(5).unwrap();
        let caps = Caps::default();
        let x23 = from_conjugacy_class(&s5, &p("(0 1)(2 3 4)", 5), &caps).unwrap();
        assert_eq!(is_type_d_rack(&x23).status, Status::NotTypeD);
        assert!(is_type_m(&x23).unwrap());
        assert_eq!(is_type_d_class(&s5, &p("(0 1)(2 3 4)", 5)).unwrap().status, Status::NotTypeD);

        let x4 = from_conjugacy_class(&s5, &p("(0 1 2 3)", 5), &caps).unwrap();
        let v = is_type_d_rack(&x4);
        assert!(v.is_type_d());
        assert!(verify_witness(&x4, v.witness.as_ref().unwrap()));
        assert!(!is_type_m(&x4).unwrap());
        let c = is_type_d_class(&s5, &p("(0 1 2 3)", 5)).unwrap();
        assert!(c.is_type_d());
        assert!(verify_witness(&ClassRack::new(&s5, &p("(0 1 2 3)", 5)).unwrap(), c.witness.as_ref().unwrap()));
    }

    #[test]
    fn group_and_rack_conditions_agree() {
        let s5 = symmetric_group(5).unwrap();
        for x in s5.class_representatives() {
            let cr = ClassRack::new(&s5, &x).unwrap();
            for r in 0..cr.len() {
                for s in 0..cr.len() {
                    assert_eq!(group_condition(&cr.elements()[r], &cr.elements()[s]), condition_pair(&cr, r, s));
                }
            }
        }
    }

    #[test]
    fn products_inherit_type_d() {
        let caps = Caps::default();
        let s4 = symmetric_group(4).unwrap();
        let x = from_conjugacy_class(&s4, &p("(0 1 2 3)", 4), &caps).unwrap();
        let v = is_type_d_rack(&x);
        if v.is_type_d() {
            let d3 = affine(&AffineSpec::Cyclic { m: 3, t: -1 }, &caps).unwrap();
            let pr = product(&x, &d3, &caps).unwrap();
            let w = is_type_d_rack(&pr);
            assert!(w.is_type_d());
            assert!(verify_witness(&pr, w.witness.as_ref().unwrap()));
        }
    }

    #[test]
    fn quasi_real() {
        let a5 = alternating_group(5).unwrap();
        assert!(quasi_real_types(&a5, &p("(0 1 2 3 4)", 5)).unwrap().contains(&4));
        assert!(quasi_real_types(&a5, &p("(0 1)(2 3)", 5)).unwrap().is_empty());
        assert!(quasi_real_types(&a5, &p("()", 5)).unwrap().is_empty());
    }

    #[test]
    fn jordan_cases() {
        let s5 = symmetric_group(5).unwrap();
        let v = jordan_criterion(&s5, &p("(0 1)", 5), &p("(2 3 4)", 5)).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert!(jordan_criterion(&s5, &p("(0 1)", 5), &p("(1 2)", 5)).is_err());
        let s7 = symmetric_group(7).unwrap();
        let v = jordan_criterion(&s7, &p("(0 1 2 3)", 7), &p("(4 5 6)", 7)).unwrap();
        assert!(v.is_type_d());
        let agree = is_type_d_class(&s7, &p("(0 1 2 3)(4 5 6)", 7)).unwrap();
        assert!(agree.is_type_d());
    }

    #[test]
    fn subrack_lift() {
        let s5 = symmetric_group(5).unwrap();
        let v = subrack_lift_check(&s5, &s5, &p("()", 5), &p("(0 1 2 3)", 5)).unwrap();
        assert!(v.is_type_d());
        let direct = is_type_d_class(&s5, &p("(0 1 2 3)", 5)).unwrap();
        assert_eq!(v.status, direct.status);
        // K = S3 on {0,1,2}, κ = (3 4): the S3 transpositions are not of type D.
        let k = PermGroup::generate(&[p("(0 1)", 5), p("(0 1 2)", 5)], 100).unwrap();
        let v = subrack_lift_check(&s5, &k, &p("(3 4)", 5), &p("(0 1)", 5)).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert!(subrack_lift_check(&s5, &k, &p("(2 3)", 5), &p("(0 1)", 5)).is_err());
    }
}
