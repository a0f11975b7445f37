//! The braided vector space `(ℂX, c^q)` with
//! `c(e_x ⊗ e_y) = q_{x,y} e_{x▷y} ⊗ e_x`.

use crate::caps::Caps;
use crate::cocycles::{is_cocycle, ScalarCocycle};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rack::{Rack, RackOps};

use super::scalar::Scalar;

/// Degrees in `Inn(X)`: `deg(e_{x₁}⋯e_{x_n}) = φ_{x₁}⋯φ_{x_n}`. The braiding,
/// the derivations and the symmetrizers are all homogeneous.
pub struct Grading {
    order: usize,
    identity: u32,
    left: Vec<u32>,
    left_inv: Vec<u32>,
}

impl Grading {
    pub fn new(x: &Rack, caps: &Caps) -> Result<Self> {
        let g = x.inner_group(caps)?;
        let n = x.size();
        let order = g.order();
        let idx = |p: &Permutation| g.index_of(p).expect("closed under translations") as u32;
        let mut left = Vec::with_capacity(n * order);
        let mut left_inv = Vec::with_capacity(n * order);
        for a in 0..n {
            let t = x.translation(a);
            let ti = t.inverse();
            for h in g.elements() {
                left.push(idx(&t.compose_unchecked(h)));
                left_inv.push(idx(&ti.compose_unchecked(h)));
            }
        }
        let identity = idx(&Permutation::identity(n));
        Ok(Grading { order, identity, left, left_inv })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    /// `φ_x ∘ g`.
    pub fn left(&self, x: usize, g: usize) -> usize {
        self.left[x * self.order + g] as usize
    }

    /// `φ_x⁻¹ ∘ g`.
    pub fn left_inv(&self, x: usize, g: usize) -> usize {
        self.left_inv[x * self.order + g] as usize
    }

    pub fn of_word(&self, word: &[usize]) -> usize {
        word.iter().rev().fold(self.identity(), |g, &x| self.left(x, g))
    }
}

pub struct BraidedSpace<S> {
    rack: Rack,
    cocycle: ScalarCocycle,
    q: Vec<S>,
    grading: Grading,
}

impl<S: Scalar> BraidedSpace<S> {
    /// Checks the cocycle law and the braid equation.
    pub fn new(rack: Rack, cocycle: ScalarCocycle, caps: &Caps) -> Result<Self> {
        if let Err(v) = is_cocycle(&rack, &cocycle)? {
            return Err(Error::invalid(format!("cocycle law fails at ({}, {}, {})", v.x, v.y, v.z)));
        }
        let n = rack.size();
        let mut q = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let e = cocycle.get(a, b);
                q.push(
                    S::root_of_unity(e, cocycle.m)
                        .ok_or_else(|| Error::invalid(format!("ζ_{}^{e} is outside the scalar field", cocycle.m)))?,
                );
            }
        }
        let grading = Grading::new(&rack, caps)?;
        let space = BraidedSpace { rack, cocycle, q, grading };
        if let Some(w) = space.braid_violation() {
            return Err(Error::invalid(format!("braid equation fails on {w:?}")));
        }
        Ok(space)
    }

    pub fn rack(&self) -> &Rack {
        &self.rack
    }

    pub fn cocycle(&self) -> &ScalarCocycle {
        &self.cocycle
    }

    pub fn dim(&self) -> usize {
        self.rack.size()
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn q(&self, x: usize, y: usize) -> &S {
        &self.q[x * self.dim() + y]
    }

    /// `c(e_x ⊗ e_y) = q_{x,y} e_{x▷y} ⊗ e_x`.
    pub fn braid(&self, x: usize, y: usize) -> (S, usize, usize) {
        (self.q(x, y).clone(), self.rack.op(x, y), x)
    }

    /// Applies `id^{i} ⊗ c ⊗ id` to a basis tensor in place, returning the scalar.
    pub fn apply_generator(&self, word: &mut [usize], i: usize) -> S {
        let (s, a, b) = self.braid(word[i], word[i + 1]);
        word[i] = a;
        word[i + 1] = b;
        s
    }

    /// The `|X|² × |X|²` matrix of `c`, column `x·|X| + y`.
    pub fn braiding_matrix(&self) -> Vec<Vec<(u32, S)>> {
        let n = self.dim();
        let mut cols = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (s, a, b) = self.braid(x, y);
                cols.push(vec![((a * n + b) as u32, s)]);
            }
        }
        cols
    }

    /// First basis tensor where `c₁c₂c₁ ≠ c₂c₁c₂`.
    pub fn braid_violation(&self) -> Option<[usize; 3]> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let apply = |order: [usize; 3]| {
                        let mut w = [a, b, c];
                        let mut s = S::one();
                        for i in order {
                            s = s.mul(&self.apply_generator(&mut w, i));
                        }
                        (s, w)
                    };
                    if apply([0, 1, 0]) != apply([1, 0, 1]) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::chi_cocycle;
    use crate::nichols::scalar::{CycScalar, Q};
    use crate::perm::symmetric_group;
    use crate::rack::{affine, from_conjugacy_class, trivial_rack, AffineSpec};

    #[test]
    fn flip_on_trivial_rack() {
        let caps = Caps::default();
        let v: BraidedSpace<Q> = BraidedSpace::new(trivial_rack(3), ScalarCocycle::constant(3, 1, 0), &caps).unwrap();
        let m = v.braiding_matrix();
        assert_eq!(m[1], vec![(3, Q::from_int(1))]);
    }

    #[test]
    fn dihedral_minus_one() {
        let caps = Caps::default();
        let d3 = affine(&AffineSpec::Cyclic { m: 3, t: -1 }, &caps).unwrap();
        let v: BraidedSpace<Q> = BraidedSpace::new(d3.clone(), ScalarCocycle::constant(3, 2, 1), &caps).unwrap();
        assert_eq!(v.braid(0, 1), (Q::from_int(-1), d3.op(0, 1), 0));
    }

    #[test]
    fn braid_equation_for_chi() {
        let caps = Caps::default();
        let s4 = symmetric_group(4).unwrap();
        let x = from_conjugacy_class(&s4, &Permutation::parse("(0 1)", 4).unwrap(), &caps).unwrap();
        let chi = chi_cocycle(&x, 4).unwrap();
        let v: BraidedSpace<Q> = BraidedSpace::new(x.clone(), chi, &caps).unwrap();
        assert!(v.braid_violation().is_none());
        let w: BraidedSpace<CycScalar> = BraidedSpace::new(x.clone(), ScalarCocycle::constant(6, 3, 1), &caps).unwrap();
        assert!(w.braid_violation().is_none());
        let mut bad = ScalarCocycle::constant(6, 2, 1);
        bad.exponents[0][1] = 0;
        assert!(BraidedSpace::<Q>::new(x, bad, &caps).is_err());
    }
}
