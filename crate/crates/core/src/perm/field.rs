//! Finite fields 𝔽_q for prime q and a fixed table of small prime powers.
//! Elements are encoded as integers `0..q` whose base-p digits are the
//! coefficients of the polynomial residue, constant term first.

use crate::error::{Error, Result};

/// Largest prime accepted as a field size.
pub const MAX_PRIME: u64 = 1024;

/// Irreducible (Conway) polynomials for the supported prime powers, given as
/// `(p, k, [c_0, …, c_{k−1}])` for the monic `x^k + Σ c_i x^i`.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (3, 2, &[2, 2]),
    (2, 4, &[1, 1, 0, 0]),
    (5, 2, &[2, 4]),
    (3, 3, &[1, 2, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (7, 2, &[3, 6]),
];

#[derive(Clone, Debug)]
pub struct Field {
    q: u32,
    p: u32,
    k: u32,
    add: Vec<u32>,
    neg: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl Field {
    pub fn new(q: u64) -> Result<Field> {
        if is_prime(q) {
            if q > MAX_PRIME {
                return Err(Error::UnsupportedField(q));
            }
            return Ok(Field::build(q as u32, 1, &[]));
        }
        let &(p, k, low) = CONWAY
            .iter()
            .find(|(p, k, _)| (*p as u64).pow(*k) == q)
            .ok_or(Error::UnsupportedField(q))?;
        Ok(Field::build(p, k, low))
    }

    fn build(p: u32, k: u32, low: &[u32]) -> Field {
        let q = p.pow(k);
        let digits = |mut a: u32| -> Vec<u32> {
            (0..k)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[u32]| ds.iter().rev().fold(0, |acc, &d| acc * p + d);
        let qs = q as usize;
        let mut add = vec![0u32; qs * qs];
        let mut neg = vec![0u32; qs];
        for a in 0..q {
            let da = digits(a);
            neg[a as usize] = encode(&da.iter().map(|&d| (p - d) % p).collect::<Vec<_>>());
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = encode(&s);
            }
        }
        // Multiplication by the residue class of x (or plain multiplication for k = 1).
        let mul_slow = |a: u32, b: u32| -> u32 {
            if k == 1 {
                return ((a as u64 * b as u64) % p as u64) as u32;
            }
            let da = digits(a);
            let db = digits(b);
            let mut prod = vec![0u32; 2 * k as usize];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for deg in (k as usize..prod.len()).rev() {
                let c = prod[deg];
                if c == 0 {
                    continue;
                }
                prod[deg] = 0;
                // x^k ≡ −Σ c_i x^i
                for (i, &ci) in low.iter().enumerate() {
                    let t = deg - k as usize + i;
                    prod[t] = (prod[t] + c * (p - ci % p)) % p;
                }
            }
            encode(&prod[..k as usize])
        };
        // Smallest encoded primitive element.
        let order = q - 1;
        let mut exp = Vec::new();
        for g in 1..q {
            exp.clear();
            let mut x = 1u32;
            for _ in 0..order {
                exp.push(x);
                x = mul_slow(x, g);
            }
            let mut seen = vec![false; qs];
            if exp.iter().all(|&e| !std::mem::replace(&mut seen[e as usize], true)) {
                break;
            }
        }
        let mut log = vec![0u32; qs];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        Field { q, p, k, add, neg, log, exp }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// The fixed generator ξ of 𝔽_q^×: the smallest encoded primitive element.
    pub fn primitive(&self) -> u32 {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    /// Reduces an integer to a field element: residue mod p for prime fields,
    /// otherwise the encoded value, which must lie in `0..q`.
    pub fn element(&self, v: i64) -> Result<u32> {
        if self.k == 1 {
            Ok(v.rem_euclid(self.p as i64) as u32)
        } else if (0..self.q as i64).contains(&v) {
            Ok(v as u32)
        } else {
            Err(Error::Parse(format!("{v} is not an element code of F_{}", self.q)))
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    /// `ξ^e` for the fixed primitive element ξ.
    pub fn pow_primitive(&self, e: i64) -> u32 {
        let n = (self.q - 1) as i64;
        self.exp[e.rem_euclid(n) as usize]
    }

    /// Discrete logarithm base ξ of a nonzero element.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field(f: &Field) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in [0, 1, q - 1, q / 2] {
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c)),
                        "distributivity in F_{q}"
                    );
                }
            }
        }
    }

    #[test]
    fn all_tabulated_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 13, 16, 25, 27, 32, 49] {
            check_field(&Field::new(q).unwrap());
        }
    }

    #[test]
    fn unsupported_sizes_are_rejected() {
        assert!(matches!(Field::new(6), Err(Error::UnsupportedField(6))));
        assert!(matches!(Field::new(81), Err(Error::UnsupportedField(81))));
        assert!(Field::new(1031).is_err());
    }

    #[test]
    fn primitive_element_generates() {
        let f = Field::new(5).unwrap();
        assert_eq!(f.primitive(), 2);
        let f = Field::new(9).unwrap();
        let xi = f.primitive();
        let mut x = 1;
        let mut seen = std::collections::HashSet::new();
        for _ in 0..8 {
            seen.insert(x);
            x = f.mul(x, xi);
        }
        assert_eq!(seen.len(), 8);
    }
}
