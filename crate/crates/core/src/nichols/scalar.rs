//! Exact scalars: rationals with a machine-word fast path, and elements of
//! cyclotomic fields `ℚ(ζ_m)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Field operations used by the Nichols engine.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
    /// `ζ_m^e`, or `None` if the root does not live in this field.
    fn root_of_unity(e: u64, m: u64) -> Option<Self>;
}

/// A rational number; `Small(n, d)` has `d > 0` and `gcd(n, d) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Q {
    Small(i64, i64),
    Big(BigRational),
}

impl Q {
    pub fn from_int(n: i64) -> Q {
        Q::Small(n, 1)
    }

    fn from_i128(n: i128, d: i128) -> Q {
        let g = n.gcd(&d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Q::Small(n, d),
            _ => Q::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(n, d),
            _ => Q::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => r.clone(),
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(r) => write!(f, "{r}"),
        }
    }
}

impl Scalar for Q {
    fn zero() -> Self {
        Q::Small(0, 1)
    }

    fn one() -> Self {
        Q::Small(1, 1)
    }

    fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Q::Small(s, 1);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Q::from_i128(a * d + c * b, b * d)
            }
            _ => Q::from_big(self.to_big() + other.to_big()),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_mul(*c) {
                        return Q::Small(s, 1);
                    }
                }
                Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Q::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Q::Small(n, d) => match n.checked_neg() {
                Some(n) => Q::Small(n, *d),
                None => Q::from_big(-self.to_big()),
            },
            Q::Big(r) => Q::from_big(-r.clone()),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Q::Small(n, d) if *n != i64::MIN => {
                if *n < 0 {
                    Q::Small(-d, -n)
                } else {
                    Q::Small(*d, *n)
                }
            }
            _ => Q::from_big(self.to_big().recip()),
        }
    }

    fn root_of_unity(e: u64, m: u64) -> Option<Self> {
        match m {
            0 => None,
            1 => Some(Q::one()),
            _ if (2 * e) % m == 0 => Some(if (e % m) == 0 { Q::one() } else { Q::from_int(-1) }),
            _ => None,
        }
    }
}

/// `Φ_m` with integer coefficients, constant term first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    // x^m − 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m % d == 0) {
        let den = cyclotomic_polynomial(d);
        let mut quot = vec![0i64; num.len() - den.len() + 1];
        let mut rem = num.clone();
        for i in (0..quot.len()).rev() {
            let c = rem[i + den.len() - 1];
            quot[i] = c;
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
        num = quot;
    }
    num
}

/// An element of `ℚ(ζ_m)` as a polynomial in `ζ` of degree `< φ(m)`.
/// `m = 0` marks a plain rational, compatible with every field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycScalar {
    m: u64,
    coeffs: Vec<Q>,
}

fn trim(v: &mut Vec<Q>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

/// Division with remainder by a polynomial with unit leading coefficient
/// not required; returns `(quotient, remainder)`.
fn poly_divmod(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b.last().expect("nonzero divisor").inv();
    let mut quot = vec![Q::zero(); rem.len() - b.len() + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + b.len() - 1].mul(&lead_inv);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(bj));
            }
        }
        quot[i] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out: Vec<Q> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Q::zero);
            let y = b.get(i).cloned().unwrap_or_else(Q::zero);
            x.sub(&y)
        })
        .collect();
    trim(&mut out);
    out
}

impl CycScalar {
    pub fn rational(q: Q) -> Self {
        let mut coeffs = vec![q];
        trim(&mut coeffs);
        CycScalar { m: 0, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coeffs
    }

    fn modulus(m: u64) -> Vec<Q> {
        cyclotomic_polynomial(m).into_iter().map(Q::from_int).collect()
    }

    fn build(m: u64, mut coeffs: Vec<Q>) -> Self {
        trim(&mut coeffs);
        if m > 0 && coeffs.len() > 1 {
            let (_, r) = poly_divmod(&coeffs, &Self::modulus(m));
            coeffs = r;
        }
        let m = if coeffs.len() <= 1 { 0 } else { m };
        CycScalar { m, coeffs }
    }

    fn common(&self, other: &Self) -> u64 {
        match (self.m, other.m) {
            (0, m) | (m, 0) => m,
            (a, b) => {
                assert_eq!(a, b, "mixing cyclotomic fields");
                a
            }
        }
    }
}

impl Scalar for CycScalar {
    fn zero() -> Self {
        CycScalar { m: 0, coeffs: Vec::new() }
    }

    fn one() -> Self {
        CycScalar { m: 0, coeffs: vec![Q::one()] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::build(self.common(other), coeffs)
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        Self::build(self.common(other), poly_mul(&self.coeffs, &other.coeffs))
    }

    fn neg(&self) -> Self {
        CycScalar { m: self.m, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    /// Extended Euclid against `Φ_m`.
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.coeffs.len() == 1 {
            return CycScalar { m: 0, coeffs: vec![self.coeffs[0].inv()] };
        }
        let (mut r0, mut r1) = (Self::modulus(self.m), self.coeffs.clone());
        let (mut t0, mut t1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![Q::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
            (r0, r1) = (r1, r);
            (t0, t1) = (t1, t2);
        }
        // r1 is a nonzero constant since Φ_m is irreducible.
        let c = r1[0].inv();
        Self::build(self.m, t1.iter().map(|x| x.mul(&c)).collect())
    }

    fn root_of_unity(e: u64, m: u64) -> Option<Self> {
        if m == 0 {
            return None;
        }
        let e = e % m;
        let mut coeffs = vec![Q::zero(); e as usize + 1];
        coeffs[e as usize] = Q::one();
        Some(Self::build(m, coeffs))
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity() {
        for m in [3u64, 4, 5, 6, 12] {
            let z = CycScalar::root_of_unity(1, m).unwrap();
            let mut p = CycScalar::one();
            for k in 1..=m {
                p = p.mul(&z);
                assert_eq!(p == CycScalar::one(), k == m, "m={m} k={k}");
            }
            // 1 + ζ + … + ζ^{m−1} = 0 for m > 1.
            let sum = (0..m).fold(CycScalar::zero(), |acc, k| acc.add(&CycScalar::root_of_unity(k, m).unwrap()));
            assert!(sum.is_zero());
            let w = z.add(&CycScalar::rational(Q::from_int(2)));
            assert_eq!(w.mul(&w.inv()), CycScalar::one());
        }
        assert_eq!(Q::root_of_unity(1, 2), Some(Q::from_int(-1)));
        assert_eq!(Q::root_of_unity(2, 4), Some(Q::from_int(-1)));
        assert_eq!(Q::root_of_unity(1, 3), None);
    }

    #[test]
    fn overflow_falls_back() {
        let big = Q::from_int(i64::MAX);
        let s = big.add(&big);
        assert!(matches!(s, Q::Big(_)));
        assert_eq!(s.sub(&big), Q::from_int(i64::MAX));
        assert_eq!(Q::from_int(i64::MAX).mul(&Q::from_int(3)).mul(&Q::from_int(3).inv()), Q::from_int(i64::MAX));
    }

    proptest! {
        #[test]
        fn rational_field_laws(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = Q::from_int(a).mul(&Q::from_int(b).inv());
            let y = Q::from_int(c).mul(&Q::from_int(d).inv());
            prop_assert_eq!(x.add(&y).sub(&y), x.clone());
            if !y.is_zero() {
                prop_assert_eq!(x.mul(&y).mul(&y.inv()), x.clone());
            }
            prop_assert_eq!(x.to_big() + y.to_big(), x.add(&y).to_big());
        }
    }
}
