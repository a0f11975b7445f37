//! Twisted homogeneous racks: twisted classes in `L^t` under
//! `u(ℓ₁,…,ℓ_t) = (θ(ℓ_t), ℓ₁, …, ℓ_{t−1})`.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::perm::{GroupAutomorphism, PermGroup, Permutation};
use crate::rack::{Rack, RackOps};
use crate::typed::{is_type_d_class, is_type_d_homogeneous, quasi_real_types, Status, TypeDVerdict};

/// Largest `|L|` for which the multiplication table is precomputed.
const MAX_TABLE_ORDER: usize = 4096;

#[derive(Clone, Debug)]
pub struct ThrSpec {
    pub group: Arc<PermGroup>,
    pub t: usize,
    pub theta: GroupAutomorphism,
    pub ell: Permutation,
}

impl ThrSpec {
    pub fn new(group: Arc<PermGroup>, t: usize, theta: Option<GroupAutomorphism>, ell: Permutation) -> Result<Self> {
        if t < 2 {
            return Err(Error::invalid("t must be at least 2"));
        }
        if !group.contains(&ell) {
            return Err(Error::NotMember(ell.to_string()));
        }
        let theta = match theta {
            Some(th) => {
                if !Arc::ptr_eq(th.domain(), &group) && th.domain().elements() != group.elements() {
                    return Err(Error::InvalidAutomorphism("automorphism of a different group".into()));
                }
                th
            }
            None => GroupAutomorphism::identity(group.clone()),
        };
        Ok(ThrSpec { group, t, theta, ell })
    }
}

/// `x_t x_{t−1} ⋯ x₁`.
pub fn normalize_representative(tuple: &[Permutation]) -> Result<Permutation> {
    let first = tuple.first().ok_or_else(|| Error::invalid("empty tuple"))?;
    let mut acc = Permutation::identity(first.degree());
    for x in tuple {
        acc = x.compose(&acc)?;
    }
    Ok(acc)
}

/// Indexed arithmetic in `L`.
struct Arith {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    theta: Vec<u32>,
    theta_inv: Vec<u32>,
    identity: u32,
}

impl Arith {
    fn new(group: &PermGroup, theta: &GroupAutomorphism) -> Result<Self> {
        let n = group.order();
        if n > MAX_TABLE_ORDER {
            return Err(Error::CapExceeded { what: "twisted homogeneous base group", size: n, cap: MAX_TABLE_ORDER });
        }
        let el = group.elements();
        let idx = |p: &Permutation| group.index_of(p).expect("closed group") as u32;
        let mut mul = Vec::with_capacity(n * n);
        for a in el {
            for b in el {
                mul.push(idx(&a.compose_unchecked(b)));
            }
        }
        let inv = el.iter().map(|a| idx(&a.inverse())).collect();
        let theta_t: Vec<u32> = theta.table().to_vec();
        let theta_inv = theta.inverse().table().to_vec();
        let identity = idx(&Permutation::identity(group.degree()));
        Ok(Arith { n, mul, inv, theta: theta_t, theta_inv, identity })
    }

    fn m(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    fn i(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    fn u(&self, v: &[u32]) -> Vec<u32> {
        let t = v.len();
        let mut out = Vec::with_capacity(t);
        out.push(self.theta[v[t - 1] as usize]);
        out.extend_from_slice(&v[..t - 1]);
        out
    }

    fn u_inv(&self, v: &[u32]) -> Vec<u32> {
        let mut out = v[1..].to_vec();
        out.push(self.theta_inv[v[0] as usize]);
        out
    }
}

/// A twisted homogeneous rack with elements indexed in BFS order from the
/// seed tuple; operations are computed on demand.
pub struct ThrRack {
    t: usize,
    group: Arc<PermGroup>,
    arith: Arith,
    elements: Vec<u32>,
    index: FxHashMap<Box<[u32]>, u32>,
}

impl ThrRack {
    /// `C_ℓ`, seeded at `(e, …, e, ℓ)`.
    pub fn new(spec: &ThrSpec, caps: &Caps) -> Result<Self> {
        let arith = Arith::new(&spec.group, &spec.theta)?;
        let ell = spec.group.index_of(&spec.ell).ok_or_else(|| Error::NotMember(spec.ell.to_string()))? as u32;
        let mut seed = vec![arith.identity; spec.t];
        seed[spec.t - 1] = ell;
        Self::from_seed(spec.group.clone(), arith, seed, caps)
    }

    /// `C_(x₁,…,x_t)`.
    pub fn from_tuple(spec: &ThrSpec, tuple: &[Permutation], caps: &Caps) -> Result<Self> {
        if tuple.len() != spec.t {
            return Err(Error::invalid(format!("expected a tuple of length {}", spec.t)));
        }
        let arith = Arith::new(&spec.group, &spec.theta)?;
        let seed = tuple
            .iter()
            .map(|x| spec.group.index_of(x).map(|i| i as u32).ok_or_else(|| Error::NotMember(x.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_seed(spec.group.clone(), arith, seed, caps)
    }

    fn from_seed(group: Arc<PermGroup>, arith: Arith, seed: Vec<u32>, caps: &Caps) -> Result<Self> {
        let t = seed.len();
        // |C_ℓ| = |L|^{t−1} · |O^{L,θ}_ℓ|.
        let ell = normalize_indices(&arith, &seed);
        let twisted = twisted_class_size(&group, &arith, ell);
        let expected = (arith.n as u128).pow(t as u32 - 1) * twisted as u128;
        if expected > caps.implicit_rack as u128 {
            return Err(Error::CapExceeded {
                what: "twisted homogeneous rack",
                size: usize::try_from(expected).unwrap_or(usize::MAX),
                cap: caps.implicit_rack,
            });
        }
        let gens: Vec<u32> = group.generators().iter().map(|h| group.index_of(h).unwrap() as u32).collect();
        let mut elements = seed.clone();
        let mut index: FxHashMap<Box<[u32]>, u32> = FxHashMap::default();
        index.insert(seed.into_boxed_slice(), 0);
        let mut head = 0;
        let mut g = vec![arith.identity; t];
        while head * t < elements.len() {
            let y: Vec<u32> = elements[head * t..(head + 1) * t].to_vec();
            head += 1;
            for pos in 0..t {
                for &h in &gens {
                    g[pos] = h;
                    let ug = arith.u(&g);
                    let z: Vec<u32> = (0..t).map(|k| arith.m(arith.m(g[k], y[k]), arith.i(ug[k]))).collect();
                    g[pos] = arith.identity;
                    if !index.contains_key(z.as_slice()) {
                        index.insert(z.clone().into_boxed_slice(), (elements.len() / t) as u32);
                        elements.extend_from_slice(&z);
                    }
                }
            }
        }
        debug_assert_eq!(elements.len() / t, expected as usize);
        Ok(ThrRack { t, group, arith, elements, index })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn tuple(&self, x: usize) -> &[u32] {
        &self.elements[x * self.t..(x + 1) * self.t]
    }

    pub fn tuple_perms(&self, x: usize) -> Vec<Permutation> {
        self.tuple(x).iter().map(|&i| self.group.elements()[i as usize].clone()).collect()
    }

    pub fn label(&self, x: usize) -> String {
        let parts: Vec<String> = self.tuple_perms(x).iter().map(|p| p.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn index_of_tuple(&self, tuple: &[u32]) -> Option<usize> {
        self.index.get(tuple).map(|&i| i as usize)
    }

    /// Dense table, validated.
    pub fn to_rack(&self, caps: &Caps) -> Result<Rack> {
        let n = self.len();
        caps.check("twisted homogeneous rack", n, caps.rack_size)?;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.op(a, b) as u32);
            }
        }
        let labels = (0..n).map(|x| self.label(x)).collect();
        Rack::from_flat(n, table, labels, format!("thr(t={})", self.t))
    }
}

fn normalize_indices(arith: &Arith, tuple: &[u32]) -> u32 {
    tuple.iter().fold(arith.identity, |acc, &x| arith.m(x, acc))
}

fn twisted_class_size(group: &PermGroup, arith: &Arith, ell: u32) -> usize {
    let gens: Vec<u32> = group.generators().iter().map(|h| group.index_of(h).unwrap() as u32).collect();
    let mut seen = vec![false; arith.n];
    seen[ell as usize] = true;
    let mut stack = vec![ell];
    let mut count = 1;
    while let Some(y) = stack.pop() {
        for &h in &gens {
            let z = arith.m(arith.m(h, y), arith.i(arith.theta[h as usize]));
            if !seen[z as usize] {
                seen[z as usize] = true;
                count += 1;
                stack.push(z);
            }
        }
    }
    count
}

impl RackOps for ThrRack {
    fn len(&self) -> usize {
        self.elements.len() / self.t
    }

    /// `y ▷ z = y · u(z y⁻¹)`.
    fn op(&self, a: usize, b: usize) -> usize {
        let (y, z) = (self.tuple(a), self.tuple(b));
        let w: Vec<u32> = (0..self.t).map(|k| self.arith.m(z[k], self.arith.i(y[k]))).collect();
        let uw = self.arith.u(&w);
        let out: Vec<u32> = (0..self.t).map(|k| self.arith.m(y[k], uw[k])).collect();
        self.index[out.as_slice()] as usize
    }

    /// Solves `y ▷ x = z`: `x = u⁻¹(y⁻¹ z) · y`.
    fn op_inv(&self, a: usize, b: usize) -> usize {
        let (y, z) = (self.tuple(a), self.tuple(b));
        let w: Vec<u32> = (0..self.t).map(|k| self.arith.m(self.arith.i(y[k]), z[k])).collect();
        let v = self.arith.u_inv(&w);
        let out: Vec<u32> = (0..self.t).map(|k| self.arith.m(v[k], y[k])).collect();
        self.index[out.as_slice()] as usize
    }
}

/// Dense realization of `C_ℓ`.
pub fn build_thr(spec: &ThrSpec, caps: &Caps) -> Result<Rack> {
    ThrRack::new(spec, caps)?.to_rack(caps)
}

fn has_odd_prime_factor(mut n: u64) -> bool {
    while n % 2 == 0 && n > 0 {
        n /= 2;
    }
    n > 1
}

/// Decision rules for `θ = id`, tried in order. A positive rule is reported
/// together with a witness found in the implicit rack; if the rack is too
/// large to index, the verdict stays INCONCLUSIVE.
pub fn thr_criteria(spec: &ThrSpec, caps: &Caps) -> Result<TypeDVerdict> {
    let inconclusive = |method: &str| TypeDVerdict { status: Status::Inconclusive, witness: None, method: method.into() };
    if !spec.theta.is_identity() {
        return Ok(inconclusive("theta-nontrivial"));
    }
    let (l, t, ell) = (&spec.group, spec.t, &spec.ell);
    let ord = ell.order();
    let involution = ord == 2;
    let identity = ell.is_identity();

    let mut rule = None;
    if !identity {
        let fires = quasi_real_types(l, ell)?
            .into_iter()
            .any(|j| t >= 3 || (2 * (j - 1)) % ord != 0);
        if fires {
            rule = Some("quasi-real");
        }
    }
    if rule.is_none() && involution && t > 4 && t % 2 == 0 {
        rule = Some("involution-even");
    }
    if rule.is_none() && involution && t % 2 == 1 && is_type_d_class(l, ell)?.is_type_d() {
        rule = Some("involution-odd");
    }
    if rule.is_none() && identity {
        let d = num_integer::gcd(t as u64, l.order() as u64);
        if has_odd_prime_factor(d) || (d % 2 == 0 && t >= 6) {
            rule = Some("identity-gcd");
        }
    }
    if let Some(rule) = rule {
        let rack = match ThrRack::new(spec, caps) {
            Ok(r) => r,
            Err(Error::CapExceeded { .. }) => return Ok(inconclusive(&format!("{rule}: witness search exceeds cap"))),
            Err(e) => return Err(e),
        };
        let v = is_type_d_homogeneous(&rack, rule);
        return Ok(if v.is_type_d() { v } else { inconclusive(&format!("{rule}: no witness found")) });
    }
    if identity && t == 2 && matches!(l.order(), 60 | 360) {
        let rack = ThrRack::new(spec, caps)?;
        let v = is_type_d_homogeneous(&rack, "checked-negative");
        return Ok(v);
    }
    Ok(inconclusive("no-rule"))
}
