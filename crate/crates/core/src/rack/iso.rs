use super::{Rack, RackOps};
use crate::caps::Caps;
use crate::error::Result;
use crate::perm::CycleType;

/// Per-element isomorphism invariant: cycle type of φ_x, the number of
/// elements fixing x, and the size of the inner orbit.
fn invariants(x: &Rack) -> Vec<(CycleType, usize, usize)> {
    let orbits = x.orbit_decomposition();
    let mut orbit_size = vec![0; x.size()];
    for o in &orbits {
        for &i in o {
            orbit_size[i] = o.len();
        }
    }
    (0..x.size())
        .map(|a| {
            let fixers = (0..x.size()).filter(|&b| x.op(b, a) == a).count();
            (x.translation(a).cycle_type(), fixers, orbit_size[a])
        })
        .collect()
}

/// A rack isomorphism `f` with `f(a ▷ b) = f(a) ▷ f(b)`, if one exists.
pub fn is_isomorphic(x: &Rack, y: &Rack, caps: &Caps) -> Result<Option<Vec<usize>>> {
    let n = x.size();
    caps.check("isomorphism search", n.max(y.size()), caps.iso_size)?;
    if n != y.size() {
        return Ok(None);
    }
    let ix = invariants(x);
    let iy = invariants(y);
    let mut sx = ix.clone();
    let mut sy = iy.clone();
    sx.sort();
    sy.sort();
    if sx != sy {
        return Ok(None);
    }
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(search(x, y, &ix, &iy, &mut f, &mut used).then_some(f))
}

fn search(
    x: &Rack,
    y: &Rack,
    ix: &[(CycleType, usize, usize)],
    iy: &[(CycleType, usize, usize)],
    f: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let Some(a) = f.iter().position(|&v| v == usize::MAX) else {
        return true;
    };
    for b in 0..y.size() {
        if used[b] || ix[a] != iy[b] {
            continue;
        }
        let saved_f = f.clone();
        let saved_used = used.clone();
        if assign(x, y, ix, iy, f, used, a, b) && search(x, y, ix, iy, f, used) {
            return true;
        }
        *f = saved_f;
        *used = saved_used;
    }
    false
}

/// Assigns `f(a) = b` and propagates through products with every assigned
/// element. Returns false on a conflict.
#[allow(clippy::too_many_arguments)]
fn assign(
    x: &Rack,
    y: &Rack,
    ix: &[(CycleType, usize, usize)],
    iy: &[(CycleType, usize, usize)],
    f: &mut [usize],
    used: &mut [bool],
    a: usize,
    b: usize,
) -> bool {
    let mut queue = vec![(a, b)];
    let mut assigned: Vec<usize> = (0..f.len()).filter(|&i| f[i] != usize::MAX).collect();
    while let Some((a, b)) = queue.pop() {
        if f[a] != usize::MAX {
            if f[a] != b {
                return false;
            }
            continue;
        }
        if used[b] || ix[a] != iy[b] {
            return false;
        }
        f[a] = b;
        used[b] = true;
        assigned.push(a);
        for &c in &assigned {
            let d = f[c];
            queue.push((x.op(a, c), y.op(b, d)));
            queue.push((x.op(c, a), y.op(d, b)));
            queue.push((x.op_inv(a, c), y.op_inv(b, d)));
            queue.push((x.op_inv(c, a), y.op_inv(d, b)));
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::rack::{affine, trivial_rack, AffineSpec};

    #[test]
    fn isomorphism_search() {
        let caps = Caps::default();
        let d3 = affine(&AffineSpec::Cyclic { m: 3, t: -1 }, &caps).unwrap();
        let f = is_isomorphic(&d3, &d3, &caps).unwrap().unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(f[d3.op(a, b)], d3.op(f[a], f[b]));
            }
        }
        assert!(is_isomorphic(&d3, &trivial_rack(3), &caps).unwrap().is_none());
        let q2 = affine(&AffineSpec::Cyclic { m: 5, t: 2 }, &caps).unwrap();
        let q3 = affine(&AffineSpec::Cyclic { m: 5, t: 3 }, &caps).unwrap();
        // Q_{5,2} and Q_{5,3} are not isomorphic (2 and 3 are not conjugate in Aut(Z/5)).
        assert!(is_isomorphic(&q2, &q3, &caps).unwrap().is_none());
        let q7 = affine(&AffineSpec::Cyclic { m: 7, t: 3 }, &caps).unwrap();
        assert!(is_isomorphic(&q7, &q7, &caps).unwrap().is_some());
        let big = trivial_rack(65);
        assert!(matches!(is_isomorphic(&big, &big, &caps), Err(Error::CapExceeded { .. })));
    }
}
