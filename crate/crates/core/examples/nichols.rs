//! Hilbert series of Nichols algebras over small racks, with the symmetrizer
//! ranks in low degree as a cross-check.

use rackforge::cocycles::ScalarCocycle;
use rackforge::nichols::{hilbert_series, symmetrizer_dims};
use rackforge::perm::{symmetric_group, Permutation};
use rackforge::rack::{affine, from_conjugacy_class, AffineSpec};
use rackforge::{Caps, Result};

fn main() -> Result<()> {
    let caps = Caps::default();
    let s4 = symmetric_group(4)?;
    let racks = [
        affine(&AffineSpec::Cyclic { m: 3, t: -1 }, &caps)?,
        affine(&AffineSpec::Field { q: 4, a: 2 }, &caps)?,
        from_conjugacy_class(&s4, &Permutation::parse("(0 1)", 4)?, &caps)?,
    ];
    for x in &racks {
        let q = ScalarCocycle::constant(x.size(), 2, 1);
        let r = hilbert_series(x, &q, 20, &caps)?;
        let sym = symmetrizer_dims(x, &q, 3, &caps)?;
        println!("{:<20} dims {:?}", x.provenance(), r.dims);
        println!("{:<20} total {:?}, top {:?}, symmetrizer ranks {:?}", "", r.total, r.top, sym);
    }
    Ok(())
}
