//! Builds racks from a conjugacy class, affine data and a finite field, and
//! prints their sizes, orbits and inner groups.

use rackforge::perm::{symmetric_group, Permutation};
use rackforge::rack::{affine, from_conjugacy_class, AffineSpec};
use rackforge::{Caps, Result};

fn main() -> Result<()> {
    let caps = Caps::default();
    let s5 = symmetric_group(5)?;
    let four_cycles = from_conjugacy_class(&s5, &Permutation::parse("(0 1 2 3)", 5)?, &caps)?;
    let q5 = affine(&AffineSpec::Cyclic { m: 5, t: 2 }, &caps)?;
    let tetra = affine(&AffineSpec::Field { q: 4, a: 2 }, &caps)?;
    for x in [&four_cycles, &q5, &tetra] {
        println!(
            "{:<24} size {:>3}  orbits {}  |Inn| {}",
            x.provenance(),
            x.size(),
            x.orbit_decomposition().len(),
            x.inner_group(&caps)?.order()
        );
    }
    println!("{}", serde_json::to_string(&q5.to_file())?);
    Ok(())
}
