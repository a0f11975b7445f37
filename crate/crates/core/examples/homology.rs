//! Second homology of a few conjugacy-class racks, and the cyclic groups it
//! predicts for second cohomology with coefficients in Z/m.

use rackforge::homology::{h2_dual, rack_homology};
use rackforge::perm::{alternating_group, symmetric_group, Permutation};
use rackforge::rack::from_conjugacy_class;
use rackforge::{Caps, Result};

fn main() -> Result<()> {
    let caps = Caps::default();
    let cases = [(symmetric_group(5)?, "(0 1)(2 3 4)"), (alternating_group(5)?, "(0 1 2)"), (symmetric_group(6)?, "(0 1)")];
    for (g, rep) in &cases {
        let x = from_conjugacy_class(g, &Permutation::parse(rep, g.degree())?, &caps)?;
        let h = rack_homology(&x, 2, &caps)?;
        println!("{:<20} H2 = {:<10} Hom(H2, Z/6) = {:?}", x.provenance(), h.to_string(), h2_dual(&h, 6));
    }
    Ok(())
}
