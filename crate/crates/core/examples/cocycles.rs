//! Scalar cocycles on the transpositions of S4: the cocycle space over Z/6,
//! the sign cocycle chi, and a twist by the projective cocycle of S4.

use rackforge::cocycles::{are_gauge_equivalent, chi_cocycle, cocycle_space, s4_projective_twist, twist, ScalarCocycle};
use rackforge::perm::{symmetric_group, Permutation};
use rackforge::rack::from_conjugacy_class;
use rackforge::{Caps, Result};

fn main() -> Result<()> {
    let caps = Caps::default();
    let s4 = symmetric_group(4)?;
    let x = from_conjugacy_class(&s4, &Permutation::parse("(0 1)", 4)?, &caps)?;
    let space = cocycle_space(&x, 6, &caps)?;
    println!("Z2 = {}, B2 = {}, H2 = {}", space.z2, space.b2, space.h2);

    let minus = ScalarCocycle::constant(x.size(), 2, 1);
    let chi = chi_cocycle(&x, 4)?;
    println!("-1 and chi gauge equivalent: {}", are_gauge_equivalent(&x, &minus, &chi)?.is_some());
    let twisted = twist(&x, &minus, &s4_projective_twist(&x)?)?;
    println!("twist of -1 gauge equivalent to chi: {}", are_gauge_equivalent(&x, &twisted, &chi)?.is_some());
    Ok(())
}
