//! Twisted homogeneous racks over A5: sizes and the type-D criteria.

use std::sync::Arc;

use rackforge::perm::{alternating_group, Permutation};
use rackforge::rack::RackOps;
use rackforge::thr::{thr_criteria, ThrRack, ThrSpec};
use rackforge::{Caps, Result};

fn main() -> Result<()> {
    let caps = Caps::default();
    let a5 = Arc::new(alternating_group(5)?);
    for (t, ell) in [(2, "e"), (3, "e"), (2, "(0 1 2)"), (3, "(0 1 2 3 4)"), (2, "(0 1)(2 3)")] {
        let spec = ThrSpec::new(a5.clone(), t, None, Permutation::parse(ell, 5)?)?;
        let size = ThrRack::new(&spec, &caps)?.len();
        let v = thr_criteria(&spec, &caps)?;
        println!("t = {t}, ell = {ell:<12} size {size:>6}  {} ({})", v.status, v.method);
    }
    Ok(())
}
