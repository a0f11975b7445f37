//! Type-D verdicts for every nontrivial conjugacy class of S5, with the
//! witnessing pair re-checked from scratch.

use rackforge::perm::symmetric_group;
use rackforge::typed::{is_type_d_class, verify_witness, ClassRack};
use rackforge::Result;

fn main() -> Result<()> {
    let s5 = symmetric_group(5)?;
    for rep in s5.class_representatives().into_iter().filter(|p| !p.is_identity()) {
        let v = is_type_d_class(&s5, &rep)?;
        let checked = match &v.witness {
            Some(w) => verify_witness(&ClassRack::new(&s5, &rep)?, w).to_string(),
            None => "-".into(),
        };
        println!("{:<8} {:<16} {:<11} witness re-verified: {checked}", rep.cycle_type().to_string(), rep.to_string(), v.status);
    }
    Ok(())
}
