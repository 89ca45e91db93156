//! Checks closed-form orbit profiles of the named families against brute
//! force, and shows the complete binary tree where homometry breaks.
//!
//!     cargo run --example families

use rowmotion::families::{chain_profile, combine_profiles, make_family, predicted_profile, verify_family, Family};
use rowmotion::rowmotion::DEFAULT_BUDGET;

fn main() -> rowmotion::Result<()> {
    for desc in ["star:3,3,2", "estar:b=2;3,2", "tk:3", "comb:4", "ecomb:n=3,k=2", "zipper:2", "cbt:3"] {
        let family: Family = desc.parse()?;
        println!("{}\n", verify_family(&family, DEFAULT_BUDGET)?);
    }

    // S(3,3) and a chain of 3 joined under a root branch of length 2.
    let left = predicted_profile(&"star:3,3".parse()?)?;
    let combined = combine_profiles(&left, &chain_profile(3), 2)?;
    let family: Family = "three:2,1,2,2,3".parse()?;
    let tree = make_family(&family)?;
    println!("{family} {}: {} orbits predicted", tree.notation(), combined.orbit_count());
    for c in &combined.classes {
        println!("  {} x{}: size {}, chi {}, hatchi {}", c.label, c.orbit_count, c.orbit_size, c.chi_sum, c.hatchi_sum);
    }
    println!("{}", verify_family(&family, DEFAULT_BUDGET)?);
    Ok(())
}
