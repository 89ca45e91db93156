//! Enumerates the rowmotion orbits of a small tree and draws each orbit as
//! a cylinder tiling.
//!
//!     cargo run --example orbits_and_tilings -- "((())(()()))"

use rowmotion::rowmotion::{all_orbits, DEFAULT_BUDGET};
use rowmotion::tiling::{render_ascii, tiling_of_orbit, validate_tiling};
use rowmotion::RootedTree;

fn main() -> rowmotion::Result<()> {
    let notation = std::env::args().nth(1).unwrap_or_else(|| "((())(()()))".into());
    let tree = RootedTree::parse(&notation)?;
    let orbits = all_orbits(&tree, DEFAULT_BUDGET)?;
    println!("{notation}: {} nodes, {} antichains, {} orbits", tree.len(), tree.count_antichains(), orbits.len());
    for (i, orbit) in orbits.iter().enumerate() {
        let tiling = tiling_of_orbit(&tree, orbit)?;
        assert!(validate_tiling(&tree, &tiling).violation.is_none());
        println!("\norbit {i}: size {}, delta {}", orbit.len(), orbit.delta());
        print!("{}", render_ascii(&tiling));
    }
    Ok(())
}
