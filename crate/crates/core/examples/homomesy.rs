//! Homomesy and homometry verdicts on a star.
//!
//!     cargo run --example homomesy

use rowmotion::families::{make_family, Family};
use rowmotion::rowmotion::{all_orbits, DEFAULT_BUDGET};
use rowmotion::statistics::{homomesy_of, homometry_of, Statistic};

fn main() -> rowmotion::Result<()> {
    let family: Family = "star:3,3,2".parse()?;
    let tree = make_family(&family)?;
    let orbits = all_orbits(&tree, DEFAULT_BUDGET)?;

    // a leaf of the third branch and the leaf of the first
    let (x, y) = (tree.leaf(3), tree.leaf(1));
    let stats = [
        Statistic::chi(),
        Statistic::hatchi(),
        2 * Statistic::chi_at(x) + Statistic::chi_at(tree.root()),
        2 * Statistic::chi_at(x) - 3 * Statistic::chi_at(y),
    ];
    for stat in &stats {
        let v = homomesy_of(&tree, stat, &orbits)?;
        match v.constant {
            Some(c) => println!("{stat}: homomesic, average {c}"),
            None => println!("{stat}: not homomesic"),
        }
    }
    for stat in &stats[..2] {
        let v = homometry_of(&tree, stat, &orbits)?;
        println!("{stat}: homometric = {}, table {:?}", v.is_homometric, v.class_table);
    }
    Ok(())
}
