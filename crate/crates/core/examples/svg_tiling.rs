//! Writes one orbit's tiling as SVG and its JSON form.
//!
//!     cargo run --example svg_tiling -- "star:3,3,2" 1 > orbit.svg

use rowmotion::families::{make_family, Family};
use rowmotion::rowmotion::{all_orbits, DEFAULT_BUDGET};
use rowmotion::tiling::{render_svg, tiling_of_orbit};

fn main() -> rowmotion::Result<()> {
    let mut args = std::env::args().skip(1);
    let family: Family = args.next().unwrap_or_else(|| "star:3,3,2".into()).parse()?;
    let index: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let tree = make_family(&family)?;
    let orbits = all_orbits(&tree, DEFAULT_BUDGET)?;
    let orbit = orbits.get(index).expect("orbit index in range");
    let tiling = tiling_of_orbit(&tree, orbit)?;
    eprintln!("{}", serde_json::to_string(&tiling).expect("tilings serialize"));
    print!("{}", render_svg(&tiling));
    Ok(())
}
