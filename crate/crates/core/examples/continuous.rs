//! Piecewise-linear and birational rowmotion: finite order on a grid, and
//! a seeded search on a non-graded tree.
//!
//!     cargo run --release --example continuous

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rowmotion::continuous::{
    order_search_pl, order_search_rational, random_pl_point, random_rational_point, run_experiment, Dynamics,
    ScalarMode, MERSENNE_61,
};
use rowmotion::{Poset, RootedTree};

fn main() -> rowmotion::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let grid = Poset::chain_product(3, 2);
    let pl = order_search_pl(&grid, &random_pl_point(&grid, &mut rng), 100)?;
    let br = order_search_rational(&grid, &random_rational_point(grid.len(), &mut rng), 100)?;
    println!("[3]x[2] PL: {:?}", pl.outcome);
    println!("[3]x[2] birational: {:?}, peak {} bits", br.outcome, br.peak_bits.unwrap_or(0));

    let tree = RootedTree::parse("(()(()))")?;
    let record = run_experiment(
        tree.poset(),
        &tree.notation(),
        Dynamics::Birational,
        ScalarMode::ModP(MERSENNE_61),
        7,
        100_000,
        &mut ChaCha8Rng::seed_from_u64(7),
        false,
    )?;
    println!("{}", serde_json::to_string_pretty(&record).expect("records serialize"));
    Ok(())
}
