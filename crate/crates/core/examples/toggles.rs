//! Rowmotion as a product of toggles, checked against the definition for
//! every ideal and every linear extension of a small tree.
//!
//!     cargo run --example toggles

use rowmotion::rowmotion::{rho_ideal, rho_via_toggles};
use rowmotion::{NodeId, Poset, RootedTree};

fn extensions(poset: &Poset) -> Vec<Vec<NodeId>> {
    fn go(poset: &Poset, cur: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        if cur.len() == poset.len() {
            out.push(cur.clone());
            return;
        }
        for x in poset.elements() {
            if !cur.contains(&x) && poset.lower_covers(x).iter().all(|y| cur.contains(y)) {
                cur.push(x);
                go(poset, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(poset, &mut Vec::new(), &mut out);
    out
}

fn main() -> rowmotion::Result<()> {
    let tree = RootedTree::parse("((())(()))")?;
    let exts = extensions(tree.poset());
    let ideals = tree.poset().ideals();
    for l in &ideals {
        let direct = rho_ideal(&tree, l)?;
        for ext in &exts {
            assert_eq!(rho_via_toggles(tree.poset(), l, ext)?, direct);
        }
        println!("{:?} -> {:?}", l.iter().collect::<Vec<_>>(), direct.iter().collect::<Vec<_>>());
    }
    println!("{} ideals x {} linear extensions agree", ideals.len(), exts.len());
    Ok(())
}
