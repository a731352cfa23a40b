//! The truncated tree construction: elements `b_i`, one per branch, built
//! from disjoint pools of free generators, and their ideal independence.

use boolpres::theorem_b::{build_construction, TreeParams};
use boolpres::Error;

fn main() -> Result<(), Error> {
    run()
}

pub fn run() -> Result<(), Error> {
    let params = TreeParams {
        depth: 2,
        widths: vec![2, 2],
        branches: vec![vec![0, 0], vec![0, 1], vec![1, 0]],
    };
    let c = build_construction(params, 7)?;
    for i in 0..c.branch_count() {
        println!("b_{i} = {}", c.b(i));
        println!("  {}", c.check_partition(i)?);
    }
    for i in 0..c.branch_count() {
        let others: Vec<usize> = (0..c.branch_count()).filter(|&j| j != i).collect();
        println!("{}", c.check_ideal_independence(i, &others)?);
    }
    // Branch 2 leaves the others at level 1.
    let w = c.divergence_witness(2, &[0, 1], 1)?;
    println!("level 1 witness for b_2: holds={}, m={:?}", w.holds(), w.m);
    Ok(())
}
