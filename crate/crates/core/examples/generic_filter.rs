//! A generic-filter session: blocks of mu indices, density requests met by
//! fresh generators in the requested block.

use boolpres::algebra::ElementaryConstraint;
use boolpres::invariants::is_dense_for;
use boolpres::sampler::{DenseRequest, GenericSession};
use boolpres::Error;

fn main() -> Result<(), Error> {
    run()
}

pub fn run() -> Result<(), Error> {
    let mut s = GenericSession::new(8, 4, 0)?;
    let mut requests = vec![DenseRequest::DomainPoint(0), DenseRequest::DomainPoint(1)];
    // Every sign pattern over x_0, x_1 gets a witness in block [4, 8).
    for code in 0..4u32 {
        let e = ElementaryConstraint::new([(0, code & 2 != 0), (1, code & 1 != 0)])?;
        requests.push(DenseRequest::DensityBelow { alpha: 4, e });
    }
    let (p, report) = s.run_schedule(requests);
    println!("{report}\n{p}");

    let alg = p.algebra()?;
    let x = |i: usize| alg.generator(i).expect("in domain");
    let block: Vec<_> = (4..8).map(x).collect();
    println!(
        "block [4, 8) dense below the algebra of x_0, x_1: {}",
        is_dense_for(&alg, &block, &[x(0), x(1)])?
    );
    println!("block usage: {:?}", s.block_usage());
    Ok(())
}
