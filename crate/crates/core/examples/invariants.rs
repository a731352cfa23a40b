//! Cardinal invariants at finite scale, and dense families.

use boolpres::algebra::{Algebra, Presentation};
use boolpres::calculus::ValuationFunction;
use boolpres::invariants::{self, DenseFamilyQuery};
use boolpres::Error;

fn main() -> Result<(), Error> {
    run()
}

pub fn run() -> Result<(), Error> {
    for n in 1..=4 {
        let alg = Algebra::new(Presentation::with_atom_count(n)?);
        println!("{n}-atom algebra: {}", invariants::report(&alg)?);
    }

    let alg = ValuationFunction::undefined(vec![0, 1])?.algebra()?;
    println!("free on two generators: {}", invariants::report(&alg)?);

    // Candidates: the generators and the atoms. Only atoms sit below atoms.
    let mut candidates = alg.generators();
    candidates.extend((0..alg.atom_count()).map(|k| alg.atom(k).expect("in range")));
    let q = DenseFamilyQuery::whole(&alg, candidates);
    let best = q.min_dense_subfamily()?;
    println!(
        "dense: {}, minimum dense subfamily {:?}",
        q.is_dense()?,
        best.witness
    );
    Ok(())
}
