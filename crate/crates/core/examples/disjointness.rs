//! Adding `x_beta ⊥ x_alpha` on top of two compatible conditions.

use boolpres::calculus::{Trit, TritTable, ValuationFunction};
use boolpres::sampler::add_disjointness;
use boolpres::Error;

fn main() -> Result<(), Error> {
    run()
}

pub fn run() -> Result<(), Error> {
    // Shared part below alpha* = 2; p adds alpha = 3, q adds beta = 5.
    let mut tp = TritTable::undefined(vec![0, 1, 3])?;
    tp.set(0, 3, Trit::Geq)?;
    let mut tq = TritTable::undefined(vec![0, 1, 5])?;
    tq.set(1, 5, Trit::Geq)?;
    let (p, q) = (ValuationFunction::new(tp)?, ValuationFunction::new(tq)?);

    let r = add_disjointness(&p, &q, 3, 5, 2)?;
    println!("{r}");
    let alg = r.algebra()?;
    let (a, b) = (alg.generator(3)?, alg.generator(5)?);
    println!(
        "x_3 . x_5 = 0: {}, x_3 nonzero: {}, x_5 nonzero: {}",
        a.disjoint(&b),
        !a.is_zero(),
        !b.is_zero()
    );

    match add_disjointness(&p, &q, 5, 3, 2) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
