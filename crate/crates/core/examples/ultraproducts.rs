//! Reduced products over filters on a finite index set.

use boolpres::calculus::{Trit, TritTable, ValuationFunction};
use boolpres::products::{compare_densities, los_check, FilterOnFinite, Formula, ReducedProduct};
use boolpres::Error;

fn main() -> Result<(), Error> {
    run()
}

pub fn run() -> Result<(), Error> {
    let mut t = TritTable::undefined(vec![0, 1])?;
    t.set(0, 1, Trit::Perp)?;
    let perp = ValuationFunction::new(t)?.algebra()?;
    let free = ValuationFunction::undefined(vec![0, 1])?.algebra()?;
    let mut t = TritTable::undefined(vec![0, 1])?;
    t.set(0, 1, Trit::Geq)?;
    let geq = ValuationFunction::new(t)?.algebra()?;
    let factors = vec![perp, free, geq];

    let disjoint = Formula::Disjoint(0, 1);
    for filter in FilterOnFinite::all(3)? {
        let rp = ReducedProduct::new(factors.clone(), filter.clone())?;
        let (truth, at) = los_check(&rp, &disjoint)?;
        let at: Vec<usize> = (0..3).filter(|i| at >> i & 1 == 1).collect();
        println!(
            "{filter}: {} atoms, x0 . x1 = 0 is {truth} (holds at factors {at:?}); {}",
            rp.algebra().atom_count(),
            compare_densities(&factors, &filter)?
        );
        if filter.is_ultra() {
            println!(
                "  isomorphic to factor {}",
                rp.verify_isomorphism_to_factor()?
            );
        }
    }
    Ok(())
}
