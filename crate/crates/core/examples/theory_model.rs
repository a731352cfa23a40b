//! Finite models in the signature of T and the axiom checker.

use boolpres::calculus::{Trit, TritTable, ValuationFunction};
use boolpres::theory::{check_axioms, standard_model};
use boolpres::Error;

fn main() -> Result<(), Error> {
    run()
}

pub fn run() -> Result<(), Error> {
    // Pairwise disjoint generators in one class satisfy every axiom.
    let mut t = TritTable::undefined(vec![0, 1, 2])?;
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        t.set(a, b, Trit::Perp)?;
    }
    let m = standard_model(&ValuationFunction::new(t)?, 3)?;
    println!("disjoint generators, one class:\n{}", check_axioms(&m));

    // With no relations the second level has elements nothing sits below.
    let m = standard_model(&ValuationFunction::undefined(vec![0, 1, 2, 3])?, 2)?;
    let report = check_axioms(&m);
    println!("free generators, classes of two:\n{report}");
    for (level, a) in report.density_failures() {
        println!("level {level}: v = {} for {{{a}}}", m.level(a));
    }
    Ok(())
}
