//! The algebra presented by a valuation function: atoms, Boolean
//! operations and the ultrafilter criterion.

use boolpres::algebra::ElementaryConstraint;
use boolpres::calculus::{Trit, TritTable, ValuationFunction};
use boolpres::Error;

fn main() -> Result<(), Error> {
    run()
}

pub fn run() -> Result<(), Error> {
    // x_0 >= x_1, x_0 ⊥ x_2, and nothing said about x_1, x_2 beyond that.
    let mut t = TritTable::undefined(vec![0, 1, 2])?;
    t.set(0, 1, Trit::Geq)?;
    t.set(0, 2, Trit::Perp)?;
    t.set(1, 2, Trit::Perp)?;
    let p = ValuationFunction::new(t)?;
    println!("{p}");

    let alg = p.algebra()?;
    println!("{} atoms:", alg.atom_count());
    for a in alg.atoms() {
        println!("  {a}");
    }

    let [x0, x1, x2] = [0, 1, 2].map(|i| alg.generator(i).expect("in domain"));
    println!("x1 <= x0: {}", x1.leq(&x0));
    println!("x0 . x2 = 0: {}", x0.disjoint(&x2));
    println!("x0 - x1 = {}", &x0 - &x1);
    println!("-(x0 + x2) = {}", !&(&x0 | &x2));

    // A total sign pattern survives exactly when it names an atom.
    for code in 0..8u32 {
        let e = ElementaryConstraint::new((0..3).map(|i| (i, code >> (2 - i) & 1 == 1)))?;
        let y = alg.elementary_product(&e)?;
        println!("{e}: {}", if y.is_zero() { "zero" } else { "an atom" });
    }
    Ok(())
}
