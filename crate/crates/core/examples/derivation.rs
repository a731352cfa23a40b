//! Closing relation sets under the derivation rules, detecting
//! inconsistency, extending to a condition and merging conditions.

use boolpres::calculus::{
    canonical_extension, derives, merge, AtomicRelation, Closure, RelationSet,
};
use boolpres::Error;

fn relations(rels: &[AtomicRelation]) -> RelationSet {
    let mut r = RelationSet::new();
    for &rel in rels {
        r.insert(rel);
    }
    r
}

fn main() -> Result<(), Error> {
    run()
}

pub fn run() -> Result<(), Error> {
    let r = relations(&[
        AtomicRelation::geq(0, 1),
        AtomicRelation::geq(1, 2),
        AtomicRelation::perp(0, 3),
    ]);
    let closure = Closure::of(&r);
    print!("relations:\n{r}closure:\n{}", closure.relations());
    println!(
        "derives 2 ⊥ 3: {}",
        derives(&r, &AtomicRelation::perp(2, 3))
    );

    let bad = relations(&[AtomicRelation::geq(1, 0)]);
    if let Some(why) = Closure::of(&bad).inconsistency() {
        println!("{bad}is inconsistent: {why}");
    }

    let p = canonical_extension(&r, &[0, 1, 2, 3])?;
    print!("canonical extension:\n{p}");

    let q = canonical_extension(&relations(&[AtomicRelation::geq(3, 4)]), &[3, 4])?;
    let m = merge(&p, &q)?;
    print!("merged with\n{q}gives\n{m}");
    Ok(())
}
