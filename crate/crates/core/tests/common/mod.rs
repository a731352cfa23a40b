//! Oracles shared by the integration tests, written independently of the
//! library's own algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use boolpres::calculus::{AtomicRelation, RelationSet};

/// Fixpoint of the derivation rules, written without the library closure.
pub fn naive_closure(r: &RelationSet) -> (BTreeSet<(usize, usize)>, BTreeSet<(usize, usize)>) {
    let idx: BTreeSet<usize> = r
        .iter()
        .flat_map(|a| [a.indices().0, a.indices().1])
        .collect();
    let mut geq: BTreeSet<(usize, usize)> = idx.iter().map(|&i| (i, i)).collect();
    let mut perp = BTreeSet::new();
    for a in r.iter() {
        match *a {
            AtomicRelation::Geq(i, j) => {
                geq.insert((i, j));
            }
            AtomicRelation::Perp(i, j) => {
                perp.insert((i, j));
                perp.insert((j, i));
            }
        }
    }
    loop {
        let mut new_geq = Vec::new();
        for &(a, b) in &geq {
            for &(c, d) in &geq {
                if b == c && !geq.contains(&(a, d)) {
                    new_geq.push((a, d));
                }
            }
        }
        let mut new_perp = Vec::new();
        for &(a, b) in &perp {
            for &(c, d) in &geq {
                // a ⊥ b and a ≥ d give d ⊥ b.
                if c == a && !perp.contains(&(d, b)) {
                    new_perp.push((d, b));
                    new_perp.push((b, d));
                }
            }
        }
        if new_geq.is_empty() && new_perp.is_empty() {
            return (geq, perp);
        }
        geq.extend(new_geq);
        perp.extend(new_perp);
    }
}

pub fn naive_consistent(r: &RelationSet) -> bool {
    let (geq, perp) = naive_closure(r);
    !geq.iter().any(|&(a, b)| b < a) && !perp.iter().any(|&(a, b)| a == b)
}

/// The naive closure as a relation set.
pub fn naive_closure_set(r: &RelationSet) -> RelationSet {
    let (geq, perp) = naive_closure(r);
    geq.into_iter()
        .map(|(a, b)| AtomicRelation::geq(a, b))
        .chain(perp.into_iter().map(|(a, b)| AtomicRelation::perp(a, b)))
        .collect()
}
