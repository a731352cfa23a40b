//! Random instance generators for property checks and demos.
//!
//! The valuation-function sampler builds tables column by column and only
//! consults the closure conditions, never the derivation calculus, so it can
//! feed tests of that calculus.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{ElementaryConstraint, Presentation};
use crate::calculus::{AtomicRelation, RelationSet, Trit, TritTable, ValuationFunction};

/// Values allowed for `p(j, k)` given the already fixed entries of the
/// column of `k` above `j`. PERP is always allowed, so sampling never
/// dead-ends.
fn allowed(table: &TritTable, dom: &[usize], b: usize, c: usize) -> Vec<Trit> {
    let (j, k) = (dom[b], dom[c]);
    Trit::ALL
        .into_iter()
        .filter(|&v| {
            dom[..b].iter().all(|&i| {
                let ij = table.get(i, j).expect("in domain");
                let ik = table.get(i, k).expect("in domain");
                let c1 = !(ij == Trit::Geq && v == Trit::Geq) || ik == Trit::Geq;
                let c2a = !matches!((ij, ik), (Trit::Perp, Trit::Geq) | (Trit::Geq, Trit::Perp))
                    || v == Trit::Perp;
                let c2b = !(ij == Trit::Perp && v == Trit::Geq) || ik == Trit::Perp;
                c1 && c2a && c2b
            })
        })
        .collect()
}

/// A random valuation function on `domain`. `weights` biases the draw
/// towards GEQ, PERP and UNDEF respectively among allowed values.
pub fn valuation_weighted<R: Rng + ?Sized>(
    rng: &mut R,
    domain: Vec<usize>,
    weights: [u32; 3],
) -> ValuationFunction {
    let mut table = TritTable::undefined(domain.clone()).expect("ordered domain");
    for c in 1..domain.len() {
        for b in 0..c {
            let options = allowed(&table, &domain, b, c);
            let v = *options
                .choose_weighted(rng, |t| match t {
                    Trit::Geq => weights[0],
                    Trit::Perp => weights[1],
                    Trit::Undef => weights[2],
                })
                .or_else(|_| options.choose(rng).ok_or(()))
                .expect("PERP is always allowed");
            table.set(domain[b], domain[c], v).expect("in domain");
        }
    }
    ValuationFunction::new(table).expect("column sampling respects the conditions")
}

pub fn valuation<R: Rng + ?Sized>(rng: &mut R, domain: Vec<usize>) -> ValuationFunction {
    valuation_weighted(rng, domain, [1, 1, 1])
}

/// A random strictly increasing subset of `0..bound` of the given size.
pub fn index_subset<R: Rng + ?Sized>(rng: &mut R, bound: usize, size: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..bound).collect();
    all.shuffle(rng);
    let mut out: Vec<usize> = all.into_iter().take(size).collect();
    out.sort_unstable();
    out
}

pub fn atomic_relation<R: Rng + ?Sized>(rng: &mut R, indices: usize) -> AtomicRelation {
    let a = rng.gen_range(0..indices);
    let b = rng.gen_range(0..indices);
    if rng.gen_bool(0.5) {
        AtomicRelation::geq(a, b)
    } else {
        AtomicRelation::perp(a, b)
    }
}

/// A random relation set over `0..indices` with at most `max_len` members.
/// Draws favor `geq i j` with `i < j` so that consistent sets are common.
pub fn relation_set<R: Rng + ?Sized>(rng: &mut R, indices: usize, max_len: usize) -> RelationSet {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let r = atomic_relation(rng, indices);
            match r {
                AtomicRelation::Geq(a, b) if a > b && rng.gen_bool(0.8) => {
                    AtomicRelation::geq(b, a)
                }
                AtomicRelation::Perp(a, b) if a == b && indices > 1 && rng.gen_bool(0.8) => {
                    AtomicRelation::perp(a, (b + 1) % indices)
                }
                other => other,
            }
        })
        .collect()
}

/// A random presentation with between 1 and `max_generators` generators
/// drawn from `0..2 * max_generators`.
pub fn presentation<R: Rng + ?Sized>(
    rng: &mut R,
    max_generators: usize,
    max_constraints: usize,
) -> Presentation {
    let n = rng.gen_range(1..=max_generators);
    let generators = index_subset(rng, 2 * max_generators, n);
    let count = rng.gen_range(0..=max_constraints);
    let forbidden: Vec<ElementaryConstraint> = (0..count)
        .map(|_| {
            let width = rng.gen_range(1..=n.min(3));
            let mut picked = generators.clone();
            picked.shuffle(rng);
            ElementaryConstraint::new(
                picked
                    .into_iter()
                    .take(width)
                    .map(|i| (i, rng.gen_bool(0.5))),
            )
            .expect("nonempty")
        })
        .collect();
    Presentation::new(generators, forbidden).expect("constraints use generators")
}

/// A pair of valuation functions agreeing on their common domain, built by
/// restricting one random valuation function to two overlapping subsets.
pub fn compatible_pair<R: Rng + ?Sized>(
    rng: &mut R,
    max_domain: usize,
) -> (ValuationFunction, ValuationFunction) {
    let n = rng.gen_range(1..=max_domain);
    let base = valuation(rng, (0..n).collect());
    let pick = |rng: &mut R| -> Vec<usize> { (0..n).filter(|_| rng.gen_bool(0.6)).collect() };
    let (left, right) = (pick(rng), pick(rng));
    (
        base.restrict(&left).expect("subset"),
        base.restrict(&right).expect("subset"),
    )
}

/// Inputs for adding `x_beta ⊥ x_alpha` to two compatible conditions under
/// the support preconditions of the disjointness claim.
#[derive(Debug, Clone)]
pub struct DisjointnessInstance {
    pub p: ValuationFunction,
    pub q: ValuationFunction,
    pub alpha: usize,
    pub beta: usize,
    pub alpha_star: usize,
}

/// A random instance satisfying the support preconditions, with
/// `|dom p ∪ dom q| <= max_indices` (at least 4).
///
/// `dom p ⊆ [0, alpha*) ∪ [alpha, beta)` and
/// `dom q ⊆ [0, alpha*) ∪ [beta, max_indices)`, so the common domain lies
/// below `alpha*`.
pub fn disjointness_instance<R: Rng + ?Sized>(
    rng: &mut R,
    max_indices: usize,
) -> DisjointnessInstance {
    assert!(max_indices >= 4);
    let n = rng.gen_range(4..=max_indices);
    let alpha_star = rng.gen_range(0..=n - 3);
    let alpha = rng.gen_range(alpha_star + 1..=n - 2);
    let beta = rng.gen_range(alpha + 1..n);
    let low: Vec<usize> = (0..alpha_star).filter(|_| rng.gen_bool(0.7)).collect();
    let mut dom_p = low.clone();
    dom_p.extend((alpha..beta).filter(|&i| i == alpha || rng.gen_bool(0.6)));
    let mut dom_q: Vec<usize> = low.into_iter().filter(|_| rng.gen_bool(0.8)).collect();
    dom_q.extend((beta..n).filter(|&i| i == beta || rng.gen_bool(0.6)));
    // Mix in common low indices that only one side has.
    let extra: Vec<usize> = (0..alpha_star)
        .filter(|i| !dom_p.contains(i) && rng.gen_bool(0.3))
        .collect();
    dom_q.extend(extra);
    dom_q.sort_unstable();
    dom_q.dedup();
    let weights = [
        rng.gen_range(1..4),
        rng.gen_range(1..4),
        rng.gen_range(1..4),
    ];
    let base = valuation_weighted(rng, (0..n).collect(), weights);
    DisjointnessInstance {
        p: base.restrict(&dom_p).expect("subset"),
        q: base.restrict(&dom_q).expect("subset"),
        alpha,
        beta,
        alpha_star,
    }
}
