use std::collections::BTreeMap;

use boolpres::algebra::{Algebra, Element, Presentation};
use boolpres::theorem_b::{
    build_construction, check_equivalent_pair, check_partition_sum, BConstruction,
    EquivalenceOutcome, FreeElement, Homomorphism, Subalgebra, TheoremBError, TreeParams,
};
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Expr {
    Var(u32),
    Const(bool),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn eval(&self, a: &dyn Fn(u32) -> bool) -> bool {
        match self {
            Expr::Var(v) => a(*v),
            Expr::Const(b) => *b,
            Expr::Not(e) => !e.eval(a),
            Expr::And(x, y) => x.eval(a) && y.eval(a),
            Expr::Or(x, y) => x.eval(a) || y.eval(a),
        }
    }

    fn build(&self) -> FreeElement {
        match self {
            Expr::Var(v) => FreeElement::var(*v),
            Expr::Const(b) => FreeElement::constant(*b),
            Expr::Not(e) => e.build().not(),
            Expr::And(x, y) => x.build().and(&y.build()).unwrap(),
            Expr::Or(x, y) => x.build().or(&y.build()).unwrap(),
        }
    }
}

const VARS: u32 = 6;

fn expr() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0..VARS).prop_map(Expr::Var),
        any::<bool>().prop_map(Expr::Const)
    ]
    .prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Not(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Or(Box::new(a), Box::new(b))),
        ]
    })
}

fn assignments() -> impl Iterator<Item = impl Fn(u32) -> bool> {
    (0..1u32 << VARS).map(|code| move |v: u32| code >> v & 1 == 1)
}

/// Small trees with up to four distinct branches.
fn params() -> impl Strategy<Value = TreeParams> {
    (1..=3usize)
        .prop_flat_map(|depth| (Just(depth), prop::collection::vec(1..=3usize, depth)))
        .prop_flat_map(|(depth, widths)| {
            let branch = widths.iter().map(|&w| 0..w).collect::<Vec<_>>();
            (
                Just(depth),
                Just(widths),
                prop::collection::vec(branch, 1..=4),
            )
        })
        .prop_map(|(depth, widths, mut branches)| {
            let mut seen = Vec::new();
            branches.retain(|b| {
                let fresh = !seen.contains(b);
                seen.push(b.clone());
                fresh
            });
            TreeParams {
                depth,
                widths,
                branches,
            }
        })
}

fn construction(p: TreeParams, seed: u64) -> Option<BConstruction> {
    match build_construction(p, seed) {
        Ok(c) => Some(c),
        Err(TheoremBError::SupportTooLarge(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

/// `b_i` evaluated straight from the chosen generators.
fn b_direct(c: &BConstruction, i: usize, a: &dyn Fn(u32) -> bool) -> bool {
    let mut none_before = true;
    let mut b = false;
    for n in 0..c.params().depth {
        let ch = c.choice(i, n);
        let s = a(ch.x) || !a(ch.y);
        b |= a(ch.z) && s && none_before;
        none_before &= !s;
    }
    b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn free_elements_agree_with_direct_evaluation(e in expr(), f in expr()) {
        let (x, y) = (e.build(), f.build());
        let mut all_zero = true;
        let mut leq = true;
        let mut disjoint = true;
        for a in assignments() {
            prop_assert_eq!(x.eval(&a), e.eval(&a));
            all_zero &= !e.eval(&a);
            leq &= !e.eval(&a) || f.eval(&a);
            disjoint &= !(e.eval(&a) && f.eval(&a));
        }
        prop_assert_eq!(x.is_zero(), all_zero);
        prop_assert_eq!(x.not().is_one(), all_zero);
        prop_assert_eq!(x.leq(&y).unwrap(), leq);
        prop_assert_eq!(x.disjoint(&y).unwrap(), disjoint);
        match x.satisfying_assignment() {
            Some(s) => prop_assert!(x.eval(|v| s.get(&v).copied().unwrap_or(false))),
            None => prop_assert!(all_zero),
        }
    }

    #[test]
    fn construction_matches_its_definition(p in params(), seed in any::<u64>()) {
        let Some(c) = construction(p, seed) else { return Ok(()) };
        for i in 0..c.branch_count() {
            let vars = c.b(i).support().to_vec();
            prop_assert!(vars.len() <= 12);
            for code in 0..1u32 << vars.len() {
                let map: BTreeMap<u32, bool> = vars.iter().enumerate().map(|(r, &v)| (v, code >> r & 1 == 1)).collect();
                let a = |v: u32| map.get(&v).copied().unwrap_or(false);
                prop_assert_eq!(c.b(i).eval(a), b_direct(&c, i, &a));
            }
        }
    }

    #[test]
    fn truncated_partitions_hold(p in params(), seed in any::<u64>()) {
        let Some(c) = construction(p, seed) else { return Ok(()) };
        for i in 0..c.branch_count() {
            let r = c.check_partition(i).unwrap();
            prop_assert!(r.holds(), "{}", r);
            prop_assert!(!r.remainder.is_zero());
        }
    }

    /// Distinct branches give an ideal-independent family, and the
    /// divergence witness exists at every level where `i` leaves all of `J`.
    #[test]
    fn branches_are_ideal_independent(p in params(), seed in any::<u64>()) {
        let Some(c) = construction(p, seed) else { return Ok(()) };
        let k = c.branch_count();
        for i in 0..k {
            let others: Vec<usize> = (0..k).filter(|&j| j != i).collect();
            for pick in 0u32..1 << others.len() {
                let js: Vec<usize> = others.iter().enumerate().filter(|(r, _)| pick >> r & 1 == 1).map(|(_, &j)| j).collect();
                let r = c.check_ideal_independence(i, &js).unwrap();
                let w = r.witness.clone();
                prop_assert!(w.is_some(), "{}", r);
                let w = w.unwrap();
                let a = |v: u32| w.get(&v).copied().unwrap_or(false);
                prop_assert!(b_direct(&c, i, &a) && js.iter().all(|&j| !b_direct(&c, j, &a)));
                for n in 0..c.params().depth {
                    if js.iter().all(|&j| c.params().node(i, n) != c.params().node(j, n)) {
                        let w = c.divergence_witness(i, &js, n).unwrap();
                        prop_assert!(w.holds(), "{:?}", w);
                    }
                }
            }
        }
    }

    #[test]
    fn homomorphisms_respect_partition_sums(
        n in 1..=5usize,
        m in 1..=6usize,
        phi_seed in prop::collection::vec(any::<prop::sample::Index>(), 6),
        labels in prop::collection::vec(0..4usize, 5),
        xs in prop::collection::vec(any::<u64>(), 4),
    ) {
        let source = Algebra::new(Presentation::with_atom_count(n).unwrap());
        let target = Algebra::new(Presentation::with_atom_count(m).unwrap());
        let phi: Vec<usize> = phi_seed[..m].iter().map(|ix| ix.index(n)).collect();
        let h = Homomorphism::from_atom_map(&source, &target, &phi).unwrap();
        h.verify().unwrap();
        // Partition from a labelling of the source atoms, empty parts dropped.
        let partition: Vec<Element> = (0..4)
            .map(|k| source.from_atom_indices((0..n).filter(|&a| labels[a] == k)).unwrap())
            .filter(|c| !c.is_zero())
            .collect();
        let xs: Vec<Element> = xs[..partition.len()].iter().map(|&x| source.from_mask(x & ((1 << n) - 1)).unwrap()).collect();
        match check_partition_sum(&h, &partition, &xs) {
            Ok(equal) => prop_assert!(equal),
            Err(TheoremBError::NotPartition("target")) => {
                prop_assert!(partition.iter().any(|c| h.apply(c).is_zero()));
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn equivalent_elements_meet_every_nonzero_member(n in 1..=7usize, gens in prop::collection::vec(any::<u64>(), 0..3), x in any::<u64>(), y in any::<u64>()) {
        let d = Algebra::new(Presentation::with_atom_count(n).unwrap());
        let full = (1u64 << n) - 1;
        let gens: Vec<Element> = gens.iter().map(|&g| d.from_mask(g & full).unwrap()).collect();
        let c = Subalgebra::generated_by(&d, &gens).unwrap();
        let (x, y) = (d.from_mask(x & full).unwrap(), d.from_mask(y & full).unwrap());
        let ann = |e: &Element| -> Vec<u64> { c.elements().iter().filter(|m| m.disjoint(e)).map(Element::mask).collect() };
        let equivalent = ann(&x) == ann(&y) && ann(&!&x) == ann(&!&y);
        let outcome = check_equivalent_pair(&c, &x, &y);
        if equivalent {
            prop_assert_eq!(outcome, EquivalenceOutcome::Holds);
        } else {
            prop_assert_eq!(outcome, EquivalenceOutcome::NotApplicable);
        }
    }
}
