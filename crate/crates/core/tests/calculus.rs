use boolpres::calculus::{
    canonical_extension, derive_closure, derives, is_consistent, is_valuation, merge,
    AtomicRelation, RelationSet, Trit, TritTable, ValuationFunction,
};
use boolpres::random;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;
use common::{naive_closure_set, naive_consistent};

fn relation_set(max_index: usize, max_len: usize) -> impl Strategy<Value = RelationSet> {
    prop::collection::vec((any::<bool>(), 0..max_index, 0..max_index), 0..=max_len).prop_map(
        |rels| {
            rels.into_iter()
                .map(|(geq, a, b)| {
                    if geq {
                        AtomicRelation::geq(a, b)
                    } else {
                        AtomicRelation::perp(a, b)
                    }
                })
                .collect()
        },
    )
}

fn valuation(max_len: usize) -> impl Strategy<Value = ValuationFunction> {
    (1..=max_len, any::<u64>()).prop_map(|(n, seed)| {
        random::valuation(&mut ChaCha8Rng::seed_from_u64(seed), (0..n).collect())
    })
}

/// Conditions (1) and (2) checked over every ordered triple, with no
/// shortcuts.
fn brute_is_valuation(t: &TritTable) -> bool {
    let dom = t.domain().to_vec();
    let get = |i: usize, j: usize| t.get(i, j).unwrap();
    for (a, &i) in dom.iter().enumerate() {
        for (b, &j) in dom.iter().enumerate().skip(a + 1) {
            for &k in &dom[b + 1..] {
                let (ij, ik, jk) = (get(i, j), get(i, k), get(j, k));
                if ij == Trit::Geq && jk == Trit::Geq && ik != Trit::Geq {
                    return false;
                }
                let mixed = matches!((ij, ik), (Trit::Geq, Trit::Perp) | (Trit::Perp, Trit::Geq));
                if mixed && jk != Trit::Perp {
                    return false;
                }
                if ij == Trit::Perp && jk == Trit::Geq && ik != Trit::Perp {
                    return false;
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn closure_matches_naive_fixpoint(r in relation_set(6, 10)) {
        prop_assert_eq!(derive_closure(&r), naive_closure_set(&r));
        prop_assert_eq!(is_consistent(&r), naive_consistent(&r));
    }

    #[test]
    fn derives_agrees_with_closure_membership(r in relation_set(5, 8), a in 0..5usize, b in 0..5usize) {
        let closure = naive_closure_set(&r);
        // Reflexivity holds at every index, mentioned or not.
        let geq = AtomicRelation::geq(a, b);
        prop_assert_eq!(derives(&r, &geq), a == b || closure.contains(&geq));
        let perp = AtomicRelation::perp(a, b);
        prop_assert_eq!(derives(&r, &perp), closure.contains(&perp));
    }

    #[test]
    fn closure_is_idempotent(r in relation_set(6, 10)) {
        let c = derive_closure(&r);
        prop_assert_eq!(derive_closure(&c), c);
    }

    #[test]
    fn canonical_extension_of_consistent_sets(r in relation_set(6, 8)) {
        let dom: Vec<usize> = (0..6).collect();
        match canonical_extension(&r, &dom) {
            Ok(p) => {
                prop_assert!(is_consistent(&r));
                prop_assert!(r.is_subset_modulo_reflexive(&p.rel()));
                prop_assert!(brute_is_valuation(p.table()));
                // Entries are exactly the derivable strict relations.
                for (i, j, t) in p.entries() {
                    prop_assert_eq!(t == Trit::Geq, derives(&r, &AtomicRelation::geq(i, j)));
                    prop_assert_eq!(t == Trit::Perp, derives(&r, &AtomicRelation::perp(i, j)));
                }
            }
            Err(_) => prop_assert!(!is_consistent(&r)),
        }
    }

    #[test]
    fn valuations_are_their_own_canonical_extension(p in valuation(7)) {
        prop_assert_eq!(canonical_extension(&p.rel(), p.domain()).unwrap(), p);
    }

    #[test]
    fn validity_check_matches_brute_force(n in 1..=5usize, cells in prop::collection::vec(0..3usize, 10)) {
        let dom: Vec<usize> = (0..n).collect();
        let mut t = TritTable::undefined(dom.clone()).unwrap();
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                t.set(a, b, Trit::ALL[cells[k]]).unwrap();
                k += 1;
            }
        }
        prop_assert_eq!(is_valuation(&t), brute_is_valuation(&t));
        prop_assert_eq!(ValuationFunction::new(t.clone()).is_ok(), brute_is_valuation(&t));
    }

    #[test]
    fn merge_is_symmetric_and_extends_both(seed in any::<u64>()) {
        let (p, q) = random::compatible_pair(&mut ChaCha8Rng::seed_from_u64(seed), 8);
        let m = merge(&p, &q).unwrap();
        prop_assert_eq!(&m, &merge(&q, &p).unwrap());
        prop_assert!(p.rel().union(&q.rel()).is_subset(&m.rel()));
        let mut dom: Vec<usize> = p.domain().iter().chain(q.domain()).copied().collect();
        dom.sort_unstable();
        dom.dedup();
        prop_assert_eq!(m.domain(), dom.as_slice());
    }
}

#[test]
fn incompatible_conditions_do_not_merge() {
    let p = ValuationFunction::new(
        TritTable::with_default_undef(vec![0, 1], [((0, 1), Trit::Geq)]).unwrap(),
    )
    .unwrap();
    let q = ValuationFunction::new(
        TritTable::with_default_undef(vec![0, 1], [((0, 1), Trit::Perp)]).unwrap(),
    )
    .unwrap();
    assert!(merge(&p, &q).is_err());
}

#[test]
fn transfer_rule_reaches_through_chains() {
    let r: RelationSet = [
        AtomicRelation::perp(0, 1),
        AtomicRelation::geq(0, 2),
        AtomicRelation::geq(2, 3),
        AtomicRelation::geq(1, 4),
    ]
    .into_iter()
    .collect();
    assert!(derives(&r, &AtomicRelation::perp(3, 4)));
    assert!(naive_closure_set(&r).contains(&AtomicRelation::perp(3, 4)));
}
