//! Density-type invariants of finite presented algebras.
//!
//! For a finite algebra both densities collapse to the atom count: the Stone
//! space is discrete, and a dense subset must contain a nonzero element
//! below every atom. The functions here compute them directly and through
//! exact searches so the two routes can be compared.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::cover;

/// Largest atom count accepted by the endomorphism and ideal counters.
pub const MAX_COUNTING_ATOMS: usize = 6;

/// Largest atom count for exhaustive cross-checks of the counts.
pub const MAX_ENDO_CROSS_CHECK_ATOMS: usize = 3;
pub const MAX_IDEAL_CROSS_CHECK_ATOMS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("candidates are not dense for the target subalgebra")]
    NotDense,
    #[error("the algebra is degenerate (0 = 1)")]
    Degenerate,
    #[error("{atoms} atoms exceed the counting cap of {MAX_COUNTING_ATOMS}")]
    TooLarge { atoms: usize },
    #[error("counting check failed: {0}")]
    CountMismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Candidates to test for density against the subalgebra generated by
/// `target_generators`.
#[derive(Debug, Clone)]
pub struct DenseFamilyQuery {
    pub algebra: Algebra,
    pub candidates: Vec<Element>,
    pub target_generators: Vec<Element>,
}

/// A minimum dense subfamily: indices into the candidate list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSubfamily {
    pub size: usize,
    pub witness: Vec<usize>,
}

impl DenseFamilyQuery {
    /// Query against the whole algebra (the subalgebra generated by its
    /// atoms).
    pub fn whole(algebra: &Algebra, candidates: Vec<Element>) -> Self {
        let target_generators = (0..algebra.atom_count())
            .map(|k| algebra.atom(k).expect("in range"))
            .collect();
        Self {
            algebra: algebra.clone(),
            candidates,
            target_generators,
        }
    }

    /// Which target blocks each candidate sits below (at most one, since
    /// blocks are disjoint and zero sits below none).
    fn coverage(&self) -> Result<(Vec<Element>, Vec<FixedBitSet>), InvariantError> {
        let blocks = self.algebra.blocks(&self.target_generators)?;
        let mut sets = Vec::with_capacity(self.candidates.len());
        for c in &self.candidates {
            let mut covered = FixedBitSet::with_capacity(blocks.len());
            if !c.try_leq(&self.algebra.zero())? {
                for (k, b) in blocks.iter().enumerate() {
                    if c.leq(b) {
                        covered.insert(k);
                    }
                }
            }
            sets.push(covered);
        }
        Ok((blocks, sets))
    }

    /// Every nonzero element of the target subalgebra has a nonzero
    /// candidate below it. It suffices to check the subalgebra's atoms.
    pub fn is_dense(&self) -> Result<bool, InvariantError> {
        let (blocks, sets) = self.coverage()?;
        let mut covered = FixedBitSet::with_capacity(blocks.len());
        for s in &sets {
            covered.union_with(s);
        }
        Ok(covered.count_ones(..) == blocks.len())
    }

    /// An exact minimum dense subfamily, ties broken by least index list.
    pub fn min_dense_subfamily(&self) -> Result<DenseSubfamily, InvariantError> {
        let (blocks, sets) = self.coverage()?;
        let found = cover::minimum_cover(&sets, blocks.len()).ok_or(InvariantError::NotDense)?;
        Ok(DenseSubfamily {
            size: found.len(),
            witness: found.sets,
        })
    }
}

pub fn is_dense_for(
    algebra: &Algebra,
    candidates: &[Element],
    target_generators: &[Element],
) -> Result<bool, InvariantError> {
    DenseFamilyQuery {
        algebra: algebra.clone(),
        candidates: candidates.to_vec(),
        target_generators: target_generators.to_vec(),
    }
    .is_dense()
}

pub fn min_dense_subfamily(
    algebra: &Algebra,
    candidates: &[Element],
    target_generators: &[Element],
) -> Result<DenseSubfamily, InvariantError> {
    DenseFamilyQuery {
        algebra: algebra.clone(),
        candidates: candidates.to_vec(),
        target_generators: target_generators.to_vec(),
    }
    .min_dense_subfamily()
}

/// Least size of a dense set of ultrafilters: the atom count.
pub fn d_topological(algebra: &Algebra) -> Result<usize, InvariantError> {
    if algebra.is_degenerate() {
        return Err(InvariantError::Degenerate);
    }
    Ok(algebra.atom_count())
}

/// Least size of a dense subset, computed by the exact cover search over
/// all nonzero elements as candidates.
pub fn pi_weight(algebra: &Algebra) -> Result<usize, InvariantError> {
    if algebra.is_degenerate() {
        return Err(InvariantError::Degenerate);
    }
    let candidates: Vec<Element> = (0..algebra.atom_count())
        .map(|k| algebra.atom(k).expect("in range"))
        .chain(std::iter::once(algebra.one()))
        .collect();
    Ok(DenseFamilyQuery::whole(algebra, candidates)
        .min_dense_subfamily()?
        .size)
}

fn all_ones(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// The preimage map of an atom map: `h(a) = {u : phi(u) ∈ a}`.
fn preimage(phi: &[usize], a: u64) -> u64 {
    phi.iter()
        .enumerate()
        .filter(|&(_, &t)| a >> t & 1 == 1)
        .fold(0, |m, (u, _)| m | 1 << u)
}

/// Checks that the element map `h` of an `n`-atom algebra is additive on
/// every element and sends the atoms to a partition of unity.
fn is_atomwise_homomorphism(n: usize, h: impl Fn(u64) -> u64) -> bool {
    let images: Vec<u64> = (0..n).map(|k| h(1 << k)).collect();
    let mut union = 0u64;
    for (a, &x) in images.iter().enumerate() {
        if images[a + 1..].iter().any(|&y| x & y != 0) {
            return false;
        }
        union |= x;
    }
    if union != all_ones(n) || h(0) != 0 {
        return false;
    }
    (0..1u64 << n).all(|a| {
        let joined = (0..n)
            .filter(|k| a >> k & 1 == 1)
            .fold(0, |m, k| m | images[k]);
        h(a) == joined
    })
}

/// Counts `|End A|` through atom maps, each checked to induce a
/// homomorphism. The result is `n^n`.
pub fn count_endomorphisms(algebra: &Algebra) -> Result<u64, InvariantError> {
    let n = algebra.atom_count();
    if n > MAX_COUNTING_ATOMS {
        return Err(InvariantError::TooLarge { atoms: n });
    }
    let total = (n as u64).pow(n as u32);
    let mut phi = vec![0usize; n];
    let mut count = 0u64;
    for code in 0..total {
        let mut c = code;
        for slot in phi.iter_mut() {
            *slot = (c % n as u64) as usize;
            c /= n as u64;
        }
        if is_atomwise_homomorphism(n, |a| preimage(&phi, a)) {
            count += 1;
        }
    }
    if count != total {
        return Err(InvariantError::CountMismatch(format!(
            "{count} of {total} atom maps induce homomorphisms"
        )));
    }
    Ok(count)
}

/// Counts endomorphisms by brute force over all assignments of elements to
/// the atoms, keeping those whose additive extension preserves 1, meets and
/// complements. Independent of the duality route.
pub fn count_endomorphisms_direct(algebra: &Algebra) -> Result<u64, InvariantError> {
    let n = algebra.atom_count();
    if n > MAX_ENDO_CROSS_CHECK_ATOMS {
        return Err(InvariantError::TooLarge { atoms: n });
    }
    let elements = 1u64 << n;
    let full = all_ones(n);
    let mut count = 0u64;
    let mut images = vec![0u64; n];
    for code in 0..elements.pow(n as u32) {
        let mut c = code;
        for slot in images.iter_mut() {
            *slot = c % elements;
            c /= elements;
        }
        let h = |a: u64| {
            (0..n)
                .filter(|k| a >> k & 1 == 1)
                .fold(0, |m, k| m | images[k])
        };
        let preserves = h(full) == full
            && (0..elements).all(|a| {
                h(!a & full) == !h(a) & full && (0..elements).all(|b| h(a & b) == h(a) & h(b))
            });
        if preserves {
            count += 1;
        }
    }
    Ok(count)
}

/// `|Id A| = 2^n`, the ideals being principal on the joins of atom sets.
pub fn count_ideals(algebra: &Algebra) -> Result<u64, InvariantError> {
    let n = algebra.atom_count();
    if n > MAX_COUNTING_ATOMS {
        return Err(InvariantError::TooLarge { atoms: n });
    }
    Ok(1 << n)
}

/// Counts ideals by testing every subset of the element set for the ideal
/// axioms (contains 0, downward closed, closed under joins).
pub fn count_ideals_direct(algebra: &Algebra) -> Result<u64, InvariantError> {
    let n = algebra.atom_count();
    if n > MAX_IDEAL_CROSS_CHECK_ATOMS {
        return Err(InvariantError::TooLarge { atoms: n });
    }
    let elements = 1usize << n;
    let mut count = 0u64;
    for family in 0u64..1 << elements {
        let member = |a: u64| family >> a & 1 == 1;
        if !member(0) {
            continue;
        }
        let ok = (0..elements as u64).filter(|&a| member(a)).all(|a| {
            (0..elements as u64)
                .all(|b| (b & !a != 0 || member(b)) && (!member(b) || member(a | b)))
        });
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

/// Summary line values for a presented algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub atoms: usize,
    pub d: usize,
    pub pi: usize,
    /// Present only under the counting cap.
    pub endomorphisms: Option<u64>,
    pub ideals: Option<u64>,
}

pub fn report(algebra: &Algebra) -> Result<InvariantReport, InvariantError> {
    let d = d_topological(algebra)?;
    let pi = pi_weight(algebra)?;
    let capped = algebra.atom_count() <= MAX_COUNTING_ATOMS;
    Ok(InvariantReport {
        atoms: algebra.atom_count(),
        d,
        pi,
        endomorphisms: if capped {
            Some(count_endomorphisms(algebra)?)
        } else {
            None
        },
        ideals: if capped {
            Some(count_ideals(algebra)?)
        } else {
            None
        },
    })
}

impl std::fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "atoms={} d={} pi={}", self.atoms, self.d, self.pi)?;
        if let Some(e) = self.endomorphisms {
            write!(f, " end={e}")?;
        }
        if let Some(i) = self.ideals {
            write!(f, " ideals={i}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ElementaryConstraint, Presentation};

    fn algebra_with_atoms(n: usize) -> Algebra {
        Algebra::new(Presentation::with_atom_count(n).unwrap())
    }

    #[test]
    fn helper_builds_requested_sizes() {
        for n in 0..=9 {
            assert_eq!(algebra_with_atoms(n).atom_count(), n);
        }
    }

    #[test]
    fn atoms_are_dense_and_nothing_is_not() {
        let alg = algebra_with_atoms(4);
        let atoms: Vec<_> = (0..4).map(|k| alg.atom(k).unwrap()).collect();
        assert!(DenseFamilyQuery::whole(&alg, atoms.clone())
            .is_dense()
            .unwrap());
        assert!(!DenseFamilyQuery::whole(&alg, vec![]).is_dense().unwrap());
        assert_eq!(
            DenseFamilyQuery::whole(&alg, vec![]).min_dense_subfamily(),
            Err(InvariantError::NotDense)
        );
    }

    #[test]
    fn min_dense_subfamily_examples() {
        for n in 1..=4 {
            let alg = algebra_with_atoms(n);
            let atoms: Vec<_> = (0..n).map(|k| alg.atom(k).unwrap()).collect();
            let q = DenseFamilyQuery::whole(&alg, atoms.clone());
            assert_eq!(q.min_dense_subfamily().unwrap().size, n);

            let mut with_one = atoms.clone();
            with_one.push(alg.one());
            let q = DenseFamilyQuery::whole(&alg, with_one);
            let found = q.min_dense_subfamily().unwrap();
            assert_eq!(found.size, n);
            assert_eq!(found.witness, (0..n).collect::<Vec<_>>());
        }
        let alg = algebra_with_atoms(1);
        let q = DenseFamilyQuery::whole(&alg, vec![alg.one()]);
        assert_eq!(q.min_dense_subfamily().unwrap().size, 1);
    }

    #[test]
    fn dense_for_a_subalgebra() {
        let alg = Algebra::new(Presentation::free(vec![0, 1]).unwrap());
        let x0 = alg.generator(0).unwrap();
        let x1 = alg.generator(1).unwrap();
        // The subalgebra {0, x0, -x0, 1} needs something below x0 and -x0.
        let target = [x0.clone()];
        assert!(!is_dense_for(&alg, std::slice::from_ref(&x0), &target).unwrap());
        let below_not_x0 = (!&x0).meet(&x1);
        assert!(is_dense_for(&alg, &[x0.meet(&x1), below_not_x0.clone()], &target).unwrap());
        let found =
            min_dense_subfamily(&alg, &[alg.one(), x0.clone(), below_not_x0], &target).unwrap();
        assert_eq!(found.witness, vec![1, 2]);
    }

    #[test]
    fn topological_density_examples() {
        let free = Algebra::new(Presentation::free(vec![0, 1]).unwrap());
        assert_eq!(d_topological(&free).unwrap(), 4);
        let geq = Algebra::new(
            Presentation::new(
                vec![0, 1],
                [ElementaryConstraint::new([(1, true), (0, false)]).unwrap()],
            )
            .unwrap(),
        );
        assert_eq!(d_topological(&geq).unwrap(), 3);
        assert_eq!(pi_weight(&geq).unwrap(), 3);
        let degenerate = Algebra::new(
            Presentation::new(
                vec![0],
                [
                    ElementaryConstraint::new([(0, true)]).unwrap(),
                    ElementaryConstraint::new([(0, false)]).unwrap(),
                ],
            )
            .unwrap(),
        );
        assert_eq!(d_topological(&degenerate), Err(InvariantError::Degenerate));
    }

    #[test]
    fn endomorphism_and_ideal_counts() {
        let expected_end = [1, 4, 27, 256, 3125, 46656];
        for n in 1..=6 {
            let alg = algebra_with_atoms(n);
            assert_eq!(count_endomorphisms(&alg).unwrap(), expected_end[n - 1]);
            assert_eq!(count_ideals(&alg).unwrap(), 1 << n);
        }
        assert_eq!(
            count_endomorphisms(&algebra_with_atoms(7)),
            Err(InvariantError::TooLarge { atoms: 7 })
        );
    }

    #[test]
    fn direct_counts_agree_on_small_algebras() {
        for n in 1..=3 {
            let alg = algebra_with_atoms(n);
            assert_eq!(
                count_endomorphisms_direct(&alg).unwrap(),
                (n as u64).pow(n as u32)
            );
        }
        for n in 1..=4 {
            assert_eq!(count_ideals_direct(&algebra_with_atoms(n)).unwrap(), 1 << n);
        }
    }

    #[test]
    fn report_line() {
        let free = Algebra::new(Presentation::free(vec![0, 1]).unwrap());
        assert_eq!(
            report(&free).unwrap().to_string(),
            "atoms=4 d=4 pi=4 end=256 ideals=16"
        );
    }
}
