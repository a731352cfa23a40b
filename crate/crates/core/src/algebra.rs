//! Finite Boolean algebras presented by generators and forbidden elementary
//! products.
//!
//! A [`Presentation`] names a finite, strictly increasing list of generator
//! indices and a set of [`ElementaryConstraint`]s. The presented algebra is
//! the quotient of the free algebra on the generators by the ideal generated
//! by the elementary products of the constraints. Since the generator set is
//! finite the quotient is atomic, and its atoms are exactly the total 0/1
//! assignments that extend no forbidden constraint. [`Algebra`] stores that
//! atom list and [`Element`]s are subsets of it.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{BitAnd, BitOr, Not, Sub};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use thiserror::Error;

/// Largest generator count for which atoms are enumerated.
pub const MAX_GENERATORS: usize = 24;

/// Largest atom count for which every element of an algebra can be listed.
pub const MAX_ENUMERABLE_ATOMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generators must be strictly increasing, got {0:?}")]
    UnorderedGenerators(Vec<usize>),
    #[error("{count} generators exceed the supported maximum of {MAX_GENERATORS}")]
    TooManyGenerators { count: usize },
    #[error("elementary constraint has an empty domain")]
    EmptyConstraint,
    #[error("elementary constraint assigns two values to index {0}")]
    ConflictingLiteral(usize),
    #[error("constraint mentions index {0}, which is not a generator")]
    ConstraintOutsideGenerators(usize),
    #[error("index {0} is not a generator of the presentation")]
    UnknownIndex(usize),
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("atom index {index} out of range for an algebra with {atoms} atoms")]
    AtomOutOfRange { index: usize, atoms: usize },
    #[error("algebra has {atoms} atoms; element enumeration is limited to {limit}")]
    TooManyAtoms { atoms: usize, limit: usize },
}

/// A finite partial function from generator indices to `{0, 1}`.
///
/// Its elementary product is `Π_{e(i)=1} x_i · Π_{e(i)=0} −x_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementaryConstraint {
    literals: BTreeMap<usize, bool>,
}

impl ElementaryConstraint {
    pub fn new(literals: impl IntoIterator<Item = (usize, bool)>) -> Result<Self, AlgebraError> {
        let mut map = BTreeMap::new();
        for (i, b) in literals {
            if map.insert(i, b).is_some_and(|old| old != b) {
                return Err(AlgebraError::ConflictingLiteral(i));
            }
        }
        let literals = map;
        if literals.is_empty() {
            return Err(AlgebraError::EmptyConstraint);
        }
        Ok(Self { literals })
    }

    pub fn literals(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.literals.iter().map(|(&i, &b)| (i, b))
    }

    pub fn get(&self, index: usize) -> Option<bool> {
        self.literals.get(&index).copied()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.literals.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }
}

impl fmt::Display for ElementaryConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .literals
            .iter()
            .map(|(i, b)| format!("{i}={}", u8::from(*b)));
        write!(f, "{}", parts.format(" "))
    }
}

/// Generators plus forbidden elementary products.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<usize>,
    forbidden: Vec<ElementaryConstraint>,
}

impl Presentation {
    /// Builds a presentation. Forbidden constraints are deduplicated and
    /// stored in canonical order.
    pub fn new(
        generators: Vec<usize>,
        forbidden: impl IntoIterator<Item = ElementaryConstraint>,
    ) -> Result<Self, AlgebraError> {
        if generators.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AlgebraError::UnorderedGenerators(generators));
        }
        if generators.len() > MAX_GENERATORS {
            return Err(AlgebraError::TooManyGenerators {
                count: generators.len(),
            });
        }
        let mut forbidden: Vec<_> = forbidden.into_iter().collect();
        for c in &forbidden {
            if let Some(i) = c.indices().find(|i| generators.binary_search(i).is_err()) {
                return Err(AlgebraError::ConstraintOutsideGenerators(i));
            }
        }
        forbidden.sort();
        forbidden.dedup();
        Ok(Self {
            generators,
            forbidden,
        })
    }

    /// The free presentation on the given generators.
    pub fn free(generators: Vec<usize>) -> Result<Self, AlgebraError> {
        Self::new(generators, [])
    }

    /// A presentation with exactly `atoms` atoms: the least number `k` of
    /// generators with `2^k >= atoms`, forbidding the codes from `atoms` on.
    /// Atom `c` is the assignment with code `c`. Zero atoms gives the
    /// degenerate algebra on one generator.
    pub fn with_atom_count(atoms: usize) -> Result<Self, AlgebraError> {
        if atoms == 0 {
            let both =
                [false, true].map(|b| ElementaryConstraint::new([(0, b)]).expect("nonempty"));
            return Self::new(vec![0], both);
        }
        let k = (usize::BITS - (atoms - 1).leading_zeros()) as usize;
        if k > MAX_GENERATORS {
            return Err(AlgebraError::TooManyGenerators { count: k });
        }
        let forbidden = (atoms..1 << k).map(|code| {
            ElementaryConstraint::new((0..k).map(|pos| (pos, code >> (k - 1 - pos) & 1 == 1)))
                .expect("k >= 1 here")
        });
        Self::new((0..k).collect(), forbidden)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn forbidden(&self) -> &[ElementaryConstraint] {
        &self.forbidden
    }

    /// Position of a generator index in generator order.
    pub fn position(&self, index: usize) -> Option<usize> {
        self.generators.binary_search(&index).ok()
    }

    /// Valid assignments in lexicographic generator order.
    pub fn atoms(&self) -> Vec<Assignment> {
        let width = self.generators.len() as u8;
        enumerate_atoms(self)
            .into_iter()
            .map(|code| Assignment { code, width })
            .collect()
    }
}

/// A total 0/1 assignment to the generators of a presentation.
///
/// Generator position 0 is the most significant bit of `code`, so numeric
/// order on codes is lexicographic order on the bitstrings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    code: u32,
    width: u8,
}

impl Assignment {
    pub fn from_code(code: u32, width: usize) -> Self {
        debug_assert!(width <= MAX_GENERATORS);
        Self {
            code,
            width: width as u8,
        }
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    /// The bit at generator position `pos`.
    pub fn bit(&self, pos: usize) -> bool {
        debug_assert!(pos < self.width());
        (self.code >> (self.width() - 1 - pos)) & 1 == 1
    }

    /// Whether this assignment extends the constraint (positions resolved
    /// through `pres`).
    pub fn extends(&self, pres: &Presentation, constraint: &ElementaryConstraint) -> bool {
        constraint.literals().all(|(i, b)| match pres.position(i) {
            Some(pos) => self.bit(pos) == b,
            None => false,
        })
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pos in 0..self.width() {
            f.write_str(if self.bit(pos) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Depth-first enumeration of valid assignment codes in increasing order.
/// Each constraint is tested as soon as its last position is assigned.
fn enumerate_atoms(pres: &Presentation) -> Vec<u32> {
    let n = pres.generators.len();
    if n == 0 {
        // The one-element index set has a single (empty) assignment.
        return vec![0];
    }
    // checks[k]: (mask, value) over the k+1 low bits of the partial code.
    let mut checks: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for c in &pres.forbidden {
        let positions: Vec<(usize, bool)> = c
            .literals()
            .map(|(i, b)| (pres.position(i).expect("validated"), b))
            .collect();
        let last = positions.iter().map(|&(p, _)| p).max().expect("nonempty");
        let (mut mask, mut value) = (0u32, 0u32);
        for (p, b) in positions {
            let bit = 1u32 << (last - p);
            mask |= bit;
            if b {
                value |= bit;
            }
        }
        checks[last].push((mask, value));
    }

    let mut out = Vec::new();
    // Explicit stack of (depth, partial code).
    let mut stack: Vec<(usize, u32)> = vec![(0, 0)];
    while let Some((depth, partial)) = stack.pop() {
        if depth == n {
            out.push(partial);
            continue;
        }
        // Push 1 before 0 so that 0 is explored first.
        for bit in [1u32, 0u32] {
            let code = (partial << 1) | bit;
            if checks[depth].iter().all(|&(m, v)| code & m != v) {
                stack.push((depth + 1, code));
            }
        }
    }
    out
}

struct AlgebraInner {
    presentation: Presentation,
    atoms: Vec<Assignment>,
}

/// The finite algebra presented by a [`Presentation`], with its atoms
/// materialized. Cloning is cheap.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraInner>);

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("generators", &self.0.presentation.generators)
            .field("atoms", &self.0.atoms.len())
            .finish()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.presentation == other.0.presentation
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn new(presentation: Presentation) -> Self {
        let atoms = presentation.atoms();
        Self(Arc::new(AlgebraInner {
            presentation,
            atoms,
        }))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.0.presentation
    }

    pub fn atoms(&self) -> &[Assignment] {
        &self.0.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.0.atoms.len()
    }

    /// True when the algebra has no atoms, i.e. `0 = 1`.
    pub fn is_degenerate(&self) -> bool {
        self.0.atoms.is_empty()
    }

    pub fn zero(&self) -> Element {
        Element {
            algebra: self.clone(),
            atoms: FixedBitSet::with_capacity(self.atom_count()),
        }
    }

    pub fn one(&self) -> Element {
        let mut atoms = FixedBitSet::with_capacity(self.atom_count());
        atoms.insert_range(..);
        Element {
            algebra: self.clone(),
            atoms,
        }
    }

    /// The image `x_i` of the free generator `u_i`.
    pub fn generator(&self, index: usize) -> Result<Element, AlgebraError> {
        let pos = self
            .presentation()
            .position(index)
            .ok_or(AlgebraError::UnknownIndex(index))?;
        Ok(self.filter_atoms(|a| a.bit(pos)))
    }

    /// All generators `x_i` in generator order.
    pub fn generators(&self) -> Vec<Element> {
        (0..self.presentation().generators().len())
            .map(|pos| self.filter_atoms(|a| a.bit(pos)))
            .collect()
    }

    /// `x_i` if `positive`, else `−x_i`.
    pub fn literal(&self, index: usize, positive: bool) -> Result<Element, AlgebraError> {
        let x = self.generator(index)?;
        Ok(if positive { x } else { !&x })
    }

    /// The image of the elementary product of `constraint`.
    pub fn elementary_product(
        &self,
        constraint: &ElementaryConstraint,
    ) -> Result<Element, AlgebraError> {
        let mut positions = Vec::with_capacity(constraint.len());
        for (i, b) in constraint.literals() {
            let pos = self
                .presentation()
                .position(i)
                .ok_or(AlgebraError::UnknownIndex(i))?;
            positions.push((pos, b));
        }
        Ok(self.filter_atoms(|a| positions.iter().all(|&(p, b)| a.bit(p) == b)))
    }

    /// The single-atom element for atom number `index`.
    pub fn atom(&self, index: usize) -> Result<Element, AlgebraError> {
        self.from_atom_indices([index])
    }

    pub fn from_atom_indices(
        &self,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Element, AlgebraError> {
        let n = self.atom_count();
        let mut atoms = FixedBitSet::with_capacity(n);
        for index in indices {
            if index >= n {
                return Err(AlgebraError::AtomOutOfRange { index, atoms: n });
            }
            atoms.insert(index);
        }
        Ok(Element {
            algebra: self.clone(),
            atoms,
        })
    }

    pub(crate) fn from_bitset(&self, atoms: FixedBitSet) -> Element {
        debug_assert_eq!(atoms.len(), self.atom_count());
        Element {
            algebra: self.clone(),
            atoms,
        }
    }

    /// Decodes an element from a bitmask over atom indices (bit k = atom k).
    pub fn from_mask(&self, mask: u64) -> Result<Element, AlgebraError> {
        let n = self.atom_count();
        if n < 64 && mask >> n != 0 {
            return Err(AlgebraError::AtomOutOfRange {
                index: 63 - mask.leading_zeros() as usize,
                atoms: n,
            });
        }
        self.from_atom_indices((0..n.min(64)).filter(|k| mask >> k & 1 == 1))
    }

    /// Every element, in increasing mask order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Element> + '_, AlgebraError> {
        let n = self.atom_count();
        if n > MAX_ENUMERABLE_ATOMS {
            return Err(AlgebraError::TooManyAtoms {
                atoms: n,
                limit: MAX_ENUMERABLE_ATOMS,
            });
        }
        Ok((0..1u64 << n).map(move |m| self.from_mask(m).expect("in range")))
    }

    fn filter_atoms(&self, pred: impl Fn(&Assignment) -> bool) -> Element {
        let mut atoms = FixedBitSet::with_capacity(self.atom_count());
        for (k, a) in self.0.atoms.iter().enumerate() {
            if pred(a) {
                atoms.insert(k);
            }
        }
        Element {
            algebra: self.clone(),
            atoms,
        }
    }

    /// Partition of the atoms into blocks of atoms no generator in `gens`
    /// separates. Blocks are the atoms of the generated subalgebra, ordered
    /// by their least atom.
    pub fn blocks(&self, gens: &[Element]) -> Result<Vec<Element>, AlgebraError> {
        for g in gens {
            self.check_member(g)?;
        }
        let mut by_signature: BTreeMap<Vec<bool>, FixedBitSet> = BTreeMap::new();
        let mut order: Vec<Vec<bool>> = Vec::new();
        for k in 0..self.atom_count() {
            let sig: Vec<bool> = gens.iter().map(|g| g.atoms.contains(k)).collect();
            let block = by_signature.entry(sig.clone()).or_insert_with(|| {
                order.push(sig);
                FixedBitSet::with_capacity(self.atom_count())
            });
            block.insert(k);
        }
        Ok(order
            .into_iter()
            .map(|sig| self.from_bitset(by_signature.remove(&sig).expect("present")))
            .collect())
    }

    /// Whether `target` lies in the ideal generated by `gens`: in a finite
    /// algebra that ideal is principal on the join of `gens`.
    pub fn in_ideal_generated_by(
        &self,
        target: &Element,
        gens: &[Element],
    ) -> Result<bool, AlgebraError> {
        self.check_member(target)?;
        let join = self.sum(gens)?;
        target.try_leq(&join)
    }

    /// Whether `target` lies in the subalgebra generated by `gens`, i.e. is a
    /// union of blocks of [`Algebra::blocks`].
    pub fn in_subalgebra_generated_by(
        &self,
        target: &Element,
        gens: &[Element],
    ) -> Result<bool, AlgebraError> {
        self.check_member(target)?;
        let blocks = self.blocks(gens)?;
        Ok(blocks
            .iter()
            .all(|b| b.atoms.is_subset(&target.atoms) || b.atoms.is_disjoint(&target.atoms)))
    }

    /// Join of a finite family; the empty sum is zero.
    pub fn sum<'a>(
        &self,
        family: impl IntoIterator<Item = &'a Element>,
    ) -> Result<Element, AlgebraError> {
        let mut acc = self.zero();
        for x in family {
            self.check_member(x)?;
            acc.atoms.union_with(&x.atoms);
        }
        Ok(acc)
    }

    /// Meet of a finite family; the empty product is one.
    pub fn product<'a>(
        &self,
        family: impl IntoIterator<Item = &'a Element>,
    ) -> Result<Element, AlgebraError> {
        let mut acc = self.one();
        for x in family {
            self.check_member(x)?;
            acc.atoms.intersect_with(&x.atoms);
        }
        Ok(acc)
    }

    fn check_member(&self, x: &Element) -> Result<(), AlgebraError> {
        if &x.algebra == self {
            Ok(())
        } else {
            Err(AlgebraError::MixedAlgebras)
        }
    }
}

/// An element of a presented algebra, stored as its set of atoms.
#[derive(Clone)]
pub struct Element {
    algebra: Algebra,
    atoms: FixedBitSet,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.atoms == other.atoms
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.atoms.hash(state);
    }
}

impl Element {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn atom_set(&self) -> &FixedBitSet {
        &self.atoms
    }

    /// Indices of the atoms below this element, increasing.
    pub fn atom_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.atoms.ones()
    }

    pub fn assignments(&self) -> impl Iterator<Item = Assignment> + '_ {
        self.atoms.ones().map(|k| self.algebra.atoms()[k])
    }

    /// Bitmask over atom indices. Only meaningful below 64 atoms.
    pub fn mask(&self) -> u64 {
        debug_assert!(self.algebra.atom_count() <= 64);
        self.atoms.ones().fold(0u64, |m, k| m | 1 << k)
    }

    pub fn count_atoms(&self) -> usize {
        self.atoms.count_ones(..)
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_clear()
    }

    pub fn is_one(&self) -> bool {
        self.atoms.is_full()
    }

    fn same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(AlgebraError::MixedAlgebras)
        }
    }

    pub fn try_meet(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same(other)?;
        Ok(self.algebra.from_bitset(&self.atoms & &other.atoms))
    }

    pub fn try_join(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same(other)?;
        Ok(self.algebra.from_bitset(&self.atoms | &other.atoms))
    }

    pub fn try_difference(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same(other)?;
        let mut atoms = self.atoms.clone();
        atoms.difference_with(&other.atoms);
        Ok(self.algebra.from_bitset(atoms))
    }

    pub fn try_leq(&self, other: &Self) -> Result<bool, AlgebraError> {
        self.same(other)?;
        Ok(self.atoms.is_subset(&other.atoms))
    }

    pub fn try_disjoint(&self, other: &Self) -> Result<bool, AlgebraError> {
        self.same(other)?;
        Ok(self.atoms.is_disjoint(&other.atoms))
    }

    pub fn complement(&self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.toggle_range(..);
        self.algebra.from_bitset(atoms)
    }

    /// Panics on elements of different algebras; see [`Element::try_meet`].
    pub fn meet(&self, other: &Self) -> Self {
        self.try_meet(other)
            .expect("meet of elements of different algebras")
    }

    pub fn join(&self, other: &Self) -> Self {
        self.try_join(other)
            .expect("join of elements of different algebras")
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.try_difference(other)
            .expect("difference of elements of different algebras")
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.try_leq(other)
            .expect("comparison of elements of different algebras")
    }

    pub fn disjoint(&self, other: &Self) -> bool {
        self.try_disjoint(other)
            .expect("comparison of elements of different algebras")
    }
}

impl fmt::Display for Element {
    /// Comma-separated assignment bitstrings in atom order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.assignments().format(","))
    }
}

impl BitAnd for &Element {
    type Output = Element;
    fn bitand(self, rhs: Self) -> Element {
        self.meet(rhs)
    }
}

impl BitOr for &Element {
    type Output = Element;
    fn bitor(self, rhs: Self) -> Element {
        self.join(rhs)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: Self) -> Element {
        self.difference(rhs)
    }
}

impl Not for &Element {
    type Output = Element;
    fn not(self) -> Element {
        self.complement()
    }
}

impl Not for Element {
    type Output = Element;
    fn not(self) -> Element {
        self.complement()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conflicting_literals_are_rejected() {
        assert_eq!(
            ElementaryConstraint::new([(0, true), (0, false)]),
            Err(AlgebraError::ConflictingLiteral(0))
        );
        assert_eq!(
            ElementaryConstraint::new([(0, true), (0, true)])
                .unwrap()
                .len(),
            1
        );
    }

    fn constraint(lits: &[(usize, bool)]) -> ElementaryConstraint {
        ElementaryConstraint::new(lits.iter().copied()).unwrap()
    }

    fn geq01() -> Algebra {
        // x_0 >= x_1 forbids x_1 . -x_0
        Algebra::new(Presentation::new(vec![0, 1], [constraint(&[(1, true), (0, false)])]).unwrap())
    }

    fn perp01() -> Algebra {
        Algebra::new(Presentation::new(vec![0, 1], [constraint(&[(0, true), (1, true)])]).unwrap())
    }

    fn strings(atoms: &[Assignment]) -> Vec<String> {
        atoms.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn free_algebra_has_all_assignments() {
        let pres = Presentation::free(vec![0, 1]).unwrap();
        assert_eq!(strings(&pres.atoms()), ["00", "01", "10", "11"]);
    }

    #[test]
    fn forbidden_products_remove_atoms() {
        assert_eq!(strings(geq01().atoms()), ["00", "10", "11"]);
        assert_eq!(strings(perp01().atoms()), ["00", "01", "10"]);
    }

    #[test]
    fn generator_elements() {
        let free = Algebra::new(Presentation::free(vec![0, 1]).unwrap());
        assert_eq!(free.generator(0).unwrap().to_string(), "10,11");
        assert_eq!(geq01().generator(1).unwrap().to_string(), "11");
        assert_eq!(perp01().generator(0).unwrap().to_string(), "10");
        assert_eq!(free.generator(5), Err(AlgebraError::UnknownIndex(5)));
    }

    #[test]
    fn boolean_operations() {
        let alg = perp01();
        let x0 = alg.generator(0).unwrap();
        let x1 = alg.generator(1).unwrap();
        assert!((&x0 & &x1).is_zero());
        assert_eq!(!!x0.clone(), x0);
        let alg = geq01();
        assert!(alg.generator(1).unwrap().leq(&alg.generator(0).unwrap()));
        assert!(!alg.generator(0).unwrap().leq(&alg.generator(1).unwrap()));
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let a = geq01().generator(0).unwrap();
        let b = perp01().generator(0).unwrap();
        assert_eq!(a.try_meet(&b), Err(AlgebraError::MixedAlgebras));
        assert_eq!(
            geq01().in_ideal_generated_by(&a, &[b]),
            Err(AlgebraError::MixedAlgebras)
        );
    }

    #[test]
    fn ideal_membership() {
        let alg = geq01();
        let x0 = alg.generator(0).unwrap();
        let x1 = alg.generator(1).unwrap();
        assert!(alg.in_ideal_generated_by(&alg.zero(), &[]).unwrap());
        assert!(alg
            .in_ideal_generated_by(&x1, std::slice::from_ref(&x0))
            .unwrap());
        assert!(!alg.in_ideal_generated_by(&x0, &[x1]).unwrap());
    }

    #[test]
    fn subalgebra_membership() {
        let free = Algebra::new(Presentation::free(vec![0, 1]).unwrap());
        assert!(free.in_subalgebra_generated_by(&free.one(), &[]).unwrap());
        let x0 = free.generator(0).unwrap();
        let x1 = free.generator(1).unwrap();
        assert!(!free
            .in_subalgebra_generated_by(&x0, std::slice::from_ref(&x1))
            .unwrap());
        assert!(free.in_subalgebra_generated_by(&!&x1, &[x1]).unwrap());
    }

    #[test]
    fn presentation_validation() {
        assert!(matches!(
            Presentation::free(vec![1, 0]),
            Err(AlgebraError::UnorderedGenerators(_))
        ));
        assert!(matches!(
            Presentation::free((0..25).collect()),
            Err(AlgebraError::TooManyGenerators { count: 25 })
        ));
        assert_eq!(
            Presentation::new(vec![0], [constraint(&[(3, true)])]),
            Err(AlgebraError::ConstraintOutsideGenerators(3))
        );
        assert_eq!(
            ElementaryConstraint::new([]),
            Err(AlgebraError::EmptyConstraint)
        );
    }

    #[test]
    fn degenerate_presentation_is_a_value() {
        let pres = Presentation::new(
            vec![0],
            [constraint(&[(0, true)]), constraint(&[(0, false)])],
        )
        .unwrap();
        let alg = Algebra::new(pres);
        assert!(alg.is_degenerate());
        assert_eq!(alg.zero(), alg.one());
    }

    #[test]
    fn blocks_partition_the_atoms() {
        let free = Algebra::new(Presentation::free(vec![0, 1, 2]).unwrap());
        let gens = [free.generator(0).unwrap()];
        let blocks = free.blocks(&gens).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].count_atoms() + blocks[1].count_atoms(), 8);
        assert!(blocks[0].disjoint(&blocks[1]));
    }

    #[test]
    fn mask_round_trip() {
        let alg = geq01();
        for e in alg.elements().unwrap() {
            assert_eq!(alg.from_mask(e.mask()).unwrap(), e);
        }
        assert!(alg.from_mask(0b1000).is_err());
    }
}
