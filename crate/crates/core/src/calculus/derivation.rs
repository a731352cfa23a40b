use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use super::{CalculusError, Trit, TritTable, ValuationFunction};

/// `x_left ≥ x_right` or `x_left ⊥ x_right`.
///
/// Disjointness is symmetric: [`AtomicRelation::perp`] stores the smaller
/// index first, so the two orientations compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomicRelation {
    Geq(usize, usize),
    Perp(usize, usize),
}

impl AtomicRelation {
    pub fn geq(left: usize, right: usize) -> Self {
        AtomicRelation::Geq(left, right)
    }

    pub fn perp(a: usize, b: usize) -> Self {
        AtomicRelation::Perp(a.min(b), a.max(b))
    }

    pub fn indices(&self) -> (usize, usize) {
        match *self {
            AtomicRelation::Geq(a, b) | AtomicRelation::Perp(a, b) => (a, b),
        }
    }

    pub fn is_reflexive_geq(&self) -> bool {
        matches!(*self, AtomicRelation::Geq(a, b) if a == b)
    }
}

impl fmt::Display for AtomicRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomicRelation::Geq(a, b) => write!(f, "geq {a} {b}"),
            AtomicRelation::Perp(a, b) => write!(f, "perp {a} {b}"),
        }
    }
}

/// A finite set of atomic relations, kept in canonical order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RelationSet(BTreeSet<AtomicRelation>);

impl RelationSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, rel: AtomicRelation) -> bool {
        // Normalizes perp orientation for relations built by hand.
        let rel = match rel {
            AtomicRelation::Perp(a, b) => AtomicRelation::perp(a, b),
            geq => geq,
        };
        self.0.insert(rel)
    }

    pub fn contains(&self, rel: &AtomicRelation) -> bool {
        match *rel {
            AtomicRelation::Perp(a, b) => self.0.contains(&AtomicRelation::perp(a, b)),
            geq => self.0.contains(&geq),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &AtomicRelation> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every index mentioned, increasing.
    pub fn indices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .0
            .iter()
            .flat_map(|r| {
                let (a, b) = r.indices();
                [a, b]
            })
            .collect();
        set.into_iter().collect()
    }

    pub fn union(&self, other: &RelationSet) -> RelationSet {
        RelationSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &RelationSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Subset test that ignores reflexive `x_i ≥ x_i` facts on the left,
    /// which every valuation function satisfies without recording them.
    pub fn is_subset_modulo_reflexive(&self, other: &RelationSet) -> bool {
        self.0
            .iter()
            .all(|r| r.is_reflexive_geq() || other.0.contains(r))
    }
}

impl FromIterator<AtomicRelation> for RelationSet {
    fn from_iter<I: IntoIterator<Item = AtomicRelation>>(iter: I) -> Self {
        let mut set = RelationSet::new();
        for r in iter {
            set.insert(r);
        }
        set
    }
}

impl Extend<AtomicRelation> for RelationSet {
    fn extend<I: IntoIterator<Item = AtomicRelation>>(&mut self, iter: I) {
        for r in iter {
            self.insert(r);
        }
    }
}

impl<'a> IntoIterator for &'a RelationSet {
    type Item = &'a AtomicRelation;
    type IntoIter = std::collections::btree_set::Iter<'a, AtomicRelation>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.0 {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Why a relation set is inconsistent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inconsistency {
    /// Derives `x_upper ≥ x_lower` with `lower < upper`.
    UpwardOrder { upper: usize, lower: usize },
    /// Derives `x_k ⊥ x_k`.
    SelfDisjoint(usize),
}

impl fmt::Display for Inconsistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inconsistency::UpwardOrder { upper, lower } => {
                write!(f, "derives geq {upper} {lower} with {lower} < {upper}")
            }
            Inconsistency::SelfDisjoint(k) => write!(f, "derives perp {k} {k}"),
        }
    }
}

/// Everything derivable from a relation set.
///
/// The ≥ part is the reflexive-transitive closure of the ≥ edges over the
/// mentioned indices. The ⊥ part is one pass of the transfer rule over the
/// ⊥ relations of the input: a derived ⊥ never feeds a ≥ derivation, and
/// transferring a derived ⊥ again yields nothing new because ≥ is already
/// transitive.
#[derive(Debug, Clone)]
pub struct Closure {
    indices: Vec<usize>,
    // geq[a] holds b iff x_indices[a] ≥ x_indices[b] is derivable.
    geq: Vec<FixedBitSet>,
    perp: Vec<FixedBitSet>,
}

impl Closure {
    pub fn of(r: &RelationSet) -> Self {
        let indices = r.indices();
        let n = indices.len();
        let pos = |i: usize| indices.binary_search(&i).expect("mentioned");

        let mut geq: Vec<FixedBitSet> = (0..n)
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(a);
                row
            })
            .collect();
        for rel in r {
            if let AtomicRelation::Geq(i, j) = *rel {
                geq[pos(i)].insert(pos(j));
            }
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = geq[k].clone();
            for row in geq.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }

        let mut perp: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
        for rel in r {
            if let AtomicRelation::Perp(alpha, beta) = *rel {
                let (a, b) = (pos(alpha), pos(beta));
                for k in geq[a].ones() {
                    perp[k].union_with(&geq[b]);
                }
                for l in geq[b].ones() {
                    perp[l].union_with(&geq[a]);
                }
            }
        }
        Self { indices, geq, perp }
    }

    fn pos(&self, i: usize) -> Option<usize> {
        self.indices.binary_search(&i).ok()
    }

    /// Whether `x_i ≥ x_j` is derivable. Reflexive facts hold for every
    /// index, mentioned or not.
    pub fn geq(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        match (self.pos(i), self.pos(j)) {
            (Some(a), Some(b)) => self.geq[a].contains(b),
            _ => false,
        }
    }

    pub fn perp(&self, i: usize, j: usize) -> bool {
        match (self.pos(i), self.pos(j)) {
            (Some(a), Some(b)) => self.perp[a].contains(b),
            _ => false,
        }
    }

    pub fn derives(&self, rel: &AtomicRelation) -> bool {
        match *rel {
            AtomicRelation::Geq(i, j) => self.geq(i, j),
            AtomicRelation::Perp(i, j) => self.perp(i, j),
        }
    }

    /// The closure as a relation set, reflexive ≥ facts on mentioned
    /// indices included.
    pub fn relations(&self) -> RelationSet {
        let mut out = RelationSet::new();
        for (a, &i) in self.indices.iter().enumerate() {
            for b in self.geq[a].ones() {
                out.insert(AtomicRelation::geq(i, self.indices[b]));
            }
            for b in self.perp[a].ones().filter(|&b| b >= a) {
                out.insert(AtomicRelation::perp(i, self.indices[b]));
            }
        }
        out
    }

    /// The first witness of inconsistency: self-disjointness in index
    /// order, then upward order relations.
    pub fn inconsistency(&self) -> Option<Inconsistency> {
        for (a, &k) in self.indices.iter().enumerate() {
            if self.perp[a].contains(a) {
                return Some(Inconsistency::SelfDisjoint(k));
            }
        }
        for (a, &upper) in self.indices.iter().enumerate() {
            // Indices are sorted, so positions below `a` are smaller indices.
            if let Some(b) = self.geq[a].ones().find(|&b| b < a) {
                return Some(Inconsistency::UpwardOrder {
                    upper,
                    lower: self.indices[b],
                });
            }
        }
        None
    }
}

/// The least superset of `r` closed under the derivation rules.
pub fn derive_closure(r: &RelationSet) -> RelationSet {
    Closure::of(r).relations()
}

/// `r ⊢ rel`.
pub fn derives(r: &RelationSet, rel: &AtomicRelation) -> bool {
    Closure::of(r).derives(rel)
}

pub fn is_consistent(r: &RelationSet) -> bool {
    Closure::of(r).inconsistency().is_none()
}

/// The valuation function over `domain` whose entries are exactly the
/// relations derivable from `r`.
pub fn canonical_extension(
    r: &RelationSet,
    domain: &[usize],
) -> Result<ValuationFunction, CalculusError> {
    let mut table = TritTable::undefined(domain.to_vec())?;
    if let Some(i) = r
        .indices()
        .into_iter()
        .find(|i| domain.binary_search(i).is_err())
    {
        return Err(CalculusError::IndexOutsideDomain(i));
    }
    let closure = Closure::of(r);
    if let Some(why) = closure.inconsistency() {
        return Err(CalculusError::Inconsistent(why));
    }
    let mentioned = r.indices();
    for (a, &i) in mentioned.iter().enumerate() {
        for &j in &mentioned[a + 1..] {
            let t = if closure.geq(i, j) {
                Trit::Geq
            } else if closure.perp(i, j) {
                Trit::Perp
            } else {
                continue;
            };
            table.set(i, j, t)?;
        }
    }
    ValuationFunction::new(table)
        .map_err(|e| CalculusError::Internal(format!("canonical extension: {e}")))
}

/// A common extension of two valuation functions that agree on their
/// common domain: the canonical extension of `rel p ∪ rel q` over the
/// union of the domains.
pub fn merge(
    p: &ValuationFunction,
    q: &ValuationFunction,
) -> Result<ValuationFunction, CalculusError> {
    let common: Vec<usize> = p
        .domain()
        .iter()
        .copied()
        .filter(|&i| q.contains(i))
        .collect();
    for (a, &i) in common.iter().enumerate() {
        for &j in &common[a + 1..] {
            let (left, right) = (p.get(i, j)?, q.get(i, j)?);
            if left != right {
                return Err(CalculusError::Disagreement { i, j, left, right });
            }
        }
    }
    let domain: BTreeSet<usize> = p.domain().iter().chain(q.domain()).copied().collect();
    let domain: Vec<usize> = domain.into_iter().collect();
    canonical_extension(&p.rel().union(&q.rel()), &domain).map_err(|e| match e {
        CalculusError::Inconsistent(why) => {
            CalculusError::Internal(format!("union of compatible conditions {why}"))
        }
        other => other,
    })
}
