//! Finite fragments of the theory T: an algebra enriched by an ordered index
//! set `L`, an equivalence `~` on `L`, a level map `v` and a generator map
//! `x`.
//!
//! Elements are handled as atom masks here, so fragments are limited to
//! [`MAX_MODEL_ATOMS`] atoms.

use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};
use crate::calculus::{CalculusError, ValuationFunction};

pub const MAX_MODEL_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("{atoms} atoms exceed the model cap of {MAX_MODEL_ATOMS}")]
    TooManyAtoms { atoms: usize },
    #[error("L has {labels} labels but {classes} class ids")]
    ClassTableLength { labels: usize, classes: usize },
    #[error("L has {labels} labels but {values} x values")]
    GeneratorTableLength { labels: usize, values: usize },
    #[error("v table has {got} entries, expected {expected}")]
    LevelTableLength { got: usize, expected: usize },
    #[error("x value for label {0} belongs to another algebra")]
    ForeignElement(usize),
    #[error("domain {0:?} is not of the form 0..n with n >= 1")]
    NonContiguousDomain(Vec<usize>),
    #[error("block size {block} must be positive and divide {n}")]
    BadBlockSize { block: usize, n: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

/// A finite structure in the signature of T.
///
/// `labels` lists `L` in `≤_L` order. `classes[k]` is the `~`-class id of
/// `labels[k]`, `x[k]` its generator. `v[m]` is the label assigned to the
/// element with atom mask `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TModelFragment {
    algebra: Algebra,
    labels: Vec<usize>,
    classes: Vec<usize>,
    v: Vec<usize>,
    x: Vec<Element>,
}

impl TModelFragment {
    pub fn new(
        algebra: Algebra,
        labels: Vec<usize>,
        classes: Vec<usize>,
        v: Vec<usize>,
        x: Vec<Element>,
    ) -> Result<Self, TheoryError> {
        let atoms = algebra.atom_count();
        if atoms > MAX_MODEL_ATOMS {
            return Err(TheoryError::TooManyAtoms { atoms });
        }
        if classes.len() != labels.len() {
            return Err(TheoryError::ClassTableLength {
                labels: labels.len(),
                classes: classes.len(),
            });
        }
        if x.len() != labels.len() {
            return Err(TheoryError::GeneratorTableLength {
                labels: labels.len(),
                values: x.len(),
            });
        }
        if v.len() != 1 << atoms {
            return Err(TheoryError::LevelTableLength {
                got: v.len(),
                expected: 1 << atoms,
            });
        }
        if let Some(k) = x.iter().position(|e| e.algebra() != &algebra) {
            return Err(TheoryError::ForeignElement(labels[k]));
        }
        Ok(Self {
            algebra,
            labels,
            classes,
            v,
            x,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn levels(&self) -> &[usize] {
        &self.v
    }

    pub fn generators(&self) -> &[Element] {
        &self.x
    }

    fn position(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// `v(a)`.
    pub fn level(&self, a: &Element) -> usize {
        self.v[a.mask() as usize]
    }

    /// `x_l`.
    pub fn generator(&self, label: usize) -> Option<&Element> {
        self.position(label).map(|k| &self.x[k])
    }

    /// Whether `i ~ l`.
    pub fn equivalent(&self, i: usize, l: usize) -> Option<bool> {
        Some(self.classes[self.position(i)?] == self.classes[self.position(l)?])
    }

    /// `A_l = {a : v(a) <_L l}` as atom masks, increasing. Levels outside
    /// `L` never count as below `l`.
    pub fn level_set(&self, label: usize) -> Vec<u64> {
        let Some(bound) = self.position(label) else {
            return Vec::new();
        };
        (0..self.v.len() as u64)
            .filter(|&m| matches!(self.position(self.v[m as usize]), Some(k) if k < bound))
            .collect()
    }

    /// Some `i ~ l` with `0 < x_i ≤ a`, the least in `≤_L` order.
    pub fn density_witness(&self, label: usize, a: &Element) -> Option<usize> {
        let k = self.position(label)?;
        let class = self.classes[k];
        (0..self.labels.len())
            .find(|&i| self.classes[i] == class && !self.x[i].is_zero() && self.x[i].leq(a))
            .map(|i| self.labels[i])
    }

    fn element(&self, mask: u64) -> Element {
        self.algebra
            .from_mask(mask)
            .expect("mask within atom count")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    A,
    B,
    C,
    D,
    E,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::A => "(a)",
            Axiom::B => "(b)",
            Axiom::C => "(c)",
            Axiom::D => "(d)",
            Axiom::E => "(e)",
        };
        f.write_str(s)
    }
}

/// A counterexample to one axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A label listed twice, so `≤_L` is not antisymmetric.
    RepeatedLabel(usize),
    /// `v(a)` is not a label of `L`.
    LevelOutsideL { element: Element, value: usize },
    /// `A_l` lacks the complement of a member.
    MissingComplement { level: usize, element: Element },
    /// `A_l` lacks the meet of two members.
    MissingMeet {
        level: usize,
        left: Element,
        right: Element,
    },
    /// `low ~ high` but not `low ~ mid`, with `low < mid < high`.
    NonConvex { low: usize, mid: usize, high: usize },
    /// `x_lower ≤ x_upper` although `lower < upper`.
    Comparable { lower: usize, upper: usize },
    /// A nonzero member of `A_l` with no `i ~ l` such that `0 < x_i ≤ a`.
    /// Only minimal such members are reported.
    NotDense { level: usize, element: Element },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::RepeatedLabel(l) => write!(f, "label {l} repeated"),
            Witness::LevelOutsideL { element, value } => {
                write!(f, "v({{{element}}}) = {value} is not in L")
            }
            Witness::MissingComplement { level, element } => {
                write!(f, "A_{level} contains {{{element}}} but not its complement")
            }
            Witness::MissingMeet { level, left, right } => write!(
                f,
                "A_{level} contains {{{left}}} and {{{right}}} but not their meet"
            ),
            Witness::NonConvex { low, mid, high } => {
                write!(f, "{low} ~ {high} but not {low} ~ {mid}")
            }
            Witness::Comparable { lower, upper } => write!(f, "x_{lower} <= x_{upper}"),
            Witness::NotDense { level, element } => {
                write!(f, "no witness at level {level} below {{{element}}}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    pub failures: Vec<Witness>,
    /// Clause not checked, if any.
    pub waived: Option<&'static str>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for AxiomOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}",
            self.axiom,
            if self.passed() { "pass" } else { "FAIL" }
        )?;
        if let Some(w) = self.waived {
            write!(f, " [waived: {w}]")?;
        }
        for w in &self.failures {
            write!(f, "\n    {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn outcome(&self, axiom: Axiom) -> &AxiomOutcome {
        self.outcomes
            .iter()
            .find(|o| o.axiom == axiom)
            .expect("every axiom is reported")
    }

    /// All checked clauses hold; waived clauses are ignored.
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn density_failures(&self) -> impl Iterator<Item = (usize, &Element)> {
        self.outcome(Axiom::E)
            .failures
            .iter()
            .filter_map(|w| match w {
                Witness::NotDense { level, element } => Some((*level, element)),
                _ => None,
            })
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        Ok(())
    }
}

/// Blocks of the partition of `0..atoms` generated by `members`.
fn partition(atoms: usize, members: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let full = if atoms == 64 {
        u64::MAX
    } else {
        (1u64 << atoms) - 1
    };
    let mut blocks = if atoms == 0 { Vec::new() } else { vec![full] };
    for s in members {
        blocks = blocks
            .into_iter()
            .flat_map(|b| [b & s, b & !s])
            .filter(|&b| b != 0)
            .collect();
    }
    blocks.sort_unstable_by_key(|b| b.trailing_zeros());
    blocks
}

fn is_union_of(mask: u64, blocks: &[u64]) -> bool {
    blocks.iter().all(|&b| mask & b == 0 || mask & b == b)
}

fn check_subalgebra(m: &TModelFragment, level: usize, members: &[u64]) -> Option<Witness> {
    if members.is_empty() {
        // Read as vacuous: the least level has no element strictly below it.
        return None;
    }
    let atoms = m.algebra.atom_count();
    let full = if atoms == 64 {
        u64::MAX
    } else {
        (1u64 << atoms) - 1
    };
    let blocks = partition(atoms, members.iter().copied());
    if members.len() as u128 == 1u128 << blocks.len() {
        return None;
    }
    let contains = |x: u64| members.binary_search(&x).is_ok();
    if let Some(&a) = members.iter().find(|&&a| !contains(!a & full)) {
        return Some(Witness::MissingComplement {
            level,
            element: m.element(a),
        });
    }
    for (k, &a) in members.iter().enumerate() {
        if let Some(&b) = members[k + 1..].iter().find(|&&b| !contains(a & b)) {
            return Some(Witness::MissingMeet {
                level,
                left: m.element(a),
                right: m.element(b),
            });
        }
    }
    unreachable!("a set closed under complement and meet has 2^blocks members")
}

fn density_failures(m: &TModelFragment, k: usize, members: &[u64]) -> Vec<Witness> {
    let level = m.labels[k];
    let witnesses: Vec<u64> = (0..m.labels.len())
        .filter(|&i| m.classes[i] == m.classes[k])
        .map(|i| m.x[i].mask())
        .filter(|&w| w != 0)
        .collect();
    let mut failing: Vec<u64> = members
        .iter()
        .copied()
        .filter(|&a| a != 0 && witnesses.iter().all(|&w| w & !a != 0))
        .collect();
    failing.sort_by_key(|a| (a.count_ones(), *a));
    let mut minimal: Vec<u64> = Vec::new();
    for a in failing {
        if minimal.iter().all(|&b| b & !a != 0) {
            minimal.push(a);
        }
    }
    minimal.sort_unstable();
    minimal
        .into_iter()
        .map(|a| Witness::NotDense {
            level,
            element: m.element(a),
        })
        .collect()
}

/// Checks axioms (a) to (e). Axiom (b)'s no-greatest-element clause is
/// waived, since no finite nonempty order satisfies it.
pub fn check_axioms(m: &TModelFragment) -> AxiomReport {
    let n = m.labels.len();

    let a = AxiomOutcome {
        axiom: Axiom::A,
        failures: Vec::new(),
        waived: None,
    };

    let mut seen = std::collections::BTreeSet::new();
    let b = AxiomOutcome {
        axiom: Axiom::B,
        failures: m
            .labels
            .iter()
            .filter(|&&l| !seen.insert(l))
            .map(|&l| Witness::RepeatedLabel(l))
            .collect(),
        waived: Some("L has no greatest element"),
    };

    let mut c_failures: Vec<Witness> =
        m.v.iter()
            .enumerate()
            .filter(|&(_, &l)| m.position(l).is_none())
            .map(|(mask, &value)| Witness::LevelOutsideL {
                element: m.element(mask as u64),
                value,
            })
            .collect();
    let level_sets: Vec<Vec<u64>> = m.labels.iter().map(|&l| m.level_set(l)).collect();
    c_failures.extend((0..n).filter_map(|k| check_subalgebra(m, m.labels[k], &level_sets[k])));
    let c = AxiomOutcome {
        axiom: Axiom::C,
        failures: c_failures,
        waived: None,
    };

    let mut d_failures = Vec::new();
    'outer: for low in 0..n {
        for high in low + 2..n {
            if m.classes[low] != m.classes[high] {
                continue;
            }
            if let Some(mid) = (low + 1..high).find(|&j| m.classes[j] != m.classes[low]) {
                d_failures.push(Witness::NonConvex {
                    low: m.labels[low],
                    mid: m.labels[mid],
                    high: m.labels[high],
                });
                break 'outer;
            }
        }
    }
    let d = AxiomOutcome {
        axiom: Axiom::D,
        failures: d_failures,
        waived: None,
    };

    let mut e_failures = Vec::new();
    for i in 0..n {
        for l in i + 1..n {
            if m.x[i].leq(&m.x[l]) {
                e_failures.push(Witness::Comparable {
                    lower: m.labels[i],
                    upper: m.labels[l],
                });
            }
        }
    }
    for k in 0..n {
        e_failures.extend(density_failures(m, k, &level_sets[k]));
    }
    let e = AxiomOutcome {
        axiom: Axiom::E,
        failures: e_failures,
        waived: None,
    };

    AxiomReport {
        outcomes: vec![a, b, c, d, e],
    }
}

/// The standard enrichment of `A(p)` for `dom p = 0..n`: `L = dom p`,
/// `x_i` the generators, `v(a)` the least `i` with `a` in the subalgebra
/// generated by `x_0, ..., x_i`, and `i ~ l` when both lie in the same
/// block `[kμ, (k+1)μ)`.
pub fn standard_model(
    p: &ValuationFunction,
    block_size: usize,
) -> Result<TModelFragment, TheoryError> {
    let dom = p.domain().to_vec();
    let n = dom.len();
    if n == 0 || dom.iter().enumerate().any(|(k, &i)| k != i) {
        return Err(TheoryError::NonContiguousDomain(dom));
    }
    if block_size == 0 || !n.is_multiple_of(block_size) {
        return Err(TheoryError::BadBlockSize {
            block: block_size,
            n,
        });
    }
    let algebra = p.algebra()?;
    let atoms = algebra.atom_count();
    if atoms > MAX_MODEL_ATOMS {
        return Err(TheoryError::TooManyAtoms { atoms });
    }
    let x = algebra.generators();
    let masks: Vec<u64> = x.iter().map(Element::mask).collect();
    // partitions[i]: blocks generated by x_0..x_i.
    let partitions: Vec<Vec<u64>> = (0..n)
        .map(|i| partition(atoms, masks[..=i].iter().copied()))
        .collect();
    let v = (0..1u64 << atoms)
        .map(|mask| {
            partitions
                .iter()
                .position(|blocks| is_union_of(mask, blocks))
                .expect("the generators separate all atoms")
        })
        .collect();
    let classes = (0..n).map(|i| i / block_size).collect();
    TModelFragment::new(algebra, dom, classes, v, x)
}
