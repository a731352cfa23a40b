//! Reduced products and ultraproducts over filters on a finite index set.
//!
//! Every filter on a finite set `I` is principal: it consists of the
//! supersets of its kernel `S`, the intersection of all members. Two tuples
//! are identified when they agree on a member, i.e. on `S`, so the reduced
//! product is the direct product of the factors indexed by `S`. Ultrafilters
//! are the filters with a one-point kernel.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, Presentation};
use crate::theory::{TModelFragment, TheoryError};

/// Largest index set, so that subsets fit a `u32` mask.
pub const MAX_INDEX_SET: usize = 16;

/// Largest atom count for exhaustive operation-table checks.
pub const MAX_TABLE_CHECK_ATOMS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("index set size {0} must be between 1 and {MAX_INDEX_SET}")]
    BadIndexSet(usize),
    #[error("subset {0:#b} is not inside the index set")]
    SubsetOutOfRange(u32),
    #[error("family generates the improper filter")]
    Improper,
    #[error("family is not closed under intersection: {0:#b} and {1:#b}")]
    NotClosed(u32, u32),
    #[error("{factors} factors for an index set of size {size}")]
    Mismatch { factors: usize, size: usize },
    #[error("factor {0} is degenerate")]
    DegenerateFactor(usize),
    #[error("filter is not an ultrafilter")]
    NotUltrafilter,
    #[error("tuple component {0} is from a different algebra")]
    ForeignComponent(usize),
    #[error("isomorphism check failed: {0}")]
    NotIsomorphic(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

/// A filter on `{0, ..., size - 1}`; subsets are bit masks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilterOnFinite {
    size: usize,
    kernel: u32,
}

impl FilterOnFinite {
    fn full(size: usize) -> u32 {
        if size == 32 {
            u32::MAX
        } else {
            (1u32 << size) - 1
        }
    }

    fn check_size(size: usize) -> Result<(), ProductError> {
        if size == 0 || size > MAX_INDEX_SET {
            Err(ProductError::BadIndexSet(size))
        } else {
            Ok(())
        }
    }

    /// The upward closure of `listed`, which must then be closed under
    /// intersection and miss the empty set. An empty list gives `{I}`.
    pub fn from_members(size: usize, listed: &[u32]) -> Result<Self, ProductError> {
        Self::check_size(size)?;
        let full = Self::full(size);
        if let Some(&s) = listed.iter().find(|&&s| s & !full != 0) {
            return Err(ProductError::SubsetOutOfRange(s));
        }
        for (k, &a) in listed.iter().enumerate() {
            for &b in &listed[k + 1..] {
                // a ∩ b must contain some listed set.
                if !listed.iter().any(|&c| c & !(a & b) == 0) {
                    return Err(ProductError::NotClosed(a, b));
                }
            }
        }
        let kernel = listed.iter().fold(full, |k, &s| k & s);
        if kernel == 0 {
            return Err(ProductError::Improper);
        }
        Ok(Self { size, kernel })
    }

    pub fn principal(size: usize, point: usize) -> Result<Self, ProductError> {
        Self::check_size(size)?;
        if point >= size {
            return Err(ProductError::SubsetOutOfRange(1 << point.min(31)));
        }
        Ok(Self {
            size,
            kernel: 1 << point,
        })
    }

    /// `{I}`, under which the reduced product is the full direct product.
    pub fn trivial(size: usize) -> Result<Self, ProductError> {
        Self::check_size(size)?;
        Ok(Self {
            size,
            kernel: Self::full(size),
        })
    }

    /// Every filter on the index set, one per nonempty kernel.
    pub fn all(size: usize) -> Result<Vec<Self>, ProductError> {
        Self::check_size(size)?;
        Ok((1..=Self::full(size))
            .map(|kernel| Self { size, kernel })
            .collect())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Intersection of all members.
    pub fn kernel(&self) -> u32 {
        self.kernel
    }

    pub fn kernel_indices(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&i| self.kernel >> i & 1 == 1)
            .collect()
    }

    pub fn contains(&self, subset: u32) -> bool {
        subset & self.kernel == self.kernel && subset & !Self::full(self.size) == 0
    }

    /// All members, increasing.
    pub fn members(&self) -> Vec<u32> {
        (0..=Self::full(self.size))
            .filter(|&s| self.contains(s))
            .collect()
    }

    /// For every subset, it or its complement is a member.
    pub fn is_ultra(&self) -> bool {
        let full = Self::full(self.size);
        (0..=full).all(|s| self.contains(s) || self.contains(!s & full))
    }

    /// The point of a principal ultrafilter.
    pub fn principal_point(&self) -> Option<usize> {
        (self.kernel.count_ones() == 1).then(|| self.kernel.trailing_zeros() as usize)
    }
}

impl fmt::Display for FilterOnFinite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k: Vec<String> = self
            .kernel_indices()
            .iter()
            .map(|i| i.to_string())
            .collect();
        write!(
            f,
            "filter on {} points with kernel {{{}}}",
            self.size,
            k.join(",")
        )
    }
}

/// `∏ A_i / F`, materialized as the direct product of the factors indexed by
/// the kernel. Its atoms are the kernel factors' atoms, concatenated.
#[derive(Debug, Clone)]
pub struct ReducedProduct {
    factors: Vec<Algebra>,
    filter: FilterOnFinite,
    algebra: Algebra,
    // offsets[i]: first product atom of factor i; unused outside the kernel.
    offsets: Vec<usize>,
}

impl ReducedProduct {
    pub fn new(factors: Vec<Algebra>, filter: FilterOnFinite) -> Result<Self, ProductError> {
        if factors.len() != filter.size() {
            return Err(ProductError::Mismatch {
                factors: factors.len(),
                size: filter.size(),
            });
        }
        let mut offsets = vec![0; factors.len()];
        let mut total = 0;
        for i in filter.kernel_indices() {
            offsets[i] = total;
            total += factors[i].atom_count();
        }
        let algebra = Algebra::new(Presentation::with_atom_count(total)?);
        Ok(Self {
            factors,
            filter,
            algebra,
            offsets,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn factors(&self) -> &[Algebra] {
        &self.factors
    }

    pub fn filter(&self) -> &FilterOnFinite {
        &self.filter
    }

    /// The class of a tuple.
    pub fn quotient(&self, tuple: &[Element]) -> Result<Element, ProductError> {
        if tuple.len() != self.factors.len() {
            return Err(ProductError::Mismatch {
                factors: tuple.len(),
                size: self.factors.len(),
            });
        }
        if let Some(i) = (0..tuple.len()).find(|&i| tuple[i].algebra() != &self.factors[i]) {
            return Err(ProductError::ForeignComponent(i));
        }
        let atoms = self
            .filter
            .kernel_indices()
            .into_iter()
            .flat_map(|i| {
                tuple[i]
                    .atom_indices()
                    .map(move |k| (i, k))
                    .collect::<Vec<_>>()
            })
            .map(|(i, k)| self.offsets[i] + k);
        Ok(self.algebra.from_atom_indices(atoms)?)
    }

    /// The component of a class at a kernel index.
    pub fn project(&self, a: &Element, index: usize) -> Result<Element, ProductError> {
        let factor = &self.factors[index];
        if self.filter.kernel >> index & 1 == 0 {
            return Ok(factor.zero());
        }
        let lo = self.offsets[index];
        let hi = lo + factor.atom_count();
        Ok(factor.from_atom_indices(
            a.atom_indices()
                .filter(|&k| k >= lo && k < hi)
                .map(|k| k - lo),
        )?)
    }

    /// The least representative: zero outside the kernel.
    pub fn representative(&self, a: &Element) -> Result<Vec<Element>, ProductError> {
        (0..self.factors.len())
            .map(|i| self.project(a, i))
            .collect()
    }

    /// `{i : a_i = b_i} ∈ F`.
    pub fn equivalent(&self, a: &[Element], b: &[Element]) -> bool {
        let agree = (0..a.len())
            .filter(|&i| a[i] == b[i])
            .fold(0u32, |m, i| m | 1 << i);
        self.filter.contains(agree)
    }

    /// The tuple of generator `index` of every factor.
    pub fn generator_tuple(&self, index: usize) -> Result<Vec<Element>, ProductError> {
        Ok(self
            .factors
            .iter()
            .map(|f| f.generator(index))
            .collect::<Result<_, _>>()?)
    }

    /// For an ultrafilter at `i0`, checks that `a ↦ a_{i0}` is an
    /// isomorphism: a bijection on atoms that is additive, and for at most
    /// [`MAX_TABLE_CHECK_ATOMS`] atoms also preserves every meet, join and
    /// complement.
    pub fn verify_isomorphism_to_factor(&self) -> Result<usize, ProductError> {
        let i0 = self
            .filter
            .principal_point()
            .ok_or(ProductError::NotUltrafilter)?;
        let factor = &self.factors[i0];
        let n = self.algebra.atom_count();
        if n != factor.atom_count() {
            return Err(ProductError::NotIsomorphic(format!(
                "{n} atoms against {}",
                factor.atom_count()
            )));
        }
        let image = |a: &Element| self.project(a, i0);
        let mut seen = BTreeSet::new();
        for k in 0..n {
            let img = image(&self.algebra.atom(k)?)?;
            if img.count_atoms() != 1 || !seen.insert(img.mask()) {
                return Err(ProductError::NotIsomorphic(format!(
                    "atom {k} is not sent to a new atom"
                )));
            }
        }
        if n <= MAX_TABLE_CHECK_ATOMS {
            let elements: Vec<Element> = self.algebra.elements()?.collect();
            let images: Vec<Element> = elements.iter().map(image).collect::<Result<_, _>>()?;
            let distinct: BTreeSet<u64> = images.iter().map(Element::mask).collect();
            if distinct.len() != elements.len() {
                return Err(ProductError::NotIsomorphic("not injective".into()));
            }
            for (a, ha) in elements.iter().zip(&images) {
                if image(&!a)? != !ha {
                    return Err(ProductError::NotIsomorphic(format!("complement of {a}")));
                }
                for (b, hb) in elements.iter().zip(&images) {
                    if image(&(a & b))? != ha & hb || image(&(a | b))? != ha | hb {
                        return Err(ProductError::NotIsomorphic(format!("{a} and {b}")));
                    }
                }
            }
        } else {
            for a in self.algebra.elements()? {
                let joined = factor.sum(
                    &a.atom_indices()
                        .map(|k| image(&self.algebra.atom(k).expect("in range")))
                        .collect::<Result<Vec<_>, _>>()?,
                )?;
                if image(&a)? != joined {
                    return Err(ProductError::NotIsomorphic(format!("{a} is not additive")));
                }
            }
        }
        Ok(i0)
    }
}

/// Quantifier-free formulas over tuple generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Leq(usize, usize),
    Disjoint(usize, usize),
    Eq(usize, usize),
    Zero(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// True when no negation occurs.
    pub fn is_positive(&self) -> bool {
        match self {
            Formula::Not(_) => false,
            Formula::And(a, b) | Formula::Or(a, b) => a.is_positive() && b.is_positive(),
            _ => true,
        }
    }

    pub fn is_atomic(&self) -> bool {
        !matches!(self, Formula::Not(_) | Formula::And(..) | Formula::Or(..))
    }

    /// Evaluates with `x(i)` giving the value of generator `i`.
    pub fn eval(&self, x: &dyn Fn(usize) -> Element) -> bool {
        match self {
            Formula::Leq(i, j) => x(*i).leq(&x(*j)),
            Formula::Disjoint(i, j) => x(*i).disjoint(&x(*j)),
            Formula::Eq(i, j) => x(*i) == x(*j),
            Formula::Zero(i) => x(*i).is_zero(),
            Formula::Not(a) => !a.eval(x),
            Formula::And(a, b) => a.eval(x) && b.eval(x),
            Formula::Or(a, b) => a.eval(x) || b.eval(x),
        }
    }
}

/// Truth of `formula` in the reduced product, and the set of factors where
/// it holds, for generator indices shared by every factor.
pub fn los_check(rp: &ReducedProduct, formula: &Formula) -> Result<(bool, u32), ProductError> {
    let mut gens = BTreeSet::new();
    collect_indices(formula, &mut gens);
    let mut tuples = std::collections::BTreeMap::new();
    for &g in &gens {
        tuples.insert(g, rp.generator_tuple(g)?);
    }
    let classes: std::collections::BTreeMap<usize, Element> = tuples
        .iter()
        .map(|(&g, t)| Ok((g, rp.quotient(t)?)))
        .collect::<Result<_, ProductError>>()?;
    let in_product = formula.eval(&|g| classes[&g].clone());
    let holds_at = (0..rp.factors().len())
        .filter(|&i| formula.eval(&|g| tuples[&g][i].clone()))
        .fold(0u32, |m, i| m | 1 << i);
    Ok((in_product, holds_at))
}

fn collect_indices(f: &Formula, out: &mut BTreeSet<usize>) {
    match f {
        Formula::Leq(i, j) | Formula::Disjoint(i, j) | Formula::Eq(i, j) => {
            out.insert(*i);
            out.insert(*j);
        }
        Formula::Zero(i) => {
            out.insert(*i);
        }
        Formula::Not(a) => collect_indices(a, out),
        Formula::And(a, b) | Formula::Or(a, b) => {
            collect_indices(a, out);
            collect_indices(b, out);
        }
    }
}

/// Both sides of `π(∏ A_i / F) ≤ |∏ π(A_i) / F|` with finite `π` equal to
/// the atom count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityComparison {
    /// Atom count of the reduced product: the sum over the kernel.
    pub lhs: u64,
    /// Classes of tuples of naturals below `π(A_i)` modulo `=_F`: the
    /// product over the kernel.
    pub rhs: u64,
}

impl DensityComparison {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }

    pub fn is_equality(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for DensityComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.lhs < self.rhs {
            "<"
        } else if self.lhs == self.rhs {
            "="
        } else {
            ">"
        };
        write!(
            f,
            "pi(product)={} {rel} |prod pi / F|={} ({})",
            self.lhs,
            self.rhs,
            if self.holds() { "holds" } else { "VIOLATED" }
        )
    }
}

pub fn compare_densities(
    factors: &[Algebra],
    filter: &FilterOnFinite,
) -> Result<DensityComparison, ProductError> {
    if factors.len() != filter.size() {
        return Err(ProductError::Mismatch {
            factors: factors.len(),
            size: filter.size(),
        });
    }
    if let Some(i) = factors.iter().position(Algebra::is_degenerate) {
        return Err(ProductError::DegenerateFactor(i));
    }
    let kernel = filter.kernel_indices();
    Ok(DensityComparison {
        lhs: kernel.iter().map(|&i| factors[i].atom_count() as u64).sum(),
        rhs: kernel
            .iter()
            .map(|&i| factors[i].atom_count() as u64)
            .product(),
    })
}

/// The ultraproduct of T-fragments under a principal ultrafilter.
///
/// Labels, classes, levels and generators are computed on tuples and then
/// identified modulo the ultrafilter, which keeps the principal coordinate.
/// All fragments must have equally many labels.
pub fn ultraproduct_tmodel(
    models: &[TModelFragment],
    filter: &FilterOnFinite,
) -> Result<TModelFragment, ProductError> {
    let i0 = filter
        .principal_point()
        .ok_or(ProductError::NotUltrafilter)?;
    if models.len() != filter.size() {
        return Err(ProductError::Mismatch {
            factors: models.len(),
            size: filter.size(),
        });
    }
    let rp = ReducedProduct::new(
        models.iter().map(|m| m.algebra().clone()).collect(),
        filter.clone(),
    )?;
    let width = models[i0].labels().len();
    if let Some(m) = models.iter().find(|m| m.labels().len() != width) {
        return Err(ProductError::Mismatch {
            factors: m.labels().len(),
            size: width,
        });
    }
    // A tuple is identified with its kernel coordinates; with a one-point
    // kernel that is the principal coordinate.
    let class_of = |tuple: &[usize]| tuple[i0];
    let tuple_at = |k: usize, pick: &dyn Fn(&TModelFragment, usize) -> usize| -> Vec<usize> {
        models.iter().map(|m| pick(m, k)).collect()
    };
    let labels: Vec<usize> = (0..width)
        .map(|k| class_of(&tuple_at(k, &|m, k| m.labels()[k])))
        .collect();
    let classes: Vec<usize> = (0..width)
        .map(|k| class_of(&tuple_at(k, &|m, k| m.classes()[k])))
        .collect();
    let x: Vec<Element> = (0..width)
        .map(|k| {
            let tuple: Vec<Element> = models.iter().map(|m| m.generators()[k].clone()).collect();
            rp.quotient(&tuple)
        })
        .collect::<Result<_, _>>()?;
    let v: Vec<usize> = rp
        .algebra()
        .elements()?
        .map(|a| {
            let rep = rp.representative(&a)?;
            let tuple: Vec<usize> = models.iter().zip(&rep).map(|(m, c)| m.level(c)).collect();
            Ok(class_of(&tuple))
        })
        .collect::<Result<_, ProductError>>()?;
    Ok(TModelFragment::new(
        rp.algebra().clone(),
        labels,
        classes,
        v,
        x,
    )?)
}
