use std::collections::BTreeMap;
use std::fmt;

use super::{AtomicRelation, CalculusError, RelationSet};
use crate::algebra::{Algebra, AlgebraError, Element, ElementaryConstraint, Presentation};

/// The three values a valuation function may take on a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trit {
    Geq,
    Perp,
    Undef,
}

impl Trit {
    pub const ALL: [Trit; 3] = [Trit::Geq, Trit::Perp, Trit::Undef];

    pub fn as_str(self) -> &'static str {
        match self {
            Trit::Geq => "GEQ",
            Trit::Perp => "PERP",
            Trit::Undef => "UNDEF",
        }
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Trit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "GEQ" => Ok(Trit::Geq),
            "PERP" => Ok(Trit::Perp),
            "UNDEF" => Ok(Trit::Undef),
            other => Err(format!("unknown value `{other}`")),
        }
    }
}

/// Which closure condition a table violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `p(i,j) = p(j,k) = GEQ` but `p(i,k) != GEQ`.
    GeqTransitive,
    /// `{p(i,j), p(i,k)} = {GEQ, PERP}` but `p(j,k) != PERP`.
    PerpFromCommonBound,
    /// `p(i,j) = PERP`, `p(j,k) = GEQ` but `p(i,k) != PERP`.
    PerpInherited,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::GeqTransitive => "(1)",
            Condition::PerpFromCommonBound => "(2a)",
            Condition::PerpInherited => "(2b)",
        })
    }
}

/// A violated condition together with the offending triple `i < j < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub triple: (usize, usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(f, "condition {} fails at ({i}, {j}, {k})", self.condition)
    }
}

/// A total map from strict pairs of a finite ordered domain to [`Trit`],
/// not yet known to satisfy the closure conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TritTable {
    domain: Vec<usize>,
    // Upper triangle, row-major over domain positions.
    entries: Vec<Trit>,
}

fn pair_slot(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

impl TritTable {
    /// The all-UNDEF table.
    pub fn undefined(domain: Vec<usize>) -> Result<Self, CalculusError> {
        if domain.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CalculusError::UnorderedDomain(domain));
        }
        let n = domain.len();
        Ok(Self {
            domain,
            entries: vec![Trit::Undef; n * n.saturating_sub(1) / 2],
        })
    }

    /// Builds a table that must give a value for every strict pair.
    pub fn new(
        domain: Vec<usize>,
        values: &BTreeMap<(usize, usize), Trit>,
    ) -> Result<Self, CalculusError> {
        let mut table = Self::undefined(domain)?;
        for &(i, j) in values.keys() {
            table.slot(i, j)?;
        }
        let n = table.domain.len();
        for a in 0..n {
            for b in a + 1..n {
                let (i, j) = (table.domain[a], table.domain[b]);
                let t = values
                    .get(&(i, j))
                    .ok_or(CalculusError::PartialTable { i, j })?;
                table.entries[pair_slot(n, a, b)] = *t;
            }
        }
        Ok(table)
    }

    /// Builds a table, treating unlisted pairs as UNDEF.
    pub fn with_default_undef(
        domain: Vec<usize>,
        values: impl IntoIterator<Item = ((usize, usize), Trit)>,
    ) -> Result<Self, CalculusError> {
        let mut table = Self::undefined(domain)?;
        for ((i, j), t) in values {
            table.set(i, j, t)?;
        }
        Ok(table)
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    fn position(&self, i: usize) -> Result<usize, CalculusError> {
        self.domain
            .binary_search(&i)
            .map_err(|_| CalculusError::IndexOutsideDomain(i))
    }

    fn slot(&self, i: usize, j: usize) -> Result<usize, CalculusError> {
        if i >= j {
            return Err(CalculusError::NotStrictPair { i, j });
        }
        let (a, b) = (self.position(i)?, self.position(j)?);
        Ok(pair_slot(self.domain.len(), a, b))
    }

    /// The value on `(i, j)` with `i < j`.
    pub fn get(&self, i: usize, j: usize) -> Result<Trit, CalculusError> {
        Ok(self.entries[self.slot(i, j)?])
    }

    pub fn set(&mut self, i: usize, j: usize, t: Trit) -> Result<(), CalculusError> {
        let s = self.slot(i, j)?;
        self.entries[s] = t;
        Ok(())
    }

    fn at(&self, a: usize, b: usize) -> Trit {
        self.entries[pair_slot(self.domain.len(), a, b)]
    }

    /// All `(i, j, value)` with `i < j`, in lexicographic pair order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Trit)> + '_ {
        let n = self.domain.len();
        (0..n).flat_map(move |a| {
            (a + 1..n).map(move |b| (self.domain[a], self.domain[b], self.at(a, b)))
        })
    }

    /// First violated condition in lexicographic triple order.
    pub fn check(&self) -> Result<(), Violation> {
        use Trit::*;
        let n = self.domain.len();
        for a in 0..n {
            for b in a + 1..n {
                let ab = self.at(a, b);
                for c in b + 1..n {
                    let (ac, bc) = (self.at(a, c), self.at(b, c));
                    let condition = if ab == Geq && bc == Geq && ac != Geq {
                        Some(Condition::GeqTransitive)
                    } else if matches!((ab, ac), (Perp, Geq) | (Geq, Perp)) && bc != Perp {
                        Some(Condition::PerpFromCommonBound)
                    } else if ab == Perp && bc == Geq && ac != Perp {
                        Some(Condition::PerpInherited)
                    } else {
                        None
                    };
                    if let Some(condition) = condition {
                        return Err(Violation {
                            condition,
                            triple: (self.domain[a], self.domain[b], self.domain[c]),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Whether a total table satisfies conditions (1), (2a) and (2b).
pub fn is_valuation(table: &TritTable) -> bool {
    table.check().is_ok()
}

/// A [`TritTable`] known to satisfy the closure conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValuationFunction(TritTable);

impl ValuationFunction {
    pub fn new(table: TritTable) -> Result<Self, CalculusError> {
        table.check().map_err(CalculusError::NotAValuation)?;
        Ok(Self(table))
    }

    pub fn undefined(domain: Vec<usize>) -> Result<Self, CalculusError> {
        TritTable::undefined(domain).map(Self)
    }

    pub(crate) fn new_unchecked(table: TritTable) -> Self {
        debug_assert!(table.check().is_ok());
        Self(table)
    }

    pub fn table(&self) -> &TritTable {
        &self.0
    }

    pub fn into_table(self) -> TritTable {
        self.0
    }

    pub fn domain(&self) -> &[usize] {
        self.0.domain()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.domain.binary_search(&i).is_ok()
    }

    pub fn get(&self, i: usize, j: usize) -> Result<Trit, CalculusError> {
        self.0.get(i, j)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Trit)> + '_ {
        self.0.entries()
    }

    /// The GEQ and PERP entries as atomic relations; reflexive facts are
    /// never included.
    pub fn rel(&self) -> RelationSet {
        self.entries()
            .filter_map(|(i, j, t)| match t {
                Trit::Geq => Some(AtomicRelation::geq(i, j)),
                Trit::Perp => Some(AtomicRelation::perp(i, j)),
                Trit::Undef => None,
            })
            .collect()
    }

    /// Restriction to a subset of the domain.
    pub fn restrict(&self, subdomain: &[usize]) -> Result<Self, CalculusError> {
        let mut table = TritTable::undefined(subdomain.to_vec())?;
        for (a, &i) in subdomain.iter().enumerate() {
            for &j in &subdomain[a + 1..] {
                table.set(i, j, self.get(i, j)?)?;
            }
        }
        Ok(Self(table))
    }

    /// The presentation of `A(p)`: forbid `x_j · x_i` for PERP entries and
    /// `x_j · −x_i` for GEQ entries.
    pub fn presentation(&self) -> Presentation {
        let forbidden = self.entries().filter_map(|(i, j, t)| {
            let lits = match t {
                Trit::Perp => [(i, true), (j, true)],
                Trit::Geq => [(i, false), (j, true)],
                Trit::Undef => return None,
            };
            Some(ElementaryConstraint::new(lits).expect("nonempty"))
        });
        Presentation::new(self.domain().to_vec(), forbidden).expect("domain is ordered and capped")
    }

    /// The algebra `A(p)` with its canonical generators.
    pub fn algebra(&self) -> Result<Algebra, CalculusError> {
        if self.domain().len() > crate::algebra::MAX_GENERATORS {
            return Err(AlgebraError::TooManyGenerators {
                count: self.domain().len(),
            }
            .into());
        }
        Ok(Algebra::new(self.presentation()))
    }
}

/// The presentation of `A(p)`, checking validity of a raw table first.
pub fn algebra_of(table: &TritTable) -> Result<Presentation, CalculusError> {
    table.check().map_err(CalculusError::NotAValuation)?;
    Ok(ValuationFunction::new_unchecked(table.clone()).presentation())
}

/// The valuation function a family of nonzero elements induces:
/// GEQ where `x_i >= x_j`, PERP where `x_i · x_j = 0`, UNDEF otherwise.
pub fn induced_valuation(
    algebra: &Algebra,
    family: &[(usize, Element)],
) -> Result<ValuationFunction, CalculusError> {
    let domain: Vec<usize> = family.iter().map(|(i, _)| *i).collect();
    let mut table = TritTable::undefined(domain)?;
    for (i, x) in family {
        if x.algebra() != algebra {
            return Err(AlgebraError::MixedAlgebras.into());
        }
        if x.is_zero() {
            return Err(CalculusError::ZeroMember(*i));
        }
    }
    for (a, (i, xi)) in family.iter().enumerate() {
        for (j, xj) in &family[a + 1..] {
            let t = if xj.leq(xi) {
                Trit::Geq
            } else if xi.disjoint(xj) {
                Trit::Perp
            } else {
                Trit::Undef
            };
            table.set(*i, *j, t)?;
        }
    }
    ValuationFunction::new(table)
        .map_err(|e| CalculusError::Internal(format!("induced table: {e}")))
}

impl fmt::Display for TritTable {
    /// `dom:` header followed by every strict pair, UNDEF included.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dom:")?;
        for i in &self.domain {
            write!(f, " {i}")?;
        }
        writeln!(f)?;
        for (i, j, t) in self.entries() {
            writeln!(f, "{i} {j} {t}")?;
        }
        Ok(())
    }
}

impl fmt::Display for ValuationFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Trit::*;

    fn table(n: usize, vals: &[((usize, usize), Trit)]) -> TritTable {
        TritTable::with_default_undef((0..n).collect(), vals.iter().copied()).unwrap()
    }

    #[test]
    fn all_undef_is_valid() {
        assert!(is_valuation(
            &TritTable::undefined((0..6).collect()).unwrap()
        ));
    }

    #[test]
    fn missing_transitive_geq_is_invalid() {
        let t = table(3, &[((0, 1), Geq), ((1, 2), Geq)]);
        assert_eq!(
            t.check(),
            Err(Violation {
                condition: Condition::GeqTransitive,
                triple: (0, 1, 2)
            })
        );
    }

    #[test]
    fn inherited_perp_is_valid() {
        assert!(is_valuation(&table(
            3,
            &[((0, 1), Perp), ((1, 2), Geq), ((0, 2), Perp)]
        )));
        assert!(!is_valuation(&table(3, &[((0, 1), Perp), ((1, 2), Geq)])));
        // {p(0,1), p(0,2)} = {PERP, GEQ} forces p(1,2) = PERP
        assert!(!is_valuation(&table(3, &[((0, 1), Perp), ((0, 2), Geq)])));
        assert!(is_valuation(&table(
            3,
            &[((0, 1), Perp), ((0, 2), Geq), ((1, 2), Perp)]
        )));
    }

    #[test]
    fn partial_table_is_rejected() {
        let mut values = BTreeMap::new();
        values.insert((0, 1), Geq);
        assert_eq!(
            TritTable::new(vec![0, 1, 2], &values),
            Err(CalculusError::PartialTable { i: 0, j: 2 })
        );
    }

    #[test]
    fn rel_reads_the_table() {
        let p = ValuationFunction::undefined(vec![0, 1, 2]).unwrap();
        assert!(p.rel().is_empty());
        let p = ValuationFunction::new(table(2, &[((0, 1), Geq)])).unwrap();
        assert_eq!(p.rel(), RelationSet::from_iter([AtomicRelation::geq(0, 1)]));
        let p = ValuationFunction::new(table(3, &[((0, 1), Perp), ((0, 2), Geq), ((1, 2), Perp)]))
            .unwrap();
        assert_eq!(p.rel().len(), 3);
    }

    #[test]
    fn presentation_of_entries() {
        let p = ValuationFunction::undefined(vec![0, 1]).unwrap();
        assert!(p.presentation().forbidden().is_empty());
        let p = ValuationFunction::new(table(2, &[((0, 1), Geq)])).unwrap();
        assert_eq!(p.presentation().forbidden()[0].to_string(), "0=0 1=1");
        let p = ValuationFunction::new(table(2, &[((0, 1), Perp)])).unwrap();
        assert_eq!(p.presentation().forbidden()[0].to_string(), "0=1 1=1");
        assert!(algebra_of(&table(3, &[((0, 1), Geq), ((1, 2), Geq)])).is_err());
    }

    #[test]
    fn induced_valuation_examples() {
        let alg = Algebra::new(Presentation::free(vec![0, 1, 2]).unwrap());
        let atoms: Vec<_> = (0..3).map(|k| (k, alg.atom(k).unwrap())).collect();
        let p = induced_valuation(&alg, &atoms).unwrap();
        assert!(p.entries().all(|(_, _, t)| t == Perp));

        let a = alg.one();
        let b = alg.generator(0).unwrap();
        let c = b.meet(&alg.generator(1).unwrap());
        let p = induced_valuation(&alg, &[(0, a), (1, b), (2, c)]).unwrap();
        assert!(p.entries().all(|(_, _, t)| t == Geq));

        assert_eq!(
            induced_valuation(&alg, &[(0, alg.zero())]),
            Err(CalculusError::ZeroMember(0))
        );
    }

    #[test]
    fn round_trip_small() {
        let p = ValuationFunction::new(table(3, &[((0, 1), Perp), ((0, 2), Geq), ((1, 2), Perp)]))
            .unwrap();
        let alg = p.algebra().unwrap();
        let family: Vec<_> = p
            .domain()
            .iter()
            .map(|&i| (i, alg.generator(i).unwrap()))
            .collect();
        assert_eq!(induced_valuation(&alg, &family).unwrap(), p);
    }

    #[test]
    fn restriction_stays_valid() {
        let p = ValuationFunction::new(table(3, &[((0, 1), Geq), ((1, 2), Geq), ((0, 2), Geq)]))
            .unwrap();
        let q = p.restrict(&[0, 2]).unwrap();
        assert_eq!(q.get(0, 2).unwrap(), Geq);
        assert!(p.restrict(&[0, 7]).is_err());
    }

    #[test]
    fn display_lists_every_pair() {
        let p = ValuationFunction::new(table(3, &[((0, 1), Geq)])).unwrap();
        assert_eq!(p.to_string(), "dom: 0 1 2\n0 1 GEQ\n0 2 UNDEF\n1 2 UNDEF\n");
    }
}
