//! Finite truncation of the tree construction of elements `b_i` in a free
//! algebra, with the ideal-independence check and the two auxiliary lemmas
//! on homomorphisms and quantifier-free types.
//!
//! Sums over `n ∈ ω` are cut at the tree depth `N`; statements carry the
//! remainder `∏_{n<N} −s_{in}` explicitly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element};

/// Largest support handled by truth-table evaluation.
pub const MAX_SUPPORT: usize = 24;
pub const MAX_DEPTH: usize = 4;
/// Largest source algebra for exhaustive homomorphism checks.
pub const MAX_HOM_CHECK_ATOMS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremBError {
    #[error("support of {0} variables exceeds {MAX_SUPPORT}")]
    SupportTooLarge(usize),
    #[error("depth {0} must be between 1 and {MAX_DEPTH}")]
    BadDepth(usize),
    #[error("expected {depth} level widths, got {got}")]
    WidthCount { depth: usize, got: usize },
    #[error("level widths must be positive")]
    ZeroWidth,
    #[error("branch {0} does not fit the level widths")]
    BadBranch(usize),
    #[error("branches {0} and {1} coincide")]
    DuplicateBranch(usize, usize),
    #[error("no branch {0}")]
    UnknownBranch(usize),
    #[error("branch {0} is in J")]
    SelfInJ(usize),
    #[error("level {n}: branch {i} agrees with branch {j} below n")]
    NoDivergence { i: usize, j: usize, n: usize },
    #[error("not a partition of unity in the {0}")]
    NotPartition(&'static str),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A Boolean function of finitely many free generators, on its minimal
/// support. Bit `r` of a table index is the value of `support[r]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeElement {
    support: Vec<u32>,
    table: FixedBitSet,
}

impl FreeElement {
    pub fn constant(value: bool) -> Self {
        let mut table = FixedBitSet::with_capacity(1);
        table.set(0, value);
        Self {
            support: Vec::new(),
            table,
        }
    }

    pub fn var(v: u32) -> Self {
        let mut table = FixedBitSet::with_capacity(2);
        table.insert(1);
        Self {
            support: vec![v],
            table,
        }
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn eval(&self, value: impl Fn(u32) -> bool) -> bool {
        let code = self
            .support
            .iter()
            .enumerate()
            .filter(|&(_, &v)| value(v))
            .fold(0usize, |c, (r, _)| c | 1 << r);
        self.table.contains(code)
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_clear()
    }

    pub fn is_one(&self) -> bool {
        self.table.count_ones(..) == self.table.len()
    }

    pub fn not(&self) -> Self {
        let mut table = self.table.clone();
        table.toggle_range(..);
        Self {
            support: self.support.clone(),
            table,
        }
    }

    fn combine(
        &self,
        other: &Self,
        op: impl Fn(bool, bool) -> bool,
    ) -> Result<Self, TheoremBError> {
        let support: Vec<u32> = self
            .support
            .iter()
            .chain(&other.support)
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if support.len() > MAX_SUPPORT {
            return Err(TheoremBError::SupportTooLarge(support.len()));
        }
        let bits = |own: &[u32]| -> Vec<usize> {
            own.iter()
                .map(|v| support.binary_search(v).expect("in union"))
                .collect()
        };
        let (pa, pb) = (bits(&self.support), bits(&other.support));
        let project = |code: usize, pos: &[usize]| {
            pos.iter()
                .enumerate()
                .fold(0usize, |c, (r, &p)| c | (code >> p & 1) << r)
        };
        let mut table = FixedBitSet::with_capacity(1 << support.len());
        for code in 0..1usize << support.len() {
            let a = self.table.contains(project(code, &pa));
            let b = other.table.contains(project(code, &pb));
            table.set(code, op(a, b));
        }
        Ok(Self { support, table }.minimized())
    }

    pub fn and(&self, other: &Self) -> Result<Self, TheoremBError> {
        self.combine(other, |a, b| a && b)
    }

    pub fn or(&self, other: &Self) -> Result<Self, TheoremBError> {
        self.combine(other, |a, b| a || b)
    }

    pub fn leq(&self, other: &Self) -> Result<bool, TheoremBError> {
        Ok(self.combine(other, |a, b| a && !b)?.is_zero())
    }

    pub fn disjoint(&self, other: &Self) -> Result<bool, TheoremBError> {
        Ok(self.and(other)?.is_zero())
    }

    /// Drops variables the function does not depend on.
    fn minimized(mut self) -> Self {
        let mut r = 0;
        while r < self.support.len() {
            let n = self.table.len();
            let depends = (0..n).any(|c| {
                c >> r & 1 == 0 && self.table.contains(c) != self.table.contains(c | 1 << r)
            });
            if depends {
                r += 1;
                continue;
            }
            let mut table = FixedBitSet::with_capacity(n / 2);
            for c in 0..n / 2 {
                let low = c & ((1 << r) - 1);
                let high = (c >> r) << (r + 1);
                table.set(c, self.table.contains(high | low));
            }
            self.table = table;
            self.support.remove(r);
        }
        self
    }

    /// The least satisfying assignment of the support, if any.
    pub fn satisfying_assignment(&self) -> Option<BTreeMap<u32, bool>> {
        let code = self.table.ones().next()?;
        Some(
            self.support
                .iter()
                .enumerate()
                .map(|(r, &v)| (v, code >> r & 1 == 1))
                .collect(),
        )
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.is_one() {
            return f.write_str("1");
        }
        let vars: Vec<String> = self.support.iter().map(|v| format!("u{v}")).collect();
        write!(
            f,
            "f({}) with {} of {} rows true",
            vars.join(","),
            self.table.count_ones(..),
            self.table.len()
        )
    }
}

/// Tree shape and branches `f_i ∈ μ_0 × ... × μ_{N−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeParams {
    pub depth: usize,
    pub widths: Vec<usize>,
    pub branches: Vec<Vec<usize>>,
}

impl TreeParams {
    pub fn validate(&self) -> Result<(), TheoremBError> {
        if self.depth == 0 || self.depth > MAX_DEPTH {
            return Err(TheoremBError::BadDepth(self.depth));
        }
        if self.widths.len() != self.depth {
            return Err(TheoremBError::WidthCount {
                depth: self.depth,
                got: self.widths.len(),
            });
        }
        if self.widths.contains(&0) {
            return Err(TheoremBError::ZeroWidth);
        }
        for (i, f) in self.branches.iter().enumerate() {
            if f.len() != self.depth || f.iter().zip(&self.widths).any(|(&v, &w)| v >= w) {
                return Err(TheoremBError::BadBranch(i));
            }
            if let Some(j) = self.branches[..i].iter().position(|g| g == f) {
                return Err(TheoremBError::DuplicateBranch(j, i));
            }
        }
        Ok(())
    }

    /// `f_i↾n`.
    pub fn node(&self, i: usize, n: usize) -> &[usize] {
        &self.branches[i][..n]
    }
}

/// Generators chosen for branch `i` at level `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Choice {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePools {
    pub x: Vec<u32>,
    pub z: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct BConstruction {
    params: TreeParams,
    pools: BTreeMap<Vec<usize>, NodePools>,
    choices: Vec<Vec<Choice>>,
    s: Vec<Vec<FreeElement>>,
    d: Vec<Vec<FreeElement>>,
    b: Vec<FreeElement>,
}

/// Allocates disjoint pools for the nodes `f_i↾n`, `n < N`: one `z` per
/// node and a separate `(x, y)` pair for every branch through the node, and
/// builds `s_{in} = x_{in} + −y_{in}`, `d_{in} = s_{in} · ∏_{m<n} −s_{im}`
/// and `b_i = Σ_{n<N} z_{in} · d_{in}`. The seed permutes each `X_t` before
/// pairs are handed out.
pub fn build_construction(params: TreeParams, seed: u64) -> Result<BConstruction, TheoremBError> {
    params.validate()?;
    let mut through: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for i in 0..params.branches.len() {
        for n in 0..params.depth {
            through
                .entry(params.node(i, n).to_vec())
                .or_default()
                .push(i);
        }
    }
    let total: usize = through.values().map(|bs| 2 * bs.len() + 1).sum();
    if total > MAX_SUPPORT {
        return Err(TheoremBError::SupportTooLarge(total));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next = 0u32;
    let mut pools = BTreeMap::new();
    let mut pair_of: BTreeMap<(Vec<usize>, usize), (u32, u32)> = BTreeMap::new();
    for (node, branches) in &through {
        let mut x: Vec<u32> = (next..next + 2 * branches.len() as u32).collect();
        next += x.len() as u32;
        let z = vec![next];
        next += 1;
        let mut shuffled = x.clone();
        shuffled.shuffle(&mut rng);
        for (k, &i) in branches.iter().enumerate() {
            pair_of.insert((node.clone(), i), (shuffled[2 * k], shuffled[2 * k + 1]));
        }
        x.sort_unstable();
        pools.insert(node.clone(), NodePools { x, z });
    }
    let mut choices = Vec::new();
    let mut s = Vec::new();
    let mut d = Vec::new();
    let mut b = Vec::new();
    for i in 0..params.branches.len() {
        let mut ci = Vec::new();
        let mut si: Vec<FreeElement> = Vec::new();
        let mut di = Vec::new();
        let mut bi = FreeElement::constant(false);
        let mut none_before = FreeElement::constant(true);
        for n in 0..params.depth {
            let node = params.node(i, n).to_vec();
            let (x, y) = pair_of[&(node.clone(), i)];
            let z = pools[&node].z[0];
            ci.push(Choice { x, y, z });
            let s_in = FreeElement::var(x).or(&FreeElement::var(y).not())?;
            let d_in = s_in.and(&none_before)?;
            bi = bi.or(&FreeElement::var(z).and(&d_in)?)?;
            none_before = none_before.and(&s_in.not())?;
            si.push(s_in);
            di.push(d_in);
        }
        choices.push(ci);
        s.push(si);
        d.push(di);
        b.push(bi);
    }
    Ok(BConstruction {
        params,
        pools,
        choices,
        s,
        d,
        b,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub pairwise_disjoint: bool,
    pub all_nonzero: bool,
    /// `Σ_n d_{in} = 1 − ∏_n −s_{in}`.
    pub sum_matches: bool,
    pub remainder: FreeElement,
    /// Supports of the `s_{in}` are pairwise disjoint.
    pub supports_disjoint: bool,
}

impl PartitionReport {
    pub fn holds(&self) -> bool {
        self.pairwise_disjoint && self.all_nonzero && self.sum_matches && self.supports_disjoint
    }
}

impl fmt::Display for PartitionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairwise_disjoint={} nonzero={} sum_matches={} supports_disjoint={} remainder_nonzero={}",
            self.pairwise_disjoint,
            self.all_nonzero,
            self.sum_matches,
            self.supports_disjoint,
            !self.remainder.is_zero()
        )
    }
}

/// A satisfying assignment of `b_i · −Σ_{j∈J} b_j`, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub i: usize,
    pub j: Vec<usize>,
    pub witness: Option<BTreeMap<u32, bool>>,
}

impl IndependenceReport {
    pub fn holds(&self) -> bool {
        self.witness.is_some()
    }
}

impl fmt::Display for IndependenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j: Vec<String> = self.j.iter().map(|j| j.to_string()).collect();
        write!(
            f,
            "b_{} <= sum of b_j for j in {{{}}}: ",
            self.i,
            j.join(",")
        )?;
        match &self.witness {
            None => write!(f, "yes (not independent)"),
            Some(w) => {
                let ones: Vec<String> = w
                    .iter()
                    .filter(|e| *e.1)
                    .map(|(v, _)| format!("u{v}"))
                    .collect();
                write!(
                    f,
                    "no, witness sets {{{}}} true, all else false",
                    ones.join(",")
                )
            }
        }
    }
}

/// The finite form of the ideal-independence argument at level `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivergenceWitness {
    pub n: usize,
    /// `m(j)` for each `j ∈ J`, in the order of `J`.
    pub m: Vec<usize>,
    pub p: FreeElement,
    pub bi_p_below_zin: bool,
    pub bj_p_below_zjm: bool,
    pub z_distinct: bool,
}

impl DivergenceWitness {
    pub fn holds(&self) -> bool {
        !self.p.is_zero() && self.bi_p_below_zin && self.bj_p_below_zjm && self.z_distinct
    }
}

impl BConstruction {
    pub fn params(&self) -> &TreeParams {
        &self.params
    }

    pub fn pools(&self) -> &BTreeMap<Vec<usize>, NodePools> {
        &self.pools
    }

    pub fn choice(&self, i: usize, n: usize) -> Choice {
        self.choices[i][n]
    }

    pub fn s(&self, i: usize, n: usize) -> &FreeElement {
        &self.s[i][n]
    }

    pub fn d(&self, i: usize, n: usize) -> &FreeElement {
        &self.d[i][n]
    }

    pub fn b(&self, i: usize) -> &FreeElement {
        &self.b[i]
    }

    pub fn branch_count(&self) -> usize {
        self.b.len()
    }

    fn check_branch(&self, i: usize) -> Result<(), TheoremBError> {
        if i < self.b.len() {
            Ok(())
        } else {
            Err(TheoremBError::UnknownBranch(i))
        }
    }

    pub fn check_partition(&self, i: usize) -> Result<PartitionReport, TheoremBError> {
        self.check_branch(i)?;
        let depth = self.params.depth;
        let d = &self.d[i];
        let mut pairwise_disjoint = true;
        for n in 0..depth {
            for m in n + 1..depth {
                pairwise_disjoint &= d[n].disjoint(&d[m])?;
            }
        }
        let all_nonzero = d.iter().all(|x| !x.is_zero());
        let mut sum = FreeElement::constant(false);
        let mut remainder = FreeElement::constant(true);
        for n in 0..depth {
            sum = sum.or(&d[n])?;
            remainder = remainder.and(&self.s[i][n].not())?;
        }
        let sum_matches = sum == remainder.not();
        let mut seen = BTreeSet::new();
        let supports_disjoint = self.s[i]
            .iter()
            .all(|s| s.support().iter().all(|&v| seen.insert(v)));
        Ok(PartitionReport {
            pairwise_disjoint,
            all_nonzero,
            sum_matches,
            remainder,
            supports_disjoint,
        })
    }

    fn check_family(&self, i: usize, js: &[usize]) -> Result<(), TheoremBError> {
        self.check_branch(i)?;
        for &j in js {
            self.check_branch(j)?;
            if j == i {
                return Err(TheoremBError::SelfInJ(i));
            }
        }
        Ok(())
    }

    /// Searches the union support for an assignment with `b_i` true and
    /// every `b_j`, `j ∈ J`, false.
    pub fn check_ideal_independence(
        &self,
        i: usize,
        js: &[usize],
    ) -> Result<IndependenceReport, TheoremBError> {
        self.check_family(i, js)?;
        let vars: Vec<u32> = std::iter::once(i)
            .chain(js.iter().copied())
            .flat_map(|k| self.b[k].support().to_vec())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if vars.len() > MAX_SUPPORT {
            return Err(TheoremBError::SupportTooLarge(vars.len()));
        }
        let witness = (0..1u64 << vars.len()).find_map(|code| {
            let assignment: BTreeMap<u32, bool> = vars
                .iter()
                .enumerate()
                .map(|(r, &v)| (v, code >> r & 1 == 1))
                .collect();
            self.separates(i, js, &assignment).then_some(assignment)
        });
        Ok(IndependenceReport {
            i,
            j: js.to_vec(),
            witness,
        })
    }

    /// `b_i` true and all `b_j` false under `assignment`; unlisted
    /// generators count as false.
    pub fn separates(&self, i: usize, js: &[usize], assignment: &BTreeMap<u32, bool>) -> bool {
        let value = |v: u32| assignment.get(&v).copied().unwrap_or(false);
        self.b[i].eval(value) && js.iter().all(|&j| !self.b[j].eval(value))
    }

    /// For `n` with `f_i↾n ≠ f_j↾n` for all `j ∈ J`, finds the least `m`
    /// (lexicographically) with `p = d_{in} · ∏ d_{j m(j)}` nonzero and
    /// checks `b_i · p ≤ z_{in}`, `b_j · p ≤ z_{j m(j)}` and that `z_{in}`
    /// is none of the `z_{j m(j)}`.
    pub fn divergence_witness(
        &self,
        i: usize,
        js: &[usize],
        n: usize,
    ) -> Result<DivergenceWitness, TheoremBError> {
        self.check_family(i, js)?;
        let depth = self.params.depth;
        if n >= depth {
            return Err(TheoremBError::Mismatch(format!(
                "level {n} is not below depth {depth}"
            )));
        }
        if let Some(&j) = js
            .iter()
            .find(|&&j| self.params.node(i, n) == self.params.node(j, n))
        {
            return Err(TheoremBError::NoDivergence { i, j, n });
        }
        let total = depth.pow(js.len() as u32);
        let mut found = None;
        for code in 0..total {
            let m: Vec<usize> = (0..js.len())
                .map(|k| code / depth.pow((js.len() - 1 - k) as u32) % depth)
                .collect();
            let mut p = self.d[i][n].clone();
            for (&j, &mj) in js.iter().zip(&m) {
                p = p.and(&self.d[j][mj])?;
            }
            if !p.is_zero() {
                found = Some((m, p));
                break;
            }
        }
        let Some((m, p)) = found else {
            return Ok(DivergenceWitness {
                n,
                m: Vec::new(),
                p: FreeElement::constant(false),
                bi_p_below_zin: false,
                bj_p_below_zjm: false,
                z_distinct: false,
            });
        };
        let z_in = self.choices[i][n].z;
        let bi_p_below_zin = self.b[i].and(&p)?.leq(&FreeElement::var(z_in))?;
        let mut bj_p_below_zjm = true;
        let mut z_distinct = true;
        for (&j, &mj) in js.iter().zip(&m) {
            let z = self.choices[j][mj].z;
            bj_p_below_zjm &= self.b[j].and(&p)?.leq(&FreeElement::var(z))?;
            z_distinct &= z != z_in;
        }
        Ok(DivergenceWitness {
            n,
            m,
            p,
            bi_p_below_zin,
            bj_p_below_zjm,
            z_distinct,
        })
    }
}

/// A map between finite algebras given by the image of every source
/// element, indexed by atom mask.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: Algebra,
    target: Algebra,
    table: Vec<Element>,
}

impl Homomorphism {
    pub fn new(
        source: Algebra,
        target: Algebra,
        table: Vec<Element>,
    ) -> Result<Self, TheoremBError> {
        let n = source.atom_count();
        if n > MAX_HOM_CHECK_ATOMS || table.len() != 1 << n {
            return Err(TheoremBError::Mismatch(format!(
                "table of {} entries for a {n}-atom source",
                table.len()
            )));
        }
        if table.iter().any(|e| e.algebra() != &target) {
            return Err(TheoremBError::Algebra(AlgebraError::MixedAlgebras));
        }
        Ok(Self {
            source,
            target,
            table,
        })
    }

    /// The dual of a map `phi` from target atoms to source atoms:
    /// `h(c) = {u : phi(u) ∈ c}`.
    pub fn from_atom_map(
        source: &Algebra,
        target: &Algebra,
        phi: &[usize],
    ) -> Result<Self, TheoremBError> {
        if phi.len() != target.atom_count() || phi.iter().any(|&a| a >= source.atom_count()) {
            return Err(TheoremBError::Mismatch("atom map does not fit".into()));
        }
        let table = source
            .elements()?
            .map(|c| {
                target
                    .from_atom_indices((0..phi.len()).filter(|&u| c.atom_set().contains(phi[u])))
                    .expect("in range")
            })
            .collect();
        Self::new(source.clone(), target.clone(), table)
    }

    pub fn identity(algebra: &Algebra) -> Result<Self, TheoremBError> {
        let phi: Vec<usize> = (0..algebra.atom_count()).collect();
        Self::from_atom_map(algebra, algebra, &phi)
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn apply(&self, c: &Element) -> Element {
        self.table[c.mask() as usize].clone()
    }

    /// Exhaustive check of `0`, `1`, complements and meets.
    pub fn verify(&self) -> Result<(), TheoremBError> {
        let fail = |msg: String| Err(TheoremBError::NotHomomorphism(msg));
        if !self.apply(&self.source.zero()).is_zero() || !self.apply(&self.source.one()).is_one() {
            return fail("constants are not preserved".into());
        }
        let elements: Vec<Element> = self.source.elements()?.collect();
        for a in &elements {
            if self.apply(&!a) != !&self.apply(a) {
                return fail(format!("complement of {a}"));
            }
            for b in &elements {
                if self.apply(&(a & b)) != &self.apply(a) & &self.apply(b) {
                    return fail(format!("meet of {a} and {b}"));
                }
            }
        }
        Ok(())
    }
}

/// Pairwise disjoint with join `1`.
pub fn is_partition_of_unity(algebra: &Algebra, family: &[Element]) -> bool {
    let disjoint = family
        .iter()
        .enumerate()
        .all(|(k, a)| family[k + 1..].iter().all(|b| a.disjoint(b)));
    disjoint && algebra.sum(family).is_ok_and(|s| s.is_one())
}

/// With `{c_n}` and `{h(c_n)}` partitions of unity and `h` a homomorphism,
/// compares `h(Σ x_n · c_n)` with `Σ h(x_n · c_n)`.
pub fn check_partition_sum(
    h: &Homomorphism,
    partition: &[Element],
    xs: &[Element],
) -> Result<bool, TheoremBError> {
    if partition.len() != xs.len() {
        return Err(TheoremBError::Mismatch(format!(
            "{} partition members and {} coefficients",
            partition.len(),
            xs.len()
        )));
    }
    if !is_partition_of_unity(h.source(), partition) {
        return Err(TheoremBError::NotPartition("source"));
    }
    let images: Vec<Element> = partition.iter().map(|c| h.apply(c)).collect();
    if !is_partition_of_unity(h.target(), &images) {
        return Err(TheoremBError::NotPartition("target"));
    }
    h.verify()?;
    let terms: Vec<Element> = xs
        .iter()
        .zip(partition)
        .map(|(x, c)| x.try_meet(c))
        .collect::<Result<_, _>>()?;
    let lhs = h.apply(&h.source().sum(&terms)?);
    let rhs = h
        .target()
        .sum(&terms.iter().map(|t| h.apply(t)).collect::<Vec<_>>())?;
    Ok(lhs == rhs)
}

/// A subalgebra of a finite algebra, given by its atoms (blocks).
#[derive(Debug, Clone)]
pub struct Subalgebra {
    algebra: Algebra,
    blocks: Vec<Element>,
}

impl Subalgebra {
    pub fn generated_by(algebra: &Algebra, gens: &[Element]) -> Result<Self, TheoremBError> {
        Ok(Self {
            algebra: algebra.clone(),
            blocks: algebra.blocks(gens)?,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[Element] {
        &self.blocks
    }

    /// All members, as unions of blocks.
    pub fn elements(&self) -> Vec<Element> {
        (0..1u64 << self.blocks.len())
            .map(|code| {
                let chosen: Vec<&Element> = (0..self.blocks.len())
                    .filter(|k| code >> k & 1 == 1)
                    .map(|k| &self.blocks[k])
                    .collect();
                self.algebra.sum(chosen).expect("same algebra")
            })
            .collect()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.blocks.iter().all(|b| b.leq(x) || b.disjoint(x))
    }

    /// `I_C(x) = {c ∈ C : c · x = 0}` as atom masks.
    pub fn annihilator(&self, x: &Element) -> BTreeSet<u64> {
        self.elements()
            .into_iter()
            .filter(|c| c.disjoint(x))
            .map(|c| c.mask())
            .collect()
    }

    /// `x ~_C y`: equal annihilators of `x` and of `−x`.
    pub fn equivalent(&self, x: &Element, y: &Element) -> bool {
        self.annihilator(x) == self.annihilator(y) && self.annihilator(&!x) == self.annihilator(&!y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceOutcome {
    /// `x` and `y` are not equivalent over `C`.
    NotApplicable,
    Holds,
    /// A nonzero `c ∈ C` disjoint from `x + −y`.
    Counterexample(Element),
}

pub fn check_equivalent_pair(c: &Subalgebra, x: &Element, y: &Element) -> EquivalenceOutcome {
    if !c.equivalent(x, y) {
        return EquivalenceOutcome::NotApplicable;
    }
    let target = x | &!y;
    match c
        .elements()
        .into_iter()
        .find(|e| !e.is_zero() && e.disjoint(&target))
    {
        Some(e) => EquivalenceOutcome::Counterexample(e),
        None => EquivalenceOutcome::Holds,
    }
}
