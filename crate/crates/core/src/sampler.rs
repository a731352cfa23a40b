//! Finite simulation of a generic valuation function.
//!
//! A [`GenericSession`] grows one condition by meeting scheduled dense sets:
//! putting an index into the domain, or adding a witness `x_{i*} ≤ y` in a
//! block `[α, α + μ)` for an elementary product `y` over indices below `α`.
//! Genericity is replaced by the schedule, and a block of size `μ` can serve
//! at most `μ` witnesses.

use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, Element, ElementaryConstraint};
use crate::calculus::{
    canonical_extension, is_consistent, merge, AtomicRelation, CalculusError, Closure, Trit,
    TritTable, ValuationFunction,
};

pub const MAX_LAMBDA: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplerError {
    #[error("block size {mu} must be positive and divide lambda = {lambda} <= {MAX_LAMBDA}")]
    BadParameters { lambda: usize, mu: usize },
    #[error("index {index} is not below lambda = {lambda}")]
    IndexOutOfRange { index: usize, lambda: usize },
    #[error("{alpha} is not a block boundary")]
    NotBlockBoundary { alpha: usize },
    #[error("constraint index {index} is not below {alpha} in the current domain")]
    OutsideDomain { index: usize, alpha: usize },
    #[error("block starting at {alpha} has no free index")]
    Capacity { alpha: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("augmented relation set is inconsistent: {0}")]
    ClaimViolated(String),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

/// A dense set of conditions to meet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DenseRequest {
    /// Conditions with `i` in their domain.
    DomainPoint(usize),
    /// Conditions forcing `x_{i*} ≤ y` for some `i*` in the block starting at
    /// `alpha`, where `y` is the elementary product of `e`.
    DensityBelow {
        alpha: usize,
        e: ElementaryConstraint,
    },
}

impl fmt::Display for DenseRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DenseRequest::DomainPoint(i) => write!(f, "dom {i}"),
            DenseRequest::DensityBelow { alpha, e } => write!(f, "dense {alpha} {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    /// Met; for density requests, the witness index.
    Met {
        witness: Option<usize>,
    },
    /// `y` is already zero, so nothing can be forced below it.
    Trivial,
    Failed(SamplerError),
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resolution::Met { witness: Some(i) } => write!(f, "met (witness {i})"),
            Resolution::Met { witness: None } => write!(f, "met"),
            Resolution::Trivial => write!(f, "trivial (product is zero)"),
            Resolution::Failed(e) => write!(f, "failed: {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogEntry {
    pub request: DenseRequest,
    pub resolution: Resolution,
}

#[derive(Debug, Clone)]
pub struct GenericSession {
    lambda: usize,
    mu: usize,
    current: ValuationFunction,
    log: Vec<LogEntry>,
    seed: u64,
}

/// Elementary product of `e` in `algebra`.
pub fn product_of(algebra: &Algebra, e: &ElementaryConstraint) -> Result<Element, SamplerError> {
    Ok(algebra.elementary_product(e).map_err(CalculusError::from)?)
}

impl GenericSession {
    /// An empty condition. The seed is recorded for replay; witness choice
    /// is deterministic (least free index).
    pub fn new(lambda: usize, mu: usize, seed: u64) -> Result<Self, SamplerError> {
        if mu == 0 || lambda == 0 || !lambda.is_multiple_of(mu) || lambda > MAX_LAMBDA {
            return Err(SamplerError::BadParameters { lambda, mu });
        }
        Ok(Self {
            lambda,
            mu,
            current: ValuationFunction::undefined(Vec::new())?,
            log: Vec::new(),
            seed,
        })
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn current(&self) -> &ValuationFunction {
        &self.current
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    pub fn block_count(&self) -> usize {
        self.lambda / self.mu
    }

    /// Indices of each block already in the domain.
    pub fn block_usage(&self) -> Vec<usize> {
        let mut usage = vec![0; self.block_count()];
        for &i in self.current.domain() {
            usage[i / self.mu] += 1;
        }
        usage
    }

    /// Meets `request`, logging the outcome. Errors leave the condition
    /// unchanged.
    pub fn meet(&mut self, request: DenseRequest) -> Result<Resolution, SamplerError> {
        let outcome = match &request {
            DenseRequest::DomainPoint(i) => self.meet_domain(*i),
            DenseRequest::DensityBelow { alpha, e } => self.meet_density(*alpha, e),
        };
        let resolution = match &outcome {
            Ok(r) => r.clone(),
            Err(e) => Resolution::Failed(e.clone()),
        };
        self.log.push(LogEntry {
            request,
            resolution,
        });
        outcome
    }

    fn meet_domain(&mut self, i: usize) -> Result<Resolution, SamplerError> {
        if i >= self.lambda {
            return Err(SamplerError::IndexOutOfRange {
                index: i,
                lambda: self.lambda,
            });
        }
        if !self.current.contains(i) {
            let mut dom = self.current.domain().to_vec();
            dom.push(i);
            dom.sort_unstable();
            self.current = canonical_extension(&self.current.rel(), &dom)?;
        }
        Ok(Resolution::Met { witness: None })
    }

    fn meet_density(
        &mut self,
        alpha: usize,
        e: &ElementaryConstraint,
    ) -> Result<Resolution, SamplerError> {
        if alpha >= self.lambda || !alpha.is_multiple_of(self.mu) {
            return Err(SamplerError::NotBlockBoundary { alpha });
        }
        let a: Vec<usize> = e.indices().collect();
        if let Some(&index) = a.iter().find(|&&i| i >= alpha || !self.current.contains(i)) {
            return Err(SamplerError::OutsideDomain { index, alpha });
        }
        let restricted = self.current.restrict(&a)?;
        if product_of(&restricted.algebra()?, e)?.is_zero() {
            return Ok(Resolution::Trivial);
        }
        let i_star = (alpha..alpha + self.mu)
            .find(|&i| !self.current.contains(i))
            .ok_or(SamplerError::Capacity { alpha })?;

        let mut s_dom = a.clone();
        s_dom.push(i_star);
        let mut s = TritTable::undefined(s_dom)?;
        for (i, j, t) in restricted.entries() {
            s.set(i, j, t)?;
        }
        for (i, positive) in e.literals() {
            s.set(i, i_star, if positive { Trit::Geq } else { Trit::Perp })?;
        }
        let s = ValuationFunction::new(s).map_err(|err| {
            CalculusError::Internal(format!(
                "witness condition is not a valuation function: {err}"
            ))
        })?;
        let next = merge(&self.current, &s)?;

        let mut check_dom = a;
        check_dom.push(i_star);
        check_dom.sort_unstable();
        let local = next.restrict(&check_dom)?.algebra()?;
        let y = product_of(&local, e)?;
        let x = local.generator(i_star).map_err(CalculusError::from)?;
        if x.is_zero() || !x.leq(&y) {
            return Err(CalculusError::Internal(format!(
                "witness x_{i_star} is not a nonzero element below the product"
            ))
            .into());
        }
        self.current = next;
        Ok(Resolution::Met {
            witness: Some(i_star),
        })
    }

    /// Meets every request in order, continuing past failures.
    pub fn run_schedule(
        &mut self,
        requests: impl IntoIterator<Item = DenseRequest>,
    ) -> (ValuationFunction, ScheduleReport) {
        let start = self.log.len();
        for r in requests {
            let _ = self.meet(r);
        }
        (
            self.current.clone(),
            ScheduleReport {
                entries: self.log[start..].to_vec(),
            },
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScheduleReport {
    pub entries: Vec<LogEntry>,
}

impl ScheduleReport {
    pub fn met(&self) -> usize {
        self.count(|r| matches!(r, Resolution::Met { .. }))
    }

    pub fn trivial(&self) -> usize {
        self.count(|r| matches!(r, Resolution::Trivial))
    }

    pub fn failed(&self) -> usize {
        self.count(|r| matches!(r, Resolution::Failed(_)))
    }

    fn count(&self, pred: impl Fn(&Resolution) -> bool) -> usize {
        self.entries.iter().filter(|e| pred(&e.resolution)).count()
    }

    /// `(alpha, e, witness)` for every met density request.
    pub fn witnesses(&self) -> impl Iterator<Item = (usize, &ElementaryConstraint, usize)> {
        self.entries
            .iter()
            .filter_map(|entry| match (&entry.request, &entry.resolution) {
                (DenseRequest::DensityBelow { alpha, e }, Resolution::Met { witness: Some(w) }) => {
                    Some((*alpha, e, *w))
                }
                _ => None,
            })
    }
}

impl fmt::Display for ScheduleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for entry in &self.entries {
            writeln!(f, "{}: {}", entry.request, entry.resolution)?;
        }
        write!(
            f,
            "met={} trivial={} failed={}",
            self.met(),
            self.trivial(),
            self.failed()
        )
    }
}

/// Adds `x_beta ⊥ x_alpha` on top of two compatible conditions whose
/// supports are arranged around `alpha* < alpha < beta`:
/// `alpha ∈ dom p`, `beta ∈ dom q`, `dom p ⊆ [0, beta)`, and both
/// `dom p ∩ [0, alpha)` and `dom q ∩ [0, beta)` lie below `alpha*`.
///
/// Returns the canonical extension of `rel p ∪ rel q ∪ {x_beta ⊥ x_alpha}`
/// over `dom p ∪ dom q`.
pub fn add_disjointness(
    p: &ValuationFunction,
    q: &ValuationFunction,
    alpha: usize,
    beta: usize,
    alpha_star: usize,
) -> Result<ValuationFunction, SamplerError> {
    let fail = |msg: String| Err(SamplerError::Precondition(msg));
    if !(alpha_star < alpha && alpha < beta) {
        return fail(format!(
            "need alpha* < alpha < beta, got {alpha_star}, {alpha}, {beta}"
        ));
    }
    if !p.contains(alpha) {
        return fail(format!("alpha = {alpha} is not in dom p"));
    }
    if !q.contains(beta) {
        return fail(format!("beta = {beta} is not in dom q"));
    }
    if let Some(&i) = p.domain().iter().find(|&&i| i >= beta) {
        return fail(format!("dom p contains {i} >= beta"));
    }
    if let Some(&i) = p.domain().iter().find(|&&i| i < alpha && i >= alpha_star) {
        return fail(format!("dom p contains {i} in [alpha*, alpha)"));
    }
    if let Some(&i) = q.domain().iter().find(|&&i| i < beta && i >= alpha_star) {
        return fail(format!("dom q contains {i} in [alpha*, beta)"));
    }
    let common: Vec<usize> = p
        .domain()
        .iter()
        .copied()
        .filter(|&i| q.contains(i))
        .collect();
    for (x, &i) in common.iter().enumerate() {
        for &j in &common[x + 1..] {
            let (l, r) = (p.get(i, j)?, q.get(i, j)?);
            if l != r {
                return fail(format!("p and q disagree on ({i}, {j}): {l} vs {r}"));
            }
        }
    }
    let mut r = p.rel().union(&q.rel());
    r.insert(AtomicRelation::perp(alpha, beta));
    if !is_consistent(&r) {
        let why = Closure::of(&r)
            .inconsistency()
            .map(|i| i.to_string())
            .unwrap_or_default();
        return Err(SamplerError::ClaimViolated(why));
    }
    let mut dom: Vec<usize> = p.domain().iter().chain(q.domain()).copied().collect();
    dom.sort_unstable();
    dom.dedup();
    Ok(canonical_extension(&r, &dom)?)
}
