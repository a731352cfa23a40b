//! Exact minimum set cover by branch and bound.
//!
//! Branches on the uncovered element with the fewest covering sets. The
//! upper bound starts from a greedy cover; the lower bound counts uncovered
//! elements whose covering sets are pairwise disjoint, since no single set
//! can cover two of them. Among minimum covers the lexicographically least
//! sorted index list is returned.

use fixedbitset::FixedBitSet;

/// A minimum cover: indices into the input family, increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub sets: Vec<usize>,
}

impl Cover {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

struct Search<'a> {
    sets: &'a [FixedBitSet],
    // covering[e]: indices of sets containing element e, increasing.
    covering: Vec<Vec<usize>>,
    best: Option<Vec<usize>>,
}

impl Search<'_> {
    fn lower_bound(&self, uncovered: &FixedBitSet) -> usize {
        let mut used = FixedBitSet::with_capacity(self.sets.len());
        let mut bound = 0;
        for e in uncovered.ones() {
            if self.covering[e].iter().all(|&s| !used.contains(s)) {
                bound += 1;
                for &s in &self.covering[e] {
                    used.insert(s);
                }
            }
        }
        bound
    }

    fn offer(&mut self, chosen: &[usize]) {
        let mut candidate = chosen.to_vec();
        candidate.sort_unstable();
        let better = match &self.best {
            None => true,
            Some(b) => candidate.len() < b.len() || (candidate.len() == b.len() && candidate < *b),
        };
        if better {
            self.best = Some(candidate);
        }
    }

    fn explore(&mut self, chosen: &mut Vec<usize>, uncovered: &FixedBitSet) {
        if uncovered.is_clear() {
            self.offer(chosen);
            return;
        }
        if let Some(best) = &self.best {
            if chosen.len() + self.lower_bound(uncovered) > best.len() {
                return;
            }
        }
        let pivot = uncovered
            .ones()
            .min_by_key(|&e| self.covering[e].len())
            .expect("nonempty");
        for k in 0..self.covering[pivot].len() {
            let s = self.covering[pivot][k];
            let mut rest = uncovered.clone();
            rest.difference_with(&self.sets[s]);
            chosen.push(s);
            self.explore(chosen, &rest);
            chosen.pop();
        }
    }
}

fn greedy(sets: &[FixedBitSet], universe: usize) -> Option<Vec<usize>> {
    let mut uncovered = FixedBitSet::with_capacity(universe);
    uncovered.insert_range(..);
    let mut chosen = Vec::new();
    while !uncovered.is_clear() {
        let (s, gain) = sets
            .iter()
            .enumerate()
            .map(|(s, set)| (s, set.intersection(&uncovered).count()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))?;
        if gain == 0 {
            return None;
        }
        uncovered.difference_with(&sets[s]);
        chosen.push(s);
    }
    chosen.sort_unstable();
    Some(chosen)
}

/// Minimum cover of `0..universe` by members of `sets`, or `None` when the
/// union of `sets` misses some element. Sets are truncated or padded to the
/// universe size.
pub fn minimum_cover(sets: &[FixedBitSet], universe: usize) -> Option<Cover> {
    let sets: Vec<FixedBitSet> = sets
        .iter()
        .map(|s| {
            let mut t = FixedBitSet::with_capacity(universe);
            t.extend(s.ones().filter(|&e| e < universe));
            t
        })
        .collect();
    let mut covering = vec![Vec::new(); universe];
    for (k, s) in sets.iter().enumerate() {
        for e in s.ones() {
            covering[e].push(k);
        }
    }
    if covering.iter().any(Vec::is_empty) {
        return None;
    }
    let mut search = Search {
        sets: &sets,
        covering,
        best: greedy(&sets, universe),
    };
    let mut all = FixedBitSet::with_capacity(universe);
    all.insert_range(..);
    search.explore(&mut Vec::new(), &all);
    search.best.map(|sets| Cover { sets })
}
