//! Backtracking enumeration of linear extensions.
//!
//! The walker extends a word one element at a time, always trying the smallest
//! available label first, so leaves come out in lexicographic order. Descent
//! and fixed-label counts are maintained incrementally: whether a label is
//! fixed depends only on the prefix ending at it, except that a descent also
//! fixes the label just before it.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::LinearExtension;
use crate::poset::{Label, Poset};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Fresh,
    AtLeaf,
    Done,
}

/// Depth-first walker over the linear extensions that start with a given prefix.
#[derive(Clone, Debug)]
pub struct ExtensionWalker<'a> {
    poset: &'a Poset,
    n: usize,
    word: Vec<u32>,
    fixed: Vec<bool>,
    // pushing at this depth marked the previous position fixed
    flipped: Vec<bool>,
    // 1-based position of each placed element, 0 when unplaced
    placed_at: Vec<u32>,
    // lower covers not yet placed
    pending: Vec<u32>,
    cursor: Vec<u32>,
    des: u32,
    fixed_count: u32,
    floor: usize,
    state: State,
}

impl<'a> ExtensionWalker<'a> {
    pub fn new(poset: &'a Poset) -> Self {
        let n = poset.size();
        Self {
            poset,
            n,
            word: Vec::with_capacity(n),
            fixed: Vec::with_capacity(n),
            flipped: Vec::with_capacity(n),
            placed_at: vec![0; n],
            pending: (0..n)
                .map(|i| poset.dense_lower_covers(i).len() as u32)
                .collect(),
            cursor: vec![0; n + 1],
            des: 0,
            fixed_count: 0,
            floor: 0,
            state: State::Fresh,
        }
    }

    /// Restricts the walk to extensions beginning with `prefix`.
    pub fn with_prefix(poset: &'a Poset, prefix: &[Label]) -> Result<Self> {
        let mut walker = Self::new(poset);
        for &label in prefix {
            match poset.index_of(label) {
                Some(i) if walker.available(i) => walker.push(i),
                _ => {
                    return Err(Error::NotAnExtension {
                        word: LinearExtension::from(prefix).to_string(),
                        reason: format!("{label} cannot be placed here"),
                    })
                }
            }
        }
        walker.floor = prefix.len();
        Ok(walker)
    }

    #[inline]
    fn available(&self, i: usize) -> bool {
        self.placed_at[i] == 0 && self.pending[i] == 0
    }

    #[inline]
    fn push(&mut self, c: usize) {
        let c32 = c as u32;
        // The latest-placed element below c is one of its lower covers. c keeps
        // its deletability (apart from descents) iff everything after it is smaller.
        let since = self
            .poset
            .dense_lower_covers(c)
            .iter()
            .map(|&j| self.placed_at[j as usize])
            .max()
            .unwrap_or(0) as usize;
        let mut is_fixed = self.word[since..].iter().any(|&x| x > c32);
        let mut flipped = false;
        if let Some(&prev) = self.word.last() {
            if prev > c32 {
                self.des += 1;
                is_fixed = true;
                let last = self.fixed.last_mut().expect("fixed tracks word");
                if !*last {
                    *last = true;
                    self.fixed_count += 1;
                    flipped = true;
                }
            }
        }
        if is_fixed {
            self.fixed_count += 1;
        }
        self.word.push(c32);
        self.fixed.push(is_fixed);
        self.flipped.push(flipped);
        self.placed_at[c] = self.word.len() as u32;
        for &s in self.poset.dense_upper_covers(c) {
            self.pending[s as usize] -= 1;
        }
    }

    #[inline]
    fn pop(&mut self) {
        let c = self.word.pop().expect("pop on empty word");
        let was_fixed = self.fixed.pop().expect("fixed tracks word");
        let flipped = self.flipped.pop().expect("flipped tracks word");
        if was_fixed {
            self.fixed_count -= 1;
        }
        if let Some(&prev) = self.word.last() {
            if prev > c {
                self.des -= 1;
            }
            if flipped {
                *self.fixed.last_mut().expect("fixed tracks word") = false;
                self.fixed_count -= 1;
            }
        }
        self.placed_at[c as usize] = 0;
        for &s in self.poset.dense_upper_covers(c as usize) {
            self.pending[s as usize] += 1;
        }
    }

    /// Moves to the next complete extension. Returns `false` once exhausted.
    pub fn advance(&mut self) -> bool {
        match self.state {
            State::Done => return false,
            State::Fresh => {
                if self.word.len() == self.n {
                    self.state = State::AtLeaf;
                    return true;
                }
                self.cursor[self.word.len()] = 0;
            }
            State::AtLeaf => {
                if self.word.len() == self.floor {
                    self.state = State::Done;
                    return false;
                }
                self.pop();
            }
        }
        loop {
            let depth = self.word.len();
            let mut c = self.cursor[depth] as usize;
            while c < self.n && !self.available(c) {
                c += 1;
            }
            if c < self.n {
                self.cursor[depth] = c as u32 + 1;
                self.push(c);
                if self.word.len() == self.n {
                    self.state = State::AtLeaf;
                    return true;
                }
                self.cursor[depth + 1] = 0;
            } else {
                if depth == self.floor {
                    self.state = State::Done;
                    return false;
                }
                self.pop();
            }
        }
    }

    /// Descents of the current word.
    pub fn des(&self) -> usize {
        self.des as usize
    }

    /// Fixed (non-deletable) labels of the current word.
    pub fn fixed(&self) -> usize {
        self.fixed_count as usize
    }

    pub fn depth(&self) -> usize {
        self.word.len()
    }

    pub fn labels(&self) -> Vec<Label> {
        let elements = self.poset.elements();
        self.word.iter().map(|&i| elements[i as usize]).collect()
    }

    /// Labels that may come next after the current word.
    pub fn next_choices(&self) -> Vec<Label> {
        (0..self.n)
            .filter(|&i| self.available(i))
            .map(|i| self.poset.elements()[i])
            .collect()
    }

    fn walk_counts(&mut self, hist: &mut StatsHistogram, mut on_leaf: impl FnMut() -> bool) {
        while self.advance() {
            hist.record(self.des(), self.fixed());
            if !on_leaf() {
                break;
            }
        }
    }
}

/// Iterator over `L(P)` in lexicographic order.
pub struct Extensions<'a> {
    walker: ExtensionWalker<'a>,
}

impl Iterator for Extensions<'_> {
    type Item = LinearExtension;

    fn next(&mut self) -> Option<LinearExtension> {
        self.walker
            .advance()
            .then(|| LinearExtension::new(self.walker.labels()))
    }
}

pub fn enumerate_extensions(poset: &Poset) -> Extensions<'_> {
    Extensions {
        walker: ExtensionWalker::new(poset),
    }
}

impl<'a> Extensions<'a> {
    pub fn with_prefix(poset: &'a Poset, prefix: &[Label]) -> Result<Self> {
        Ok(Self {
            walker: ExtensionWalker::with_prefix(poset, prefix)?,
        })
    }
}

/// Prefixes whose subtrees tile `L(P)`, listed in lexicographic order, so that
/// concatenating the per-prefix enumerations reproduces the full order. Stops
/// refining once there are at least `min_parts` prefixes or every prefix is a
/// full word.
pub fn partition_prefixes(poset: &Poset, min_parts: usize) -> Vec<Vec<Label>> {
    let mut parts = vec![Vec::new()];
    while parts.len() < min_parts {
        let mut refined = Vec::with_capacity(parts.len() * 2);
        let mut grew = false;
        for prefix in parts {
            let walker = ExtensionWalker::with_prefix(poset, &prefix).expect("valid prefix");
            let choices = walker.next_choices();
            if choices.is_empty() {
                refined.push(prefix);
                continue;
            }
            grew = true;
            for c in choices {
                let mut longer = prefix.clone();
                longer.push(c);
                refined.push(longer);
            }
        }
        parts = refined;
        if !grew {
            break;
        }
    }
    parts
}

/// Counts of extensions by `(des, fixed)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatsHistogram {
    size: usize,
    counts: Vec<u64>,
}

impl StatsHistogram {
    pub fn new(size: usize) -> Self {
        Self {
            size,
            counts: vec![0; size.max(1) * (size + 1)],
        }
    }

    #[inline]
    fn record(&mut self, des: usize, fixed: usize) {
        self.counts[des * (self.size + 1) + fixed] += 1;
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, des: usize, fixed: usize) -> u64 {
        self.counts[des * (self.size + 1) + fixed]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Nonzero entries as `((des, fixed), count)`, ordered by `des` then `fixed`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        let width = self.size + 1;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(move |(i, &c)| ((i / width, i % width), c))
    }

    pub fn merge(mut self, other: &StatsHistogram) -> Self {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self
    }
}

/// Enumeration limits. `budget` caps the number of extensions visited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumOptions {
    pub budget: Option<u64>,
    pub threads: Option<usize>,
}

impl EnumOptions {
    pub const DEFAULT_BUDGET: u64 = 10_000_000;

    /// Default budget, or `ORDOPOLY_BUDGET` when set to an integer.
    pub fn from_env() -> Self {
        let budget = std::env::var("ORDOPOLY_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(Self::DEFAULT_BUDGET);
        Self {
            budget: Some(budget),
            threads: None,
        }
    }

    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }
}

const FLUSH_EVERY: u64 = 4096;

struct Budget {
    limit: u64,
    seen: AtomicU64,
    tripped: AtomicBool,
}

impl Budget {
    fn walk(&self, walker: &mut ExtensionWalker<'_>, hist: &mut StatsHistogram) {
        let mut local = 0u64;
        walker.walk_counts(hist, || {
            local += 1;
            if local == FLUSH_EVERY {
                let seen = self.seen.fetch_add(local, Ordering::Relaxed) + local;
                local = 0;
                if seen > self.limit {
                    self.tripped.store(true, Ordering::Relaxed);
                }
                return !self.tripped.load(Ordering::Relaxed);
            }
            // small limits must trip exactly
            self.seen.load(Ordering::Relaxed) + local <= self.limit
        });
        let seen = self.seen.fetch_add(local, Ordering::Relaxed) + local;
        if seen > self.limit {
            self.tripped.store(true, Ordering::Relaxed);
        }
    }
}

/// Tallies `L(P)` by `(des, fixed)`. The result does not depend on the thread
/// count; with a budget, stops early and reports what was seen.
pub fn histogram(poset: &Poset, options: &EnumOptions) -> Result<StatsHistogram> {
    let budget = Budget {
        limit: options.budget.unwrap_or(u64::MAX),
        seen: AtomicU64::new(0),
        tripped: AtomicBool::new(false),
    };
    let threads = options
        .threads
        .unwrap_or_else(rayon::current_num_threads)
        .max(1);
    let size = poset.size();

    let hist = if threads == 1 {
        let mut hist = StatsHistogram::new(size);
        budget.walk(&mut ExtensionWalker::new(poset), &mut hist);
        hist
    } else {
        let prefixes = partition_prefixes(poset, threads * 16);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| {
            prefixes
                .par_iter()
                .map(|prefix| {
                    let mut hist = StatsHistogram::new(size);
                    if !budget.tripped.load(Ordering::Relaxed) {
                        let mut walker =
                            ExtensionWalker::with_prefix(poset, prefix).expect("valid prefix");
                        budget.walk(&mut walker, &mut hist);
                    }
                    hist
                })
                .reduce(|| StatsHistogram::new(size), |a, b| a.merge(&b))
        })
    };

    if budget.tripped.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded {
            budget: budget.limit,
            visited: hist.total(),
            partial: Box::new(crate::poly::StructuredTable::from_histogram(&hist)),
        });
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{deletable_set, descent_set};
    use crate::poset::{antichain, chain, fence, grid, Poset};

    fn words(p: &Poset) -> Vec<Vec<Label>> {
        enumerate_extensions(p).map(|e| e.into_word()).collect()
    }

    #[test]
    fn small_jordan_holder_sets() {
        assert_eq!(words(&grid(2, 2)), vec![vec![1, 2, 3, 4], vec![1, 3, 2, 4]]);
        assert_eq!(
            words(&antichain(3)),
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1]
            ]
        );
        assert_eq!(words(&chain(5)), vec![vec![1, 2, 3, 4, 5]]);
    }

    #[test]
    fn empty_poset_has_the_empty_word() {
        assert_eq!(words(&Poset::empty(0)), vec![Vec::<Label>::new()]);
        assert_eq!(words(&chain(0)), vec![Vec::<Label>::new()]);
    }

    #[test]
    fn subposet_extensions_keep_labels() {
        let q = grid(3, 3).induced(&[2, 4, 8, 9].into()).unwrap();
        let all = words(&q);
        assert!(all.contains(&vec![1, 7, 5, 3, 6]));
        for w in &all {
            crate::extension::check_word(&q, w).unwrap();
        }
    }

    #[test]
    fn incremental_stats_match_definition() {
        for p in [grid(3, 3), grid(2, 4), antichain(4), fence(6), chain(4)] {
            let mut walker = ExtensionWalker::new(&p);
            while walker.advance() {
                let w = walker.labels();
                assert_eq!(walker.des(), descent_set(&w).len(), "{w:?}");
                let del = deletable_set(&p, &w).unwrap();
                assert_eq!(walker.fixed(), p.size() - del.len(), "{w:?}");
            }
        }
    }

    #[test]
    fn prefixes_tile_the_enumeration() {
        let g = grid(3, 3);
        let full = words(&g);
        for parts in [1, 2, 5, 40, 10_000] {
            let prefixes = partition_prefixes(&g, parts);
            let mut joined = Vec::new();
            for pre in &prefixes {
                joined.extend(
                    Extensions::with_prefix(&g, pre)
                        .unwrap()
                        .map(|e| e.into_word()),
                );
            }
            assert_eq!(joined, full);
        }
    }

    #[test]
    fn invalid_prefix_is_rejected() {
        assert!(ExtensionWalker::with_prefix(&grid(2, 2), &[2]).is_err());
        assert!(ExtensionWalker::with_prefix(&grid(2, 2), &[1, 1]).is_err());
        assert!(ExtensionWalker::with_prefix(&grid(2, 2), &[9]).is_err());
    }

    #[test]
    fn restartable() {
        let g = grid(2, 3);
        assert_eq!(words(&g), words(&g));
    }

    #[test]
    fn histogram_independent_of_threads() {
        let g = grid(3, 4);
        let one = histogram(&g, &EnumOptions::unlimited().with_threads(1)).unwrap();
        let four = histogram(&g, &EnumOptions::unlimited().with_threads(4)).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.total(), 462);
    }

    #[test]
    fn budget_trips() {
        let g = grid(3, 3);
        let opts = EnumOptions::unlimited().with_budget(Some(41));
        match histogram(&g, &opts.with_threads(1)) {
            Err(Error::BudgetExceeded {
                budget, visited, ..
            }) => {
                assert_eq!(budget, 41);
                assert!(visited > 41);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(histogram(&g, &opts.with_budget(Some(42)).with_threads(1)).is_ok());
        assert!(matches!(
            histogram(&g, &opts.with_threads(3)),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
