//! Finite naturally labeled posets and their induced subposets.
//!
//! A [`Poset`] lives inside a label universe `1..=universe` and holds a sorted
//! subset of those labels as its elements. A freshly built poset owns the whole
//! universe; [`Poset::induced`] drops labels without renumbering the rest, so a
//! linear extension of a subposet is written with the labels it had in the host.
//!
//! The order is stored transitively closed, one bit row per element, so an
//! order query is a single bit test. The cover relation (transitive reduction)
//! is kept alongside as adjacency lists.

mod builders;
mod io;

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

pub use builders::{antichain, chain, fence, grid, Builtin};
pub use io::{parse_poset, PosetDocument};

/// A poset element, identified by its label under the natural labeling.
pub type Label = u32;

const ABSENT: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    universe: u32,
    elements: Vec<Label>,
    // label -> dense index, ABSENT for labels outside the poset
    slot: Vec<u32>,
    // dense index rows; bit j set iff element i is strictly below element j
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    lower_covers: Vec<Vec<u32>>,
    upper_covers: Vec<Vec<u32>>,
}

/// Labels `D` naming the induced subposet `P \ D`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SubposetSelection {
    deleted: BTreeSet<Label>,
}

impl SubposetSelection {
    pub fn new(deleted: impl IntoIterator<Item = Label>) -> Self {
        Self {
            deleted: deleted.into_iter().collect(),
        }
    }

    pub fn deleted(&self) -> &BTreeSet<Label> {
        &self.deleted
    }

    pub fn union(&self, other: &SubposetSelection) -> SubposetSelection {
        Self {
            deleted: self.deleted.union(&other.deleted).copied().collect(),
        }
    }
}

impl<I: IntoIterator<Item = Label>> From<I> for SubposetSelection {
    fn from(labels: I) -> Self {
        Self::new(labels)
    }
}

/// Original label -> natural label, as produced by [`canonicalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    forward: Vec<Label>,
}

impl Relabeling {
    pub fn apply(&self, original: Label) -> Label {
        self.forward[original as usize - 1]
    }

    /// Pairs `(original, new)` in order of the original label.
    pub fn pairs(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.forward
            .iter()
            .enumerate()
            .map(|(i, &new)| (i as Label + 1, new))
    }

    pub fn is_identity(&self) -> bool {
        self.pairs().all(|(a, b)| a == b)
    }
}

fn check_range(p: u32, covers: &[(Label, Label)]) -> Result<()> {
    for &(a, b) in covers {
        for label in [a, b] {
            if label == 0 || label > p {
                return Err(Error::LabelOutOfRange { label, universe: p });
            }
        }
    }
    Ok(())
}

/// Kahn's algorithm over labels `1..=p`, always taking the smallest available
/// label. Returns the labels left over when the relation is cyclic.
fn smallest_first_order(p: u32, covers: &[(Label, Label)]) -> Result<Vec<Label>, Vec<Label>> {
    let n = p as usize;
    let mut succ = vec![Vec::new(); n + 1];
    let mut indeg = vec![0usize; n + 1];
    for &(a, b) in covers {
        succ[a as usize].push(b);
        indeg[b as usize] += 1;
    }
    let mut heap: BinaryHeap<Reverse<Label>> = (1..=p)
        .filter(|&l| indeg[l as usize] == 0)
        .map(Reverse)
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(l)) = heap.pop() {
        order.push(l);
        for &s in &succ[l as usize] {
            indeg[s as usize] -= 1;
            if indeg[s as usize] == 0 {
                heap.push(Reverse(s));
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        let done: BTreeSet<Label> = order.into_iter().collect();
        Err((1..=p).filter(|l| !done.contains(l)).collect())
    }
}

/// Builds a poset on labels `1..=p` from (possibly redundant) cover pairs `a<b`.
pub fn from_covers(p: u32, covers: &[(Label, Label)]) -> Result<Poset> {
    check_range(p, covers)?;
    if let Some(&(a, _)) = covers.iter().find(|(a, b)| a == b) {
        return Err(Error::Cycle { labels: vec![a] });
    }
    if let Some(&(lower, upper)) = covers.iter().find(|(a, b)| a > b) {
        return match smallest_first_order(p, covers) {
            Err(labels) => Err(Error::Cycle { labels }),
            Ok(_) => Err(Error::NotNatural { lower, upper }),
        };
    }

    // Every pair points upward, so closing from the top label down visits each
    // upper cover before the element below it.
    let n = p as usize;
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in covers {
        succ[a as usize - 1].push(b as usize - 1);
    }
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    for i in (0..n).rev() {
        let mut row = FixedBitSet::with_capacity(n);
        for &j in &succ[i] {
            row.insert(j);
            row.union_with(&up[j]);
        }
        up[i] = row;
    }
    Ok(Poset::from_closed(p, (1..=p).collect(), up))
}

/// Relabels an acyclic relation on `1..=p` along a topological order, taking the
/// smallest original label among the available ones at every step.
pub fn canonicalize(p: u32, covers: &[(Label, Label)]) -> Result<(Poset, Relabeling)> {
    check_range(p, covers)?;
    if let Some(&(a, _)) = covers.iter().find(|(a, b)| a == b) {
        return Err(Error::Cycle { labels: vec![a] });
    }
    let order = smallest_first_order(p, covers).map_err(|labels| Error::Cycle { labels })?;
    let mut forward = vec![0; p as usize];
    for (i, &orig) in order.iter().enumerate() {
        forward[orig as usize - 1] = i as Label + 1;
    }
    let relabeling = Relabeling { forward };
    let mapped: Vec<_> = covers
        .iter()
        .map(|&(a, b)| (relabeling.apply(a), relabeling.apply(b)))
        .collect();
    Ok((from_covers(p, &mapped)?, relabeling))
}

impl Poset {
    /// `up` must already be transitively closed and compatible with label order.
    fn from_closed(universe: u32, elements: Vec<Label>, up: Vec<FixedBitSet>) -> Poset {
        let n = elements.len();
        let mut slot = vec![ABSENT; universe as usize + 1];
        for (i, &l) in elements.iter().enumerate() {
            slot[l as usize] = i as u32;
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                if row.is_disjoint(&down[j]) {
                    upper_covers[i].push(j as u32);
                    lower_covers[j].push(i as u32);
                }
            }
        }
        Poset {
            universe,
            elements,
            slot,
            up,
            down,
            lower_covers,
            upper_covers,
        }
    }

    /// The empty poset inside the universe `1..=universe`.
    pub fn empty(universe: u32) -> Poset {
        Poset::from_closed(universe, Vec::new(), Vec::new())
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Largest label the poset's labels are drawn from.
    pub fn universe(&self) -> u32 {
        self.universe
    }

    /// Element labels in increasing order.
    pub fn elements(&self) -> &[Label] {
        &self.elements
    }

    pub fn contains(&self, label: Label) -> bool {
        (label as usize) < self.slot.len() && self.slot[label as usize] != ABSENT
    }

    pub(crate) fn index_of(&self, label: Label) -> Option<usize> {
        self.slot
            .get(label as usize)
            .filter(|&&s| s != ABSENT)
            .map(|&s| s as usize)
    }

    /// Strict order query `a <_P b`. Labels outside the poset compare as unrelated.
    pub fn less(&self, a: Label, b: Label) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.up[i].contains(j),
            _ => false,
        }
    }

    pub(crate) fn dense_lower_covers(&self, i: usize) -> &[u32] {
        &self.lower_covers[i]
    }

    pub(crate) fn dense_upper_covers(&self, i: usize) -> &[u32] {
        &self.upper_covers[i]
    }

    pub fn comparable(&self, a: Label, b: Label) -> bool {
        self.less(a, b) || self.less(b, a)
    }

    /// Cover pairs `(a, b)`, `a` covered by `b`, sorted.
    pub fn covers(&self) -> Vec<(Label, Label)> {
        let mut out = Vec::new();
        for (i, ups) in self.upper_covers.iter().enumerate() {
            for &j in ups {
                out.push((self.elements[i], self.elements[j as usize]));
            }
        }
        out.sort_unstable();
        out
    }

    /// Every related pair `(a, b)` with `a <_P b`, sorted.
    pub fn relations(&self) -> Vec<(Label, Label)> {
        let mut out = Vec::new();
        for (i, row) in self.up.iter().enumerate() {
            for j in row.ones() {
                out.push((self.elements[i], self.elements[j]));
            }
        }
        out
    }

    pub fn lower_covers(&self, label: Label) -> Vec<Label> {
        self.index_of(label)
            .map(|i| {
                self.lower_covers[i]
                    .iter()
                    .map(|&j| self.elements[j as usize])
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn upper_covers(&self, label: Label) -> Vec<Label> {
        self.index_of(label)
            .map(|i| {
                self.upper_covers[i]
                    .iter()
                    .map(|&j| self.elements[j as usize])
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Number of elements in a longest chain.
    pub fn height(&self) -> usize {
        // dense order is a linear extension
        let mut depth = vec![0usize; self.size()];
        for i in 0..self.size() {
            depth[i] = 1 + self.lower_covers[i]
                .iter()
                .map(|&j| depth[j as usize])
                .max()
                .unwrap_or(0);
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// The induced subposet on the elements whose labels are not in `selection`.
    /// Surviving labels are kept as they are.
    pub fn induced(&self, selection: &SubposetSelection) -> Result<Poset> {
        for &label in selection.deleted() {
            if label == 0 || label > self.universe {
                return Err(Error::LabelOutOfRange {
                    label,
                    universe: self.universe,
                });
            }
        }
        let kept: Vec<usize> = (0..self.size())
            .filter(|&i| !selection.deleted().contains(&self.elements[i]))
            .collect();
        let n = kept.len();
        let up = kept
            .iter()
            .map(|&i| {
                let mut row = FixedBitSet::with_capacity(n);
                for (new_j, &j) in kept.iter().enumerate() {
                    if self.up[i].contains(j) {
                        row.insert(new_j);
                    }
                }
                row
            })
            .collect();
        let elements = kept.iter().map(|&i| self.elements[i]).collect();
        Ok(Poset::from_closed(self.universe, elements, up))
    }

    /// Scans the stored relation and reports the first broken invariant.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.size();
        if self.elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err("element labels are not strictly increasing".into());
        }
        for i in 0..n {
            if self.up[i].contains(i) {
                return Err(format!("{} is below itself", self.elements[i]));
            }
            for j in self.up[i].ones() {
                if j <= i {
                    return Err(format!(
                        "{} < {} violates the natural labeling",
                        self.elements[i], self.elements[j]
                    ));
                }
                if !self.up[i].is_superset(&self.up[j]) {
                    return Err(format!(
                        "relation is not transitive above {}",
                        self.elements[j]
                    ));
                }
                if !self.down[j].contains(i) {
                    return Err("up and down rows disagree".into());
                }
            }
        }
        // covers must regenerate the closure
        let mut closure = vec![FixedBitSet::with_capacity(n); n];
        for i in (0..n).rev() {
            for &j in &self.upper_covers[i] {
                let j = j as usize;
                let mut row = closure[j].clone();
                row.insert(j);
                closure[i].union_with(&row);
            }
        }
        if closure != self.up {
            return Err("transitive closure of the covers differs from the relation".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_closure() {
        let p = from_covers(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(p.less(1, 3));
        assert!(!p.less(3, 1));
        assert_eq!(p.covers(), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn redundant_covers_are_reduced() {
        let p = from_covers(3, &[(1, 2), (2, 3), (1, 3), (1, 2)]).unwrap();
        assert_eq!(p.covers(), vec![(1, 2), (2, 3)]);
        p.check_invariants().unwrap();
    }

    #[test]
    fn two_by_two_lattice() {
        let p = from_covers(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        assert!(p.less(1, 4));
        assert!(!p.comparable(2, 3));
        assert_eq!(p, grid(2, 2));
    }

    #[test]
    fn non_natural_cover_rejected() {
        assert!(matches!(
            from_covers(2, &[(2, 1)]),
            Err(Error::NotNatural { lower: 2, upper: 1 })
        ));
    }

    #[test]
    fn cycles_rejected() {
        assert!(matches!(
            from_covers(2, &[(1, 2), (2, 1)]),
            Err(Error::Cycle { .. })
        ));
        assert!(matches!(
            from_covers(1, &[(1, 1)]),
            Err(Error::Cycle { .. })
        ));
        assert!(matches!(
            canonicalize(3, &[(1, 2), (2, 3), (3, 1)]),
            Err(Error::Cycle { .. })
        ));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            from_covers(2, &[(1, 3)]),
            Err(Error::LabelOutOfRange {
                label: 3,
                universe: 2
            })
        ));
    }

    #[test]
    fn canonicalize_two_chain() {
        let (p, map) = canonicalize(2, &[(2, 1)]).unwrap();
        assert_eq!(p, chain(2));
        assert_eq!(map.apply(2), 1);
        assert_eq!(map.apply(1), 2);
    }

    #[test]
    fn canonicalize_antichain_is_identity() {
        let (p, map) = canonicalize(3, &[]).unwrap();
        assert!(map.is_identity());
        assert_eq!(p, antichain(3));
    }

    /// All 3! labelings, keeping the order-preserving ones; the tie-break picks
    /// the one whose labels follow the smallest-original-first topological order.
    #[test]
    fn canonicalize_matches_brute_force_labelings() {
        let covers = [(3, 1), (3, 2)];
        let perms = [
            [1, 2, 3],
            [1, 3, 2],
            [2, 1, 3],
            [2, 3, 1],
            [3, 1, 2],
            [3, 2, 1],
        ];
        let natural: Vec<_> = perms
            .iter()
            .filter(|m| covers.iter().all(|&(a, b)| m[a - 1] < m[b - 1]))
            .collect();
        // smallest original label gets the smallest free new label
        let chosen = natural
            .iter()
            .min_by_key(|m| {
                let mut by_new = [0usize; 3];
                for (orig, &new) in m.iter().enumerate() {
                    by_new[new - 1] = orig + 1;
                }
                by_new
            })
            .unwrap();
        assert_eq!(**chosen, [2, 3, 1]);

        let (p, map) = canonicalize(3, &[(3, 1), (3, 2)]).unwrap();
        assert_eq!(map.apply(3), 1);
        assert_eq!(map.apply(1), 2);
        assert_eq!(map.apply(2), 3);
        assert_eq!(p.covers(), vec![(1, 2), (1, 3)]);
    }

    #[test]
    fn induced_keeps_labels() {
        let c = chain(3);
        let q = c.induced(&[2].into()).unwrap();
        assert_eq!(q.elements(), &[1, 3]);
        assert!(q.less(1, 3));
        assert_eq!(q.covers(), vec![(1, 3)]);

        let g = grid(3, 3);
        let q = g.induced(&[2, 4, 8, 9].into()).unwrap();
        assert_eq!(q.elements(), &[1, 3, 5, 6, 7]);
        q.check_invariants().unwrap();

        let all = c.induced(&[1, 2, 3].into()).unwrap();
        assert!(all.is_empty());
        assert_eq!(all.universe(), 3);
    }

    #[test]
    fn induced_out_of_range() {
        assert!(matches!(
            chain(3).induced(&[4].into()),
            Err(Error::LabelOutOfRange { label: 4, .. })
        ));
    }

    #[test]
    fn nested_deletion_composes() {
        let g = grid(3, 3);
        let d1: SubposetSelection = [2, 5].into();
        let d2: SubposetSelection = [5, 9].into();
        let nested = g.induced(&d1).unwrap().induced(&d2).unwrap();
        assert_eq!(nested, g.induced(&d1.union(&d2)).unwrap());
        assert_eq!(g.induced(&SubposetSelection::default()).unwrap(), g);
    }

    #[test]
    fn height_of_grid() {
        assert_eq!(grid(3, 4).height(), 6);
        assert_eq!(antichain(5).height(), 1);
        assert_eq!(Poset::empty(0).height(), 0);
    }
}
