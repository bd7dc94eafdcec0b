//! Test posets: the named families, small induced pieces of the 3x3 grid, and
//! seeded random naturally labeled posets.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poset::{from_covers, Builtin, Label, Poset, SubposetSelection};

pub const DEFAULT_SEED: u64 = 0;
pub const RANDOM_COUNT: usize = 200;
pub const RANDOM_MAX_SIZE: u32 = 6;
const EDGE_PROBABILITY: f64 = 0.3;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub poset: Poset,
    /// Set for members of a named family, which have closed forms to compare against.
    pub builtin: Option<Builtin>,
}

impl CorpusEntry {
    fn named(b: Builtin) -> Self {
        Self {
            name: b.to_string(),
            poset: b.build(),
            builtin: Some(b),
        }
    }

    pub fn new(name: impl Into<String>, poset: Poset) -> Self {
        Self {
            name: name.into(),
            poset,
            builtin: None,
        }
    }
}

/// Chains and antichains up to 7 elements, grids up to 3x3, fences up to 6.
pub fn families() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for p in 0..=7 {
        out.push(CorpusEntry::named(Builtin::Chain(p)));
        out.push(CorpusEntry::named(Builtin::Antichain(p)));
    }
    for l in 1..=3 {
        for m in l..=3 {
            out.push(CorpusEntry::named(Builtin::Grid(l, m)));
        }
    }
    for m in 1..=6 {
        out.push(CorpusEntry::named(Builtin::Fence(m)));
    }
    out
}

/// Every induced subposet of the 3x3 grid on exactly `k` elements; labels are kept.
pub fn grid_pieces(k: usize) -> Vec<CorpusEntry> {
    let g = Builtin::Grid(3, 3).build();
    g.elements()
        .iter()
        .copied()
        .combinations(9 - k)
        .map(|deleted| {
            let kept: Vec<String> = g
                .elements()
                .iter()
                .filter(|l| !deleted.contains(l))
                .map(|l| l.to_string())
                .collect();
            let piece = g
                .induced(&SubposetSelection::new(deleted))
                .expect("labels come from the grid");
            CorpusEntry::new(format!("grid:3,3[{}]", kept.join(",")), piece)
        })
        .collect()
}

/// A random naturally labeled poset: each pair `a < b` is related with
/// probability 0.3, then closed transitively.
pub fn random_poset(rng: &mut impl Rng, p: u32) -> Poset {
    let relations: Vec<(Label, Label)> = (1..=p)
        .tuple_combinations()
        .filter(|_| rng.random_bool(EDGE_PROBABILITY))
        .collect();
    from_covers(p, &relations).expect("increasing pairs are natural")
}

/// `count` random posets of size `1..=max_size`, reproducible from `seed`.
pub fn random(seed: u64, count: usize, max_size: u32) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let p = rng.random_range(1..=max_size);
            let poset = random_poset(&mut rng, p);
            CorpusEntry::new(format!("random:{seed}:{i}"), poset)
        })
        .collect()
}

/// Families, six-element pieces of the 3x3 grid, and 200 random posets.
pub fn builtin(seed: u64) -> Vec<CorpusEntry> {
    let mut out = families();
    out.extend(grid_pieces(6));
    out.extend(random(seed, RANDOM_COUNT, RANDOM_MAX_SIZE));
    out
}

/// Every naturally labeled poset on `1..=p`, one per distinct order relation.
pub fn all_natural_posets(p: u32) -> Vec<Poset> {
    let pairs: Vec<(Label, Label)> = (1..=p).tuple_combinations().collect();
    assert!(pairs.len() < 32, "too many pairs to enumerate");
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let chosen: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &pair)| pair)
            .collect();
        let poset = from_covers(p, &chosen).expect("increasing pairs are natural");
        if seen.insert(poset.relations()) {
            out.push(poset);
        }
    }
    out
}
