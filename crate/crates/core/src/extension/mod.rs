//! Linear extensions, their descent and deletable-label statistics, and the
//! delete/restore correspondence between extensions of a poset and extensions
//! of its induced subposets.

mod classes;
mod walker;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::poset::{Label, Poset};
use crate::{Error, Result};

pub use classes::{class_partition, ClassPartition, ExtensionClass, DEFAULT_CLASS_GUARD};
pub use walker::{
    enumerate_extensions, histogram, partition_prefixes, EnumOptions, ExtensionWalker, Extensions,
    StatsHistogram,
};

/// A label sequence `w1 w2 ... wq`. Whether it is a linear extension depends on
/// the poset it is checked against; see [`LinearExtension::check`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearExtension(Vec<Label>);

impl LinearExtension {
    pub fn new(word: Vec<Label>) -> Self {
        Self(word)
    }

    pub fn word(&self) -> &[Label] {
        &self.0
    }

    pub fn into_word(self) -> Vec<Label> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn des(&self) -> usize {
        descent_set(&self.0).len()
    }

    /// Verifies that the word lists every element of `poset` exactly once in an
    /// order compatible with `<_P`.
    pub fn check(&self, poset: &Poset) -> Result<()> {
        check_word(poset, &self.0)
    }
}

impl From<Vec<Label>> for LinearExtension {
    fn from(word: Vec<Label>) -> Self {
        Self(word)
    }
}

impl From<&[Label]> for LinearExtension {
    fn from(word: &[Label]) -> Self {
        Self(word.to_vec())
    }
}

/// Space-separated labels; the empty word prints as the empty string.
impl fmt::Display for LinearExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Accepts space- or comma-separated labels, or a run of single digits such as
/// `124753689` when every label is below 10.
impl FromStr for LinearExtension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |message: String| Error::Parse { line: 0, message };
        if s.is_empty() || s == "ε" {
            return Ok(Self::default());
        }
        let word = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<Label>()
                        .map_err(|e| bad(format!("bad label `{t}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .ok_or_else(|| bad(format!("bad label `{c}` in `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Self(word))
    }
}

fn render(word: &[Label]) -> String {
    LinearExtension::from(word).to_string()
}

pub(crate) fn check_word(poset: &Poset, word: &[Label]) -> Result<()> {
    let fail = |reason: String| {
        Err(Error::NotAnExtension {
            word: render(word),
            reason,
        })
    };
    if word.len() != poset.size() {
        return fail(format!(
            "has {} labels but the poset has {} elements",
            word.len(),
            poset.size()
        ));
    }
    let mut seen = vec![false; poset.size()];
    for &l in word {
        match poset.index_of(l) {
            None => return fail(format!("label {l} is not an element")),
            Some(i) if seen[i] => return fail(format!("label {l} repeats")),
            Some(i) => seen[i] = true,
        }
    }
    for (i, &a) in word.iter().enumerate() {
        for &b in &word[..i] {
            if poset.less(a, b) {
                return fail(format!("{a} < {b} but {b} comes first"));
            }
        }
    }
    Ok(())
}

/// Positions `i` (1-based) with `w_i > w_{i+1}`.
pub fn descent_set(word: &[Label]) -> Vec<usize> {
    word.windows(2)
        .enumerate()
        .filter(|(_, pair)| pair[0] > pair[1])
        .map(|(i, _)| i + 1)
        .collect()
}

/// Deletable labels of `word` as a linear extension of `poset` (the host or an
/// induced subposet of it).
///
/// A label at position `i` is deletable when neither `i - 1` nor `i` is a
/// descent and either every earlier label is smaller, or some earlier `w_k`
/// lies below `w_i` in the poset with every label strictly between positions
/// `k` and `i` smaller than `w_i`.
pub fn deletable_set(poset: &Poset, word: &[Label]) -> Result<BTreeSet<Label>> {
    check_word(poset, word)?;
    Ok(deletable_unchecked(poset, word))
}

fn deletable_unchecked(poset: &Poset, word: &[Label]) -> BTreeSet<Label> {
    let q = word.len();
    let is_descent = |i: usize| i >= 1 && i < q && word[i - 1] > word[i];
    let mut out = BTreeSet::new();
    for i in 1..=q {
        let x = word[i - 1];
        if is_descent(i - 1) || is_descent(i) {
            continue;
        }
        // scan k = i-1, i-2, ..., 1 keeping the max over positions (k, i)
        let mut gap_max = 0;
        let mut below_before = false;
        for k in (1..i).rev() {
            if gap_max < x && poset.less(word[k - 1], x) {
                below_before = true;
                break;
            }
            gap_max = gap_max.max(word[k - 1]);
            if gap_max > x {
                break;
            }
        }
        let all_smaller = gap_max < x;
        if all_smaller || below_before {
            out.insert(x);
        }
    }
    out
}

/// Descent positions and deletable labels of one extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionStats {
    pub descents: Vec<usize>,
    pub deletable: BTreeSet<Label>,
    pub size: usize,
}

impl ExtensionStats {
    pub fn of(poset: &Poset, word: &[Label]) -> Result<Self> {
        Ok(Self {
            descents: descent_set(word),
            deletable: deletable_set(poset, word)?,
            size: word.len(),
        })
    }

    pub fn des(&self) -> usize {
        self.descents.len()
    }

    pub fn del(&self) -> usize {
        self.deletable.len()
    }

    pub fn fixed(&self) -> usize {
        self.size - self.del()
    }
}

/// `w \ D`: the subsequence of `word` without the labels in `deleted`. No
/// poset is consulted.
pub fn subsequence(word: &[Label], deleted: &BTreeSet<Label>) -> LinearExtension {
    LinearExtension(
        word.iter()
            .copied()
            .filter(|l| !deleted.contains(l))
            .collect(),
    )
}

/// Removes deletable labels from an extension of `poset`, giving an extension of
/// `poset \ deleted` with the same number of descents.
pub fn delete(poset: &Poset, word: &[Label], deleted: &BTreeSet<Label>) -> Result<LinearExtension> {
    let del = deletable_set(poset, word)?;
    let offending: Vec<Label> = deleted.difference(&del).copied().collect();
    if !offending.is_empty() {
        return Err(Error::NotDeletable { labels: offending });
    }
    Ok(subsequence(word, deleted))
}

/// Result of [`restore`]: the extension of the host and, for every gap
/// `0..=q` of the shorter word, the labels inserted there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restoration {
    pub extension: LinearExtension,
    pub buckets: Vec<Vec<Label>>,
}

/// The unique extension `w` of `poset` with `w \ deleted = v` and every label of
/// `deleted` deletable in `w`.
///
/// Each `d` goes into the first gap `i` at or after the last position `j_d` of
/// `v` holding an element below `d` such that `v_i < d < v_{i+1}`, with
/// sentinels `v_0 = 0` and `v_{q+1} = universe + 1`. Each gap is filled in
/// increasing order.
pub fn restore(poset: &Poset, v: &[Label], deleted: &BTreeSet<Label>) -> Result<Restoration> {
    for &d in deleted {
        if !poset.contains(d) {
            return Err(Error::InvalidSelection(format!(
                "deleted label {d} is not an element of the host"
            )));
        }
        if v.contains(&d) {
            return Err(Error::InvalidSelection(format!(
                "label {d} is both deleted and present"
            )));
        }
    }
    let sub = poset.induced(&deleted.iter().copied().into())?;
    check_word(&sub, v)?;

    let q = v.len();
    let sentinel_top = poset.universe() + 1;
    let at = |i: usize| -> Label {
        if i == 0 {
            0
        } else if i > q {
            sentinel_top
        } else {
            v[i - 1]
        }
    };
    let mut buckets = vec![Vec::new(); q + 1];
    for &d in deleted {
        let j_d = (1..=q)
            .rev()
            .find(|&j| poset.less(v[j - 1], d))
            .unwrap_or(0);
        let i_d = (j_d..=q)
            .find(|&i| at(i) < d && d < at(i + 1))
            .expect("a gap exists between v_{j_d} < d and the top sentinel");
        buckets[i_d].push(d);
    }
    // BTreeSet iteration is increasing, so each bucket is already sorted
    let mut word = Vec::with_capacity(poset.size());
    word.extend_from_slice(&buckets[0]);
    for (i, &label) in v.iter().enumerate() {
        word.push(label);
        word.extend_from_slice(&buckets[i + 1]);
    }
    debug_assert!(check_word(poset, &word).is_ok());
    debug_assert!(deleted.is_subset(&deletable_unchecked(poset, &word)));
    Ok(Restoration {
        extension: LinearExtension(word),
        buckets,
    })
}
