use std::fmt;
use std::str::FromStr;

use super::{canonicalize, from_covers, Label, Poset};
use crate::{Error, Result};

/// The chain `1 < 2 < ... < p`.
pub fn chain(p: u32) -> Poset {
    let covers: Vec<_> = (1..p).map(|a| (a, a + 1)).collect();
    from_covers(p, &covers).expect("chain covers are natural")
}

/// `p` pairwise incomparable elements.
pub fn antichain(p: u32) -> Poset {
    from_covers(p, &[]).expect("no covers")
}

/// The product of chains `l x m`, ordered componentwise. Element `(i, j)` with
/// `1 <= i <= l`, `1 <= j <= m` carries label `(i - 1) * m + j`.
pub fn grid(l: u32, m: u32) -> Poset {
    let label = |i: u32, j: u32| (i - 1) * m + j;
    let mut covers = Vec::new();
    for i in 1..=l {
        for j in 1..=m {
            if i < l {
                covers.push((label(i, j), label(i + 1, j)));
            }
            if j < m {
                covers.push((label(i, j), label(i, j + 1)));
            }
        }
    }
    from_covers(l * m, &covers).expect("grid covers are natural")
}

/// The zigzag `a1 < a2 > a3 < a4 > ...` on `m` elements, starting with a minimal
/// element, relabeled by [`canonicalize`].
pub fn fence(m: u32) -> Poset {
    let covers: Vec<(Label, Label)> = (1..m)
        .map(|i| if i % 2 == 1 { (i, i + 1) } else { (i + 1, i) })
        .collect();
    canonicalize(m, &covers).expect("fence is acyclic").0
}

/// A named poset family with its size parameters, as written on the command
/// line: `chain:p`, `antichain:p`, `grid:l,m`, `fence:m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Chain(u32),
    Antichain(u32),
    Grid(u32, u32),
    Fence(u32),
}

impl Builtin {
    pub fn build(self) -> Poset {
        match self {
            Builtin::Chain(p) => chain(p),
            Builtin::Antichain(p) => antichain(p),
            Builtin::Grid(l, m) => grid(l, m),
            Builtin::Fence(m) => fence(m),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Chain(p) => write!(f, "chain:{p}"),
            Builtin::Antichain(p) => write!(f, "antichain:{p}"),
            Builtin::Grid(l, m) => write!(f, "grid:{l},{m}"),
            Builtin::Fence(m) => write!(f, "fence:{m}"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: String| Error::Parse { line: 0, message };
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| bad(format!("expected <family>:<size>, got `{s}`")))?;
        let nums = args
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<u32>()
                    .map_err(|e| bad(format!("bad size `{a}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match (kind.trim(), nums.as_slice()) {
            ("chain", &[p]) => Ok(Builtin::Chain(p)),
            ("antichain", &[p]) => Ok(Builtin::Antichain(p)),
            ("grid", &[l, m]) => Ok(Builtin::Grid(l, m)),
            ("fence", &[m]) => Ok(Builtin::Fence(m)),
            _ => Err(bad(format!("unknown poset family `{s}`"))),
        }
    }
}
