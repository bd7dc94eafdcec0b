//! Brute-force reference computations for verification.
//!
//! Nothing here touches the enumeration, statistics or polynomial code. Each
//! entry point rebuilds its own reachability table from the cover pairs and
//! counts things the slow way.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::poset::{Label, Poset};
use crate::{Error, Result};

/// Reachability over a poset's elements, rebuilt by depth-first search from
/// adjacency lists of the covers.
#[derive(Clone, Debug)]
pub struct OracleRelation {
    labels: Vec<Label>,
    below: Vec<Vec<bool>>,
}

impl OracleRelation {
    pub fn new(poset: &Poset) -> Self {
        let labels = poset.elements().to_vec();
        let pos = |l: Label| labels.iter().position(|&x| x == l).expect("cover endpoint");
        let mut adj = vec![Vec::new(); labels.len()];
        for (a, b) in poset.covers() {
            adj[pos(a)].push(pos(b));
        }
        let n = labels.len();
        let mut below = vec![vec![false; n]; n];
        for start in 0..n {
            let mut stack = adj[start].clone();
            while let Some(v) = stack.pop() {
                if !below[start][v] {
                    below[start][v] = true;
                    stack.extend(adj[v].iter().copied());
                }
            }
        }
        Self { labels, below }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// `i <_P j` for element positions `i`, `j`.
    pub fn below(&self, i: usize, j: usize) -> bool {
        self.below[i][j]
    }

    fn restrict(&self, keep: &[usize]) -> OracleRelation {
        OracleRelation {
            labels: keep.iter().map(|&i| self.labels[i]).collect(),
            below: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.below[i][j]).collect())
                .collect(),
        }
    }

    /// Subsets of positions, one per bitmask.
    fn subset(&self, mask: u64) -> Vec<usize> {
        (0..self.len()).filter(|i| mask >> i & 1 == 1).collect()
    }
}

fn guard(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::GuardExceeded {
            what,
            size: size as u64,
            limit: limit as u64,
        })
    } else {
        Ok(())
    }
}

/// Number of strict order-preserving maps `Q -> [n]`.
///
/// A map corresponds to a chain of downsets `{} = I_0 <= I_1 <= ... <= I_n = Q`
/// where `I_v \ I_{v-1}` (the elements sent to `v`) is an antichain; peeling
/// value `v` off a downset `I` removes any subset of the maximal elements of `I`.
pub fn count_strict_maps(q: &Poset, n: u64) -> Result<BigUint> {
    count_maps(&OracleRelation::new(q), n)
}

fn count_maps(rel: &OracleRelation, n: u64) -> Result<BigUint> {
    if rel.len() > 16 && n > 10 {
        return Err(Error::GuardExceeded {
            what: "strict map count",
            size: rel.len() as u64,
            limit: 16,
        });
    }
    guard("strict map count", rel.len(), 63)?;
    let full = if rel.is_empty() {
        0
    } else {
        (1u64 << rel.len()) - 1
    };
    let mut memo = HashMap::new();
    Ok(count_downset(rel, full, n, &mut memo))
}

fn count_downset(
    rel: &OracleRelation,
    set: u64,
    values: u64,
    memo: &mut HashMap<(u64, u64), BigUint>,
) -> BigUint {
    if set == 0 {
        return BigUint::one();
    }
    if values == 0 {
        return BigUint::zero();
    }
    if let Some(v) = memo.get(&(set, values)) {
        return v.clone();
    }
    let members = rel.subset(set);
    let maximal: u64 = members
        .iter()
        .filter(|&&i| !members.iter().any(|&j| rel.below(i, j)))
        .fold(0, |m, &i| m | 1 << i);
    // every submask of the maximal elements, including the empty one
    let mut total = BigUint::zero();
    let mut sub = maximal;
    loop {
        total += count_downset(rel, set & !sub, values - 1, memo);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & maximal;
    }
    memo.insert((set, values), total.clone());
    total
}

/// Counts linear extensions of the `l x m` rectangle with the hook length
/// formula `(lm)! / prod of hooks`.
pub fn hook_length_count(l: u32, m: u32) -> BigUint {
    let cells = (l * m) as u64;
    let numerator: BigUint = (1..=cells).map(BigUint::from).product();
    let hooks: BigUint = (0..l)
        .flat_map(|i| (0..m).map(move |j| BigUint::from((l - i) + (m - j) - 1)))
        .product();
    numerator / hooks
}

/// All antichains as sorted label lists, by brute force over subsets.
pub fn antichains(q: &Poset) -> Result<Vec<Vec<Label>>> {
    let rel = OracleRelation::new(q);
    guard("antichain enumeration", rel.len(), 20)?;
    let mut out = Vec::new();
    for mask in 0u64..1 << rel.len() {
        let members = rel.subset(mask);
        let independent = members
            .iter()
            .tuple_combinations()
            .all(|(&i, &j)| !rel.below(i, j) && !rel.below(j, i));
        if independent {
            out.push(members.iter().map(|&i| rel.labels[i]).collect());
        }
    }
    Ok(out)
}

/// Coefficients of `sum over antichains A of z^#A`, indexed by size.
pub fn antichain_counts(q: &Poset) -> Result<Vec<BigUint>> {
    let mut counts = vec![BigUint::zero(); q.size() + 1];
    for a in antichains(q)? {
        counts[a.len()] += 1u32;
    }
    Ok(counts)
}

fn is_order_preserving(rel: &OracleRelation, order: &[usize]) -> bool {
    order
        .iter()
        .enumerate()
        .all(|(pos, &i)| order[..pos].iter().all(|&j| !rel.below(i, j)))
}

/// Linear extensions by filtering all permutations of the elements.
pub fn extensions_by_permutation(q: &Poset) -> Result<Vec<Vec<Label>>> {
    let rel = OracleRelation::new(q);
    guard("permutation enumeration", rel.len(), 9)?;
    let mut out: Vec<Vec<Label>> = (0..rel.len())
        .permutations(rel.len())
        .filter(|perm| is_order_preserving(&rel, perm))
        .map(|perm| perm.iter().map(|&i| rel.labels[i]).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// The union of the Jordan-Hölder sets of all induced subposets, built from
/// permutations of every subset.
pub fn all_subposet_extensions(q: &Poset) -> Result<BTreeSet<Vec<Label>>> {
    let rel = OracleRelation::new(q);
    guard("subposet extension union", rel.len(), 8)?;
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << rel.len() {
        let keep = rel.subset(mask);
        let sub = rel.restrict(&keep);
        for perm in (0..sub.len()).permutations(sub.len()) {
            if is_order_preserving(&sub, &perm) {
                out.insert(perm.iter().map(|&i| sub.labels[i]).collect());
            }
        }
    }
    Ok(out)
}

/// Coefficients in `z` of `sum over label sets D of (#maps P \ D -> [n]) z^(p - #D)`.
pub fn subposet_map_counts(p: &Poset, n: u64) -> Result<Vec<BigUint>> {
    guard("subposet sum", p.size(), 12)?;
    let rel = OracleRelation::new(p);
    let mut coeffs = vec![BigUint::zero(); p.size() + 1];
    for mask in 0u64..1 << rel.len() {
        let keep = rel.subset(mask);
        coeffs[keep.len()] += count_maps(&rel.restrict(&keep), n)?;
    }
    Ok(coeffs)
}

/// Longest chain length, from the oracle's own reachability table.
pub fn longest_chain(q: &Poset) -> usize {
    let rel = OracleRelation::new(q);
    let mut best = vec![1usize; rel.len()];
    // labels ascend along the order, so positions are already topological
    for j in 0..rel.len() {
        for i in 0..j {
            if rel.below(i, j) {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}
