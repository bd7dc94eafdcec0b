use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::special::{binom, binom_poly};
use super::BivariatePolynomial;
use crate::extension::StatsHistogram;

/// Number of linear extensions with `des` descents and `fixed` fixed labels,
/// for a poset of `size` elements.
///
/// The extended polynomial is recovered as
/// `sum over (l, f) of e[l,f] * sum_k C(size - f, k - f) C(n + l, k) z^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredTable {
    size: u32,
    entries: BTreeMap<(u32, u32), BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntryJson {
    pub des: u32,
    pub fixed: u32,
    pub count: String,
}

impl StructuredTable {
    pub fn new(size: u32) -> Self {
        Self {
            size,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(size: u32, entries: impl IntoIterator<Item = ((u32, u32), u64)>) -> Self {
        let mut table = Self::new(size);
        for ((l, f), c) in entries {
            table.add(l, f, &BigUint::from(c));
        }
        table
    }

    pub fn from_histogram(hist: &StatsHistogram) -> Self {
        Self::from_entries(
            hist.size() as u32,
            hist.entries().map(|((l, f), c)| ((l as u32, f as u32), c)),
        )
    }

    pub fn add(&mut self, des: u32, fixed: u32, count: &BigUint) {
        if count.is_zero() {
            return;
        }
        *self.entries.entry((des, fixed)).or_default() += count;
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn get(&self, des: u32, fixed: u32) -> BigUint {
        self.entries.get(&(des, fixed)).cloned().unwrap_or_default()
    }

    /// Nonzero entries ordered by `des`, then `fixed`.
    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), &BigUint)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Equals the number of linear extensions.
    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Largest entry with its position; ties resolve to the first in order.
    pub fn max_entry(&self) -> Option<((u32, u32), &BigUint)> {
        self.entries.iter().fold(
            None,
            |best: Option<((u32, u32), &BigUint)>, (&k, v)| match best {
                Some((_, b)) if b >= v => best,
                _ => Some((k, v)),
            },
        )
    }

    /// Structural constraints every table of a naturally labeled poset obeys.
    pub fn check_invariants(&self) -> Result<(), String> {
        let p = self.size;
        for &(l, f) in self.entries.keys() {
            if f > p {
                return Err(format!("fixed count {f} exceeds size {p}"));
            }
            if p > 0 && l >= p {
                return Err(format!("{l} descents in a word of length {p}"));
            }
            if l == 0 && f != 0 {
                return Err(format!("descent-free entry with {f} fixed labels"));
            }
            if l >= 1 && f < l + 1 {
                return Err(format!("{l} descents but only {f} fixed labels"));
            }
        }
        if self.get(0, 0) != BigUint::from(1u32) {
            return Err("exactly one descent-free extension expected".into());
        }
        Ok(())
    }

    /// `sum e[l,f] sum_k C(p - f, k - f) C(n + l, k) z^k`.
    pub fn expand(&self) -> BivariatePolynomial {
        let p = self.size as i64;
        let mut binoms: BTreeMap<(u32, u32), BivariatePolynomial> = BTreeMap::new();
        let mut out = BivariatePolynomial::zero();
        for (&(l, f), e) in &self.entries {
            let e = BigInt::from(e.clone());
            for k in f..=self.size {
                let c = binom(p - f as i64, k as i64 - f as i64) * &e;
                let b = binoms
                    .entry((l, k))
                    .or_insert_with(|| binom_poly(l as i64, k));
                out += &b.scale(&BigRational::from_integer(c)).mul_z_pow(k);
            }
        }
        out
    }

    /// `sum_l (sum_f e[l,f]) C(n + l, p)`: the count of strict order-preserving
    /// maps of the whole poset.
    pub fn omega(&self) -> BivariatePolynomial {
        let mut by_des: BTreeMap<u32, BigUint> = BTreeMap::new();
        for (&(l, _), e) in &self.entries {
            *by_des.entry(l).or_default() += e;
        }
        by_des
            .into_iter()
            .fold(BivariatePolynomial::zero(), |acc, (l, e)| {
                acc + binom_poly(l as i64, self.size)
                    .scale(&BigRational::from_integer(BigInt::from(e)))
            })
    }

    pub fn to_json(&self) -> Vec<TableEntryJson> {
        self.entries
            .iter()
            .map(|(&(des, fixed), c)| TableEntryJson {
                des,
                fixed,
                count: c.to_string(),
            })
            .collect()
    }

    pub fn from_json(size: u32, json: &[TableEntryJson]) -> Result<Self, String> {
        let mut table = Self::new(size);
        for e in json {
            let count: BigUint = e
                .count
                .parse()
                .map_err(|err| format!("bad count `{}`: {err}", e.count))?;
            table.add(e.des, e.fixed, &count);
        }
        Ok(table)
    }

    /// Sum-of-binomials layout, one line per descent count:
    ///
    /// ```text
    /// sum_{k=0}^{4} [ C(4,k) C(n,k)
    ///     + C(4-2,k-2) C(n+1,k) ] z^k
    /// ```
    pub fn pretty(&self) -> String {
        let p = self.size;
        let mut by_des: BTreeMap<u32, Vec<(u32, &BigUint)>> = BTreeMap::new();
        for (&(l, f), e) in &self.entries {
            by_des.entry(l).or_default().push((f, e));
        }
        let mut out = format!("sum_{{k=0}}^{{{p}}} [ ");
        for (row, (l, group)) in by_des.iter().enumerate() {
            if row > 0 {
                out.push_str("\n    + ");
            }
            let terms: Vec<String> = group
                .iter()
                .map(|&(f, e)| {
                    let factor = if f == 0 {
                        format!("C({p},k)")
                    } else {
                        format!("C({p}-{f},k-{f})")
                    };
                    if *e == BigUint::from(1u32) {
                        factor
                    } else {
                        format!("{e} {factor}")
                    }
                })
                .collect();
            let lhs = if terms.len() == 1 {
                terms[0].clone()
            } else {
                format!("({})", terms.join(" + "))
            };
            let rhs = if *l == 0 {
                "C(n,k)".to_string()
            } else {
                format!("C(n+{l},k)")
            };
            let _ = write!(out, "{lhs} {rhs}");
        }
        out.push_str(" ] z^k");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two() -> StructuredTable {
        StructuredTable::from_entries(4, [((0, 0), 1), ((1, 2), 1)])
    }

    #[test]
    fn expand_matches_hand_sum() {
        let mut expect = BivariatePolynomial::zero();
        for k in 0..=4u32 {
            let a = binom_poly(0, k).scale(&BigRational::from_integer(binom(4, k as i64)));
            let b = binom_poly(1, k).scale(&BigRational::from_integer(binom(2, k as i64 - 2)));
            expect += &(a + b).mul_z_pow(k);
        }
        assert_eq!(two_by_two().expand(), expect);
    }

    #[test]
    fn pretty_layout() {
        assert_eq!(
            two_by_two().pretty(),
            "sum_{k=0}^{4} [ C(4,k) C(n,k)\n    + C(4-2,k-2) C(n+1,k) ] z^k"
        );
        let t =
            StructuredTable::from_entries(3, [((0, 0), 1), ((1, 2), 3), ((1, 3), 1), ((2, 3), 1)]);
        assert!(t.pretty().contains("(3 C(3-2,k-2) + C(3-3,k-3)) C(n+1,k)"));
    }

    #[test]
    fn invariants() {
        two_by_two().check_invariants().unwrap();
        assert!(StructuredTable::from_entries(4, [((0, 1), 1)])
            .check_invariants()
            .is_err());
        assert!(StructuredTable::from_entries(4, [((0, 0), 1), ((2, 2), 1)])
            .check_invariants()
            .is_err());
    }

    #[test]
    fn max_and_total() {
        let t = StructuredTable::from_entries(3, [((0, 0), 1), ((1, 2), 3), ((1, 3), 3)]);
        assert_eq!(t.total(), BigUint::from(7u32));
        assert_eq!(
            t.max_entry().map(|(k, v)| (k, v.clone())),
            Some(((1, 2), BigUint::from(3u32)))
        );
        assert!(StructuredTable::new(0).max_entry().is_none());
    }

    #[test]
    fn json_round_trip() {
        let t = two_by_two();
        assert_eq!(StructuredTable::from_json(4, &t.to_json()).unwrap(), t);
    }
}
