//! Cross-checks of the extension-based results against the brute-force oracles
//! and the closed forms. Every check records a counterexample on failure.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::corpus::CorpusEntry;
use crate::extension::EnumOptions;
use crate::order_poly::{extended_oracle_eval, extended_with, ExtendedOrderPolynomial};
use crate::poly::{
    antichain_closed_form, chain_closed_form, two_by_m_determinant, BivariatePolynomial,
};
use crate::poset::{Builtin, Poset};
use crate::{oracle, Result};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub poset: String,
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "ok" } else { "MISMATCH" };
        write!(f, "{tag:8} {:24} {}", self.check, self.poset)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.outcomes.extend(other.outcomes);
    }
}

/// Size limits for the individual checks; posets above a limit skip that check.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// `n` runs over `0..=max_n` in the subposet-sum comparison.
    pub max_n: u64,
    /// `n` runs over `0..=omega_max_n` in the map-count comparison.
    pub omega_max_n: u64,
    pub subposet_limit: usize,
    pub permutation_limit: usize,
    pub options: EnumOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_n: 4,
            omega_max_n: 6,
            subposet_limit: 12,
            permutation_limit: 8,
            options: EnumOptions::unlimited(),
        }
    }
}

struct Checker<'a> {
    name: &'a str,
    report: VerifyReport,
}

impl Checker<'_> {
    fn record(&mut self, check: &'static str, result: std::result::Result<(), String>) {
        let (passed, detail) = match result {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.report.outcomes.push(CheckOutcome {
            poset: self.name.to_string(),
            check,
            passed,
            detail,
        });
    }
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `E(n, z)` at fixed `n` against the literal sum over all induced subposets.
pub fn check_subposet_sum(
    poset: &Poset,
    e: &ExtendedOrderPolynomial,
    max_n: u64,
) -> std::result::Result<(), String> {
    for n in 0..=max_n {
        let ours = e.poly().substitute_n(&int(n));
        let theirs = extended_oracle_eval(poset, n).map_err(|err| err.to_string())?;
        if ours != theirs {
            return Err(format!(
                "n={n}: extensions give {ours}, subposet sum gives {theirs}"
            ));
        }
    }
    Ok(())
}

fn check_omega(
    poset: &Poset,
    e: &ExtendedOrderPolynomial,
    max_n: u64,
) -> std::result::Result<(), String> {
    let omega = e.omega();
    for n in 0..=max_n {
        let count = oracle::count_strict_maps(poset, n).map_err(|err| err.to_string())?;
        let ours = omega.eval(n);
        if ours != BigRational::from_integer(count.clone().into()) {
            return Err(format!(
                "n={n}: polynomial gives {ours}, direct count {count}"
            ));
        }
    }
    let height = oracle::longest_chain(poset) as u64;
    for n in 0..height {
        if !omega.eval(n).is_zero() {
            return Err(format!("nonzero at n={n} below chain length {height}"));
        }
    }
    Ok(())
}

fn check_shape(poset: &Poset, e: &ExtendedOrderPolynomial) -> std::result::Result<(), String> {
    let p = poset.size() as u32;
    let poly = e.poly();
    if poly.coefficient(0, 0) != int(1) {
        return Err(format!("constant term {}", poly.coefficient(0, 0)));
    }
    let expect = if p == 0 { Some(0) } else { Some(p) };
    if poly.degree_z() != expect || poly.degree_n() != expect {
        return Err(format!(
            "degrees (n {:?}, z {:?}) for size {p}",
            poly.degree_n(),
            poly.degree_z()
        ));
    }
    e.table().check_invariants()
}

fn check_antichains(poset: &Poset, e: &ExtendedOrderPolynomial) -> std::result::Result<(), String> {
    let ours = e.poly().substitute_n(&int(1));
    let counts = oracle::antichain_counts(poset).map_err(|err| err.to_string())?;
    let direct = counts
        .iter()
        .enumerate()
        .fold(BivariatePolynomial::zero(), |acc, (k, c)| {
            acc + BivariatePolynomial::monomial(
                BigRational::from_integer(c.clone().into()),
                0,
                k as u32,
            )
        });
    if ours != direct {
        return Err(format!("E(1,z) = {ours}, antichains give {direct}"));
    }
    Ok(())
}

fn check_count(poset: &Poset, e: &ExtendedOrderPolynomial) -> std::result::Result<(), String> {
    let direct = oracle::extensions_by_permutation(poset).map_err(|err| err.to_string())?;
    let total = e.table().total();
    if total != direct.len().into() {
        return Err(format!(
            "table total {total}, permutation count {}",
            direct.len()
        ));
    }
    Ok(())
}

fn check_closed_form(
    b: Builtin,
    e: &ExtendedOrderPolynomial,
) -> Option<(&'static str, std::result::Result<(), String>)> {
    let (name, expect) = match b {
        Builtin::Chain(p) => ("chain closed form", chain_closed_form(p)),
        Builtin::Antichain(p) => ("antichain closed form", antichain_closed_form(p)),
        Builtin::Grid(2, m) | Builtin::Grid(m, 2) if m >= 1 => (
            "two-row determinant",
            two_by_m_determinant(m).expect("m >= 1"),
        ),
        _ => return None,
    };
    let result = if e.poly() == &expect {
        Ok(())
    } else {
        Err(format!("computed {} but closed form is {expect}", e.poly()))
    };
    Some((name, result))
}

fn check_hooks(l: u32, m: u32, e: &ExtendedOrderPolynomial) -> std::result::Result<(), String> {
    let hooks = oracle::hook_length_count(l, m);
    if e.table().total() != hooks {
        return Err(format!(
            "table total {}, hook length formula {hooks}",
            e.table().total()
        ));
    }
    Ok(())
}

/// Runs every applicable check on one poset.
pub fn verify_poset(entry: &CorpusEntry, config: &VerifyConfig) -> Result<VerifyReport> {
    let poset = &entry.poset;
    let e = extended_with(poset, &config.options)?;
    let mut c = Checker {
        name: &entry.name,
        report: VerifyReport::default(),
    };
    let p = poset.size();
    c.record("shape", check_shape(poset, &e));
    if p <= config.subposet_limit {
        c.record("subposet sum", check_subposet_sum(poset, &e, config.max_n));
    }
    if p <= 16 {
        c.record(
            "strict map count",
            check_omega(poset, &e, config.omega_max_n),
        );
    }
    if p <= 20 {
        c.record("antichain identity", check_antichains(poset, &e));
    }
    if p <= config.permutation_limit {
        c.record("extension count", check_count(poset, &e));
    }
    if let Some(b) = entry.builtin {
        if let Some((name, result)) = check_closed_form(b, &e) {
            c.record(name, result);
        }
        if let Builtin::Grid(l, m) = b {
            if l >= 1 && m >= 1 {
                c.record("hook length count", check_hooks(l, m, &e));
            }
        }
    }
    Ok(c.report)
}

pub fn verify_corpus(corpus: &[CorpusEntry], config: &VerifyConfig) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for entry in corpus {
        report.extend(verify_poset(entry, config)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::poly::StructuredTable;

    #[test]
    fn families_pass() {
        let report = verify_corpus(&corpus::families(), &VerifyConfig::default()).unwrap();
        assert!(
            report.passed(),
            "{:?}",
            report.failures().collect::<Vec<_>>()
        );
        assert!(report
            .outcomes
            .iter()
            .any(|o| o.check == "two-row determinant"));
        assert!(report
            .outcomes
            .iter()
            .any(|o| o.check == "hook length count"));
    }

    #[test]
    fn detects_a_wrong_table() {
        let chain = Builtin::Chain(3).build();
        // chain(3) has a single extension; claiming a second one breaks both checks
        let wrong = ExtendedOrderPolynomial::from_table(StructuredTable::from_entries(
            3,
            [((0, 0), 1), ((1, 2), 1)],
        ));
        let err = check_subposet_sum(&chain, &wrong, 2).unwrap_err();
        assert!(err.starts_with("n=1"), "{err}");
        assert!(check_count(&chain, &wrong).is_err());
        assert!(check_antichains(&chain, &wrong).is_err());
    }
}
