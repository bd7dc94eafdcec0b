use std::collections::BTreeSet;
use std::fmt::Display;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;
use std::time::Instant;

use ordopoly_core::corpus::{self, CorpusEntry};
use ordopoly_core::extension::{histogram, DEFAULT_CLASS_GUARD};
use ordopoly_core::poset::PosetDocument;
use ordopoly_core::verify::{verify_corpus, verify_poset, VerifyConfig, VerifyReport};
use ordopoly_core::{
    class_partition, enumerate_extensions, extended_with, BigInt, BigRational, Builtin, Error,
    ExtendedOrderPolynomial, ExtensionStats, Label, LinearExtension, Poset, Result,
    StructuredTable,
};
use serde_json::{json, Value};

use crate::{Format, GlobalArgs};

struct Loaded {
    name: String,
    poset: Poset,
    builtin: Option<Builtin>,
}

fn io_error(what: &str, err: io::Error) -> Error {
    Error::Parse {
        line: 0,
        message: format!("{what}: {err}"),
    }
}

fn load(source: &str) -> Result<Loaded> {
    let read_file = |text: String| -> Result<Loaded> {
        Ok(Loaded {
            name: source.to_string(),
            poset: PosetDocument::parse(&text)?.build()?,
            builtin: None,
        })
    };
    if source == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| io_error("stdin", e))?;
        return read_file(text);
    }
    if Path::new(source).exists() {
        let text = std::fs::read_to_string(source).map_err(|e| io_error(source, e))?;
        return read_file(text);
    }
    let b: Builtin = source.parse()?;
    Ok(Loaded {
        name: b.to_string(),
        poset: b.build(),
        builtin: Some(b),
    })
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    out!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn braces<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn show_word(w: &LinearExtension) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        w.to_string()
    }
}

fn budget_error(budget: u64, visited: u64, size: usize) -> Error {
    Error::BudgetExceeded {
        budget,
        visited,
        partial: Box::new(StructuredTable::new(size as u32)),
    }
}

/// Extensions in lexicographic order, stopping with an error past the budget.
fn budgeted<'a>(
    g: &GlobalArgs,
    poset: &'a Poset,
) -> impl Iterator<Item = Result<LinearExtension>> + 'a {
    let budget = g.options().budget;
    enumerate_extensions(poset)
        .enumerate()
        .map(move |(i, w)| match budget {
            Some(b) if i as u64 >= b => Err(budget_error(b, i as u64 + 1, poset.size())),
            _ => Ok(w),
        })
}

pub fn validate(g: &GlobalArgs, source: &str) -> Result<()> {
    let l = load(source)?;
    let p = &l.poset;
    p.check_invariants().map_err(Error::InvalidSelection)?;
    let covers: Vec<[Label; 2]> = p.covers().into_iter().map(|(a, b)| [a, b]).collect();
    match g.format {
        Format::Json => print_json(&json!({
            "poset": l.name,
            "p": p.size(),
            "elements": p.elements(),
            "covers": covers,
            "relations": p.relations().len(),
            "height": p.height(),
            "valid": true,
        })),
        Format::Text => {
            out!("poset:     {}", l.name);
            out!("elements:  {}", p.size());
            out!(
                "covers:    {}",
                p.covers()
                    .iter()
                    .map(|(a, b)| format!("{a}<{b}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            out!("relations: {}", p.relations().len());
            out!("height:    {}", p.height());
            out!("valid naturally labeled poset");
            Ok(())
        }
    }
}

pub fn extensions(g: &GlobalArgs, source: &str, count_only: bool) -> Result<()> {
    let l = load(source)?;
    if count_only {
        let total = histogram(&l.poset, &g.options())?.total();
        return match g.format {
            Format::Json => print_json(&json!({ "count": total })),
            Format::Text => {
                out!("{total}");
                Ok(())
            }
        };
    }
    match g.format {
        Format::Json => {
            let words = budgeted(g, &l.poset)
                .map(|w| w.map(|w| w.to_string()))
                .collect::<Result<Vec<_>>>()?;
            print_json(&json!({ "count": words.len(), "extensions": words }))
        }
        Format::Text => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            for w in budgeted(g, &l.poset) {
                if writeln!(out, "{}", show_word(&w?)).is_err() {
                    break;
                }
            }
            Ok(())
        }
    }
}

fn stats_json(w: &LinearExtension, s: &ExtensionStats) -> Value {
    json!({
        "word": w.to_string(),
        "des": s.des(),
        "descents": s.descents,
        "deletable": s.deletable,
        "fixed": s.fixed(),
    })
}

fn stats_line(w: &LinearExtension, s: &ExtensionStats) -> String {
    format!(
        "{}  des={} descents={} Del={} fixed={}",
        show_word(w),
        s.des(),
        braces(&s.descents),
        braces(&s.deletable),
        s.fixed()
    )
}

pub fn analyze(g: &GlobalArgs, source: &str, word: Option<&str>) -> Result<()> {
    let l = load(source)?;
    let words: Vec<LinearExtension> = match word {
        Some(w) => vec![w.parse()?],
        None => budgeted(g, &l.poset).collect::<Result<_>>()?,
    };
    let mut rows = Vec::with_capacity(words.len());
    for w in &words {
        rows.push((w, ExtensionStats::of(&l.poset, w.word())?));
    }
    match g.format {
        Format::Json => {
            let items: Vec<Value> = rows.iter().map(|(w, s)| stats_json(w, s)).collect();
            if word.is_some() {
                print_json(&items[0])
            } else {
                print_json(&items)
            }
        }
        Format::Text => {
            for (w, s) in &rows {
                out!("{}", stats_line(w, s));
            }
            Ok(())
        }
    }
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `sum_l (number of extensions with l descents) C(n+l, p)`.
fn omega_binomial_form(table: &StructuredTable) -> (String, Vec<Value>) {
    let mut by_des = std::collections::BTreeMap::<u32, ordopoly_core::BigUint>::new();
    for ((l, _), e) in table.entries() {
        *by_des.entry(l).or_default() += e;
    }
    let p = table.size();
    let terms: Vec<String> = by_des
        .iter()
        .map(|(l, e)| {
            let c = if *l == 0 {
                format!("C(n,{p})")
            } else {
                format!("C(n+{l},{p})")
            };
            if *e == 1u32.into() {
                c
            } else {
                format!("{e} {c}")
            }
        })
        .collect();
    let json = by_des
        .iter()
        .map(|(l, e)| json!({ "des": l, "count": e.to_string() }))
        .collect();
    (terms.join(" + "), json)
}

pub fn omega(g: &GlobalArgs, source: &str, n: Option<u64>, symbolic: bool) -> Result<()> {
    let l = load(source)?;
    let e = extended_with(&l.poset, &g.options())?;
    let om = e.omega();
    let (binomial, binomial_json) = omega_binomial_form(e.table());
    let value = n.map(|n| om.eval(n));
    let show_poly = symbolic || n.is_none();
    match g.format {
        Format::Json => {
            let mut out = json!({ "p": l.poset.size() });
            if show_poly {
                out["binomial"] = Value::Array(binomial_json);
                out["poly"] = serde_json::to_value(om.poly.to_json())?;
            }
            if let (Some(n), Some(v)) = (n, &value) {
                out["n"] = json!(n);
                out["value"] = json!(v.to_string());
            }
            print_json(&out)
        }
        Format::Text => {
            if show_poly {
                out!("Omega(n) = {binomial}");
                out!("         = {}", om.poly);
            }
            if let (Some(n), Some(v)) = (n, value) {
                out!("Omega({n}) = {v}");
            }
            Ok(())
        }
    }
}

fn print_table_text(e: &ExtendedOrderPolynomial) {
    out!("table (des fixed count):");
    for ((l, f), c) in e.table().entries() {
        out!("  {l} {f} {c}");
    }
}

pub fn epoly(
    g: &GlobalArgs,
    source: &str,
    n: Option<u64>,
    z: Option<BigRational>,
    symbolic: bool,
) -> Result<()> {
    let l = load(source)?;
    let e = extended_with(&l.poset, &g.options())?;
    let evaluating = n.is_some() || z.is_some();
    let substituted = match (n, &z) {
        (Some(n), Some(z)) => Some(e.poly().substitute_n(&int(n)).eval(&int(0), z)),
        _ => None,
    };
    let partial = match (n, &z) {
        (Some(n), None) => Some(e.poly().substitute_n(&int(n))),
        (None, Some(z)) => Some(e.poly().substitute_z(z)),
        _ => None,
    };
    let show_n = n.map_or("n".to_string(), |n| n.to_string());
    let show_z = z.as_ref().map_or("z".to_string(), |z| z.to_string());
    match g.format {
        Format::Json => {
            if !evaluating {
                return print_json(&e.to_json());
            }
            let mut out = json!({});
            if let Some(n) = n {
                out["n"] = json!(n);
            }
            if let Some(z) = &z {
                out["z"] = json!(z.to_string());
            }
            if let Some(v) = &substituted {
                out["value"] = json!(v.to_string());
            }
            if let Some(p) = &partial {
                out["poly"] = serde_json::to_value(p.to_json())?;
            }
            if symbolic {
                out["epoly"] = serde_json::to_value(e.to_json())?;
            }
            print_json(&out)
        }
        Format::Text => {
            if !evaluating || symbolic {
                out!("E(n,z) = {}", e.poly());
                out!("{}", e.table().pretty());
                print_table_text(&e);
            }
            if let Some(v) = substituted {
                out!("E({show_n},{show_z}) = {v}");
            }
            if let Some(p) = partial {
                out!("E({show_n},{show_z}) = {p}");
            }
            Ok(())
        }
    }
}

pub fn classes(g: &GlobalArgs, source: &str) -> Result<()> {
    let l = load(source)?;
    let partition = class_partition(&l.poset, DEFAULT_CLASS_GUARD)?;
    match g.format {
        Format::Json => print_json(&partition.to_json()),
        Format::Text => {
            for c in &partition.classes {
                let members: Vec<String> = c.members.iter().map(show_word).collect();
                out!(
                    "[{}] des={} del={}: {}",
                    show_word(&c.root),
                    c.des,
                    c.del(),
                    members.join(" | ")
                );
            }
            let union: BTreeSet<_> = partition.union();
            out!(
                "{} classes, {} members, {} distinct",
                partition.classes.len(),
                partition.total_members(),
                union.len()
            );
            Ok(())
        }
    }
}

pub fn verify(g: &GlobalArgs, source: Option<&str>, max_n: u64, seed: u64) -> Result<()> {
    let config = VerifyConfig {
        max_n,
        options: g.options(),
        ..VerifyConfig::default()
    };
    let report: VerifyReport = match source {
        Some(s) => {
            let l = load(s)?;
            let entry = CorpusEntry {
                name: l.name,
                poset: l.poset,
                builtin: l.builtin,
            };
            verify_poset(&entry, &config)?
        }
        None => verify_corpus(&corpus::builtin(seed), &config)?,
    };
    let failures = report.failures().count();
    match g.format {
        Format::Json => print_json(&json!({
            "checks": report.outcomes.len(),
            "failures": failures,
            "outcomes": report.outcomes,
        }))?,
        Format::Text => {
            if source.is_some() {
                for o in &report.outcomes {
                    out!("{o}");
                }
            } else {
                for o in report.failures() {
                    out!("{o}");
                }
            }
            out!(
                "{} of {} checks passed",
                report.outcomes.len() - failures,
                report.outcomes.len()
            );
        }
    }
    if failures > 0 {
        return Err(Error::Mismatch(format!("{failures} checks failed")));
    }
    Ok(())
}

pub fn bench(g: &GlobalArgs, sources: &[String]) -> Result<()> {
    let defaults = ["grid:3,3", "grid:3,4", "grid:4,4", "grid:4,5"];
    let sources: Vec<&str> = if sources.is_empty() {
        defaults.to_vec()
    } else {
        sources.iter().map(String::as_str).collect()
    };
    let options = g.options();
    let mut rows = Vec::new();
    for s in sources {
        let l = load(s)?;
        let start = Instant::now();
        let hist = histogram(&l.poset, &options)?;
        let secs = start.elapsed().as_secs_f64();
        let table = StructuredTable::from_histogram(&hist);
        let max = table
            .max_entry()
            .map(|(_, v)| v.to_string())
            .unwrap_or_else(|| "0".into());
        let rate = if secs > 0.0 {
            hist.total() as f64 / secs
        } else {
            f64::INFINITY
        };
        rows.push(json!({
            "poset": l.name,
            "extensions": hist.total(),
            "seconds": secs,
            "extensions_per_second": rate.round(),
            "table_entries": table.len(),
            "max_entry": max,
        }));
    }
    match g.format {
        Format::Json => print_json(&rows),
        Format::Text => {
            out!(
                "{:<14} {:>12} {:>10} {:>14} {:>8} {:>12}",
                "poset",
                "extensions",
                "seconds",
                "ext/s",
                "entries",
                "max entry"
            );
            for r in &rows {
                out!(
                    "{:<14} {:>12} {:>10.4} {:>14.0} {:>8} {:>12}",
                    r["poset"].as_str().unwrap_or_default(),
                    r["extensions"].as_u64().unwrap_or_default(),
                    r["seconds"].as_f64().unwrap_or_default(),
                    r["extensions_per_second"].as_f64().unwrap_or_default(),
                    r["table_entries"].as_u64().unwrap_or_default(),
                    r["max_entry"].as_str().unwrap_or_default(),
                );
            }
            Ok(())
        }
    }
}
