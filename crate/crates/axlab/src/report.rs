//! Text, JSON and CSV renderings of models, verdicts and experiment
//! reports.
//!
//! JSON and CSV are stable machine formats; the text layout is for people.

use std::fmt::Write;

use axlab_core::experiments::{Evidence, ExperimentReport, Item, Status};
use axlab_core::finder::MinimalityResult;
use axlab_core::model::{format_triples_for, FiniteModel};
use axlab_core::prover::EntailmentVerdict;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

/// `{"n":3,"rels":{"sb":["123","321"]},"consts":{}}`, elements 1-based.
/// Past nine elements tuples become arrays of numbers.
pub fn model_json(m: &FiniteModel) -> Value {
    let mut rels = Map::new();
    for (name, _) in m.relations() {
        let tuples: Vec<Value> = m
            .tuples(name)
            .into_iter()
            .map(|t| {
                if m.size() <= 9 {
                    Value::String(t.iter().map(|e| char::from(b'1' + *e as u8)).collect())
                } else {
                    Value::Array(t.iter().map(|e| json!(e + 1)).collect())
                }
            })
            .collect();
        rels.insert(name.to_string(), Value::Array(tuples));
    }
    let consts: Map<String, Value> = m.constants().map(|(c, e)| (c.to_string(), json!(e + 1))).collect();
    json!({ "n": m.size(), "rels": rels, "consts": consts })
}

/// One line per relation, `sb: 123, 321`, then constants.
pub fn model_text(m: &FiniteModel) -> String {
    let mut out = format!("size {}\n", m.size());
    for (name, _) in m.relations() {
        let _ = writeln!(out, "{name}: {}", format_triples_for(m, name));
    }
    for (c, e) in m.constants() {
        let _ = writeln!(out, "{c} = {}", e + 1);
    }
    out
}

/// Relations on one line, for tables: `sb: 123 | wb: 111, 112`.
pub fn model_inline(m: &FiniteModel) -> String {
    let parts: Vec<String> = m.relations().map(|(name, _)| format!("{name}: {}", format_triples_for(m, name))).collect();
    parts.join(" | ")
}

pub fn minimality_json(r: &MinimalityResult) -> Value {
    json!({
        "pattern": r.pattern.as_ref().map(|p| p.to_string()),
        "cap": r.cap,
        "size": r.size,
        "refuted": r.refuted,
        "witness": r.witness.as_ref().map(model_json),
    })
}

pub fn verdict_json(v: &EntailmentVerdict) -> Value {
    match v {
        EntailmentVerdict::Proved(p) => {
            json!({ "verdict": "proved", "used": p.used, "goal_used": p.goal_used, "depth": p.depth })
        }
        EntailmentVerdict::Countermodel(m) => json!({ "verdict": "countermodel", "model": model_json(m) }),
        EntailmentVerdict::Unknown { depth_cap, size_cap } => {
            json!({ "verdict": "unknown", "depth_cap": depth_cap, "size_cap": size_cap })
        }
    }
}

fn evidence_json(e: &Evidence) -> Value {
    match e {
        Evidence::Minimality(r) => minimality_json(r),
        Evidence::Entailment { verdict, cross_checked } => {
            let mut v = verdict_json(verdict);
            v["cross_checked"] = json!(cross_checked);
            v
        }
        Evidence::Printed { model, holds } => json!({ "model": model_json(model), "holds": holds }),
    }
}

fn item_json(i: &Item) -> Value {
    json!({
        "key": i.key,
        "computed": i.computed,
        "expected": i.expected,
        "source": i.source,
        "status": i.status.as_str(),
        "validated": i.validated,
        "evidence": evidence_json(&i.evidence),
    })
}

/// Timing is left out unless `timing` is set, so output is reproducible.
pub fn report_json(r: &ExperimentReport, timing: bool) -> Value {
    let mut v = json!({
        "experiment": r.name,
        "items": r.items.iter().map(item_json).collect::<Vec<_>>(),
        "notes": r.notes,
        "counts": counts_json(r),
    });
    if timing {
        v["elapsed_ms"] = json!(r.elapsed_ms);
    }
    v
}

fn counts_json(r: &ExperimentReport) -> Value {
    json!({
        "match": r.count(Status::Match),
        "mismatch": r.count(Status::Mismatch),
        "conflicting": r.count(Status::Conflicting),
        "no_expectation": r.count(Status::NoExpectation),
        "unvalidated": r.items.iter().filter(|i| !i.validated).count(),
        "unknown": r.has_unknown(),
    })
}

/// Short description of an item's evidence for tables.
fn evidence_text(e: &Evidence) -> String {
    match e {
        Evidence::Minimality(r) => r.witness.as_ref().map(model_inline).unwrap_or_default(),
        Evidence::Entailment { verdict: EntailmentVerdict::Proved(p), .. } => format!("uses {}", p.used.join(", ")),
        Evidence::Entailment { verdict: EntailmentVerdict::Countermodel(m), .. } => {
            format!("size {} {}", m.size(), model_inline(m))
        }
        Evidence::Entailment { verdict: EntailmentVerdict::Unknown { depth_cap, size_cap }, .. } => {
            format!("bounds depth {depth_cap}, size {size_cap}")
        }
        Evidence::Printed { model, .. } => model_inline(model),
    }
}

pub fn report_csv(r: &ExperimentReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["experiment", "key", "computed", "expected", "status", "validated", "evidence", "source"]).unwrap();
    for i in &r.items {
        w.write_record([
            r.name,
            &i.key,
            &i.computed,
            i.expected.as_deref().unwrap_or(""),
            i.status.as_str(),
            if i.validated { "true" } else { "false" },
            &evidence_text(&i.evidence),
            i.source.unwrap_or(""),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn paint(status: Status, color: bool) -> String {
    let word = status.as_str();
    if !color {
        return word.to_string();
    }
    let code = match status {
        Status::Match => "32",
        Status::Mismatch => "31",
        Status::Conflicting => "33",
        Status::NoExpectation => "2",
    };
    format!("\x1b[{code}m{word}\x1b[0m")
}

fn table(rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> =
        (0..rows[0].len()).map(|c| rows.iter().map(|r| visible_len(&r[c])).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell}{}", " ".repeat(w - visible_len(cell))))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

/// Length ignoring ANSI color sequences.
fn visible_len(s: &str) -> usize {
    let mut n = 0;
    let mut escape = false;
    for c in s.chars() {
        match (escape, c) {
            (false, '\x1b') => escape = true,
            (true, 'm') => escape = false,
            (false, _) => n += 1,
            _ => {}
        }
    }
    n
}

pub fn report_text(r: &ExperimentReport, color: bool) -> String {
    let mut out = format!("== {}\n", r.name);
    let mut rows = vec![if r.name == "table1" {
        ["A B C D 9", "min", "expected", "status", "witness"].map(String::from).to_vec()
    } else {
        ["item", "computed", "expected", "status", "evidence"].map(String::from).to_vec()
    }];
    for i in &r.items {
        let key = if r.name == "table1" && !i.key.contains('/') {
            i.key.chars().map(String::from).collect::<Vec<_>>().join(" ")
        } else {
            i.key.clone()
        };
        let mut status = paint(i.status, color);
        if !i.validated {
            status.push_str(" (unvalidated)");
        }
        rows.push(vec![key, i.computed.clone(), i.expected.clone().unwrap_or_default(), status, evidence_text(&i.evidence)]);
    }
    out.push_str(&table(&rows));
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(
        out,
        "{} match, {} mismatch, {} conflicting, {} without expectation",
        r.count(Status::Match),
        r.count(Status::Mismatch),
        r.count(Status::Conflicting),
        r.count(Status::NoExpectation)
    );
    if let Some(ms) = r.elapsed_ms {
        let _ = writeln!(out, "elapsed {ms} ms");
    }
    out
}

pub fn render(r: &ExperimentReport, format: Format, color: bool, timing: bool) -> String {
    match format {
        Format::Text => report_text(r, color),
        Format::Json => serde_json::to_string_pretty(&report_json(r, timing)).unwrap() + "\n",
        Format::Csv => report_csv(r),
    }
}

/// Summary across experiments in the requested format.
pub fn summary(reports: &[ExperimentReport], format: Format, timing: bool) -> String {
    match format {
        Format::Json => {
            let items: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let mut v = json!({ "experiment": r.name, "counts": counts_json(r) });
                    if timing {
                        v["elapsed_ms"] = json!(r.elapsed_ms);
                    }
                    v
                })
                .collect();
            serde_json::to_string_pretty(&json!({ "experiments": items, "exit_code": exit_code(reports) })).unwrap() + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["experiment", "match", "mismatch", "conflicting", "no_expectation", "unvalidated", "unknown"])
                .unwrap();
            for r in reports {
                w.write_record([
                    r.name.to_string(),
                    r.count(Status::Match).to_string(),
                    r.count(Status::Mismatch).to_string(),
                    r.count(Status::Conflicting).to_string(),
                    r.count(Status::NoExpectation).to_string(),
                    r.items.iter().filter(|i| !i.validated).count().to_string(),
                    r.has_unknown().to_string(),
                ])
                .unwrap();
            }
            String::from_utf8(w.into_inner().unwrap()).unwrap()
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let _ = writeln!(
                    out,
                    "{:12} {:3} match  {:3} mismatch  {:3} conflicting",
                    r.name,
                    r.count(Status::Match),
                    r.count(Status::Mismatch),
                    r.count(Status::Conflicting)
                );
            }
            out
        }
    }
}

/// 3 if anything stayed undecided, else 1 on any mismatch or failed
/// revalidation, else 0.
pub fn exit_code(reports: &[ExperimentReport]) -> i32 {
    if reports.iter().any(|r| r.has_unknown()) {
        3
    } else if reports.iter().any(|r| r.count(Status::Mismatch) > 0 || !r.all_validated()) {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use axlab_core::model::parse_triples;

    #[test]
    fn model_json_shape() {
        let m = parse_triples("123, 321", 3).unwrap();
        assert_eq!(model_json(&m).to_string(), r#"{"consts":{},"n":3,"rels":{"sb":["123","321"]}}"#);
    }

    #[test]
    fn widths_ignore_color() {
        assert_eq!(visible_len(&paint(Status::Match, true)), 5);
    }
}
