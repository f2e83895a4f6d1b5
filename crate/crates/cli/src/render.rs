//! Plain-text rendering. Every field of the JSON output appears here too.

use std::fmt::Write;

use coordlogic::boolean::{Assignment, LawVerdict};
use coordlogic::implicature::{BeliefModel, Polarity};
use coordlogic::probability::{SearchResult, SearchStatus};
use coordlogic::prospect::OptionComparison;
use coordlogic::report::{PairRow, RecordStatus};
use coordlogic::{EpistemicConstraint, Judgment, Mode, Status};

use crate::{DenoteOutput, Output, ProbOutput};

pub fn text(output: &Output) -> String {
    let mut s = String::new();
    match output {
        Output::Laws(rows) => {
            for row in rows {
                let _ = writeln!(s, "{}: {} = {}", row.law, row.lhs, row.rhs);
                let _ = writeln!(s, "  {}", verdict(&row.verdict));
            }
        }
        Output::Denote(d) => denote(&mut s, d),
        Output::Judge(table) => {
            for row in &table.rows {
                let _ = writeln!(s, "{}: {}", row.item, row.formula);
                judgment(&mut s, &row.judgment);
            }
            for pair in &table.pairs {
                pair_row(&mut s, pair);
            }
        }
        Output::Equiv(pair) => pair_row(&mut s, pair),
        Output::Implicatures(r) => {
            let _ = writeln!(s, "formula: {}", r.formula);
            let _ = writeln!(s, "mode: {}", mode(&r.mode));
            let _ = writeln!(s, "accepted:");
            for c in &r.accepted {
                let _ = writeln!(s, "  {}", constraint(c));
            }
            let _ = writeln!(s, "suppressed:");
            for sup in &r.suppressed {
                let clashes: Vec<String> = sup.clashes_with.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(
                    s,
                    "  {} clashes with {}",
                    constraint(&sup.constraint),
                    clashes.join(", ")
                );
            }
            let _ = writeln!(s, "model: {}", model(&r.model));
        }
        Output::Prob(ProbOutput::Search(r)) => search(&mut s, r),
        Output::Prob(ProbOutput::Explosion(e)) => {
            let _ = writeln!(s, "denominator: {}", e.denominator);
            let _ = writeln!(s, "checked: {}", e.checked);
            let _ = writeln!(s, "holds: {}", e.holds);
        }
        Output::Reproduce(r) => {
            for rec in &r.records {
                let status = match rec.status {
                    RecordStatus::Match => "MATCH",
                    RecordStatus::Mismatch => "MISMATCH",
                };
                let _ = write!(
                    s,
                    "{status} [{}] {} inputs={} expected={} computed={}",
                    rec.criterion, rec.claim, rec.inputs, rec.expected, rec.computed
                );
                if !rec.detail.is_empty() {
                    let _ = write!(s, " detail={}", rec.detail);
                }
                s.push('\n');
            }
            let _ = writeln!(s, "matched: {}", r.matched);
            let _ = writeln!(s, "mismatched: {}", r.mismatched);
        }
    }
    s
}

fn assignment(a: &Assignment) -> String {
    let parts: Vec<String> = a
        .iter()
        .map(|(k, v)| format!("{k}={}", if *v { 1 } else { 0 }))
        .collect();
    format!("{{{}}}", parts.join(","))
}

fn verdict(v: &LawVerdict) -> String {
    match (&v.status, &v.counterexample) {
        (Status::Valid, _) => "valid".to_string(),
        (Status::Invalid, None) => "invalid".to_string(),
        (Status::Invalid, Some(c)) => {
            let binding: Vec<String> = c.binding.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!(
                "invalid binding={{{}}} assignment={} lhs={} rhs={}",
                binding.join(","),
                assignment(&c.assignment),
                c.lhs,
                c.rhs
            )
        }
    }
}

fn denote(s: &mut String, d: &DenoteOutput) {
    let _ = writeln!(s, "{}: {}", d.item, d.formula);
    judgment(s, &d.judgment);
}

fn judgment(s: &mut String, j: &Judgment) {
    let _ = writeln!(s, "  category: {}", j.category);
    let _ = writeln!(s, "  options: {}", j.options);
    for d in &j.double_images {
        let _ = writeln!(s, "  double image: {} in {}", d.atom, d.option);
    }
    if !j.hobson_nodes.is_empty() {
        let ids: Vec<String> = j.hobson_nodes.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(s, "  hobson nodes: {}", ids.join(","));
    }
}

fn options(c: &OptionComparison) -> String {
    match &c.witness {
        None => "equivalent".to_string(),
        Some(w) => format!("differ witness={w}"),
    }
}

fn pair_row(s: &mut String, p: &PairRow) {
    let _ = writeln!(s, "{} vs {}", p.left, p.right);
    let _ = writeln!(s, "  boolean: {}", verdict(&p.boolean));
    let _ = writeln!(s, "  options: {}", options(&p.options));
}

fn mode(m: &Mode) -> String {
    match m {
        Mode::GazdarDefault => "gazdar_default".to_string(),
        Mode::SoamesConditional { opinionated } => {
            let ids: Vec<String> = opinionated.iter().map(|i| i.to_string()).collect();
            format!("soames_conditional opinionated={{{}}}", ids.join(","))
        }
    }
}

fn constraint(c: &EpistemicConstraint) -> String {
    let provenance = serde_json::to_value(c.provenance).expect("serializes");
    let polarity = match c.polarity {
        Polarity::Knows => "K",
        Polarity::DoesNotKnow => "notK",
    };
    format!(
        "{c} polarity={polarity} provenance={} source={}",
        provenance.as_str().unwrap_or_default(),
        c.source
    )
}

fn model(m: &BeliefModel) -> String {
    let worlds: Vec<String> = m.0.iter().map(assignment).collect();
    format!("[{}]", worlds.join(", "))
}

fn search(s: &mut String, r: &SearchResult) {
    let status = match r.status {
        SearchStatus::NoCounterexample => "no_counterexample",
        SearchStatus::Counterexample => "counterexample",
    };
    let _ = writeln!(s, "status: {status}");
    if let Some(w) = &r.witness {
        let _ = writeln!(s, "witness: {w}");
    }
    let _ = writeln!(s, "checked: {}", r.checked);
    let _ = writeln!(s, "premises met: {}", r.premises_met);
    let _ = writeln!(s, "equality cases: {}", r.equality_cases);
}
