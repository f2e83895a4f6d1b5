//! Tables and claim records built on top of the semantics modules.
//!
//! [`reproduce`] evaluates every checkable claim about the example corpus
//! and returns one [`ReportRecord`] per claim, each tagged with the
//! acceptance criterion it belongs to.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::boolean::{check_law, equivalent, xor_parity, LawVerdict, Status, MAX_ATOMS};
use crate::corpus::Corpus;
use crate::error::Result;
use crate::formula::Formula;
use crate::implicature::{consistent, project, ImplicatureReport, Mode, Polarity, Provenance};
use crate::law::{atom_binding, standard_law, standard_laws, ConnectiveMap};
use crate::parser::parse;
use crate::probability::{
    check_disjunction_corollary, check_explosion_irrelevance, check_frege_theorem,
    check_frege_without_uncertainty, check_relevance_ordering, grid, SearchResult, SearchStatus,
};
use crate::prospect::{
    denote_options, judge, option_equivalent, Category, Judgment, OptionComparison, OptionSet,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordStatus {
    Match,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    pub claim: String,
    pub criterion: u8,
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub status: RecordStatus,
    /// Witnesses and other supporting output; not part of the comparison.
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl ReportRecord {
    fn new(
        claim: impl Into<String>,
        criterion: u8,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
    ) -> Self {
        let (expected, computed) = (expected.into(), computed.into());
        let status = if expected == computed {
            RecordStatus::Match
        } else {
            RecordStatus::Mismatch
        };
        ReportRecord {
            claim: claim.into(),
            criterion,
            inputs: inputs.into(),
            expected,
            computed,
            status,
            detail: String::new(),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    fn failed(
        claim: impl Into<String>,
        criterion: u8,
        inputs: impl Into<String>,
        expected: impl Into<String>,
        error: impl std::fmt::Display,
    ) -> Self {
        Self::new(
            claim,
            criterion,
            inputs,
            expected,
            format!("error: {error}"),
        )
    }

    pub fn matched(&self) -> bool {
        self.status == RecordStatus::Match
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawRow {
    pub law: String,
    pub lhs: Formula,
    pub rhs: Formula,
    pub verdict: LawVerdict,
}

/// The six standard laws under one connective map.
pub fn law_table(connectives: ConnectiveMap) -> Vec<LawRow> {
    standard_laws(connectives)
        .into_iter()
        .map(|law| {
            let (lhs, rhs) = law.instantiate(&atom_binding()).expect("standard binding");
            LawRow {
                law: law.name.clone(),
                lhs,
                rhs,
                verdict: check_law(&law),
            }
        })
        .collect()
}

/// A corpus label or formula text.
pub fn resolve(item: &str, corpus: &Corpus) -> Result<(String, Formula)> {
    if corpus.contains(item) {
        return Ok((item.to_string(), corpus.get(item)?.clone()));
    }
    let f = parse(item)?;
    Ok((f.to_string(), f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JudgeRow {
    pub item: String,
    pub formula: Formula,
    pub judgment: Judgment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRow {
    pub left: String,
    pub right: String,
    pub boolean: LawVerdict,
    pub options: OptionComparison,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JudgeTable {
    pub rows: Vec<JudgeRow>,
    pub pairs: Vec<PairRow>,
}

/// Judgments for each item and both equivalence notions for every pair.
pub fn judge_table(items: &[String], corpus: &Corpus) -> Result<JudgeTable> {
    let mut resolved = Vec::new();
    for item in items {
        resolved.push(resolve(item, corpus)?);
    }
    let mut rows = Vec::new();
    for (item, formula) in &resolved {
        rows.push(JudgeRow {
            item: item.clone(),
            formula: formula.clone(),
            judgment: judge(formula)?,
        });
    }
    let mut pairs = Vec::new();
    for (i, (li, lf)) in resolved.iter().enumerate() {
        for (ri, rf) in &resolved[i + 1..] {
            pairs.push(PairRow {
                left: li.clone(),
                right: ri.clone(),
                boolean: equivalent(lf, rf)?,
                options: option_equivalent(lf, rf)?,
            });
        }
    }
    Ok(JudgeTable { rows, pairs })
}

fn status_word(v: &LawVerdict) -> &'static str {
    match v.status {
        Status::Valid => "valid",
        Status::Invalid => "invalid",
    }
}

fn verdict_detail(v: &LawVerdict) -> String {
    match &v.counterexample {
        None => String::new(),
        Some(cx) => {
            let values: Vec<String> = cx
                .assignment
                .iter()
                .map(|(k, b)| format!("{k}:{}", u8::from(*b)))
                .collect();
            format!(
                "counterexample {{{}}} (lhs {}, rhs {})",
                values.join(","),
                cx.lhs,
                cx.rhs
            )
        }
    }
}

fn law_records(out: &mut Vec<ReportRecord>) {
    for row in law_table(ConnectiveMap::CLASSICAL) {
        out.push(
            ReportRecord::new(
                format!("laws.classical.{}", row.law),
                1,
                format!("{} = {}", row.lhs, row.rhs),
                "valid",
                status_word(&row.verdict),
            )
            .with_detail(verdict_detail(&row.verdict)),
        );
    }
    let expected_xor = [
        ("Dis.1", "valid"),
        ("Dis.2", "invalid"),
        ("Abs.1", "invalid"),
        ("Abs.2", "invalid"),
        ("Ide.1", "invalid"),
    ];
    for (name, expected) in expected_xor {
        let law = standard_law(name, ConnectiveMap::XOR_JOIN).expect("standard law");
        let (lhs, rhs) = law.instantiate(&atom_binding()).expect("standard binding");
        let verdict = check_law(&law);
        // An invalid verdict only counts with a witness that separates the sides.
        let computed = match (&verdict.status, &verdict.counterexample) {
            (Status::Invalid, Some(cx)) if cx.lhs != cx.rhs => "invalid",
            (Status::Invalid, _) => "invalid without witness",
            (Status::Valid, _) => "valid",
        };
        out.push(
            ReportRecord::new(
                format!("laws.xor.{name}"),
                2,
                format!("{lhs} = {rhs}"),
                expected,
                computed,
            )
            .with_detail(verdict_detail(&verdict)),
        );
    }
}

fn parity_records(out: &mut Vec<ReportRecord>) {
    for n in 1..=MAX_ATOMS {
        let computed = match xor_parity(n) {
            Ok(b) => b.to_string(),
            Err(e) => format!("error: {e}"),
        };
        out.push(ReportRecord::new(
            format!("parity.xor.{n}"),
            3,
            format!("n = {n}"),
            "true",
            computed,
        ));
    }
}

fn options_text(set: &Result<OptionSet>) -> String {
    match set {
        Ok(s) => s.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

fn lookup_or_record<'c>(
    corpus: &'c Corpus,
    label: &str,
    claim: &str,
    criterion: u8,
    out: &mut Vec<ReportRecord>,
) -> Option<&'c Formula> {
    match corpus.get(label) {
        Ok(f) => Some(f),
        Err(e) => {
            out.push(ReportRecord::failed(claim, criterion, label, "present", e));
            None
        }
    }
}

fn option_records(corpus: &Corpus, out: &mut Vec<ReportRecord>) {
    let expected = [
        ("1a", "{{A:1,B:1},{A:1,C:1}}"),
        ("1b", "{{A:1,B:1},{A:1,C:1}}"),
        ("2a", "{{A:1},{B:1,C:1}}"),
        ("2b", "{{A:1,B:1},{A:1,C:1},{A:2},{B:1,C:1}}"),
        ("5a", "{{A:1},{A:1,B:1}}"),
        ("5c", "{{A:1,B:1},{A:2}}"),
        ("6a", "{{A:1}}"),
        ("6c", "{{A:2}}"),
    ];
    for (label, want) in expected {
        let claim = format!("appendix.options.{label}");
        if let Some(f) = lookup_or_record(corpus, label, &claim, 4, out) {
            out.push(ReportRecord::new(
                claim,
                4,
                f.to_string(),
                want,
                options_text(&denote_options(f)),
            ));
        }
    }
}

fn judgment_records(corpus: &Corpus, out: &mut Vec<ReportRecord>) {
    let expected = [
        ("1a", Category::Acceptable),
        ("1b", Category::Acceptable),
        ("2a", Category::Acceptable),
        ("5a", Category::Acceptable),
        ("5b", Category::Acceptable),
        ("6b", Category::Acceptable),
        ("6a", Category::OddHobson),
        ("2b", Category::WeirdDoubleImage),
        ("2b'", Category::WeirdDoubleImage),
        ("5c", Category::WeirdDoubleImage),
        ("5c'", Category::WeirdDoubleImage),
        ("6c", Category::WeirdDoubleImage),
        ("6c-iterable", Category::Acceptable),
    ];
    for (label, want) in expected {
        let claim = format!("judgment.{label}");
        if let Some(f) = lookup_or_record(corpus, label, &claim, 5, out) {
            let record = match judge(f) {
                Ok(j) => {
                    let detail = j
                        .double_images
                        .iter()
                        .map(|d| {
                            format!("double image {}:{} in {}", d.atom, d.coefficient, d.option)
                        })
                        .chain(j.hobson_nodes.iter().map(|id| format!("hobson or #{id}")))
                        .collect::<Vec<_>>()
                        .join("; ");
                    ReportRecord::new(
                        &claim,
                        5,
                        f.to_string(),
                        want.to_string(),
                        j.category.to_string(),
                    )
                    .with_detail(detail)
                }
                Err(e) => ReportRecord::failed(&claim, 5, f.to_string(), want.to_string(), e),
            };
            out.push(record);
        }
    }
}

fn divergence_records(corpus: &Corpus, out: &mut Vec<ReportRecord>) {
    let pairs = [
        ("1a", "1b", true),
        ("2a", "2b", false),
        ("5a", "5b", false),
        ("5a", "5c", false),
        ("6a", "6b", false),
        ("6c", "6b", false),
    ];
    for (l, r, options_agree) in pairs {
        let claim = format!("divergence.{l}.{r}");
        let (Some(lf), Some(rf)) = (
            lookup_or_record(corpus, l, &claim, 6, out),
            lookup_or_record(corpus, r, &claim, 6, out),
        ) else {
            continue;
        };
        let expected = format!("boolean=true options={options_agree}");
        let record = match (equivalent(lf, rf), option_equivalent(lf, rf)) {
            (Ok(b), Ok(o)) => {
                let detail = o
                    .witness
                    .as_ref()
                    .map(|w| format!("option witness {w}"))
                    .unwrap_or_default();
                ReportRecord::new(
                    &claim,
                    6,
                    format!("{lf} ~ {rf}"),
                    expected,
                    format!("boolean={} options={}", b.is_valid(), o.equivalent),
                )
                .with_detail(detail)
            }
            (Err(e), _) | (_, Err(e)) => {
                ReportRecord::failed(&claim, 6, format!("{lf} ~ {rf}"), expected, e)
            }
        };
        out.push(record);
    }
}

fn suppression_summary(report: &ImplicatureReport, body: &Formula) -> String {
    match report
        .suppressed
        .iter()
        .find(|s| s.constraint.polarity == Polarity::DoesNotKnow && &s.constraint.body == body)
    {
        None => "not suppressed".to_string(),
        Some(s) if s.clashes_with.is_empty() => "suppressed without clash".to_string(),
        Some(s)
            if s.clashes_with
                .iter()
                .all(|c| c.provenance == Provenance::Assertion) =>
        {
            "suppressed by assertion".to_string()
        }
        Some(_) => "suppressed by implicature".to_string(),
    }
}

fn implicature_records(corpus: &Corpus, out: &mut Vec<ReportRecord>) {
    let atom_a = Formula::atom("A");
    let mut reports = Vec::new();
    for label in ["6a", "5c", "5a"] {
        let claim = format!("implicature.ignorance.{label}");
        let Some(f) = lookup_or_record(corpus, label, &claim, 7, out) else {
            continue;
        };
        match project(f, &Mode::GazdarDefault) {
            Ok(report) => {
                let clash = report
                    .suppressed
                    .iter()
                    .find(|s| {
                        s.constraint.body == atom_a
                            && s.constraint.polarity == Polarity::DoesNotKnow
                    })
                    .map(|s| {
                        s.clashes_with
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(", ")
                    })
                    .unwrap_or_default();
                out.push(
                    ReportRecord::new(
                        &claim,
                        7,
                        f.to_string(),
                        "suppressed by assertion",
                        suppression_summary(&report, &atom_a),
                    )
                    .with_detail(format!("¬K(A) clashes with {clash}")),
                );
                reports.push((label, report));
            }
            Err(e) => out.push(ReportRecord::failed(
                &claim,
                7,
                f.to_string(),
                "suppressed by assertion",
                e,
            )),
        }
    }

    let claim = "implicature.gazdar.2b";
    if let Some(f) = lookup_or_record(corpus, "2b", claim, 7, out) {
        let expected = "clausal=8 strong=2 suppressed=0";
        match project(f, &Mode::GazdarDefault) {
            Ok(report) => {
                let computed = format!(
                    "clausal={} strong={} suppressed={}",
                    report.accepted_by(Provenance::Clausal).count(),
                    report.accepted_by(Provenance::ScalarStrong).count(),
                    report.suppressed.len()
                );
                let all_assertions = report.accepted_by(Provenance::Assertion).count();
                out.push(
                    ReportRecord::new(claim, 7, f.to_string(), expected, computed)
                        .with_detail(format!("{all_assertions} assertions accepted")),
                );
                reports.push(("2b", report));
            }
            Err(e) => out.push(ReportRecord::failed(claim, 7, f.to_string(), expected, e)),
        }
    }

    for (label, report) in &reports {
        let computed = match consistent(&report.accepted) {
            Ok(c) => if c.consistent {
                "consistent"
            } else {
                "inconsistent"
            }
            .to_string(),
            Err(e) => format!("error: {e}"),
        };
        out.push(ReportRecord::new(
            format!("implicature.oracle.{label}"),
            7,
            format!("{} accepted constraints", report.accepted.len()),
            "consistent",
            computed,
        ));
    }
}

fn brevity_records(corpus: &Corpus, out: &mut Vec<ReportRecord>) {
    let compare = |a: usize, b: usize| match a.cmp(&b) {
        std::cmp::Ordering::Less => "shorter",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "longer",
    };
    for (l, r, want) in [("2b", "1b", "equal"), ("5a", "5b", "longer")] {
        let claim = format!("brevity.{l}.{r}");
        let (Some(lf), Some(rf)) = (
            lookup_or_record(corpus, l, &claim, 8, out),
            lookup_or_record(corpus, r, &claim, 8, out),
        ) else {
            continue;
        };
        out.push(
            ReportRecord::new(
                &claim,
                8,
                format!("{lf} vs {rf}"),
                want,
                compare(lf.length(), rf.length()),
            )
            .with_detail(format!("{} vs {} tokens", lf.length(), rf.length())),
        );
    }
    let law = standard_law("Dis.1", ConnectiveMap::CLASSICAL).expect("standard law");
    let (lhs, rhs) = law.instantiate(&atom_binding()).expect("standard binding");
    out.push(
        ReportRecord::new(
            "brevity.dis1.rhs.lhs",
            8,
            format!("{rhs} vs {lhs}"),
            "longer",
            compare(rhs.length(), lhs.length()),
        )
        .with_detail(format!("{} vs {} tokens", rhs.length(), lhs.length())),
    );
}

fn search_word(r: &Result<SearchResult>) -> String {
    match r {
        Ok(r) => match r.status {
            SearchStatus::NoCounterexample => "no_counterexample".into(),
            SearchStatus::Counterexample => "counterexample".into(),
        },
        Err(e) => format!("error: {e}"),
    }
}

fn search_detail(r: &Result<SearchResult>) -> String {
    match r {
        Ok(r) => {
            let mut s = format!("checked {}, premises met {}", r.checked, r.premises_met);
            if r.equality_cases > 0 {
                s.push_str(&format!(", equality cases {}", r.equality_cases));
            }
            if let Some(w) = &r.witness {
                s.push_str(&format!(", witness [{w}]"));
            }
            s
        }
        Err(_) => String::new(),
    }
}

fn probability_records(out: &mut Vec<ReportRecord>) {
    for den in [2, 4, 6] {
        let r = check_frege_theorem(den);
        out.push(
            ReportRecord::new(
                format!("prob.frege.{den}"),
                9,
                format!("grid {{A,C}} / {den}"),
                "no_counterexample",
                search_word(&r),
            )
            .with_detail(search_detail(&r)),
        );
    }
    for den in [2, 4, 6] {
        let r = check_disjunction_corollary(den);
        out.push(
            ReportRecord::new(
                format!("prob.corollary.{den}"),
                9,
                format!("grid {{A,B}} / {den}"),
                "no_counterexample",
                search_word(&r),
            )
            .with_detail(search_detail(&r)),
        );
    }
    let r = check_frege_without_uncertainty(4);
    out.push(
        ReportRecord::new(
            "prob.frege.without-uncertainty",
            9,
            "grid {A,C} / 4",
            "counterexample",
            search_word(&r),
        )
        .with_detail(search_detail(&r)),
    );

    let b_formulas = [
        "B",
        "A",
        "A or B",
        "A and not B",
        "not (A and B)",
        "A xor B",
    ];
    let mut checked = 0;
    let computed = (|| -> Result<String> {
        for d in grid(&["A", "B"], 4)? {
            for text in b_formulas {
                checked += 1;
                if !check_explosion_irrelevance(&d, &parse(text)?)? {
                    return Ok("violated".into());
                }
            }
        }
        Ok("holds".into())
    })()
    .unwrap_or_else(|e| format!("error: {e}"));
    out.push(
        ReportRecord::new("prob.explosion", 9, "grid {A,B} / 4", "holds", computed)
            .with_detail(format!("{checked} (distribution, formula) pairs")),
    );

    let r = check_relevance_ordering(4);
    out.push(
        ReportRecord::new(
            "prob.ordering.4",
            9,
            "grid {A,B,H} / 4",
            "no_counterexample",
            search_word(&r),
        )
        .with_detail(search_detail(&r)),
    );
}

fn claims(corpus: &Corpus) -> Vec<ReportRecord> {
    let mut out = Vec::new();
    law_records(&mut out);
    parity_records(&mut out);
    option_records(corpus, &mut out);
    judgment_records(corpus, &mut out);
    divergence_records(corpus, &mut out);
    implicature_records(corpus, &mut out);
    brevity_records(corpus, &mut out);
    probability_records(&mut out);
    out
}

/// Evaluates every claim against `corpus`. The last record checks that a
/// second evaluation serializes identically to the first.
pub fn reproduce(corpus: &Corpus) -> Vec<ReportRecord> {
    let first = claims(corpus);
    let second = claims(corpus);
    let encode = |r: &Vec<ReportRecord>| serde_json::to_string(r).expect("records serialize");
    let same = encode(&first) == encode(&second);
    let mut out = first;
    out.push(ReportRecord::new(
        "determinism.reproduce",
        10,
        "two consecutive evaluations",
        "identical",
        if same { "identical" } else { "different" },
    ));
    out
}

/// Criteria numbers covered by a record list.
pub fn criteria(records: &[ReportRecord]) -> BTreeSet<u8> {
    records.iter().map(|r| r.criterion).collect()
}
