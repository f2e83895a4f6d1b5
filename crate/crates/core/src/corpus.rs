//! Named example sentences as schematic formulas.
//!
//! Atoms `A`, `B`, `C` stand for the three coordinated clauses; prosodic
//! grouping is written as explicit parentheses. The coordination-reduced
//! examples (3a/3b, 4a/4b) appear as their full sentential expansions.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::parser::parse;

/// Labels in presentation order, with their bracketed schemas.
pub const ENTRIES: [(&str, &str); 17] = [
    ("1a", "A and (B or C)"),
    ("1b", "(A and B) or (A and C)"),
    ("2a", "A or (B and C)"),
    ("2b", "(A or B) and (A or C)"),
    ("2b'", "(A or B) and (C or A)"),
    ("3a", "A or (B and C)"),
    ("3b", "(A or B) and (A or C)"),
    ("4a", "A or (B and C)"),
    ("4b", "(A or B) and (A or C)"),
    ("5a", "A or (A and B)"),
    ("5b", "A"),
    ("5c", "A and (A or B)"),
    ("5c'", "A and (B or A)"),
    ("6a", "A or A"),
    ("6b", "A"),
    ("6c", "A and A"),
    // Iterable control for 6c.
    ("6c-iterable", "talks:iterable and talks:iterable"),
];

/// A label → formula table. [`Corpus::standard`] is the built-in set; other
/// instances exist so that callers can substitute entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    entries: BTreeMap<String, Formula>,
    order: Vec<String>,
}

impl Corpus {
    pub fn standard() -> Self {
        let mut corpus = Corpus {
            entries: BTreeMap::new(),
            order: Vec::new(),
        };
        for (label, text) in ENTRIES {
            corpus.insert(label, parse(text).expect("corpus entry parses"));
        }
        corpus
    }

    /// Inserts or replaces an entry.
    pub fn insert(&mut self, label: &str, formula: Formula) {
        if self.entries.insert(label.to_string(), formula).is_none() {
            self.order.push(label.to_string());
        }
    }

    pub fn get(&self, label: &str) -> Result<&Formula> {
        self.entries
            .get(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(String::as_str)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.entries.contains_key(label)
    }
}

impl Default for Corpus {
    fn default() -> Self {
        Self::standard()
    }
}

/// Looks up a label in the standard corpus.
pub fn lookup(label: &str) -> Result<Formula> {
    ENTRIES
        .iter()
        .find(|(l, _)| *l == label)
        .map(|(_, text)| parse(text).expect("corpus entry parses"))
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

/// The example labels proper (excluding the auxiliary entries).
pub const EXAMPLE_LABELS: [&str; 16] = [
    "1a", "1b", "2a", "2b", "2b'", "3a", "3b", "4a", "4b", "5a", "5b", "5c", "5c'", "6a", "6b",
    "6c",
];
