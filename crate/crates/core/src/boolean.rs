//! Classical two-valued semantics: evaluation, truth-table equivalence and
//! law checking.
//!
//! Truth tables enumerate assignments by index over the sorted atom names,
//! with the first atom as the least significant bit. The counterexample
//! reported is always the first witness in that order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::law::{atom_binding, LawSchema};

/// Largest atom count for exhaustive truth tables.
pub const MAX_ATOMS: usize = 12;

pub type Assignment = BTreeMap<String, bool>;

pub fn eval(f: &Formula, v: &Assignment) -> Result<bool> {
    Ok(match f {
        Formula::Atom(a) => *v
            .get(a.name())
            .ok_or_else(|| Error::MissingAtom(a.name().to_string()))?,
        Formula::Not(c) => !eval(c, v)?,
        Formula::And(l, r) => eval(l, v)? && eval(r, v)?,
        Formula::Or(l, r, _) => eval(l, v)? || eval(r, v)?,
        Formula::Xor(l, r) => eval(l, v)? ^ eval(r, v)?,
    })
}

/// The assignment with index `index` over `atoms`.
pub fn assignment_at(atoms: &[String], index: usize) -> Assignment {
    atoms
        .iter()
        .enumerate()
        .map(|(bit, name)| (name.clone(), index >> bit & 1 == 1))
        .collect()
}

/// Every assignment over `atoms` in enumeration order.
pub fn assignments(atoms: &[String]) -> Result<impl Iterator<Item = Assignment> + '_> {
    if atoms.len() > MAX_ATOMS {
        return Err(Error::TooManyAtoms {
            found: atoms.len(),
            limit: MAX_ATOMS,
        });
    }
    Ok((0..1usize << atoms.len()).map(move |i| assignment_at(atoms, i)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Valid,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Metavariable → atom, empty for plain formula comparisons.
    pub binding: BTreeMap<char, String>,
    pub assignment: Assignment,
    pub lhs: bool,
    pub rhs: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawVerdict {
    pub status: Status,
    pub counterexample: Option<Counterexample>,
}

impl LawVerdict {
    pub fn is_valid(&self) -> bool {
        self.status == Status::Valid
    }

    fn valid() -> Self {
        LawVerdict {
            status: Status::Valid,
            counterexample: None,
        }
    }
}

fn joint_atoms(f: &Formula, g: &Formula) -> Vec<String> {
    let mut atoms = f.atoms();
    atoms.extend(g.atoms());
    atoms.into_iter().collect()
}

/// Truth-table equivalence (mutual entailment).
pub fn equivalent(f: &Formula, g: &Formula) -> Result<LawVerdict> {
    let atoms = joint_atoms(f, g);
    for v in assignments(&atoms)? {
        let (lhs, rhs) = (eval(f, &v)?, eval(g, &v)?);
        if lhs != rhs {
            return Ok(LawVerdict {
                status: Status::Invalid,
                counterexample: Some(Counterexample {
                    binding: BTreeMap::new(),
                    assignment: v,
                    lhs,
                    rhs,
                }),
            });
        }
    }
    Ok(LawVerdict::valid())
}

/// `f` entails `g`: no assignment makes `f` true and `g` false.
pub fn entails(f: &Formula, g: &Formula) -> Result<bool> {
    let atoms = joint_atoms(f, g);
    for v in assignments(&atoms)? {
        if eval(f, &v)? && !eval(g, &v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_satisfiable(f: &Formula) -> Result<bool> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    for v in assignments(&atoms)? {
        if eval(f, &v)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Checks a law by instantiating its metavariables with distinct atoms
/// (X, Y, Z as A, B, C) and comparing both sides on every assignment.
pub fn check_law(schema: &LawSchema) -> LawVerdict {
    let binding = atom_binding();
    let (lhs, rhs) = schema
        .instantiate(&binding)
        .expect("standard binding covers X, Y, Z");
    let mut verdict = equivalent(&lhs, &rhs).expect("at most three atoms");
    if let Some(cx) = verdict.counterexample.as_mut() {
        cx.binding = schema
            .metavars()
            .into_iter()
            .map(|m| (m.symbol(), binding[&m].to_string()))
            .collect();
    }
    verdict
}

/// Right-associated xor chain over atoms P1..Pn.
pub fn xor_chain(n: usize) -> Formula {
    let mut atoms = (1..=n).rev().map(|i| Formula::atom(&format!("P{i}")));
    let last = atoms.next().expect("n >= 1");
    atoms.fold(last, |acc, a| Formula::xor(a, acc))
}

/// Whether an n-fold xor chain is true exactly when an odd number of its
/// atoms are true, checked over all 2^n assignments.
pub fn xor_parity(n: usize) -> Result<bool> {
    if !(1..=MAX_ATOMS).contains(&n) {
        return Err(Error::ChainLength(n));
    }
    let chain = xor_chain(n);
    let atoms: Vec<String> = chain.atoms().into_iter().collect();
    for v in assignments(&atoms)? {
        let odd = v.values().filter(|&&b| b).count() % 2 == 1;
        if eval(&chain, &v)? != odd {
            return Ok(false);
        }
    }
    Ok(true)
}
