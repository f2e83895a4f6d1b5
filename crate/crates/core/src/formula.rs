//! The object language: aspect-annotated atoms combined with `not`, `and`,
//! `or` and `xor`.
//!
//! Every `or` node carries a coefficient id. Ids are assigned by the
//! in-order position of the `or` within the formula, which coincides with
//! the left-to-right order of the `or` keywords in the printed text, so
//! printing and reparsing a formula reproduces the same ids.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Aspectual class of an atomic clause.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Aspect {
    /// "is affable", "is tall": resists additive repetition.
    #[default]
    Stative,
    /// "talks": repetition adds up.
    Iterable,
}

impl fmt::Display for Aspect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Aspect::Stative => f.write_str("stative"),
            Aspect::Iterable => f.write_str("iterable"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom {
    name: String,
    aspect: Aspect,
}

pub(crate) const KEYWORDS: [&str; 4] = ["and", "or", "xor", "not"];

pub(crate) fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !KEYWORDS.contains(&name)
}

impl Atom {
    pub fn new(name: impl Into<String>, aspect: Aspect) -> Result<Self> {
        let name = name.into();
        if !is_valid_atom_name(&name) {
            return Err(Error::InvalidAtomName(name));
        }
        Ok(Atom { name, aspect })
    }

    pub fn stative(name: impl Into<String>) -> Result<Self> {
        Self::new(name, Aspect::Stative)
    }

    pub fn iterable(name: impl Into<String>) -> Result<Self> {
        Self::new(name, Aspect::Iterable)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn aspect(&self) -> Aspect {
        self.aspect
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.aspect {
            Aspect::Stative => f.write_str(&self.name),
            Aspect::Iterable => write!(f, "{}:iterable", self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// Inclusive disjunction with its coefficient id.
    Or(Box<Formula>, Box<Formula>, usize),
    Xor(Box<Formula>, Box<Formula>),
}

/// Location of a subformula: the sequence of child indices from the root
/// (0 = left or only child, 1 = right child).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Path(pub Vec<u8>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn child(&self, index: u8) -> Self {
        let mut steps = self.0.clone();
        steps.push(index);
        Path(steps)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(Atom::stative(name).expect("invalid atom name"))
    }

    pub fn iterable(name: &str) -> Self {
        Formula::Atom(Atom::iterable(name).expect("invalid atom name"))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: Formula) -> Self {
        Formula::Not(Box::new(child)).renumbered()
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::And(Box::new(left), Box::new(right)).renumbered()
    }

    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::Or(Box::new(left), Box::new(right), 0).renumbered()
    }

    pub fn xor(left: Formula, right: Formula) -> Self {
        Formula::Xor(Box::new(left), Box::new(right)).renumbered()
    }

    /// Material implication, encoded as `not (l and not r)`.
    pub fn implies(left: Formula, right: Formula) -> Self {
        Formula::not(Formula::and(left, Formula::not(right)))
    }

    /// Reassigns `or` coefficient ids 0..k in textual order.
    pub fn renumbered(mut self) -> Self {
        let mut next = 0;
        self.renumber_from(&mut next);
        self
    }

    fn renumber_from(&mut self, next: &mut usize) {
        match self {
            Formula::Atom(_) => {}
            Formula::Not(c) => c.renumber_from(next),
            Formula::And(l, r) | Formula::Xor(l, r) => {
                l.renumber_from(next);
                r.renumber_from(next);
            }
            Formula::Or(l, r, id) => {
                l.renumber_from(next);
                *id = *next;
                *next += 1;
                r.renumber_from(next);
            }
        }
    }

    /// Distinct atom names, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            out.insert(a.name.clone());
        });
        out
    }

    /// Aspect of each atom name occurring in the formula.
    pub fn aspects(&self) -> BTreeMap<String, Aspect> {
        let mut out = BTreeMap::new();
        self.visit_atoms(&mut |a| {
            out.entry(a.name.clone()).or_insert(a.aspect);
        });
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::Atom(a) => f(a),
            Formula::Not(c) => c.visit_atoms(f),
            Formula::And(l, r) | Formula::Or(l, r, _) | Formula::Xor(l, r) => {
                l.visit_atoms(f);
                r.visit_atoms(f);
            }
        }
    }

    /// Coefficient ids of the `or` nodes, in textual order.
    pub fn coeff_ids(&self) -> Vec<usize> {
        self.or_nodes()
            .into_iter()
            .map(|(_, id, _, _)| id)
            .collect()
    }

    pub fn or_count(&self) -> usize {
        self.or_nodes().len()
    }

    /// Every `or` node as (path, coefficient id, left branch, right branch),
    /// in textual order.
    pub fn or_nodes(&self) -> Vec<(Path, usize, &Formula, &Formula)> {
        fn walk<'a>(
            f: &'a Formula,
            path: Path,
            out: &mut Vec<(Path, usize, &'a Formula, &'a Formula)>,
        ) {
            match f {
                Formula::Atom(_) => {}
                Formula::Not(c) => walk(c, path.child(0), out),
                Formula::And(l, r) | Formula::Xor(l, r) => {
                    walk(l, path.child(0), out);
                    walk(r, path.child(1), out);
                }
                Formula::Or(l, r, id) => {
                    walk(l, path.child(0), out);
                    out.push((path.clone(), *id, l, r));
                    walk(r, path.child(1), out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, Path::root(), &mut out);
        out
    }

    /// All subformulas with their paths, in pre-order.
    pub fn subformulas(&self) -> Vec<(Path, &Formula)> {
        fn walk<'a>(f: &'a Formula, path: Path, out: &mut Vec<(Path, &'a Formula)>) {
            out.push((path.clone(), f));
            match f {
                Formula::Atom(_) => {}
                Formula::Not(c) => walk(c, path.child(0), out),
                Formula::And(l, r) | Formula::Or(l, r, _) | Formula::Xor(l, r) => {
                    walk(l, path.child(0), out);
                    walk(r, path.child(1), out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, Path::root(), &mut out);
        out
    }

    pub fn children_mut(&mut self) -> Vec<&mut Formula> {
        match self {
            Formula::Atom(_) => vec![],
            Formula::Not(c) => vec![c.as_mut()],
            Formula::And(l, r) | Formula::Or(l, r, _) | Formula::Xor(l, r) => {
                vec![l.as_mut(), r.as_mut()]
            }
        }
    }

    pub fn at_path(&self, path: &Path) -> Option<&Formula> {
        let mut node = self;
        for &step in &path.0 {
            node = match (node, step) {
                (Formula::Not(c), 0) => c,
                (Formula::And(l, _) | Formula::Or(l, _, _) | Formula::Xor(l, _), 0) => l,
                (Formula::And(_, r) | Formula::Or(_, r, _) | Formula::Xor(_, r), 1) => r,
                _ => return None,
            };
        }
        Some(node)
    }

    pub fn contains_not(&self) -> bool {
        self.subformulas()
            .iter()
            .any(|(_, f)| matches!(f, Formula::Not(_)))
    }

    pub fn contains_xor(&self) -> bool {
        self.subformulas()
            .iter()
            .any(|(_, f)| matches!(f, Formula::Xor(..)))
    }

    /// Brevity measure: number of atom and connective-word tokens in the
    /// canonical printing. Parentheses and aspect annotations do not count.
    pub fn length(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Not(c) => 1 + c.length(),
            Formula::And(l, r) | Formula::Or(l, r, _) | Formula::Xor(l, r) => {
                1 + l.length() + r.length()
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::Xor(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) => 4,
            Formula::Atom(_) => 5,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrapped(f: &mut fmt::Formatter<'_>, child: &Formula, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({child})")
            } else {
                write!(f, "{child}")
            }
        }
        let prec = self.precedence();
        let (l, r, word) = match self {
            Formula::Atom(a) => return write!(f, "{a}"),
            Formula::Not(c) => {
                f.write_str("not ")?;
                return wrapped(f, c, c.precedence() < prec);
            }
            Formula::And(l, r) => (l, r, "and"),
            Formula::Or(l, r, _) => (l, r, "or"),
            Formula::Xor(l, r) => (l, r, "xor"),
        };
        // Binary connectives associate to the right.
        wrapped(f, l, l.precedence() <= prec)?;
        write!(f, " {word} ")?;
        wrapped(f, r, r.precedence() < prec)
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parser::parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing_uses_minimal_parentheses() {
        let a = || Formula::atom("A");
        let b = || Formula::atom("B");
        let c = || Formula::atom("C");
        assert_eq!(
            Formula::and(a(), Formula::or(b(), c())).to_string(),
            "A and (B or C)"
        );
        assert_eq!(
            Formula::or(a(), Formula::and(b(), c())).to_string(),
            "A or B and C"
        );
        assert_eq!(
            Formula::and(Formula::and(a(), b()), c()).to_string(),
            "(A and B) and C"
        );
        assert_eq!(
            Formula::and(a(), Formula::and(b(), c())).to_string(),
            "A and B and C"
        );
        assert_eq!(
            Formula::not(Formula::or(a(), b())).to_string(),
            "not (A or B)"
        );
        assert_eq!(
            Formula::xor(a(), Formula::and(b(), c())).to_string(),
            "A xor B and C"
        );
        assert_eq!(
            Formula::and(Formula::iterable("talks"), Formula::iterable("talks")).to_string(),
            "talks:iterable and talks:iterable"
        );
    }

    #[test]
    fn constructors_renumber_in_textual_order() {
        let f = Formula::or(
            Formula::or(Formula::atom("A"), Formula::atom("B")),
            Formula::atom("C"),
        );
        match &f {
            Formula::Or(l, _, outer) => {
                assert_eq!(*outer, 1);
                assert!(matches!(**l, Formula::Or(_, _, 0)));
            }
            _ => unreachable!(),
        }
        assert_eq!(f.coeff_ids(), vec![0, 1]);
    }

    #[test]
    fn atom_names_are_validated() {
        assert!(Atom::stative("A1_x").is_ok());
        assert!(Atom::stative("1A").is_err());
        assert!(Atom::stative("").is_err());
        assert!(Atom::stative("or").is_err());
        assert!(Atom::stative("A-B").is_err());
    }

    #[test]
    fn path_lookup() {
        let f = Formula::and(
            Formula::atom("A"),
            Formula::or(Formula::atom("B"), Formula::atom("C")),
        );
        assert_eq!(f.at_path(&Path(vec![1, 0])), Some(&Formula::atom("B")));
        assert_eq!(f.at_path(&Path(vec![0, 0])), None);
        assert_eq!(Path(vec![1, 0]).to_string(), "1.0");
        assert_eq!(Path::root().to_string(), "root");
    }
}
