//! Exact rational probability over truth assignments, and grid searches
//! for counterexamples to relevance theorems.
//!
//! A distribution assigns a mass to each world (assignment) over a fixed
//! atom list; world `i` gives atom `j` the value of bit `j` of `i`. The
//! grids enumerate every distribution whose masses are multiples of
//! `1/denominator`, in lexicographic order of the mass vectors, and every
//! search reports the first witness in that order.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::boolean::{assignment_at, eval, Assignment};
use crate::error::{Error, Result};
use crate::formula::Formula;

pub const MAX_GRID_ATOMS: usize = 3;
pub const MAX_DENOMINATOR: u32 = 12;
pub const MAX_ORDERING_DENOMINATOR: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalDist {
    atoms: Vec<String>,
    masses: Vec<Rational64>,
}

impl RationalDist {
    pub fn new(atoms: Vec<String>, masses: Vec<Rational64>) -> Result<Self> {
        if masses.len() != 1 << atoms.len()
            || masses.iter().any(|m| *m < Rational64::zero())
            || masses.iter().sum::<Rational64>() != Rational64::one()
        {
            return Err(Error::InvalidDistribution);
        }
        Ok(RationalDist { atoms, masses })
    }

    pub fn uniform(atoms: &[&str]) -> Self {
        let n = 1i64 << atoms.len();
        RationalDist {
            atoms: atoms.iter().map(|a| a.to_string()).collect(),
            masses: vec![Rational64::new(1, n); n as usize],
        }
    }

    /// Builds a distribution from (world, mass) pairs; unlisted worlds get
    /// zero mass.
    pub fn from_worlds(atoms: &[&str], worlds: &[(&[bool], Rational64)]) -> Result<Self> {
        let mut masses = vec![Rational64::zero(); 1 << atoms.len()];
        for (values, mass) in worlds {
            if values.len() != atoms.len() {
                return Err(Error::InvalidDistribution);
            }
            let index = values
                .iter()
                .enumerate()
                .fold(0, |acc, (bit, &v)| acc | (usize::from(v) << bit));
            masses[index] += *mass;
        }
        Self::new(atoms.iter().map(|a| a.to_string()).collect(), masses)
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn masses(&self) -> &[Rational64] {
        &self.masses
    }

    pub fn worlds(&self) -> impl Iterator<Item = (Assignment, Rational64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .map(|(i, m)| (assignment_at(&self.atoms, i), *m))
    }

    /// Adds `atom` as a fair coin independent of the existing atoms.
    pub fn with_independent_atom(&self, atom: &str) -> Self {
        let half = Rational64::new(1, 2);
        let mut atoms = self.atoms.clone();
        atoms.push(atom.to_string());
        let mut masses: Vec<Rational64> = self.masses.iter().map(|m| m * half).collect();
        masses.extend(self.masses.iter().map(|m| m * half));
        RationalDist { atoms, masses }
    }
}

impl fmt::Display for RationalDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (world, mass)) in self.worlds().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            for (name, value) in &world {
                if !value {
                    f.write_str("¬")?;
                }
                f.write_str(name)?;
            }
            write!(f, ": {mass}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Row {
    world: Assignment,
    mass: String,
}

/// Serialized as the atom list plus one `{world, mass}` row per world, with
/// masses as exact fractions.
impl Serialize for RationalDist {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Row> = self
            .worlds()
            .map(|(world, mass)| Row {
                world,
                mass: mass.to_string(),
            })
            .collect();
        let mut st = s.serialize_struct("RationalDist", 2)?;
        st.serialize_field("atoms", &self.atoms)?;
        st.serialize_field("table", &rows)?;
        st.end()
    }
}

pub fn prob(d: &RationalDist, f: &Formula) -> Result<Rational64> {
    if let Some(unknown) = f.atoms().into_iter().find(|a| !d.atoms.contains(a)) {
        return Err(Error::UnknownAtom(unknown));
    }
    let mut total = Rational64::zero();
    for (world, mass) in d.worlds() {
        if !mass.is_zero() && eval(f, &world)? {
            total += mass;
        }
    }
    Ok(total)
}

/// P(f | g).
pub fn cond_prob(d: &RationalDist, f: &Formula, g: &Formula) -> Result<Rational64> {
    let pg = prob(d, g)?;
    if pg.is_zero() {
        return Err(Error::ZeroProbability);
    }
    Ok(prob(d, &Formula::and(f.clone(), g.clone()))? / pg)
}

/// Lexicographic enumeration of the distributions with masses in
/// multiples of `1/denominator`.
#[derive(Debug, Clone)]
pub struct Grid {
    atoms: Vec<String>,
    denominator: u32,
    next: Option<Vec<u32>>,
}

impl Iterator for Grid {
    type Item = RationalDist;

    fn next(&mut self) -> Option<RationalDist> {
        let current = self.next.take()?;
        let d = i64::from(self.denominator);
        let masses = current
            .iter()
            .map(|&k| Rational64::new(i64::from(k), d))
            .collect();
        self.next = successor(&current);
        Some(RationalDist {
            atoms: self.atoms.clone(),
            masses,
        })
    }
}

fn successor(v: &[u32]) -> Option<Vec<u32>> {
    let m = v.len();
    // Rightmost position with mass somewhere to its right.
    let last_nonzero = (1..m).rev().find(|&i| v[i] > 0)?;
    let j = last_nonzero - 1;
    let tail: u32 = v[j + 1..].iter().sum();
    let mut out = v.to_vec();
    out[j] += 1;
    for x in &mut out[j + 1..] {
        *x = 0;
    }
    out[m - 1] = tail - 1;
    Some(out)
}

pub fn grid(atoms: &[&str], denominator: u32) -> Result<Grid> {
    if atoms.len() > MAX_GRID_ATOMS {
        return Err(Error::GridTooLarge(format!(
            "{} atoms (at most {MAX_GRID_ATOMS})",
            atoms.len()
        )));
    }
    if denominator == 0 || denominator > MAX_DENOMINATOR {
        return Err(Error::GridTooLarge(format!(
            "denominator {denominator} (must be within 1..={MAX_DENOMINATOR})"
        )));
    }
    let cells = 1 << atoms.len();
    let mut first = vec![0; cells];
    first[cells - 1] = denominator;
    Ok(Grid {
        atoms: atoms.iter().map(|a| a.to_string()).collect(),
        denominator,
        next: Some(first),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    NoCounterexample,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub status: SearchStatus,
    pub witness: Option<RationalDist>,
    /// Distributions examined.
    pub checked: usize,
    /// Distributions satisfying the premises.
    pub premises_met: usize,
    /// Premise-satisfying distributions where a weak inequality held with
    /// equality (only tracked by the relevance-ordering search).
    pub equality_cases: usize,
}

impl SearchResult {
    pub fn found_counterexample(&self) -> bool {
        self.status == SearchStatus::Counterexample
    }
}

struct Search {
    witness: Option<RationalDist>,
    checked: usize,
    premises_met: usize,
    equality_cases: usize,
}

impl Search {
    fn new() -> Self {
        Search {
            witness: None,
            checked: 0,
            premises_met: 0,
            equality_cases: 0,
        }
    }

    fn violation(&mut self, d: &RationalDist) {
        if self.witness.is_none() {
            self.witness = Some(d.clone());
        }
    }

    fn finish(self) -> SearchResult {
        SearchResult {
            status: if self.witness.is_some() {
                SearchStatus::Counterexample
            } else {
                SearchStatus::NoCounterexample
            },
            witness: self.witness,
            checked: self.checked,
            premises_met: self.premises_met,
            equality_cases: self.equality_cases,
        }
    }
}

fn atom(name: &str) -> Formula {
    Formula::atom(name)
}

fn strictly_between_0_and_1(p: Rational64) -> bool {
    p > Rational64::zero() && p < Rational64::one()
}

/// Premise predicates of the conditional-assertibility theorem, over atoms
/// `A` (antecedent) and `C` (consequent).
pub mod frege {
    use super::*;

    /// P(A ⊃ C) = 1.
    pub fn certain_conditional(d: &RationalDist) -> Result<bool> {
        Ok(prob(d, &Formula::implies(atom("A"), atom("C")))?.is_one())
    }

    /// 0 < P(A) < 1 and 0 < P(C) < 1.
    pub fn both_uncertain(d: &RationalDist) -> Result<bool> {
        Ok(strictly_between_0_and_1(prob(d, &atom("A"))?)
            && strictly_between_0_and_1(prob(d, &atom("C"))?))
    }

    /// P(A) ≠ 0 and P(C) ≠ 1.
    pub fn weakened_uncertainty(d: &RationalDist) -> Result<bool> {
        Ok(!prob(d, &atom("A"))?.is_zero() && !prob(d, &atom("C"))?.is_one())
    }

    /// P(C | A) > P(C); `None` when P(A) = 0.
    pub fn positively_relevant(d: &RationalDist) -> Result<Option<bool>> {
        match cond_prob(d, &atom("C"), &atom("A")) {
            Ok(c_given_a) => Ok(Some(c_given_a > prob(d, &atom("C"))?)),
            Err(Error::ZeroProbability) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

fn check_grid(
    atoms: &[&str],
    denominator: u32,
    mut premises: impl FnMut(&RationalDist) -> Result<bool>,
    mut conclusion: impl FnMut(&RationalDist) -> Result<bool>,
) -> Result<SearchResult> {
    let mut search = Search::new();
    for d in grid(atoms, denominator)? {
        search.checked += 1;
        if premises(&d)? {
            search.premises_met += 1;
            if !conclusion(&d)? {
                search.violation(&d);
            }
        }
    }
    Ok(search.finish())
}

/// Searches for a distribution where the conditional is certain and both
/// propositions are uncertain (or, separately, the weakened premise holds)
/// but A fails to be positively relevant to C.
pub fn check_frege_theorem(denominator: u32) -> Result<SearchResult> {
    check_grid(
        &["A", "C"],
        denominator,
        |d| {
            Ok(frege::certain_conditional(d)?
                && (frege::both_uncertain(d)? || frege::weakened_uncertainty(d)?))
        },
        |d| Ok(frege::positively_relevant(d)? == Some(true)),
    )
}

/// The same search with the uncertainty premise dropped, keeping only
/// P(A) > 0 so that P(C | A) is defined. Counterexamples exist.
pub fn check_frege_without_uncertainty(denominator: u32) -> Result<SearchResult> {
    check_grid(
        &["A", "C"],
        denominator,
        |d| Ok(frege::certain_conditional(d)? && !prob(d, &atom("A"))?.is_zero()),
        |d| Ok(frege::positively_relevant(d)? == Some(true)),
    )
}

/// Searches for a distribution with P(A ∨ B) = 1 and both disjuncts
/// uncertain where A is not negatively relevant to B, or B not to A, or
/// where exclusive disjuncts (P(AB) = 0) fail to make P(B | A) = 0.
pub fn check_disjunction_corollary(denominator: u32) -> Result<SearchResult> {
    let (a, b) = (atom("A"), atom("B"));
    check_grid(
        &["A", "B"],
        denominator,
        |d| {
            Ok(prob(d, &Formula::or(a.clone(), b.clone()))?.is_one()
                && strictly_between_0_and_1(prob(d, &a)?)
                && strictly_between_0_and_1(prob(d, &b)?))
        },
        |d| {
            let (pa, pb) = (prob(d, &a)?, prob(d, &b)?);
            let b_given_a = cond_prob(d, &b, &a)?;
            let a_given_b = cond_prob(d, &a, &b)?;
            let mut holds = b_given_a < pb && a_given_b < pa;
            if prob(d, &Formula::and(a.clone(), b.clone()))?.is_zero() {
                holds &= b_given_a.is_zero() && a_given_b.is_zero();
            }
            Ok(holds)
        },
    )
}

/// Whether the contradiction `A and not A` is probabilistically independent
/// of `b`: P((A ∧ ¬A) ∧ b) = P(A ∧ ¬A)·P(b). If `A` is not among the
/// distribution's atoms it is added as an independent coin.
pub fn check_explosion_irrelevance(d: &RationalDist, b: &Formula) -> Result<bool> {
    let extended;
    let d = if d.atoms.iter().any(|x| x == "A") {
        d
    } else {
        extended = d.with_independent_atom("A");
        &extended
    };
    let contradiction = Formula::and(atom("A"), Formula::not(atom("A")));
    let joint = prob(d, &Formula::and(contradiction.clone(), b.clone()))?;
    Ok(joint == prob(d, &contradiction)? * prob(d, b)?)
}

/// Likelihoods of evidence under a hypothesis and its negation. Their ratio
/// is the exponentiated log-likelihood ratio; all comparisons are by
/// cross-multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relevance {
    pub given_h: Rational64,
    pub given_not_h: Rational64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelevanceKind {
    NegativeInfinite,
    Finite,
    PositiveInfinite,
    /// Evidence impossible under both hypotheses.
    Undefined,
}

impl Relevance {
    pub fn kind(&self) -> RelevanceKind {
        match (self.given_h.is_zero(), self.given_not_h.is_zero()) {
            (true, true) => RelevanceKind::Undefined,
            (false, true) => RelevanceKind::PositiveInfinite,
            (true, false) => RelevanceKind::NegativeInfinite,
            (false, false) => RelevanceKind::Finite,
        }
    }

    /// Sign of the log-likelihood ratio.
    pub fn sign(&self) -> Option<Ordering> {
        match self.kind() {
            RelevanceKind::Undefined => None,
            _ => Some(self.given_h.cmp(&self.given_not_h)),
        }
    }

    /// Compares the strength of two relevance values.
    pub fn compare(&self, other: &Relevance) -> Option<Ordering> {
        if self.kind() == RelevanceKind::Undefined || other.kind() == RelevanceKind::Undefined {
            return None;
        }
        Some((self.given_h * other.given_not_h).cmp(&(other.given_h * self.given_not_h)))
    }

    pub fn max(self, other: Relevance) -> Option<Relevance> {
        Some(match self.compare(&other)? {
            Ordering::Less => other,
            _ => self,
        })
    }
}

impl fmt::Display for Relevance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RelevanceKind::PositiveInfinite => f.write_str("+inf"),
            RelevanceKind::NegativeInfinite => f.write_str("-inf"),
            RelevanceKind::Undefined => f.write_str("undefined"),
            RelevanceKind::Finite => write!(f, "log({} / {})", self.given_h, self.given_not_h),
        }
    }
}

impl Serialize for Relevance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Relevance", 3)?;
        st.serialize_field("given_h", &self.given_h.to_string())?;
        st.serialize_field("given_not_h", &self.given_not_h.to_string())?;
        st.serialize_field("kind", &self.kind())?;
        st.end()
    }
}

/// Log-likelihood-ratio relevance of `e` to `h`, as the likelihood pair.
pub fn llr(d: &RationalDist, e: &Formula, h: &Formula) -> Result<Relevance> {
    let ph = prob(d, h)?;
    if !strictly_between_0_and_1(ph) {
        return Err(Error::DegenerateHypothesis);
    }
    let not_h = Formula::not(h.clone());
    Ok(Relevance {
        given_h: cond_prob(d, e, h)?,
        given_not_h: cond_prob(d, e, &not_h)?,
    })
}

/// A and B independent conditional on H and on ¬H.
pub fn conditionally_independent(
    d: &RationalDist,
    a: &Formula,
    b: &Formula,
    h: &Formula,
) -> Result<bool> {
    let both = Formula::and(a.clone(), b.clone());
    for cond in [h.clone(), Formula::not(h.clone())] {
        let pab = cond_prob(d, &both, &cond)?;
        if pab != cond_prob(d, a, &cond)? * cond_prob(d, b, &cond)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Over the 3-atom grid {A, B, H}: among distributions where A and B are
/// conditionally independent given H and given ¬H, each positively relevant
/// to H, and A ∧ B does not make H certain, checks
/// `llr(A ∨ B) ≤ max(llr A, llr B) ≤ llr(A ∧ B)`. Ties are counted in
/// `equality_cases`, not as violations.
pub fn check_relevance_ordering(denominator: u32) -> Result<SearchResult> {
    if denominator > MAX_ORDERING_DENOMINATOR {
        return Err(Error::GridTooLarge(format!(
            "denominator {denominator} (at most {MAX_ORDERING_DENOMINATOR} for the ordering search)"
        )));
    }
    let (a, b, h) = (atom("A"), atom("B"), atom("H"));
    let both = Formula::and(a.clone(), b.clone());
    let either = Formula::or(a.clone(), b.clone());
    let mut search = Search::new();
    for d in grid(&["A", "B", "H"], denominator)? {
        search.checked += 1;
        if !strictly_between_0_and_1(prob(&d, &h)?) || !conditionally_independent(&d, &a, &b, &h)? {
            continue;
        }
        let (ra, rb) = (llr(&d, &a, &h)?, llr(&d, &b, &h)?);
        if ra.sign() != Some(Ordering::Greater) || rb.sign() != Some(Ordering::Greater) {
            continue;
        }
        if prob(&d, &both)?.is_zero() || cond_prob(&d, &h, &both)?.is_one() {
            continue;
        }
        search.premises_met += 1;
        let (r_or, r_and) = (llr(&d, &either, &h)?, llr(&d, &both, &h)?);
        let strongest = ra.max(rb).expect("defined");
        let lower = r_or.compare(&strongest);
        let upper = strongest.compare(&r_and);
        match (lower, upper) {
            (Some(Ordering::Greater), _) | (_, Some(Ordering::Greater)) | (None, _) | (_, None) => {
                search.violation(&d)
            }
            (Some(Ordering::Equal), _) | (_, Some(Ordering::Equal)) => search.equality_cases += 1,
            _ => {}
        }
    }
    Ok(search.finish())
}
