//! Gricean implicature generation and projection.
//!
//! Constraints are statements about a single speaker's knowledge: `K φ`
//! (the speaker knows φ) and `¬K φ` (the speaker does not know φ). A set
//! of constraints is consistent when some nonempty set of worlds (the
//! speaker's belief model) makes every `K φ` true at all worlds and every
//! `¬K φ` false at some world.
//!
//! Projection follows assertion precedence: assertions are always kept,
//! then clausal, weak scalar and strong scalar potential implicatures are
//! added one at a time, each only if the accepted set stays consistent.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::boolean::{assignments, eval, Assignment};
use crate::error::{Error, Result};
use crate::formula::{Formula, Path};

/// Atom limit for belief-model enumeration.
pub const MAX_ATOMS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Polarity {
    #[serde(rename = "K")]
    Knows,
    #[serde(rename = "notK")]
    DoesNotKnow,
}

/// Origin of a constraint, in decreasing priority.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Assertion,
    Clausal,
    ScalarWeak,
    ScalarStrong,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EpistemicConstraint {
    pub polarity: Polarity,
    pub body: Formula,
    pub provenance: Provenance,
    /// Subformula that generated the constraint: the asserted conjunct, or
    /// the `or` node for implicatures.
    pub source: Path,
}

impl EpistemicConstraint {
    fn new(polarity: Polarity, body: Formula, provenance: Provenance, source: Path) -> Self {
        EpistemicConstraint {
            polarity,
            body,
            provenance,
            source,
        }
    }

    pub fn knows(body: Formula) -> Self {
        Self::new(Polarity::Knows, body, Provenance::Assertion, Path::root())
    }

    pub fn does_not_know(body: Formula) -> Self {
        Self::new(
            Polarity::DoesNotKnow,
            body,
            Provenance::Clausal,
            Path::root(),
        )
    }

    /// Same polarity and body, regardless of origin.
    pub fn same_content(&self, other: &EpistemicConstraint) -> bool {
        self.polarity == other.polarity && self.body == other.body
    }
}

impl fmt::Display for EpistemicConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polarity {
            Polarity::Knows => write!(f, "K({})", self.body),
            Polarity::DoesNotKnow => write!(f, "¬K({})", self.body),
        }
    }
}

fn check_atoms(f: &Formula) -> Result<()> {
    let found = f.atoms().len();
    if found > MAX_ATOMS {
        return Err(Error::TooManyAtoms {
            found,
            limit: MAX_ATOMS,
        });
    }
    Ok(())
}

fn push_unique(out: &mut Vec<EpistemicConstraint>, c: EpistemicConstraint) {
    if !out.iter().any(|d| d.same_content(&c)) {
        out.push(c);
    }
}

/// `K f`, followed by `K` of each conjunct of a top-level conjunction.
pub fn assertions(f: &Formula) -> Result<Vec<EpistemicConstraint>> {
    check_atoms(f)?;
    fn conjuncts<'a>(f: &'a Formula, path: Path, out: &mut Vec<(Path, &'a Formula)>) {
        if let Formula::And(l, r) = f {
            conjuncts(l, path.child(0), out);
            conjuncts(r, path.child(1), out);
        } else {
            out.push((path, f));
        }
    }
    let mut out = vec![EpistemicConstraint::new(
        Polarity::Knows,
        f.clone(),
        Provenance::Assertion,
        Path::root(),
    )];
    if matches!(f, Formula::And(..)) {
        let mut parts = Vec::new();
        conjuncts(f, Path::root(), &mut parts);
        for (path, part) in parts {
            let body = part.clone().renumbered();
            push_unique(
                &mut out,
                EpistemicConstraint::new(Polarity::Knows, body, Provenance::Assertion, path),
            );
        }
    }
    Ok(out)
}

fn or_nodes_by_path(f: &Formula) -> Vec<(Path, Formula, Formula)> {
    let mut nodes: Vec<_> = f
        .or_nodes()
        .into_iter()
        .map(|(path, _, l, r)| (path, l.clone().renumbered(), r.clone().renumbered()))
        .collect();
    nodes.sort_by(|a, b| a.0.cmp(&b.0));
    nodes
}

/// Ignorance implicatures: for each disjunct ψ of each `or`, `¬K ψ` and
/// `¬K ¬ψ`. Duplicates are collapsed within each `or` node.
pub fn potential_clausal(f: &Formula) -> Result<Vec<EpistemicConstraint>> {
    check_atoms(f)?;
    let mut out = Vec::new();
    for (path, left, right) in or_nodes_by_path(f) {
        let mut node = Vec::new();
        for disjunct in [left, right] {
            let negated = Formula::not(disjunct.clone());
            for body in [disjunct, negated] {
                push_unique(
                    &mut node,
                    EpistemicConstraint::new(
                        Polarity::DoesNotKnow,
                        body,
                        Provenance::Clausal,
                        path.clone(),
                    ),
                );
            }
        }
        out.extend(node);
    }
    Ok(out)
}

/// How the strong scalar implicature is generated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Mode {
    /// Strong form for every `or`, as a defeasible default.
    GazdarDefault,
    /// Strong form only for the `or` nodes (by coefficient id) on whose
    /// conjunction the speaker is taken to be opinionated.
    SoamesConditional { opinionated: BTreeSet<usize> },
}

impl Mode {
    fn emits_strong(&self, coeff_id: usize) -> bool {
        match self {
            Mode::GazdarDefault => true,
            Mode::SoamesConditional { opinionated } => opinionated.contains(&coeff_id),
        }
    }
}

/// Scalar implicatures for each `or` with disjuncts ψ, χ: the weak
/// `¬K(ψ and χ)` always, the strong `K not (ψ and χ)` as `mode` dictates.
pub fn potential_scalar(f: &Formula, mode: &Mode) -> Result<Vec<EpistemicConstraint>> {
    check_atoms(f)?;
    let ids: Vec<(Path, usize)> = f
        .or_nodes()
        .into_iter()
        .map(|(p, id, _, _)| (p, id))
        .collect();
    let mut weak = Vec::new();
    let mut strong = Vec::new();
    for (path, left, right) in or_nodes_by_path(f) {
        let id = ids
            .iter()
            .find(|(p, _)| *p == path)
            .map(|(_, id)| *id)
            .expect("node exists");
        let both = Formula::and(left, right);
        weak.push(EpistemicConstraint::new(
            Polarity::DoesNotKnow,
            both.clone(),
            Provenance::ScalarWeak,
            path.clone(),
        ));
        if mode.emits_strong(id) {
            strong.push(EpistemicConstraint::new(
                Polarity::Knows,
                Formula::not(both),
                Provenance::ScalarStrong,
                path,
            ));
        }
    }
    weak.extend(strong);
    Ok(weak)
}

/// A nonempty set of worlds the speaker cannot rule out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BeliefModel(pub Vec<Assignment>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Consistency {
    pub consistent: bool,
    /// Smallest witnessing belief model; among those of equal size, the
    /// first in world-index order.
    pub model: Option<BeliefModel>,
}

struct Worlds {
    /// Worlds satisfying every `K` body.
    candidates: Vec<Assignment>,
    /// For each `¬K` constraint, which candidates falsify its body.
    refuters: Vec<Vec<bool>>,
}

fn constraint_atoms(cs: &[EpistemicConstraint]) -> Result<Vec<String>> {
    let mut atoms = BTreeSet::new();
    for c in cs {
        atoms.extend(c.body.atoms());
    }
    if atoms.len() > MAX_ATOMS {
        return Err(Error::TooManyAtoms {
            found: atoms.len(),
            limit: MAX_ATOMS,
        });
    }
    Ok(atoms.into_iter().collect())
}

fn worlds(cs: &[EpistemicConstraint]) -> Result<Worlds> {
    let atoms = constraint_atoms(cs)?;
    let mut candidates = Vec::new();
    'world: for w in assignments(&atoms)? {
        for c in cs.iter().filter(|c| c.polarity == Polarity::Knows) {
            if !eval(&c.body, &w)? {
                continue 'world;
            }
        }
        candidates.push(w);
    }
    let mut refuters = Vec::new();
    for c in cs.iter().filter(|c| c.polarity == Polarity::DoesNotKnow) {
        refuters.push(
            candidates
                .iter()
                .map(|w| eval(&c.body, w).map(|b| !b))
                .collect::<Result<_>>()?,
        );
    }
    Ok(Worlds {
        candidates,
        refuters,
    })
}

/// The maximal model (all worlds compatible with the `K` constraints) is a
/// witness whenever any model is, so satisfiability needs no search.
fn satisfiable(cs: &[EpistemicConstraint]) -> Result<bool> {
    let w = worlds(cs)?;
    Ok(!w.candidates.is_empty() && w.refuters.iter().all(|r| r.iter().any(|&b| b)))
}

/// Calls `visit` with each `k`-subset of `0..n` in lexicographic order until
/// it returns true.
fn first_combination(
    n: usize,
    k: usize,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return Some(idx);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn consistent(cs: &[EpistemicConstraint]) -> Result<Consistency> {
    let w = worlds(cs)?;
    let feasible = !w.candidates.is_empty() && w.refuters.iter().all(|r| r.iter().any(|&b| b));
    if !feasible {
        return Ok(Consistency {
            consistent: false,
            model: None,
        });
    }
    let n = w.candidates.len();
    for size in 1..=n {
        let hit = first_combination(n, size, &mut |chosen| {
            w.refuters.iter().all(|r| chosen.iter().any(|&i| r[i]))
        });
        if let Some(chosen) = hit {
            let model = chosen
                .into_iter()
                .map(|i| w.candidates[i].clone())
                .collect();
            return Ok(Consistency {
                consistent: true,
                model: Some(BeliefModel(model)),
            });
        }
    }
    unreachable!("the full candidate set is a witness")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Suppressed {
    pub constraint: EpistemicConstraint,
    /// A minimal set of accepted constraints that the candidate contradicts.
    pub clashes_with: Vec<EpistemicConstraint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicatureReport {
    pub formula: Formula,
    pub mode: Mode,
    pub accepted: Vec<EpistemicConstraint>,
    pub suppressed: Vec<Suppressed>,
    pub model: BeliefModel,
}

impl ImplicatureReport {
    pub fn accepted_by(
        &self,
        provenance: Provenance,
    ) -> impl Iterator<Item = &EpistemicConstraint> {
        self.accepted
            .iter()
            .filter(move |c| c.provenance == provenance)
    }

    pub fn is_suppressed(&self, polarity: Polarity, body: &Formula) -> bool {
        self.suppressed
            .iter()
            .any(|s| s.constraint.polarity == polarity && &s.constraint.body == body)
    }
}

fn minimal_clash(
    accepted: &[EpistemicConstraint],
    candidate: &EpistemicConstraint,
) -> Result<Vec<EpistemicConstraint>> {
    let mut core: Vec<EpistemicConstraint> = accepted.to_vec();
    let mut i = 0;
    while i < core.len() {
        let mut trial = core.clone();
        trial.remove(i);
        trial.push(candidate.clone());
        if satisfiable(&trial)? {
            i += 1;
        } else {
            core.remove(i);
        }
    }
    Ok(core)
}

pub fn project(f: &Formula, mode: &Mode) -> Result<ImplicatureReport> {
    let mut accepted = assertions(f)?;
    if !satisfiable(&accepted)? {
        return Err(Error::ContradictoryAssertion(f.to_string()));
    }
    let mut candidates = potential_clausal(f)?;
    candidates.extend(potential_scalar(f, mode)?);
    // Stable: generation order already follows path order within a tier.
    candidates.sort_by(|a, b| {
        a.provenance
            .cmp(&b.provenance)
            .then_with(|| a.source.cmp(&b.source))
    });

    let mut suppressed = Vec::new();
    for candidate in candidates {
        let mut trial = accepted.clone();
        trial.push(candidate.clone());
        if satisfiable(&trial)? {
            accepted = trial;
        } else {
            let clashes_with = minimal_clash(&accepted, &candidate)?;
            suppressed.push(Suppressed {
                constraint: candidate,
                clashes_with,
            });
        }
    }
    let model = consistent(&accepted)?
        .model
        .expect("accepted set stays satisfiable");
    Ok(ImplicatureReport {
        formula: f.clone(),
        mode: mode.clone(),
        accepted,
        suppressed,
        model,
    })
}
