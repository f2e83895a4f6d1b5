//! Linear-combination semantics for coordination.
//!
//! A sentence denotes a formal vector over its atoms (a *prospect*).
//! Sentence `and` is vector addition. Each `or` occurrence `X or Y` denotes
//! `aX + (1-a)Y` with its own scalar `a ∈ {0, 1}`, so a formula with `k`
//! occurrences of `or` has up to `2^k` options.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::formula::{Aspect, Formula};

/// Upper bound on `or` occurrences for option enumeration.
pub const MAX_OR_NODES: usize = 20;

/// Nonnegative integer vector over atom names; absent atoms are zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Prospect(BTreeMap<String, u32>);

impl Prospect {
    pub fn unit(atom: &str) -> Self {
        Prospect(BTreeMap::from([(atom.to_string(), 1)]))
    }

    /// Builds a prospect from (atom, coefficient) pairs; zero entries are
    /// dropped.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, u32)>) -> Self {
        let mut out = Prospect::default();
        for (atom, c) in pairs {
            if c > 0 {
                *out.0.entry(atom.to_string()).or_insert(0) += c;
            }
        }
        out
    }

    pub fn coefficient(&self, atom: &str) -> u32 {
        self.0.get(atom).copied().unwrap_or(0)
    }

    pub fn max_coefficient(&self) -> u32 {
        self.0.values().copied().max().unwrap_or(0)
    }

    pub fn is_null(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }
}

impl std::ops::Add for Prospect {
    type Output = Prospect;

    fn add(mut self, rhs: Prospect) -> Prospect {
        for (atom, c) in rhs.0 {
            *self.0.entry(atom).or_insert(0) += c;
        }
        self
    }
}

impl fmt::Display for Prospect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (atom, c)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{atom}:{c}")?;
        }
        f.write_str("}")
    }
}

/// Serialized as a sorted list of `[atom, coefficient]` pairs.
impl Serialize for Prospect {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

/// Distinct options a formula can denote, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct OptionSet(BTreeSet<Prospect>);

impl OptionSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: &Prospect) -> bool {
        self.0.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Prospect> {
        self.0.iter()
    }

    /// A prospect in exactly one of the two sets: the one with the largest
    /// single coefficient, earliest in sorted order among ties.
    pub fn symmetric_difference_witness(&self, other: &OptionSet) -> Option<Prospect> {
        self.0
            .symmetric_difference(&other.0)
            .fold(None, |best: Option<&Prospect>, p| match best {
                Some(b) if b.max_coefficient() >= p.max_coefficient() => Some(b),
                _ => Some(p),
            })
            .cloned()
    }
}

impl FromIterator<Prospect> for OptionSet {
    fn from_iter<I: IntoIterator<Item = Prospect>>(iter: I) -> Self {
        OptionSet(iter.into_iter().collect())
    }
}

impl fmt::Display for OptionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Scalar for each `or` occurrence, by coefficient id: `true` selects the
/// left branch (a = 1), `false` the right (a = 0).
pub type CoefficientAssignment = BTreeMap<usize, bool>;

fn check_denotable(f: &Formula) -> Result<()> {
    if f.contains_not() {
        return Err(Error::UnsupportedConnective("negation"));
    }
    if f.contains_xor() {
        return Err(Error::UnsupportedConnective("xor"));
    }
    Ok(())
}

fn denote_unchecked(f: &Formula, c: &CoefficientAssignment) -> Result<Prospect> {
    match f {
        Formula::Atom(a) => Ok(Prospect::unit(a.name())),
        Formula::And(l, r) => Ok(denote_unchecked(l, c)? + denote_unchecked(r, c)?),
        Formula::Or(l, r, id) => match c.get(id) {
            Some(true) => denote_unchecked(l, c),
            Some(false) => denote_unchecked(r, c),
            None => Err(Error::MissingCoefficient(*id)),
        },
        Formula::Not(_) => Err(Error::UnsupportedConnective("negation")),
        Formula::Xor(..) => Err(Error::UnsupportedConnective("xor")),
    }
}

/// The prospect `f` denotes under one choice of `or` scalars.
pub fn denote_one(f: &Formula, c: &CoefficientAssignment) -> Result<Prospect> {
    check_denotable(f)?;
    denote_unchecked(f, c)
}

/// The set of prospects over all `2^k` scalar choices.
pub fn denote_options(f: &Formula) -> Result<OptionSet> {
    check_denotable(f)?;
    let ids = f.coeff_ids();
    if ids.len() > MAX_OR_NODES {
        return Err(Error::TooManyOrNodes {
            found: ids.len(),
            limit: MAX_OR_NODES,
        });
    }
    (0..1usize << ids.len())
        .map(|bits| {
            let c: CoefficientAssignment = ids
                .iter()
                .enumerate()
                .map(|(i, &id)| (id, bits >> i & 1 == 1))
                .collect();
            denote_unchecked(f, &c)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptionComparison {
    pub equivalent: bool,
    /// A prospect in exactly one of the two option sets.
    pub witness: Option<Prospect>,
}

pub fn option_equivalent(f: &Formula, g: &Formula) -> Result<OptionComparison> {
    let (of, og) = (denote_options(f)?, denote_options(g)?);
    let witness = of.symmetric_difference_witness(&og);
    Ok(OptionComparison {
        equivalent: witness.is_none(),
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Acceptable,
    OddHobson,
    WeirdDoubleImage,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Acceptable => "acceptable",
            Category::OddHobson => "odd_hobson",
            Category::WeirdDoubleImage => "weird_double_image",
        })
    }
}

/// An option in which a stative atom occurs with coefficient ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleImage {
    pub option: Prospect,
    pub atom: String,
    pub coefficient: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Judgment {
    pub category: Category,
    pub options: OptionSet,
    pub double_images: Vec<DoubleImage>,
    /// Coefficient ids of `or` nodes whose branches have identical options.
    pub hobson_nodes: Vec<usize>,
}

pub fn judge(f: &Formula) -> Result<Judgment> {
    let options = denote_options(f)?;
    let aspects = f.aspects();
    let double_images: Vec<DoubleImage> = options
        .iter()
        .flat_map(|option| {
            option
                .iter()
                .filter(|&(atom, c)| c >= 2 && aspects.get(atom) == Some(&Aspect::Stative))
                .map(move |(atom, c)| DoubleImage {
                    option: option.clone(),
                    atom: atom.to_string(),
                    coefficient: c,
                })
        })
        .collect();
    let mut hobson_nodes = Vec::new();
    for (_, id, left, right) in f.or_nodes() {
        if denote_options(left)? == denote_options(right)? {
            hobson_nodes.push(id);
        }
    }
    let category = if !double_images.is_empty() {
        Category::WeirdDoubleImage
    } else if !hobson_nodes.is_empty() {
        Category::OddHobson
    } else {
        Category::Acceptable
    };
    Ok(Judgment {
        category,
        options,
        double_images,
        hobson_nodes,
    })
}
