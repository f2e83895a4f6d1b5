//! Boolean, prospect and implicature semantics for coordinated sentence
//! schemas.
//!
//! A sentence schema such as `A and (B or C)` is read three ways:
//!
//! - [`boolean`]: classical truth tables, equivalence and law checking,
//!   including the variant that reads `or` as `xor`;
//! - [`prospect`]: `and` as vector addition and each `or` as a {0, 1}
//!   linear combination, giving a set of options per sentence;
//! - [`implicature`]: assertions and potential implicatures about the
//!   speaker's knowledge, projected under assertion precedence.
//!
//! [`probability`] checks relevance theorems over exact rational grids and
//! [`report`] collects everything into claim records.

pub mod boolean;
pub mod corpus;
pub mod error;
pub mod formula;
pub mod implicature;
pub mod law;
pub mod parser;
pub mod probability;
pub mod prospect;
pub mod report;

pub use boolean::{check_law, equivalent, eval, xor_parity, Assignment, LawVerdict, Status};
pub use corpus::{lookup, Corpus};
pub use error::{Error, Result};
pub use formula::{Aspect, Atom, Formula, Path};
pub use implicature::{project, EpistemicConstraint, ImplicatureReport, Mode};
pub use law::{ConnectiveMap, LawSchema};
pub use parser::parse;
pub use probability::{RationalDist, SearchResult, SearchStatus};
pub use prospect::{
    denote_options, judge, option_equivalent, Category, Judgment, OptionSet, Prospect,
};
pub use report::{reproduce, ReportRecord};
