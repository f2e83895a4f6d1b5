//! Law schemas: equations between templates over the metavariables X, Y, Z,
//! written with abstract `meet`/`join` and interpreted through a connective
//! map.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MetaVar {
    X,
    Y,
    Z,
}

impl MetaVar {
    pub fn symbol(self) -> char {
        match self {
            MetaVar::X => 'X',
            MetaVar::Y => 'Y',
            MetaVar::Z => 'Z',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Template {
    Var(MetaVar),
    Meet(Box<Template>, Box<Template>),
    Join(Box<Template>, Box<Template>),
}

use MetaVar::{X, Y, Z};

fn v(m: MetaVar) -> Template {
    Template::Var(m)
}

fn meet(l: Template, r: Template) -> Template {
    Template::Meet(Box::new(l), Box::new(r))
}

fn join(l: Template, r: Template) -> Template {
    Template::Join(Box::new(l), Box::new(r))
}

impl Template {
    pub fn metavars(&self) -> BTreeSet<MetaVar> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<MetaVar>) {
        match self {
            Template::Var(m) => {
                out.insert(*m);
            }
            Template::Meet(l, r) | Template::Join(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn swapped(&self) -> Template {
        match self {
            Template::Var(m) => Template::Var(*m),
            Template::Meet(l, r) => join(l.swapped(), r.swapped()),
            Template::Join(l, r) => meet(l.swapped(), r.swapped()),
        }
    }

    fn instantiate(
        &self,
        map: ConnectiveMap,
        binding: &BTreeMap<MetaVar, Formula>,
    ) -> Result<Formula> {
        let apply = |c: Connective, l: Formula, r: Formula| match c {
            Connective::And => Formula::And(Box::new(l), Box::new(r)),
            Connective::Or => Formula::Or(Box::new(l), Box::new(r), 0),
            Connective::Xor => Formula::Xor(Box::new(l), Box::new(r)),
        };
        Ok(match self {
            Template::Var(m) => binding
                .get(m)
                .cloned()
                .ok_or(Error::UnboundMetavariable(m.symbol()))?,
            Template::Meet(l, r) => apply(
                map.meet,
                l.instantiate(map, binding)?,
                r.instantiate(map, binding)?,
            ),
            Template::Join(l, r) => apply(
                map.join,
                l.instantiate(map, binding)?,
                r.instantiate(map, binding)?,
            ),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Template::Join(..) => 1,
            Template::Meet(..) => 2,
            Template::Var(_) => 3,
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r, word) = match self {
            Template::Var(m) => return write!(f, "{}", m.symbol()),
            Template::Meet(l, r) => (l, r, "meet"),
            Template::Join(l, r) => (l, r, "join"),
        };
        let p = self.precedence();
        if l.precedence() <= p {
            write!(f, "({l})")?;
        } else {
            write!(f, "{l}")?;
        }
        write!(f, " {word} ")?;
        if r.precedence() < p {
            write!(f, "({r})")
        } else {
            write!(f, "{r}")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Connective {
    And,
    Or,
    Xor,
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connective::And => "and",
            Connective::Or => "or",
            Connective::Xor => "xor",
        })
    }
}

/// Interpretation of the template connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConnectiveMap {
    pub meet: Connective,
    pub join: Connective,
}

impl ConnectiveMap {
    pub const CLASSICAL: ConnectiveMap = ConnectiveMap {
        meet: Connective::And,
        join: Connective::Or,
    };

    /// `join` read as exclusive disjunction.
    pub const XOR_JOIN: ConnectiveMap = ConnectiveMap {
        meet: Connective::And,
        join: Connective::Xor,
    };
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LawSchema {
    pub name: String,
    pub lhs: Template,
    pub rhs: Template,
    pub connectives: ConnectiveMap,
}

impl LawSchema {
    pub fn new(
        name: impl Into<String>,
        lhs: Template,
        rhs: Template,
        connectives: ConnectiveMap,
    ) -> Self {
        LawSchema {
            name: name.into(),
            lhs,
            rhs,
            connectives,
        }
    }

    pub fn metavars(&self) -> BTreeSet<MetaVar> {
        let mut vars = self.lhs.metavars();
        vars.extend(self.rhs.metavars());
        vars
    }

    pub fn with_connectives(&self, connectives: ConnectiveMap) -> Self {
        LawSchema {
            connectives,
            ..self.clone()
        }
    }

    fn uses_xor(&self) -> bool {
        self.connectives.meet == Connective::Xor || self.connectives.join == Connective::Xor
    }

    /// Substitutes the binding into both sides. Each side gets fresh
    /// coefficient ids in textual order.
    pub fn instantiate(&self, binding: &BTreeMap<MetaVar, Formula>) -> Result<(Formula, Formula)> {
        let lhs = self
            .lhs
            .instantiate(self.connectives, binding)?
            .renumbered();
        let rhs = self
            .rhs
            .instantiate(self.connectives, binding)?
            .renumbered();
        Ok((lhs, rhs))
    }

    /// The dual law: meet and join exchanged in both templates. The name of
    /// a standard law maps to its partner (Dis.1 ↔ Dis.2 and so on).
    pub fn dual(&self) -> Result<LawSchema> {
        if self.uses_xor() {
            return Err(Error::DualityUndefined);
        }
        let name = dual_name(&self.name).unwrap_or_else(|| format!("dual({})", self.name));
        Ok(LawSchema {
            name,
            lhs: self.lhs.swapped(),
            rhs: self.rhs.swapped(),
            connectives: self.connectives,
        })
    }
}

fn dual_name(name: &str) -> Option<String> {
    if let Some(inner) = name.strip_prefix("dual(").and_then(|s| s.strip_suffix(')')) {
        return Some(inner.to_string());
    }
    let (stem, index) = name.rsplit_once('.')?;
    let swapped = match index {
        "1" => "2",
        "2" => "1",
        _ => return None,
    };
    Some(format!("{stem}.{swapped}"))
}

impl fmt::Display for LawSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {} = {}", self.name, self.lhs, self.rhs)
    }
}

/// Distributive, absorption and idempotent laws in dual pairs.
pub fn standard_laws(connectives: ConnectiveMap) -> Vec<LawSchema> {
    vec![
        LawSchema::new(
            "Dis.1",
            meet(v(X), join(v(Y), v(Z))),
            join(meet(v(X), v(Y)), meet(v(X), v(Z))),
            connectives,
        ),
        LawSchema::new(
            "Dis.2",
            join(v(X), meet(v(Y), v(Z))),
            meet(join(v(X), v(Y)), join(v(X), v(Z))),
            connectives,
        ),
        LawSchema::new("Abs.1", join(v(X), meet(v(X), v(Y))), v(X), connectives),
        LawSchema::new("Abs.2", meet(v(X), join(v(X), v(Y))), v(X), connectives),
        LawSchema::new("Ide.1", join(v(X), v(X)), v(X), connectives),
        LawSchema::new("Ide.2", meet(v(X), v(X)), v(X), connectives),
    ]
}

pub fn standard_law(name: &str, connectives: ConnectiveMap) -> Option<LawSchema> {
    standard_laws(connectives)
        .into_iter()
        .find(|l| l.name == name)
}

/// Binds X, Y, Z to the atoms A, B, C.
pub fn atom_binding() -> BTreeMap<MetaVar, Formula> {
    BTreeMap::from([
        (X, Formula::atom("A")),
        (Y, Formula::atom("B")),
        (Z, Formula::atom("C")),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn law(name: &str) -> LawSchema {
        standard_law(name, ConnectiveMap::CLASSICAL).unwrap()
    }

    #[test]
    fn dis2_instance() {
        let (lhs, rhs) = law("Dis.2").instantiate(&atom_binding()).unwrap();
        assert_eq!(lhs, parse("A or (B and C)").unwrap());
        assert_eq!(rhs, parse("(A or B) and (A or C)").unwrap());
        assert_eq!(rhs.coeff_ids(), vec![0, 1]);
    }

    #[test]
    fn dis1_with_z_bound_to_x_gives_an_absorption_shape() {
        let mut binding = atom_binding();
        binding.insert(Z, Formula::atom("A"));
        let (lhs, rhs) = law("Dis.1").instantiate(&binding).unwrap();
        assert_eq!(lhs, parse("A and (B or A)").unwrap());
        assert_eq!(rhs, parse("(A and B) or (A and A)").unwrap());
    }

    #[test]
    fn ide2_instance() {
        let (lhs, rhs) = law("Ide.2").instantiate(&atom_binding()).unwrap();
        assert_eq!((lhs, rhs), (parse("A and A").unwrap(), parse("A").unwrap()));
    }

    #[test]
    fn unbound_metavariable() {
        let binding = BTreeMap::from([(X, Formula::atom("A"))]);
        assert_eq!(
            law("Dis.1").instantiate(&binding),
            Err(Error::UnboundMetavariable('Y'))
        );
        // Ide only needs X.
        assert!(law("Ide.1").instantiate(&binding).is_ok());
    }

    #[test]
    fn xor_substitution_reaches_the_formula() {
        let (lhs, _) = law("Dis.2")
            .with_connectives(ConnectiveMap::XOR_JOIN)
            .instantiate(&atom_binding())
            .unwrap();
        assert_eq!(lhs, parse("A xor B and C").unwrap());
    }

    #[test]
    fn duality_pairs() {
        assert_eq!(law("Dis.1").dual().unwrap(), law("Dis.2"));
        assert_eq!(law("Dis.2").dual().unwrap(), law("Dis.1"));
        assert_eq!(law("Abs.1").dual().unwrap(), law("Abs.2"));
        assert_eq!(law("Ide.1").dual().unwrap(), law("Ide.2"));
        assert_eq!(law("Ide.1").dual().unwrap().dual().unwrap(), law("Ide.1"));
    }

    #[test]
    fn duality_rejects_xor() {
        let l = law("Dis.1").with_connectives(ConnectiveMap::XOR_JOIN);
        assert_eq!(l.dual(), Err(Error::DualityUndefined));
        let ide2 = law("Ide.2").with_connectives(ConnectiveMap::XOR_JOIN);
        assert_eq!(ide2.dual(), Err(Error::DualityUndefined));
    }

    #[test]
    fn custom_law_dual_name() {
        let custom = LawSchema::new(
            "Comm",
            join(v(X), v(Y)),
            join(v(Y), v(X)),
            ConnectiveMap::CLASSICAL,
        );
        let d = custom.dual().unwrap();
        assert_eq!(d.name, "dual(Comm)");
        assert_eq!(d.dual().unwrap(), custom);
    }

    #[test]
    fn display() {
        assert_eq!(
            law("Dis.1").to_string(),
            "(Dis.1) X meet (Y join Z) = X meet Y join X meet Z"
        );
        assert_eq!(law("Ide.1").to_string(), "(Ide.1) X join X = X");
    }
}
