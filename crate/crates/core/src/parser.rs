//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! formula := xor_expr ("or" formula)?
//! xor_expr := conj ("xor" xor_expr)?
//! conj    := unary ("and" conj)?
//! unary   := "not" unary | "(" formula ")" | atom
//! atom    := NAME (":" ("stative" | "iterable"))?
//! ```
//!
//! All binary connectives associate to the right; `and` binds tighter than
//! `xor`, which binds tighter than `or`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::{is_valid_atom_name, Aspect, Atom, Formula};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    LParen,
    RParen,
    Colon,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Token {
                    tok: Tok::LParen,
                    pos,
                });
            }
            ')' => {
                chars.next();
                out.push(Token {
                    tok: Tok::RParen,
                    pos,
                });
            }
            ':' => {
                chars.next();
                out.push(Token {
                    tok: Tok::Colon,
                    pos,
                });
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token {
                    tok: Tok::Word(word),
                    pos,
                });
            }
            other => {
                return Err(Error::Syntax {
                    position: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    index: usize,
    end: usize,
    /// Explicit aspect annotations seen so far.
    declared: BTreeMap<String, Aspect>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.index).map(|t| &t.tok)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.index).map_or(self.end, |t| t.pos)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.position(),
            message: message.into(),
        })
    }

    fn eat_keyword(&mut self, keyword: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Word(w)) if w == keyword) {
            self.index += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let left = self.xor_expr()?;
        if self.eat_keyword("or") {
            let right = self.formula()?;
            return Ok(Formula::Or(Box::new(left), Box::new(right), 0));
        }
        Ok(left)
    }

    fn xor_expr(&mut self) -> Result<Formula> {
        let left = self.conj()?;
        if self.eat_keyword("xor") {
            let right = self.xor_expr()?;
            return Ok(Formula::Xor(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<Formula> {
        let left = self.unary()?;
        if self.eat_keyword("and") {
            let right = self.conj()?;
            return Ok(Formula::And(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat_keyword("not") {
            return Ok(Formula::Not(Box::new(self.unary()?)));
        }
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.index += 1;
                let inner = self.formula()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.error("expected `)`");
                }
                self.index += 1;
                Ok(inner)
            }
            Some(Tok::Word(word)) if is_valid_atom_name(&word) => {
                self.index += 1;
                let aspect = self.annotation(&word)?;
                // Aspect placeholder; resolved once all annotations are known.
                let atom = Atom::new(word, aspect.unwrap_or_default())?;
                Ok(Formula::Atom(atom))
            }
            Some(Tok::Word(word)) => self.error(format!("expected an atom, found `{word}`")),
            Some(Tok::RParen) => self.error("unexpected `)`"),
            Some(Tok::Colon) => self.error("unexpected `:`"),
            None => self.error("unexpected end of input"),
        }
    }

    fn annotation(&mut self, name: &str) -> Result<Option<Aspect>> {
        if self.peek() != Some(&Tok::Colon) {
            return Ok(None);
        }
        self.index += 1;
        let aspect = match self.peek() {
            Some(Tok::Word(w)) if w == "stative" => Aspect::Stative,
            Some(Tok::Word(w)) if w == "iterable" => Aspect::Iterable,
            _ => return self.error("expected `stative` or `iterable` after `:`"),
        };
        self.index += 1;
        match self.declared.get(name) {
            Some(&previous) if previous != aspect => Err(Error::ConflictingAspect {
                name: name.to_string(),
            }),
            _ => {
                self.declared.insert(name.to_string(), aspect);
                Ok(Some(aspect))
            }
        }
    }
}

fn apply_aspects(f: &mut Formula, declared: &BTreeMap<String, Aspect>) {
    if let Formula::Atom(atom) = f {
        if let Some(&aspect) = declared.get(atom.name()) {
            *atom = Atom::new(atom.name(), aspect).expect("name already validated");
        }
        return;
    }
    for child in f.children_mut() {
        apply_aspects(child, declared);
    }
}

/// Parses formula text. Unannotated occurrences of a name take the aspect
/// annotated elsewhere in the same text, or stative if there is none.
pub fn parse(text: &str) -> Result<Formula> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        index: 0,
        end: text.len(),
        declared: BTreeMap::new(),
    };
    let mut formula = parser.formula()?;
    if parser.index < parser.tokens.len() {
        return parser.error("unexpected trailing input");
    }
    apply_aspects(&mut formula, &parser.declared);
    Ok(formula.renumbered())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Box<Formula> {
        Box::new(Formula::atom(n))
    }

    #[test]
    fn grouping_of_conjunction_over_disjunction() {
        let f = parse("A and (B or C)").unwrap();
        assert_eq!(
            f,
            Formula::And(a("A"), Box::new(Formula::Or(a("B"), a("C"), 0)))
        );
    }

    #[test]
    fn or_of_an_atom_with_itself() {
        assert_eq!(parse("A or A").unwrap(), Formula::Or(a("A"), a("A"), 0));
    }

    #[test]
    fn distinct_coefficients_for_distinct_ors() {
        let f = parse("(A or B) and (A or C)").unwrap();
        assert_eq!(
            f,
            Formula::And(
                Box::new(Formula::Or(a("A"), a("B"), 0)),
                Box::new(Formula::Or(a("A"), a("C"), 1)),
            )
        );
    }

    #[test]
    fn precedence_and_right_associativity() {
        let f = parse("A or B and C or D").unwrap();
        let expected = Formula::Or(
            a("A"),
            Box::new(Formula::Or(
                Box::new(Formula::And(a("B"), a("C"))),
                a("D"),
                1,
            )),
            0,
        );
        assert_eq!(f, expected);
        assert_eq!(
            parse("A and B and C").unwrap(),
            Formula::And(a("A"), Box::new(Formula::And(a("B"), a("C"))))
        );
        assert_eq!(
            parse("A xor B and C").unwrap(),
            Formula::Xor(a("A"), Box::new(Formula::And(a("B"), a("C"))))
        );
        assert_eq!(
            parse("A or B xor C").unwrap(),
            Formula::Or(a("A"), Box::new(Formula::Xor(a("B"), a("C"))), 0)
        );
        assert_eq!(
            parse("not A and B").unwrap(),
            Formula::And(Box::new(Formula::Not(a("A"))), a("B"))
        );
    }

    #[test]
    fn left_nested_ors_are_numbered_textually() {
        let f = parse("((A or B) or C) or D").unwrap();
        assert_eq!(f.coeff_ids(), vec![0, 1, 2]);
        match f {
            Formula::Or(_, _, id) => assert_eq!(id, 2),
            _ => unreachable!(),
        }
    }

    #[test]
    fn aspect_annotations() {
        let f = parse("talks:iterable and talks").unwrap();
        assert_eq!(
            f,
            Formula::And(
                Box::new(Formula::iterable("talks")),
                Box::new(Formula::iterable("talks"))
            )
        );
        let g = parse("A:stative or B").unwrap();
        assert_eq!(g, Formula::Or(a("A"), a("B"), 0));
        assert_eq!(
            parse("A:stative and A:iterable"),
            Err(Error::ConflictingAspect { name: "A".into() })
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cases = [
            ("A and", 5),
            ("(A or B", 7),
            ("A B", 2),
            ("A & B", 2),
            ("and A", 0),
            ("A:tall", 2),
            ("", 0),
            ("A or )", 5),
        ];
        for (text, position) in cases {
            match parse(text) {
                Err(Error::Syntax { position: p, .. }) => assert_eq!(p, position, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
