//! Rational expressions over the free-group alphabet.
//!
//! Grammar:
//!
//! ```text
//! expr   := term ('|' term)*        ('+' is accepted for '|')
//! term   := factor+
//! factor := base '*'*
//! base   := letter | '1' | '0' | '(' expr ')'
//! ```
//!
//! `1` is the empty word and `0` the empty set. Compilation is purely formal:
//! `aA` denotes the two-letter word, not the identity.

use std::fmt;

use crate::automata::Automaton;
use crate::error::{Error, Result};
use crate::words::{FreeAlphabet, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalExpr {
    EmptySet,
    Epsilon,
    Letter(Letter),
    Concat(Vec<RationalExpr>),
    Union(Vec<RationalExpr>),
    Star(Box<RationalExpr>),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a FreeAlphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalExpr> {
        let mut terms = vec![self.term()?];
        while matches!(self.peek(), Some('|' | '+')) {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { RationalExpr::Union(terms) })
    }

    fn term(&mut self) -> Result<RationalExpr> {
        let mut factors = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, '|' | '+' | ')') {
                break;
            }
            factors.push(self.factor()?);
        }
        match factors.len() {
            0 => Err(self.error("expected a letter, '1', '0' or '('")),
            1 => Ok(factors.pop().unwrap()),
            _ => Ok(RationalExpr::Concat(factors)),
        }
    }

    fn factor(&mut self) -> Result<RationalExpr> {
        let mut e = self.base()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            e = RationalExpr::Star(Box::new(e));
        }
        Ok(e)
    }

    fn base(&mut self) -> Result<RationalExpr> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end of expression"))?;
        let start = self.pos;
        self.pos += 1;
        match c {
            '1' => Ok(RationalExpr::Epsilon),
            '0' => Ok(RationalExpr::EmptySet),
            '(' => {
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => match Letter::from_char(c) {
                Some(l) if self.alphabet.contains(l) => Ok(RationalExpr::Letter(l)),
                Some(_) => Err(Error::parse(start, format!("letter '{c}' is outside the rank-{} alphabet", self.alphabet.rank()))),
                None => Err(Error::parse(start, format!("unexpected character '{c}'"))),
            },
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::parse(self.pos, message)
    }
}

/// Parses `text`; errors carry the character position.
pub fn parse_expr(text: &str, alphabet: FreeAlphabet) -> Result<RationalExpr> {
    let mut parser = Parser { chars: text.chars().collect(), pos: 0, alphabet: &alphabet };
    let e = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error("unexpected ')'"));
    }
    Ok(e)
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalExpr::EmptySet => write!(f, "0"),
            RationalExpr::Epsilon => write!(f, "1"),
            RationalExpr::Letter(l) => write!(f, "{l}"),
            RationalExpr::Concat(parts) => {
                for p in parts {
                    match p {
                        RationalExpr::Concat(_) | RationalExpr::Union(_) => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            RationalExpr::Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    match p {
                        RationalExpr::Union(_) => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            RationalExpr::Star(inner) => match **inner {
                RationalExpr::Concat(_) | RationalExpr::Union(_) => write!(f, "({inner})*"),
                _ => write!(f, "{inner}*"),
            },
        }
    }
}

/// Thompson construction: one entry and one exit state per subexpression,
/// glued with ε-moves.
pub fn compile_to_nfa(e: &RationalExpr, alphabet: FreeAlphabet) -> Automaton {
    let mut a = Automaton::new(alphabet, 0);
    let (start, end) = build(e, &mut a);
    a.add_initial(start);
    a.set_final(end, true);
    a
}

fn build(e: &RationalExpr, a: &mut Automaton) -> (usize, usize) {
    match e {
        RationalExpr::EmptySet => (a.add_state(), a.add_state()),
        RationalExpr::Epsilon => {
            let (s, t) = (a.add_state(), a.add_state());
            a.add_epsilon(s, t);
            (s, t)
        }
        RationalExpr::Letter(l) => {
            let (s, t) = (a.add_state(), a.add_state());
            a.add_transition(s, *l, t);
            (s, t)
        }
        RationalExpr::Concat(parts) => {
            let mut ends: Option<(usize, usize)> = None;
            for p in parts {
                let (s, t) = build(p, a);
                ends = Some(match ends {
                    None => (s, t),
                    Some((first, last)) => {
                        a.add_epsilon(last, s);
                        (first, t)
                    }
                });
            }
            ends.unwrap_or_else(|| build(&RationalExpr::Epsilon, a))
        }
        RationalExpr::Union(parts) => {
            let (s, t) = (a.add_state(), a.add_state());
            for p in parts {
                let (ps, pt) = build(p, a);
                a.add_epsilon(s, ps);
                a.add_epsilon(pt, t);
            }
            (s, t)
        }
        RationalExpr::Star(inner) => {
            let (s, t) = (a.add_state(), a.add_state());
            let (is, it) = build(inner, a);
            a.add_epsilon(s, is);
            a.add_epsilon(it, t);
            a.add_epsilon(s, t);
            a.add_epsilon(it, is);
            (s, t)
        }
    }
}
