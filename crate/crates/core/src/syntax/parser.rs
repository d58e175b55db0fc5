//! Surface syntax for formulas.
//!
//! ASCII and Unicode spellings are both accepted:
//!
//! | meaning          | ASCII      | Unicode |
//! |------------------|------------|---------|
//! | strong conj.     | `&`        |         |
//! | weak conj.       | `/\`       | `∧`     |
//! | disjunction      | `\/`       | `∨`     |
//! | implication      | `->`       | `→`     |
//! | biconditional    | `<->`      | `↔`     |
//! | negation         | `~`        | `¬`     |
//! | falsum / verum   | `bot`/`top`| `⊥`/`⊤` |
//! | similarity       | `==`       | `≈`     |
//! | quantifiers      | `forall x.` / `exists x.` | `∀x.` / `∃x.` |
//!
//! The prefix form `(forall x) φ` binds only the following unary
//! formula, whereas `forall x. φ` extends as far right as possible.
//! Predicates start with an uppercase letter; functions, constants and
//! variables with a lowercase one. A lowercase name is a variable unless it is
//! a declared constant not shadowed by a quantifier.

use std::fmt;

use thiserror::Error;

use super::formula::{Atom, Connective, Formula, Quantifier};
use super::signature::{Signature, EQUALITY};
use super::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected {found}, expected {expected}")]
    Unexpected { found: String, expected: String },
    #[error("undeclared predicate `{0}`")]
    UndeclaredPredicate(String),
    #[error("undeclared function `{0}`")]
    UndeclaredFunction(String),
    #[error("`{name}` expects {expected} argument(s), got {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("the signature has no similarity symbol `==`")]
    NoEquality,
    #[error("`{0}` is a predicate but is used as a term")]
    PredicateAsTerm(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Strong,
    Weak,
    Or,
    Arrow,
    Iff,
    Not,
    Eq,
    Forall,
    Exists,
    Bot,
    Top,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Strong => write!(f, "`&`"),
            Tok::Weak => write!(f, "`/\\`"),
            Tok::Or => write!(f, "`\\/`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::Iff => write!(f, "`<->`"),
            Tok::Not => write!(f, "`~`"),
            Tok::Eq => write!(f, "`==`"),
            Tok::Forall => write!(f, "`forall`"),
            Tok::Exists => write!(f, "`exists`"),
            Tok::Bot => write!(f, "`bot`"),
            Tok::Top => write!(f, "`top`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, first_line: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (first_line, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let take = |tok: Tok, n: usize, out: &mut Vec<Spanned>| {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            n
        };
        let peek = |k: usize| chars.get(i + k).copied();
        let n = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => 1,
            '(' => take(Tok::LParen, 1, &mut out),
            ')' => take(Tok::RParen, 1, &mut out),
            ',' => take(Tok::Comma, 1, &mut out),
            '.' => take(Tok::Dot, 1, &mut out),
            '&' => take(Tok::Strong, 1, &mut out),
            '∧' => take(Tok::Weak, 1, &mut out),
            '∨' => take(Tok::Or, 1, &mut out),
            '→' => take(Tok::Arrow, 1, &mut out),
            '↔' => take(Tok::Iff, 1, &mut out),
            '~' | '¬' => take(Tok::Not, 1, &mut out),
            '≈' => take(Tok::Eq, 1, &mut out),
            '∀' => take(Tok::Forall, 1, &mut out),
            '∃' => take(Tok::Exists, 1, &mut out),
            '⊥' => take(Tok::Bot, 1, &mut out),
            '⊤' => take(Tok::Top, 1, &mut out),
            '/' if peek(1) == Some('\\') => take(Tok::Weak, 2, &mut out),
            '\\' if peek(1) == Some('/') => take(Tok::Or, 2, &mut out),
            '-' if peek(1) == Some('>') => take(Tok::Arrow, 2, &mut out),
            '<' if peek(1) == Some('-') && peek(2) == Some('>') => take(Tok::Iff, 3, &mut out),
            '=' if peek(1) == Some('=') => take(Tok::Eq, 2, &mut out),
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                while j < chars.len() && chars[j] == '\'' {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = match word.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    _ => Tok::Ident(word),
                };
                take(tok, j - i, &mut out)
            }
            other => {
                return Err(ParseError {
                    line,
                    column: col,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        };
        i += n;
        col += n;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

/// Formula as written, before negation and the biconditional are expanded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SurfaceFormula {
    Atom(Atom),
    Bottom,
    Top,
    Not(Box<SurfaceFormula>),
    Binary(Connective, Box<SurfaceFormula>, Box<SurfaceFormula>),
    Iff(Box<SurfaceFormula>, Box<SurfaceFormula>),
    Quantified(Quantifier, String, Box<SurfaceFormula>),
}

impl SurfaceFormula {
    /// Rank of the formula as written: atoms 0; negation and quantifiers add
    /// one; binary connectives (including `<->`) sum their operands.
    pub fn rank(&self) -> usize {
        match self {
            SurfaceFormula::Atom(_) | SurfaceFormula::Bottom | SurfaceFormula::Top => 0,
            SurfaceFormula::Not(a) => a.rank() + 1,
            SurfaceFormula::Quantified(_, _, a) => a.rank() + 1,
            SurfaceFormula::Binary(_, a, b) | SurfaceFormula::Iff(a, b) => a.rank() + b.rank(),
        }
    }

    pub fn normalize(&self) -> Formula {
        match self {
            SurfaceFormula::Atom(a) => Formula::Atom(a.clone()),
            SurfaceFormula::Bottom => Formula::Bottom,
            SurfaceFormula::Top => Formula::Top,
            SurfaceFormula::Not(a) => Formula::negation(a.normalize()),
            SurfaceFormula::Binary(c, a, b) => Formula::binary(*c, a.normalize(), b.normalize()),
            SurfaceFormula::Iff(a, b) => Formula::iff(a.normalize(), b.normalize()),
            SurfaceFormula::Quantified(q, x, a) => Formula::Quantified(*q, x.clone(), Box::new(a.normalize())),
        }
    }
}

/// Parses and normalizes a formula over `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    parse_surface(text, sig).map(|s| s.normalize())
}

/// Parses a formula without normalizing it.
pub fn parse_surface(text: &str, sig: &Signature) -> Result<SurfaceFormula, ParseError> {
    parse_surface_at(text, sig, 1)
}

pub(crate) fn parse_surface_at(text: &str, sig: &Signature, line: usize) -> Result<SurfaceFormula, ParseError> {
    let toks = lex(text, line)?;
    let mut p = Parser {
        toks,
        pos: 0,
        sig,
        bound: Vec::new(),
    };
    let f = p.formula()?;
    p.expect(Tok::End, "end of input")?;
    Ok(f)
}

/// Parses a single term over `sig`; lowercase names not declared as
/// constants are variables.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let toks = lex(text, 1)?;
    let mut p = Parser {
        toks,
        pos: 0,
        sig,
        bound: Vec::new(),
    };
    let t = p.term()?;
    p.expect(Tok::End, "end of input")?;
    Ok(t)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    sig: &'a Signature,
    bound: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            line: s.line,
            column: s.column,
            kind,
        }
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        let s = &self.toks[pos];
        ParseError {
            line: s.line,
            column: s.column,
            kind,
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error(ParseErrorKind::Unexpected {
            found: self.peek().to_string(),
            expected: expected.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn formula(&mut self) -> Result<SurfaceFormula, ParseError> {
        let lhs = self.implication()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.formula()?;
            return Ok(SurfaceFormula::Iff(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<SurfaceFormula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(SurfaceFormula::Binary(
                Connective::Implies,
                Box::new(lhs),
                Box::new(rhs),
            ));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<SurfaceFormula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = SurfaceFormula::Binary(Connective::Or, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<SurfaceFormula, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let c = match self.peek() {
                Tok::Strong => Connective::StrongAnd,
                Tok::Weak => Connective::WeakAnd,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = SurfaceFormula::Binary(c, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<SurfaceFormula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(SurfaceFormula::Not(Box::new(self.unary()?)))
            }
            Tok::Forall | Tok::Exists => self.dotted_quantifier(),
            Tok::LParen
                if matches!(self.peek_at(1), Tok::Forall | Tok::Exists) && matches!(self.peek_at(3), Tok::RParen) =>
            {
                self.prefix_quantifier()
            }
            _ => self.primary(),
        }
    }

    fn quantifier_kind(tok: &Tok) -> Quantifier {
        if *tok == Tok::Forall {
            Quantifier::Forall
        } else {
            Quantifier::Exists
        }
    }

    fn variable_name(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if name.starts_with(|c: char| c.is_ascii_lowercase()) => {
                self.bump();
                Ok(name)
            }
            _ => Err(self.unexpected("a variable name")),
        }
    }

    // forall x y. body   |   forall x, y. body
    fn dotted_quantifier(&mut self) -> Result<SurfaceFormula, ParseError> {
        let q = Self::quantifier_kind(&self.bump());
        let mut vars = vec![self.variable_name()?];
        loop {
            match self.peek() {
                Tok::Dot => break,
                Tok::Comma => {
                    self.bump();
                    vars.push(self.variable_name()?);
                }
                Tok::Ident(_) => vars.push(self.variable_name()?),
                _ => return Err(self.unexpected("`.` after quantified variables")),
            }
        }
        self.bump();
        let depth = self.bound.len();
        self.bound.extend(vars.iter().cloned());
        let body = self.formula();
        self.bound.truncate(depth);
        let body = body?;
        Ok(vars
            .into_iter()
            .rev()
            .fold(body, |acc, x| SurfaceFormula::Quantified(q, x, Box::new(acc))))
    }

    // (forall x) body
    fn prefix_quantifier(&mut self) -> Result<SurfaceFormula, ParseError> {
        self.bump();
        let q = Self::quantifier_kind(&self.bump());
        let x = self.variable_name()?;
        self.expect(Tok::RParen, "`)` closing the quantifier")?;
        self.bound.push(x.clone());
        let body = self.unary();
        self.bound.pop();
        Ok(SurfaceFormula::Quantified(q, x, Box::new(body?)))
    }

    fn primary(&mut self) -> Result<SurfaceFormula, ParseError> {
        match self.peek().clone() {
            Tok::Bot => {
                self.bump();
                Ok(SurfaceFormula::Bottom)
            }
            Tok::Top => {
                self.bump();
                Ok(SurfaceFormula::Top)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(name) if name.starts_with(|c: char| c.is_ascii_uppercase()) => self.predicate_atom(name),
            Tok::Ident(_) => {
                let lhs = self.term()?;
                if *self.peek() != Tok::Eq {
                    return Err(self.unexpected("`==` after a term"));
                }
                let eq_pos = self.pos;
                self.bump();
                let rhs = self.term()?;
                if !self.sig.has_equality() {
                    return Err(self.error_at(eq_pos, ParseErrorKind::NoEquality));
                }
                Ok(SurfaceFormula::Atom(Atom::new(EQUALITY, vec![lhs, rhs])))
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn predicate_atom(&mut self, name: String) -> Result<SurfaceFormula, ParseError> {
        let start = self.pos;
        self.bump();
        let arity = self
            .sig
            .predicate_arity(&name)
            .ok_or_else(|| self.error_at(start, ParseErrorKind::UndeclaredPredicate(name.clone())))?;
        let args = self.arguments()?;
        if args.len() != arity {
            return Err(self.error_at(
                start,
                ParseErrorKind::ArityMismatch {
                    name,
                    expected: arity,
                    found: args.len(),
                },
            ));
        }
        Ok(SurfaceFormula::Atom(Atom::new(name, args)))
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if *self.peek() != Tok::LParen {
            return Ok(args);
        }
        self.bump();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.bump() {
                Tok::Comma => continue,
                Tok::RParen => return Ok(args),
                _ => {
                    self.pos -= 1;
                    return Err(self.unexpected("`,` or `)`"));
                }
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let start = self.pos;
        let name = match self.peek().clone() {
            Tok::Ident(name) => name,
            _ => return Err(self.unexpected("a term")),
        };
        if name.starts_with(|c: char| c.is_ascii_uppercase()) {
            return Err(self.error(ParseErrorKind::PredicateAsTerm(name)));
        }
        self.bump();
        if *self.peek() == Tok::LParen {
            let arity = self
                .sig
                .function_arity(&name)
                .ok_or_else(|| self.error_at(start, ParseErrorKind::UndeclaredFunction(name.clone())))?;
            let args = self.arguments()?;
            if args.len() != arity {
                return Err(self.error_at(
                    start,
                    ParseErrorKind::ArityMismatch {
                        name,
                        expected: arity,
                        found: args.len(),
                    },
                ));
            }
            return Ok(Term::App(name, args));
        }
        if self.bound.contains(&name) {
            return Ok(Term::Var(name));
        }
        match self.sig.function_arity(&name) {
            Some(0) => Ok(Term::constant(name)),
            Some(arity) => Err(self.error_at(
                start,
                ParseErrorKind::ArityMismatch {
                    name,
                    expected: arity,
                    found: 0,
                },
            )),
            None => Ok(Term::Var(name)),
        }
    }
}
