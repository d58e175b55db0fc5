//! Theory files: a signature header followed by one formula per line.
//!
//! ```text
//! # comments start with '#'
//! pred P/1
//! fun f/2
//! const c
//! equality on
//! P(c)
//! forall x. P(x) -> Q(x)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::formula::Formula;
use super::parser::{parse_surface_at, ParseError, SurfaceFormula};
use super::signature::{Signature, SignatureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("line {line}: {message}")]
    Header { line: usize, message: String },
    #[error("line {line}: {source}")]
    Signature { line: usize, source: SignatureError },
    #[error("{0}")]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axiom {
    /// 1-based line in the source file.
    pub line: usize,
    pub source: String,
    pub surface: SurfaceFormula,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Theory {
    pub signature: Signature,
    pub axioms: Vec<Axiom>,
}

impl Theory {
    pub fn new(signature: Signature) -> Self {
        Theory {
            signature,
            axioms: Vec::new(),
        }
    }

    pub fn formulas(&self) -> Vec<Formula> {
        self.axioms.iter().map(|a| a.formula.clone()).collect()
    }

    pub fn push(&mut self, formula: Formula) {
        let source = formula.to_string();
        let line = self.axioms.last().map_or(1, |a| a.line + 1);
        self.axioms.push(Axiom {
            line,
            surface: to_surface(&formula),
            source,
            formula,
        });
    }

    /// Parses a theory file. Declarations may appear on any line; they are
    /// collected before any formula is parsed.
    pub fn parse(text: &str) -> Result<Theory, TheoryError> {
        let mut signature = Signature::new();
        let mut formula_lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = strip_comment(raw).trim();
            if content.is_empty() {
                continue;
            }
            let mut words = content.split_whitespace();
            match words.next() {
                Some("pred") => {
                    for decl in rest(content, "pred") {
                        let (name, arity) = symbol_decl(decl, line)?;
                        if !name.starts_with(|c: char| c.is_ascii_uppercase()) {
                            return Err(header(
                                line,
                                format!("predicate `{name}` must start with an uppercase letter"),
                            ));
                        }
                        signature
                            .add_predicate(name, arity)
                            .map_err(|source| TheoryError::Signature { line, source })?;
                    }
                }
                Some("fun") => {
                    for decl in rest(content, "fun") {
                        let (name, arity) = symbol_decl(decl, line)?;
                        add_function(&mut signature, name, arity, line)?;
                    }
                }
                Some("const") => {
                    for name in rest(content, "const") {
                        add_function(&mut signature, name, 0, line)?;
                    }
                }
                Some("equality") => match words.next() {
                    Some("on") => signature.set_equality(true),
                    Some("off") => signature.set_equality(false),
                    _ => return Err(header(line, "expected `equality on` or `equality off`".into())),
                },
                _ => formula_lines.push((line, content.to_string())),
            }
        }
        let mut axioms = Vec::new();
        for (line, source) in formula_lines {
            let surface = parse_surface_at(&source, &signature, line)?;
            let formula = surface.normalize();
            axioms.push(Axiom {
                line,
                source,
                surface,
                formula,
            });
        }
        Ok(Theory { signature, axioms })
    }

    /// Renders the theory in the file format accepted by [`Theory::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (p, a) in self.signature.proper_predicates() {
            let _ = writeln!(out, "pred {p}/{a}");
        }
        for (f, a) in self.signature.functions() {
            if a == 0 {
                let _ = writeln!(out, "const {f}");
            } else {
                let _ = writeln!(out, "fun {f}/{a}");
            }
        }
        let _ = writeln!(
            out,
            "equality {}",
            if self.signature.has_equality() { "on" } else { "off" }
        );
        for ax in &self.axioms {
            let _ = writeln!(out, "{}", ax.formula);
        }
        out
    }
}

fn to_surface(f: &Formula) -> SurfaceFormula {
    match f {
        Formula::Atom(a) => SurfaceFormula::Atom(a.clone()),
        Formula::Bottom => SurfaceFormula::Bottom,
        Formula::Top => SurfaceFormula::Top,
        Formula::Binary(c, a, b) => SurfaceFormula::Binary(*c, Box::new(to_surface(a)), Box::new(to_surface(b))),
        Formula::Quantified(q, x, b) => SurfaceFormula::Quantified(*q, x.clone(), Box::new(to_surface(b))),
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn rest<'a>(content: &'a str, keyword: &str) -> impl Iterator<Item = &'a str> {
    content[keyword.len()..]
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
}

fn header(line: usize, message: String) -> TheoryError {
    TheoryError::Header { line, message }
}

fn symbol_decl(decl: &str, line: usize) -> Result<(&str, usize), TheoryError> {
    let (name, arity) = decl
        .split_once('/')
        .ok_or_else(|| header(line, format!("expected NAME/ARITY, got `{decl}`")))?;
    let arity = arity
        .parse::<usize>()
        .map_err(|_| header(line, format!("invalid arity in `{decl}`")))?;
    if !valid_identifier(name) {
        return Err(header(line, format!("invalid symbol name `{name}`")));
    }
    Ok((name, arity))
}

fn add_function(sig: &mut Signature, name: &str, arity: usize, line: usize) -> Result<(), TheoryError> {
    if !valid_identifier(name) || !name.starts_with(|c: char| c.is_ascii_lowercase()) {
        return Err(header(
            line,
            format!("function `{name}` must be an identifier starting with a lowercase letter"),
        ));
    }
    if matches!(name, "forall" | "exists" | "bot" | "top") {
        return Err(header(line, format!("`{name}` is a keyword")));
    }
    sig.add_function(name, arity)
        .map_err(|source| TheoryError::Signature { line, source })
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# two-clause example
pred P/1, Q/1
const c
equality off

P(c)
forall x. P(x) -> Q(x)   # rule
";

    #[test]
    fn parses_header_and_formulas() {
        let th = Theory::parse(SAMPLE).unwrap();
        assert_eq!(th.signature.predicate_arity("Q"), Some(1));
        assert_eq!(th.signature.function_arity("c"), Some(0));
        assert!(!th.signature.has_equality());
        assert_eq!(th.axioms.len(), 2);
        assert_eq!(th.axioms[1].line, 7);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Theory::parse("pred P/1\nQ(c)\n").unwrap_err();
        assert!(matches!(err, TheoryError::Parse(ParseError { line: 2, .. })), "{err}");
        let err = Theory::parse("pred p/1\n").unwrap_err();
        assert!(matches!(err, TheoryError::Header { line: 1, .. }));
    }

    #[test]
    fn text_round_trip() {
        let th = Theory::parse(SAMPLE).unwrap();
        let again = Theory::parse(&th.to_text()).unwrap();
        assert_eq!(th.signature, again.signature);
        assert_eq!(th.formulas(), again.formulas());
    }
}
