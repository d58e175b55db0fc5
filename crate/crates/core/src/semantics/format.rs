//! Structure files.
//!
//! ```text
//! algebra lukasiewicz          # or: algebra table path/to/table.txt
//! domain d1 d2
//! fun c/0: d1
//! fun f/1: d2 _                # `_` leaves an entry undefined
//! pred P/1: 1 9/10
//! pred ==/2: 1 0 0 1
//! truncated 2                  # optional: finite fragment up to this depth
//! ```
//!
//! Tables are row-major over the domain order. Predicate entries are truth
//! values of the algebra (rationals or exact decimals; element indices for
//! table algebras).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::structure::{table_len, FuzzyStructure, StructureError};
use crate::algebra::{Algebra, AlgebraError, TableAlgebra};
use crate::syntax::{Signature, EQUALITY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Structure { line: usize, source: StructureError },
    #[error("cannot read algebra table {path}: {message}")]
    TableFile { path: String, message: String },
    #[error("structure over a table algebra has no table path to write")]
    NoTablePath,
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

enum Decl<'a> {
    Fun(&'a str, usize, Vec<&'a str>),
    Pred(&'a str, usize, Vec<&'a str>),
}

impl FuzzyStructure {
    /// Parses a structure file. A table algebra path is resolved relative
    /// to `base_dir` when given.
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<FuzzyStructure, FormatError> {
        let mut algebra: Option<(Algebra, Option<PathBuf>)> = None;
        let mut domain: Option<Vec<String>> = None;
        let mut truncated = None;
        let mut decls = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            let rest = rest.trim();
            match keyword {
                "algebra" => {
                    if algebra.is_some() {
                        return Err(syntax(line, "algebra declared twice"));
                    }
                    algebra = Some(parse_algebra(rest, base_dir, line)?);
                }
                "domain" => {
                    if domain.is_some() {
                        return Err(syntax(line, "domain declared twice"));
                    }
                    domain = Some(rest.split_whitespace().map(str::to_string).collect());
                }
                "truncated" => {
                    truncated = Some(
                        rest.parse::<usize>()
                            .map_err(|_| syntax(line, "expected a depth after `truncated`"))?,
                    );
                }
                "fun" | "pred" => {
                    let (head, values) = rest
                        .split_once(':')
                        .ok_or_else(|| syntax(line, format!("expected `{keyword} NAME/ARITY: values`")))?;
                    let (name, arity) = head
                        .trim()
                        .split_once('/')
                        .ok_or_else(|| syntax(line, "expected NAME/ARITY"))?;
                    let arity: usize = arity.trim().parse().map_err(|_| syntax(line, "invalid arity"))?;
                    let values = values.split_whitespace().collect();
                    let name = name.trim();
                    decls.push((
                        line,
                        if keyword == "fun" {
                            Decl::Fun(name, arity, values)
                        } else {
                            Decl::Pred(name, arity, values)
                        },
                    ));
                }
                other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
            }
        }
        let (algebra, table_path) = algebra.ok_or_else(|| syntax(1, "missing `algebra` line"))?;
        let domain = domain.ok_or_else(|| syntax(1, "missing `domain` line"))?;

        let mut sig = Signature::new();
        for (line, d) in &decls {
            let res = match d {
                Decl::Fun(name, arity, _) => sig.add_function(name, *arity),
                Decl::Pred(name, arity, _) if *name == EQUALITY => {
                    if *arity != 2 {
                        return Err(syntax(*line, "`==` must be binary"));
                    }
                    sig.set_equality(true);
                    Ok(())
                }
                Decl::Pred(name, arity, _) => sig.add_predicate(name, *arity),
            };
            res.map_err(|e| syntax(*line, e.to_string()))?;
        }
        let mut m =
            FuzzyStructure::new(algebra, sig, domain).map_err(|source| FormatError::Structure { line: 1, source })?;
        m.truncated_at = truncated;
        m.table_path = table_path;
        let n = m.size();
        for (line, d) in decls {
            let wrap = |source: StructureError| FormatError::Structure { line, source };
            match d {
                Decl::Fun(name, arity, values) => {
                    check_len(name, arity, n, values.len()).map_err(wrap)?;
                    for (args, tok) in m.tuples(arity).collect::<Vec<_>>().into_iter().zip(values) {
                        if tok == "_" {
                            continue;
                        }
                        let e = m
                            .element(tok)
                            .ok_or_else(|| wrap(StructureError::UnknownElement(tok.to_string())))?;
                        m.set_function(name, &args, e).map_err(wrap)?;
                    }
                }
                Decl::Pred(name, arity, values) => {
                    check_len(name, arity, n, values.len()).map_err(wrap)?;
                    for (args, tok) in m.tuples(arity).collect::<Vec<_>>().into_iter().zip(values) {
                        let v = m.algebra.parse_value(tok).map_err(|e| wrap(e.into()))?;
                        m.set_predicate(name, &args, v).map_err(wrap)?;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Renders the structure in the format read by [`FuzzyStructure::parse`].
    pub fn to_text(&self) -> Result<String, FormatError> {
        let mut out = String::new();
        match &self.algebra {
            Algebra::Table(_) => {
                let path = self.table_path.as_ref().ok_or(FormatError::NoTablePath)?;
                let _ = writeln!(out, "algebra table {}", path.display());
            }
            alg => {
                let _ = writeln!(out, "algebra {}", alg.name());
            }
        }
        let _ = writeln!(out, "domain {}", self.domain.join(" "));
        for (name, t) in &self.functions {
            let vals: Vec<&str> = t
                .values
                .iter()
                .map(|v| v.map_or("_", |d| self.element_name(d)))
                .collect();
            let _ = writeln!(out, "fun {name}/{}: {}", t.arity, vals.join(" "));
        }
        for (name, t) in &self.predicates {
            let vals: Vec<String> = t.values.iter().map(|v| self.algebra.format_value(v, false)).collect();
            let _ = writeln!(out, "pred {name}/{}: {}", t.arity, vals.join(" "));
        }
        if let Some(d) = self.truncated_at {
            let _ = writeln!(out, "truncated {d}");
        }
        Ok(out)
    }
}

fn check_len(name: &str, arity: usize, n: usize, found: usize) -> Result<(), StructureError> {
    let expected = table_len(n, arity);
    if expected == found {
        Ok(())
    } else {
        Err(StructureError::TableSize {
            name: name.to_string(),
            expected,
            found,
        })
    }
}

fn parse_algebra(spec: &str, base_dir: Option<&Path>, line: usize) -> Result<(Algebra, Option<PathBuf>), FormatError> {
    if let Some(path) = spec.strip_prefix("table") {
        let path = PathBuf::from(path.trim());
        if path.as_os_str().is_empty() {
            return Err(syntax(line, "expected a path after `algebra table`"));
        }
        let full = match base_dir {
            Some(b) if path.is_relative() => b.join(&path),
            _ => path.clone(),
        };
        let text = std::fs::read_to_string(&full).map_err(|e| FormatError::TableFile {
            path: full.display().to_string(),
            message: e.to_string(),
        })?;
        let alg = TableAlgebra::parse(&text)
            .and_then(Algebra::table)
            .map_err(|e: AlgebraError| FormatError::TableFile {
                path: full.display().to_string(),
                message: e.to_string(),
            })?;
        return Ok((alg, Some(path)));
    }
    let alg = spec.parse::<Algebra>().map_err(|e| syntax(line, e.to_string()))?;
    Ok((alg, None))
}
