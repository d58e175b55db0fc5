use std::collections::BTreeMap;
use std::path::PathBuf;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, TruthValue};
use crate::syntax::{Signature, EQUALITY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("the domain must be nonempty")]
    EmptyDomain,
    #[error("domain element `{0}` is listed twice")]
    DuplicateElement(String),
    #[error("invalid domain element name `{0}`")]
    BadElementName(String),
    #[error("unknown domain element `{0}`")]
    UnknownElement(String),
    #[error("symbol `{0}` is not in the signature")]
    UnknownSymbol(String),
    #[error("`{name}` expects {expected} arguments, got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("table for `{name}` needs {expected} entries, got {found}")]
    TableSize {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("argument index {0} is outside the domain")]
    ElementOutOfRange(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Interpretation of a function symbol as a row-major table over the
/// domain. `None` marks an application outside a finite fragment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    pub arity: usize,
    pub values: Vec<Option<usize>>,
}

/// Interpretation of a predicate symbol as a row-major table of truth values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateTable {
    pub arity: usize,
    pub values: Vec<TruthValue>,
}

/// A structure over an algebra: named domain elements, crisp function tables
/// and fuzzy predicate tables.
///
/// `truncated_at` marks a finite fragment (up to the given term depth) of an
/// infinite domain; quantifiers over such a domain only give definite answers
/// through early exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyStructure {
    pub algebra: Algebra,
    pub signature: Signature,
    pub domain: Vec<String>,
    pub functions: BTreeMap<String, FunctionTable>,
    pub predicates: BTreeMap<String, PredicateTable>,
    pub truncated_at: Option<usize>,
    /// Where a table algebra was loaded from, for serialization.
    pub table_path: Option<PathBuf>,
}

pub(crate) fn table_len(domain: usize, arity: usize) -> usize {
    domain.pow(arity as u32)
}

impl FuzzyStructure {
    /// All predicates start at bottom (equality at the crisp identity) and all
    /// functions undefined.
    pub fn new(algebra: Algebra, signature: Signature, domain: Vec<String>) -> Result<Self, StructureError> {
        if domain.is_empty() {
            return Err(StructureError::EmptyDomain);
        }
        for (i, d) in domain.iter().enumerate() {
            if d.is_empty() || d == "_" || d.chars().any(char::is_whitespace) {
                return Err(StructureError::BadElementName(d.clone()));
            }
            if domain[..i].contains(d) {
                return Err(StructureError::DuplicateElement(d.clone()));
            }
        }
        let n = domain.len();
        let functions = signature
            .functions()
            .map(|(f, a)| {
                let t = FunctionTable {
                    arity: a,
                    values: vec![None; table_len(n, a)],
                };
                (f.to_string(), t)
            })
            .collect();
        let predicates = signature
            .predicates()
            .map(|(p, a)| {
                let t = PredicateTable {
                    arity: a,
                    values: vec![algebra.bottom(); table_len(n, a)],
                };
                (p.to_string(), t)
            })
            .collect();
        let mut m = FuzzyStructure {
            algebra,
            signature,
            domain,
            functions,
            predicates,
            truncated_at: None,
            table_path: None,
        };
        if m.signature.has_equality() {
            m.set_crisp_equality();
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.domain.iter().position(|d| d == name)
    }

    pub fn element_name(&self, idx: usize) -> &str {
        &self.domain[idx]
    }

    pub(crate) fn offset(&self, name: &str, arity: usize, args: &[usize]) -> Result<usize, StructureError> {
        if args.len() != arity {
            return Err(StructureError::Arity {
                name: name.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        let n = self.size();
        args.iter().try_fold(0usize, |acc, &a| {
            if a >= n {
                Err(StructureError::ElementOutOfRange(a))
            } else {
                Ok(acc * n + a)
            }
        })
    }

    pub fn set_function(&mut self, name: &str, args: &[usize], value: usize) -> Result<(), StructureError> {
        if value >= self.size() {
            return Err(StructureError::ElementOutOfRange(value));
        }
        let arity = self.function_table(name)?.arity;
        let i = self.offset(name, arity, args)?;
        self.functions.get_mut(name).expect("checked").values[i] = Some(value);
        Ok(())
    }

    pub fn set_predicate(&mut self, name: &str, args: &[usize], value: TruthValue) -> Result<(), StructureError> {
        if !self.algebra.contains(&value) {
            return Err(AlgebraError::ForeignValue {
                algebra: self.algebra.name(),
                value: value.to_string(),
            }
            .into());
        }
        let arity = self.predicate_table(name)?.arity;
        let i = self.offset(name, arity, args)?;
        self.predicates.get_mut(name).expect("checked").values[i] = value;
        Ok(())
    }

    pub fn function_value(&self, name: &str, args: &[usize]) -> Result<Option<usize>, StructureError> {
        let t = self.function_table(name)?;
        Ok(t.values[self.offset(name, t.arity, args)?])
    }

    pub fn predicate_value(&self, name: &str, args: &[usize]) -> Result<&TruthValue, StructureError> {
        let t = self.predicate_table(name)?;
        Ok(&t.values[self.offset(name, t.arity, args)?])
    }

    pub fn function_table(&self, name: &str) -> Result<&FunctionTable, StructureError> {
        self.functions
            .get(name)
            .ok_or_else(|| StructureError::UnknownSymbol(name.to_string()))
    }

    pub fn predicate_table(&self, name: &str) -> Result<&PredicateTable, StructureError> {
        self.predicates
            .get(name)
            .ok_or_else(|| StructureError::UnknownSymbol(name.to_string()))
    }

    /// Interprets `==` as the identity relation (adding it if absent).
    pub fn set_crisp_equality(&mut self) {
        self.signature.set_equality(true);
        let n = self.size();
        let values = (0..n * n).map(|i| self.algebra.from_bool(i / n == i % n)).collect();
        self.predicates
            .insert(EQUALITY.to_string(), PredicateTable { arity: 2, values });
    }

    /// True when every function table is fully defined.
    pub fn is_total(&self) -> bool {
        self.functions.values().all(|t| t.values.iter().all(Option::is_some))
    }

    /// All argument tuples of the given arity in row-major order.
    pub fn tuples(&self, arity: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        let n = self.size();
        (0..table_len(n, arity)).map(move |mut i| {
            let mut args = vec![0; arity];
            for slot in args.iter_mut().rev() {
                *slot = i % n;
                i /= n;
            }
            args
        })
    }
}
