use std::collections::BTreeMap;

use thiserror::Error;

/// Name of the distinguished binary similarity predicate.
pub const EQUALITY: &str = "==";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("symbol `{0}` is declared both as a predicate and as a function")]
    NotDisjoint(String),
    #[error("symbol `{name}` redeclared with arity {new} (was {old})")]
    ArityConflict { name: String, old: usize, new: usize },
    #[error("`{EQUALITY}` is reserved for the similarity predicate")]
    ReservedEquality,
}

/// Predicate and function symbols with their arities.
///
/// When equality is enabled, `==` is a binary member of the predicate set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    predicates: BTreeMap<String, usize>,
    functions: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_equality(mut self) -> Self {
        self.set_equality(true);
        self
    }

    pub fn has_equality(&self) -> bool {
        self.predicates.contains_key(EQUALITY)
    }

    pub fn set_equality(&mut self, on: bool) {
        if on {
            self.predicates.insert(EQUALITY.to_string(), 2);
        } else {
            self.predicates.remove(EQUALITY);
        }
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if name == EQUALITY {
            return Err(SignatureError::ReservedEquality);
        }
        if self.functions.contains_key(name) {
            return Err(SignatureError::NotDisjoint(name.to_string()));
        }
        insert_arity(&mut self.predicates, name, arity)
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<(), SignatureError> {
        if name == EQUALITY {
            return Err(SignatureError::ReservedEquality);
        }
        if self.predicates.contains_key(name) {
            return Err(SignatureError::NotDisjoint(name.to_string()));
        }
        insert_arity(&mut self.functions, name, arity)
    }

    pub fn add_constant(&mut self, name: &str) -> Result<(), SignatureError> {
        self.add_function(name, 0)
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    /// All predicates including `==` when present, in name order.
    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Predicates other than `==`.
    pub fn proper_predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates().filter(|(k, _)| *k != EQUALITY)
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.functions().filter(|(_, a)| *a == 0).map(|(k, _)| k)
    }

    /// True when no function symbol has arity at least one.
    pub fn is_function_free(&self) -> bool {
        self.functions.values().all(|a| *a == 0)
    }

    /// Adds every symbol of `other`, failing on conflicts.
    pub fn merge(&mut self, other: &Signature) -> Result<(), SignatureError> {
        for (p, a) in other.proper_predicates() {
            self.add_predicate(p, a)?;
        }
        for (f, a) in other.functions() {
            self.add_function(f, a)?;
        }
        if other.has_equality() {
            self.set_equality(true);
        }
        Ok(())
    }
}

fn insert_arity(map: &mut BTreeMap<String, usize>, name: &str, arity: usize) -> Result<(), SignatureError> {
    match map.get(name) {
        Some(&old) if old != arity => Err(SignatureError::ArityConflict {
            name: name.to_string(),
            old,
            new: arity,
        }),
        _ => {
            map.insert(name.to_string(), arity);
            Ok(())
        }
    }
}
