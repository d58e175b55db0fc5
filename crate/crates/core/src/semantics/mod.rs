//! Structures over truth-value algebras and exact formula evaluation.

mod eval;
mod format;
mod structure;

pub use eval::{eval_formula, eval_term, is_model, EvalError, ModelCheck, TruthOutcome, VarEvaluation};
pub use format::FormatError;
pub use structure::{FunctionTable, FuzzyStructure, PredicateTable, StructureError};
