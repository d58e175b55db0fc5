//! Signatures, terms, formulas, the surface parser and Horn classification.

mod axioms;
mod formula;
mod horn;
mod parser;
mod signature;
mod term;
mod theory;

pub use axioms::{similarity_axioms, NoEqualityError};
pub use formula::{Atom, Connective, Formula, Quantifier};
pub use horn::{classify_horn, BasicHorn, HornClass, HornLevel, HornTag};
pub use parser::{parse_formula, parse_surface, parse_term, ParseError, ParseErrorKind, SurfaceFormula};
pub use signature::{Signature, SignatureError, EQUALITY};
pub use term::{Substitution, Term};
pub use theory::{Axiom, Theory, TheoryError};

/// Capture-avoiding simultaneous substitution.
pub fn substitute(phi: &Formula, s: &Substitution) -> Formula {
    phi.substitute(s)
}

pub fn free_vars(phi: &Formula) -> std::collections::BTreeSet<String> {
    phi.free_vars()
}

pub fn rank(phi: &Formula) -> usize {
    phi.rank()
}
