use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::structure::{FuzzyStructure, StructureError};
use crate::algebra::{AlgebraError, TruthValue};
use crate::syntax::{Connective, Formula, Quantifier, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` has no value")]
    UnmappedVariable(String),
    #[error("`{function}` is undefined on ({args})")]
    UndefinedApplication { function: String, args: String },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Assignment of domain elements (by index) to variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarEvaluation(BTreeMap<String, usize>);

impl VarEvaluation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: impl Into<String>, element: usize) -> Self {
        self.0.insert(var.into(), element);
        self
    }

    pub fn insert(&mut self, var: impl Into<String>, element: usize) {
        self.0.insert(var.into(), element);
    }

    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.get(var).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `var=element` pairs using the structure's element names.
    pub fn describe(&self, m: &FuzzyStructure) -> String {
        let parts: Vec<String> = self.iter().map(|(x, d)| format!("{x}={}", m.element_name(d))).collect();
        parts.join(", ")
    }
}

impl FromIterator<(String, usize)> for VarEvaluation {
    fn from_iter<I: IntoIterator<Item = (String, usize)>>(iter: I) -> Self {
        VarEvaluation(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TruthOutcome {
    Value(TruthValue),
    /// An infimum or supremum does not exist in the algebra.
    Undefined,
    /// The answer depends on the part of an infinite domain beyond the
    /// enumerated depth.
    UnknownAtDepth(usize),
}

impl TruthOutcome {
    pub fn value(&self) -> Option<&TruthValue> {
        match self {
            TruthOutcome::Value(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for TruthOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthOutcome::Value(v) => write!(f, "{v}"),
            TruthOutcome::Undefined => f.write_str("undefined"),
            TruthOutcome::UnknownAtDepth(k) => write!(f, "unknown at depth {k}"),
        }
    }
}

/// Value of a term. An application left undefined by a finite fragment is
/// reported as an error; [`eval_formula`] turns it into an unknown outcome.
pub fn eval_term(m: &FuzzyStructure, v: &VarEvaluation, t: &Term) -> Result<usize, EvalError> {
    match t {
        Term::Var(x) => v.get(x).ok_or_else(|| EvalError::UnmappedVariable(x.clone())),
        Term::App(f, args) => {
            let vals = args.iter().map(|a| eval_term(m, v, a)).collect::<Result<Vec<_>, _>>()?;
            m.function_value(f, &vals)?
                .ok_or_else(|| EvalError::UndefinedApplication {
                    function: f.clone(),
                    args: vals.iter().map(|&d| m.element_name(d)).collect::<Vec<_>>().join(","),
                })
        }
    }
}

pub fn eval_formula(m: &FuzzyStructure, v: &VarEvaluation, phi: &Formula) -> Result<TruthOutcome, EvalError> {
    let alg = &m.algebra;
    match phi {
        Formula::Bottom => Ok(TruthOutcome::Value(alg.bottom())),
        Formula::Top => Ok(TruthOutcome::Value(alg.top())),
        Formula::Atom(atom) => {
            let mut args = Vec::with_capacity(atom.args.len());
            for t in &atom.args {
                match eval_term(m, v, t) {
                    Ok(d) => args.push(d),
                    Err(EvalError::UndefinedApplication { .. }) if m.truncated_at.is_some() => {
                        return Ok(TruthOutcome::UnknownAtDepth(m.truncated_at.unwrap_or_default()));
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(TruthOutcome::Value(m.predicate_value(&atom.predicate, &args)?.clone()))
        }
        Formula::Binary(c, a, b) => {
            let left = eval_formula(m, v, a)?;
            let absorbing = match c {
                Connective::StrongAnd | Connective::WeakAnd => left.value().filter(|x| alg.is_bottom(x)).cloned(),
                Connective::Or => left.value().filter(|x| alg.is_top(x)).cloned(),
                Connective::Implies => left.value().filter(|x| alg.is_bottom(x)).map(|_| alg.top()),
            };
            if let Some(x) = absorbing {
                return Ok(TruthOutcome::Value(x));
            }
            let right = eval_formula(m, v, b)?;
            combine(m, *c, left, right)
        }
        Formula::Quantified(q, x, body) => {
            let mut values = Vec::with_capacity(m.size());
            let mut pending: Option<TruthOutcome> = None;
            let mut inner = v.clone();
            for d in 0..m.size() {
                inner.insert(x.clone(), d);
                match eval_formula(m, &inner, body)? {
                    TruthOutcome::Value(val) => {
                        let decisive = match q {
                            Quantifier::Forall => alg.is_bottom(&val),
                            Quantifier::Exists => alg.is_top(&val),
                        };
                        if decisive {
                            return Ok(TruthOutcome::Value(val));
                        }
                        values.push(val);
                    }
                    other => pending = Some(merge_pending(pending, other)),
                }
            }
            if let Some(p) = pending {
                return Ok(p);
            }
            if let Some(k) = m.truncated_at {
                return Ok(TruthOutcome::UnknownAtDepth(k));
            }
            let bound = match q {
                Quantifier::Forall => alg.infimum(&values)?,
                Quantifier::Exists => alg.supremum(&values)?,
            };
            Ok(bound.map_or(TruthOutcome::Undefined, TruthOutcome::Value))
        }
    }
}

/// Unknown outcomes take precedence over undefined ones: more of the domain
/// could still settle the value.
fn merge_pending(a: Option<TruthOutcome>, b: TruthOutcome) -> TruthOutcome {
    match (a, b) {
        (Some(u @ TruthOutcome::UnknownAtDepth(_)), _) => u,
        (_, b) => b,
    }
}

fn combine(
    m: &FuzzyStructure,
    c: Connective,
    left: TruthOutcome,
    right: TruthOutcome,
) -> Result<TruthOutcome, EvalError> {
    let alg = &m.algebra;
    let absorbing = match c {
        Connective::StrongAnd | Connective::WeakAnd => right.value().filter(|x| alg.is_bottom(x)).cloned(),
        Connective::Or => right.value().filter(|x| alg.is_top(x)).cloned(),
        Connective::Implies => right.value().filter(|x| alg.is_top(x)).cloned(),
    };
    if let Some(x) = absorbing {
        return Ok(TruthOutcome::Value(x));
    }
    let (a, b) = match (left, right) {
        (TruthOutcome::Value(a), TruthOutcome::Value(b)) => (a, b),
        (l, r) => return Ok(merge_pending(Some(l), r)),
    };
    let result = match c {
        Connective::StrongAnd => alg.conj(&a, &b),
        Connective::WeakAnd => alg.meet(&a, &b),
        Connective::Or => alg.join(&a, &b),
        Connective::Implies => alg.residuum(&a, &b),
    };
    match result {
        Ok(x) => Ok(TruthOutcome::Value(x)),
        Err(AlgebraError::NoMeet(..) | AlgebraError::NoJoin(..)) => Ok(TruthOutcome::Undefined),
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelCheck {
    Yes,
    /// The first formula (by index) failing under some assignment.
    No {
        formula: usize,
        assignment: VarEvaluation,
        outcome: TruthOutcome,
    },
    /// No failure found, but some evaluation could not be settled.
    Unknown {
        formula: usize,
        assignment: VarEvaluation,
        depth: usize,
    },
}

impl ModelCheck {
    pub fn is_yes(&self) -> bool {
        matches!(self, ModelCheck::Yes)
    }
}

/// Checks that every formula takes the top value under every assignment of
/// its free variables.
pub fn is_model(m: &FuzzyStructure, phi: &[Formula]) -> Result<ModelCheck, EvalError> {
    let mut unknown = None;
    for (i, f) in phi.iter().enumerate() {
        let vars = f.free_vars_ordered();
        for tuple in m.tuples(vars.len()) {
            let assignment: VarEvaluation = vars.iter().cloned().zip(tuple).collect();
            match eval_formula(m, &assignment, f)? {
                TruthOutcome::Value(x) if m.algebra.is_top(&x) => {}
                TruthOutcome::UnknownAtDepth(depth) => {
                    unknown.get_or_insert(ModelCheck::Unknown {
                        formula: i,
                        assignment,
                        depth,
                    });
                }
                outcome => {
                    return Ok(ModelCheck::No {
                        formula: i,
                        assignment,
                        outcome,
                    })
                }
            }
            if let (Some(depth), false) = (m.truncated_at, vars.is_empty()) {
                unknown.get_or_insert(ModelCheck::Unknown {
                    formula: i,
                    assignment: VarEvaluation::new(),
                    depth,
                });
            }
        }
    }
    Ok(unknown.unwrap_or(ModelCheck::Yes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, TableAlgebra};
    use crate::syntax::{parse_formula, Signature};

    fn luk_example() -> FuzzyStructure {
        let mut sig = Signature::new();
        for p in ["P1", "P2", "P3"] {
            sig.add_predicate(p, 1).unwrap();
        }
        sig.add_constant("c").unwrap();
        let mut m = FuzzyStructure::new(Algebra::Lukasiewicz, sig, vec!["c".into()]).unwrap();
        m.set_function("c", &[], 0).unwrap();
        m.set_predicate("P1", &[0], TruthValue::real(1, 1)).unwrap();
        m.set_predicate("P2", &[0], TruthValue::real(9, 10)).unwrap();
        m.set_predicate("P3", &[0], TruthValue::real(1, 2)).unwrap();
        m
    }

    fn eval_str(m: &FuzzyStructure, s: &str) -> TruthOutcome {
        let f = parse_formula(s, &m.signature).unwrap();
        eval_formula(m, &VarEvaluation::new(), &f).unwrap()
    }

    #[test]
    fn lukasiewicz_rule_value() {
        let m = luk_example();
        assert_eq!(
            eval_str(&m, "P1(c) & P2(c) -> P3(c)"),
            TruthOutcome::Value(TruthValue::real(3, 5))
        );
    }

    #[test]
    fn godel_negations() {
        let mut sig = Signature::new();
        sig.add_predicate("P", 1).unwrap();
        sig.add_constant("c").unwrap();
        let mut m = FuzzyStructure::new(Algebra::Godel, sig, vec!["c".into()]).unwrap();
        m.set_function("c", &[], 0).unwrap();
        m.set_predicate("P", &[0], TruthValue::real(4, 5)).unwrap();
        assert_eq!(
            eval_str(&m, "~(P(c) -> bot)"),
            TruthOutcome::Value(TruthValue::real(1, 1))
        );
        assert_eq!(eval_str(&m, "P(c) -> bot"), TruthOutcome::Value(TruthValue::real(0, 1)));
        let phi = vec![parse_formula("~(P(c) -> bot)", &m.signature).unwrap()];
        assert!(is_model(&m, &phi).unwrap().is_yes());
        let p = vec![parse_formula("P(c)", &m.signature).unwrap()];
        match is_model(&m, &p).unwrap() {
            ModelCheck::No { outcome, .. } => assert_eq!(outcome, TruthOutcome::Value(TruthValue::real(4, 5))),
            other => panic!("{other:?}"),
        }
        assert!(is_model(&m, &[]).unwrap().is_yes());
    }

    #[test]
    fn strong_conjunction_does_not_distribute() {
        let mut sig = Signature::new();
        sig.add_predicate("P", 1).unwrap();
        sig.add_predicate("Q", 1).unwrap();
        let mut m = FuzzyStructure::new(Algebra::Lukasiewicz, sig, vec!["d1".into(), "d2".into()]).unwrap();
        m.set_predicate("P", &[0], TruthValue::real(1, 2)).unwrap();
        m.set_predicate("P", &[1], TruthValue::real(1, 1)).unwrap();
        m.set_predicate("Q", &[0], TruthValue::real(1, 1)).unwrap();
        m.set_predicate("Q", &[1], TruthValue::real(1, 2)).unwrap();
        assert_eq!(
            eval_str(&m, "(forall x. P(x)) & (forall x. Q(x))"),
            TruthOutcome::Value(TruthValue::real(0, 1))
        );
        assert_eq!(
            eval_str(&m, "forall x. P(x) & Q(x)"),
            TruthOutcome::Value(TruthValue::real(1, 2))
        );
    }

    #[test]
    fn free_variables_need_values() {
        let m = luk_example();
        let f = parse_formula("P1(x)", &m.signature).unwrap();
        assert_eq!(
            eval_formula(&m, &VarEvaluation::new(), &f),
            Err(EvalError::UnmappedVariable("x".into()))
        );
        assert_eq!(
            eval_formula(&m, &VarEvaluation::new().with("x", 0), &f).unwrap(),
            TruthOutcome::Value(TruthValue::real(1, 1))
        );
    }

    #[test]
    fn truncated_domains_report_unknown_unless_decided() {
        let mut sig = Signature::new();
        sig.add_predicate("P", 1).unwrap();
        let mut m = FuzzyStructure::new(Algebra::Boolean, sig, vec!["a".into(), "b".into()]).unwrap();
        m.truncated_at = Some(1);
        m.set_predicate("P", &[0], TruthValue::Bit(true)).unwrap();
        assert_eq!(
            eval_str(&m, "forall x. P(x)"),
            TruthOutcome::Value(TruthValue::Bit(false))
        );
        assert_eq!(
            eval_str(&m, "exists x. P(x)"),
            TruthOutcome::Value(TruthValue::Bit(true))
        );
        m.set_predicate("P", &[1], TruthValue::Bit(true)).unwrap();
        assert_eq!(eval_str(&m, "forall x. P(x)"), TruthOutcome::UnknownAtDepth(1));
    }

    #[test]
    fn non_lattice_quantifier_is_undefined() {
        // 3 and 4 have two maximal lower bounds, 1 and 2
        let n = 6usize;
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
            leq[a] = true;
            leq[a * n + 5] = true;
        }
        for (a, b) in [(1, 3), (2, 3), (1, 4), (2, 4)] {
            leq[a * n + b] = true;
        }
        let t = TableAlgebra::from_tables(6, vec![0; 36], vec![0; 36], leq).unwrap();
        let alg = Algebra::Table(std::sync::Arc::new(t));
        let mut sig = Signature::new();
        sig.add_predicate("P", 1).unwrap();
        let mut m = FuzzyStructure::new(alg, sig, vec!["a".into(), "b".into()]).unwrap();
        m.set_predicate("P", &[0], TruthValue::Level(3)).unwrap();
        m.set_predicate("P", &[1], TruthValue::Level(4)).unwrap();
        assert_eq!(eval_str(&m, "forall x. P(x)"), TruthOutcome::Undefined);
        assert_eq!(
            eval_str(&m, "exists x. P(x)"),
            TruthOutcome::Value(TruthValue::Level(5))
        );
    }
}
