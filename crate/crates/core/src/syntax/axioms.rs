use thiserror::Error;

use super::formula::{Connective, Formula};
use super::signature::{Signature, EQUALITY};
use super::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the signature has no similarity symbol `==`")]
pub struct NoEqualityError;

fn eq(a: &str, b: &str) -> Formula {
    Formula::eq(Term::var(a), Term::var(b))
}

fn forall_all(vars: &[String], body: Formula) -> Formula {
    vars.iter().rev().fold(body, |acc, x| Formula::forall(x.clone(), acc))
}

/// Reflexivity, symmetry and strong transitivity of `==`, one congruence
/// axiom per function symbol of positive arity and one per predicate symbol
/// of positive arity other than `==` itself.
pub fn similarity_axioms(sig: &Signature) -> Result<Vec<Formula>, NoEqualityError> {
    if !sig.has_equality() {
        return Err(NoEqualityError);
    }
    let mut out = vec![
        Formula::forall("x", eq("x", "x")),
        Formula::forall("x", Formula::forall("y", Formula::implies(eq("x", "y"), eq("y", "x")))),
        Formula::forall(
            "x",
            Formula::forall(
                "y",
                Formula::forall(
                    "z",
                    Formula::implies(Formula::strong_and(eq("x", "y"), eq("y", "z")), eq("x", "z")),
                ),
            ),
        ),
    ];
    for (f, n) in sig.functions().filter(|(_, n)| *n > 0) {
        let (xs, ys, hyp) = congruence_hypothesis(n);
        let concl = Formula::eq(
            Term::app(f, xs.iter().map(|x| Term::var(x.clone())).collect()),
            Term::app(f, ys.iter().map(|y| Term::var(y.clone())).collect()),
        );
        out.push(forall_all(&[xs, ys].concat(), Formula::implies(hyp, concl)));
    }
    for (p, n) in sig.predicates().filter(|(p, n)| *p != EQUALITY && *n > 0) {
        let (xs, ys, hyp) = congruence_hypothesis(n);
        let px = Formula::atom(p, xs.iter().map(|x| Term::var(x.clone())).collect());
        let py = Formula::atom(p, ys.iter().map(|y| Term::var(y.clone())).collect());
        out.push(forall_all(
            &[xs, ys].concat(),
            Formula::implies(hyp, Formula::iff(px, py)),
        ));
    }
    Ok(out)
}

fn congruence_hypothesis(n: usize) -> (Vec<String>, Vec<String>, Formula) {
    let xs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let hyp = Formula::fold(Connective::StrongAnd, xs.iter().zip(&ys).map(|(x, y)| eq(x, y))).expect("positive arity");
    (xs, ys, hyp)
}
