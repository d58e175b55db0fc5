//! Naive ground forward chaining over constants and frozen variables, with
//! the similarity and congruence laws as explicit rules.

use std::collections::BTreeSet;

use fuzzy_horn::syntax::{Atom, Term, EQUALITY};

use super::gen::{GAtom, GHead, GTerm, GenTheory};

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub atoms: BTreeSet<Atom>,
    pub bottom: bool,
}

fn ground(th: &GenTheory, a: &GAtom, sub: &[Term]) -> Atom {
    let args = a
        .args
        .iter()
        .map(|t| match *t {
            GTerm::Var(i) => sub[i].clone(),
            GTerm::Const(_) => th.term(*t),
        })
        .collect();
    Atom::new(th.pred_name(a), args)
}

fn assignments(terms: &[Term], n: usize) -> Vec<Vec<Term>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| {
                terms.iter().map(move |t| {
                    let mut s = s.clone();
                    s.push(t.clone());
                    s
                })
            })
            .collect();
    }
    out
}

pub fn forward_chain(th: &GenTheory, frozen: &[&str]) -> OracleResult {
    let mut terms: Vec<Term> = th.consts.iter().map(Term::constant).collect();
    terms.extend(frozen.iter().map(|v| Term::var(*v)));
    let mut atoms: BTreeSet<Atom> = BTreeSet::new();
    let mut bottom = false;
    let eq = |a: &Term, b: &Term| Atom::new(EQUALITY, vec![a.clone(), b.clone()]);
    loop {
        let mut new: Vec<Atom> = Vec::new();
        if th.equality {
            for t in &terms {
                new.push(eq(t, t));
            }
            let eqs: Vec<(Term, Term)> = atoms
                .iter()
                .filter(|a| a.predicate == EQUALITY)
                .map(|a| (a.args[0].clone(), a.args[1].clone()))
                .collect();
            for (a, b) in &eqs {
                new.push(eq(b, a));
                for (c, d) in &eqs {
                    if b == c {
                        new.push(eq(a, d));
                    }
                }
            }
            for atom in atoms.iter().filter(|a| a.predicate != EQUALITY) {
                for i in 0..atom.args.len() {
                    for (a, b) in &eqs {
                        if &atom.args[i] == a {
                            let mut args = atom.args.clone();
                            args[i] = b.clone();
                            new.push(Atom::new(atom.predicate.clone(), args));
                        }
                    }
                }
            }
        }
        for c in &th.clauses {
            let nvars = c
                .body
                .iter()
                .chain(match &c.head {
                    GHead::Atom(a) => Some(a),
                    GHead::Bottom => None,
                })
                .flat_map(|a| a.args.iter())
                .filter_map(|t| match t {
                    GTerm::Var(i) => Some(i + 1),
                    GTerm::Const(_) => None,
                })
                .max()
                .unwrap_or(0);
            for sub in assignments(&terms, nvars) {
                if c.body.iter().all(|a| atoms.contains(&ground(th, a, &sub))) {
                    match &c.head {
                        GHead::Atom(h) => new.push(ground(th, h, &sub)),
                        GHead::Bottom => bottom = true,
                    }
                }
            }
        }
        let before = atoms.len();
        atoms.extend(new);
        if atoms.len() == before {
            return OracleResult { atoms, bottom };
        }
    }
}
