use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use fuzzy_horn::algebra::{Algebra, TruthValue};
use fuzzy_horn::semantics::FuzzyStructure;
use fuzzy_horn::syntax::{Connective, Formula, Signature, Term, EQUALITY};

pub const VAR_NAMES: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GTerm {
    Var(usize),
    Const(usize),
}

/// Predicate index, or `None` for the similarity symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GAtom {
    pub pred: Option<usize>,
    pub args: Vec<GTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GHead {
    Atom(GAtom),
    Bottom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GClause {
    pub body: Vec<GAtom>,
    pub head: GHead,
    pub weak: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenTheory {
    pub preds: Vec<(String, usize)>,
    pub consts: Vec<String>,
    pub equality: bool,
    pub clauses: Vec<GClause>,
}

#[derive(Debug, Clone, Copy)]
pub struct GenParams {
    pub max_preds: usize,
    pub max_arity: usize,
    pub max_consts: usize,
    pub max_clauses: usize,
    pub max_vars: usize,
    pub max_body: usize,
    pub equality: f64,
    pub bottom: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_preds: 3,
            max_arity: 2,
            max_consts: 3,
            max_clauses: 6,
            max_vars: 2,
            max_body: 3,
            equality: 0.4,
            bottom: 0.0,
        }
    }
}

impl GenTheory {
    pub fn random(rng: &mut StdRng, p: &GenParams) -> GenTheory {
        let preds = (0..rng.gen_range(1..=p.max_preds))
            .map(|i| (format!("P{i}"), rng.gen_range(1..=p.max_arity)))
            .collect::<Vec<_>>();
        let consts = (0..rng.gen_range(1..=p.max_consts)).map(|i| format!("c{i}")).collect();
        let equality = rng.gen_bool(p.equality);
        let mut th = GenTheory {
            preds,
            consts,
            equality,
            clauses: Vec::new(),
        };
        for _ in 0..rng.gen_range(1..=p.max_clauses) {
            let nvars = rng.gen_range(0..=p.max_vars);
            let body = (0..rng.gen_range(0..=p.max_body))
                .map(|_| th.random_atom(rng, nvars))
                .collect();
            let head = if rng.gen_bool(p.bottom) {
                GHead::Bottom
            } else {
                GHead::Atom(th.random_atom(rng, nvars))
            };
            th.clauses.push(GClause {
                body,
                head,
                weak: rng.gen_bool(0.3),
            });
        }
        th
    }

    fn random_atom(&self, rng: &mut StdRng, nvars: usize) -> GAtom {
        let pred = if self.equality && rng.gen_bool(0.25) {
            None
        } else {
            Some(rng.gen_range(0..self.preds.len()))
        };
        let arity = pred.map_or(2, |i| self.preds[i].1);
        let args = (0..arity)
            .map(|_| {
                if nvars > 0 && rng.gen_bool(0.6) {
                    GTerm::Var(rng.gen_range(0..nvars))
                } else {
                    GTerm::Const(rng.gen_range(0..self.consts.len()))
                }
            })
            .collect();
        GAtom { pred, args }
    }

    pub fn signature(&self) -> Signature {
        let mut s = Signature::new();
        for (p, a) in &self.preds {
            s.add_predicate(p, *a).unwrap();
        }
        for c in &self.consts {
            s.add_constant(c).unwrap();
        }
        s.set_equality(self.equality);
        s
    }

    pub fn term(&self, t: GTerm) -> Term {
        match t {
            GTerm::Var(i) => Term::var(VAR_NAMES[i]),
            GTerm::Const(i) => Term::constant(&self.consts[i]),
        }
    }

    pub fn pred_name(&self, a: &GAtom) -> String {
        a.pred.map_or(EQUALITY.to_string(), |i| self.preds[i].0.clone())
    }

    pub fn atom_formula(&self, a: &GAtom) -> Formula {
        Formula::atom(self.pred_name(a), a.args.iter().map(|&t| self.term(t)).collect())
    }

    /// Universally closed clause.
    pub fn formula(&self, c: &GClause) -> Formula {
        let head = match &c.head {
            GHead::Atom(a) => self.atom_formula(a),
            GHead::Bottom => Formula::Bottom,
        };
        let conj = if c.weak {
            Connective::WeakAnd
        } else {
            Connective::StrongAnd
        };
        let matrix = match Formula::fold(conj, c.body.iter().map(|a| self.atom_formula(a))) {
            Some(body) => Formula::implies(body, head),
            None => head,
        };
        let mut vars: Vec<usize> = c
            .body
            .iter()
            .chain(match &c.head {
                GHead::Atom(a) => Some(a),
                GHead::Bottom => None,
            })
            .flat_map(|a| a.args.iter())
            .filter_map(|t| match t {
                GTerm::Var(i) => Some(*i),
                GTerm::Const(_) => None,
            })
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars.into_iter()
            .rev()
            .fold(matrix, |f, i| Formula::forall(VAR_NAMES[i], f))
    }

    pub fn formulas(&self) -> Vec<Formula> {
        self.clauses.iter().map(|c| self.formula(c)).collect()
    }

    pub fn is_equality_free(&self) -> bool {
        self.clauses.iter().all(|c| {
            c.body.iter().all(|a| a.pred.is_some())
                && match &c.head {
                    GHead::Atom(a) => a.pred.is_some(),
                    GHead::Bottom => true,
                }
        })
    }
}

/// Random truth value among the finite carrier, or among `k/10` for the
/// infinite standard algebras.
pub fn random_value(rng: &mut StdRng, alg: &Algebra) -> TruthValue {
    match alg.elements() {
        Some(carrier) => carrier.choose(rng).unwrap().clone(),
        None => match alg {
            Algebra::Boolean => TruthValue::Bit(rng.gen()),
            _ => TruthValue::real(rng.gen_range(0..=10), 10),
        },
    }
}

/// Structure over `sig` with random total function tables and predicate
/// values; `==` stays crisp identity.
pub fn random_structure(rng: &mut StdRng, alg: &Algebra, sig: &Signature, size: usize) -> FuzzyStructure {
    let domain = (0..size).map(|i| format!("d{i}")).collect();
    let mut m = FuzzyStructure::new(alg.clone(), sig.clone(), domain).unwrap();
    let functions: Vec<(String, usize)> = sig.functions().map(|(f, a)| (f.to_string(), a)).collect();
    for (f, a) in functions {
        let tuples: Vec<Vec<usize>> = m.tuples(a).collect();
        for t in tuples {
            let v = rng.gen_range(0..size);
            m.set_function(&f, &t, v).unwrap();
        }
    }
    let preds: Vec<(String, usize)> = sig.proper_predicates().map(|(p, a)| (p.to_string(), a)).collect();
    for (p, a) in preds {
        let tuples: Vec<Vec<usize>> = m.tuples(a).collect();
        for t in tuples {
            let v = random_value(rng, alg);
            m.set_predicate(&p, &t, v).unwrap();
        }
    }
    m
}
