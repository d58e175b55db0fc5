//! Herbrand universes and H-structures: Boolean structures on ground terms
//! fixed by a set of true ground atoms.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{Algebra, TruthValue};
use crate::saturation::{saturate, SaturationConfig, SaturationError, TermUniverse};
use crate::semantics::{eval_formula, EvalError, FuzzyStructure, StructureError, TruthOutcome, VarEvaluation};
use crate::syntax::{parse_formula, Atom, Formula, ParseError, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HerbrandError {
    #[error("the signature has no constants, so the Herbrand universe is empty")]
    NoConstants,
    #[error("equality may not occur in an H-structure: {0}")]
    Equality(String),
    #[error("0-ary predicate atom `{0}` has no place in an H-structure")]
    ZeroAry(String),
    #[error("predicate `{0}` is not declared")]
    UnknownPredicate(String),
    #[error("term {0} is not in the Herbrand universe")]
    OutsideUniverse(String),
    #[error("cannot decide {0} in the model")]
    Unknown(String),
    #[error("the theory is not equality-free: {0}")]
    NotEqualityFree(String),
    #[error("inconsistent: bot derived")]
    Inconsistent,
    #[error(transparent)]
    Saturation(#[from] SaturationError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Ground terms up to a depth bound, in representative order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HerbrandUniverse {
    pub terms: Vec<Term>,
    pub depth: usize,
    /// Exact when the signature has no function symbols of positive arity.
    pub complete: bool,
}

impl HerbrandUniverse {
    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains(t)
    }
}

pub fn herbrand_universe(sig: &Signature, depth: usize) -> Result<HerbrandUniverse, HerbrandError> {
    if sig.constants().next().is_none() {
        return Err(HerbrandError::NoConstants);
    }
    let u = TermUniverse::build(sig, &[], depth, usize::MAX);
    Ok(HerbrandUniverse {
        terms: u.nodes().iter().map(|n| n.term.clone()).collect(),
        depth,
        complete: sig.is_function_free(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HStructure {
    pub universe: HerbrandUniverse,
    pub atoms: BTreeSet<Atom>,
    pub signature: Signature,
}

impl HStructure {
    /// Validates `atoms` against the signature and the depth-`depth` universe.
    pub fn new(
        atoms: impl IntoIterator<Item = Atom>,
        sig: &Signature,
        depth: usize,
    ) -> Result<HStructure, HerbrandError> {
        let universe = herbrand_universe(sig, depth)?;
        let mut set = BTreeSet::new();
        for a in atoms {
            if a.is_equality() {
                return Err(HerbrandError::Equality(a.to_string()));
            }
            match sig.predicate_arity(&a.predicate) {
                None => return Err(HerbrandError::UnknownPredicate(a.predicate.clone())),
                Some(0) => return Err(HerbrandError::ZeroAry(a.to_string())),
                Some(n) if n != a.args.len() => return Err(HerbrandError::UnknownPredicate(a.to_string())),
                Some(_) => {}
            }
            if let Some(t) = a.args.iter().find(|t| !universe.contains(t)) {
                return Err(HerbrandError::OutsideUniverse(t.to_string()));
            }
            set.insert(a);
        }
        Ok(HStructure {
            universe,
            atoms: set,
            signature: sig.clone(),
        })
    }

    /// Parses one ground atom per line (`#` comments allowed).
    pub fn parse(text: &str, sig: &Signature, depth: usize) -> Result<HStructure, HerbrandError> {
        let mut atoms = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match parse_formula(line, sig)? {
                Formula::Atom(a) => atoms.push(a),
                other => return Err(HerbrandError::Equality(other.to_string())),
            }
        }
        HStructure::new(atoms, sig, depth)
    }

    /// Sorted, one atom per line.
    pub fn to_text(&self) -> String {
        let mut lines: Vec<String> = self.atoms.iter().map(ToString::to_string).collect();
        lines.sort();
        let mut out = String::new();
        for l in lines {
            let _ = writeln!(out, "{l}");
        }
        out
    }

    /// The Boolean structure on the universe: functions build terms,
    /// predicates are true exactly on the atoms of the set and `==` is
    /// syntactic identity.
    pub fn to_structure(&self) -> Result<FuzzyStructure, HerbrandError> {
        let domain = self.universe.terms.iter().map(ToString::to_string).collect();
        let mut m = FuzzyStructure::new(Algebra::Boolean, self.signature.clone(), domain)?;
        let fns: Vec<(String, usize)> = self.signature.functions().map(|(f, a)| (f.to_string(), a)).collect();
        for (f, arity) in fns {
            for args in m.tuples(arity).collect::<Vec<_>>() {
                let t = Term::app(&f, args.iter().map(|&i| self.universe.terms[i].clone()).collect());
                if let Some(j) = self.universe.terms.iter().position(|u| *u == t) {
                    m.set_function(&f, &args, j)?;
                }
            }
        }
        for a in &self.atoms {
            let args: Vec<usize> = a
                .args
                .iter()
                .map(|t| self.universe.terms.iter().position(|u| u == t).expect("validated"))
                .collect();
            m.set_predicate(&a.predicate, &args, TruthValue::Bit(true))?;
        }
        if !self.universe.complete {
            m.truncated_at = Some(self.universe.depth);
        }
        Ok(m)
    }
}

pub fn h_structure_from_atoms(atoms: &[Atom], sig: &Signature, depth: usize) -> Result<FuzzyStructure, HerbrandError> {
    HStructure::new(atoms.iter().cloned(), sig, depth)?.to_structure()
}

/// The H-structure of a model: all equality-free ground atoms of positive
/// arity taking the top value. With `partial`, atoms the model cannot decide
/// are left out instead of failing.
pub fn h_structure_of_model(m: &FuzzyStructure, depth: usize, partial: bool) -> Result<HStructure, HerbrandError> {
    let sig = &m.signature;
    let universe = herbrand_universe(sig, depth)?;
    let mut atoms = Vec::new();
    let preds: Vec<(String, usize)> = sig
        .proper_predicates()
        .filter(|(_, a)| *a > 0)
        .map(|(p, a)| (p.to_string(), a))
        .collect();
    let k = universe.terms.len();
    for (p, arity) in preds {
        for mut i in 0..k.pow(arity as u32) {
            let mut args = Vec::with_capacity(arity);
            for _ in 0..arity {
                args.push(universe.terms[i % k].clone());
                i /= k;
            }
            args.reverse();
            let atom = Atom::new(p.clone(), args);
            match eval_formula(m, &VarEvaluation::new(), &Formula::Atom(atom.clone()))? {
                TruthOutcome::Value(v) if m.algebra.is_top(&v) => atoms.push(atom),
                TruthOutcome::Value(_) => {}
                _ if partial => {}
                _ => return Err(HerbrandError::Unknown(atom.to_string())),
            }
        }
    }
    HStructure::new(atoms, sig, depth)
}

/// The least H-model of an equality-free Horn theory, read off a ground
/// saturation.
pub fn least_h_model(
    theory: &[Formula],
    sig: &Signature,
    config: &SaturationConfig,
) -> Result<(HStructure, bool), HerbrandError> {
    if let Some(f) = theory.iter().find(|f| f.mentions_equality()) {
        return Err(HerbrandError::NotEqualityFree(f.to_string()));
    }
    if let Some(a) = theory.iter().flat_map(|f| f.atoms()).find(|a| a.args.is_empty()) {
        return Err(HerbrandError::ZeroAry(a.to_string()));
    }
    if sig.constants().next().is_none() {
        return Err(HerbrandError::NoConstants);
    }
    let config = SaturationConfig {
        frozen_vars: Vec::new(),
        ..config.clone()
    };
    let res = saturate(theory, sig, &config)?;
    if res.bottom_derived {
        return Err(HerbrandError::Inconsistent);
    }
    let h = HStructure::new(res.atoms(), sig, res.universe.depth())?;
    Ok((h, res.complete))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::is_model;

    fn sig3() -> Signature {
        let mut s = Signature::new();
        for p in ["P1", "P2", "P3"] {
            s.add_predicate(p, 1).unwrap();
        }
        s.add_constant("c").unwrap();
        s
    }

    #[test]
    fn universes() {
        let mut s = Signature::new();
        s.add_constant("c").unwrap();
        assert_eq!(herbrand_universe(&s, 3).unwrap().terms, vec![Term::constant("c")]);
        s.add_function("f", 1).unwrap();
        let u = herbrand_universe(&s, 2).unwrap();
        let names: Vec<String> = u.terms.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["c", "f(c)", "f(f(c))"]);
        assert!(!u.complete);
        assert_eq!(herbrand_universe(&Signature::new(), 1), Err(HerbrandError::NoConstants));
    }

    #[test]
    fn extraction_from_lukasiewicz_model() {
        let mut m = FuzzyStructure::new(Algebra::Lukasiewicz, sig3(), vec!["c".into()]).unwrap();
        m.set_function("c", &[], 0).unwrap();
        m.set_predicate("P1", &[0], TruthValue::real(1, 1)).unwrap();
        m.set_predicate("P2", &[0], TruthValue::real(9, 10)).unwrap();
        m.set_predicate("P3", &[0], TruthValue::real(1, 2)).unwrap();
        let h = h_structure_of_model(&m, 0, false).unwrap();
        assert_eq!(h.to_text(), "P1(c)\n");
        let nh = h.to_structure().unwrap();
        let f = parse_formula("P1(c) & P2(c) -> P3(c)", &sig3()).unwrap();
        assert_eq!(
            eval_formula(&nh, &VarEvaluation::new(), &f).unwrap(),
            TruthOutcome::Value(TruthValue::Bit(true))
        );
    }

    #[test]
    fn rejects_bad_atoms() {
        let mut s = sig3().with_equality();
        s.add_predicate("Z", 0).unwrap();
        let c = Term::constant("c");
        assert!(matches!(
            HStructure::new([Atom::new("==", vec![c.clone(), c.clone()])], &s, 0),
            Err(HerbrandError::Equality(_))
        ));
        assert!(matches!(
            HStructure::new([Atom::new("Z", vec![])], &s, 0),
            Err(HerbrandError::ZeroAry(_))
        ));
        let fc = Term::app("f", vec![c]);
        assert!(matches!(
            HStructure::new([Atom::new("P1", vec![fc])], &s, 0),
            Err(HerbrandError::OutsideUniverse(_))
        ));
    }

    #[test]
    fn least_models() {
        let mut s = Signature::new();
        s.add_predicate("P", 1).unwrap();
        s.add_predicate("Q", 1).unwrap();
        s.add_constant("c").unwrap();
        let th: Vec<Formula> = ["P(c)", "forall x. P(x) -> Q(x)"]
            .iter()
            .map(|f| parse_formula(f, &s).unwrap())
            .collect();
        let (h, complete) = least_h_model(&th, &s, &SaturationConfig::default()).unwrap();
        assert!(complete);
        assert_eq!(h.to_text(), "P(c)\nQ(c)\n");
        assert!(is_model(&h.to_structure().unwrap(), &th).unwrap().is_yes());

        let (empty, _) = least_h_model(&th[1..], &s, &SaturationConfig::default()).unwrap();
        assert!(empty.atoms.is_empty());
        assert!(is_model(&empty.to_structure().unwrap(), &th[1..]).unwrap().is_yes());

        let bad = vec![th[0].clone(), parse_formula("P(c) -> bot", &s).unwrap()];
        assert_eq!(
            least_h_model(&bad, &s, &SaturationConfig::default()).unwrap_err(),
            HerbrandError::Inconsistent
        );
    }
}
