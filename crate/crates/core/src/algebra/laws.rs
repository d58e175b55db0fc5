//! Exhaustive and sampled checks of the MTL-algebra laws.

use std::fmt;

use super::{Algebra, AlgebraError, TruthValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    Commutativity,
    Associativity,
    Unit,
    Monotonicity,
    Residuation,
    Prelinearity,
    Lattice,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Commutativity => "commutativity",
            Law::Associativity => "associativity",
            Law::Unit => "unit",
            Law::Monotonicity => "monotonicity",
            Law::Residuation => "residuation",
            Law::Prelinearity => "prelinearity",
            Law::Lattice => "lattice",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    pub witness: Vec<TruthValue>,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witness.iter().map(ToString::to_string).collect();
        write!(f, "{} fails at ({})", self.law, w.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub triples_checked: usize,
    pub violation: Option<LawViolation>,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks every law on every triple drawn from `samples`.
pub fn check_residuation(alg: &Algebra, samples: &[TruthValue]) -> LawReport {
    let mut checked = 0;
    for a in samples {
        for b in samples {
            for c in samples {
                checked += 1;
                if let Some(violation) = check_triple(alg, a, b, c) {
                    return LawReport {
                        triples_checked: checked,
                        violation: Some(violation),
                    };
                }
            }
        }
    }
    LawReport {
        triples_checked: checked,
        violation: None,
    }
}

/// Checks every law on the given triples only.
pub fn check_laws_on_triples(alg: &Algebra, triples: &[(TruthValue, TruthValue, TruthValue)]) -> LawReport {
    for (i, (a, b, c)) in triples.iter().enumerate() {
        if let Some(violation) = check_triple(alg, a, b, c) {
            return LawReport {
                triples_checked: i + 1,
                violation: Some(violation),
            };
        }
    }
    LawReport {
        triples_checked: triples.len(),
        violation: None,
    }
}

fn check_triple(alg: &Algebra, a: &TruthValue, b: &TruthValue, c: &TruthValue) -> Option<LawViolation> {
    let fail = |law: Law, w: &[&TruthValue]| {
        Some(LawViolation {
            law,
            witness: w.iter().map(|v| (*v).clone()).collect(),
        })
    };
    let run = || -> Result<Option<LawViolation>, AlgebraError> {
        let ab = alg.conj(a, b)?;
        if ab != alg.conj(b, a)? {
            return Ok(fail(Law::Commutativity, &[a, b]));
        }
        if alg.conj(&ab, c)? != alg.conj(a, &alg.conj(b, c)?)? {
            return Ok(fail(Law::Associativity, &[a, b, c]));
        }
        if alg.conj(a, &alg.top())? != *a {
            return Ok(fail(Law::Unit, &[a]));
        }
        if alg.leq(a, b)? && !alg.leq(&alg.conj(a, c)?, &alg.conj(b, c)?)? {
            return Ok(fail(Law::Monotonicity, &[a, b, c]));
        }
        if alg.leq(&ab, c)? != alg.leq(a, &alg.residuum(b, c)?)? {
            return Ok(fail(Law::Residuation, &[a, b, c]));
        }
        let pre = alg.join(&alg.residuum(a, b)?, &alg.residuum(b, a)?)?;
        if !alg.is_top(&pre) {
            return Ok(fail(Law::Prelinearity, &[a, b]));
        }
        Ok(None)
    };
    match run() {
        Ok(v) => v,
        Err(AlgebraError::NoMeet(..) | AlgebraError::NoJoin(..)) => fail(Law::Lattice, &[a, b]),
        Err(_) => fail(Law::Lattice, &[a, b, c]),
    }
}
