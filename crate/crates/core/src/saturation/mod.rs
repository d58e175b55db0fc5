//! Saturation of universal Horn theories: derivable atoms, the term
//! congruence and the term structure built from them.

mod engine;
mod universe;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{Algebra, TruthValue};
use crate::semantics::{FuzzyStructure, StructureError, VarEvaluation};
use crate::syntax::{Atom, Formula, Signature, Term, EQUALITY};
use engine::{ground_depth, AtomBase, Engine};

pub use universe::{CongruenceState, TermNode, TermUniverse};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SaturationError {
    #[error("formula {index} is not a Horn clause ({tag}): {formula}")]
    NotHorn {
        index: usize,
        formula: String,
        tag: &'static str,
    },
    #[error("term {0} is outside the generated universe")]
    OutsideUniverse(String),
    #[error("expected an atomic formula, got {0}")]
    NotAtomic(String),
    #[error("frozen variable `{0}` clashes with a function symbol")]
    FrozenClash(String),
    #[error("`{0}` is not a frozen variable")]
    NotFrozen(String),
    #[error("inconsistent: bot derived")]
    Inconsistent,
    #[error("the term universe is empty (no constants and no frozen variables)")]
    EmptyUniverse,
    #[error(transparent)]
    Structure(#[from] StructureError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationConfig {
    /// Maximal term depth of the generated universe.
    pub depth: usize,
    /// Variables kept as generators of the open part of the universe.
    pub frozen_vars: Vec<String>,
    pub max_rounds: usize,
    pub max_terms: usize,
}

impl Default for SaturationConfig {
    fn default() -> Self {
        SaturationConfig {
            depth: 2,
            frozen_vars: vec!["v1".into()],
            max_rounds: 10_000,
            max_terms: 100_000,
        }
    }
}

impl SaturationConfig {
    /// Frozen variables `v1..vm`.
    pub fn with_frozen(mut self, m: usize) -> Self {
        self.frozen_vars = (1..=m).map(|i| format!("v{i}")).collect();
        self
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivation {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermClass {
    pub representative: Term,
    pub members: Vec<Term>,
}

pub struct SaturationResult {
    pub universe: TermUniverse,
    pub congruence: CongruenceState,
    atoms: AtomBase,
    /// Fixpoint reached over an exact (function-free, untruncated) universe.
    pub complete: bool,
    pub bottom_derived: bool,
    /// Some rule instance needed a term beyond the depth bound.
    pub overflow: bool,
    pub rounds: usize,
    pub signature: Signature,
    pub theory: Vec<Formula>,
    pub frozen_vars: Vec<String>,
    roots: Vec<usize>,
    root_index: HashMap<usize, usize>,
}

/// Saturates `theory` (each formula a strong or weak Horn clause; free
/// variables read universally) over the generated term universe.
pub fn saturate(
    theory: &[Formula],
    sig: &Signature,
    config: &SaturationConfig,
) -> Result<SaturationResult, SaturationError> {
    let depth = config.depth.max(ground_depth(theory));
    let mut engine = start(sig, config, depth)?;
    engine.run(theory, config)?;
    Ok(finish(engine, sig, theory, config))
}

/// Closes the given atoms and equations under the similarity and congruence
/// laws without any further rules.
pub fn saturate_from_atoms(
    atoms: &[Atom],
    equations: &[(Term, Term)],
    sig: &Signature,
    config: &SaturationConfig,
) -> Result<SaturationResult, SaturationError> {
    let depth = atoms
        .iter()
        .flat_map(|a| a.args.iter())
        .chain(equations.iter().flat_map(|(a, b)| [a, b]))
        .map(Term::depth)
        .fold(config.depth, usize::max);
    let mut engine = start(sig, config, depth)?;
    for (a, b) in equations {
        engine.seed_equation(a, b)?;
    }
    for a in atoms {
        engine.seed_atom(a)?;
    }
    engine.run(&[], config)?;
    Ok(finish(engine, sig, &[], config))
}

fn start(sig: &Signature, config: &SaturationConfig, depth: usize) -> Result<Engine, SaturationError> {
    if let Some(v) = config.frozen_vars.iter().find(|v| sig.function_arity(v).is_some()) {
        return Err(SaturationError::FrozenClash(v.clone()));
    }
    Ok(Engine::new(TermUniverse::build(
        sig,
        &config.frozen_vars,
        depth,
        config.max_terms,
    )))
}

fn finish(engine: Engine, sig: &Signature, theory: &[Formula], config: &SaturationConfig) -> SaturationResult {
    let complete = sig.is_function_free()
        && engine.fixpoint
        && !engine.overflow
        && !engine.bottom_derived
        && !engine.universe.truncated();
    let roots = engine.cc.roots();
    let root_index = roots.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    SaturationResult {
        universe: engine.universe,
        congruence: engine.cc,
        atoms: engine.atoms,
        complete,
        bottom_derived: engine.bottom_derived,
        overflow: engine.overflow,
        rounds: engine.rounds,
        signature: sig.clone(),
        theory: theory.to_vec(),
        frozen_vars: config.frozen_vars.clone(),
        roots,
        root_index,
    }
}

impl SaturationResult {
    pub fn is_consistent(&self) -> bool {
        !self.bottom_derived
    }

    fn term(&self, id: usize) -> &Term {
        &self.universe.node(id).term
    }

    /// Classes ordered by representative.
    pub fn classes(&self) -> Vec<TermClass> {
        let members = self.congruence.classes();
        self.roots
            .iter()
            .map(|r| TermClass {
                representative: self.term(*r).clone(),
                members: members[r].iter().map(|&m| self.term(m).clone()).collect(),
            })
            .collect()
    }

    pub fn class_count(&self) -> usize {
        self.roots.len()
    }

    fn root_of(&self, t: &Term) -> Option<usize> {
        match t {
            Term::Var(_) => self.universe.id_of(t).map(|id| self.congruence.find(id)),
            Term::App(f, args) => {
                let roots = args.iter().map(|a| self.root_of(a)).collect::<Option<Vec<_>>>()?;
                self.congruence.lookup(f, &roots)
            }
        }
    }

    /// Position of the term's class in [`SaturationResult::classes`].
    pub fn class_index(&self, t: &Term) -> Option<usize> {
        self.root_of(t).map(|r| self.root_index[&r])
    }

    /// Derived atoms over class representatives, excluding `==`.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        for (p, tuples) in &self.atoms {
            for t in tuples {
                out.push(Atom::new(p.clone(), t.iter().map(|&r| self.term(r).clone()).collect()));
            }
        }
        out
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.values().map(|s| s.len()).sum()
    }

    /// Every derived atom over universe terms, including `==` atoms when the
    /// signature has equality.
    pub fn ground_atoms(&self) -> BTreeSet<Atom> {
        let members = self.congruence.classes();
        let mut out = BTreeSet::new();
        for (p, tuples) in &self.atoms {
            for t in tuples {
                let mut combos: Vec<Vec<Term>> = vec![Vec::new()];
                for r in t {
                    combos = combos
                        .into_iter()
                        .flat_map(|c| {
                            members[r].iter().map(move |&m| {
                                let mut c = c.clone();
                                c.push(self.term(m).clone());
                                c
                            })
                        })
                        .collect();
                }
                out.extend(combos.into_iter().map(|args| Atom::new(p.clone(), args)));
            }
        }
        if self.signature.has_equality() {
            for ms in members.values() {
                for &a in ms {
                    for &b in ms {
                        out.insert(Atom::new(EQUALITY, vec![self.term(a).clone(), self.term(b).clone()]));
                    }
                }
            }
        }
        out
    }

    /// Whether the theory derives the atom: `No` only when the result is
    /// complete.
    pub fn derives_atom(&self, phi: &Formula) -> Result<Derivation, SaturationError> {
        if self.bottom_derived {
            return Ok(Derivation::Yes);
        }
        let atom = match phi {
            Formula::Top => return Ok(Derivation::Yes),
            Formula::Bottom => return Ok(self.absent()),
            Formula::Atom(a) => a,
            other => return Err(SaturationError::NotAtomic(other.to_string())),
        };
        let roots: Option<Vec<usize>> = atom.args.iter().map(|t| self.root_of(t)).collect();
        let Some(roots) = roots else {
            return if self.complete {
                Err(SaturationError::OutsideUniverse(atom.to_string()))
            } else {
                Ok(Derivation::Unknown)
            };
        };
        let present = if atom.is_equality() {
            roots[0] == roots[1]
        } else {
            self.atoms.get(&atom.predicate).is_some_and(|s| s.contains(&roots))
        };
        Ok(if present { Derivation::Yes } else { self.absent() })
    }

    fn absent(&self) -> Derivation {
        if self.complete {
            Derivation::No
        } else {
            Derivation::Unknown
        }
    }

    /// One line per class: `rep: member, member, ...`.
    pub fn class_listing(&self) -> String {
        let mut out = String::new();
        for c in self.classes() {
            let ms: Vec<String> = c.members.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}: {}", c.representative, ms.join(", "));
        }
        out
    }
}

/// The term structure over the Boolean algebra: classes as elements,
/// functions acting on representatives, crisp predicates from the atom base
/// and `==` as identity. Function-bearing signatures give a fragment flagged
/// as truncated at the universe depth.
pub fn build_term_structure(res: &SaturationResult) -> Result<FuzzyStructure, SaturationError> {
    if res.bottom_derived {
        return Err(SaturationError::Inconsistent);
    }
    if res.roots.is_empty() {
        return Err(SaturationError::EmptyUniverse);
    }
    let domain = res.roots.iter().map(|&r| res.term(r).to_string()).collect();
    let mut m = FuzzyStructure::new(Algebra::Boolean, res.signature.clone(), domain)?;
    let fns: Vec<(String, usize)> = res.signature.functions().map(|(f, a)| (f.to_string(), a)).collect();
    for (f, arity) in fns {
        for args in m.tuples(arity).collect::<Vec<_>>() {
            let roots: Vec<usize> = args.iter().map(|&i| res.roots[i]).collect();
            if let Some(r) = res.congruence.lookup(&f, &roots) {
                m.set_function(&f, &args, res.root_index[&r])?;
            }
        }
    }
    for (p, tuples) in &res.atoms {
        for t in tuples {
            let args: Vec<usize> = t.iter().map(|r| res.root_index[r]).collect();
            m.set_predicate(p, &args, TruthValue::Bit(true))?;
        }
    }
    if !res.signature.is_function_free() {
        m.truncated_at = Some(res.universe.depth());
    }
    Ok(m)
}

/// Term structure seeded from externally supplied atoms and equations.
pub fn build_term_structure_from_atoms(
    atoms: &[Atom],
    equations: &[(Term, Term)],
    sig: &Signature,
    config: &SaturationConfig,
) -> Result<FuzzyStructure, SaturationError> {
    build_term_structure(&saturate_from_atoms(atoms, equations, sig, config)?)
}

/// Sends every frozen variable to its own class.
pub fn canonical_evaluation(res: &SaturationResult) -> VarEvaluation {
    res.frozen_vars
        .iter()
        .filter_map(|v| res.class_index(&Term::var(v)).map(|i| (v.clone(), i)))
        .collect()
}

/// Class index of one frozen variable.
pub fn canonical_value(res: &SaturationResult, var: &str) -> Result<usize, SaturationError> {
    if !res.frozen_vars.iter().any(|v| v == var) {
        return Err(SaturationError::NotFrozen(var.to_string()));
    }
    res.class_index(&Term::var(var))
        .ok_or_else(|| SaturationError::OutsideUniverse(var.to_string()))
}
