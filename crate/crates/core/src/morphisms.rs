//! Homomorphisms between structures, the equality property and the canonical
//! map out of the term structure.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, TruthValue};
use crate::saturation::SaturationResult;
use crate::semantics::{eval_term, is_model, EvalError, FuzzyStructure, ModelCheck, StructureError, VarEvaluation};
use crate::syntax::{Term, EQUALITY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("domain map has {found} entries but the source has {expected} elements")]
    DomainSize { expected: usize, found: usize },
    #[error("domain map sends element {0} outside the target")]
    OutOfRange(usize),
    #[error("algebra map is undefined on {0}")]
    AlgebraMapUndefined(String),
    #[error("identity algebra map between different algebras {0} and {1}")]
    AlgebraMismatch(String, String),
    #[error("the Boolean embedding needs a Boolean source, got {0}")]
    NotBooleanSource(String),
    #[error("symbol `{0}` is not interpreted in the target")]
    MissingSymbol(String),
    #[error("the signature has no equality symbol")]
    NoEquality,
    #[error("target is not reduced: {0} == {1} has value {2}")]
    NotReduced(String, String, String),
    #[error("frozen variable `{0}` has no value in the target")]
    MissingAssignment(String),
    #[error("class of {class} is not mapped consistently: {a} and {b} evaluate differently")]
    IllDefined { class: String, a: String, b: String },
    #[error("target is not a model: formula {formula} fails under [{assignment}]")]
    NotModel { formula: usize, assignment: String },
    #[error("map file line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The truth-value part of a structure map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraMap {
    /// Both structures share one algebra.
    Identity,
    /// `0 -> bottom`, `1 -> top` from the Boolean algebra.
    BooleanEmbedding,
    /// Explicit finite table.
    Pairs(Vec<(TruthValue, TruthValue)>),
}

impl AlgebraMap {
    pub fn apply(&self, src: &Algebra, dst: &Algebra, v: &TruthValue) -> Result<TruthValue, MorphismError> {
        match self {
            AlgebraMap::Identity if src == dst => Ok(v.clone()),
            AlgebraMap::Identity => Err(MorphismError::AlgebraMismatch(src.name(), dst.name())),
            AlgebraMap::BooleanEmbedding => match v {
                TruthValue::Bit(b) if *src == Algebra::Boolean => Ok(dst.from_bool(*b)),
                _ => Err(MorphismError::NotBooleanSource(src.name())),
            },
            AlgebraMap::Pairs(ps) => ps
                .iter()
                .find(|(a, _)| a == v)
                .map(|(_, b)| b.clone())
                .ok_or_else(|| MorphismError::AlgebraMapUndefined(src.format_value(v, false))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMap {
    pub f: AlgebraMap,
    /// Image of each source element (by index).
    pub g: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MorphismKind {
    NotHomomorphism,
    Homomorphism,
    Strict,
    Embedding,
    Isomorphism,
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismKind::NotHomomorphism => "not-homomorphism",
            MorphismKind::Homomorphism => "homomorphism",
            MorphismKind::Strict => "strict-homomorphism",
            MorphismKind::Embedding => "embedding",
            MorphismKind::Isomorphism => "isomorphism",
        })
    }
}

/// Outcome of each condition; `None` means the condition holds, otherwise
/// the first counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    pub algebra: Option<String>,
    pub functions: Option<String>,
    pub predicates: Option<String>,
    pub strict: Option<String>,
    pub f_injective: bool,
    pub g_injective: bool,
    pub surjective: bool,
    pub kind: MorphismKind,
}

impl MorphismReport {
    pub fn is_homomorphism(&self) -> bool {
        self.kind >= MorphismKind::Homomorphism
    }

    /// `key=value` lines for scripts.
    pub fn to_machine(&self) -> String {
        let cond = |c: &Option<String>| c.clone().unwrap_or_else(|| "ok".into());
        let mut out = String::new();
        let _ = writeln!(out, "kind={}", self.kind);
        let _ = writeln!(out, "algebra-hom={}", cond(&self.algebra));
        let _ = writeln!(out, "function-commutation={}", cond(&self.functions));
        let _ = writeln!(out, "predicate-condition={}", cond(&self.predicates));
        let _ = writeln!(out, "strict={}", cond(&self.strict));
        let _ = writeln!(out, "f-injective={}", self.f_injective);
        let _ = writeln!(out, "g-injective={}", self.g_injective);
        let _ = writeln!(out, "surjective={}", self.surjective);
        out
    }
}

impl fmt::Display for MorphismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind)?;
        let show = |c: &Option<String>| match c {
            None => "holds".to_string(),
            Some(w) => format!("fails at {w}"),
        };
        writeln!(f, "algebra homomorphism: {}", show(&self.algebra))?;
        writeln!(f, "function commutation: {}", show(&self.functions))?;
        writeln!(f, "predicate condition: {}", show(&self.predicates))?;
        writeln!(f, "strictness: {}", show(&self.strict))?;
        writeln!(
            f,
            "injective f/g: {}/{}, surjective: {}",
            self.f_injective, self.g_injective, self.surjective
        )
    }
}

/// Source values the algebra map is checked on: the whole carrier when it is
/// finite, otherwise the bounds, the table of the map and every value the
/// source structure uses.
fn algebra_samples(src: &FuzzyStructure, map: &AlgebraMap) -> Vec<TruthValue> {
    if let Some(e) = src.algebra.elements() {
        return e;
    }
    let mut s: BTreeSet<TruthValue> = [src.algebra.bottom(), src.algebra.top()].into();
    s.extend(src.predicates.values().flat_map(|t| t.values.iter().cloned()));
    if let AlgebraMap::Pairs(ps) = map {
        s.extend(ps.iter().map(|(a, _)| a.clone()));
    }
    s.into_iter().collect()
}

type Op = fn(&Algebra, &TruthValue, &TruthValue) -> Result<TruthValue, AlgebraError>;

fn check_algebra_map(
    src: &FuzzyStructure,
    dst: &FuzzyStructure,
    map: &AlgebraMap,
    samples: &[TruthValue],
) -> Result<Option<String>, MorphismError> {
    let (a, b) = (&src.algebra, &dst.algebra);
    if *map == AlgebraMap::Identity {
        return Ok(None);
    }
    let fv = |v: &TruthValue| map.apply(a, b, v);
    if fv(&a.bottom())? != b.bottom() {
        return Ok(Some("f(0) is not the bottom".into()));
    }
    if fv(&a.top())? != b.top() {
        return Ok(Some("f(1) is not the top".into()));
    }
    let ops: [(&str, Op); 4] = [
        ("*", Algebra::conj),
        ("=>", Algebra::residuum),
        ("meet", Algebra::meet),
        ("join", Algebra::join),
    ];
    for x in samples {
        for y in samples {
            for (name, op) in ops {
                let Ok(r) = op(a, x, y) else { continue };
                // the map need only respect operations that stay inside its domain
                let Ok(fr) = fv(&r) else { continue };
                if fr != op(b, &fv(x)?, &fv(y)?)? {
                    return Ok(Some(format!(
                        "{name}({}, {})",
                        a.format_value(x, false),
                        a.format_value(y, false)
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn describe(m: &FuzzyStructure, name: &str, args: &[usize]) -> String {
    let names: Vec<&str> = args.iter().map(|&d| m.element_name(d)).collect();
    if args.is_empty() {
        name.to_string()
    } else {
        format!("{name}({})", names.join(","))
    }
}

/// Checks every condition of a structure map exhaustively.
pub fn check_homomorphism(
    src: &FuzzyStructure,
    dst: &FuzzyStructure,
    map: &StructureMap,
) -> Result<MorphismReport, MorphismError> {
    if map.g.len() != src.size() {
        return Err(MorphismError::DomainSize {
            expected: src.size(),
            found: map.g.len(),
        });
    }
    if let Some(&bad) = map.g.iter().find(|&&d| d >= dst.size()) {
        return Err(MorphismError::OutOfRange(bad));
    }
    let samples = algebra_samples(src, &map.f);
    for v in &samples {
        map.f.apply(&src.algebra, &dst.algebra, v)?;
    }
    let algebra = check_algebra_map(src, dst, &map.f, &samples)?;

    let mut functions = None;
    'fns: for (name, table) in &src.functions {
        let target = dst
            .function_table(name)
            .map_err(|_| MorphismError::MissingSymbol(name.clone()))?;
        for args in src.tuples(table.arity) {
            let Some(out) = src.function_value(name, &args)? else {
                continue;
            };
            let image: Vec<usize> = args.iter().map(|&d| map.g[d]).collect();
            if target.values[dst.offset(name, table.arity, &image)?] != Some(map.g[out]) {
                functions = Some(describe(src, name, &args));
                break 'fns;
            }
        }
    }

    let mut predicates = None;
    let mut strict = None;
    for (name, table) in &src.predicates {
        dst.predicate_table(name)
            .map_err(|_| MorphismError::MissingSymbol(name.clone()))?;
        for args in src.tuples(table.arity) {
            let image: Vec<usize> = args.iter().map(|&d| map.g[d]).collect();
            let here = src.algebra.is_top(src.predicate_value(name, &args)?);
            let there = dst.algebra.is_top(dst.predicate_value(name, &image)?);
            if here && !there && predicates.is_none() {
                predicates = Some(describe(src, name, &args));
            }
            if here != there && strict.is_none() {
                strict = Some(describe(src, name, &args));
            }
        }
    }

    let images: Vec<TruthValue> = samples
        .iter()
        .map(|v| map.f.apply(&src.algebra, &dst.algebra, v))
        .collect::<Result<_, _>>()?;
    let f_injective = images.iter().collect::<BTreeSet<_>>().len() == images.len();
    let g_injective = map.g.iter().collect::<BTreeSet<_>>().len() == map.g.len();
    let g_onto = map.g.iter().collect::<BTreeSet<_>>().len() == dst.size();
    let f_onto = match (&map.f, dst.algebra.elements()) {
        (AlgebraMap::Identity, _) => true,
        (_, Some(carrier)) => carrier.iter().all(|c| images.contains(c)),
        (_, None) => false,
    };
    let surjective = g_onto && f_onto;

    let kind = if algebra.is_some() || functions.is_some() || predicates.is_some() {
        MorphismKind::NotHomomorphism
    } else if strict.is_some() {
        MorphismKind::Homomorphism
    } else if !(f_injective && g_injective) {
        MorphismKind::Strict
    } else if !surjective {
        MorphismKind::Embedding
    } else {
        MorphismKind::Isomorphism
    };
    Ok(MorphismReport {
        algebra,
        functions,
        predicates,
        strict,
        f_injective,
        g_injective,
        surjective,
        kind,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduced {
    Yes,
    /// Elements where `==` disagrees with identity, and its value there.
    No(usize, usize, TruthValue),
}

/// Checks that `==` takes the top value exactly on identical elements.
pub fn is_reduced(m: &FuzzyStructure) -> Result<Reduced, MorphismError> {
    if !m.signature.has_equality() {
        return Err(MorphismError::NoEquality);
    }
    for d in 0..m.size() {
        for e in 0..m.size() {
            let v = m.predicate_value(EQUALITY, &[d, e])?;
            if m.algebra.is_top(v) != (d == e) {
                return Ok(Reduced::No(d, e, v.clone()));
            }
        }
    }
    Ok(Reduced::Yes)
}

/// The map from the term structure of `res` into `target` fixed by `v` on
/// the frozen variables: `f` is the Boolean embedding and each class goes to
/// the value of its terms.
pub fn canonical_free_map(
    res: &SaturationResult,
    target: &FuzzyStructure,
    v: &VarEvaluation,
) -> Result<StructureMap, MorphismError> {
    if target.signature.has_equality() {
        if let Reduced::No(d, e, val) = is_reduced(target)? {
            return Err(MorphismError::NotReduced(
                target.element_name(d).into(),
                target.element_name(e).into(),
                target.algebra.format_value(&val, false),
            ));
        }
    }
    if let Some(x) = res.frozen_vars.iter().find(|x| v.get(x).is_none()) {
        return Err(MorphismError::MissingAssignment(x.clone()));
    }
    let mut g = Vec::with_capacity(res.class_count());
    for class in res.classes() {
        let rep = eval_term(target, v, &class.representative)?;
        for t in &class.members[1..] {
            if eval_term(target, v, t)? != rep {
                return Err(MorphismError::IllDefined {
                    class: class.representative.to_string(),
                    a: class.representative.to_string(),
                    b: t.to_string(),
                });
            }
        }
        g.push(rep);
    }
    if let ModelCheck::No {
        formula, assignment, ..
    } = is_model(target, &res.theory)?
    {
        return Err(MorphismError::NotModel {
            formula,
            assignment: assignment.describe(target),
        });
    }
    Ok(StructureMap {
        f: AlgebraMap::BooleanEmbedding,
        g,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniqueness {
    UniqueMatch,
    /// Smallest universe term on which the candidate departs from the
    /// canonical map.
    Differs(Term),
}

/// Compares a candidate's domain map with the canonical one term by term.
pub fn check_uniqueness(
    res: &SaturationResult,
    target: &FuzzyStructure,
    v: &VarEvaluation,
    candidate: &StructureMap,
) -> Result<Uniqueness, MorphismError> {
    for node in res.universe.nodes() {
        let t = &node.term;
        let class = res.class_index(t).expect("universe terms have classes");
        if candidate.g.get(class) != Some(&eval_term(target, v, t)?) {
            return Ok(Uniqueness::Differs(t.clone()));
        }
    }
    Ok(Uniqueness::UniqueMatch)
}

impl StructureMap {
    /// Reads `g: a -> b` lines and an optional `f:` line (`identity`,
    /// `boolean`, or `x->y, ...` pairs). Missing `f` means identity.
    pub fn parse(text: &str, src: &FuzzyStructure, dst: &FuzzyStructure) -> Result<StructureMap, MorphismError> {
        let mut g: Vec<Option<usize>> = vec![None; src.size()];
        let mut f = AlgebraMap::Identity;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: String| MorphismError::Syntax { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("g:") {
                let (a, b) = rest
                    .split_once("->")
                    .ok_or_else(|| err("expected `g: element -> element`".into()))?;
                let a = src
                    .element(a.trim())
                    .ok_or_else(|| err(format!("unknown source element `{}`", a.trim())))?;
                let b = dst
                    .element(b.trim())
                    .ok_or_else(|| err(format!("unknown target element `{}`", b.trim())))?;
                g[a] = Some(b);
            } else if let Some(rest) = content.strip_prefix("f:") {
                f = match rest.trim() {
                    "identity" => AlgebraMap::Identity,
                    "boolean" => AlgebraMap::BooleanEmbedding,
                    pairs => {
                        let mut out = Vec::new();
                        for p in pairs.split(',') {
                            let (a, b) = p.split_once("->").ok_or_else(|| err(format!("bad pair `{p}`")))?;
                            let a = src.algebra.parse_value(a.trim()).map_err(|e| err(e.to_string()))?;
                            let b = dst.algebra.parse_value(b.trim()).map_err(|e| err(e.to_string()))?;
                            out.push((a, b));
                        }
                        let embedding = src.algebra == Algebra::Boolean
                            && out.len() == 2
                            && [false, true]
                                .iter()
                                .all(|&b| out.contains(&(TruthValue::Bit(b), dst.algebra.from_bool(b))));
                        if embedding {
                            AlgebraMap::BooleanEmbedding
                        } else {
                            AlgebraMap::Pairs(out)
                        }
                    }
                };
            } else {
                return Err(err(format!("expected `f:` or `g:`, got `{content}`")));
            }
        }
        let g = g
            .into_iter()
            .enumerate()
            .map(|(i, x)| {
                x.ok_or_else(|| MorphismError::AlgebraMapUndefined(format!("element {}", src.element_name(i))))
            })
            .collect::<Result<_, _>>()?;
        Ok(StructureMap { f, g })
    }

    pub fn to_text(&self, src: &FuzzyStructure, dst: &FuzzyStructure) -> String {
        let mut out = String::new();
        match &self.f {
            AlgebraMap::Identity => out.push_str("f: identity\n"),
            AlgebraMap::BooleanEmbedding => {
                let b = |x| dst.algebra.format_value(&dst.algebra.from_bool(x), false);
                let _ = writeln!(out, "f: 0->{},1->{}", b(false), b(true));
            }
            AlgebraMap::Pairs(ps) => {
                let parts: Vec<String> = ps
                    .iter()
                    .map(|(a, b)| {
                        format!(
                            "{}->{}",
                            src.algebra.format_value(a, false),
                            dst.algebra.format_value(b, false)
                        )
                    })
                    .collect();
                let _ = writeln!(out, "f: {}", parts.join(","));
            }
        }
        for (i, &d) in self.g.iter().enumerate() {
            let _ = writeln!(out, "g: {} -> {}", src.element_name(i), dst.element_name(d));
        }
        out
    }
}
