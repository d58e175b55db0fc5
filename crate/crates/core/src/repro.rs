//! Reproductions of three worked examples: every intermediate value is
//! recomputed and compared with its expected value exactly.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{Algebra, Rational, TruthValue};
use crate::herbrand::{h_structure_of_model, HerbrandError};
use crate::saturation::{build_term_structure_from_atoms, SaturationConfig, SaturationError};
use crate::semantics::{eval_formula, EvalError, FormatError, FuzzyStructure, TruthOutcome, VarEvaluation};
use crate::syntax::{parse_formula, Formula, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    /// A Gödel model of a non-Horn theory whose term structure fails it.
    Godel08,
    /// A Łukasiewicz model whose H-structure is not a model.
    Lukasiewicz06,
    /// Strong conjunction does not commute with the universal quantifier.
    ForallStrongConj,
}

impl Example {
    pub const ALL: [Example; 3] = [Example::Godel08, Example::Lukasiewicz06, Example::ForallStrongConj];

    pub fn id(self) -> &'static str {
        match self {
            Example::Godel08 => "godel-0.8",
            Example::Lukasiewicz06 => "lukasiewicz-0.6",
            Example::ForallStrongConj => "forall-strong-conj",
        }
    }
}

impl FromStr for Example {
    type Err = ReproError;

    fn from_str(s: &str) -> Result<Self, ReproError> {
        Example::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| ReproError::UnknownExample(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum ReproError {
    #[error("unknown example `{0}` (expected godel-0.8, lukasiewicz-0.6 or forall-strong-conj)")]
    UnknownExample(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Saturation(#[from] SaturationError),
    #[error(transparent)]
    Herbrand(#[from] HerbrandError),
    #[error("no witness found")]
    NoWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub got: String,
    pub expected: String,
}

impl Check {
    pub fn matches(&self) -> bool {
        self.got == self.expected
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproReport {
    pub example: Example,
    /// Context lines such as the structures used.
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl ReproReport {
    pub fn all_match(&self) -> bool {
        self.checks.iter().all(Check::matches)
    }

    pub fn to_machine(&self) -> String {
        let mut out = format!("example={}\n", self.example.id());
        for c in &self.checks {
            out.push_str(&format!(
                "{}={} expected={} {}\n",
                c.label,
                c.got,
                c.expected,
                if c.matches() { "ok" } else { "MISMATCH" }
            ));
        }
        out.push_str(&format!("verified={}\n", self.all_match()));
        out
    }
}

impl fmt::Display for ReproReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "example {}", self.example.id())?;
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        for c in &self.checks {
            if c.matches() {
                writeln!(f, "  ok        {} = {}", c.label, c.got)?;
            } else {
                writeln!(f, "  MISMATCH  {} = {} (expected {})", c.label, c.got, c.expected)?;
            }
        }
        write!(f, "{}", if self.all_match() { "verified" } else { "FAILED" })
    }
}

pub const GODEL_STRUCTURE: &str = "\
algebra godel
domain a
fun c/0: a
pred P/1: 4/5
";

pub const LUKASIEWICZ_STRUCTURE: &str = "\
algebra lukasiewicz
domain a
fun c/0: a
pred P1/1: 1
pred P2/1: 9/10
pred P3/1: 1/2
";

struct Ctx {
    checks: Vec<Check>,
    notes: Vec<String>,
}

impl Ctx {
    fn value(&mut self, label: &str, m: &FuzzyStructure, phi: &Formula, expected: &str) -> Result<(), ReproError> {
        let got = match eval_formula(m, &VarEvaluation::new(), phi)? {
            TruthOutcome::Value(v) => m.algebra.format_value(&v, false),
            other => other.to_string(),
        };
        self.check(label, got, expected);
        Ok(())
    }

    fn check(&mut self, label: &str, got: impl Into<String>, expected: &str) {
        self.checks.push(Check {
            label: label.to_string(),
            got: got.into(),
            expected: expected.to_string(),
        });
    }
}

pub fn run_example(example: Example) -> Result<ReproReport, ReproError> {
    let mut ctx = Ctx {
        checks: Vec::new(),
        notes: Vec::new(),
    };
    match example {
        Example::Godel08 => godel(&mut ctx)?,
        Example::Lukasiewicz06 => lukasiewicz(&mut ctx)?,
        Example::ForallStrongConj => forall_strong_conj(&mut ctx)?,
    }
    Ok(ReproReport {
        example,
        notes: ctx.notes,
        checks: ctx.checks,
    })
}

fn godel(ctx: &mut Ctx) -> Result<(), ReproError> {
    let m = FuzzyStructure::parse(GODEL_STRUCTURE, None)?;
    let sig = &m.signature;
    let phi = parse_formula("~(P(c) -> bot)", sig)?;
    let inner = parse_formula("P(c) -> bot", sig)?;
    let atom = parse_formula("P(c)", sig)?;
    ctx.notes
        .push("M: Godel algebra, domain {a}, c = a, ||P(c)|| = 4/5".into());
    ctx.notes.push(format!("theory: {phi}"));
    ctx.value("M:P(c)", &m, &atom, "4/5")?;
    ctx.value("M:theory", &m, &phi, "1")?;
    ctx.value("M:P(c)->bot", &m, &inner, "0")?;
    let t = build_term_structure_from_atoms(&[], &[], sig, &SaturationConfig::default().with_frozen(0))?;
    ctx.notes.push(format!(
        "term structure: domain {{{}}}, empty atom base",
        t.domain.join(", ")
    ));
    ctx.value("T:P(c)", &t, &atom, "0")?;
    ctx.value("T:P(c)->bot", &t, &inner, "1")?;
    ctx.value("T:theory", &t, &phi, "0")?;
    Ok(())
}

fn lukasiewicz(ctx: &mut Ctx) -> Result<(), ReproError> {
    let m = FuzzyStructure::parse(LUKASIEWICZ_STRUCTURE, None)?;
    let phi = parse_formula("P1(c) & P2(c) -> P3(c)", &m.signature)?;
    ctx.notes
        .push("M: Lukasiewicz algebra, domain {a}, P1(c)=1, P2(c)=9/10, P3(c)=1/2".into());
    ctx.value("M:formula", &m, &phi, "3/5")?;
    let h = h_structure_of_model(&m, 0, false)?;
    let atoms: Vec<String> = h.atoms.iter().map(ToString::to_string).collect();
    ctx.check("H", format!("{{{}}}", atoms.join(", ")), "{P1(c)}");
    let n = h.to_structure()?;
    ctx.value("N^H:formula", &n, &phi, "1")?;
    Ok(())
}

/// Searches predicate tables over `{0, 1/2, 1}` on a two-element domain for
/// the widest gap between `forall x.(P(x) & Q(x))` and
/// `(forall x.P(x)) & (forall x.Q(x))`; the first witness in enumeration
/// order wins.
pub fn forall_strong_conj_witness() -> Result<(FuzzyStructure, TruthValue, TruthValue), ReproError> {
    let grid = [TruthValue::real(0, 1), TruthValue::real(1, 2), TruthValue::real(1, 1)];
    let base = FuzzyStructure::parse("algebra lukasiewicz\ndomain a b\npred P/1: 0 0\npred Q/1: 0 0\n", None)?;
    let lhs = parse_formula("(forall x. P(x)) & (forall x. Q(x))", &base.signature)?;
    let rhs = parse_formula("forall x. P(x) & Q(x)", &base.signature)?;
    let alg = Algebra::Lukasiewicz;
    let value = |m: &FuzzyStructure, phi: &Formula| -> Result<TruthValue, ReproError> {
        Ok(eval_formula(m, &VarEvaluation::new(), phi)?
            .value()
            .cloned()
            .expect("finite Lukasiewicz structures evaluate"))
    };
    let mut best: Option<(FuzzyStructure, TruthValue, TruthValue, Rational)> = None;
    for code in 0..grid.len().pow(4) {
        let mut m = base.clone();
        let mut c = code;
        for (pred, d) in [("P", 0), ("P", 1), ("Q", 0), ("Q", 1)] {
            m.set_predicate(pred, &[d], grid[c % 3].clone())
                .expect("declared predicate");
            c /= 3;
        }
        let (l, r) = (value(&m, &lhs)?, value(&m, &rhs)?);
        let gap = alg.to_rational(&r).expect("real value") - alg.to_rational(&l).expect("real value");
        if best.as_ref().is_none_or(|b| gap > b.3) {
            best = Some((m, l, r, gap));
        }
    }
    match best {
        Some((m, l, r, gap)) if gap > Rational::from_integer(0.into()) => Ok((m, l, r)),
        _ => Err(ReproError::NoWitness),
    }
}

fn forall_strong_conj(ctx: &mut Ctx) -> Result<(), ReproError> {
    let (m, l, r) = forall_strong_conj_witness()?;
    let alg = &m.algebra;
    for p in ["P", "Q"] {
        let vals: Vec<String> = (0..2)
            .map(|d| alg.format_value(m.predicate_value(p, &[d]).expect("declared"), false))
            .collect();
        ctx.notes
            .push(format!("witness {p}: a -> {}, b -> {}", vals[0], vals[1]));
    }
    ctx.check("(forall x.P(x))&(forall x.Q(x))", alg.format_value(&l, false), "0");
    ctx.check("forall x.(P(x)&Q(x))", alg.format_value(&r, false), "1/2");
    Ok(())
}
