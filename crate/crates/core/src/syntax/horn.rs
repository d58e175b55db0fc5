//! Classification of formulas into the basic / quantifier-free / clause /
//! prefixed Horn shapes, tracked separately for strong (`&`) and weak (`/\`)
//! conjunction.

use std::fmt;

use super::formula::{Connective, Formula, Quantifier};

/// How far up the Horn hierarchy a formula sits on one conjunction track.
/// Ordered from most to least specific.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum HornLevel {
    /// `a1 * ... * an -> b` with atomic `ai`, `b`; a bare atom when `n = 0`.
    Basic,
    /// Conjunction of basic formulas, no quantifiers.
    QuantifierFree,
    /// Universal prefix (possibly empty) over a quantifier-free matrix.
    Clause,
    /// Arbitrary quantifier prefix over a quantifier-free matrix.
    Formula,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum HornTag {
    BasicHorn,
    BasicWHorn,
    QuantifierFreeHorn,
    QuantifierFreeWHorn,
    HornClause,
    WHornClause,
    HornFormula,
    WHornFormula,
    NotHorn,
}

impl HornTag {
    fn from_level(level: HornLevel, weak: bool) -> Self {
        match (level, weak) {
            (HornLevel::Basic, false) => HornTag::BasicHorn,
            (HornLevel::Basic, true) => HornTag::BasicWHorn,
            (HornLevel::QuantifierFree, false) => HornTag::QuantifierFreeHorn,
            (HornLevel::QuantifierFree, true) => HornTag::QuantifierFreeWHorn,
            (HornLevel::Clause, false) => HornTag::HornClause,
            (HornLevel::Clause, true) => HornTag::WHornClause,
            (HornLevel::Formula, false) => HornTag::HornFormula,
            (HornLevel::Formula, true) => HornTag::WHornFormula,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HornTag::BasicHorn => "basic-horn",
            HornTag::BasicWHorn => "basic-w-horn",
            HornTag::QuantifierFreeHorn => "qf-horn",
            HornTag::QuantifierFreeWHorn => "qf-w-horn",
            HornTag::HornClause => "horn-clause",
            HornTag::WHornClause => "w-horn-clause",
            HornTag::HornFormula => "horn-formula",
            HornTag::WHornFormula => "w-horn-formula",
            HornTag::NotHorn => "not-horn",
        }
    }
}

impl fmt::Display for HornTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A basic Horn formula split into body and head. Body and head members are
/// atomic formulas (atoms, `bot` or `top`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasicHorn {
    pub body: Vec<Formula>,
    pub head: Formula,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HornClass {
    /// Level on the strong-conjunction track, if any.
    pub strong: Option<HornLevel>,
    /// Level on the weak-conjunction track, if any.
    pub weak: Option<HornLevel>,
    pub prefix: Vec<(Quantifier, String)>,
    /// Conjuncts of the matrix; empty for `NotHorn`.
    pub matrix: Vec<BasicHorn>,
}

impl HornClass {
    /// Most specific tag on each track that applies.
    pub fn tags(&self) -> Vec<HornTag> {
        let mut out = Vec::new();
        if let Some(l) = self.strong {
            out.push(HornTag::from_level(l, false));
        }
        if let Some(l) = self.weak {
            out.push(HornTag::from_level(l, true));
        }
        if out.is_empty() {
            out.push(HornTag::NotHorn);
        }
        out
    }

    pub fn primary_tag(&self) -> HornTag {
        self.tags()[0]
    }

    pub fn is_horn(&self) -> bool {
        self.strong.is_some() || self.weak.is_some()
    }

    /// True for (w-)Horn clauses, i.e. universal Horn formulas.
    pub fn is_clause(&self) -> bool {
        self.strong.is_some_and(|l| l <= HornLevel::Clause) || self.weak.is_some_and(|l| l <= HornLevel::Clause)
    }

    pub fn is_strong_clause(&self) -> bool {
        self.strong.is_some_and(|l| l <= HornLevel::Clause)
    }

    pub fn is_weak_clause(&self) -> bool {
        self.weak.is_some_and(|l| l <= HornLevel::Clause)
    }
}

pub fn classify_horn(phi: &Formula) -> HornClass {
    let mut prefix = Vec::new();
    let mut matrix = phi;
    while let Formula::Quantified(q, x, body) = matrix {
        prefix.push((*q, x.clone()));
        matrix = body;
    }
    let strong = split_matrix(matrix, Connective::StrongAnd);
    let weak = split_matrix(matrix, Connective::WeakAnd);
    let universal = prefix.iter().all(|(q, _)| *q == Quantifier::Forall);
    let level = |conjuncts: &Vec<BasicHorn>| {
        if !prefix.is_empty() {
            if universal {
                HornLevel::Clause
            } else {
                HornLevel::Formula
            }
        } else if conjuncts.len() == 1 {
            HornLevel::Basic
        } else {
            HornLevel::QuantifierFree
        }
    };
    let strong_level = strong.as_ref().map(level);
    let weak_level = weak.as_ref().map(level);
    let matrix = strong.or(weak).unwrap_or_default();
    HornClass {
        strong: strong_level,
        weak: weak_level,
        prefix,
        matrix,
    }
}

fn flatten<'a>(f: &'a Formula, c: Connective, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::Binary(k, a, b) if *k == c => {
            flatten(a, c, out);
            flatten(b, c, out);
        }
        _ => out.push(f),
    }
}

fn split_matrix(matrix: &Formula, conj: Connective) -> Option<Vec<BasicHorn>> {
    let mut parts = Vec::new();
    flatten(matrix, conj, &mut parts);
    parts.into_iter().map(|p| basic(p, conj)).collect()
}

fn basic(f: &Formula, conj: Connective) -> Option<BasicHorn> {
    if f.is_atomic() {
        return Some(BasicHorn {
            body: Vec::new(),
            head: f.clone(),
        });
    }
    match f {
        Formula::Binary(Connective::Implies, body, head) if head.is_atomic() => {
            let mut parts = Vec::new();
            flatten(body, conj, &mut parts);
            if parts.iter().all(|p| p.is_atomic()) {
                Some(BasicHorn {
                    body: parts.into_iter().cloned().collect(),
                    head: (**head).clone(),
                })
            } else {
                None
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, Signature};

    fn sig() -> Signature {
        let mut s = Signature::new().with_equality();
        for p in ["P", "Q", "R"] {
            s.add_predicate(p, 1).unwrap();
        }
        s.add_constant("c").unwrap();
        s
    }

    fn classify(text: &str) -> HornClass {
        classify_horn(&parse_formula(text, &sig()).unwrap())
    }

    #[test]
    fn strong_basic_horn() {
        let h = classify("P(x) & Q(x) -> R(x)");
        assert_eq!(h.tags(), vec![HornTag::BasicHorn]);
        assert_eq!(h.matrix[0].body.len(), 2);
    }

    #[test]
    fn weak_basic_horn() {
        assert_eq!(classify("P(x) /\\ Q(x) -> R(x)").tags(), vec![HornTag::BasicWHorn]);
    }

    #[test]
    fn bare_atom_is_basic_on_both_tracks() {
        let h = classify("P(c)");
        assert_eq!(h.tags(), vec![HornTag::BasicHorn, HornTag::BasicWHorn]);
        assert!(h.matrix[0].body.is_empty());
    }

    #[test]
    fn existential_prefix_is_formula_not_clause() {
        let h = classify("exists x. (P(x) -> Q(x))");
        assert_eq!(h.tags(), vec![HornTag::HornFormula, HornTag::WHornFormula]);
        assert!(h.is_horn());
        assert!(!h.is_clause());
    }

    #[test]
    fn double_negation_is_not_horn() {
        let h = classify("~(P(c) -> bot)");
        assert_eq!(h.tags(), vec![HornTag::NotHorn]);
        assert!(h.matrix.is_empty());
    }

    #[test]
    fn universal_clause_with_conjunction_of_rules() {
        let h = classify("forall x. (P(x) -> Q(x)) & (Q(x) & P(x) -> R(x))");
        assert_eq!(h.strong, Some(HornLevel::Clause));
        assert_eq!(h.weak, None);
        assert_eq!(h.matrix.len(), 2);
    }

    #[test]
    fn quantifier_free_conjunction() {
        let h = classify("P(c) /\\ (P(c) -> Q(c))");
        assert_eq!(h.tags(), vec![HornTag::QuantifierFreeWHorn]);
    }

    #[test]
    fn mixed_conjunctions_in_body_rejected() {
        let h = classify("P(c) & Q(c) /\\ R(c) -> P(c)");
        assert_eq!(h.tags(), vec![HornTag::NotHorn]);
    }

    #[test]
    fn disjunction_and_inner_quantifier_rejected() {
        assert_eq!(classify("P(x) \\/ Q(x)").tags(), vec![HornTag::NotHorn]);
        assert_eq!(classify("P(c) -> forall x. Q(x)").tags(), vec![HornTag::NotHorn]);
    }

    #[test]
    fn vacuous_quantifier_allowed() {
        assert!(classify("forall y. P(c)").is_clause());
    }

    #[test]
    fn truth_constants_are_atomic() {
        assert_eq!(
            classify("P(c) -> bot").tags(),
            vec![HornTag::BasicHorn, HornTag::BasicWHorn]
        );
        assert!(classify("top -> c == c").is_clause());
    }
}
