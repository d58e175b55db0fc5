use std::collections::BTreeSet;
use std::fmt;

use super::signature::EQUALITY;
use super::term::{Substitution, Term};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn is_equality(&self) -> bool {
        self.predicate == EQUALITY
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn substitute(&self, s: &Substitution) -> Atom {
        Atom {
            predicate: self.predicate.clone(),
            args: self.args.iter().map(|t| t.substitute(s)).collect(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_equality() && self.args.len() == 2 {
            return write!(f, "{} == {}", self.args[0], self.args[1]);
        }
        write!(f, "{}", self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Connective {
    /// Strong (monoidal) conjunction `&`.
    StrongAnd,
    /// Weak (lattice) conjunction `/\`.
    WeakAnd,
    Or,
    Implies,
}

impl Connective {
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::StrongAnd => "&",
            Connective::WeakAnd => "/\\",
            Connective::Or => "\\/",
            Connective::Implies => "->",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            Connective::Implies => 1,
            Connective::Or => 2,
            Connective::StrongAnd | Connective::WeakAnd => 3,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        }
    }
}

/// Normalized formula. Negation and the biconditional do not occur: `~a` is
/// stored as `a -> bot` and `a <-> b` as `(a -> b) /\ (b -> a)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Atom(Atom),
    Bottom,
    Top,
    Binary(Connective, Box<Formula>, Box<Formula>),
    Quantified(Quantifier, String, Box<Formula>),
}

impl Formula {
    pub fn atom(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(Atom::new(predicate, args))
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Formula::atom(EQUALITY, vec![lhs, rhs])
    }

    pub fn binary(c: Connective, a: Formula, b: Formula) -> Self {
        Formula::Binary(c, Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::binary(Connective::Implies, a, b)
    }

    pub fn strong_and(a: Formula, b: Formula) -> Self {
        Formula::binary(Connective::StrongAnd, a, b)
    }

    pub fn weak_and(a: Formula, b: Formula) -> Self {
        Formula::binary(Connective::WeakAnd, a, b)
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::binary(Connective::Or, a, b)
    }

    pub fn negation(a: Formula) -> Self {
        Formula::implies(a, Formula::Bottom)
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::weak_and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Quantified(Quantifier::Forall, var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Quantified(Quantifier::Exists, var.into(), Box::new(body))
    }

    /// Folds `items` with the given connective, left-associated. `None` when empty.
    pub fn fold(c: Connective, items: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        items.into_iter().reduce(|acc, f| Formula::binary(c, acc, f))
    }

    /// Atoms and the truth constants are atomic.
    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::Bottom | Formula::Top)
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Bottom | Formula::Top => true,
            Formula::Binary(_, a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Quantified(..) => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                for t in &a.args {
                    for v in t.vars() {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
            }
            Formula::Bottom | Formula::Top => {}
            Formula::Binary(_, a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Quantified(_, x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars_ordered(&self) -> Vec<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match f {
                Formula::Atom(a) => {
                    for t in &a.args {
                        term_vars(t, bound, out);
                    }
                }
                Formula::Bottom | Formula::Top => {}
                Formula::Binary(_, a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                Formula::Quantified(_, x, body) => {
                    bound.push(x.clone());
                    walk(body, bound, out);
                    bound.pop();
                }
            }
        }
        fn term_vars(t: &Term, bound: &[String], out: &mut Vec<String>) {
            match t {
                Term::Var(x) => {
                    if !bound.contains(x) && !out.contains(x) {
                        out.push(x.clone());
                    }
                }
                Term::App(_, args) => args.iter().for_each(|a| term_vars(a, bound, out)),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Prefixes universal quantifiers for every free variable.
    pub fn universal_closure(&self) -> Formula {
        self.free_vars_ordered()
            .into_iter()
            .rev()
            .fold(self.clone(), |acc, x| Formula::forall(x, acc))
    }

    /// Rank of the normalized tree: atoms 0, quantifiers add one, binary
    /// connectives sum. Because negation is stored as `a -> bot`, this can be
    /// lower than the rank of the source text; see `SurfaceFormula::rank`.
    pub fn rank(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom | Formula::Top => 0,
            Formula::Binary(_, a, b) => a.rank() + b.rank(),
            Formula::Quantified(_, _, body) => body.rank() + 1,
        }
    }

    /// True when the similarity predicate occurs anywhere.
    pub fn mentions_equality(&self) -> bool {
        self.atoms().iter().any(|a| a.is_equality())
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |a| out.push(a));
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::Atom(a) => f(a),
            Formula::Bottom | Formula::Top => {}
            Formula::Binary(_, a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
            Formula::Quantified(_, _, body) => body.visit_atoms(f),
        }
    }

    /// Capture-avoiding simultaneous substitution. Bound variables that would
    /// capture a replacing term's variable are renamed by appending primes.
    pub fn substitute(&self, s: &Substitution) -> Formula {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Atom(a) => Formula::Atom(a.substitute(s)),
            Formula::Bottom | Formula::Top => self.clone(),
            Formula::Binary(c, a, b) => Formula::binary(*c, a.substitute(s), b.substitute(s)),
            Formula::Quantified(q, x, body) => {
                let free = body.free_vars();
                let active = s.without(x).restrict(&free);
                if active.is_empty() {
                    return self.clone();
                }
                let captures = active.iter().any(|(_, t)| t.contains_var(x));
                if !captures {
                    return Formula::Quantified(*q, x.clone(), Box::new(body.substitute(&active)));
                }
                let mut avoid = free.clone();
                for (_, t) in active.iter() {
                    t.collect_vars(&mut avoid);
                }
                let fresh = fresh_name(x, &avoid);
                let renamed = body.substitute(&Substitution::single(x.clone(), Term::var(fresh.clone())));
                Formula::Quantified(*q, fresh, Box::new(renamed.substitute(&active)))
            }
        }
    }

    /// Renames every bound variable (for property tests on renaming invariance).
    pub fn rename_bound(&self, rename: &impl Fn(&str) -> String) -> Formula {
        match self {
            Formula::Atom(_) | Formula::Bottom | Formula::Top => self.clone(),
            Formula::Binary(c, a, b) => Formula::binary(*c, a.rename_bound(rename), b.rename_bound(rename)),
            Formula::Quantified(q, x, body) => {
                let y = rename(x);
                let body = body.rename_bound(rename);
                let body = if &y == x {
                    body
                } else {
                    body.substitute(&Substitution::single(x.clone(), Term::var(y.clone())))
                };
                Formula::Quantified(*q, y, Box::new(body))
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Quantified(..) => 0,
            Formula::Binary(c, ..) => c.precedence(),
            _ => 4,
        }
    }
}

fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let mut name = format!("{base}'");
    while avoid.contains(&name) {
        name.push('\'');
    }
    name
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Self {
        Formula::Atom(a)
    }
}

// Printing inserts exactly the parentheses the parser needs: `&` and `/\` are
// left-associative at one level, `\/` is left-associative, `->` is
// right-associative, and quantified subformulas are always parenthesized
// when nested under a connective since their bodies extend to the right.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Bottom => write!(f, "bot"),
            Formula::Top => write!(f, "top"),
            Formula::Quantified(q, x, body) => write!(f, "{} {x}. {body}", q.keyword()),
            Formula::Binary(c, a, b) => {
                let p = c.precedence();
                let right_assoc = *c == Connective::Implies;
                let left_parens = a.precedence() == 0 || a.precedence() < p || (right_assoc && a.precedence() == p);
                let right_parens = b.precedence() == 0 || b.precedence() < p || (!right_assoc && b.precedence() == p);
                write_child(f, a, left_parens)?;
                write!(f, " {} ", c.symbol())?;
                write_child(f, b, right_parens)
            }
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}
