use std::collections::{BTreeMap, BTreeSet};

use super::universe::{CongruenceState, TermUniverse};
use super::{SaturationConfig, SaturationError};
use crate::syntax::{classify_horn, Atom, Formula, Term};

#[derive(Debug, Clone)]
enum Pattern {
    Var(usize),
    App(String, Vec<Pattern>),
}

#[derive(Debug, Clone)]
enum Literal {
    Top,
    Bottom,
    Atom(String, Vec<Pattern>),
    Eq(Pattern, Pattern),
}

/// One basic Horn conjunct of an input clause, with its variables numbered.
#[derive(Debug, Clone)]
struct Rule {
    vars: usize,
    body: Vec<Literal>,
    head: Literal,
}

type Binding = Vec<Option<usize>>;

/// Ground atoms keyed by predicate, arguments as class roots.
pub(crate) type AtomBase = BTreeMap<String, BTreeSet<Vec<usize>>>;

fn compile_pattern(t: &Term, vars: &mut Vec<String>) -> Pattern {
    match t {
        Term::Var(x) => {
            let slot = vars.iter().position(|v| v == x).unwrap_or_else(|| {
                vars.push(x.clone());
                vars.len() - 1
            });
            Pattern::Var(slot)
        }
        Term::App(f, args) => Pattern::App(f.clone(), args.iter().map(|a| compile_pattern(a, vars)).collect()),
    }
}

fn compile_literal(f: &Formula, vars: &mut Vec<String>) -> Literal {
    match f {
        Formula::Top => Literal::Top,
        Formula::Bottom => Literal::Bottom,
        Formula::Atom(a) if a.is_equality() => {
            Literal::Eq(compile_pattern(&a.args[0], vars), compile_pattern(&a.args[1], vars))
        }
        Formula::Atom(a) => Literal::Atom(
            a.predicate.clone(),
            a.args.iter().map(|t| compile_pattern(t, vars)).collect(),
        ),
        other => unreachable!("classified Horn clauses have atomic literals, got {other}"),
    }
}

fn compile(theory: &[Formula]) -> Result<Vec<Rule>, SaturationError> {
    let mut rules = Vec::new();
    for (index, phi) in theory.iter().enumerate() {
        let class = classify_horn(phi);
        if !class.is_clause() {
            return Err(SaturationError::NotHorn {
                index,
                formula: phi.to_string(),
                tag: class.primary_tag().name(),
            });
        }
        for basic in &class.matrix {
            let mut vars = Vec::new();
            let body = basic.body.iter().map(|l| compile_literal(l, &mut vars)).collect();
            let head = compile_literal(&basic.head, &mut vars);
            rules.push(Rule {
                vars: vars.len(),
                body,
                head,
            });
        }
    }
    Ok(rules)
}

/// Deepest ground term occurring in the formulas.
pub(crate) fn ground_depth(theory: &[Formula]) -> usize {
    theory
        .iter()
        .flat_map(|f| f.atoms())
        .flat_map(|a| a.args.iter())
        .filter(|t| t.is_ground())
        .map(Term::depth)
        .max()
        .unwrap_or(0)
}

pub(crate) struct Engine {
    pub universe: TermUniverse,
    pub cc: CongruenceState,
    pub atoms: AtomBase,
    pub bottom_derived: bool,
    /// An instance needed a term beyond the universe.
    pub overflow: bool,
    pub rounds: usize,
    pub fixpoint: bool,
    members: BTreeMap<usize, Vec<usize>>,
}

impl Engine {
    pub fn new(universe: TermUniverse) -> Self {
        let cc = CongruenceState::new(&universe);
        let members = cc.classes();
        Engine {
            universe,
            cc,
            atoms: AtomBase::new(),
            bottom_derived: false,
            overflow: false,
            rounds: 0,
            fixpoint: false,
            members,
        }
    }

    /// Class of a term: frozen variables and constants by identity,
    /// applications through the congruence table.
    pub fn class_of(&self, t: &Term) -> Option<usize> {
        match t {
            Term::Var(_) => self.universe.id_of(t).map(|id| self.cc.find(id)),
            Term::App(f, args) => {
                let roots = args.iter().map(|a| self.class_of(a)).collect::<Option<Vec<_>>>()?;
                self.cc.lookup(f, &roots)
            }
        }
    }

    pub fn seed_atom(&mut self, atom: &Atom) -> Result<(), SaturationError> {
        if atom.is_equality() {
            return self.seed_equation(&atom.args[0], &atom.args[1]);
        }
        let roots = atom
            .args
            .iter()
            .map(|t| {
                self.class_of(t)
                    .ok_or_else(|| SaturationError::OutsideUniverse(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.atoms.entry(atom.predicate.clone()).or_default().insert(roots);
        Ok(())
    }

    pub fn seed_equation(&mut self, a: &Term, b: &Term) -> Result<(), SaturationError> {
        let ca = self
            .class_of(a)
            .ok_or_else(|| SaturationError::OutsideUniverse(a.to_string()))?;
        let cb = self
            .class_of(b)
            .ok_or_else(|| SaturationError::OutsideUniverse(b.to_string()))?;
        if self.cc.union(ca, cb) {
            self.cc.close(&self.universe);
            self.recanonicalize();
        }
        Ok(())
    }

    fn recanonicalize(&mut self) {
        self.members = self.cc.classes();
        let old = std::mem::take(&mut self.atoms);
        for (p, tuples) in old {
            let set = self.atoms.entry(p).or_default();
            for t in tuples {
                set.insert(t.into_iter().map(|x| self.cc.find(x)).collect());
            }
        }
    }

    pub fn run(&mut self, theory: &[Formula], config: &SaturationConfig) -> Result<(), SaturationError> {
        let rules = compile(theory)?;
        let mut delta = AtomBase::new();
        let mut full = true;
        while self.rounds < config.max_rounds {
            self.rounds += 1;
            let mut new_atoms: BTreeSet<(String, Vec<usize>)> = BTreeSet::new();
            let mut new_eqs: Vec<(usize, usize)> = Vec::new();
            for rule in &rules {
                if rule.body.iter().any(|l| matches!(l, Literal::Bottom)) {
                    continue;
                }
                for binding in self.instances(rule, if full { None } else { Some(&delta) }) {
                    match &rule.head {
                        Literal::Top => {}
                        Literal::Bottom => {
                            self.bottom_derived = true;
                            return Ok(());
                        }
                        Literal::Atom(p, args) => match self.eval_all(args, &binding) {
                            Some(roots) => {
                                if !self.atoms.get(p).is_some_and(|s| s.contains(&roots)) {
                                    new_atoms.insert((p.clone(), roots));
                                }
                            }
                            None => self.overflow = true,
                        },
                        Literal::Eq(a, b) => match (self.eval(a, &binding), self.eval(b, &binding)) {
                            (Some(x), Some(y)) if x != y => new_eqs.push((x, y)),
                            (Some(_), Some(_)) => {}
                            _ => self.overflow = true,
                        },
                    }
                }
            }
            let mut merged = false;
            for (a, b) in new_eqs {
                merged |= self.cc.union(a, b);
            }
            delta = AtomBase::new();
            for (p, roots) in &new_atoms {
                self.atoms.entry(p.clone()).or_default().insert(roots.clone());
                delta.entry(p.clone()).or_default().insert(roots.clone());
            }
            if merged {
                self.cc.close(&self.universe);
                self.recanonicalize();
            }
            if new_atoms.is_empty() && !merged {
                self.fixpoint = true;
                return Ok(());
            }
            full = merged;
        }
        Ok(())
    }

    fn eval(&self, p: &Pattern, b: &Binding) -> Option<usize> {
        match p {
            Pattern::Var(s) => b[*s],
            Pattern::App(f, args) => {
                let roots = self.eval_all(args, b)?;
                self.cc.lookup(f, &roots)
            }
        }
    }

    fn eval_all(&self, ps: &[Pattern], b: &Binding) -> Option<Vec<usize>> {
        ps.iter().map(|p| self.eval(p, b)).collect()
    }

    /// Bindings satisfying the rule body. With a delta, only instances using
    /// at least one delta atom are produced.
    fn instances(&self, rule: &Rule, delta: Option<&AtomBase>) -> Vec<Binding> {
        let atom_lits: Vec<usize> = (0..rule.body.len())
            .filter(|&i| matches!(rule.body[i], Literal::Atom(..)))
            .collect();
        let mut partial: Vec<Binding> = Vec::new();
        match delta {
            None => partial.extend(self.join(rule, &atom_lits, None)),
            Some(d) => {
                for &pivot in &atom_lits {
                    partial.extend(self.join(rule, &atom_lits, Some((pivot, d))));
                }
            }
        }
        let mut out = Vec::new();
        let roots: Vec<usize> = self.members.keys().copied().collect();
        for b in partial {
            self.complete_binding(rule, b, 0, &roots, &mut out);
        }
        out.sort();
        out.dedup();
        out
    }

    fn join(&self, rule: &Rule, atom_lits: &[usize], pivot: Option<(usize, &AtomBase)>) -> Vec<Binding> {
        let mut bindings = vec![vec![None; rule.vars]];
        for &i in atom_lits {
            let Literal::Atom(p, args) = &rule.body[i] else {
                unreachable!()
            };
            let source = match pivot {
                Some((j, d)) if j == i => d,
                _ => &self.atoms,
            };
            let Some(tuples) = source.get(p) else { return Vec::new() };
            let mut next = Vec::new();
            for b in &bindings {
                for t in tuples {
                    next.extend(self.match_args(args, t, b.clone()));
                }
            }
            bindings = next;
            if bindings.is_empty() {
                break;
            }
        }
        bindings
    }

    fn match_args(&self, ps: &[Pattern], roots: &[usize], b: Binding) -> Vec<Binding> {
        let mut acc = vec![b];
        for (p, &r) in ps.iter().zip(roots) {
            acc = acc.into_iter().flat_map(|b| self.match_pattern(p, r, b)).collect();
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// E-matching of a pattern against a class.
    fn match_pattern(&self, p: &Pattern, root: usize, mut b: Binding) -> Vec<Binding> {
        match p {
            Pattern::Var(s) => match b[*s] {
                Some(r) if r == root => vec![b],
                Some(_) => Vec::new(),
                None => {
                    b[*s] = Some(root);
                    vec![b]
                }
            },
            Pattern::App(f, args) => {
                let mut out = Vec::new();
                for &n in self.members.get(&root).map(Vec::as_slice).unwrap_or(&[]) {
                    let node = self.universe.node(n);
                    if node.symbol.as_deref() != Some(f.as_str()) || node.args.len() != args.len() {
                        continue;
                    }
                    let arg_roots: Vec<usize> = node.args.iter().map(|&a| self.cc.find(a)).collect();
                    out.extend(self.match_args(args, &arg_roots, b.clone()));
                }
                out
            }
        }
    }

    /// Enumerates classes for variables the atoms left unbound, then checks
    /// the equations of the body.
    fn complete_binding(&self, rule: &Rule, b: Binding, from: usize, roots: &[usize], out: &mut Vec<Binding>) {
        if let Some(slot) = (from..rule.vars).find(|&s| b[s].is_none()) {
            for &r in roots {
                let mut nb = b.clone();
                nb[slot] = Some(r);
                self.complete_binding(rule, nb, slot + 1, roots, out);
            }
            return;
        }
        let holds = rule.body.iter().all(|l| match l {
            Literal::Eq(x, y) => matches!((self.eval(x, &b), self.eval(y, &b)), (Some(a), Some(c)) if a == c),
            _ => true,
        });
        if holds {
            out.push(b);
        }
    }
}
