use std::collections::{BTreeMap, HashMap};

use crate::syntax::{Signature, Term};

/// A hash-consed universe node. Frozen variables have no symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermNode {
    pub term: Term,
    pub symbol: Option<String>,
    pub args: Vec<usize>,
}

/// All terms up to a depth bound built from the constants and the frozen
/// variables. Node ids follow the representative order (depth, then printed
/// form), so the least id of a class is its representative.
#[derive(Debug, Clone)]
pub struct TermUniverse {
    nodes: Vec<TermNode>,
    by_term: HashMap<Term, usize>,
    depth: usize,
    truncated: bool,
}

impl TermUniverse {
    /// Builds the universe, stopping early (and flagging truncation) once
    /// `max_terms` nodes exist.
    pub fn build(sig: &Signature, frozen: &[String], depth: usize, max_terms: usize) -> TermUniverse {
        let mut levels: Vec<Vec<Term>> = Vec::new();
        let mut level0: Vec<Term> = sig.constants().map(Term::constant).collect();
        level0.extend(frozen.iter().map(Term::var));
        let mut count = level0.len();
        let mut truncated = count > max_terms;
        level0.truncate(max_terms);
        levels.push(level0);
        let functions: Vec<(&str, usize)> = sig.functions().filter(|(_, a)| *a > 0).collect();
        'outer: for k in 1..=depth {
            if truncated {
                break;
            }
            let below: Vec<(&Term, usize)> = levels
                .iter()
                .enumerate()
                .flat_map(|(lvl, ts)| ts.iter().map(move |t| (t, lvl)))
                .collect();
            let mut next = Vec::new();
            for &(f, arity) in &functions {
                let total = below.len().pow(arity as u32);
                for mut i in 0..total {
                    let mut args = Vec::with_capacity(arity);
                    let mut fresh = false;
                    for _ in 0..arity {
                        let (t, lvl) = below[i % below.len()];
                        fresh |= lvl == k - 1;
                        args.push(t.clone());
                        i /= below.len();
                    }
                    if !fresh {
                        continue;
                    }
                    args.reverse();
                    if count >= max_terms {
                        truncated = true;
                        levels.push(next);
                        break 'outer;
                    }
                    next.push(Term::app(f, args));
                    count += 1;
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        let mut keyed: Vec<(usize, String, Term)> = levels
            .into_iter()
            .enumerate()
            .flat_map(|(lvl, ts)| ts.into_iter().map(move |t| (lvl, t.to_string(), t)))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let mut by_term = HashMap::with_capacity(keyed.len());
        let mut nodes = Vec::with_capacity(keyed.len());
        for (id, (_, _, term)) in keyed.into_iter().enumerate() {
            let (symbol, args) = match &term {
                Term::Var(_) => (None, Vec::new()),
                Term::App(f, args) => (Some(f.clone()), args.iter().map(|a| by_term[a]).collect()),
            };
            by_term.insert(term.clone(), id);
            nodes.push(TermNode { term, symbol, args });
        }
        TermUniverse {
            nodes,
            by_term,
            depth,
            truncated,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: usize) -> &TermNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[TermNode] {
        &self.nodes
    }

    pub fn id_of(&self, t: &Term) -> Option<usize> {
        self.by_term.get(t).copied()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// True when the node limit cut generation short.
    pub fn truncated(&self) -> bool {
        self.truncated
    }
}

/// Union-find over universe nodes, closed under congruence.
#[derive(Debug, Clone)]
pub struct CongruenceState {
    parent: Vec<usize>,
    /// (symbol, argument roots) -> some node with that signature.
    table: HashMap<(String, Vec<usize>), usize>,
}

impl CongruenceState {
    pub fn new(universe: &TermUniverse) -> Self {
        let mut s = CongruenceState {
            parent: (0..universe.len()).collect(),
            table: HashMap::new(),
        };
        s.close(universe);
        s
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn find_compress(&mut self, x: usize) -> usize {
        let root = self.find(x);
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    /// Merges two classes; the smaller id stays the root. Returns whether
    /// anything changed. Call [`CongruenceState::close`] afterwards.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find_compress(a), self.find_compress(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Restores congruence closure: applications with equal symbols and
    /// equal argument classes end up in one class.
    pub fn close(&mut self, universe: &TermUniverse) {
        loop {
            let mut merged = false;
            self.table.clear();
            for (id, node) in universe.nodes().iter().enumerate() {
                let Some(f) = &node.symbol else { continue };
                let key = (f.clone(), node.args.iter().map(|&a| self.find(a)).collect::<Vec<_>>());
                match self.table.get(&key) {
                    Some(&other) => merged |= self.union(id, other),
                    None => {
                        self.table.insert(key, id);
                    }
                }
            }
            if !merged {
                break;
            }
        }
        for x in 0..self.parent.len() {
            self.find_compress(x);
        }
    }

    /// Class of `f(args)` when some universe term has that shape.
    pub fn lookup(&self, f: &str, arg_roots: &[usize]) -> Option<usize> {
        self.table
            .get(&(f.to_string(), arg_roots.to_vec()))
            .map(|&n| self.find(n))
    }

    /// Class roots with their members, both in increasing id order.
    pub fn classes(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.parent.len() {
            out.entry(self.find(x)).or_default().push(x);
        }
        out
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.parent.len()).filter(|&x| self.parent[x] == x).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        let mut s = Signature::new();
        s.add_constant("c").unwrap();
        s.add_constant("d").unwrap();
        s.add_function("f", 1).unwrap();
        s
    }

    #[test]
    fn universe_is_sorted_by_depth_then_name() {
        let u = TermUniverse::build(&sig(), &["v1".into()], 2, 1000);
        let names: Vec<String> = u.nodes().iter().map(|n| n.term.to_string()).collect();
        assert_eq!(
            names,
            ["c", "d", "v1", "f(c)", "f(d)", "f(v1)", "f(f(c))", "f(f(d))", "f(f(v1))"]
        );
        assert!(!u.truncated());
        let small = TermUniverse::build(&sig(), &[], 5, 4);
        assert_eq!(small.len(), 4);
        assert!(small.truncated());
    }

    #[test]
    fn congruence_propagates_through_functions() {
        let u = TermUniverse::build(&sig(), &[], 2, 1000);
        let mut cc = CongruenceState::new(&u);
        let id = |s: &str| u.nodes().iter().position(|n| n.term.to_string() == s).unwrap();
        cc.union(id("c"), id("d"));
        cc.close(&u);
        assert_eq!(cc.find(id("f(d)")), id("f(c)"));
        assert_eq!(cc.find(id("f(f(d))")), id("f(f(c))"));
        assert_eq!(cc.lookup("f", &[id("c")]), Some(id("f(c)")));
        assert_eq!(cc.lookup("f", &[id("f(f(c))")]), None);
        // c = f(c) collapses every level into one class
        cc.union(id("c"), id("f(c)"));
        cc.close(&u);
        assert_eq!(cc.roots(), vec![id("c")]);
        assert_eq!(cc.lookup("f", &[id("c")]), Some(id("c")));
    }
}
