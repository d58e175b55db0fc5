//! Finite algebras given by explicit operation tables.
//!
//! File format: whitespace-separated integers (`#` starts a comment). The
//! carrier size `n` comes first, followed by three `n x n` row-major tables:
//! strong conjunction, residuum (entries are element indices) and the order
//! (`1` at row `a`, column `b` iff `a <= b`).

use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableAlgebra {
    size: u32,
    conj: Vec<u32>,
    residuum: Vec<u32>,
    leq: Vec<bool>,
    meet: Vec<Option<u32>>,
    join: Vec<Option<u32>>,
    bottom: u32,
    top: u32,
}

impl TableAlgebra {
    /// Builds the algebra after structural validation only: table shapes, a
    /// partial order with least and greatest element. The MTL laws are not
    /// checked; see [`super::Algebra::table`] for the checked constructor.
    pub fn from_tables(size: u32, conj: Vec<u32>, residuum: Vec<u32>, leq: Vec<bool>) -> Result<Self, AlgebraError> {
        let n = size as usize;
        let bad = |m: String| AlgebraError::InvalidTable(m);
        if n == 0 {
            return Err(bad("carrier must be nonempty".into()));
        }
        for (name, t) in [("conjunction", &conj), ("residuum", &residuum)] {
            if t.len() != n * n {
                return Err(bad(format!("{name} table needs {} entries, got {}", n * n, t.len())));
            }
            if let Some(v) = t.iter().find(|v| **v >= size) {
                return Err(bad(format!("{name} table entry {v} is outside the carrier")));
            }
        }
        if leq.len() != n * n {
            return Err(bad(format!("order table needs {} entries, got {}", n * n, leq.len())));
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(bad(format!("order is not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(bad(format!("order is not antisymmetric at {a}, {b}")));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(bad(format!("order is not transitive at {a}, {b}, {c}")));
                    }
                }
            }
        }
        let bottom = (0..n)
            .find(|&a| (0..n).all(|b| le(a, b)))
            .ok_or_else(|| bad("order has no least element".into()))?;
        let top = (0..n)
            .find(|&a| (0..n).all(|b| le(b, a)))
            .ok_or_else(|| bad("order has no greatest element".into()))?;
        let mut meet = vec![None; n * n];
        let mut join = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                meet[a * n + b] = lower
                    .iter()
                    .copied()
                    .find(|&c| lower.iter().all(|&d| le(d, c)))
                    .map(|c| c as u32);
                let upper: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                join[a * n + b] = upper
                    .iter()
                    .copied()
                    .find(|&c| upper.iter().all(|&d| le(c, d)))
                    .map(|c| c as u32);
            }
        }
        Ok(TableAlgebra {
            size,
            conj,
            residuum,
            leq,
            meet,
            join,
            bottom: bottom as u32,
            top: top as u32,
        })
    }

    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut nums = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split_whitespace() {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| AlgebraError::InvalidTable(format!("`{tok}` is not a non-negative integer")))?;
                nums.push(v);
            }
        }
        let (&size, rest) = nums
            .split_first()
            .ok_or_else(|| AlgebraError::InvalidTable("empty table file".into()))?;
        let n2 = (size as usize) * (size as usize);
        if rest.len() != 3 * n2 {
            return Err(AlgebraError::InvalidTable(format!(
                "expected {} table entries after the size, found {}",
                3 * n2,
                rest.len()
            )));
        }
        let leq = rest[2 * n2..]
            .iter()
            .map(|v| match v {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(AlgebraError::InvalidTable(format!(
                    "order entries must be 0 or 1, got {other}"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_tables(size, rest[..n2].to_vec(), rest[n2..2 * n2].to_vec(), leq)
    }

    pub fn to_text(&self) -> String {
        let n = self.size as usize;
        let mut out = format!("{n}\n");
        let rows = |t: Vec<String>, out: &mut String| {
            for r in t.chunks(n) {
                out.push_str(&r.join(" "));
                out.push('\n');
            }
        };
        out.push_str("# conjunction\n");
        rows(self.conj.iter().map(u32::to_string).collect(), &mut out);
        out.push_str("# residuum\n");
        rows(self.residuum.iter().map(u32::to_string).collect(), &mut out);
        out.push_str("# order\n");
        rows(self.leq.iter().map(|b| u8::from(*b).to_string()).collect(), &mut out);
        out
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn bottom(&self) -> u32 {
        self.bottom
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    fn idx(&self, a: u32, b: u32) -> usize {
        a as usize * self.size as usize + b as usize
    }

    pub fn conj(&self, a: u32, b: u32) -> u32 {
        self.conj[self.idx(a, b)]
    }

    pub fn residuum(&self, a: u32, b: u32) -> u32 {
        self.residuum[self.idx(a, b)]
    }

    pub fn leq(&self, a: u32, b: u32) -> bool {
        self.leq[self.idx(a, b)]
    }

    pub fn meet(&self, a: u32, b: u32) -> Option<u32> {
        self.meet[self.idx(a, b)]
    }

    pub fn join(&self, a: u32, b: u32) -> Option<u32> {
        self.join[self.idx(a, b)]
    }

    pub fn is_chain(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.leq(a, b) || self.leq(b, a)))
    }
}
