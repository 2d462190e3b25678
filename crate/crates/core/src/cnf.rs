//! CNF formulas with DIMACS `p cnf` I/O.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A literal: variable index (0-based) and polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit {
            var,
            positive: false,
        }
    }

    /// DIMACS encoding: `var + 1`, negated when the literal is negative.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

/// A CNF formula with no duplicate clauses and no repeated variable inside a clause.
///
/// Construction normalizes: literals in a clause are sorted and deduplicated,
/// clauses containing both `x` and `¬x` are dropped (always satisfied), and
/// duplicate clauses are merged keeping first-occurrence order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Lit>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(clauses.len());
        for clause in clauses {
            let lits: BTreeSet<Lit> = clause.into_iter().collect();
            if let Some(l) = lits.iter().find(|l| l.var >= num_vars) {
                return Err(Error::arg(format!(
                    "literal on variable {} but formula has {num_vars} variables",
                    l.var + 1
                )));
            }
            let vars: BTreeSet<usize> = lits.iter().map(|l| l.var).collect();
            if vars.len() < lits.len() {
                continue;
            }
            let lits: Vec<Lit> = lits.into_iter().collect();
            if seen.insert(lits.clone()) {
                out.push(lits);
            }
        }
        Ok(CnfFormula {
            num_vars,
            clauses: out,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn contains(&self, clause: usize, lit: Lit) -> bool {
        self.clauses[clause].binary_search(&lit).is_ok()
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| assignment[l.var] == l.positive))
    }

    /// Formula without clause `j`.
    pub fn without_clause(&self, j: usize) -> CnfFormula {
        let mut clauses = self.clauses.clone();
        clauses.remove(j);
        CnfFormula {
            num_vars: self.num_vars,
            clauses,
        }
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p cnf {} {}", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(s, "{} ", l.to_dimacs());
            }
            s.push_str("0\n");
        }
        s
    }

    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(Error::parse(line_no, "duplicate problem line"));
                }
                let tok: Vec<&str> = line.split_whitespace().collect();
                if tok.len() != 4 || tok[1] != "cnf" {
                    return Err(Error::parse(line_no, "expected `p cnf <vars> <clauses>`"));
                }
                let nv = tok[2]
                    .parse()
                    .map_err(|_| Error::parse(line_no, "malformed variable count"))?;
                let nc = tok[3]
                    .parse()
                    .map_err(|_| Error::parse(line_no, "malformed clause count"))?;
                header = Some((nv, nc));
                continue;
            }
            let (nv, _) =
                header.ok_or_else(|| Error::parse(line_no, "clause before `p cnf` header"))?;
            for tok in line.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("malformed literal `{tok}`")))?;
                if x == 0 {
                    clauses.push(std::mem::take(&mut current));
                    continue;
                }
                let var = x.unsigned_abs() as usize;
                if var > nv {
                    return Err(Error::parse(
                        line_no,
                        format!("variable {var} out of range 1..={nv}"),
                    ));
                }
                current.push(if x > 0 { Lit::pos(var - 1) } else { Lit::neg(var - 1) });
            }
        }
        let (nv, _) = header.ok_or_else(|| Error::parse(last_line, "missing `p cnf` header"))?;
        if !current.is_empty() {
            clauses.push(current);
        }
        CnfFormula::new(nv, clauses)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_duplicates() {
        let f = CnfFormula::new(
            2,
            vec![
                vec![Lit::pos(0), Lit::pos(0), Lit::neg(1)],
                vec![Lit::neg(1), Lit::pos(0)],
                vec![Lit::pos(1), Lit::neg(1)],
            ],
        )
        .unwrap();
        assert_eq!(f.clauses(), &[vec![Lit::pos(0), Lit::neg(1)]]);
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c demo\np cnf 3 2\n1 -2 0\n2 3 -1 0\n";
        let f = CnfFormula::parse_dimacs(text).unwrap();
        assert_eq!(CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
        assert!(f.evaluate(&[true, true, false]));
        assert!(!f.evaluate(&[false, true, false]));
    }

    #[test]
    fn rejects_out_of_range_variable() {
        assert!(matches!(
            CnfFormula::parse_dimacs("p cnf 1 1\n2 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
