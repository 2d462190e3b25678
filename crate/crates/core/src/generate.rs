//! Seeded instance generators for the verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cnf::{CnfFormula, Lit};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GenSpec {
    Gnp { n: usize, p: f64 },
    /// Disjoint cliques of the given sizes plus `attach` extra vertices that see
    /// whole cliques. The extra vertices form a twin-cover.
    Cluster { cliques: Vec<usize>, attach: usize },
    /// A clique and an independent set joined by random edges.
    SplitLike { clique: usize, independent: usize, p: f64 },
    Cnf { vars: usize, clauses: usize, max_width: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generated {
    Graph(Graph),
    Cnf(CnfFormula),
}

pub fn generate(spec: &GenSpec, seed: u64) -> Result<Generated> {
    let mut r = rng(seed);
    Ok(match spec {
        GenSpec::Gnp { n, p } => Generated::Graph(gnp(*n, *p, &mut r)?),
        GenSpec::Cluster { cliques, attach } => {
            Generated::Graph(cluster(cliques, *attach, &mut r))
        }
        GenSpec::SplitLike {
            clique,
            independent,
            p,
        } => Generated::Graph(split_like(*clique, *independent, *p, &mut r)?),
        GenSpec::Cnf {
            vars,
            clauses,
            max_width,
        } => Generated::Cnf(cnf(*vars, *clauses, *max_width, &mut r)?),
    })
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::arg(format!("edge probability {p} not in [0, 1]")));
    }
    Ok(())
}

pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    check_p(p)?;
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.insert_unchecked(u, v);
            }
        }
    }
    Ok(g)
}

/// Cliques occupy the low ids in order; attachment vertices come last.
pub fn cluster<R: Rng>(cliques: &[usize], attach: usize, rng: &mut R) -> Graph {
    let base: usize = cliques.iter().sum();
    let mut g = Graph::new(base + attach);
    let mut blocks = Vec::with_capacity(cliques.len());
    let mut off = 0;
    for &size in cliques {
        let block: Vec<usize> = (off..off + size).collect();
        for (i, &u) in block.iter().enumerate() {
            for &v in &block[i + 1..] {
                g.insert_unchecked(u, v);
            }
        }
        blocks.push(block);
        off += size;
    }
    for a in base..base + attach {
        for block in &blocks {
            if rng.gen_bool(0.5) {
                for &v in block {
                    g.insert_unchecked(a, v);
                }
            }
        }
        for b in base..a {
            if rng.gen_bool(0.5) {
                g.insert_unchecked(a, b);
            }
        }
    }
    g
}

pub fn split_like<R: Rng>(clique: usize, independent: usize, p: f64, rng: &mut R) -> Result<Graph> {
    check_p(p)?;
    let mut g = Graph::complete(clique);
    for _ in 0..independent {
        let v = g.add_vertex();
        for u in 0..clique {
            if rng.gen_bool(p) {
                g.insert_unchecked(u, v);
            }
        }
    }
    Ok(g)
}

/// Random formula; clause widths are uniform in `1..=max_width` over distinct variables.
pub fn cnf<R: Rng>(vars: usize, clauses: usize, max_width: usize, rng: &mut R) -> Result<CnfFormula> {
    if vars == 0 && clauses > 0 {
        return Err(Error::arg("clauses need at least one variable"));
    }
    let max_width = max_width.clamp(1, vars.max(1));
    let all: Vec<usize> = (0..vars).collect();
    let mut out = Vec::with_capacity(clauses);
    for _ in 0..clauses {
        let width = rng.gen_range(1..=max_width);
        let chosen: Vec<usize> = all.choose_multiple(rng, width).copied().collect();
        out.push(
            chosen
                .into_iter()
                .map(|v| Lit {
                    var: v,
                    positive: rng.gen_bool(0.5),
                })
                .collect(),
        );
    }
    CnfFormula::new(vars, out)
}

/// Uniformly random coloring `V -> 0..k`.
pub fn coloring<R: Rng>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..k.max(1))).collect()
}

/// Random `k`-partite graph with colour classes given by `colors`.
pub fn multipartite<R: Rng>(colors: &[usize], p: f64, rng: &mut R) -> Result<Graph> {
    check_p(p)?;
    let n = colors.len();
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if colors[u] != colors[v] && rng.gen_bool(p) {
                g.insert_unchecked(u, v);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_extremes() {
        let mut r = rng(1);
        assert_eq!(gnp(5, 0.0, &mut r).unwrap(), Graph::new(5));
        assert_eq!(gnp(5, 1.0, &mut r).unwrap(), Graph::complete(5));
        assert!(gnp(5, 1.5, &mut r).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = GenSpec::Gnp { n: 9, p: 0.4 };
        assert_eq!(generate(&spec, 3).unwrap(), generate(&spec, 3).unwrap());
        let spec = GenSpec::Cnf {
            vars: 3,
            clauses: 4,
            max_width: 3,
        };
        assert_eq!(generate(&spec, 3).unwrap(), generate(&spec, 3).unwrap());
    }
}
