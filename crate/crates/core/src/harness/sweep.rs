//! Exhaustive and random sweeps of the parameter inequalities
//! `tc ≤ vc`, `mw ≤ nd` and `nd ≤ 2^vc + vc`.

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{trial_seed, SizeRange, SuiteConfig, SCHEMA};
use crate::error::Result;
use crate::generate::{cluster, gnp, rng, split_like};
use crate::graph::{are_isomorphic, Graph};
use crate::params::compute_all;

/// Size key for the exhaustive part (all graphs up to isomorphism).
pub const EXHAUSTIVE_KEY: &str = "sweep-exhaustive";
/// Size key for the random part; `trials` graphs are drawn.
pub const RANDOM_KEY: &str = "sweep-random";

const EXHAUSTIVE_DEFAULT: SizeRange = SizeRange::new(0, 8);
const RANDOM_DEFAULT: SizeRange = SizeRange::new(1, 12);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepViolation {
    pub graph: Graph,
    pub vc: usize,
    pub tc: usize,
    pub nd: usize,
    pub mw: usize,
    pub failed: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema: u32,
    pub seed: u64,
    /// Number of isomorphism classes per order `0..=max`.
    pub exhaustive_counts: Vec<usize>,
    pub random_graphs: usize,
    pub graphs: usize,
    /// Largest `nd / (2^vc + vc)` seen.
    pub max_nd_ratio: f64,
    pub max_vc: usize,
    pub max_tc: usize,
    pub max_nd: usize,
    pub max_mw: usize,
    pub violations: Vec<SweepViolation>,
    pub passed: bool,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Isomorphism invariant: per-vertex degree, sorted neighbour degrees and
/// triangle count, as a sorted list.
type Invariant = Vec<(usize, Vec<usize>, usize)>;

fn invariant(g: &Graph) -> Invariant {
    let mut out: Vec<_> = (0..g.n())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            let ns = g.neighbors(v);
            let tri = ns
                .iter()
                .enumerate()
                .map(|(i, &a)| ns[i + 1..].iter().filter(|&&b| g.has_edge(a, b)).count())
                .sum();
            (g.degree(v), nd, tri)
        })
        .collect();
    out.sort_unstable();
    out
}

/// One representative of every isomorphism class of graphs on `0..=max_n`
/// vertices, grouped by order. Each order is built by adding a vertex with
/// every possible neighbourhood to the classes of the previous order.
pub fn graphs_up_to_isomorphism(max_n: usize) -> Vec<Vec<Graph>> {
    let mut levels = vec![vec![Graph::new(0)]];
    for n in 1..=max_n {
        let prev = &levels[n - 1];
        let candidates: Vec<Graph> = prev
            .par_iter()
            .flat_map_iter(|g| {
                (0u32..1 << (n - 1)).map(move |mask| {
                    let mut h = g.clone();
                    let v = h.add_vertex();
                    for u in 0..v {
                        if mask >> u & 1 == 1 {
                            h.add_edge(u, v).expect("fresh edge");
                        }
                    }
                    h
                })
            })
            .collect();
        let mut buckets: HashMap<Invariant, Vec<Graph>> = HashMap::new();
        let mut reps = Vec::new();
        for h in candidates {
            let bucket = buckets.entry(invariant(&h)).or_default();
            if !bucket.iter().any(|r| are_isomorphic(r, &h)) {
                bucket.push(h.clone());
                reps.push(h);
            }
        }
        levels.push(reps);
    }
    levels
}

fn random_graph(seed: u64, size: SizeRange) -> Result<Graph> {
    let mut r = rng(seed);
    let n = r.gen_range(size.min..=size.max.max(size.min));
    Ok(match r.gen_range(0..3) {
        0 => gnp(n, r.gen_range(0.05..0.95), &mut r)?,
        1 => {
            let attach = r.gen_range(0..=n.min(4));
            let mut rest = n - attach;
            let mut blocks = Vec::new();
            while rest > 0 {
                let s = r.gen_range(1..=rest);
                blocks.push(s);
                rest -= s;
            }
            cluster(&blocks, attach, &mut r)
        }
        _ => {
            let c = r.gen_range(0..=n);
            split_like(c, n - c, r.gen_range(0.1..0.9), &mut r)?
        }
    })
}

struct Measured {
    graph: Graph,
    vc: usize,
    tc: usize,
    nd: usize,
    mw: usize,
}

fn measure(g: Graph) -> Result<Measured> {
    let p = compute_all(&g, false)?;
    Ok(Measured {
        graph: g,
        vc: p.vc,
        tc: p.tc,
        nd: p.nd,
        mw: p.mw,
    })
}

/// Computes all four parameters on every graph of the corpus and checks the
/// inequalities between them.
pub fn param_sweep(cfg: &SuiteConfig) -> Result<SweepReport> {
    let exhaustive = cfg.sizes.get(EXHAUSTIVE_KEY).copied().unwrap_or(EXHAUSTIVE_DEFAULT);
    let random = cfg.sizes.get(RANDOM_KEY).copied().unwrap_or(RANDOM_DEFAULT);
    let levels = graphs_up_to_isomorphism(exhaustive.max);
    let exhaustive_counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    let mut corpus: Vec<Graph> = levels.into_iter().skip(exhaustive.min).flatten().collect();
    for i in 0..cfg.trials {
        corpus.push(random_graph(trial_seed(cfg.seed, RANDOM_KEY, i), random)?);
    }
    let measured: Vec<Measured> = corpus.into_par_iter().map(measure).collect::<Result<_>>()?;

    let mut report = SweepReport {
        schema: SCHEMA,
        seed: cfg.seed,
        exhaustive_counts,
        random_graphs: cfg.trials,
        graphs: measured.len(),
        max_nd_ratio: 0.0,
        max_vc: 0,
        max_tc: 0,
        max_nd: 0,
        max_mw: 0,
        violations: Vec::new(),
        passed: true,
    };
    for m in measured {
        let bound = (1usize << m.vc) + m.vc;
        report.max_nd_ratio = report.max_nd_ratio.max(m.nd as f64 / bound as f64);
        report.max_vc = report.max_vc.max(m.vc);
        report.max_tc = report.max_tc.max(m.tc);
        report.max_nd = report.max_nd.max(m.nd);
        report.max_mw = report.max_mw.max(m.mw);
        let mut failed = Vec::new();
        if m.tc > m.vc {
            failed.push("tc<=vc".to_string());
        }
        if m.mw > m.nd {
            failed.push("mw<=nd".to_string());
        }
        if m.nd > bound {
            failed.push("nd<=2^vc+vc".to_string());
        }
        if !failed.is_empty() {
            report.violations.push(SweepViolation {
                graph: m.graph,
                vc: m.vc,
                tc: m.tc,
                nd: m.nd,
                mw: m.mw,
                failed,
            });
        }
    }
    report.passed = report.violations.is_empty();
    Ok(report)
}
