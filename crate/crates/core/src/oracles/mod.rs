//! Exact solvers for every problem kind, used as ground truth by the
//! verification suites, plus witness checkers written separately from them.
//!
//! All graph solvers work on [`BitGraph`] and therefore accept at most 128
//! vertices. The default [`Limits`] are much smaller; callers that verify
//! reductions with larger outputs pass explicit limits.

mod check;
mod clique;
mod coloring;
mod cover;
mod domination;
mod hamilton;
mod packing;
mod sat;
mod steiner;

pub use check::check_witness;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{self, BitGraph, MAX_BITS};
use crate::cfa::{self, CfaInstance};
use crate::cnf::CnfFormula;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::vertex_cover::min_vertex_cover_mask;

pub(crate) use clique::max_clique;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ProblemKind {
    Clique,
    IndependentSet,
    VertexCover,
    DominatingSet,
    ConnectedDominatingSet,
    IndependentDominatingSet,
    ConnectedVertexCover,
    FeedbackVertexSet,
    OddCycleTransversal,
    ChromaticNumber,
    HamiltonianCycle,
    HamiltonianPath,
    SteinerTree,
    InducedMatching,
    TrianglePartition,
    MulticoloredClique,
    CnfSat,
    Cfa,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 18] = [
        ProblemKind::Clique,
        ProblemKind::IndependentSet,
        ProblemKind::VertexCover,
        ProblemKind::DominatingSet,
        ProblemKind::ConnectedDominatingSet,
        ProblemKind::IndependentDominatingSet,
        ProblemKind::ConnectedVertexCover,
        ProblemKind::FeedbackVertexSet,
        ProblemKind::OddCycleTransversal,
        ProblemKind::ChromaticNumber,
        ProblemKind::HamiltonianCycle,
        ProblemKind::HamiltonianPath,
        ProblemKind::SteinerTree,
        ProblemKind::InducedMatching,
        ProblemKind::TrianglePartition,
        ProblemKind::MulticoloredClique,
        ProblemKind::CnfSat,
        ProblemKind::Cfa,
    ];

    /// Kebab-case name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Clique => "clique",
            ProblemKind::IndependentSet => "independent-set",
            ProblemKind::VertexCover => "vertex-cover",
            ProblemKind::DominatingSet => "dominating-set",
            ProblemKind::ConnectedDominatingSet => "connected-dominating-set",
            ProblemKind::IndependentDominatingSet => "independent-dominating-set",
            ProblemKind::ConnectedVertexCover => "connected-vertex-cover",
            ProblemKind::FeedbackVertexSet => "feedback-vertex-set",
            ProblemKind::OddCycleTransversal => "odd-cycle-transversal",
            ProblemKind::ChromaticNumber => "chromatic-number",
            ProblemKind::HamiltonianCycle => "hamiltonian-cycle",
            ProblemKind::HamiltonianPath => "hamiltonian-path",
            ProblemKind::SteinerTree => "steiner-tree",
            ProblemKind::InducedMatching => "induced-matching",
            ProblemKind::TrianglePartition => "triangle-partition",
            ProblemKind::MulticoloredClique => "multicolored-clique",
            ProblemKind::CnfSat => "cnf-sat",
            ProblemKind::Cfa => "cfa",
        }
    }

    /// Kinds whose payload is a plain graph and a threshold.
    pub fn is_plain_graph(self) -> bool {
        !matches!(
            self,
            ProblemKind::SteinerTree
                | ProblemKind::MulticoloredClique
                | ProblemKind::CnfSat
                | ProblemKind::Cfa
        )
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::arg(format!("unknown problem kind `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Graph { graph: Graph, k: usize },
    Steiner { graph: Graph, terminals: Vec<usize>, k: usize },
    /// `coloring[v]` is in `0..k`.
    Colored { graph: Graph, coloring: Vec<usize>, k: usize },
    Cnf { formula: CnfFormula },
    Cfa { instance: CfaInstance },
}

/// A decision instance.
///
/// Thresholds: at least `k` for Clique, IndependentSet and InducedMatching;
/// at most `k` for the set-minimization kinds, ChromaticNumber (colors) and
/// SteinerTree (edges); ignored for the Hamiltonian kinds; always `|V|` for
/// TrianglePartition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub kind: ProblemKind,
    pub payload: Payload,
}

impl ProblemInstance {
    pub fn graph(kind: ProblemKind, graph: Graph, k: usize) -> Result<Self> {
        if !kind.is_plain_graph() {
            return Err(Error::arg(format!("{kind} does not take a plain graph payload")));
        }
        let k = if kind == ProblemKind::TrianglePartition { graph.n() } else { k };
        Ok(ProblemInstance {
            kind,
            payload: Payload::Graph { graph, k },
        })
    }

    pub fn steiner(graph: Graph, terminals: Vec<usize>, k: usize) -> Result<Self> {
        let inst = ProblemInstance {
            kind: ProblemKind::SteinerTree,
            payload: Payload::Steiner { graph, terminals, k },
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn multicolored_clique(graph: Graph, coloring: Vec<usize>, k: usize) -> Result<Self> {
        let inst = ProblemInstance {
            kind: ProblemKind::MulticoloredClique,
            payload: Payload::Colored { graph, coloring, k },
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn cnf(formula: CnfFormula) -> Self {
        ProblemInstance {
            kind: ProblemKind::CnfSat,
            payload: Payload::Cnf { formula },
        }
    }

    pub fn cfa(instance: CfaInstance) -> Self {
        ProblemInstance {
            kind: ProblemKind::Cfa,
            payload: Payload::Cfa { instance },
        }
    }

    pub fn graph_ref(&self) -> Option<&Graph> {
        match &self.payload {
            Payload::Graph { graph, .. }
            | Payload::Steiner { graph, .. }
            | Payload::Colored { graph, .. } => Some(graph),
            Payload::Cnf { .. } | Payload::Cfa { .. } => None,
        }
    }

    pub fn k(&self) -> Option<usize> {
        match &self.payload {
            Payload::Graph { k, .. } | Payload::Steiner { k, .. } | Payload::Colored { k, .. } => {
                Some(*k)
            }
            Payload::Cnf { .. } | Payload::Cfa { .. } => None,
        }
    }

    /// Same kind and payload with another graph (threshold kept).
    pub fn with_graph(&self, g: Graph) -> Result<Self> {
        let payload = match &self.payload {
            Payload::Graph { k, .. } => {
                return ProblemInstance::graph(self.kind, g, *k);
            }
            Payload::Steiner { terminals, k, .. } => Payload::Steiner {
                graph: g,
                terminals: terminals.clone(),
                k: *k,
            },
            Payload::Colored { coloring, k, .. } => Payload::Colored {
                graph: g,
                coloring: coloring.clone(),
                k: *k,
            },
            _ => return Err(Error::arg(format!("{} has no graph", self.kind))),
        };
        Ok(ProblemInstance {
            kind: self.kind,
            payload,
        })
    }

    /// Payload shape matches the kind and every index is in range.
    pub fn validate(&self) -> Result<()> {
        let shape_ok = match (&self.payload, self.kind) {
            (Payload::Graph { .. }, kind) => kind.is_plain_graph(),
            (Payload::Steiner { .. }, ProblemKind::SteinerTree)
            | (Payload::Colored { .. }, ProblemKind::MulticoloredClique)
            | (Payload::Cnf { .. }, ProblemKind::CnfSat)
            | (Payload::Cfa { .. }, ProblemKind::Cfa) => true,
            _ => false,
        };
        if !shape_ok {
            return Err(Error::arg(format!("payload does not match kind {}", self.kind)));
        }
        match &self.payload {
            Payload::Graph { graph, k } => {
                if self.kind == ProblemKind::TrianglePartition && *k != graph.n() {
                    return Err(Error::arg("triangle-partition requires k = |V|"));
                }
            }
            Payload::Steiner { graph, terminals, .. } => {
                if let Some(t) = terminals.iter().find(|&&t| t >= graph.n()) {
                    return Err(Error::arg(format!("terminal {t} out of range")));
                }
            }
            Payload::Colored { graph, coloring, k } => {
                if coloring.len() != graph.n() {
                    return Err(Error::arg(format!(
                        "coloring has {} entries for {} vertices",
                        coloring.len(),
                        graph.n()
                    )));
                }
                if let Some(c) = coloring.iter().find(|&&c| c >= *k) {
                    return Err(Error::arg(format!("color {c} not in 0..{k}")));
                }
            }
            Payload::Cnf { formula } => {
                let n = formula.num_vars();
                if formula.clauses().iter().flatten().any(|l| l.var >= n) {
                    return Err(Error::arg("literal variable out of range"));
                }
            }
            Payload::Cfa { instance } => instance.validate()?,
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: ProblemInstance =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum Witness {
    Vertices(Vec<usize>),
    Edges(Vec<(usize, usize)>),
    /// Color per vertex.
    Coloring(Vec<usize>),
    /// Vertex visiting order.
    Order(Vec<usize>),
    Triangles(Vec<[usize; 3]>),
    Assignment(Vec<bool>),
    CfaAssignment(Vec<(cfa::BuyerId, cfa::SellerId)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Answer {
    pub value: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Answer {
    fn yes(w: Witness) -> Self {
        Answer {
            value: true,
            witness: Some(w),
        }
    }

    fn no() -> Self {
        Answer {
            value: false,
            witness: None,
        }
    }

    fn from_option(w: Option<Witness>) -> Self {
        w.map_or_else(Answer::no, Answer::yes)
    }
}

/// Size guardrails for [`solve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_n: usize,
    pub max_vars: usize,
    pub max_buyers: usize,
}

/// Environment variable read by [`Limits::from_env`], e.g. `n=40,vars=28,buyers=14`.
pub const LIMITS_ENV: &str = "STRUCTKERN_GUARDRAILS";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 20,
            max_vars: 24,
            max_buyers: cfa::CFA_MAX_BUYERS,
        }
    }
}

impl Limits {
    /// The largest instances the solvers can represent at all. The CFA
    /// solver has no representation limit, so buyers are not capped.
    pub fn unbounded() -> Self {
        Limits {
            max_n: MAX_BITS,
            max_vars: 64,
            max_buyers: usize::MAX,
        }
    }

    /// Defaults overridden by `key=value` pairs (`n`, `vars`, `buyers`).
    pub fn parse_overrides(spec: &str) -> Result<Self> {
        let mut out = Limits::default();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::arg(format!("guardrail `{part}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::arg(format!("guardrail `{part}` has a non-integer value")))?;
            match key.trim() {
                "n" => out.max_n = value,
                "vars" => out.max_vars = value,
                "buyers" => out.max_buyers = value,
                other => return Err(Error::arg(format!("unknown guardrail `{other}`"))),
            }
        }
        Ok(out)
    }

    pub fn from_env() -> Result<Self> {
        match std::env::var(LIMITS_ENV) {
            Ok(spec) => Limits::parse_overrides(&spec),
            Err(_) => Ok(Limits::default()),
        }
    }
}

/// Exact answer for `inst`, with a witness on yes.
pub fn solve(inst: &ProblemInstance, limits: &Limits) -> Result<Answer> {
    inst.validate()?;
    match &inst.payload {
        Payload::Cnf { formula } => {
            if formula.num_vars() > limits.max_vars {
                return Err(Error::Resource(format!(
                    "formula has {} variables; guardrail is {}",
                    formula.num_vars(),
                    limits.max_vars
                )));
            }
            Ok(Answer::from_option(sat::solve(formula).map(Witness::Assignment)))
        }
        Payload::Cfa { instance } => {
            let a = cfa::solve_cfa(instance, Some(limits.max_buyers))?;
            Ok(Answer::from_option(a.map(Witness::CfaAssignment)))
        }
        Payload::Graph { graph, k } => {
            let bg = guard(graph, limits)?;
            Ok(Answer::from_option(solve_graph(inst.kind, &bg, *k)))
        }
        Payload::Steiner { graph, terminals, k } => {
            let bg = guard(graph, limits)?;
            let t = bits::from_slice(terminals);
            Ok(Answer::from_option(steiner::solve(&bg, t, *k).map(Witness::Edges)))
        }
        Payload::Colored { graph, coloring, k } => {
            let bg = guard(graph, limits)?;
            Ok(Answer::from_option(
                clique::multicolored(&bg, coloring, *k).map(|m| Witness::Vertices(bits::to_vec(m))),
            ))
        }
    }
}

fn guard(g: &Graph, limits: &Limits) -> Result<BitGraph> {
    if g.n() > limits.max_n {
        return Err(Error::Resource(format!(
            "graph has {} vertices; guardrail is {}",
            g.n(),
            limits.max_n
        )));
    }
    BitGraph::new(g)
}

fn vertices(m: bits::Mask) -> Witness {
    Witness::Vertices(bits::to_vec(m))
}

fn within(m: bits::Mask, k: usize) -> Option<Witness> {
    (m.count_ones() as usize <= k).then(|| vertices(m))
}

fn solve_graph(kind: ProblemKind, g: &BitGraph, k: usize) -> Option<Witness> {
    let all = g.all();
    match kind {
        ProblemKind::Clique => {
            let c = max_clique(g, all);
            (c.count_ones() as usize >= k).then(|| vertices(first_bits(c, k)))
        }
        ProblemKind::IndependentSet => {
            let is = all & !min_vertex_cover_mask(g, all);
            (is.count_ones() as usize >= k).then(|| vertices(first_bits(is, k)))
        }
        ProblemKind::VertexCover => within(min_vertex_cover_mask(g, all), k),
        ProblemKind::DominatingSet => within(domination::min_dominating(g), k),
        ProblemKind::IndependentDominatingSet => {
            within(domination::min_independent_dominating(g), k)
        }
        ProblemKind::ConnectedDominatingSet => {
            domination::connected_dominating(g, k).map(vertices)
        }
        ProblemKind::ConnectedVertexCover => cover::connected_vertex_cover(g, k).map(vertices),
        ProblemKind::FeedbackVertexSet => within(cover::min_transversal(g, false), k),
        ProblemKind::OddCycleTransversal => within(cover::min_transversal(g, true), k),
        ProblemKind::ChromaticNumber => coloring::color_with(g, k).map(Witness::Coloring),
        ProblemKind::HamiltonianCycle => hamilton::solve(g, true).map(Witness::Order),
        ProblemKind::HamiltonianPath => hamilton::solve(g, false).map(Witness::Order),
        ProblemKind::InducedMatching => {
            let m = packing::max_induced_matching(g);
            (m.len() >= k).then(|| Witness::Edges(m.into_iter().take(k).collect()))
        }
        ProblemKind::TrianglePartition => packing::triangle_partition(g).map(Witness::Triangles),
        ProblemKind::SteinerTree
        | ProblemKind::MulticoloredClique
        | ProblemKind::CnfSat
        | ProblemKind::Cfa => unreachable!("validated payload shape"),
    }
}

/// The `k` lowest members of `m`.
fn first_bits(m: bits::Mask, k: usize) -> bits::Mask {
    bits::iter(m).take(k).fold(0, |acc, v| acc | bits::bit(v))
}

/// Answer of `kind` on `(g, k)` under `limits`; shorthand for plain-graph kinds.
pub fn decide(kind: ProblemKind, g: &Graph, k: usize, limits: &Limits) -> Result<bool> {
    Ok(solve(&ProblemInstance::graph(kind, g.clone(), k)?, limits)?.value)
}

#[cfg(test)]
mod tests;
