//! And/or-cross-compositions: many instances of one equivalence class
//! combined into a single instance whose answer is the AND or OR of theirs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::generate::gnp;
use crate::oracles::{check_witness, solve, Limits, ProblemInstance, ProblemKind, Witness};
use crate::params::{modular_decomposition, modular_width};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Semantics {
    And,
    Or,
}

impl Semantics {
    pub fn combine(self, answers: &[bool]) -> bool {
        match self {
            Semantics::And => answers.iter().all(|&a| a),
            Semantics::Or => answers.iter().any(|&a| a),
        }
    }
}

/// The compositions, named after their target problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Composition {
    Clique,
    ChromaticNumber,
    HamiltonianPath,
    /// From Vertex Cover Refinement.
    ConnectedVertexCover,
    /// From Feedback Vertex Set Refinement.
    FeedbackVertexSet,
    /// From Odd Cycle Transversal Refinement.
    OddCycleTransversal,
    /// From Induced Matching Refinement.
    InducedMatching,
    /// From Dominating Set Refinement.
    DominatingSet,
}

impl Composition {
    pub const ALL: [Composition; 8] = [
        Composition::Clique,
        Composition::ChromaticNumber,
        Composition::HamiltonianPath,
        Composition::ConnectedVertexCover,
        Composition::FeedbackVertexSet,
        Composition::OddCycleTransversal,
        Composition::InducedMatching,
        Composition::DominatingSet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Composition::Clique => "clique",
            Composition::ChromaticNumber => "chromatic-number",
            Composition::HamiltonianPath => "hamiltonian-path",
            Composition::ConnectedVertexCover => "connected-vertex-cover",
            Composition::FeedbackVertexSet => "feedback-vertex-set",
            Composition::OddCycleTransversal => "odd-cycle-transversal",
            Composition::InducedMatching => "induced-matching",
            Composition::DominatingSet => "dominating-set",
        }
    }

    pub fn semantics(self) -> Semantics {
        match self {
            Composition::ChromaticNumber | Composition::HamiltonianPath => Semantics::And,
            _ => Semantics::Or,
        }
    }

    pub fn target(self) -> ProblemKind {
        match self {
            Composition::Clique => ProblemKind::Clique,
            Composition::ChromaticNumber => ProblemKind::ChromaticNumber,
            Composition::HamiltonianPath => ProblemKind::HamiltonianPath,
            Composition::ConnectedVertexCover => ProblemKind::ConnectedVertexCover,
            Composition::FeedbackVertexSet => ProblemKind::FeedbackVertexSet,
            Composition::OddCycleTransversal => ProblemKind::OddCycleTransversal,
            Composition::InducedMatching => ProblemKind::InducedMatching,
            Composition::DominatingSet => ProblemKind::DominatingSet,
        }
    }

    /// The problem whose solutions refinement inputs carry.
    fn refined(self) -> Option<ProblemKind> {
        match self {
            Composition::ConnectedVertexCover => Some(ProblemKind::VertexCover),
            Composition::FeedbackVertexSet => Some(ProblemKind::FeedbackVertexSet),
            Composition::OddCycleTransversal => Some(ProblemKind::OddCycleTransversal),
            Composition::InducedMatching => Some(ProblemKind::InducedMatching),
            Composition::DominatingSet => Some(ProblemKind::DominatingSet),
            _ => None,
        }
    }

    /// Disjoint unions keep the modular-width; the others are bounded by `n`.
    fn union_like(self) -> bool {
        !matches!(self, Composition::HamiltonianPath | Composition::ConnectedVertexCover)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Composition::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::arg(format!("unknown composition `{s}`")))
    }
}

/// One input of a composition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ComposeInput {
    /// Clique and Chromatic Number: a graph and its threshold.
    Threshold { graph: Graph, k: usize },
    /// Hamiltonian Path.
    Plain { graph: Graph },
    /// A refinement instance: a graph with a known solution. The question is
    /// whether a solution one better exists.
    Refinement { graph: Graph, solution: Witness },
}

impl ComposeInput {
    pub fn graph(&self) -> &Graph {
        match self {
            ComposeInput::Threshold { graph, .. }
            | ComposeInput::Plain { graph }
            | ComposeInput::Refinement { graph, .. } => graph,
        }
    }

    fn solution_size(&self) -> Option<usize> {
        match self {
            ComposeInput::Refinement { solution, .. } => witness_len(solution),
            _ => None,
        }
    }

    /// The decision instance whose answer this input stands for.
    pub fn question(&self, comp: Composition) -> Result<ProblemInstance> {
        let g = self.graph().clone();
        match (self, comp.refined()) {
            (ComposeInput::Threshold { k, .. }, None) if comp != Composition::HamiltonianPath => {
                ProblemInstance::graph(comp.target(), g, *k)
            }
            (ComposeInput::Plain { .. }, None) if comp == Composition::HamiltonianPath => {
                ProblemInstance::graph(ProblemKind::HamiltonianPath, g, 0)
            }
            (ComposeInput::Refinement { solution, .. }, Some(base)) => {
                let s = witness_len(solution).ok_or_else(|| Error::arg("solution must be a vertex or edge set"))?;
                let k = if base == ProblemKind::InducedMatching {
                    s + 1
                } else {
                    s.checked_sub(1)
                        .ok_or_else(|| Error::arg("empty solution cannot be refined"))?
                };
                ProblemInstance::graph(base, g, k)
            }
            _ => Err(Error::arg(format!("input shape does not fit the {comp} composition"))),
        }
    }

    /// Shape check plus, for refinement inputs, validity of the solution.
    pub fn validate(&self, comp: Composition) -> Result<()> {
        self.question(comp)?;
        if let (ComposeInput::Refinement { graph, solution }, Some(base)) = (self, comp.refined()) {
            let given = ProblemInstance::graph(base, graph.clone(), witness_len(solution).unwrap_or(0))?;
            if !check_witness(&given, solution)? {
                return Err(Error::arg("the given solution is not valid for its graph"));
            }
        }
        Ok(())
    }
}

fn witness_len(w: &Witness) -> Option<usize> {
    match w {
        Witness::Vertices(v) => Some(v.len()),
        Witness::Edges(e) => Some(e.len()),
        _ => None,
    }
}

/// Statistics that must agree for instances to be composed together.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EquivalenceKey {
    pub n: usize,
    /// Threshold, or the size of the given solution for refinement inputs.
    pub k: Option<usize>,
    pub mw: Option<usize>,
}

pub fn modular_width_of(g: &Graph) -> usize {
    modular_width(&modular_decomposition(g))
}

pub fn equivalence_key(comp: Composition, input: &ComposeInput) -> EquivalenceKey {
    let g = input.graph();
    let k = match input {
        ComposeInput::Threshold { k, .. } => Some(*k),
        _ => input.solution_size(),
    };
    let mw = match comp {
        Composition::Clique | Composition::ChromaticNumber => None,
        _ => Some(modular_width_of(g)),
    };
    EquivalenceKey { n: g.n(), k, mw }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Buckets {
    /// Input indices per class, classes ordered by key.
    pub classes: Vec<(EquivalenceKey, Vec<usize>)>,
    /// Inputs that are not valid instances of the source problem.
    pub bad: Vec<usize>,
}

pub fn bucket_by_relation(comp: Composition, inputs: &[ComposeInput]) -> Buckets {
    let mut classes: BTreeMap<EquivalenceKey, Vec<usize>> = BTreeMap::new();
    let mut bad = Vec::new();
    for (i, input) in inputs.iter().enumerate() {
        if input.validate(comp).is_err() {
            bad.push(i);
        } else {
            classes.entry(equivalence_key(comp, input)).or_default().push(i);
        }
    }
    Buckets {
        classes: classes.into_iter().collect(),
        bad,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionOutput {
    pub composition: Composition,
    pub instance: ProblemInstance,
    pub semantics: Semantics,
    pub key: EquivalenceKey,
    pub t: usize,
    /// Bound on the output modular-width claimed by the construction.
    pub mw_bound: usize,
    /// `(input, vertex)` per output vertex; `None` for connectors and apexes.
    pub provenance: Vec<Option<(usize, usize)>>,
}

impl CompositionOutput {
    /// Edge budget of the construction: `t·n² + t·n·(t-1)`.
    pub fn edge_bound(&self) -> usize {
        let (t, n) = (self.t, self.key.n);
        t * n * n + t * n * (t - 1)
    }
}

/// Combines instances sharing one equivalence key.
pub fn compose(comp: Composition, inputs: &[ComposeInput]) -> Result<CompositionOutput> {
    let first = inputs.first().ok_or_else(|| Error::arg("at least one instance is required"))?;
    for (i, input) in inputs.iter().enumerate() {
        input
            .validate(comp)
            .map_err(|e| Error::arg(format!("instance {i}: {e}")))?;
    }
    let key = equivalence_key(comp, first);
    if let Some(i) = inputs.iter().position(|x| equivalence_key(comp, x) != key) {
        return Err(Error::arg(format!(
            "instance {i} has key {:?}, instance 0 has {key:?}",
            equivalence_key(comp, &inputs[i])
        )));
    }
    let t = inputs.len();
    let parts: Vec<Graph> = inputs.iter().map(|x| x.graph().clone()).collect();
    let (mut g, offsets) = Graph::disjoint_union(&parts)?;
    let mut provenance: Vec<Option<(usize, usize)>> = Vec::with_capacity(g.n());
    for (i, part) in parts.iter().enumerate() {
        provenance.extend((0..part.n()).map(|v| Some((i, v))));
    }
    debug_assert!(offsets.len() >= t);
    let union_n = g.n();
    let k = key.k.unwrap_or(0);
    let threshold = match comp {
        Composition::Clique | Composition::ChromaticNumber => k,
        Composition::HamiltonianPath => {
            for _ in 1..t {
                let x = g.add_vertex();
                provenance.push(None);
                for v in 0..union_n {
                    g.insert_unchecked(x, v);
                }
            }
            0
        }
        Composition::ConnectedVertexCover => {
            let apex = g.add_vertex();
            provenance.push(None);
            for v in 0..union_n {
                g.insert_unchecked(apex, v);
            }
            k * t
        }
        Composition::FeedbackVertexSet | Composition::OddCycleTransversal | Composition::DominatingSet => {
            (k * t)
                .checked_sub(1)
                .ok_or_else(|| Error::arg("empty solutions cannot be refined"))?
        }
        Composition::InducedMatching => k * t + 1,
    };
    let mw_bound = if comp.union_like() {
        parts.iter().map(modular_width_of).max().unwrap_or(0)
    } else {
        key.n
    };
    Ok(CompositionOutput {
        composition: comp,
        instance: ProblemInstance::graph(comp.target(), g, threshold)?,
        semantics: comp.semantics(),
        key,
        t,
        mw_bound,
        provenance,
    })
}

/// Greedy dominating set: repeatedly take the vertex dominating the most
/// undominated vertices (lowest id on ties).
pub fn greedy_dominating_set(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut dominated = vec![false; n];
    let mut left = n;
    let mut out = Vec::new();
    while left > 0 {
        let gain = |v: usize| {
            usize::from(!dominated[v]) + g.neighbors(v).iter().filter(|&&u| !dominated[u]).count()
        };
        let best = (0..n).max_by_key(|&v| (gain(v), std::cmp::Reverse(v))).expect("n > 0");
        out.push(best);
        for u in std::iter::once(best).chain(g.neighbors(best).iter().copied()) {
            if !dominated[u] {
                dominated[u] = true;
                left -= 1;
            }
        }
    }
    out.sort_unstable();
    out
}

/// Random inputs of `n` vertices that share one equivalence key.
///
/// Refinement inputs carry an optimal solution padded (or, for induced
/// matchings, truncated) to a common size, so the refinement question has
/// both answers across samples.
pub fn sample_inputs<R: Rng>(
    comp: Composition,
    t: usize,
    n: usize,
    rng: &mut R,
    limits: &Limits,
) -> Result<Vec<ComposeInput>> {
    if t == 0 {
        return Err(Error::arg("t must be at least 1"));
    }
    let graphs = sample_graphs(comp, t, n, rng)?;
    Ok(match comp {
        Composition::Clique | Composition::ChromaticNumber => {
            let kind = comp.target();
            // Threshold near the first graph's optimum so both answers occur.
            let mut k = 1;
            while k <= n && ProblemInstance::graph(kind, graphs[0].clone(), k)
                .and_then(|i| solve(&i, limits))?
                .value
                == (kind == ProblemKind::Clique)
            {
                k += 1;
            }
            let k = if kind == ProblemKind::Clique { k - 1 } else { k };
            let k = (k + rng.gen_range(0..=1)).clamp(1, n.max(1));
            graphs.into_iter().map(|graph| ComposeInput::Threshold { graph, k }).collect()
        }
        Composition::HamiltonianPath => graphs.into_iter().map(|graph| ComposeInput::Plain { graph }).collect(),
        Composition::InducedMatching => {
            let mut best = Vec::with_capacity(t);
            for g in &graphs {
                best.push(max_induced_matching(g, limits)?);
            }
            let s = best.iter().map(Vec::len).min().unwrap_or(0).saturating_sub(rng.gen_range(0..=1));
            graphs
                .into_iter()
                .zip(best)
                .map(|(graph, m)| ComposeInput::Refinement {
                    graph,
                    solution: Witness::Edges(m.into_iter().take(s).collect()),
                })
                .collect()
        }
        _ => {
            let base = comp.refined().expect("refinement composition");
            let mut best = Vec::with_capacity(t);
            for g in &graphs {
                // At k = n the minimization oracles return an optimal set.
                match solve(&ProblemInstance::graph(base, g.clone(), g.n())?, limits)?.witness {
                    Some(Witness::Vertices(v)) => best.push(v),
                    _ => return Err(Error::Invariant(format!("no optimal {base} witness"))),
                }
            }
            let s = (best.iter().map(Vec::len).max().unwrap_or(0) + rng.gen_range(0..=1)).clamp(1, n);
            graphs
                .into_iter()
                .zip(best)
                .map(|(graph, mut v)| {
                    let mut extra = (0..graph.n()).filter(|u| !v.contains(u)).collect::<Vec<_>>().into_iter();
                    while v.len() < s {
                        v.push(extra.next().expect("s <= n"));
                    }
                    v.sort_unstable();
                    ComposeInput::Refinement {
                        graph,
                        solution: Witness::Vertices(v),
                    }
                })
                .collect()
        }
    })
}

fn max_induced_matching(g: &Graph, limits: &Limits) -> Result<Vec<(usize, usize)>> {
    for k in (1..=g.n() / 2).rev() {
        if let Some(Witness::Edges(e)) = solve(&ProblemInstance::graph(ProblemKind::InducedMatching, g.clone(), k)?, limits)?.witness {
            return Ok(e);
        }
    }
    Ok(Vec::new())
}

/// `t` random graphs on `n` vertices, with equal modular-width when the
/// relation asks for it.
fn sample_graphs<R: Rng>(comp: Composition, t: usize, n: usize, rng: &mut R) -> Result<Vec<Graph>> {
    let needs_mw = !matches!(comp, Composition::Clique | Composition::ChromaticNumber);
    loop {
        let p = rng.gen_range(0.2..0.8);
        let first = gnp(n, p, rng)?;
        if !needs_mw {
            let mut out = vec![first];
            for _ in 1..t {
                out.push(gnp(n, rng.gen_range(0.2..0.8), rng)?);
            }
            return Ok(out);
        }
        let mw = modular_width_of(&first);
        let mut out = vec![first];
        for _ in 0..200 {
            if out.len() == t {
                break;
            }
            let g = gnp(n, p, rng)?;
            if modular_width_of(&g) == mw {
                out.push(g);
            }
        }
        if out.len() == t {
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests;
