//! Polynomial parametric transformations and refinement reductions.
//!
//! Every transformation returns the output instance together with the
//! structural certificate the construction promises (a vertex cover of the
//! output graph, for the constructions parameterized by vertex cover) and a
//! human-readable label per output vertex.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cnf::{CnfFormula, Lit};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracles::{check_witness, ProblemInstance, ProblemKind, Witness};
use crate::params::is_vertex_cover;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PptOutput {
    pub instance: ProblemInstance,
    /// Vertex cover of the output graph claimed by the construction.
    pub cover: Option<Vec<usize>>,
    /// Upper bound on the claimed cover size stated with the construction.
    pub cover_bound: Option<usize>,
    /// Refinement instances: the solution handed over with the instance. The
    /// question is whether a solution one better exists.
    pub given: Option<Witness>,
    /// One label per output vertex naming the gadget it belongs to.
    pub labels: Vec<String>,
}

impl PptOutput {
    /// Checks the claimed cover and its bound, and the given refinement solution.
    pub fn validate(&self) -> Result<()> {
        let g = self
            .instance
            .graph_ref()
            .ok_or_else(|| Error::Invariant("output is not a graph instance".into()))?;
        if self.labels.len() != g.n() {
            return Err(Error::Invariant("one label per vertex expected".into()));
        }
        if let Some(cover) = &self.cover {
            if !is_vertex_cover(g, cover) {
                return Err(Error::Invariant("claimed set is not a vertex cover".into()));
            }
            if let Some(bound) = self.cover_bound {
                if cover.len() > bound {
                    return Err(Error::Invariant(format!(
                        "claimed cover has {} vertices, bound is {bound}",
                        cover.len()
                    )));
                }
            }
        }
        if let Some(given) = &self.given {
            if !check_witness(&self.given_instance()?, given)? {
                return Err(Error::Invariant("given solution is invalid".into()));
            }
        }
        Ok(())
    }

    /// The instance the given solution solves: one step looser than the question.
    fn given_instance(&self) -> Result<ProblemInstance> {
        let g = self.instance.graph_ref().expect("checked").clone();
        let k = self.instance.k().unwrap_or(0);
        let k = match self.instance.kind {
            ProblemKind::InducedMatching => k - 1,
            _ => k + 1,
        };
        ProblemInstance::graph(self.instance.kind, g, k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    MccToInducedMatching,
    SatToChromatic,
    SatToSteiner,
    SatToCds,
    SatToIds,
    RefineVc,
    RefineFvs,
    RefineOct,
    RefineIm,
    HpToHc,
}

impl Reduction {
    pub const ALL: [Reduction; 10] = [
        Reduction::MccToInducedMatching,
        Reduction::SatToChromatic,
        Reduction::SatToSteiner,
        Reduction::SatToCds,
        Reduction::SatToIds,
        Reduction::RefineVc,
        Reduction::RefineFvs,
        Reduction::RefineOct,
        Reduction::RefineIm,
        Reduction::HpToHc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reduction::MccToInducedMatching => "mcc-to-im",
            Reduction::SatToChromatic => "sat-to-chromatic",
            Reduction::SatToSteiner => "sat-to-steiner",
            Reduction::SatToCds => "sat-to-cds",
            Reduction::SatToIds => "sat-to-ids",
            Reduction::RefineVc => "refine-vc",
            Reduction::RefineFvs => "refine-fvs",
            Reduction::RefineOct => "refine-oct",
            Reduction::RefineIm => "refine-im",
            Reduction::HpToHc => "hp-to-hc",
        }
    }

    /// Problem kind of the input instance.
    pub fn source(self) -> ProblemKind {
        match self {
            Reduction::MccToInducedMatching => ProblemKind::MulticoloredClique,
            Reduction::SatToChromatic | Reduction::SatToSteiner | Reduction::SatToCds | Reduction::SatToIds => {
                ProblemKind::CnfSat
            }
            Reduction::RefineVc => ProblemKind::VertexCover,
            Reduction::RefineFvs => ProblemKind::FeedbackVertexSet,
            Reduction::RefineOct => ProblemKind::OddCycleTransversal,
            Reduction::RefineIm => ProblemKind::InducedMatching,
            Reduction::HpToHc => ProblemKind::HamiltonianPath,
        }
    }

    /// Applies the reduction to an instance of [`Reduction::source`].
    pub fn apply(self, inst: &ProblemInstance) -> Result<PptOutput> {
        use crate::oracles::Payload;
        if inst.kind != self.source() {
            return Err(Error::arg(format!("{} expects a {} instance, got {}", self, self.source(), inst.kind)));
        }
        inst.validate()?;
        match (&inst.payload, self) {
            (Payload::Colored { graph, coloring, k }, Reduction::MccToInducedMatching) => {
                mcc_to_induced_matching(graph, coloring, *k)
            }
            (Payload::Cnf { formula }, Reduction::SatToChromatic) => Ok(sat_to_chromatic(formula)),
            (Payload::Cnf { formula }, Reduction::SatToSteiner) => Ok(sat_to_steiner(formula)),
            (Payload::Cnf { formula }, Reduction::SatToCds) => Ok(sat_to_cds(formula, CdsVariant::Connected)),
            (Payload::Cnf { formula }, Reduction::SatToIds) => Ok(sat_to_cds(formula, CdsVariant::Independent)),
            (Payload::Graph { graph, k }, Reduction::RefineVc) => refine_vc(graph, *k),
            (Payload::Graph { graph, k }, Reduction::RefineFvs) => refine_fvs(graph, *k),
            (Payload::Graph { graph, k }, Reduction::RefineOct) => refine_oct(graph, *k),
            (Payload::Graph { graph, k }, Reduction::RefineIm) => refine_im(graph, *k),
            (Payload::Graph { graph, .. }, Reduction::HpToHc) => Ok(hp_to_hc(graph)),
            _ => Err(Error::arg("payload does not match the reduction")),
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reduction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Reduction::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::arg(format!("unknown reduction `{s}`")))
    }
}

/// Graph under construction with a label per vertex.
struct Builder {
    g: Graph,
    labels: Vec<String>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            g: Graph::new(0),
            labels: Vec::new(),
        }
    }

    fn vertex(&mut self, label: String) -> usize {
        self.labels.push(label);
        self.g.add_vertex()
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.g.insert_unchecked(u, v);
    }
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Multicolored Clique to Induced Matching. Colors are `0..k`; the bit `ℓ`
/// of vertex `v` is bit `ℓ` of `v + 1`, for `ℓ < ⌈log₂ n⌉`.
pub fn mcc_to_induced_matching(g: &Graph, coloring: &[usize], k: usize) -> Result<PptOutput> {
    if coloring.len() != g.n() {
        return Err(Error::arg(format!(
            "coloring has {} entries for {} vertices",
            coloring.len(),
            g.n()
        )));
    }
    if let Some(v) = coloring.iter().position(|&c| c >= k) {
        return Err(Error::arg(format!("vertex {v} has color {} outside 0..{k}", coloring[v])));
    }
    if k < 2 {
        return Err(Error::arg("k must be at least 2"));
    }
    let bits = ceil_log2(g.n());
    let bit = |v: usize, l: usize| (v + 1) >> l & 1 == 1;
    let mut b = Builder::new();
    // Edge vertices, oriented as (endpoint, endpoint) with their colors.
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for &(u, v) in &edges {
        b.vertex(format!("e({u},{v})"));
    }
    // Edges of G whose endpoint colored i has the other endpoint colored j:
    // returns (edge vertex, the endpoint colored i).
    let between = |i: usize, j: usize| -> Vec<(usize, usize)> {
        edges
            .iter()
            .enumerate()
            .filter_map(|(e, &(u, v))| {
                if coloring[u] == i && coloring[v] == j {
                    Some((e, u))
                } else if coloring[v] == i && coloring[u] == j {
                    Some((e, v))
                } else {
                    None
                }
            })
            .collect()
    };
    let mut cover = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let f = b.vertex(format!("f({i},{j})"));
            cover.push(f);
            for (e, _) in between(i, j) {
                b.edge(f, e);
            }
        }
    }
    let mut triangles = 0;
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            for jj in (0..k).filter(|&jj| jj != i && jj != j) {
                for l in 0..bits {
                    let x = b.vertex(format!("x({i},{j},{jj},{l})"));
                    let y = b.vertex(format!("y({i},{j},{jj},{l})"));
                    let z = b.vertex(format!("z({i},{j},{jj},{l})"));
                    b.edge(x, y);
                    b.edge(y, z);
                    b.edge(x, z);
                    for (e, u) in between(i, j) {
                        if bit(u, l) {
                            b.edge(x, e);
                        }
                    }
                    for (e, u) in between(i, jj) {
                        if !bit(u, l) {
                            b.edge(y, e);
                        }
                    }
                    cover.extend([x, y, z]);
                    triangles += 1;
                }
            }
        }
    }
    let pairs = k * (k - 1) / 2;
    let target = pairs + triangles;
    Ok(PptOutput {
        instance: ProblemInstance::graph(ProblemKind::InducedMatching, b.g, target)?,
        cover: Some(cover),
        cover_bound: Some(pairs + 3 * k * (k - 1) * (k - 2) * bits),
        given: None,
        labels: b.labels,
    })
}

/// CNF-SAT to Chromatic Number with `n + 1` colors.
pub fn sat_to_chromatic(f: &CnfFormula) -> PptOutput {
    let n = f.num_vars();
    let mut b = Builder::new();
    let v: Vec<usize> = (0..n).map(|i| b.vertex(format!("v{i}"))).collect();
    for i in 0..n {
        for k in i + 1..n {
            b.edge(v[i], v[k]);
        }
    }
    let mut w = Vec::with_capacity(n);
    let mut wbar = Vec::with_capacity(n);
    for i in 0..n {
        let a = b.vertex(format!("w{i}"));
        let c = b.vertex(format!("~w{i}"));
        b.edge(a, c);
        for k in (0..n).filter(|&k| k != i) {
            b.edge(a, v[k]);
            b.edge(c, v[k]);
        }
        w.push(a);
        wbar.push(c);
    }
    let t: Vec<usize> = (0..f.num_clauses()).map(|j| b.vertex(format!("t{j}"))).collect();
    for (j, &tj) in t.iter().enumerate() {
        for i in 0..n {
            if !f.contains(j, Lit::pos(i)) {
                b.edge(tj, w[i]);
            }
            if !f.contains(j, Lit::neg(i)) {
                b.edge(tj, wbar[i]);
            }
        }
    }
    let u = b.vertex("u".into());
    for &x in v.iter().chain(&t) {
        b.edge(u, x);
    }
    let mut cover: Vec<usize> = v.iter().chain(&w).chain(&wbar).copied().collect();
    cover.push(u);
    PptOutput {
        instance: ProblemInstance::graph(ProblemKind::ChromaticNumber, b.g, n + 1).expect("plain graph kind"),
        cover: Some(cover),
        cover_bound: Some(3 * n + 1),
        given: None,
        labels: b.labels,
    }
}

/// Literal triangles `u_i, ~u_i, v_i` and clause vertices `c_j` wired to the
/// literals they contain. Returns `(u, ubar, v, c)`.
fn literal_gadget(b: &mut Builder, f: &CnfFormula) -> (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = f.num_vars();
    let c: Vec<usize> = (0..f.num_clauses()).map(|j| b.vertex(format!("c{j}"))).collect();
    let (mut u, mut ubar, mut v) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..n {
        let a = b.vertex(format!("u{i}"));
        let abar = b.vertex(format!("~u{i}"));
        let x = b.vertex(format!("v{i}"));
        b.edge(a, abar);
        b.edge(a, x);
        b.edge(abar, x);
        u.push(a);
        ubar.push(abar);
        v.push(x);
    }
    for (j, &cj) in c.iter().enumerate() {
        for i in 0..n {
            if f.contains(j, Lit::pos(i)) {
                b.edge(cj, u[i]);
            }
            if f.contains(j, Lit::neg(i)) {
                b.edge(cj, ubar[i]);
            }
        }
    }
    (u, ubar, v, c)
}

/// CNF-SAT to Steiner Tree with edge budget `2n + m`.
pub fn sat_to_steiner(f: &CnfFormula) -> PptOutput {
    let mut b = Builder::new();
    let (u, ubar, v, c) = literal_gadget(&mut b, f);
    let apex = b.vertex("u".into());
    for &x in u.iter().chain(&ubar) {
        b.edge(apex, x);
    }
    let mut terminals: Vec<usize> = v.iter().chain(&c).copied().collect();
    terminals.push(apex);
    terminals.sort_unstable();
    let n = f.num_vars();
    let cover: Vec<usize> = u.iter().chain(&ubar).copied().collect();
    PptOutput {
        instance: ProblemInstance::steiner(b.g, terminals, 2 * n + f.num_clauses()).expect("terminals in range"),
        cover: Some(cover),
        cover_bound: Some(2 * n),
        given: None,
        labels: b.labels,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CdsVariant {
    Connected,
    Independent,
}

/// CNF-SAT to Connected Dominating Set (budget `n + 1`) or, without the
/// apex `p` and its pendant `q`, to Independent Dominating Set (budget `n`).
pub fn sat_to_cds(f: &CnfFormula, variant: CdsVariant) -> PptOutput {
    let mut b = Builder::new();
    let (u, ubar, _, _) = literal_gadget(&mut b, f);
    let n = f.num_vars();
    let mut cover: Vec<usize> = u.iter().chain(&ubar).copied().collect();
    let (kind, budget, bound) = match variant {
        CdsVariant::Connected => {
            let p = b.vertex("p".into());
            let q = b.vertex("q".into());
            for &x in u.iter().chain(&ubar) {
                b.edge(p, x);
            }
            b.edge(p, q);
            cover.push(p);
            (ProblemKind::ConnectedDominatingSet, n + 1, 2 * n + 1)
        }
        CdsVariant::Independent => (ProblemKind::IndependentDominatingSet, n, 2 * n),
    };
    PptOutput {
        instance: ProblemInstance::graph(kind, b.g, budget).expect("plain graph kind"),
        cover: Some(cover),
        cover_bound: Some(bound),
        given: None,
        labels: b.labels,
    }
}

fn check_refinement_k(g: &Graph, k: usize) -> Result<()> {
    if k + 1 >= g.n() {
        return Err(Error::arg(format!(
            "k = {k} is at least n - 1 = {}; the answer is trivially yes",
            g.n().saturating_sub(1)
        )));
    }
    Ok(())
}

fn copy_graph(b: &mut Builder, g: &Graph) {
    for v in 0..g.n() {
        b.vertex(format!("v{v}"));
    }
    for (u, v) in g.edges() {
        b.edge(u, v);
    }
}

/// Vertex Cover to Vertex Cover Refinement: `n - 1 - k` fresh vertices see
/// all of `V(G)`, which is the given cover.
pub fn refine_vc(g: &Graph, k: usize) -> Result<PptOutput> {
    check_refinement_k(g, k)?;
    let n = g.n();
    let mut b = Builder::new();
    copy_graph(&mut b, g);
    for i in 0..n - 1 - k {
        let x = b.vertex(format!("z{i}"));
        for v in 0..n {
            b.edge(x, v);
        }
    }
    Ok(PptOutput {
        instance: ProblemInstance::graph(ProblemKind::VertexCover, b.g, n - 1)?,
        cover: None,
        cover_bound: None,
        given: Some(Witness::Vertices((0..n).collect())),
        labels: b.labels,
    })
}

/// The gadget shared by the FVS and OCT refinements: `n - 1 - k` vertices
/// `u_i` see all of `V(G)`, and every edge `u_i v_j` gets a private common
/// neighbour `w_{i,j}`.
fn cycle_refinement(g: &Graph, k: usize, kind: ProblemKind) -> Result<PptOutput> {
    check_refinement_k(g, k)?;
    let n = g.n();
    let mut b = Builder::new();
    copy_graph(&mut b, g);
    for i in 0..n - 1 - k {
        let u = b.vertex(format!("u{i}"));
        for v in 0..n {
            b.edge(u, v);
            let w = b.vertex(format!("w({i},{v})"));
            b.edge(w, u);
            b.edge(w, v);
        }
    }
    Ok(PptOutput {
        instance: ProblemInstance::graph(kind, b.g, n - 1)?,
        cover: None,
        cover_bound: None,
        given: Some(Witness::Vertices((0..n).collect())),
        labels: b.labels,
    })
}

pub fn refine_fvs(g: &Graph, k: usize) -> Result<PptOutput> {
    cycle_refinement(g, k, ProblemKind::FeedbackVertexSet)
}

pub fn refine_oct(g: &Graph, k: usize) -> Result<PptOutput> {
    cycle_refinement(g, k, ProblemKind::OddCycleTransversal)
}

/// Induced Matching to Induced Matching Refinement; the given matching
/// `{u_i w_i}` has size `n` and the question asks for `n + 1`.
pub fn refine_im(g: &Graph, k: usize) -> Result<PptOutput> {
    let n = g.n();
    if k < 2 || 2 * k > n {
        return Err(Error::arg(format!("k = {k} must satisfy 2 <= k <= n/2 with n = {n}")));
    }
    let mut b = Builder::new();
    copy_graph(&mut b, g);
    let u: Vec<usize> = (0..n).map(|i| b.vertex(format!("u{i}"))).collect();
    let w: Vec<usize> = (0..n).map(|i| b.vertex(format!("w{i}"))).collect();
    let x: Vec<usize> = (0..=n - k).map(|i| b.vertex(format!("x{i}"))).collect();
    for i in 0..n {
        for v in 0..n {
            b.edge(u[i], v);
        }
        b.edge(u[i], w[i]);
    }
    for i in 0..n - k {
        b.edge(x[i], w[i]);
    }
    for &wi in &w[n - k..] {
        b.edge(x[n - k], wi);
    }
    let given = u.iter().zip(&w).map(|(&a, &c)| (a, c)).collect();
    Ok(PptOutput {
        instance: ProblemInstance::graph(ProblemKind::InducedMatching, b.g, n + 1)?,
        cover: None,
        cover_bound: None,
        given: Some(Witness::Edges(given)),
        labels: b.labels,
    })
}

/// Hamiltonian Path to Hamiltonian Cycle by a universal vertex.
pub fn hp_to_hc(g: &Graph) -> PptOutput {
    let (h, apex) = g.with_universal_vertex();
    let mut labels: Vec<String> = (0..g.n()).map(|v| format!("v{v}")).collect();
    labels.push("apex".into());
    debug_assert_eq!(apex, g.n());
    PptOutput {
        instance: ProblemInstance::graph(ProblemKind::HamiltonianCycle, h, 0).expect("plain graph kind"),
        cover: None,
        cover_bound: None,
        given: None,
        labels,
    }
}

#[cfg(test)]
mod tests;
