use serde::{Deserialize, Serialize};

use super::nt::lp_split;
use super::Outcome;
use crate::error::Result;
use crate::graph::Graph;
use crate::params::TcCertificate;

/// A reduced graph instance. `map` sends output ids to input ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcKernel {
    pub graph: Graph,
    pub k: usize,
    pub map: Vec<usize>,
}

/// Keeps the `keep` lowest ids of every block, charging the deleted vertices
/// to the budget.
fn collapse(g: &Graph, x: &TcCertificate, k: usize, keep: usize) -> Result<Outcome<TcKernel>> {
    x.validate(g)?;
    let mut removed = Vec::new();
    for block in &x.cliques {
        if block.len() > keep {
            removed.extend_from_slice(&block[keep..]);
        }
    }
    if removed.len() > k {
        return Ok(Outcome::no(format!(
            "collapsing blocks charges {} vertices to a budget of {k}",
            removed.len()
        )));
    }
    let (graph, map) = g.remove_vertices(&removed)?;
    Ok(Outcome::Reduced(TcKernel {
        graph,
        k: k - removed.len(),
        map,
    }))
}

/// Vertex Cover: every block keeps one vertex (the others are in any cover),
/// then the Nemhauser–Trotter reduction leaves at most `2k'` vertices.
pub fn vc_tc_kernel(g: &Graph, x: &TcCertificate, k: usize) -> Result<Outcome<TcKernel>> {
    let collapsed = match collapse(g, x, k, 1)? {
        Outcome::Reduced(c) => c,
        no => return Ok(no),
    };
    let split = lp_split(&collapsed.graph);
    if split.one.len() > collapsed.k {
        return Ok(Outcome::no("LP-forced vertices exceed the budget"));
    }
    let k2 = collapsed.k - split.one.len();
    if split.half.len() > 2 * k2 {
        return Ok(Outcome::no(format!(
            "LP lower bound {}/2 exceeds the budget {}",
            split.twice_lp, collapsed.k
        )));
    }
    let (graph, local) = collapsed.graph.induced_subgraph(&split.half)?;
    let map = local.iter().map(|&v| collapsed.map[v]).collect();
    Ok(Outcome::Reduced(TcKernel { graph, k: k2, map }))
}

/// Odd Cycle Transversal: every block keeps two vertices; all but two
/// vertices of a clique lie in any transversal.
pub fn oct_tc_collapse(g: &Graph, x: &TcCertificate, k: usize) -> Result<Outcome<TcKernel>> {
    collapse(g, x, k, 2)
}

/// Independent Set through `α(G) = n - vc(G)`: the Vertex Cover kernel of
/// `(G, n-k)`, returned as an Independent Set instance on the kernel graph.
pub fn is_tc_kernel(g: &Graph, x: &TcCertificate, k: usize) -> Result<Outcome<TcKernel>> {
    if k > g.n() {
        x.validate(g)?;
        return Ok(Outcome::no(format!("k = {k} exceeds the {} vertices", g.n())));
    }
    Ok(match vc_tc_kernel(g, x, g.n() - k)? {
        Outcome::Reduced(kern) => {
            let k_is = kern.graph.n() - kern.k.min(kern.graph.n());
            Outcome::Reduced(TcKernel { k: k_is, ..kern })
        }
        no => no,
    })
}
