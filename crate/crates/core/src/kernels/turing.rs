use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Graph;
use crate::params::TcCertificate;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuringQuery {
    pub graph: Graph,
    /// Asked: does `graph` have a clique of at least this size?
    pub threshold: usize,
    pub answer: bool,
    /// Clique block the query stands for; `None` for the cover-only query.
    pub block: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuringTranscript {
    pub queries: Vec<TuringQuery>,
    pub answer: bool,
}

impl TuringTranscript {
    pub fn max_query_size(&self) -> usize {
        self.queries.iter().map(|q| q.graph.n()).max().unwrap_or(0)
    }
}

/// Decides Clique with queries of at most `|T| + 1` vertices.
///
/// A maximum clique either lies inside the cover `T`, or contains a whole
/// block `C` plus a clique of the cover vertices adjacent to `C`. One query
/// asks `G[T]` with threshold `k`; for each block, one query asks
/// `G[N_T(C) ∪ {v_C}]` with threshold `k - |C| + 1`, `v_C` its lowest vertex.
pub fn clique_tc_turing<F>(g: &Graph, x: &TcCertificate, k: usize, mut oracle: F) -> Result<TuringTranscript>
where
    F: FnMut(&Graph, usize) -> Result<bool>,
{
    x.validate(g)?;
    let mut queries = Vec::with_capacity(x.cliques.len() + 1);
    let (cover_graph, _) = g.induced_subgraph(&x.cover)?;
    let answer = oracle(&cover_graph, k)?;
    queries.push(TuringQuery {
        graph: cover_graph,
        threshold: k,
        answer,
        block: None,
    });
    for (i, block) in x.cliques.iter().enumerate() {
        let rep = block[0];
        let mut vertices: Vec<usize> = x
            .cover
            .iter()
            .copied()
            .filter(|&t| g.has_edge(t, rep))
            .collect();
        vertices.push(rep);
        let (h, _) = g.induced_subgraph(&vertices)?;
        let threshold = (k + 1).saturating_sub(block.len());
        let answer = oracle(&h, threshold)?;
        queries.push(TuringQuery {
            graph: h,
            threshold,
            answer,
            block: Some(i),
        });
    }
    let answer = queries.iter().any(|q| q.answer);
    Ok(TuringTranscript { queries, answer })
}
