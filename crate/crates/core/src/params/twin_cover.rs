use serde::{Deserialize, Serialize};

use crate::bits::{self, BitGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::vertex_cover::min_vertex_cover_mask;

/// Default vertex limit for [`twin_cover_exact`].
pub const TWIN_COVER_MAX_N: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcCertificate {
    pub cover: Vec<usize>,
    /// Clique blocks of `G - cover`, each sorted, ordered by smallest member.
    pub cliques: Vec<Vec<usize>>,
}

impl TcCertificate {
    pub fn size(&self) -> usize {
        self.cover.len()
    }

    /// Builds the certificate for `cover`, deriving the blocks from `G - cover`.
    pub fn from_cover(g: &Graph, cover: &[usize]) -> Result<Self> {
        let mut cover = cover.to_vec();
        cover.sort_unstable();
        cover.dedup();
        let (rest, map) = g.remove_vertices(&cover)?;
        let cliques = rest
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|v| map[v]).collect())
            .collect();
        let cert = TcCertificate { cover, cliques };
        cert.validate(g)?;
        Ok(cert)
    }

    /// Checks that `G - cover` is a cluster whose blocks are exactly `cliques`
    /// and that vertices of one block see the same cover vertices.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let mut owner = vec![usize::MAX; n];
        for &v in &self.cover {
            if v >= n || owner[v] != usize::MAX {
                return Err(Error::arg(format!("cover vertex {v} invalid or repeated")));
            }
            owner[v] = usize::MAX - 1;
        }
        for (i, block) in self.cliques.iter().enumerate() {
            for &v in block {
                if v >= n || owner[v] != usize::MAX {
                    return Err(Error::arg(format!("block vertex {v} invalid or repeated")));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::arg(format!("vertex {v} neither in cover nor in a block")));
        }
        let in_cover = |v: usize| owner[v] == usize::MAX - 1;
        for (i, block) in self.cliques.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::arg("empty clique block"));
            }
            if !g.is_clique(block) {
                return Err(Error::arg(format!("block {i} is not a clique")));
            }
            let profile = |v: usize| -> Vec<usize> {
                g.neighbors(v).iter().copied().filter(|&w| in_cover(w)).collect()
            };
            let first = profile(block[0]);
            for &v in block {
                if g.neighbors(v).iter().any(|&w| !in_cover(w) && owner[w] != i) {
                    return Err(Error::arg(format!("block {i} has an edge to another block")));
                }
                if profile(v) != first {
                    return Err(Error::arg(format!(
                        "vertices {} and {v} of block {i} see different cover vertices",
                        block[0]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// True twins: `N[u] = N[v]`.
pub fn are_true_twins(g: &Graph, u: usize, v: usize) -> bool {
    let strip = |a: usize, b: usize| g.neighbors(a).iter().copied().filter(move |&w| w != b);
    g.has_edge(u, v) && strip(u, v).eq(strip(v, u))
}

/// Edges whose endpoints are not true twins. Any twin-cover must contain an
/// endpoint of each; a set hitting all of them is a twin-cover.
pub fn non_twin_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().filter(|&(u, v)| !are_true_twins(g, u, v)).collect()
}

/// Minimum twin-cover for graphs of at most [`TWIN_COVER_MAX_N`] vertices.
pub fn twin_cover_exact(g: &Graph) -> Result<TcCertificate> {
    if g.n() > TWIN_COVER_MAX_N {
        return Err(Error::Resource(format!(
            "twin-cover exact search limited to {TWIN_COVER_MAX_N} vertices (got {}); use the override",
            g.n()
        )));
    }
    twin_cover_exact_unchecked(g)
}

/// Same as [`twin_cover_exact`] without the size guardrail (still limited by the
/// bitset width).
pub fn twin_cover_exact_unchecked(g: &Graph) -> Result<TcCertificate> {
    let h = Graph::from_edges(g.n(), non_twin_edges(g))?;
    let bh = BitGraph::new(&h)?;
    let cover = bits::to_vec(min_vertex_cover_mask(&bh, bh.all()));
    TcCertificate::from_cover(g, &cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::vertex_cover::vertex_cover_exact;

    fn brute_force_tc(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&m| {
                let s: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
                TcCertificate::from_cover(g, &s).is_ok()
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn complete_graphs_have_zero_twin_cover() {
        for n in 1..=8 {
            let c = twin_cover_exact(&Graph::complete(n)).unwrap();
            assert_eq!(c.size(), 0);
            assert_eq!(c.cliques.len(), 1);
        }
    }

    #[test]
    fn path_p4() {
        let p4 = Graph::path(4);
        let tc = twin_cover_exact(&p4).unwrap().size();
        assert!(tc >= 1);
        assert_eq!(tc, brute_force_tc(&p4));
        assert!(tc <= vertex_cover_exact(&p4).unwrap().size);
    }

    #[test]
    fn cluster_generator_bound() {
        let mut r = crate::generate::rng(7);
        let g = crate::generate::cluster(&[3, 3], 1, &mut r);
        assert!(twin_cover_exact(&g).unwrap().size() <= 1);
    }

    #[test]
    fn matches_brute_force() {
        let mut r = crate::generate::rng(5);
        for trial in 0..80 {
            let n = 1 + trial % 10;
            let g = crate::generate::gnp(n, 0.5, &mut r).unwrap();
            let cert = twin_cover_exact(&g).unwrap();
            cert.validate(&g).unwrap();
            assert_eq!(cert.size(), brute_force_tc(&g));
        }
    }

    #[test]
    fn validate_rejects_non_twin_block() {
        // P3 with empty cover is not a cluster.
        let g = Graph::path(3);
        let bad = TcCertificate {
            cover: vec![],
            cliques: vec![vec![0, 1, 2]],
        };
        assert!(bad.validate(&g).is_err());
        // Cover {0}: block {1,2} has different cover-neighbourhoods.
        assert!(TcCertificate::from_cover(&g, &[0]).is_err());
        assert!(TcCertificate::from_cover(&g, &[1]).is_ok());
    }

    #[test]
    fn guardrail() {
        assert!(matches!(
            twin_cover_exact(&Graph::new(65)),
            Err(Error::Resource(_))
        ));
        assert!(twin_cover_exact_unchecked(&Graph::new(65)).is_ok());
    }
}
