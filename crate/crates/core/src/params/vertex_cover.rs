use serde::{Deserialize, Serialize};

use crate::bits::{self, BitGraph, Mask};
use crate::error::Result;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcCertificate {
    pub cover: Vec<usize>,
    pub size: usize,
}

impl VcCertificate {
    pub fn new(mut cover: Vec<usize>) -> Self {
        cover.sort_unstable();
        cover.dedup();
        let size = cover.len();
        VcCertificate { cover, size }
    }

    /// Every edge has an endpoint in the cover.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        is_vertex_cover(g, &self.cover)
    }
}

pub fn is_vertex_cover(g: &Graph, cover: &[usize]) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in cover {
        if v >= g.n() {
            return false;
        }
        inside[v] = true;
    }
    g.edges().all(|(u, v)| inside[u] || inside[v])
}

/// Minimum vertex cover by bounded search: branch on a maximum-degree vertex
/// `v` (take `v`, or take all of `N(v)`), with degree-0/1 reductions.
pub fn vertex_cover_exact(g: &Graph) -> Result<VcCertificate> {
    let bg = BitGraph::new(g)?;
    let cover = min_vertex_cover_mask(&bg, bg.all());
    Ok(VcCertificate::new(bits::to_vec(cover)))
}

/// Minimum vertex cover of `G[set]`, solved per connected component.
pub(crate) fn min_vertex_cover_mask(g: &BitGraph, set: Mask) -> Mask {
    let mut out = 0;
    for comp in g.components_in(set) {
        let mut best = comp;
        let mut best_size = comp.count_ones();
        branch(g, comp, 0, &mut best, &mut best_size);
        out |= best;
    }
    out
}

fn branch(g: &BitGraph, mut active: Mask, mut taken: Mask, best: &mut Mask, best_size: &mut u32) {
    // Reductions: isolated vertices are dropped, a pendant vertex's neighbour is taken.
    loop {
        let mut changed = false;
        for v in bits::iter(active) {
            if active & bits::bit(v) == 0 {
                continue;
            }
            let nb = g.adj[v] & active;
            match nb.count_ones() {
                0 => {
                    active &= !bits::bit(v);
                    changed = true;
                }
                1 => {
                    taken |= nb;
                    active &= !(nb | bits::bit(v));
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    if taken.count_ones() >= *best_size {
        return;
    }
    if active == 0 {
        *best = taken;
        *best_size = taken.count_ones();
        return;
    }
    // Lower bound from a greedy matching.
    let mut rest = active;
    let mut matching = 0;
    while rest != 0 {
        let v = bits::lowest(rest);
        rest &= !bits::bit(v);
        let nb = g.adj[v] & rest;
        if nb != 0 {
            rest &= !bits::bit(bits::lowest(nb));
            matching += 1;
        }
    }
    if taken.count_ones() + matching >= *best_size {
        return;
    }
    let v = bits::iter(active)
        .max_by_key(|&v| (g.adj[v] & active).count_ones())
        .unwrap();
    let nb = g.adj[v] & active;
    branch(g, active & !bits::bit(v), taken | bits::bit(v), best, best_size);
    branch(g, active & !(nb | bits::bit(v)), taken | nb, best, best_size);
}
