//! Nemhauser–Trotter reduction for Vertex Cover: a half-integral optimum of
//! the LP relaxation read off a minimum vertex cover of the bipartite double
//! cover (König), which in turn comes from a maximum matching.

use std::collections::VecDeque;

use crate::graph::Graph;

/// LP optimum split by value: `one` joins every optimal cover, `zero` joins
/// none, `half` is the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSplit {
    pub zero: Vec<usize>,
    pub half: Vec<usize>,
    pub one: Vec<usize>,
    /// Twice the LP value.
    pub twice_lp: usize,
}

pub fn lp_split(g: &Graph) -> LpSplit {
    let n = g.n();
    let (match_l, match_r) = max_matching(g);
    // König: left vertices reachable from free left vertices by alternating paths.
    let mut reach_l = vec![false; n];
    let mut reach_r = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&u| match_l[u].is_none()).collect();
    for &u in &queue {
        reach_l[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !reach_r[v] {
                reach_r[v] = true;
                if let Some(w) = match_r[v] {
                    if !reach_l[w] {
                        reach_l[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    // Cover = (L \ Z) ∪ (R ∩ Z); x_v = (|{L_v, R_v} ∩ cover|) / 2.
    let mut split = LpSplit {
        zero: Vec::new(),
        half: Vec::new(),
        one: Vec::new(),
        twice_lp: 0,
    };
    for v in 0..n {
        let count = usize::from(!reach_l[v]) + usize::from(reach_r[v]);
        split.twice_lp += count;
        match count {
            0 => split.zero.push(v),
            1 => split.half.push(v),
            _ => split.one.push(v),
        }
    }
    split
}

/// Maximum matching of the double cover (left copy `u` to right copy `v` for
/// every edge `uv`), by augmenting paths.
fn max_matching(g: &Graph) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let n = g.n();
    let mut match_l = vec![None; n];
    let mut match_r = vec![None; n];
    for u in 0..n {
        let mut seen = vec![false; n];
        augment(g, u, &mut seen, &mut match_l, &mut match_r);
    }
    (match_l, match_r)
}

fn augment(
    g: &Graph,
    u: usize,
    seen: &mut [bool],
    match_l: &mut [Option<usize>],
    match_r: &mut [Option<usize>],
) -> bool {
    for &v in g.neighbors(u) {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let free = match match_r[v] {
            None => true,
            Some(w) => augment(g, w, seen, match_l, match_r),
        };
        if free {
            match_l[u] = Some(v);
            match_r[v] = Some(u);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::vertex_cover_exact;

    #[test]
    fn lp_values() {
        // Odd cycle: all halves.
        let s = lp_split(&Graph::cycle(5));
        assert_eq!((s.half.len(), s.twice_lp), (5, 5));
        // Star: the centre is one, leaves zero.
        let star = Graph::complete_bipartite(1, 4);
        let s = lp_split(&star);
        assert_eq!(s.one, vec![0]);
        assert_eq!(s.zero, vec![1, 2, 3, 4]);
    }

    #[test]
    fn lp_bounds_vertex_cover_and_split_is_safe() {
        let mut r = crate::generate::rng(2);
        for _ in 0..100 {
            let g = crate::generate::gnp(10, 0.3, &mut r).unwrap();
            let s = lp_split(&g);
            let vc = vertex_cover_exact(&g).unwrap().size;
            assert!(s.twice_lp <= 2 * vc);
            let (half, _) = g.induced_subgraph(&s.half).unwrap();
            assert_eq!(vertex_cover_exact(&half).unwrap().size + s.one.len(), vc);
            // No edges between zero vertices, and zero vertices only see ones.
            for &z in &s.zero {
                assert!(g.neighbors(z).iter().all(|v| s.one.contains(v)));
            }
        }
    }
}
