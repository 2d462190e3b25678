use crate::bits::{self, bit, BitGraph, Mask};

use super::cover::next_combination;

/// A tree with at most `k` edges spanning the terminals, found by trying
/// Steiner vertex sets of increasing size.
pub(crate) fn solve(g: &BitGraph, terminals: Mask, k: usize) -> Option<Vec<(usize, usize)>> {
    if terminals == 0 {
        return Some(Vec::new());
    }
    let t = terminals.count_ones() as usize;
    if k + 1 < t {
        return None;
    }
    let root = bits::lowest(terminals);
    let reach = g.reach(root, g.all());
    if reach & terminals != terminals {
        return None;
    }
    let pool: Vec<usize> = bits::iter(reach & !terminals).collect();
    for extra in 0..=(k + 1 - t).min(pool.len()) {
        let mut idx: Vec<usize> = (0..extra).collect();
        loop {
            let set = idx.iter().fold(terminals, |acc, &i| acc | bit(pool[i]));
            if g.is_connected_in(set) {
                return Some(spanning_tree(g, set));
            }
            if extra == 0 || !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
    }
    None
}

fn spanning_tree(g: &BitGraph, set: Mask) -> Vec<(usize, usize)> {
    let root = bits::lowest(set);
    let mut seen = bit(root);
    let mut queue = std::collections::VecDeque::from([root]);
    let mut edges = Vec::new();
    while let Some(u) = queue.pop_front() {
        for w in bits::iter(g.adj[u] & set & !seen) {
            seen |= bit(w);
            edges.push((u.min(w), u.max(w)));
            queue.push_back(w);
        }
    }
    edges
}
