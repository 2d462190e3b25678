use crate::bits::{self, bit, BitGraph, Mask};

/// Largest `n` handled by the subset dynamic program.
const DP_MAX_N: usize = 22;

/// A Hamiltonian cycle (`cycle`) or path as a vertex order.
///
/// Conventions for tiny graphs: the one-vertex graph has both; on two
/// vertices an edge counts as a cycle; the empty graph has a path only.
pub(crate) fn solve(g: &BitGraph, cycle: bool) -> Option<Vec<usize>> {
    match g.n {
        0 => return (!cycle).then(Vec::new),
        1 => return Some(vec![0]),
        2 => return (g.adj[0] & bit(1) != 0).then(|| vec![0, 1]),
        _ => {}
    }
    if !g.is_connected_in(g.all()) {
        return None;
    }
    if cycle && (0..g.n).any(|v| g.adj[v].count_ones() < 2) {
        return None;
    }
    if g.n <= DP_MAX_N {
        dp(g, cycle)
    } else {
        let mut order = Vec::with_capacity(g.n);
        let starts: Vec<usize> = if cycle { vec![0] } else { (0..g.n).collect() };
        starts.into_iter().find_map(|s| {
            order.clear();
            order.push(s);
            extend(g, &mut order, bit(s), cycle).then(|| order.clone())
        })
    }
}

/// `ends[mask]` holds the possible last vertices of a path covering `mask`;
/// for cycles every path starts at vertex 0.
fn dp(g: &BitGraph, cycle: bool) -> Option<Vec<usize>> {
    let n = g.n;
    let mut ends = vec![0u32; 1 << n];
    if cycle {
        ends[1] = 1;
    } else {
        for v in 0..n {
            ends[1 << v] = 1 << v;
        }
    }
    for mask in 1..(1usize << n) {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        for v in bits::iter(e as Mask) {
            for w in bits::iter(g.adj[v] & !(mask as Mask)) {
                ends[mask | 1 << w] |= 1 << w;
            }
        }
    }
    let full = (1usize << n) - 1;
    let mut last = bits::iter(ends[full] as Mask)
        .find(|&v| !cycle || g.adj[v] & 1 != 0)?;
    let mut mask = full;
    let mut order = vec![last];
    while mask.count_ones() > 1 {
        mask &= !(1 << last);
        let prev = bits::lowest(ends[mask] as Mask & g.adj[last]);
        order.push(prev);
        last = prev;
    }
    order.reverse();
    Some(order)
}

fn extend(g: &BitGraph, order: &mut Vec<usize>, used: Mask, cycle: bool) -> bool {
    let last = *order.last().expect("non-empty");
    if order.len() == g.n {
        return !cycle || g.adj[last] & bit(order[0]) != 0;
    }
    let rest = g.all() & !used;
    // The unvisited vertices must stay reachable from the current end.
    if g.reach(last, rest | bit(last)) != rest | bit(last) {
        return false;
    }
    for w in bits::iter(g.adj[last] & rest) {
        order.push(w);
        if extend(g, order, used | bit(w), cycle) {
            return true;
        }
        order.pop();
    }
    false
}
