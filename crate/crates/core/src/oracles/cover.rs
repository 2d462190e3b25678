use crate::bits::{self, bit, BitGraph, Mask};

/// Minimum feedback vertex set (`odd = false`) or odd cycle transversal
/// (`odd = true`), by iterative deepening per component.
pub(crate) fn min_transversal(g: &BitGraph, odd: bool) -> Mask {
    let mut out = 0;
    for comp in g.components_in(g.all()) {
        for budget in 0.. {
            if let Some(s) = hit_cycles(g, comp, budget, odd) {
                out |= s;
                break;
            }
        }
    }
    out
}

/// A set of at most `budget` vertices meeting every (odd) cycle of `G[active]`.
///
/// Branches on the vertices of a shortest (odd) cycle. A vertex of degree two
/// is never needed when its cycle has a vertex of larger degree, since every
/// cycle through it also runs through its neighbours along that cycle.
fn hit_cycles(g: &BitGraph, active: Mask, budget: u32, odd: bool) -> Option<Mask> {
    let active = strip_low_degree(g, active);
    let Some(cycle) = shortest_cycle(g, active, odd) else {
        return Some(0);
    };
    if budget == 0 {
        return None;
    }
    let heavy: Mask = bits::iter(cycle)
        .filter(|&v| (g.adj[v] & active).count_ones() >= 3)
        .fold(0, |acc, v| acc | bit(v));
    let candidates = if heavy == 0 { bit(bits::lowest(cycle)) } else { heavy };
    bits::iter(candidates)
        .find_map(|v| hit_cycles(g, active & !bit(v), budget - 1, odd).map(|s| s | bit(v)))
}

fn strip_low_degree(g: &BitGraph, mut active: Mask) -> Mask {
    loop {
        let low: Mask = bits::iter(active)
            .filter(|&v| (g.adj[v] & active).count_ones() <= 1)
            .fold(0, |acc, v| acc | bit(v));
        if low == 0 {
            return active;
        }
        active &= !low;
    }
}

/// Vertex set of a shortest cycle (odd cycle when `odd`) of `G[active]`.
pub(crate) fn shortest_cycle(g: &BitGraph, active: Mask, odd: bool) -> Option<Mask> {
    let mut best: Option<(usize, Mask)> = None;
    let mut dist = vec![usize::MAX; g.n];
    let mut parent = vec![usize::MAX; g.n];
    for root in bits::iter(active) {
        for v in bits::iter(active) {
            dist[v] = usize::MAX;
        }
        dist[root] = 0;
        parent[root] = root;
        let mut queue = std::collections::VecDeque::from([root]);
        let mut found: Option<(usize, usize, usize)> = None;
        while let Some(u) = queue.pop_front() {
            if best.is_some_and(|(len, _)| 2 * dist[u] + 1 >= len) {
                break;
            }
            for w in bits::iter(g.adj[u] & active) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] && (!odd || dist[w] == dist[u]) {
                    let len = dist[u] + dist[w] + 1;
                    if found.is_none_or(|(l, _, _)| len < l) {
                        found = Some((len, u, w));
                    }
                }
            }
        }
        if let Some((len, u, w)) = found {
            if best.is_none_or(|(l, _)| len < l) {
                best = Some((len, trace(&parent, &dist, u, w)));
            }
        }
    }
    best.map(|(_, m)| m)
}

/// Vertices on the tree paths from `u` and `w` up to their common ancestor.
fn trace(parent: &[usize], dist: &[usize], mut u: usize, mut w: usize) -> Mask {
    let mut m = bit(u) | bit(w);
    while u != w {
        if dist[u] >= dist[w] {
            u = parent[u];
        } else {
            w = parent[w];
        }
        m |= bit(u) | bit(w);
    }
    m
}

/// A connected vertex cover of at most `k` vertices. Only vertices with an
/// incident edge matter; the edges must lie in one component.
pub(crate) fn connected_vertex_cover(g: &BitGraph, k: usize) -> Option<Mask> {
    let touched: Mask = bits::iter(g.all())
        .filter(|&v| g.adj[v] != 0)
        .fold(0, |acc, v| acc | bit(v));
    let comps = g.components_in(touched);
    match comps.len() {
        0 => return Some(0),
        1 => {}
        _ => return None,
    }
    let mut best = None;
    let mut limit = k.min(bits::MAX_BITS) as u32 + 1;
    cvc_branch(g, comps[0], 0, 0, &mut best, &mut limit);
    best
}

fn cvc_branch(
    g: &BitGraph,
    comp: Mask,
    mut taken: Mask,
    excluded: Mask,
    best: &mut Option<Mask>,
    limit: &mut u32,
) {
    // Neighbours of excluded vertices are forced into the cover.
    for v in bits::iter(excluded) {
        taken |= g.adj[v] & comp;
    }
    if taken & excluded != 0 {
        return;
    }
    let free = comp & !taken & !excluded;
    if taken.count_ones() + matching_bound(g, free) >= *limit {
        return;
    }
    let pick = bits::iter(free)
        .filter(|&v| g.adj[v] & free != 0)
        .max_by_key(|&v| (g.adj[v] & free).count_ones());
    match pick {
        Some(v) => {
            cvc_branch(g, comp, taken | bit(v), excluded, best, limit);
            cvc_branch(g, comp, taken, excluded | bit(v), best, limit);
        }
        None => {
            // Every free vertex only sees covered vertices; add the fewest of
            // them that make the cover connected.
            let spare = *limit - 1 - taken.count_ones();
            if let Some(extra) = connectors(g, taken, free, spare) {
                let s = taken | extra;
                *limit = s.count_ones();
                *best = Some(s);
            }
        }
    }
}

fn matching_bound(g: &BitGraph, set: Mask) -> u32 {
    let mut rest = set;
    let mut count = 0;
    while rest != 0 {
        let v = bits::lowest(rest);
        rest &= !bit(v);
        let nb = g.adj[v] & rest;
        if nb != 0 {
            rest &= !bit(bits::lowest(nb));
            count += 1;
        }
    }
    count
}

/// Smallest subset `T` of `pool` with `|T| <= spare` and `G[base ∪ T]` connected.
fn connectors(g: &BitGraph, base: Mask, pool: Mask, spare: u32) -> Option<Mask> {
    if g.is_connected_in(base) {
        return Some(0);
    }
    let useful: Vec<usize> = bits::iter(pool).filter(|&v| g.adj[v] & base != 0).collect();
    for size in 1..=spare.min(useful.len() as u32) as usize {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let t = idx.iter().fold(0, |acc, &i| acc | bit(useful[i]));
            if g.is_connected_in(base | t) {
                return Some(t);
            }
            if !next_combination(&mut idx, useful.len()) {
                break;
            }
        }
    }
    None
}

/// Advances `idx` to the next `idx.len()`-combination of `0..n`.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
