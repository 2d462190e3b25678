use crate::bits::{self, bit, BitGraph, Mask};

/// Partition of all vertices into triangles.
pub(crate) fn triangle_partition(g: &BitGraph) -> Option<Vec<[usize; 3]>> {
    if !g.n.is_multiple_of(3) {
        return None;
    }
    let mut out = Vec::with_capacity(g.n / 3);
    cover_triangles(g, g.all(), &mut out).then_some(out)
}

fn cover_triangles(g: &BitGraph, rest: Mask, out: &mut Vec<[usize; 3]>) -> bool {
    if rest == 0 {
        return true;
    }
    let v = bits::lowest(rest);
    let nb = g.adj[v] & rest;
    for a in bits::iter(nb) {
        for b in bits::iter(g.adj[a] & nb & !bits::full(a + 1)) {
            out.push([v, a, b]);
            if cover_triangles(g, rest & !(bit(v) | bit(a) | bit(b)), out) {
                return true;
            }
            out.pop();
        }
    }
    false
}

/// Maximum induced matching, solved per component.
pub(crate) fn max_induced_matching(g: &BitGraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for comp in g.components_in(g.all()) {
        let mut best = Vec::new();
        im_branch(g, comp, &mut Vec::new(), &mut best);
        out.extend(best);
    }
    out.sort_unstable();
    out
}

/// Every clique of a clique partition is touched by at most one edge of an
/// induced matching. The search branches on the clique with the fewest
/// incident edges: one of them is matched, or the clique is left untouched.
fn im_branch(g: &BitGraph, active: Mask, current: &mut Vec<(usize, usize)>, best: &mut Vec<(usize, usize)>) {
    let active: Mask = bits::iter(active)
        .filter(|&v| g.adj[v] & active != 0)
        .fold(0, |acc, v| acc | bit(v));
    if active == 0 {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + upper_bound(g, active) <= best.len() {
        return;
    }
    let cliques = clique_partition(g, active);
    let touching = |q: Mask| -> u32 {
        let (out, inner) = bits::iter(q).fold((0, 0), |(out, inner), v| {
            let nb = g.adj[v] & active;
            (out + (nb & !q).count_ones(), inner + (nb & q).count_ones())
        });
        out + inner / 2
    };
    let q = cliques
        .into_iter()
        .min_by_key(|&q| touching(q))
        .expect("active graph has a vertex");
    let mut edges = Vec::new();
    for u in bits::iter(q) {
        for w in bits::iter(g.adj[u] & active) {
            if q & bit(w) == 0 || u < w {
                edges.push((u.min(w), u.max(w)));
            }
        }
    }
    for (u, w) in edges {
        current.push((u, w));
        im_branch(g, active & !g.closed(u) & !g.closed(w), current, best);
        current.pop();
    }
    im_branch(g, active & !q, current, best);
}

fn upper_bound(g: &BitGraph, active: Mask) -> usize {
    // Both ends of a maximal matching form a vertex cover; every matched edge
    // has an end in it, hence touches one of its partition cliques.
    let mut cover = 0;
    let mut rest = active;
    while rest != 0 {
        let v = bits::lowest(rest);
        rest &= !bit(v);
        let nb = g.adj[v] & rest;
        if nb != 0 {
            let w = bits::lowest(nb);
            cover |= bit(v) | bit(w);
            rest &= !bit(w);
        }
    }
    clique_partition(g, cover).len()
}

fn clique_partition(g: &BitGraph, set: Mask) -> Vec<Mask> {
    let mut rest = set;
    let mut out = Vec::new();
    while rest != 0 {
        let v = bits::lowest(rest);
        let mut q = bit(v);
        let mut cand = g.adj[v] & rest;
        while cand != 0 {
            let u = bits::iter(cand)
                .max_by_key(|&u| (g.adj[u] & cand).count_ones())
                .expect("non-empty");
            q |= bit(u);
            cand &= g.adj[u];
        }
        rest &= !q;
        out.push(q);
    }
    out
}
