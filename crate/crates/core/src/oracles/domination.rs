use crate::bits::{self, bit, BitGraph, Mask};

/// Minimum dominating set, summed over components.
pub(crate) fn min_dominating(g: &BitGraph) -> Mask {
    per_component(g, false)
}

/// Minimum independent dominating set, summed over components.
pub(crate) fn min_independent_dominating(g: &BitGraph) -> Mask {
    per_component(g, true)
}

fn per_component(g: &BitGraph, independent: bool) -> Mask {
    let mut out = 0;
    for comp in g.components_in(g.all()) {
        for budget in 1.. {
            if let Some(s) = dominate(g, comp, 0, !comp, budget, independent) {
                out |= s;
                break;
            }
        }
    }
    out
}

/// Extends `chosen` by at most `budget` vertices of `comp` until every vertex
/// of `comp` is dominated. Branches on the undominated vertex with the fewest
/// candidate dominators.
fn dominate(
    g: &BitGraph,
    comp: Mask,
    chosen: Mask,
    dominated: Mask,
    budget: u32,
    independent: bool,
) -> Option<Mask> {
    let open = comp & !dominated;
    if open == 0 {
        return Some(chosen);
    }
    if budget == 0 {
        return None;
    }
    let allowed = if independent { comp & !dominated } else { comp };
    let reach = bits::iter(allowed)
        .map(|u| (g.closed(u) & open).count_ones())
        .max()
        .unwrap_or(0);
    if reach == 0 || open.count_ones() > reach * budget {
        return None;
    }
    let v = bits::iter(open).min_by_key(|&v| (g.closed(v) & allowed).count_ones())?;
    let mut options: Vec<usize> = bits::iter(g.closed(v) & allowed).collect();
    options.sort_by_key(|&u| std::cmp::Reverse((g.closed(u) & open).count_ones()));
    options.into_iter().find_map(|u| {
        dominate(g, comp, chosen | bit(u), dominated | g.closed(u), budget - 1, independent)
    })
}

/// A connected dominating set of at most `k` vertices: connected vertex sets
/// are enumerated by increasing size.
pub(crate) fn connected_dominating(g: &BitGraph, k: usize) -> Option<Mask> {
    let all = g.all();
    if all == 0 {
        return Some(0);
    }
    if !g.is_connected_in(all) {
        return None;
    }
    for size in 1..=k.min(g.n) {
        let mut found = None;
        for_each_connected_set(g, all, size, &mut |s| {
            let dom = bits::iter(s).fold(0, |acc, v| acc | g.closed(v));
            if dom == all {
                found = Some(s);
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Calls `visit` on every connected vertex set of `G[within]` with exactly
/// `size` vertices, each once, until `visit` returns true.
pub(crate) fn for_each_connected_set(
    g: &BitGraph,
    within: Mask,
    size: usize,
    visit: &mut dyn FnMut(Mask) -> bool,
) -> bool {
    for root in bits::iter(within) {
        let higher = within & !bits::full(root + 1);
        let ext = g.adj[root] & higher;
        if extend(g, higher, bit(root), g.closed(root), ext, size, visit) {
            return true;
        }
    }
    false
}

/// Connected sets rooted at their smallest vertex: a vertex joins the
/// extension set only when it is first seen next to the current set.
fn extend(
    g: &BitGraph,
    higher: Mask,
    set: Mask,
    seen: Mask,
    mut ext: Mask,
    size: usize,
    visit: &mut dyn FnMut(Mask) -> bool,
) -> bool {
    if set.count_ones() as usize == size {
        return visit(set);
    }
    while ext != 0 {
        let w = bits::lowest(ext);
        ext &= !bit(w);
        let fresh = g.adj[w] & higher & !seen;
        if extend(g, higher, set | bit(w), seen | g.closed(w), ext | fresh, size, visit) {
            return true;
        }
    }
    false
}
