use crate::bits::{self, bit, BitGraph, Mask};

/// Maximum clique of `G[set]`: branch and bound with a greedy-coloring bound.
pub(crate) fn max_clique(g: &BitGraph, set: Mask) -> Mask {
    let mut best = 0;
    expand(g, 0, set, &mut best);
    best
}

fn expand(g: &BitGraph, current: Mask, mut cand: Mask, best: &mut Mask) {
    if cand == 0 {
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
        return;
    }
    let (order, colors) = color_sort(g, cand);
    let size = current.count_ones();
    for i in (0..order.len()).rev() {
        if size + colors[i] <= best.count_ones() {
            return;
        }
        let v = order[i];
        expand(g, current | bit(v), cand & g.adj[v], best);
        cand &= !bit(v);
    }
}

/// Greedy coloring of `cand`; vertices listed by nondecreasing color.
fn color_sort(g: &BitGraph, cand: Mask) -> (Vec<usize>, Vec<u32>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colors = Vec::with_capacity(order.capacity());
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = bits::lowest(avail);
            avail &= !bit(v) & !g.adj[v];
            uncolored &= !bit(v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

/// A clique with exactly one vertex of each color `0..k`.
pub(crate) fn multicolored(g: &BitGraph, coloring: &[usize], k: usize) -> Option<Mask> {
    let mut classes = vec![0 as Mask; k];
    for (v, &c) in coloring.iter().enumerate() {
        classes[c] |= bit(v);
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| classes[c].count_ones());
    pick(g, &classes, &order, g.all(), 0)
}

fn pick(g: &BitGraph, classes: &[Mask], order: &[usize], cand: Mask, chosen: Mask) -> Option<Mask> {
    let Some((&c, rest)) = order.split_first() else {
        return Some(chosen);
    };
    if rest.iter().any(|&r| classes[r] & cand == 0) {
        return None;
    }
    bits::iter(classes[c] & cand).find_map(|v| pick(g, classes, rest, cand & g.adj[v], chosen | bit(v)))
}
