use crate::bits::{self, BitGraph, Mask};

const NONE: usize = usize::MAX;

/// A proper coloring with colors `0..k`, found per component by DSATUR-ordered
/// backtracking. New colors are opened in index order, which removes color
/// permutations from the search.
pub(crate) fn color_with(g: &BitGraph, k: usize) -> Option<Vec<usize>> {
    let mut color = vec![NONE; g.n];
    for comp in g.components_in(g.all()) {
        if !backtrack(g, comp, k, &mut color, 0) {
            return None;
        }
    }
    Some(color)
}

fn backtrack(g: &BitGraph, comp: Mask, k: usize, color: &mut [usize], used: usize) -> bool {
    let mut pick = None;
    let mut best = (0u32, 0u32);
    for v in bits::iter(comp).filter(|&v| color[v] == NONE) {
        let sat = saturation(g, v, color).count_ones();
        let deg = (g.adj[v] & comp).count_ones();
        if pick.is_none() || (sat, deg) > best {
            pick = Some(v);
            best = (sat, deg);
        }
    }
    let Some(v) = pick else {
        return true;
    };
    let blocked = saturation(g, v, color);
    for c in 0..k.min(used + 1) {
        if blocked >> c & 1 == 1 {
            continue;
        }
        color[v] = c;
        if backtrack(g, comp, k, color, used.max(c + 1)) {
            return true;
        }
    }
    color[v] = NONE;
    false
}

fn saturation(g: &BitGraph, v: usize, color: &[usize]) -> u128 {
    bits::iter(g.adj[v])
        .filter(|&u| color[u] != NONE && color[u] < 128)
        .fold(0u128, |acc, u| acc | 1 << color[u])
}
