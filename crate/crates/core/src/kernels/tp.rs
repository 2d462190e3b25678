use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::Outcome;
use crate::cfa::{kernelize_cfa, Buyer, CfaInstance, RuleFiring, Seller, Weight};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::{TcCertificate, VcCertificate};

/// Largest augmented cover accepted by [`tp_tc_compress`]; the buyer set
/// grows with its sixth power.
pub const MAX_AUGMENTED_COVER: usize = 20;

/// The graph after clique trimming, with the cover augmented by every good
/// clique. All ids refer to `graph`; `map` sends them back to the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TpTcState {
    pub graph: Graph,
    pub map: Vec<usize>,
    /// Augmented cover, sorted.
    pub x: Vec<usize>,
    /// Remaining clique blocks; all have size divisible by 3.
    pub cliques: Vec<Vec<usize>>,
    /// Blocks moved into the cover (sizes not divisible by 3).
    pub good: Vec<Vec<usize>>,
    pub trimmed_vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TpCompression {
    pub outcome: Outcome<CfaInstance>,
    pub state: Option<TpTcState>,
    /// Buyers before kernelization: `C(|X|,3) + C(|X|,6)`.
    pub raw_buyers: usize,
    pub raw_sellers: usize,
    pub kernel_trace: Vec<RuleFiring>,
}

/// Trims large blocks and moves good blocks into the cover.
///
/// `tc` must be at least the certificate size; the trimming window is
/// `[2tc, 2tc+2]`. Trimming removes the three highest ids of a block at a time.
pub fn tp_tc_prepare(g: &Graph, x: &TcCertificate, tc: usize) -> Result<Outcome<TpTcState>> {
    x.validate(g)?;
    if tc < x.size() {
        return Err(Error::arg(format!(
            "tc = {tc} is smaller than the certificate size {}",
            x.size()
        )));
    }
    if !g.n().is_multiple_of(3) {
        return Ok(Outcome::no(format!("{} vertices is not a multiple of 3", g.n())));
    }
    let cap = 2 * tc + 2;
    let mut removed = Vec::new();
    for block in &x.cliques {
        let mut size = block.len();
        while size > cap {
            removed.extend_from_slice(&block[size - 3..size]);
            size -= 3;
        }
    }
    let (graph, map) = g.remove_vertices(&removed)?;
    let mut index = vec![usize::MAX; g.n()];
    for (new, &old) in map.iter().enumerate() {
        index[old] = new;
    }
    let mut xs: Vec<usize> = x.cover.iter().map(|&v| index[v]).collect();
    let mut cliques = Vec::new();
    let mut good = Vec::new();
    for block in &x.cliques {
        let kept: Vec<usize> = block
            .iter()
            .filter(|&&v| index[v] != usize::MAX)
            .map(|&v| index[v])
            .collect();
        if kept.len().is_multiple_of(3) {
            cliques.push(kept);
        } else {
            good.push(kept);
        }
    }
    if good.len() > tc {
        return Ok(Outcome::no(format!(
            "{} good cliques but each needs its own cover vertex and tc = {tc}",
            good.len()
        )));
    }
    xs.extend(good.iter().flatten().copied());
    xs.sort_unstable();
    if xs.len() > tc + tc * cap {
        return Err(Error::Invariant(format!(
            "augmented cover has {} vertices, above tc + tc(2tc+2)",
            xs.len()
        )));
    }
    Ok(Outcome::Reduced(TpTcState {
        graph,
        map,
        x: xs,
        cliques,
        good,
        trimmed_vertices: removed.len(),
    }))
}

/// Triangle Partition with a twin-cover, compressed into a kernelized
/// Conflict-free Assignment instance.
pub fn tp_tc_compress(g: &Graph, x: &TcCertificate, tc: usize) -> Result<TpCompression> {
    let state = match tp_tc_prepare(g, x, tc)? {
        Outcome::Reduced(s) => s,
        Outcome::ImmediateNo { reason } => {
            return Ok(TpCompression {
                outcome: Outcome::no(reason),
                state: None,
                raw_buyers: 0,
                raw_sellers: 0,
                kernel_trace: Vec::new(),
            })
        }
    };
    let k = state.x.len();
    if k > MAX_AUGMENTED_COVER {
        return Err(Error::Resource(format!(
            "augmented cover has {k} vertices; limit is {MAX_AUGMENTED_COVER}"
        )));
    }
    // Conflicts never influence the reduction rules, so they are attached to
    // the surviving buyers after kernelization.
    let raw = build(&state, false);
    let (raw_buyers, raw_sellers) = (raw.buyers.len(), raw.sellers.len());
    let (mut kernel, kernel_trace) = kernelize_cfa(&raw);
    kernel.conflicts = conflicts(&kernel.buyers);
    Ok(TpCompression {
        outcome: Outcome::Reduced(kernel),
        state: Some(state),
        raw_buyers,
        raw_sellers,
        kernel_trace,
    })
}

/// The full instance before kernelization, conflicts included.
pub fn tp_tc_raw_instance(state: &TpTcState) -> CfaInstance {
    build(state, true)
}

fn build(state: &TpTcState, with_conflicts: bool) -> CfaInstance {
    let g = &state.graph;
    let mut buyers = Vec::new();
    let mut sellers: Vec<Seller> = state
        .cliques
        .iter()
        .enumerate()
        .map(|(j, c)| Seller {
            id: j as u64,
            capacity: BigUint::from(c.len()),
            label: Some(format!("C{j}")),
        })
        .collect();
    let mut edges = Vec::new();
    for size in [3, 6] {
        for_each_subset(&state.x, size, &mut |b| {
            let id = buyers.len() as u64;
            let weight = weight_of(g, b);
            if size == 3 && g.is_clique(b) {
                let seller = sellers.len() as u64;
                sellers.push(Seller {
                    id: seller,
                    capacity: BigUint::from(3u8),
                    label: Some(format!("D{:?}", label(state, b))),
                });
                edges.push((id, seller));
            } else {
                for (j, c) in state.cliques.iter().enumerate() {
                    if b.iter().all(|&v| g.has_edge(v, c[0])) {
                        edges.push((id, j as u64));
                    }
                }
            }
            buyers.push(Buyer {
                id,
                profit: BigUint::from(size),
                weight,
                label: Some(label(state, b)),
            });
        });
    }
    let conflicts = if with_conflicts { conflicts(&buyers) } else { Vec::new() };
    CfaInstance {
        buyers,
        sellers,
        edges,
        conflicts,
        q: BigUint::from(state.x.len()),
    }
}

fn label(state: &TpTcState, b: &[usize]) -> Vec<usize> {
    b.iter().map(|&v| state.map[v]).collect()
}

fn weight_of(g: &Graph, b: &[usize]) -> Weight {
    match b.len() {
        3 if any_edge(g, b) => Weight::finite(3),
        3 => Weight::finite(6),
        6 if has_perfect_matching(g, b) => Weight::finite(3),
        _ => Weight::Infinite,
    }
}

/// Perfect matching inside `G[b]` by exhaustive pairing.
fn has_perfect_matching(g: &Graph, b: &[usize]) -> bool {
    let Some((&first, rest)) = b.split_first() else {
        return true;
    };
    (0..rest.len()).any(|i| {
        g.has_edge(first, rest[i]) && {
            let others: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
            has_perfect_matching(g, &others)
        }
    })
}

/// Pairs of buyers whose vertex sets intersect. Buyer labels hold the sets.
fn conflicts(buyers: &[Buyer]) -> Vec<(u64, u64)> {
    let sets: Vec<&[usize]> = buyers
        .iter()
        .map(|b| b.label.as_deref().expect("compression buyers are labelled"))
        .collect();
    let mut out = Vec::new();
    for i in 0..buyers.len() {
        for j in i + 1..buyers.len() {
            if sets[i].iter().any(|v| sets[j].contains(v)) {
                out.push((buyers[i].id.min(buyers[j].id), buyers[i].id.max(buyers[j].id)));
            }
        }
    }
    out
}

fn any_edge(g: &Graph, b: &[usize]) -> bool {
    b.iter().enumerate().any(|(i, &u)| b[i + 1..].iter().any(|&v| g.has_edge(u, v)))
}

fn for_each_subset(items: &[usize], size: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, size, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, size, 0, &mut Vec::new(), f);
}

/// Direct check of the partition characterization: `X` splits into blocks of
/// size 3 or 6, each either a triangle of `G` or sent to a clique that sees
/// all of it, with block weights (3 or 6 per the weight table) summing to at
/// most the clique size.
pub fn tip_claim_holds(state: &TpTcState) -> bool {
    let mut load = vec![0usize; state.cliques.len()];
    let remaining: BTreeSet<usize> = state.x.iter().copied().collect();
    partition(state, &remaining, &mut load)
}

fn partition(state: &TpTcState, remaining: &BTreeSet<usize>, load: &mut [usize]) -> bool {
    let Some(&first) = remaining.iter().next() else {
        return true;
    };
    let others: Vec<usize> = remaining.iter().copied().filter(|&v| v != first).collect();
    let g = &state.graph;
    for extra in [2usize, 5] {
        let mut found = false;
        for_each_subset(&others, extra, &mut |rest| {
            if found {
                return;
            }
            let mut block = vec![first];
            block.extend_from_slice(rest);
            let left: BTreeSet<usize> = remaining.iter().copied().filter(|v| !block.contains(v)).collect();
            if block.len() == 3 && g.is_clique(&block) && partition(state, &left, load) {
                found = true;
                return;
            }
            let w = match block.len() {
                3 if any_edge(g, &block) => 3,
                3 => 6,
                _ if has_perfect_matching(g, &block) => 3,
                _ => return,
            };
            for (j, c) in state.cliques.iter().enumerate() {
                if load[j] + w <= c.len() && block.iter().all(|&v| g.has_edge(v, c[0])) {
                    load[j] += w;
                    let ok = partition(state, &left, load);
                    load[j] -= w;
                    if ok {
                        found = true;
                        return;
                    }
                }
            }
        });
        if found {
            return true;
        }
    }
    false
}

/// Rejects when more than `⌊vc/2⌋` vertices lie outside the cover: each
/// triangle holds at most one of them and at least two cover vertices.
/// Otherwise the graph itself (at most `3·vc/2 + vc` vertices) is the kernel.
pub fn tp_vc_trivial_kernel(g: &Graph, vc: &VcCertificate) -> Result<Outcome<(Graph, usize)>> {
    if !vc.is_valid_for(g) {
        return Err(Error::arg("the given set is not a vertex cover of the graph"));
    }
    let outside = g.n() - vc.cover.len();
    if outside > vc.cover.len() / 2 {
        return Ok(Outcome::no(format!(
            "{outside} vertices outside a cover of size {}",
            vc.cover.len()
        )));
    }
    Ok(Outcome::Reduced((g.clone(), g.n())))
}
