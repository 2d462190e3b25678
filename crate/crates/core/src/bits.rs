//! Fixed-width bitset adjacency used by the exact solvers (at most 128 vertices).

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Mask = u128;

pub const MAX_BITS: usize = 128;

#[inline]
pub fn bit(v: usize) -> Mask {
    1u128 << v
}

#[inline]
pub fn full(n: usize) -> Mask {
    if n >= MAX_BITS {
        Mask::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Iterates over set bits in increasing order.
#[inline]
pub fn iter(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

#[inline]
pub fn lowest(m: Mask) -> usize {
    m.trailing_zeros() as usize
}

pub fn to_vec(m: Mask) -> Vec<usize> {
    iter(m).collect()
}

pub fn from_slice(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |acc, &v| acc | bit(v))
}

#[derive(Clone, Debug)]
pub struct BitGraph {
    pub n: usize,
    pub adj: Vec<Mask>,
}

impl BitGraph {
    pub fn new(g: &Graph) -> Result<Self> {
        if g.n() > MAX_BITS {
            return Err(Error::Resource(format!(
                "graph has {} vertices; exact solvers support at most {MAX_BITS}",
                g.n()
            )));
        }
        let adj = (0..g.n()).map(|v| from_slice(g.neighbors(v))).collect();
        Ok(BitGraph { n: g.n(), adj })
    }

    pub fn all(&self) -> Mask {
        full(self.n)
    }

    #[inline]
    pub fn closed(&self, v: usize) -> Mask {
        self.adj[v] | bit(v)
    }

    /// Vertices of `within` reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: Mask) -> Mask {
        let mut seen = bit(start) & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in iter(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected_in(&self, set: Mask) -> bool {
        set == 0 || self.reach(lowest(set), set) == set
    }

    /// Connected components of `G[set]`.
    pub fn components_in(&self, set: Mask) -> Vec<Mask> {
        let mut rest = set;
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.reach(lowest(rest), rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn has_edge_in(&self, set: Mask) -> bool {
        iter(set).any(|v| self.adj[v] & set != 0)
    }

    pub fn edge_count_in(&self, set: Mask) -> usize {
        iter(set)
            .map(|v| (self.adj[v] & set).count_ones() as usize)
            .sum::<usize>()
            / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_helpers() {
        assert_eq!(to_vec(from_slice(&[3, 0, 127])), vec![0, 3, 127]);
        assert_eq!(full(128), Mask::MAX);
        assert_eq!(full(3), 0b111);
        let g = BitGraph::new(&Graph::path(4)).unwrap();
        assert_eq!(g.components_in(0b1011).len(), 2);
        assert!(g.is_connected_in(0b0111));
        assert_eq!(g.edge_count_in(g.all()), 3);
    }
}
