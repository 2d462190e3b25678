//! Undirected simple graphs with dense `0..n` vertex ids.
//!
//! Every constructor keeps adjacency symmetric, loop-free and duplicate-free.
//! Transformations that renumber vertices return an explicit map from new ids
//! to source ids so that witnesses can be carried back.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        if n >= 3 {
            for i in 0..n {
                g.insert_unchecked(i, (i + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.insert_unchecked(i - 1, i);
        }
        g
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).expect("petersen edges are valid")
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Inserts `uv`. Returns whether the edge is new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::arg(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::arg(format!("self-loop at vertex {u}")));
        }
        Ok(self.insert_unchecked(u, v))
    }

    pub(crate) fn insert_unchecked(&mut self, u: usize, v: usize) -> bool {
        debug_assert!(u != v);
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                true
            }
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut adj = vec![Vec::new(); n];
        for (u, row) in adj.iter_mut().enumerate() {
            let mut it = self.adj[u].iter().peekable();
            for v in 0..n {
                if it.peek() == Some(&&v) {
                    it.next();
                } else if v != u {
                    row.push(v);
                }
            }
        }
        Graph { adj }
    }

    /// Subgraph induced by `vertices`, numbered in the given order.
    /// The returned map sends each new id to its source id.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let n = self.n();
        let mut index = vec![usize::MAX; n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= n {
                return Err(Error::arg(format!("vertex {v} not in graph of order {n}")));
            }
            if index[v] != usize::MAX {
                return Err(Error::arg(format!("vertex {v} listed twice")));
            }
            index[v] = i;
        }
        let mut h = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            let row: Vec<usize> = self.adj[v]
                .iter()
                .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                .collect();
            h.adj[i] = row;
            h.adj[i].sort_unstable();
        }
        Ok((h, vertices.to_vec()))
    }

    /// `G - S`.
    pub fn remove_vertices(&self, removed: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut keep = vec![true; self.n()];
        for &v in removed {
            if v >= self.n() {
                return Err(Error::arg(format!("vertex {v} not in graph")));
            }
            keep[v] = false;
        }
        let kept: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        self.induced_subgraph(&kept)
    }

    /// Disjoint union. Part `i` occupies ids `offsets[i]..offsets[i] + parts[i].n()`.
    pub fn disjoint_union(parts: &[Graph]) -> Result<(Graph, Vec<usize>)> {
        if parts.is_empty() {
            return Err(Error::arg("disjoint union of an empty list"));
        }
        let mut offsets = Vec::with_capacity(parts.len());
        let mut adj = Vec::with_capacity(parts.iter().map(Graph::n).sum());
        for g in parts {
            let off = adj.len();
            offsets.push(off);
            adj.extend(g.adj.iter().map(|ns| ns.iter().map(|&v| v + off).collect()));
        }
        Ok((Graph { adj }, offsets))
    }

    /// Adds a new vertex adjacent to every existing vertex.
    pub fn with_universal_vertex(&self) -> (Graph, usize) {
        let mut g = self.clone();
        let apex = g.add_vertex();
        for v in 0..apex {
            g.insert_unchecked(v, apex);
        }
        (g, apex)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Whether `set` induces a connected subgraph (the empty set counts as connected).
    pub fn is_connected_subset(&self, set: &[usize]) -> bool {
        if set.len() <= 1 {
            return true;
        }
        let mut member = vec![false; self.n()];
        for &v in set {
            member[v] = true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![set[0]];
        seen[set[0]] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if member[v] && !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == set.len()
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Canonical DIMACS edge serialization: 1-indexed, edges sorted.
    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "p edge {} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "e {} {}", u + 1, v + 1);
        }
        s
    }

    pub fn parse_dimacs(text: &str) -> Result<Graph> {
        let mut graph: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut tok = line.split_whitespace();
            match tok.next() {
                Some("p") => {
                    if graph.is_some() {
                        return Err(Error::parse(line_no, "duplicate problem line"));
                    }
                    let fmt = tok.next();
                    if !matches!(fmt, Some("edge") | Some("col")) {
                        return Err(Error::parse(line_no, "expected `p edge <n> <m>`"));
                    }
                    let n = parse_count(tok.next(), line_no, "vertex count")?;
                    // Duplicate `e` lines are tolerated, so the edge count is not enforced.
                    parse_count(tok.next(), line_no, "edge count")?;
                    if tok.next().is_some() {
                        return Err(Error::parse(line_no, "trailing tokens in header"));
                    }
                    graph = Some(Graph::new(n));
                }
                Some("e") => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| Error::parse(line_no, "edge line before `p edge` header"))?;
                    let u = parse_count(tok.next(), line_no, "edge endpoint")?;
                    let v = parse_count(tok.next(), line_no, "edge endpoint")?;
                    if tok.next().is_some() {
                        return Err(Error::parse(line_no, "trailing tokens in edge line"));
                    }
                    let n = g.n();
                    if u == 0 || v == 0 || u > n || v > n {
                        return Err(Error::parse(
                            line_no,
                            format!("vertex index out of range 1..={n}"),
                        ));
                    }
                    if u == v {
                        return Err(Error::parse(line_no, format!("self-loop at vertex {u}")));
                    }
                    g.insert_unchecked(u - 1, v - 1);
                }
                Some(other) => {
                    return Err(Error::parse(line_no, format!("unknown line type `{other}`")));
                }
                None => {}
            }
        }
        graph.ok_or_else(|| Error::parse(0, "missing `p edge` header"))
    }
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::parse(line, format!("malformed {what}")))
}

/// Exact isomorphism test by backtracking with degree-based pruning.
///
/// Exponential in the worst case; meant for small verification graphs.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    isomorphism(g, h).is_some()
}

/// Returns a map `phi` with `uv ∈ E(g) ⇔ phi(u)phi(v) ∈ E(h)` if one exists.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n != h.n() || g.m() != h.m() {
        return None;
    }
    let mut dg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    // Map high-degree, well-connected vertices first.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let conn = g.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (conn, g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if iso_extend(g, h, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn iso_extend(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for cand in 0..h.n() {
        if used[cand] || h.degree(cand) != g.degree(v) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(map[u], cand));
        if !consistent {
            continue;
        }
        map[v] = cand;
        used[cand] = true;
        if iso_extend(g, h, order, depth + 1, map, used) {
            return true;
        }
        used[cand] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let g = Graph::parse_dimacs("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn parses_isolated_vertices() {
        let g = Graph::parse_dimacs("c comment\np edge 2 0\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn rejects_self_loop_with_line() {
        let err = Graph::parse_dimacs("p edge 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                msg: "self-loop at vertex 1".into()
            }
        );
    }

    #[test]
    fn rejects_bad_header_and_range() {
        assert!(matches!(
            Graph::parse_dimacs("p edge x 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse_dimacs("p edge 2 1\ne 1 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse_dimacs("e 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn duplicate_edges_are_merged() {
        let g = Graph::parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn induced_subgraph_cases() {
        let (h, map) = Graph::complete(3).induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(h, Graph::path(2));
        assert_eq!(map, vec![0, 1]);
        let (h, _) = Graph::complete(3).induced_subgraph(&[]).unwrap();
        assert_eq!(h.n(), 0);
        assert!(Graph::complete(3).induced_subgraph(&[5]).is_err());
    }

    #[test]
    fn c5_minus_any_vertex_is_p4() {
        let c5 = Graph::cycle(5);
        for drop in 0..5 {
            let keep: Vec<usize> = (0..5).filter(|&v| v != drop).collect();
            let (h, _) = c5.induced_subgraph(&keep).unwrap();
            assert!(are_isomorphic(&h, &Graph::path(4)));
        }
    }

    #[test]
    fn complement_cases() {
        assert_eq!(Graph::complete(4).complement(), Graph::new(4));
        let c5 = Graph::cycle(5);
        assert!(are_isomorphic(&c5.complement(), &c5));
    }

    #[test]
    fn union_of_triangles() {
        let (g, offs) = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(3)]).unwrap();
        assert_eq!((g.n(), g.m(), g.components().len()), (6, 6, 2));
        assert_eq!(offs, vec![0, 3]);
        let (g1, _) = Graph::disjoint_union(&[Graph::cycle(5)]).unwrap();
        assert_eq!(g1, Graph::cycle(5));
        assert!(Graph::disjoint_union(&[]).is_err());
    }

    #[test]
    fn isomorphism_rejects_different_graphs() {
        assert!(!are_isomorphic(&Graph::path(4), &Graph::complete_bipartite(1, 3)));
        assert!(are_isomorphic(&Graph::petersen(), &Graph::petersen()));
    }
}
