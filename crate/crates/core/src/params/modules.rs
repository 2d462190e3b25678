//! Modules, quotient graphs and the modular decomposition tree.
//!
//! The decomposition is the direct recursive one: parallel over components,
//! series over co-components, otherwise prime over the maximal strong modules,
//! which are found by closing every pair `{v, u}` under splitters. This is
//! O(n^4) and intended for small graphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A vertex outside `set` that sees part, but not all, of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitter {
    pub vertex: usize,
    pub adjacent_to: usize,
    pub non_adjacent_to: usize,
}

pub fn find_splitter(g: &Graph, set: &[usize]) -> Option<Splitter> {
    let mut member = vec![false; g.n()];
    for &v in set {
        member[v] = true;
    }
    for x in (0..g.n()).filter(|&x| !member[x]) {
        let mut hit = None;
        let mut miss = None;
        for &v in set {
            if g.has_edge(x, v) {
                hit.get_or_insert(v);
            } else {
                miss.get_or_insert(v);
            }
            if let (Some(a), Some(b)) = (hit, miss) {
                return Some(Splitter {
                    vertex: x,
                    adjacent_to: a,
                    non_adjacent_to: b,
                });
            }
        }
    }
    None
}

pub fn is_module(g: &Graph, set: &[usize]) -> bool {
    find_splitter(g, set).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quotient {
    pub graph: Graph,
    /// `modules[i]` is the module represented by quotient vertex `i`.
    pub modules: Vec<Vec<usize>>,
}

/// Quotient graph of a modular partition: one vertex per module, an edge when
/// two modules are fully adjacent.
pub fn quotient_graph(g: &Graph, partition: &[Vec<usize>]) -> Result<Quotient> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    for (i, part) in partition.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::arg(format!("part {i} is empty")));
        }
        for &v in part {
            if v >= n {
                return Err(Error::arg(format!("vertex {v} not in graph")));
            }
            if owner[v] != usize::MAX {
                return Err(Error::arg(format!("vertex {v} in two parts")));
            }
            owner[v] = i;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::arg(format!("vertex {v} not covered by the partition")));
    }
    for (i, part) in partition.iter().enumerate() {
        if let Some(s) = find_splitter(g, part) {
            return Err(Error::arg(format!(
                "part {i} is not a module: vertex {} is adjacent to {} but not to {}",
                s.vertex, s.adjacent_to, s.non_adjacent_to
            )));
        }
    }
    let mut q = Graph::new(partition.len());
    for (u, v) in g.edges() {
        if owner[u] != owner[v] {
            q.insert_unchecked(owner[u], owner[v]);
        }
    }
    Ok(Quotient {
        graph: q,
        modules: partition.to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeLabel {
    Leaf,
    Parallel,
    Series,
    Prime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdNode {
    pub label: NodeLabel,
    pub children: Vec<usize>,
    /// Sorted vertex set of the strong module.
    pub module: Vec<usize>,
    /// For prime nodes, adjacency between children (the node's quotient graph).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<Graph>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdTree {
    pub n: usize,
    pub nodes: Vec<MdNode>,
    /// `None` for the empty graph.
    pub root: Option<usize>,
}

impl MdTree {
    pub fn root_node(&self) -> Option<&MdNode> {
        self.root.map(|r| &self.nodes[r])
    }

    /// Rebuilds the graph from the tree alone: parallel nodes add nothing,
    /// series nodes join their children, prime nodes expand their quotient.
    pub fn reconstruct(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for node in &self.nodes {
            let kids: Vec<&Vec<usize>> = node
                .children
                .iter()
                .map(|&c| &self.nodes[c].module)
                .collect();
            let mut join = |a: &Vec<usize>, b: &Vec<usize>| {
                for &u in a {
                    for &v in b {
                        g.insert_unchecked(u, v);
                    }
                }
            };
            match node.label {
                NodeLabel::Series => {
                    for i in 0..kids.len() {
                        for j in i + 1..kids.len() {
                            join(kids[i], kids[j]);
                        }
                    }
                }
                NodeLabel::Prime => {
                    let q = node.quotient.as_ref().expect("prime node has a quotient");
                    for (i, j) in q.edges() {
                        join(kids[i], kids[j]);
                    }
                }
                NodeLabel::Leaf | NodeLabel::Parallel => {}
            }
        }
        g
    }
}

pub fn modular_decomposition(g: &Graph) -> MdTree {
    let mut tree = MdTree {
        n: g.n(),
        nodes: Vec::new(),
        root: None,
    };
    if g.n() > 0 {
        let all: Vec<usize> = (0..g.n()).collect();
        let root = build(g, all, &mut tree.nodes);
        tree.root = Some(root);
    }
    tree
}

/// Maximum number of children of a prime node; 0 when there is no prime node.
pub fn modular_width(tree: &MdTree) -> usize {
    tree.nodes
        .iter()
        .filter(|n| n.label == NodeLabel::Prime)
        .map(|n| n.children.len())
        .max()
        .unwrap_or(0)
}

fn build(g: &Graph, module: Vec<usize>, nodes: &mut Vec<MdNode>) -> usize {
    if module.len() == 1 {
        nodes.push(MdNode {
            label: NodeLabel::Leaf,
            children: Vec::new(),
            module,
            quotient: None,
        });
        return nodes.len() - 1;
    }
    let (sub, map) = g.induced_subgraph(&module).expect("module vertices are valid");
    let lift = |parts: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        parts
            .into_iter()
            .map(|p| {
                let mut q: Vec<usize> = p.into_iter().map(|v| map[v]).collect();
                q.sort_unstable();
                q
            })
            .collect()
    };
    let comps = sub.components();
    let (label, parts) = if comps.len() > 1 {
        (NodeLabel::Parallel, lift(comps))
    } else {
        let co = sub.complement().components();
        if co.len() > 1 {
            (NodeLabel::Series, lift(co))
        } else {
            (NodeLabel::Prime, lift(maximal_modules(&sub)))
        }
    };
    let quotient = (label == NodeLabel::Prime).then(|| {
        let mut q = Graph::new(parts.len());
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if g.has_edge(parts[i][0], parts[j][0]) {
                    q.insert_unchecked(i, j);
                }
            }
        }
        q
    });
    let children = parts.into_iter().map(|p| build(g, p, nodes)).collect();
    nodes.push(MdNode {
        label,
        children,
        module,
        quotient,
    });
    nodes.len() - 1
}

/// Smallest module of `g` containing `seed`, as a membership vector.
fn module_closure(g: &Graph, seed: &[usize]) -> Vec<bool> {
    let n = g.n();
    let mut inside = vec![false; n];
    let mut hits = vec![0usize; n];
    let mut size = 0;
    let mut queue: Vec<usize> = Vec::new();
    let add = |v: usize, inside: &mut Vec<bool>, hits: &mut Vec<usize>, size: &mut usize| {
        inside[v] = true;
        *size += 1;
        for &w in g.neighbors(v) {
            hits[w] += 1;
        }
    };
    for &v in seed {
        if !inside[v] {
            add(v, &mut inside, &mut hits, &mut size);
        }
    }
    loop {
        queue.clear();
        queue.extend((0..n).filter(|&x| !inside[x] && hits[x] > 0 && hits[x] < size));
        if queue.is_empty() {
            return inside;
        }
        for &x in &queue {
            if !inside[x] {
                add(x, &mut inside, &mut hits, &mut size);
            }
        }
    }
}

/// Maximal proper modules of a graph where both it and its complement are
/// connected; these are pairwise disjoint and cover the vertex set.
fn maximal_modules(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut owner = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if owner[v] != usize::MAX {
            continue;
        }
        let mut part = vec![false; n];
        part[v] = true;
        for u in 0..n {
            if u == v || part[u] {
                continue;
            }
            let closure = module_closure(g, &[v, u]);
            if closure.iter().all(|&b| b) {
                continue;
            }
            for (w, &b) in closure.iter().enumerate() {
                part[w] |= b;
            }
        }
        let members: Vec<usize> = (0..n).filter(|&w| part[w]).collect();
        for &w in &members {
            owner[w] = parts.len();
        }
        parts.push(members);
    }
    parts
}
