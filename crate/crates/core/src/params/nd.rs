use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Clique,
    Independent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NdClass {
    pub members: Vec<usize>,
    pub kind: ClassKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NdPartition {
    /// Ordered by smallest member.
    pub classes: Vec<NdClass>,
    pub width: usize,
}

/// Same type: `N(u) \ {v} = N(v) \ {u}`.
pub fn same_type(g: &Graph, u: usize, v: usize) -> bool {
    let strip = |a: usize, b: usize| g.neighbors(a).iter().copied().filter(move |&w| w != b);
    strip(u, v).eq(strip(v, u))
}

/// Minimum neighborhood partition: the classes of the same-type relation.
/// Singleton classes are labelled independent.
pub fn nd_partition(g: &Graph) -> NdPartition {
    let n = g.n();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<NdClass> = Vec::new();
    for v in 0..n {
        if class_of[v] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![v];
        class_of[v] = id;
        for u in v + 1..n {
            if class_of[u] == usize::MAX && same_type(g, v, u) {
                class_of[u] = id;
                members.push(u);
            }
        }
        let kind = if members.len() >= 2 && g.has_edge(members[0], members[1]) {
            ClassKind::Clique
        } else {
            ClassKind::Independent
        };
        classes.push(NdClass { members, kind });
    }
    let width = classes.len();
    NdPartition { classes, width }
}

impl NdPartition {
    pub fn parts(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|c| c.members.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::modules::is_module;

    /// Minimum width over all set partitions into clique/independent modules.
    fn brute_force_nd(g: &Graph) -> usize {
        fn rec(g: &Graph, v: usize, blocks: &mut Vec<Vec<usize>>, best: &mut usize) {
            if blocks.len() >= *best {
                return;
            }
            if v == g.n() {
                let ok = blocks.iter().all(|b| {
                    (g.is_clique(b) || g.is_independent(b)) && is_module(g, b)
                });
                if ok {
                    *best = blocks.len();
                }
                return;
            }
            for i in 0..blocks.len() {
                blocks[i].push(v);
                rec(g, v + 1, blocks, best);
                blocks[i].pop();
            }
            blocks.push(vec![v]);
            rec(g, v + 1, blocks, best);
            blocks.pop();
        }
        let mut best = g.n() + 1;
        rec(g, 0, &mut Vec::new(), &mut best);
        best.min(g.n())
    }

    #[test]
    fn named_examples() {
        let p = nd_partition(&Graph::complete(5));
        assert_eq!(p.width, 1);
        assert_eq!(p.classes[0].kind, ClassKind::Clique);

        assert_eq!(brute_force_nd(&Graph::cycle(5)), 5);
        assert_eq!(nd_partition(&Graph::cycle(5)).width, 5);

        let p = nd_partition(&Graph::complete_bipartite(2, 3));
        assert_eq!(p.width, 2);
        assert!(p.classes.iter().all(|c| c.kind == ClassKind::Independent));
        assert_eq!(p.classes[0].members, vec![0, 1]);
    }

    #[test]
    fn minimum_and_locally_minimal() {
        let mut r = crate::generate::rng(3);
        for trial in 0..50 {
            let n = 1 + trial % 8;
            let g = crate::generate::gnp(n, 0.5, &mut r).unwrap();
            let p = nd_partition(&g);
            assert_eq!(p.width, brute_force_nd(&g));
            for c in &p.classes {
                assert!(is_module(&g, &c.members));
                match c.kind {
                    ClassKind::Clique => assert!(g.is_clique(&c.members)),
                    ClassKind::Independent => assert!(g.is_independent(&c.members)),
                }
            }
            // Moving any vertex into another class breaks the module or kind property.
            for (i, from) in p.classes.iter().enumerate() {
                for &v in &from.members {
                    for (j, to) in p.classes.iter().enumerate() {
                        if i == j {
                            continue;
                        }
                        let mut target = to.members.clone();
                        target.push(v);
                        let rest: Vec<usize> =
                            from.members.iter().copied().filter(|&w| w != v).collect();
                        let ok = (g.is_clique(&target) || g.is_independent(&target))
                            && is_module(&g, &target)
                            && (rest.is_empty() || is_module(&g, &rest));
                        assert!(!ok, "moving {v} from class {i} to {j} kept validity");
                    }
                }
            }
        }
    }
}
