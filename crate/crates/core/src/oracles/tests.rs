use super::*;
use crate::generate::{self, rng};
use rand::Rng;

fn plain(kind: ProblemKind, g: &Graph, k: usize) -> ProblemInstance {
    ProblemInstance::graph(kind, g.clone(), k).unwrap()
}

fn ans(inst: &ProblemInstance) -> Answer {
    let a = solve(inst, &Limits::default()).unwrap();
    if let Some(w) = &a.witness {
        assert!(check_witness(inst, w).unwrap(), "{:?} rejected for {inst:?}", w);
    }
    a
}

fn yes(kind: ProblemKind, g: &Graph, k: usize) -> bool {
    ans(&plain(kind, g, k)).value
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        if k == 0 || !cover::next_combination(&mut idx, n) {
            return out;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(cur, n, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// Naive search: every candidate witness of the right shape, filtered by the checker.
fn exists_witness(inst: &ProblemInstance) -> bool {
    use ProblemKind as K;
    let g = inst.graph_ref().unwrap();
    let n = g.n();
    let ok = |w: Witness| check_witness(inst, &w).unwrap();
    match inst.kind {
        K::ChromaticNumber => {
            let k = inst.k().unwrap();
            if k == 0 {
                return n == 0;
            }
            let total = k.pow(n as u32);
            (0..total).any(|mut code| {
                let c: Vec<usize> = (0..n)
                    .map(|_| {
                        let x = code % k;
                        code /= k;
                        x
                    })
                    .collect();
                ok(Witness::Coloring(c))
            })
        }
        K::HamiltonianCycle | K::HamiltonianPath => {
            permutations(n).into_iter().any(|p| ok(Witness::Order(p)))
        }
        K::InducedMatching | K::SteinerTree => {
            let edges: Vec<(usize, usize)> = g.edges().collect();
            (0..=edges.len().min(5)).any(|s| {
                combos(edges.len(), s)
                    .into_iter()
                    .any(|c| ok(Witness::Edges(c.iter().map(|&i| edges[i]).collect())))
            })
        }
        K::TrianglePartition => {
            let tris: Vec<[usize; 3]> = combos(n, 3)
                .into_iter()
                .map(|c| [c[0], c[1], c[2]])
                .filter(|t| g.is_clique(t))
                .collect();
            combos(tris.len(), n / 3)
                .into_iter()
                .any(|c| ok(Witness::Triangles(c.iter().map(|&i| tris[i]).collect())))
        }
        _ => (0u32..1 << n).any(|m| {
            ok(Witness::Vertices((0..n).filter(|&v| m >> v & 1 == 1).collect()))
        }),
    }
}

#[test]
fn named_examples() {
    assert!(yes(ProblemKind::Clique, &Graph::complete(4), 4));
    let a = ans(&plain(ProblemKind::Clique, &Graph::complete(4), 4));
    assert_eq!(a.witness, Some(Witness::Vertices(vec![0, 1, 2, 3])));
    assert!(!yes(ProblemKind::TrianglePartition, &Graph::cycle(6), 6));
    assert!(!yes(ProblemKind::ChromaticNumber, &Graph::cycle(5), 2));
    assert!(yes(ProblemKind::ChromaticNumber, &Graph::cycle(5), 3));
    let f = CnfFormula::new(1, vec![vec![crate::Lit::pos(0)], vec![crate::Lit::neg(0)]]).unwrap();
    assert!(!ans(&ProblemInstance::cnf(f)).value);
    assert!(!yes(ProblemKind::Clique, &Graph::complete(5), 99));
    assert_eq!(min_by(ProblemKind::VertexCover, &Graph::petersen()), 6);
    assert_eq!(min_by(ProblemKind::FeedbackVertexSet, &Graph::petersen()), 3);
    assert_eq!(min_by(ProblemKind::OddCycleTransversal, &Graph::petersen()), 3);
    assert_eq!(min_by(ProblemKind::DominatingSet, &Graph::petersen()), 3);
    assert!(!yes(ProblemKind::HamiltonianCycle, &Graph::petersen(), 0));
    assert!(yes(ProblemKind::HamiltonianPath, &Graph::petersen(), 0));
    assert!(!yes(ProblemKind::ChromaticNumber, &Graph::petersen(), 2));
    assert!(yes(ProblemKind::ChromaticNumber, &Graph::petersen(), 3));
}

fn min_by(kind: ProblemKind, g: &Graph) -> usize {
    (0..=g.n()).find(|&k| yes(kind, g, k)).unwrap()
}

#[test]
fn witness_checker_examples() {
    let c5 = plain(ProblemKind::HamiltonianCycle, &Graph::cycle(5), 0);
    assert!(check_witness(&c5, &Witness::Order(vec![0, 1, 2, 3, 4])).unwrap());
    assert!(!check_witness(&c5, &Witness::Order(vec![0, 2, 1, 3, 4])).unwrap());
    let p4 = plain(ProblemKind::InducedMatching, &Graph::path(4), 2);
    assert!(!check_witness(&p4, &Witness::Edges(vec![(0, 1), (2, 3)])).unwrap());
    let st = ProblemInstance::steiner(Graph::path(3), vec![0, 2], 2).unwrap();
    assert!(!check_witness(&st, &Witness::Edges(vec![(0, 1)])).unwrap());
    assert!(check_witness(&st, &Witness::Edges(vec![(0, 1), (1, 2)])).unwrap());
    assert!(matches!(
        check_witness(&c5, &Witness::Vertices(vec![0])),
        Err(Error::Argument(_))
    ));
}

#[test]
fn guardrails() {
    let big = Graph::path(21);
    let inst = plain(ProblemKind::VertexCover, &big, 10);
    assert!(matches!(solve(&inst, &Limits::default()), Err(Error::Resource(_))));
    assert!(solve(&inst, &Limits::unbounded()).unwrap().value);
    let lim = Limits::parse_overrides("n=30, vars=5").unwrap();
    assert_eq!((lim.max_n, lim.max_vars, lim.max_buyers), (30, 5, 12));
    assert!(Limits::parse_overrides("q=1").is_err());
    assert!(ProblemInstance::multicolored_clique(Graph::path(2), vec![0, 3], 2).is_err());
}

#[test]
fn agrees_with_naive_enumeration() {
    let mut r = rng(11);
    for trial in 0..60 {
        let n = 1 + trial % 7;
        let p = r.gen_range(0.2..0.8);
        let g = generate::gnp(n, p, &mut r).unwrap();
        for kind in ProblemKind::ALL.into_iter().filter(|k| k.is_plain_graph()) {
            let ks: Vec<usize> = match kind {
                ProblemKind::HamiltonianCycle
                | ProblemKind::HamiltonianPath
                | ProblemKind::TrianglePartition => vec![n],
                ProblemKind::ChromaticNumber => (0..=n.min(4)).collect(),
                ProblemKind::InducedMatching => (0..=3).collect(),
                _ => (0..=n).collect(),
            };
            for k in ks {
                let inst = plain(kind, &g, k);
                assert_eq!(ans(&inst).value, exists_witness(&inst), "{kind} k={k} on {g:?}");
            }
        }
        let terminals: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.4)).collect();
        for k in 0..=4 {
            let inst = ProblemInstance::steiner(g.clone(), terminals.clone(), k).unwrap();
            assert_eq!(ans(&inst).value, exists_witness(&inst), "steiner k={k} on {g:?}");
        }
        let colors = r.gen_range(1..=3);
        let coloring = generate::coloring(n, colors, &mut r);
        let inst = ProblemInstance::multicolored_clique(g.clone(), coloring, colors).unwrap();
        assert_eq!(ans(&inst).value, exists_witness(&inst));
    }
}

#[test]
fn complement_and_cover_dualities() {
    let mut r = rng(4);
    for _ in 0..40 {
        let n = r.gen_range(1..=12);
        let g = generate::gnp(n, 0.4, &mut r).unwrap();
        for k in 0..=n {
            let clique = yes(ProblemKind::Clique, &g, k);
            assert_eq!(clique, yes(ProblemKind::IndependentSet, &g.complement(), k));
            let is = yes(ProblemKind::IndependentSet, &g, k);
            assert_eq!(is, yes(ProblemKind::VertexCover, &g, n - k));
        }
    }
}

#[test]
fn monotone_in_k() {
    use ProblemKind as K;
    let mut r = rng(8);
    for _ in 0..20 {
        let n = r.gen_range(2..=10);
        let g = generate::gnp(n, 0.35, &mut r).unwrap();
        for kind in [K::Clique, K::IndependentSet, K::InducedMatching] {
            let v: Vec<bool> = (0..=n).map(|k| yes(kind, &g, k)).collect();
            assert!(v.windows(2).all(|w| w[0] || !w[1]), "{kind}");
        }
        for kind in [
            K::VertexCover,
            K::DominatingSet,
            K::ConnectedDominatingSet,
            K::IndependentDominatingSet,
            K::ConnectedVertexCover,
            K::FeedbackVertexSet,
            K::OddCycleTransversal,
            K::ChromaticNumber,
        ] {
            let v: Vec<bool> = (0..=n).map(|k| yes(kind, &g, k)).collect();
            assert!(v.windows(2).all(|w| !w[0] || w[1]), "{kind}");
        }
    }
}

#[test]
fn json_round_trip() {
    let inst = ProblemInstance::steiner(Graph::cycle(4), vec![0, 2], 2).unwrap();
    assert_eq!(ProblemInstance::from_json(&inst.to_json()).unwrap(), inst);
    for kind in ProblemKind::ALL {
        assert_eq!(kind.name().parse::<ProblemKind>().unwrap(), kind);
    }
}

#[test]
fn larger_instances_with_override() {
    let lim = Limits::unbounded();
    let g = Graph::cycle(40);
    let inst = plain(ProblemKind::HamiltonianCycle, &g, 0);
    let a = solve(&inst, &lim).unwrap();
    assert!(a.value && check_witness(&inst, a.witness.as_ref().unwrap()).unwrap());
    let inst = plain(ProblemKind::FeedbackVertexSet, &g, 1);
    assert!(solve(&inst, &lim).unwrap().value);
    let inst = plain(ProblemKind::InducedMatching, &g, 14);
    assert!(!solve(&inst, &lim).unwrap().value);
    let inst = plain(ProblemKind::InducedMatching, &g, 13);
    assert!(solve(&inst, &lim).unwrap().value);
}
