use rand::Rng;

use super::*;
use crate::generate::rng;

fn lim() -> Limits {
    Limits::unbounded()
}

fn value(inst: &ProblemInstance) -> bool {
    solve(inst, &lim()).unwrap().value
}

fn threshold(graph: Graph, k: usize) -> ComposeInput {
    ComposeInput::Threshold { graph, k }
}

fn refinement(graph: Graph, v: Vec<usize>) -> ComposeInput {
    ComposeInput::Refinement {
        graph,
        solution: Witness::Vertices(v),
    }
}

fn padded(g: &Graph, extra: usize) -> Graph {
    let parts = [g.clone(), Graph::new(extra)];
    Graph::disjoint_union(&parts).unwrap().0
}

#[test]
fn clique_or_examples() {
    let out = compose(Composition::Clique, &[threshold(Graph::complete(3), 3), threshold(Graph::path(3), 3)]).unwrap();
    assert_eq!(out.semantics, Semantics::Or);
    assert!(value(&out.instance));
    let out = compose(Composition::Clique, &[threshold(Graph::path(3), 3), threshold(Graph::path(3), 3)]).unwrap();
    assert!(!value(&out.instance));
    assert!(compose(Composition::Clique, &[threshold(Graph::path(3), 3), threshold(Graph::path(3), 2)]).is_err());
    assert!(compose(Composition::Clique, &[]).is_err());
}

#[test]
fn fvs_refinement_example() {
    let k3 = || refinement(Graph::complete(3), vec![0, 1, 2]);
    let out = compose(Composition::FeedbackVertexSet, &[k3(), k3()]).unwrap();
    assert_eq!(out.instance.k(), Some(5));
    assert!(value(&out.instance));
}

#[test]
fn chromatic_and_examples() {
    // Equal vertex counts are part of the relation, so K3 is padded to C5's size.
    let out = compose(
        Composition::ChromaticNumber,
        &[threshold(padded(&Graph::complete(3), 2), 3), threshold(Graph::cycle(5), 3)],
    )
    .unwrap();
    assert_eq!(out.semantics, Semantics::And);
    assert!(value(&out.instance));
    let out = compose(
        Composition::ChromaticNumber,
        &[threshold(Graph::complete(4), 3), threshold(padded(&Graph::complete(3), 1), 3)],
    )
    .unwrap();
    assert!(!value(&out.instance));
    let out = compose(Composition::ChromaticNumber, &[threshold(Graph::cycle(5), 2)]).unwrap();
    assert!(!value(&out.instance));
}

#[test]
fn hp_and_examples() {
    let p2 = || ComposeInput::Plain { graph: Graph::path(2) };
    let out = compose(Composition::HamiltonianPath, &[p2(), p2()]).unwrap();
    assert_eq!(out.instance.graph_ref().unwrap().n(), 5);
    assert_eq!(out.provenance[4], None);
    assert!(value(&out.instance));
    let out = compose(Composition::HamiltonianPath, &[p2(), ComposeInput::Plain { graph: Graph::new(2) }]).unwrap();
    assert!(!value(&out.instance));
    let out = compose(Composition::HamiltonianPath, &[ComposeInput::Plain { graph: Graph::path(3) }]).unwrap();
    assert_eq!(out.instance.graph_ref().unwrap().n(), 3);
    assert!(value(&out.instance));
}

#[test]
fn cvc_or_examples() {
    let k2 = || refinement(Graph::complete(2), vec![0, 1]);
    let out = compose(Composition::ConnectedVertexCover, &[k2(), k2()]).unwrap();
    assert_eq!(out.instance.k(), Some(4));
    assert!(value(&out.instance));
    let k3 = || refinement(Graph::complete(3), vec![0, 1, 2]);
    let out = compose(Composition::ConnectedVertexCover, &[k3(), k3()]).unwrap();
    assert!(value(&out.instance));
    let bad = refinement(Graph::path(3), vec![0]);
    assert!(compose(Composition::ConnectedVertexCover, &[bad]).is_err());
}

#[test]
fn buckets() {
    let inputs = vec![
        threshold(Graph::path(3), 2),
        threshold(Graph::complete(4), 2),
        threshold(Graph::cycle(3), 2),
        ComposeInput::Plain { graph: Graph::path(3) },
    ];
    let b = bucket_by_relation(Composition::Clique, &inputs);
    assert_eq!(b.classes.len(), 2);
    assert_eq!(b.classes[0].1, vec![0, 2]);
    assert_eq!(b.bad, vec![3]);
    let same = vec![threshold(Graph::path(3), 2); 3];
    assert_eq!(bucket_by_relation(Composition::Clique, &same).classes.len(), 1);
}

#[test]
fn greedy_dominating_is_valid() {
    let mut r = rng(30);
    for _ in 0..50 {
        let g = crate::generate::gnp(9, 0.3, &mut r).unwrap();
        let d = greedy_dominating_set(&g);
        let inst = ProblemInstance::graph(ProblemKind::DominatingSet, g, d.len()).unwrap();
        assert!(check_witness(&inst, &Witness::Vertices(d)).unwrap());
    }
}

#[test]
fn random_compositions_agree() {
    let mut r = rng(31);
    for comp in Composition::ALL {
        let mut seen = [false; 2];
        for trial in 0..12 {
            let t = trial % 3 + 1;
            let n = r.gen_range(3..=6);
            let inputs = sample_inputs(comp, t, n, &mut r, &lim()).unwrap();
            let out = compose(comp, &inputs).unwrap();
            let answers: Vec<bool> = inputs.iter().map(|x| value(&x.question(comp).unwrap())).collect();
            let expected = out.semantics.combine(&answers);
            assert_eq!(value(&out.instance), expected, "{comp} {inputs:?}");
            seen[usize::from(expected)] = true;
            let g = out.instance.graph_ref().unwrap();
            assert!(modular_width_of(g) <= out.mw_bound, "{comp}");
            assert!(g.m() <= out.edge_bound());
        }
        assert!(seen[0] || seen[1]);
    }
}
