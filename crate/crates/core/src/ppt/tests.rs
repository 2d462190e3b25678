use std::time::Instant;

use rand::Rng;

use super::*;
use crate::generate::{cnf, coloring, gnp, multipartite, rng};
use crate::oracles::{solve, Limits};

fn lim() -> Limits {
    Limits::unbounded()
}

fn value(inst: &ProblemInstance) -> bool {
    solve(inst, &lim()).unwrap().value
}

fn cnf_of(vars: usize, clauses: Vec<Vec<i64>>) -> CnfFormula {
    let clauses = clauses
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|l| if l > 0 { Lit::pos(l as usize - 1) } else { Lit::neg((-l) as usize - 1) })
                .collect()
        })
        .collect();
    CnfFormula::new(vars, clauses).unwrap()
}

fn agree_sat(out: &PptOutput, f: &CnfFormula) {
    out.validate().unwrap();
    assert_eq!(value(&out.instance), value(&ProblemInstance::cnf(f.clone())));
}

#[test]
fn mcc_examples() {
    let g = Graph::from_edges(2, [(0, 1)]).unwrap();
    let out = mcc_to_induced_matching(&g, &[0, 1], 2).unwrap();
    out.validate().unwrap();
    assert_eq!(out.instance.k(), Some(1));
    assert_eq!(out.instance.graph_ref().unwrap().n(), 2);
    assert!(value(&out.instance));

    let tri = Graph::complete(3);
    let out = mcc_to_induced_matching(&tri, &[0, 1, 2], 3).unwrap();
    out.validate().unwrap();
    assert!(value(&out.instance));

    // Tripartite without a triangle: a 6-cycle through the three classes.
    let c6 = Graph::cycle(6);
    let colors = [0, 1, 2, 0, 1, 2];
    let mcc = ProblemInstance::multicolored_clique(c6.clone(), colors.to_vec(), 3).unwrap();
    assert!(!value(&mcc));
    let out = mcc_to_induced_matching(&c6, &colors, 3).unwrap();
    out.validate().unwrap();
    assert!(!value(&out.instance));

    assert!(mcc_to_induced_matching(&tri, &[0, 1], 3).is_err());
    assert!(mcc_to_induced_matching(&tri, &[0, 1, 3], 3).is_err());
}

#[test]
fn mcc_random_agreement() {
    let mut r = rng(21);
    let start = Instant::now();
    for _ in 0..60 {
        let n = r.gen_range(2..=6);
        let k = r.gen_range(2..=3);
        let colors = coloring(n, k, &mut r);
        let g = multipartite(&colors, 0.6, &mut r).unwrap();
        let mcc = ProblemInstance::multicolored_clique(g.clone(), colors.clone(), k).unwrap();
        let out = mcc_to_induced_matching(&g, &colors, k).unwrap();
        out.validate().unwrap();
        assert_eq!(value(&out.instance), value(&mcc), "{g:?} {colors:?}");
    }
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn chromatic_examples() {
    let f = cnf_of(1, vec![vec![1]]);
    let out = sat_to_chromatic(&f);
    assert_eq!(out.instance.k(), Some(2));
    assert!(value(&out.instance));
    agree_sat(&out, &f);
    let f = cnf_of(1, vec![vec![1], vec![-1]]);
    let out = sat_to_chromatic(&f);
    assert!(!value(&out.instance));
    agree_sat(&out, &f);
}

#[test]
fn steiner_and_cds_examples() {
    let yes = cnf_of(1, vec![vec![1]]);
    let no = cnf_of(1, vec![vec![1], vec![-1]]);
    let out = sat_to_steiner(&yes);
    assert_eq!(out.instance.k(), Some(3));
    assert!(value(&out.instance));
    agree_sat(&sat_to_steiner(&no), &no);
    let out = sat_to_cds(&yes, CdsVariant::Connected);
    assert_eq!(out.instance.k(), Some(2));
    assert!(value(&out.instance));
    agree_sat(&sat_to_cds(&no, CdsVariant::Connected), &no);
    let out = sat_to_cds(&yes, CdsVariant::Independent);
    assert_eq!(out.instance.k(), Some(1));
    assert!(value(&out.instance));
    agree_sat(&sat_to_cds(&no, CdsVariant::Independent), &no);
}

#[test]
fn sat_random_agreement() {
    let mut r = rng(22);
    for _ in 0..80 {
        let vars = r.gen_range(1..=3);
        let m = r.gen_range(0..=4);
        let f = cnf(vars, m, 3, &mut r).unwrap();
        agree_sat(&sat_to_chromatic(&f), &f);
        agree_sat(&sat_to_steiner(&f), &f);
        agree_sat(&sat_to_cds(&f, CdsVariant::Connected), &f);
        agree_sat(&sat_to_cds(&f, CdsVariant::Independent), &f);
    }
}

fn refinement_agrees(kind: ProblemKind, out: &PptOutput, g: &Graph, k: usize) {
    out.validate().unwrap();
    let original = value(&ProblemInstance::graph(kind, g.clone(), k).unwrap());
    assert_eq!(value(&out.instance), original, "{kind} k={k} {g:?}");
}

#[test]
fn refinement_examples() {
    let k2 = Graph::complete(2);
    assert!(refine_vc(&k2, 1).is_err());
    let out = refine_vc(&Graph::complete(3), 1).unwrap();
    assert!(!value(&out.instance));
    refinement_agrees(ProblemKind::VertexCover, &out, &Graph::complete(3), 1);
    let p3 = Graph::path(3);
    let out = refine_vc(&p3, 1).unwrap();
    assert!(value(&out.instance));
    refinement_agrees(ProblemKind::VertexCover, &out, &p3, 1);
    let p4 = Graph::path(4);
    let out = refine_vc(&p4, 2).unwrap();
    assert!(value(&out.instance));

    let out = refine_fvs(&Graph::complete(3), 1).unwrap();
    assert!(out.instance.graph_ref().unwrap().n() == 3 + 1 + 3);
    assert!(value(&out.instance));
    let out = refine_fvs(&Graph::complete(4), 1).unwrap();
    assert!(!value(&out.instance));
    refinement_agrees(ProblemKind::FeedbackVertexSet, &refine_fvs(&Graph::cycle(4), 1).unwrap(), &Graph::cycle(4), 1);

    refinement_agrees(ProblemKind::OddCycleTransversal, &refine_oct(&Graph::complete(3), 1).unwrap(), &Graph::complete(3), 1);
    let out = refine_oct(&Graph::complete(5), 1).unwrap();
    assert!(!value(&out.instance));
    let out = refine_oct(&Graph::cycle(5), 1).unwrap();
    assert!(value(&out.instance));

    let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert!(value(&refine_im(&two, 2).unwrap().instance));
    assert!(!value(&refine_im(&Graph::complete(4), 2).unwrap().instance));
    assert!(value(&refine_im(&Graph::path(5), 2).unwrap().instance));
    assert!(refine_im(&two, 1).is_err());
    assert!(refine_im(&two, 3).is_err());
}

#[test]
fn refinement_random_agreement() {
    let mut r = rng(23);
    for _ in 0..40 {
        let n = r.gen_range(3..=8);
        let g = gnp(n, r.gen_range(0.2..0.7), &mut r).unwrap();
        let k = r.gen_range(0..n - 1);
        refinement_agrees(ProblemKind::VertexCover, &refine_vc(&g, k).unwrap(), &g, k);
        refinement_agrees(ProblemKind::FeedbackVertexSet, &refine_fvs(&g, k).unwrap(), &g, k);
        refinement_agrees(ProblemKind::OddCycleTransversal, &refine_oct(&g, k).unwrap(), &g, k);
        if n >= 4 {
            let k = r.gen_range(2..=n / 2);
            refinement_agrees(ProblemKind::InducedMatching, &refine_im(&g, k).unwrap(), &g, k);
        }
    }
}

#[test]
fn hp_to_hc_examples() {
    let out = hp_to_hc(&Graph::path(3));
    out.validate().unwrap();
    assert!(value(&out.instance));
    assert!(!value(&hp_to_hc(&Graph::new(2)).instance));
    let mut r = rng(24);
    for _ in 0..60 {
        let n = r.gen_range(1..=8);
        let g = gnp(n, 0.4, &mut r).unwrap();
        let hp = value(&ProblemInstance::graph(ProblemKind::HamiltonianPath, g.clone(), 0).unwrap());
        assert_eq!(value(&hp_to_hc(&g).instance), hp, "{g:?}");
    }
}

#[test]
fn apply_dispatch() {
    let f = cnf_of(1, vec![vec![1]]);
    let out = Reduction::SatToSteiner.apply(&ProblemInstance::cnf(f)).unwrap();
    assert_eq!(out.instance.kind, ProblemKind::SteinerTree);
    let g = ProblemInstance::graph(ProblemKind::Clique, Graph::path(3), 1).unwrap();
    assert!(Reduction::RefineVc.apply(&g).is_err());
    for r in Reduction::ALL {
        assert_eq!(r.name().parse::<Reduction>().unwrap(), r);
    }
}
