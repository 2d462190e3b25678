use rand::Rng;

use super::*;
use crate::cfa::{solve_cfa, validate_kernel_bounds};
use crate::generate::{cluster, rng, SuiteRng};
use crate::graph::Graph;
use crate::oracles::{decide, Limits, ProblemKind};
use crate::params::{TcCertificate, VcCertificate};

fn random_cluster(r: &mut SuiteRng, max_blocks: usize, max_block: usize, max_attach: usize) -> (Graph, TcCertificate) {
    let blocks: Vec<usize> = (0..r.gen_range(1..=max_blocks)).map(|_| r.gen_range(1..=max_block)).collect();
    let attach = r.gen_range(0..=max_attach);
    let g = cluster(&blocks, attach, r);
    let base: usize = blocks.iter().sum();
    let cover: Vec<usize> = (base..base + attach).collect();
    let x = TcCertificate::from_cover(&g, &cover).unwrap();
    (g, x)
}

#[test]
fn vc_kernel_small_example() {
    // Triangle {0,1,2} hanging off cover vertex 3, which also sees leaf 4.
    let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (3, 2), (3, 4)]).unwrap();
    let x = TcCertificate::from_cover(&g, &[3]).unwrap();
    let kern = vc_tc_kernel(&g, &x, 3).unwrap();
    let kern = kern.reduced().unwrap();
    // Collapse drops 1 and 2; then {0,3,4} is a star, fully decided by the LP.
    assert_eq!((kern.graph.n(), kern.k), (0, 0));
    assert!(vc_tc_kernel(&g, &x, 2).unwrap().is_no());
}

#[test]
fn vc_kernel_preserves_answer_and_size() {
    let mut r = rng(11);
    let limits = Limits::default();
    for _ in 0..200 {
        let (g, x) = random_cluster(&mut r, 4, 4, 4);
        for k in 0..=g.n() {
            let expected = decide(ProblemKind::VertexCover, &g, k, &limits).unwrap();
            match vc_tc_kernel(&g, &x, k).unwrap() {
                Outcome::Reduced(kern) => {
                    assert!(kern.graph.n() <= 2 * kern.k);
                    let got = decide(ProblemKind::VertexCover, &kern.graph, kern.k, &limits).unwrap();
                    assert_eq!(got, expected, "k = {k}");
                    for (i, &v) in kern.map.iter().enumerate() {
                        for (j, &w) in kern.map.iter().enumerate().skip(i + 1) {
                            assert_eq!(kern.graph.has_edge(i, j), g.has_edge(v, w));
                        }
                    }
                }
                Outcome::ImmediateNo { .. } => assert!(!expected, "k = {k}"),
            }
        }
    }
}

#[test]
fn is_kernel_preserves_answer() {
    let mut r = rng(12);
    let limits = Limits::default();
    for _ in 0..150 {
        let (g, x) = random_cluster(&mut r, 4, 4, 3);
        for k in 0..=g.n() + 1 {
            let expected = decide(ProblemKind::IndependentSet, &g, k, &limits).unwrap();
            match is_tc_kernel(&g, &x, k).unwrap() {
                Outcome::Reduced(kern) => {
                    let got = decide(ProblemKind::IndependentSet, &kern.graph, kern.k, &limits).unwrap();
                    assert_eq!(got, expected, "k = {k}");
                }
                Outcome::ImmediateNo { .. } => assert!(!expected),
            }
        }
    }
}

#[test]
fn oct_collapse_preserves_answer() {
    let mut r = rng(13);
    let limits = Limits::default();
    for _ in 0..150 {
        let (g, x) = random_cluster(&mut r, 3, 5, 3);
        for k in 0..=g.n() {
            let expected = decide(ProblemKind::OddCycleTransversal, &g, k, &limits).unwrap();
            match oct_tc_collapse(&g, &x, k).unwrap() {
                Outcome::Reduced(kern) => {
                    assert!(kern.graph.n() <= x.size() + 2 * x.cliques.len());
                    let got = decide(ProblemKind::OddCycleTransversal, &kern.graph, kern.k, &limits).unwrap();
                    assert_eq!(got, expected, "k = {k}");
                }
                Outcome::ImmediateNo { .. } => assert!(!expected),
            }
        }
    }
}

#[test]
fn clique_turing_matches_oracle() {
    let mut r = rng(14);
    let limits = Limits::unbounded();
    for _ in 0..150 {
        let (g, x) = random_cluster(&mut r, 4, 5, 4);
        for k in 0..=g.n() + 1 {
            let expected = decide(ProblemKind::Clique, &g, k, &limits).unwrap();
            let t = clique_tc_turing(&g, &x, k, |h, t| decide(ProblemKind::Clique, h, t, &limits)).unwrap();
            assert_eq!(t.answer, expected, "k = {k}");
            assert_eq!(t.queries.len(), x.cliques.len() + 1);
            assert!(t.max_query_size() <= x.size() + 1);
        }
    }
}

#[test]
fn clique_turing_block_larger_than_k() {
    let g = Graph::complete(5);
    let x = TcCertificate::from_cover(&g, &[]).unwrap();
    let t = clique_tc_turing(&g, &x, 3, |h, t| decide(ProblemKind::Clique, h, t, &Limits::default())).unwrap();
    assert!(t.answer);
    assert_eq!(t.queries[1].threshold, 0);
}

#[test]
fn tp_prepare_immediate_answers() {
    let g = Graph::complete(4);
    let x = TcCertificate::from_cover(&g, &[]).unwrap();
    assert!(tp_tc_prepare(&g, &x, 0).unwrap().is_no());
    // Two single vertices and a triangle: the singletons are good blocks, too many for tc = 1.
    let g = Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 0), (4, 0), (3, 5), (4, 5)]).unwrap();
    let x = TcCertificate::from_cover(&g, &[0, 5]).unwrap();
    assert!(tp_tc_prepare(&g, &x, 1).is_err());
    let x = TcCertificate::from_cover(&g, &[0]);
    assert!(x.is_err());
}

#[test]
fn tp_trimming_respects_window() {
    // K12 alone with tc = 1: the window is 4, so the block shrinks to 3.
    let g = Graph::complete(12);
    let x = TcCertificate::from_cover(&g, &[]).unwrap();
    let state = tp_tc_prepare(&g, &x, 1).unwrap();
    let state = state.reduced().unwrap();
    assert_eq!(state.graph.n(), 3);
    assert_eq!(state.trimmed_vertices, 9);
    assert_eq!(state.map, vec![0, 1, 2]);
}

#[test]
fn tp_compression_matches_oracle() {
    let mut r = rng(15);
    let limits = Limits::default();
    let mut yes = 0;
    let mut checked = 0;
    while checked < 120 {
        let (g, x) = random_cluster(&mut r, 3, 6, 3);
        if g.n() % 3 != 0 || g.n() > 18 {
            continue;
        }
        checked += 1;
        let tc = x.size() + r.gen_range(0..=1);
        let expected = decide(ProblemKind::TrianglePartition, &g, g.n(), &limits).unwrap();
        yes += usize::from(expected);
        let comp = match tp_tc_compress(&g, &x, tc) {
            Ok(c) => c,
            Err(crate::Error::Resource(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        match &comp.outcome {
            Outcome::ImmediateNo { .. } => assert!(!expected),
            Outcome::Reduced(kernel) => {
                let state = comp.state.as_ref().unwrap();
                assert_eq!(tip_claim_holds(state), expected);
                validate_kernel_bounds(kernel).unwrap();
                let got = solve_cfa(kernel, Some(10_000)).unwrap().is_some();
                assert_eq!(got, expected);
                if state.x.len() <= 8 {
                    let raw = tp_tc_raw_instance(state);
                    assert_eq!(raw.buyers.len(), comp.raw_buyers);
                    assert_eq!(solve_cfa(&raw, Some(10_000)).unwrap().is_some(), expected);
                }
            }
        }
    }
    assert!(yes > 5, "too few yes-instances ({yes})");
}

#[test]
fn tp_vc_trivial() {
    let g = Graph::complete_bipartite(2, 4);
    let vc = VcCertificate::new(vec![0, 1]);
    assert!(tp_vc_trivial_kernel(&g, &vc).unwrap().is_no());
    let g = Graph::complete(6);
    let vc = VcCertificate::new((0..5).collect());
    let out = tp_vc_trivial_kernel(&g, &vc).unwrap();
    assert_eq!(out.reduced().unwrap().1, 6);
    assert!(tp_vc_trivial_kernel(&g, &VcCertificate::new(vec![0])).is_err());
}
