use std::collections::BTreeSet;

use super::*;
use crate::graph::Graph;
use crate::params::compute_all;

fn counts(cfg: &SuiteConfig, names: &[&str]) -> SuiteReport {
    run_suite(cfg, names).unwrap()
}

#[test]
fn registry_is_consistent() {
    let names: BTreeSet<&str> = REGISTRY.iter().map(|t| t.name).collect();
    assert_eq!(names.len(), REGISTRY.len());
    for comp in Composition::ALL {
        let t = REGISTRY
            .iter()
            .find(|t| t.name.starts_with("compose-") && {
                let mut r = rng(0);
                matches!((t.generate)(&mut r, SizeRange::new(3, 3), &Limits::unbounded()),
                    Ok(Case::Many { composition, .. }) if composition == comp)
            })
            .unwrap();
        let expected = match comp.semantics() {
            crate::compose::Semantics::And => Relation::And,
            crate::compose::Semantics::Or => Relation::Or,
        };
        assert_eq!(t.relation, expected, "{}", t.name);
    }
    assert!(select_targets(&["nope"]).is_err());
    assert_eq!(select_targets(&["all"]).unwrap().len(), REGISTRY.len());
}

#[test]
fn refine_vc_fifty_trials() {
    let report = counts(&SuiteConfig::new(1, 50), &["refine-vc"]);
    let s = &report.summaries[0];
    assert_eq!((s.passed, s.failed, s.skipped), (50, 0, 0));
    assert!(report.passed);
}

#[test]
fn zero_trials_is_an_empty_pass() {
    let report = counts(&SuiteConfig::new(1, 0), &["all"]);
    assert!(report.reports.is_empty());
    assert!(report.passed);
    assert_eq!(report.schema, 1);
}

#[test]
fn reports_are_deterministic() {
    let cfg = SuiteConfig::new(9, 6);
    let names = ["sat-to-steiner", "vc-tc", "compose-fvs", "nd-compress"];
    let a = counts(&cfg, &names).to_json(false);
    let b = counts(&cfg, &names).to_json(false);
    assert_eq!(a, b);
    assert!(!a.contains("elapsed_us"));
    assert!(counts(&cfg, &names).to_json(true).contains("elapsed_us"));
}

#[test]
fn summary_totals_match() {
    let mut cfg = SuiteConfig::new(4, 12);
    // Tight guardrails force skips.
    cfg.limits = Limits::parse_overrides("n=6").unwrap();
    let report = counts(&cfg, &["sat-to-chromatic", "refine-fvs"]);
    let mut skipped = 0;
    for s in &report.summaries {
        assert_eq!(s.passed + s.failed + s.skipped, s.trials);
        skipped += s.skipped;
    }
    assert!(skipped > 0);
    for r in report.reports.iter().filter(|r| r.skipped.is_some()) {
        assert!(!r.skipped.as_ref().unwrap().is_empty());
        assert!(!r.pass);
    }
}

fn flip_first_edge(case: &Case, limits: &Limits) -> Result<Transformed> {
    let mut t = (find_target("refine-vc").unwrap().transform)(case, limits)?;
    if let Verdict::Instance(inst) = &t.verdict {
        let g = inst.graph_ref().unwrap();
        let edges: Vec<(usize, usize)> = if g.has_edge(0, 1) {
            g.edges().filter(|&e| e != (0, 1)).collect()
        } else {
            g.edges().chain([(0, 1)]).collect()
        };
        t.verdict = Verdict::Instance(inst.with_graph(Graph::from_edges(g.n(), edges)?)?);
    }
    Ok(t)
}

#[test]
fn corrupted_transformation_is_caught_and_minimized() {
    let mut broken = find_target("refine-vc").unwrap();
    broken.name = "refine-vc-corrupted";
    broken.transform = flip_first_edge;
    let cfg = SuiteConfig::new(1, 50);
    let report = run_targets(&cfg, &[broken]);
    assert!(!report.passed);
    let s = &report.summaries[0];
    assert!(s.failed > 0);
    let cx = s.counterexample.as_ref().unwrap();
    assert!(!cx.report.pass);
    assert_eq!(cx.path.len(), cx.steps.len() + 1);
    for case in &cx.path {
        assert!(evaluate(&broken, case, cx.trial, &cfg.limits).counterexample());
    }
    let size = |c: &Case| match c {
        Case::Single { instance } => instance.graph_ref().unwrap().n(),
        Case::Many { .. } => unreachable!(),
    };
    assert!(size(&cx.minimized) <= size(&cx.original));
    // Local minimum: no single deletion keeps the failure.
    if cx.steps.len() < SHRINK_STEPS {
        for (_, c) in cx.minimized.shrink_candidates() {
            assert!(!evaluate(&broken, &c, cx.trial, &cfg.limits).counterexample());
        }
    }
}

#[test]
fn every_target_runs() {
    let report = counts(&SuiteConfig::new(3, 4), &["all"]);
    for s in &report.summaries {
        assert_eq!(s.failed, 0, "{}: {:?}", s.target, s.counterexample);
    }
}

#[test]
fn shrink_candidates_cover_each_payload() {
    let f = crate::generate::cnf(3, 4, 3, &mut rng(2)).unwrap();
    let c = Case::Single { instance: ProblemInstance::cnf(f) };
    assert_eq!(c.shrink_candidates().len(), 4);
    let inst = ProblemInstance::steiner(Graph::path(4), vec![0, 3], 3).unwrap();
    let c = Case::Single { instance: inst };
    let cands = c.shrink_candidates();
    assert_eq!(cands.len(), 4);
    match &cands[0].1 {
        Case::Single { instance } => match &instance.payload {
            Payload::Steiner { terminals, .. } => assert_eq!(terminals, &vec![2]),
            _ => unreachable!(),
        },
        _ => unreachable!(),
    }
}

#[test]
fn isomorphism_class_counts() {
    let levels = graphs_up_to_isomorphism(6);
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
}

#[test]
fn sweep_families_and_small_corpus() {
    for n in 1..=6 {
        let p = compute_all(&Graph::complete(n), false).unwrap();
        assert_eq!((p.vc, p.tc, p.nd, p.mw), (n - 1, 0, 1, 0));
    }
    for m in 2..=6 {
        let p = compute_all(&Graph::complete_bipartite(1, m), false).unwrap();
        assert_eq!((p.vc, p.nd), (1, 2));
    }
    let mut cfg = SuiteConfig::new(5, 60);
    cfg.sizes.insert(sweep::EXHAUSTIVE_KEY.into(), SizeRange::new(0, 5));
    let report = param_sweep(&cfg).unwrap();
    assert!(report.passed, "{:?}", report.violations);
    assert_eq!(report.graphs, 1 + 1 + 2 + 4 + 11 + 34 + 60);
    assert!(report.max_nd_ratio <= 1.0);
    assert_eq!(report.to_json(), param_sweep(&cfg).unwrap().to_json());
}
