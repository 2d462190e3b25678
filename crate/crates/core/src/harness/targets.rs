//! The static registry of verified transformations.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Case, Relation, SizeRange, Transformed, Verdict};
use crate::cfa::{kernelize_cfa, random_instance, validate_kernel_bounds};
use crate::compose::{compose, modular_width_of, sample_inputs, Composition};
use crate::error::{Error, Result};
use crate::generate::{cluster, cnf, coloring, gnp, multipartite, split_like, SuiteRng};
use crate::graph::{are_isomorphic, Graph};
use crate::kernels::{
    clique_tc_turing, is_tc_kernel, oct_tc_collapse, tip_claim_holds, tp_tc_compress,
    tp_vc_trivial_kernel, vc_tc_kernel, Outcome, TcKernel,
};
use crate::ndcomp::{decode_instance, encode_instance, QuotientEncoding, ND_KINDS};
use crate::oracles::{decide, Limits, Payload, ProblemInstance, ProblemKind};
use crate::params::{twin_cover_exact, vertex_cover_exact, TcCertificate};
use crate::ppt::Reduction;

pub type Generator = fn(&mut SuiteRng, SizeRange, &Limits) -> Result<Case>;
pub type Transform = fn(&Case, &Limits) -> Result<Transformed>;

#[derive(Clone, Copy, Debug)]
pub struct Target {
    pub name: &'static str,
    pub relation: Relation,
    /// Default range of the main size parameter.
    pub sizes: SizeRange,
    pub generate: Generator,
    pub transform: Transform,
}

pub fn find_target(name: &str) -> Option<Target> {
    REGISTRY.iter().copied().find(|t| t.name == name)
}

const fn target(name: &'static str, relation: Relation, sizes: (usize, usize), generate: Generator, transform: Transform) -> Target {
    Target {
        name,
        relation,
        sizes: SizeRange::new(sizes.0, sizes.1),
        generate,
        transform,
    }
}

use Relation::{And, Equal, Or};

pub static REGISTRY: [Target; 26] = [
    target("mcc-to-im", Equal, (2, 6), gen_mcc, ppt_transform::<0>),
    target("sat-to-chromatic", Equal, (1, 3), gen_cnf, ppt_transform::<1>),
    target("sat-to-steiner", Equal, (1, 3), gen_cnf, ppt_transform::<2>),
    target("sat-to-cds", Equal, (1, 3), gen_cnf, ppt_transform::<3>),
    target("sat-to-ids", Equal, (1, 3), gen_cnf, ppt_transform::<4>),
    target("refine-vc", Equal, (3, 10), gen_refine::<{ ProblemKind::VertexCover as u8 }>, ppt_transform::<5>),
    target("refine-fvs", Equal, (3, 10), gen_refine::<{ ProblemKind::FeedbackVertexSet as u8 }>, ppt_transform::<6>),
    target("refine-oct", Equal, (3, 10), gen_refine::<{ ProblemKind::OddCycleTransversal as u8 }>, ppt_transform::<7>),
    target("refine-im", Equal, (4, 10), gen_refine_im, ppt_transform::<8>),
    target("hp-to-hc", Equal, (1, 8), gen_hp, ppt_transform::<9>),
    target("cfa-kernel", Equal, (1, 6), gen_cfa, cfa_kernel),
    target("vc-tc", Equal, (1, 14), gen_cluster::<{ ProblemKind::VertexCover as u8 }>, vc_tc),
    target("is-tc", Equal, (1, 14), gen_cluster::<{ ProblemKind::IndependentSet as u8 }>, is_tc),
    target("oct-tc", Equal, (1, 14), gen_cluster::<{ ProblemKind::OddCycleTransversal as u8 }>, oct_tc),
    target("turing-clique", Equal, (1, 14), gen_cluster::<{ ProblemKind::Clique as u8 }>, turing_clique),
    target("tp-tc", Equal, (3, 12), gen_tp_cluster, tp_tc),
    target("tp-vc", Equal, (3, 12), gen_tp_gnp, tp_vc),
    target("nd-compress", Equal, (1, 10), gen_nd, nd_compress),
    target("compose-clique", Or, (3, 6), gen_compose::<0>, compose_transform),
    target("compose-chromatic", And, (3, 6), gen_compose::<1>, compose_transform),
    target("compose-hp", And, (3, 6), gen_compose::<2>, compose_transform),
    target("compose-cvc", Or, (3, 6), gen_compose::<3>, compose_transform),
    target("compose-fvs", Or, (3, 6), gen_compose::<4>, compose_transform),
    target("compose-oct", Or, (3, 6), gen_compose::<5>, compose_transform),
    target("compose-im", Or, (3, 6), gen_compose::<6>, compose_transform),
    target("compose-ds", Or, (3, 6), gen_compose::<7>, compose_transform),
];

fn kind_of(code: u8) -> ProblemKind {
    ProblemKind::ALL[code as usize]
}

fn draw(r: &mut SuiteRng, size: SizeRange) -> usize {
    r.gen_range(size.min..=size.max.max(size.min))
}

fn single(instance: ProblemInstance) -> Case {
    Case::Single { instance }
}

fn single_instance(case: &Case) -> Result<&ProblemInstance> {
    match case {
        Case::Single { instance } => Ok(instance),
        Case::Many { .. } => Err(Error::arg("expected a single instance")),
    }
}

fn graph_and_k(case: &Case) -> Result<(&Graph, usize)> {
    match &single_instance(case)?.payload {
        Payload::Graph { graph, k } => Ok((graph, *k)),
        _ => Err(Error::arg("expected a plain graph instance")),
    }
}

fn gen_mcc(r: &mut SuiteRng, size: SizeRange, _: &Limits) -> Result<Case> {
    let n = draw(r, size);
    let k = r.gen_range(2..=3);
    let colors = coloring(n, k, r);
    let p = r.gen_range(0.3..0.9);
    let g = multipartite(&colors, p, r)?;
    Ok(single(ProblemInstance::multicolored_clique(g, colors, k)?))
}

fn gen_cnf(r: &mut SuiteRng, size: SizeRange, _: &Limits) -> Result<Case> {
    let vars = draw(r, size).max(1);
    let clauses = r.gen_range(1..=4);
    Ok(single(ProblemInstance::cnf(cnf(vars, clauses, 3, r)?)))
}

fn gen_refine<const KIND: u8>(r: &mut SuiteRng, size: SizeRange, _: &Limits) -> Result<Case> {
    let n = draw(r, size).max(3);
    let p = r.gen_range(0.2..0.7);
    let g = gnp(n, p, r)?;
    let k = r.gen_range(0..n - 1);
    Ok(single(ProblemInstance::graph(kind_of(KIND), g, k)?))
}

fn gen_refine_im(r: &mut SuiteRng, size: SizeRange, _: &Limits) -> Result<Case> {
    let n = draw(r, size).max(4);
    let p = r.gen_range(0.15..0.6);
    let g = gnp(n, p, r)?;
    let k = r.gen_range(2..=n / 2);
    Ok(single(ProblemInstance::graph(ProblemKind::InducedMatching, g, k)?))
}

fn gen_hp(r: &mut SuiteRng, size: SizeRange, _: &Limits) -> Result<Case> {
    let n = draw(r, size);
    let p = r.gen_range(0.2..0.8);
    Ok(single(ProblemInstance::graph(ProblemKind::HamiltonianPath, gnp(n, p, r)?, 0)?))
}

fn gen_cfa(r: &mut SuiteRng, size: SizeRange, _: &Limits) -> Result<Case> {
    let sellers = size.max.max(1);
    let mut inst = random_instance(r, size.max, sellers);
    while inst.buyers.len() < size.min {
        inst = random_instance(r, size.max, sellers);
    }
    Ok(single(ProblemInstance::cfa(inst)))
}

/// Random cluster graph on `n` vertices with at most `max_attach` cover vertices.
fn cluster_graph(r: &mut SuiteRng, n: usize, max_attach: usize) -> Graph {
    let attach = r.gen_range(0..=max_attach.min(n));
    let mut rest = n - attach;
    let mut blocks = Vec::new();
    while rest > 0 {
        let s = r.gen_range(1..=rest.min(6));
        blocks.push(s);
        rest -= s;
    }
    cluster(&blocks, attach, r)
}

fn gen_cluster<const KIND: u8>(r: &mut SuiteRng, size: SizeRange, _: &Limits) -> Result<Case> {
    let n = draw(r, size);
    let g = cluster_graph(r, n, 4);
    let k = r.gen_range(0..=n + 1);
    Ok(single(ProblemInstance::graph(kind_of(KIND), g, k)?))
}

fn multiple_of_three(r: &mut SuiteRng, size: SizeRange) -> usize {
    let lo = size.min.div_ceil(3).max(1);
    let hi = (size.max / 3).max(lo);
    3 * r.gen_range(lo..=hi)
}

fn gen_tp_cluster(r: &mut SuiteRng, size: SizeRange, _: &Limits) -> Result<Case> {
    let n = multiple_of_three(r, size);
    let g = cluster_graph(r, n, 3);
    Ok(single(ProblemInstance::graph(ProblemKind::TrianglePartition, g, n)?))
}

fn gen_tp_gnp(r: &mut SuiteRng, size: SizeRange, _: &Limits) -> Result<Case> {
    let n = multiple_of_three(r, size);
    let p = r.gen_range(0.3..0.9);
    Ok(single(ProblemInstance::graph(ProblemKind::TrianglePartition, gnp(n, p, r)?, n)?))
}

fn gen_nd(r: &mut SuiteRng, size: SizeRange, _: &Limits) -> Result<Case> {
    let n = draw(r, size);
    let g = match r.gen_range(0..3) {
        0 => gnp(n, r.gen_range(0.1..0.9), r)?,
        1 => cluster_graph(r, n, 3),
        _ => {
            let c = r.gen_range(0..=n);
            split_like(c, n - c, r.gen_range(0.2..0.8), r)?
        }
    };
    let kind = *ND_KINDS.choose(r).expect("kind list is not empty");
    let k = r.gen_range(0..=n + 1);
    let instance = if kind == ProblemKind::SteinerTree {
        let terminals = (0..n).filter(|_| r.gen_bool(0.4)).collect();
        ProblemInstance::steiner(g, terminals, k)?
    } else {
        ProblemInstance::graph(kind, g, k)?
    };
    Ok(single(instance))
}

fn gen_compose<const C: usize>(r: &mut SuiteRng, size: SizeRange, limits: &Limits) -> Result<Case> {
    let composition = Composition::ALL[C];
    let t = r.gen_range(1..=3);
    let n = draw(r, size).max(1);
    let inputs = sample_inputs(composition, t, n, r, limits)?;
    Ok(Case::Many { composition, inputs })
}

fn ppt_transform<const R: usize>(case: &Case, _: &Limits) -> Result<Transformed> {
    let out = Reduction::ALL[R].apply(single_instance(case)?)?;
    let valid = out.validate().is_ok();
    let mut t = Transformed::new(Verdict::Instance(out.instance)).check("certificates", valid);
    if let Some(cover) = &out.cover {
        t = t.param("cover", cover.len());
    }
    if let Some(bound) = out.cover_bound {
        t = t.param("cover_bound", bound);
    }
    Ok(t)
}

fn cfa_kernel(case: &Case, _: &Limits) -> Result<Transformed> {
    let inst = match &single_instance(case)?.payload {
        Payload::Cfa { instance } => instance,
        _ => return Err(Error::arg("expected a CFA instance")),
    };
    let (kernel, trace) = kernelize_cfa(inst);
    let bounds = validate_kernel_bounds(&kernel).is_ok();
    Ok(Transformed::new(Verdict::Instance(ProblemInstance::cfa(kernel)))
        .check("kernel_bounds", bounds)
        .param("rule_firings", trace.len()))
}

type TcKernelFn = fn(&Graph, &TcCertificate, usize) -> Result<Outcome<TcKernel>>;

fn tc_kernel(case: &Case, kind: ProblemKind, f: TcKernelFn) -> Result<Transformed> {
    let (g, k) = graph_and_k(case)?;
    let x = twin_cover_exact(g)?;
    Ok(match f(g, &x, k)? {
        Outcome::Reduced(kern) => {
            let (n, k) = (kern.graph.n(), kern.k);
            Transformed::new(Verdict::Instance(ProblemInstance::graph(kind, kern.graph, kern.k)?))
                .param("tc", x.size())
                .param("blocks", x.cliques.len())
                .param("kernel_n", n)
                .param("kernel_k", k)
        }
        Outcome::ImmediateNo { .. } => Transformed::new(Verdict::Decided(false)).param("tc", x.size()),
    })
}

fn vc_tc(case: &Case, _: &Limits) -> Result<Transformed> {
    let t = tc_kernel(case, ProblemKind::VertexCover, vc_tc_kernel)?;
    let ok = match (t.params.get("kernel_n"), t.params.get("kernel_k")) {
        (Some(&n), Some(&k)) => n <= 2 * k,
        _ => true,
    };
    Ok(t.check("n<=2k", ok))
}

fn is_tc(case: &Case, _: &Limits) -> Result<Transformed> {
    tc_kernel(case, ProblemKind::IndependentSet, is_tc_kernel)
}

fn oct_tc(case: &Case, _: &Limits) -> Result<Transformed> {
    let t = tc_kernel(case, ProblemKind::OddCycleTransversal, oct_tc_collapse)?;
    let ok = match t.params.get("kernel_n") {
        Some(&n) => n <= t.params["tc"] + 2 * t.params["blocks"],
        None => true,
    };
    Ok(t.check("n<=tc+2*blocks", ok))
}

fn turing_clique(case: &Case, limits: &Limits) -> Result<Transformed> {
    let (g, k) = graph_and_k(case)?;
    let x = twin_cover_exact(g)?;
    let tr = clique_tc_turing(g, &x, k, |h, t| decide(ProblemKind::Clique, h, t, limits))?;
    Ok(Transformed::new(Verdict::Decided(tr.answer))
        .check("query_size<=tc+1", tr.max_query_size() <= x.size() + 1)
        .check("queries<=blocks+1", tr.queries.len() <= x.cliques.len() + 1)
        .param("tc", x.size())
        .param("queries", tr.queries.len())
        .param("max_query", tr.max_query_size()))
}

/// Largest augmented cover for which the partition-enumeration claim is
/// checked directly.
pub const CLAIM_MAX_COVER: usize = 6;

fn tp_tc(case: &Case, limits: &Limits) -> Result<Transformed> {
    let (g, _) = graph_and_k(case)?;
    let x = twin_cover_exact(g)?;
    let comp = tp_tc_compress(g, &x, x.size())?;
    let mut t = match comp.outcome {
        Outcome::Reduced(kernel) => {
            let bounds = validate_kernel_bounds(&kernel).is_ok();
            Transformed::new(Verdict::Instance(ProblemInstance::cfa(kernel))).check("kernel_bounds", bounds)
        }
        Outcome::ImmediateNo { .. } => Transformed::new(Verdict::Decided(false)),
    };
    if let Some(state) = comp.state.as_ref().filter(|s| s.x.len() <= CLAIM_MAX_COVER) {
        let expected = decide(ProblemKind::TrianglePartition, g, g.n(), limits)?;
        t = t.check("partition_claim", tip_claim_holds(state) == expected);
    }
    Ok(t.param("tc", x.size()).param("raw_buyers", comp.raw_buyers))
}

fn tp_vc(case: &Case, _: &Limits) -> Result<Transformed> {
    let (g, _) = graph_and_k(case)?;
    let vc = vertex_cover_exact(g)?;
    Ok(match tp_vc_trivial_kernel(g, &vc)? {
        Outcome::Reduced((h, n)) => {
            Transformed::new(Verdict::Instance(ProblemInstance::graph(ProblemKind::TrianglePartition, h, n)?))
        }
        Outcome::ImmediateNo { .. } => Transformed::new(Verdict::Decided(false)),
    }
    .param("vc", vc.size))
}

fn nd_compress(case: &Case, _: &Limits) -> Result<Transformed> {
    let inst = single_instance(case)?;
    let enc = encode_instance(inst)?;
    let bytes = enc.to_bytes();
    let back = QuotientEncoding::from_bytes(&bytes)?;
    let decoded = decode_instance(&back)?;
    let g = inst.graph_ref().expect("encodable instances have a graph");
    let iso = are_isomorphic(g, decoded.graph_ref().expect("decoded instances have a graph"));
    Ok(Transformed::new(Verdict::Instance(decoded))
        .check("bytes_roundtrip", back == enc)
        .check("isomorphic", iso)
        .check("bits<=bound", enc.bit_len() <= enc.bit_bound())
        .param("nd", enc.width())
        .param("bits", enc.bit_len() as usize)
        .param("bound", enc.bit_bound() as usize))
}

fn compose_transform(case: &Case, _: &Limits) -> Result<Transformed> {
    let (comp, inputs) = match case {
        Case::Many { composition, inputs } => (*composition, inputs),
        Case::Single { .. } => return Err(Error::arg("expected composition inputs")),
    };
    let out = compose(comp, inputs)?;
    let g = out.instance.graph_ref().expect("compositions output graphs");
    let mw = modular_width_of(g);
    let edges_ok = g.m() <= out.edge_bound();
    Ok(Transformed::new(Verdict::Instance(out.instance.clone()))
        .check("mw<=bound", mw <= out.mw_bound)
        .check("edges<=bound", edges_ok)
        .param("t", out.t)
        .param("mw", mw)
        .param("mw_bound", out.mw_bound))
}
