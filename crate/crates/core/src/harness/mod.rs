//! Randomized verification suites, counterexample shrinking and the
//! parameter sweep.
//!
//! Every transformation is registered in [`targets::REGISTRY`] together with
//! the relation its output answer must have with the input answers. A suite
//! run generates instances from the configured seed, applies the
//! transformation, solves both sides with the exact oracles and records one
//! [`ReductionReport`] per trial.

pub mod sweep;
pub mod targets;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cfa::CfaInstance;
use crate::compose::{ComposeInput, Composition};
use crate::error::{Error, Result};
use crate::generate::{rng, SuiteRng};
use crate::oracles::{solve, Limits, Payload, ProblemInstance, ProblemKind};

pub use sweep::{graphs_up_to_isomorphism, param_sweep, SweepReport, SweepViolation};
pub use targets::{find_target, Target, REGISTRY};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

/// Maximum number of accepted deletions while shrinking a counterexample.
pub const SHRINK_STEPS: usize = 200;

/// How the output answer must relate to the input answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    Or,
    And,
}

impl Relation {
    pub fn holds(self, inputs: &[bool], output: bool) -> bool {
        match self {
            Relation::Equal => inputs.len() == 1 && inputs[0] == output,
            Relation::Or => inputs.iter().any(|&a| a) == output,
            Relation::And => inputs.iter().all(|&a| a) == output,
        }
    }
}

/// Inclusive range of the main size of generated instances (vertices,
/// variables or buyers, depending on the target).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeRange {
    pub min: usize,
    pub max: usize,
}

impl SizeRange {
    pub const fn new(min: usize, max: usize) -> Self {
        SizeRange { min, max }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    /// Per-target overrides of the default size range.
    #[serde(default)]
    pub sizes: BTreeMap<String, SizeRange>,
    pub limits: Limits,
}

impl SuiteConfig {
    /// Solver limits are raised to the representable maximum; reduction
    /// outputs are larger than the interactive defaults.
    pub fn new(seed: u64, trials: usize) -> Self {
        SuiteConfig {
            seed,
            trials,
            sizes: BTreeMap::new(),
            limits: Limits::unbounded(),
        }
    }

    pub fn size_for(&self, target: &Target) -> SizeRange {
        self.sizes.get(target.name).copied().unwrap_or(target.sizes)
    }
}

/// The input side of a trial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Case {
    Single { instance: ProblemInstance },
    Many { composition: Composition, inputs: Vec<ComposeInput> },
}

impl Case {
    /// The decision questions whose answers the relation combines.
    pub fn questions(&self) -> Result<Vec<ProblemInstance>> {
        match self {
            Case::Single { instance } => Ok(vec![instance.clone()]),
            Case::Many { composition, inputs } => {
                inputs.iter().map(|x| x.question(*composition)).collect()
            }
        }
    }

    /// Every case obtained by one deletion: a vertex, a clause, a buyer or
    /// (for compositions) an input or the same vertex of every input.
    pub fn shrink_candidates(&self) -> Vec<(String, Case)> {
        let mut out = Vec::new();
        match self {
            Case::Single { instance } => match &instance.payload {
                Payload::Cnf { formula } => {
                    for j in 0..formula.num_clauses() {
                        let instance = ProblemInstance::cnf(formula.without_clause(j));
                        out.push((format!("delete clause {j}"), Case::Single { instance }));
                    }
                }
                Payload::Cfa { instance: cfa } => {
                    for b in &cfa.buyers {
                        let instance = ProblemInstance::cfa(without_buyer(cfa, b.id));
                        out.push((format!("delete buyer {}", b.id), Case::Single { instance }));
                    }
                }
                _ => {
                    let n = instance.graph_ref().map_or(0, |g| g.n());
                    for v in 0..n {
                        if let Some(instance) = without_vertex(instance, v) {
                            out.push((format!("delete vertex {v}"), Case::Single { instance }));
                        }
                    }
                }
            },
            Case::Many { composition, inputs } => {
                if inputs.len() > 1 {
                    for i in 0..inputs.len() {
                        let mut rest = inputs.clone();
                        rest.remove(i);
                        out.push((
                            format!("delete input {i}"),
                            Case::Many { composition: *composition, inputs: rest },
                        ));
                    }
                }
                let n = inputs.first().map_or(0, |x| x.graph().n());
                for v in 0..n {
                    let shrunk: Option<Vec<ComposeInput>> =
                        inputs.iter().map(|x| input_without_vertex(x, v)).collect();
                    if let Some(rest) = shrunk {
                        out.push((
                            format!("delete vertex {v} of every input"),
                            Case::Many { composition: *composition, inputs: rest },
                        ));
                    }
                }
            }
        }
        out
    }
}

fn without_vertex(inst: &ProblemInstance, v: usize) -> Option<ProblemInstance> {
    let (h, _) = inst.graph_ref()?.remove_vertices(&[v]).ok()?;
    let shift = |u: usize| if u > v { u - 1 } else { u };
    match &inst.payload {
        Payload::Graph { k, .. } => ProblemInstance::graph(inst.kind, h, *k).ok(),
        Payload::Steiner { terminals, k, .. } => {
            let t = terminals.iter().filter(|&&t| t != v).map(|&t| shift(t)).collect();
            ProblemInstance::steiner(h, t, *k).ok()
        }
        Payload::Colored { coloring, k, .. } => {
            let mut c = coloring.clone();
            c.remove(v);
            ProblemInstance::multicolored_clique(h, c, *k).ok()
        }
        Payload::Cnf { .. } | Payload::Cfa { .. } => None,
    }
}

fn input_without_vertex(x: &ComposeInput, v: usize) -> Option<ComposeInput> {
    let (graph, _) = x.graph().remove_vertices(&[v]).ok()?;
    match x {
        ComposeInput::Threshold { k, .. } => Some(ComposeInput::Threshold { graph, k: *k }),
        ComposeInput::Plain { .. } => Some(ComposeInput::Plain { graph }),
        // A known solution does not survive vertex deletion in general.
        ComposeInput::Refinement { .. } => None,
    }
}

fn without_buyer(inst: &CfaInstance, id: u64) -> CfaInstance {
    let mut out = inst.clone();
    out.buyers.retain(|b| b.id != id);
    out.edges.retain(|&(b, _)| b != id);
    out.conflicts.retain(|&(a, b)| a != id && b != id);
    out
}

/// What a transformation produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// An instance to be solved by the oracle.
    Instance(ProblemInstance),
    /// An answer fixed by the transformation itself (immediate no, or a
    /// Turing kernel that already queried its oracle).
    Decided(bool),
}

/// Output of one transformation run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformed {
    pub verdict: Verdict,
    /// Named size or structure assertions; all must hold.
    pub checks: BTreeMap<String, bool>,
    pub params: BTreeMap<String, usize>,
}

impl Transformed {
    pub fn new(verdict: Verdict) -> Self {
        Transformed {
            verdict,
            checks: BTreeMap::new(),
            params: BTreeMap::new(),
        }
    }

    pub fn check(mut self, name: &str, ok: bool) -> Self {
        self.checks.insert(name.to_string(), ok);
        self
    }

    pub fn param(mut self, name: &str, value: usize) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }
}

/// Size summary of one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Size {
    pub kind: ProblemKind,
    /// Vertices, variables or buyers.
    pub n: usize,
    /// Edges, clauses or sellers.
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl Size {
    pub fn of(inst: &ProblemInstance) -> Size {
        let (n, m) = match &inst.payload {
            Payload::Graph { graph, .. }
            | Payload::Steiner { graph, .. }
            | Payload::Colored { graph, .. } => (graph.n(), graph.m()),
            Payload::Cnf { formula } => (formula.num_vars(), formula.num_clauses()),
            Payload::Cfa { instance } => (instance.buyers.len(), instance.sellers.len()),
        };
        Size {
            kind: inst.kind,
            n,
            m,
            k: inst.k(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub target: String,
    pub trial: usize,
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_digest: Option<String>,
    pub input_answers: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_answer: Option<bool>,
    pub relation: Relation,
    pub sizes_before: Vec<Size>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size_after: Option<Size>,
    pub params: BTreeMap<String, usize>,
    pub checks: BTreeMap<String, bool>,
    pub pass: bool,
    /// Guardrail breach; the trial neither passes nor fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    /// The transformation or a checker returned an error.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl ReductionReport {
    pub fn failed(&self) -> bool {
        !self.pass && self.skipped.is_none()
    }

    /// The predicate preserved while shrinking: a wrong answer or a broken
    /// check, not an error.
    fn counterexample(&self) -> bool {
        self.failed() && self.error.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub original: Case,
    pub minimized: Case,
    /// Accepted deletions, in order.
    pub steps: Vec<String>,
    pub report: ReductionReport,
    /// Every intermediate case, original first.
    #[serde(skip)]
    pub path: Vec<Case>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSummary {
    pub target: String,
    pub relation: Relation,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub config: SuiteConfig,
    pub summaries: Vec<TargetSummary>,
    pub reports: Vec<ReductionReport>,
    pub passed: bool,
}

impl SuiteReport {
    /// Pretty JSON; timings are dropped unless `timing` is set, so equal
    /// configurations give byte-identical output.
    pub fn to_json(&self, timing: bool) -> String {
        let mut copy = self.clone();
        if !timing {
            for r in &mut copy.reports {
                r.elapsed_us = None;
            }
            for s in &mut copy.summaries {
                if let Some(c) = &mut s.counterexample {
                    c.report.elapsed_us = None;
                }
            }
        }
        serde_json::to_string_pretty(&copy).expect("reports serialize")
    }
}

/// Short hex digest of the JSON form of `value`.
pub fn digest<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("digest input serializes");
    let hash = Sha256::digest(&bytes);
    hash[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Seed of one trial; independent of which other targets run.
pub fn trial_seed(seed: u64, target: &str, trial: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(target.as_bytes());
    h.update((trial as u64).to_le_bytes());
    let out = h.finalize();
    u64::from_le_bytes(out[..8].try_into().expect("eight bytes"))
}

/// Generates the instance of one trial.
pub fn generate_case(target: &Target, cfg: &SuiteConfig, trial: usize) -> Result<Case> {
    let mut r: SuiteRng = rng(trial_seed(cfg.seed, target.name, trial));
    (target.generate)(&mut r, cfg.size_for(target), &cfg.limits)
}

/// Transforms `case`, solves both sides and compares.
pub fn evaluate(target: &Target, case: &Case, trial: usize, limits: &Limits) -> ReductionReport {
    let start = Instant::now();
    let mut report = ReductionReport {
        target: target.name.to_string(),
        trial,
        input_digest: digest(case),
        output_digest: None,
        input_answers: Vec::new(),
        output_answer: None,
        relation: target.relation,
        sizes_before: Vec::new(),
        size_after: None,
        params: BTreeMap::new(),
        checks: BTreeMap::new(),
        pass: false,
        skipped: None,
        error: None,
        elapsed_us: None,
    };
    if let Err(e) = run_trial(target, case, limits, &mut report) {
        match e {
            Error::Resource(msg) => report.skipped = Some(msg),
            other => report.error = Some(other.to_string()),
        }
    }
    report.elapsed_us = Some(start.elapsed().as_micros() as u64);
    report
}

fn run_trial(target: &Target, case: &Case, limits: &Limits, report: &mut ReductionReport) -> Result<()> {
    let questions = case.questions()?;
    report.sizes_before = questions.iter().map(Size::of).collect();
    let out = (target.transform)(case, limits)?;
    report.params = out.params;
    report.checks = out.checks;
    let mut inputs = Vec::with_capacity(questions.len());
    for q in &questions {
        inputs.push(solve(q, limits)?.value);
    }
    report.input_answers = inputs;
    let answer = match &out.verdict {
        Verdict::Decided(b) => *b,
        Verdict::Instance(inst) => {
            report.output_digest = Some(digest(inst));
            report.size_after = Some(Size::of(inst));
            solve(inst, limits)?.value
        }
    };
    report.output_answer = Some(answer);
    report.pass =
        target.relation.holds(&report.input_answers, answer) && report.checks.values().all(|&c| c);
    Ok(())
}

/// Greedy delete-one loop; keeps a deletion whenever the smaller case still
/// fails. Stops at a local minimum or after [`SHRINK_STEPS`] deletions.
pub fn shrink(target: &Target, case: &Case, trial: usize, limits: &Limits) -> Counterexample {
    let mut current = case.clone();
    let mut report = evaluate(target, &current, trial, limits);
    let mut steps = Vec::new();
    let mut path = vec![current.clone()];
    'outer: while steps.len() < SHRINK_STEPS && report.counterexample() {
        for (label, candidate) in current.shrink_candidates() {
            let r = evaluate(target, &candidate, trial, limits);
            if r.counterexample() {
                current = candidate;
                report = r;
                steps.push(label);
                path.push(current.clone());
                continue 'outer;
            }
        }
        break;
    }
    Counterexample {
        trial,
        original: case.clone(),
        minimized: current,
        steps,
        report,
        path,
    }
}

/// Runs `trials` trials of each target. Trials run in parallel and are
/// merged by index; the first failure of each target is shrunk.
pub fn run_targets(cfg: &SuiteConfig, targets: &[Target]) -> SuiteReport {
    let mut summaries = Vec::new();
    let mut reports = Vec::new();
    for target in targets {
        let results: Vec<(Option<Case>, ReductionReport)> = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| match generate_case(target, cfg, trial) {
                Ok(case) => {
                    let r = evaluate(target, &case, trial, &cfg.limits);
                    (Some(case), r)
                }
                Err(e) => (None, generation_failure(target, trial, e)),
            })
            .collect();
        let mut summary = TargetSummary {
            target: target.name.to_string(),
            relation: target.relation,
            trials: cfg.trials,
            passed: 0,
            failed: 0,
            skipped: 0,
            counterexample: None,
        };
        for (case, r) in &results {
            if r.pass {
                summary.passed += 1;
            } else if r.skipped.is_some() {
                summary.skipped += 1;
            } else {
                summary.failed += 1;
                if summary.counterexample.is_none() {
                    if let Some(case) = case {
                        summary.counterexample = Some(shrink(target, case, r.trial, &cfg.limits));
                    }
                }
            }
        }
        reports.extend(results.into_iter().map(|(_, r)| r));
        summaries.push(summary);
    }
    let passed = summaries.iter().all(|s| s.failed == 0);
    SuiteReport {
        schema: SCHEMA,
        config: cfg.clone(),
        summaries,
        reports,
        passed,
    }
}

fn generation_failure(target: &Target, trial: usize, e: Error) -> ReductionReport {
    let (skipped, error) = match e {
        Error::Resource(msg) => (Some(msg), None),
        other => (None, Some(format!("generation: {other}"))),
    };
    ReductionReport {
        target: target.name.to_string(),
        trial,
        input_digest: String::new(),
        output_digest: None,
        input_answers: Vec::new(),
        output_answer: None,
        relation: target.relation,
        sizes_before: Vec::new(),
        size_after: None,
        params: BTreeMap::new(),
        checks: BTreeMap::new(),
        pass: false,
        skipped,
        error,
        elapsed_us: None,
    }
}

/// Resolves target names (`all` selects the whole registry) and runs them.
pub fn run_suite(cfg: &SuiteConfig, names: &[&str]) -> Result<SuiteReport> {
    let targets = select_targets(names)?;
    Ok(run_targets(cfg, &targets))
}

pub fn select_targets(names: &[&str]) -> Result<Vec<Target>> {
    if names.contains(&"all") {
        return Ok(REGISTRY.to_vec());
    }
    names
        .iter()
        .map(|&n| find_target(n).ok_or_else(|| Error::arg(format!("unknown target `{n}`"))))
        .collect()
}

#[cfg(test)]
mod tests;
