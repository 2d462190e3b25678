use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use structkern::cfa::{kernelize_cfa, validate_kernel_bounds, CfaInstance};
use structkern::compose::{compose, sample_inputs, ComposeInput, Composition};
use structkern::generate::{generate, rng, GenSpec, Generated};
use structkern::harness::{param_sweep, run_suite, sweep, SizeRange, SuiteConfig};
use structkern::kernels::{
    clique_tc_turing, is_tc_kernel, oct_tc_collapse, tp_tc_compress, tp_vc_trivial_kernel,
    vc_tc_kernel, Outcome,
};
use structkern::ndcomp::{decode_instance, encode_instance, QuotientEncoding};
use structkern::oracles::{decide, solve, Limits, ProblemInstance, ProblemKind, LIMITS_ENV};
use structkern::params::{compute_all, twin_cover_exact, vertex_cover_exact};
use structkern::ppt::Reduction;
use structkern::{CnfFormula, Graph};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] structkern::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    /// A verification ran and did not pass; the report was already printed.
    #[error("verification failed")]
    Failed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed | CliError::Core(structkern::Error::Invariant(_)) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Kernels, compressions and reductions for structurally parameterized graph
/// problems, checked by exact solvers.
#[derive(Parser)]
#[command(name = "structkern", version)]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Solver guardrails as `n=..,vars=..,buyers=..` (default: environment or built-in).
    #[arg(long, global = true)]
    guardrails: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact vertex cover, twin-cover, neighborhood diversity and modular-width.
    Params { graph: PathBuf },
    /// Decide a problem instance.
    Solve(SolveArgs),
    /// Run a kernel or compression.
    Kernelize(KernelizeArgs),
    /// Encode an instance over its neighborhood-diversity quotient.
    CompressNd(CompressArgs),
    /// Decode an nd encoding.
    DecompressNd {
        input: PathBuf,
        /// Write the decoded graph as DIMACS.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a polynomial parametric transformation.
    Reduce(ReduceArgs),
    /// Combine several instances into one.
    Compose(ComposeArgs),
    /// Decide Clique through bounded-size oracle queries.
    TuringClique {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Generate a random graph or formula.
    Gen(GenArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// DIMACS graph, DIMACS CNF (cnf-sat) or a JSON instance (`.json`).
    input: PathBuf,
    #[arg(short)]
    k: Option<usize>,
    /// Steiner terminals, comma separated.
    #[arg(long, value_delimiter = ',')]
    terminals: Vec<usize>,
    /// Multicolored Clique coloring, comma separated.
    #[arg(long, value_delimiter = ',')]
    coloring: Vec<usize>,
}

#[derive(Args)]
struct SolveArgs {
    kind: String,
    #[command(flatten)]
    instance: InstanceArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelKind {
    TpTc,
    VcTc,
    OctTc,
    IsTc,
    TpVc,
    Cfa,
}

impl KernelKind {
    fn name(self) -> &'static str {
        match self {
            KernelKind::TpTc => "tp-tc",
            KernelKind::VcTc => "vc-tc",
            KernelKind::OctTc => "oct-tc",
            KernelKind::IsTc => "is-tc",
            KernelKind::TpVc => "tp-vc",
            KernelKind::Cfa => "cfa",
        }
    }
}

#[derive(Args)]
struct KernelizeArgs {
    #[arg(value_enum)]
    kernel: KernelKind,
    /// Graph in DIMACS, or a CFA instance in JSON for `cfa`.
    input: PathBuf,
    #[arg(short)]
    k: Option<usize>,
    /// Write the reduced instance (DIMACS graph or CFA JSON).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompressArgs {
    kind: String,
    #[command(flatten)]
    instance: InstanceArgs,
    /// Write the encoding bytes here instead of printing hex.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    reduction: String,
    #[command(flatten)]
    instance: InstanceArgs,
    /// Write the output instance as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ComposeArgs {
    composition: String,
    /// JSON array of inputs.
    #[arg(long, conflicts_with = "sample")]
    inputs: Option<PathBuf>,
    /// Sample this many random inputs instead.
    #[arg(long)]
    sample: Option<usize>,
    /// Vertices per sampled input.
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the output instance as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated target names, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    targets: Vec<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 25)]
    trials: usize,
    /// Size override per target, e.g. `refine-vc=3..8`.
    #[arg(long = "size")]
    sizes: Vec<String>,
    /// Run the parameter sweep instead; `--trials` random graphs are added
    /// to all graphs up to `--exhaustive` vertices.
    #[arg(long)]
    sweep: bool,
    #[arg(long, default_value_t = 6)]
    exhaustive: usize,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep per-trial timings in the JSON report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    spec: GenKind,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenKind {
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    Cluster {
        #[arg(long, value_delimiter = ',')]
        cliques: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        attach: usize,
    },
    Split {
        #[arg(long)]
        clique: usize,
        #[arg(long)]
        independent: usize,
        #[arg(long)]
        p: f64,
    },
    Cnf {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        clauses: usize,
        #[arg(long, default_value_t = 3)]
        width: usize,
    },
}

struct Ctx {
    json: bool,
    limits: Limits,
    /// Guardrails were set explicitly; suites use them instead of their own.
    suite_limits: bool,
}

impl Ctx {
    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string(value).expect("output serializes"));
        } else {
            println!("{}", text());
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Io { path: "stdin".into(), source })?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "json")
}

fn read_graph(path: &Path) -> Result<Graph> {
    Ok(Graph::parse_dimacs(&read_text(path)?)?)
}

fn parse_kind(s: &str) -> Result<ProblemKind> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = ProblemKind::ALL.iter().map(|k| k.name()).collect();
        usage(format!("unknown problem kind `{s}`; expected one of {}", names.join(", ")))
    })
}

fn load_instance(kind: ProblemKind, a: &InstanceArgs) -> Result<ProblemInstance> {
    let text = read_text(&a.input)?;
    if is_json(&a.input) {
        let inst = ProblemInstance::from_json(&text)?;
        if inst.kind != kind {
            return Err(usage(format!("file holds a {} instance, not {kind}", inst.kind)));
        }
        return Ok(inst);
    }
    let need_k = || a.k.ok_or_else(|| usage(format!("{kind} needs -k")));
    Ok(match kind {
        ProblemKind::CnfSat => ProblemInstance::cnf(CnfFormula::parse_dimacs(&text)?),
        ProblemKind::Cfa => return Err(usage("CFA instances are read from JSON")),
        ProblemKind::SteinerTree => {
            ProblemInstance::steiner(Graph::parse_dimacs(&text)?, a.terminals.clone(), need_k()?)?
        }
        ProblemKind::MulticoloredClique => {
            let g = Graph::parse_dimacs(&text)?;
            let k = need_k()?;
            ProblemInstance::multicolored_clique(g, a.coloring.clone(), k)?
        }
        ProblemKind::HamiltonianCycle
        | ProblemKind::HamiltonianPath
        | ProblemKind::TrianglePartition => {
            ProblemInstance::graph(kind, Graph::parse_dimacs(&text)?, a.k.unwrap_or(0))?
        }
        _ => ProblemInstance::graph(kind, Graph::parse_dimacs(&text)?, need_k()?)?,
    })
}

#[derive(Serialize)]
struct ParamsOut {
    vc: usize,
    tc: usize,
    nd: usize,
    mw: usize,
}

fn cmd_params(ctx: &Ctx, path: &Path) -> Result<()> {
    let g = read_graph(path)?;
    let p = compute_all(&g, g.n() > ctx.limits.max_n)?;
    let out = ParamsOut {
        vc: p.vc,
        tc: p.tc,
        nd: p.nd,
        mw: p.mw,
    };
    ctx.emit(&out, || format!("vc {}\ntc {}\nnd {}\nmw {}", out.vc, out.tc, out.nd, out.mw));
    Ok(())
}

fn cmd_solve(ctx: &Ctx, a: &SolveArgs) -> Result<()> {
    let kind = parse_kind(&a.kind)?;
    let inst = load_instance(kind, &a.instance)?;
    let answer = solve(&inst, &ctx.limits)?;
    ctx.emit(&answer, || {
        let head = if answer.value { "yes" } else { "no" };
        match &answer.witness {
            Some(w) => format!("{head}\n{}", serde_json::to_string(w).expect("witness serializes")),
            None => head.to_string(),
        }
    });
    Ok(())
}

#[derive(Serialize)]
struct KernelOut {
    kernel: &'static str,
    answer: Option<bool>,
    reason: Option<String>,
    n: Option<usize>,
    k: Option<usize>,
    parameter: usize,
}

fn outcome_text(o: &KernelOut) -> String {
    match (&o.reason, o.n) {
        (Some(r), _) => format!("no ({r})"),
        (None, Some(n)) => match o.k {
            Some(k) => format!("reduced: {n} vertices, k = {k} (parameter {})", o.parameter),
            None => format!("reduced: {n} buyers (parameter {})", o.parameter),
        },
        _ => "reduced".into(),
    }
}

fn cmd_kernelize(ctx: &Ctx, a: &KernelizeArgs) -> Result<()> {
    let name = a.kernel.name();
    let no = |reason: String, parameter| KernelOut {
        kernel: name,
        answer: Some(false),
        reason: Some(reason),
        n: None,
        k: None,
        parameter,
    };
    let (out, artifact): (KernelOut, Option<String>) = match a.kernel {
        KernelKind::Cfa => {
            let inst = CfaInstance::from_json(&read_text(&a.input)?)?;
            let (kernel, _) = kernelize_cfa(&inst);
            validate_kernel_bounds(&kernel)?;
            let out = KernelOut {
                kernel: name,
                answer: None,
                reason: None,
                n: Some(kernel.buyers.len()),
                k: None,
                parameter: inst.buyers.len(),
            };
            (out, Some(kernel.to_json()))
        }
        KernelKind::TpTc => {
            let g = read_graph(&a.input)?;
            let x = twin_cover_exact(&g)?;
            let comp = tp_tc_compress(&g, &x, x.size())?;
            match comp.outcome {
                Outcome::Reduced(kernel) => {
                    let out = KernelOut {
                        kernel: name,
                        answer: None,
                        reason: None,
                        n: Some(kernel.buyers.len()),
                        k: None,
                        parameter: x.size(),
                    };
                    (out, Some(kernel.to_json()))
                }
                Outcome::ImmediateNo { reason } => (no(reason, x.size()), None),
            }
        }
        KernelKind::TpVc => {
            let g = read_graph(&a.input)?;
            let vc = vertex_cover_exact(&g)?;
            match tp_vc_trivial_kernel(&g, &vc)? {
                Outcome::Reduced((h, n)) => {
                    let out = KernelOut {
                        kernel: name,
                        answer: None,
                        reason: None,
                        n: Some(h.n()),
                        k: Some(n),
                        parameter: vc.size,
                    };
                    (out, Some(h.to_dimacs()))
                }
                Outcome::ImmediateNo { reason } => (no(reason, vc.size), None),
            }
        }
        KernelKind::VcTc | KernelKind::OctTc | KernelKind::IsTc => {
            let g = read_graph(&a.input)?;
            let k = a.k.ok_or_else(|| usage("this kernel needs -k"))?;
            let x = twin_cover_exact(&g)?;
            let f = match a.kernel {
                KernelKind::VcTc => vc_tc_kernel,
                KernelKind::OctTc => oct_tc_collapse,
                _ => is_tc_kernel,
            };
            match f(&g, &x, k)? {
                Outcome::Reduced(kern) => {
                    let out = KernelOut {
                        kernel: name,
                        answer: None,
                        reason: None,
                        n: Some(kern.graph.n()),
                        k: Some(kern.k),
                        parameter: x.size(),
                    };
                    (out, Some(kern.graph.to_dimacs()))
                }
                Outcome::ImmediateNo { reason } => (no(reason, x.size()), None),
            }
        }
    };
    if let (Some(path), Some(text)) = (&a.out, &artifact) {
        write_bytes(path, text.as_bytes())?;
    }
    ctx.emit(&out, || outcome_text(&out));
    Ok(())
}

#[derive(Serialize)]
struct CompressOut {
    width: usize,
    n: u64,
    bits: u64,
    bound: u64,
    hex: Option<String>,
}

fn cmd_compress(ctx: &Ctx, a: &CompressArgs) -> Result<()> {
    let kind = parse_kind(&a.kind)?;
    let inst = load_instance(kind, &a.instance)?;
    let enc = encode_instance(&inst)?;
    let bytes = enc.to_bytes();
    let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
    let out = CompressOut {
        width: enc.width(),
        n: enc.n(),
        bits: enc.bit_len(),
        bound: enc.bit_bound(),
        hex: a.out.is_none().then_some(hex),
    };
    if let Some(path) = &a.out {
        write_bytes(path, &bytes)?;
    }
    ctx.emit(&out, || {
        let mut s = format!("width {} n {} bits {} bound {}", out.width, out.n, out.bits, out.bound);
        if let Some(h) = &out.hex {
            s.push('\n');
            s.push_str(h);
        }
        s
    });
    Ok(())
}

fn cmd_decompress(ctx: &Ctx, input: &Path, out: Option<&Path>) -> Result<()> {
    let bytes = fs::read(input).map_err(|source| CliError::Io {
        path: input.display().to_string(),
        source,
    })?;
    let inst = decode_instance(&QuotientEncoding::from_bytes(&bytes)?)?;
    if let Some(path) = out {
        let g = inst.graph_ref().expect("decoded instances have a graph");
        write_bytes(path, g.to_dimacs().as_bytes())?;
    }
    ctx.emit(&inst, || inst.to_json());
    Ok(())
}

fn cmd_reduce(ctx: &Ctx, a: &ReduceArgs) -> Result<()> {
    let red: Reduction = a.reduction.parse().map_err(|_| {
        let names: Vec<&str> = Reduction::ALL.iter().map(|r| r.name()).collect();
        usage(format!("unknown reduction `{}`; expected one of {}", a.reduction, names.join(", ")))
    })?;
    let inst = load_instance(red.source(), &a.instance)?;
    let out = red.apply(&inst)?;
    out.validate()?;
    if let Some(path) = &a.out {
        write_bytes(path, out.instance.to_json().as_bytes())?;
    }
    ctx.emit(&out, || out.instance.to_json());
    Ok(())
}

fn cmd_compose(ctx: &Ctx, a: &ComposeArgs) -> Result<()> {
    let comp: Composition = a.composition.parse().map_err(|_| {
        let names: Vec<&str> = Composition::ALL.iter().map(|c| c.name()).collect();
        usage(format!("unknown composition `{}`; expected one of {}", a.composition, names.join(", ")))
    })?;
    let inputs: Vec<ComposeInput> = match (&a.inputs, a.sample) {
        (Some(path), _) => serde_json::from_str(&read_text(path)?)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?,
        (None, Some(t)) => sample_inputs(comp, t, a.n, &mut rng(a.seed), &ctx.limits)?,
        (None, None) => return Err(usage("give --inputs or --sample")),
    };
    let out = compose(comp, &inputs)?;
    if let Some(path) = &a.out {
        write_bytes(path, out.instance.to_json().as_bytes())?;
    }
    ctx.emit(&out, || {
        let g = out.instance.graph_ref().expect("compositions output graphs");
        format!(
            "{} of {} inputs ({:?}): {} vertices, {} edges, k = {}, mw bound {}",
            comp.name(),
            out.t,
            out.semantics,
            g.n(),
            g.m(),
            out.instance.k().map_or("-".into(), |k| k.to_string()),
            out.mw_bound
        )
    });
    Ok(())
}

fn cmd_turing(ctx: &Ctx, path: &Path, k: usize) -> Result<()> {
    let g = read_graph(path)?;
    let x = twin_cover_exact(&g)?;
    let limits = ctx.limits;
    let t = clique_tc_turing(&g, &x, k, |h, thr| decide(ProblemKind::Clique, h, thr, &limits))?;
    ctx.emit(&t, || {
        let mut s = String::new();
        for q in &t.queries {
            s.push_str(&format!(
                "query {} vertices, threshold {}: {}\n",
                q.graph.n(),
                q.threshold,
                if q.answer { "yes" } else { "no" }
            ));
        }
        s.push_str(if t.answer { "yes" } else { "no" });
        s
    });
    Ok(())
}

fn parse_size(s: &str) -> Result<(String, SizeRange)> {
    let bad = || usage(format!("size `{s}` is not name=min..max"));
    let (name, range) = s.split_once('=').ok_or_else(bad)?;
    let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
    let lo = lo.parse().map_err(|_| bad())?;
    let hi = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((name.to_string(), SizeRange::new(lo, hi)))
}

fn cmd_verify(ctx: &Ctx, a: &VerifyArgs) -> Result<()> {
    let mut cfg = SuiteConfig::new(a.seed, a.trials);
    if ctx.suite_limits {
        cfg.limits = ctx.limits;
    }
    for s in &a.sizes {
        let (name, range) = parse_size(s)?;
        cfg.sizes.insert(name, range);
    }
    let (passed, json) = if a.sweep {
        cfg.sizes
            .entry(sweep::EXHAUSTIVE_KEY.into())
            .or_insert(SizeRange::new(0, a.exhaustive));
        let r = param_sweep(&cfg)?;
        if !ctx.json {
            println!(
                "{} graphs, {} violations, max nd/(2^vc+vc) {:.3}",
                r.graphs,
                r.violations.len(),
                r.max_nd_ratio
            );
        }
        (r.passed, r.to_json())
    } else {
        let names: Vec<&str> = a.targets.iter().map(String::as_str).collect();
        let r = run_suite(&cfg, &names).map_err(|e| usage(e.to_string()))?;
        if !ctx.json {
            for s in &r.summaries {
                println!(
                    "{:<20} {:>4} passed {:>4} failed {:>4} skipped",
                    s.target, s.passed, s.failed, s.skipped
                );
                if let Some(c) = &s.counterexample {
                    println!(
                        "  counterexample at trial {} minimized in {} steps: {}",
                        c.trial,
                        c.steps.len(),
                        serde_json::to_string(&c.minimized).expect("cases serialize")
                    );
                }
            }
        }
        (r.passed, r.to_json(a.timing))
    };
    if let Some(path) = &a.out {
        write_bytes(path, json.as_bytes())?;
    }
    if ctx.json {
        println!("{json}");
    } else {
        println!("{}", if passed { "pass" } else { "FAIL" });
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn cmd_gen(a: &GenArgs) -> Result<()> {
    let spec = match &a.spec {
        GenKind::Gnp { n, p } => GenSpec::Gnp { n: *n, p: *p },
        GenKind::Cluster { cliques, attach } => GenSpec::Cluster {
            cliques: cliques.clone(),
            attach: *attach,
        },
        GenKind::Split { clique, independent, p } => GenSpec::SplitLike {
            clique: *clique,
            independent: *independent,
            p: *p,
        },
        GenKind::Cnf { vars, clauses, width } => GenSpec::Cnf {
            vars: *vars,
            clauses: *clauses,
            max_width: *width,
        },
    };
    let text = match generate(&spec, a.seed)? {
        Generated::Graph(g) => g.to_dimacs(),
        Generated::Cnf(f) => f.to_dimacs(),
    };
    match &a.out {
        Some(path) => write_bytes(path, text.as_bytes()),
        None => {
            print!("{text}");
            io::stdout().flush().map_err(|source| CliError::Io { path: "stdout".into(), source })
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let limits = match &cli.guardrails {
        Some(spec) => Limits::parse_overrides(spec).map_err(|e| usage(e.to_string()))?,
        None => Limits::from_env().map_err(|e| usage(e.to_string()))?,
    };
    let ctx = Ctx {
        json: cli.json,
        limits,
        suite_limits: cli.guardrails.is_some() || std::env::var_os(LIMITS_ENV).is_some(),
    };
    match &cli.command {
        Command::Params { graph } => cmd_params(&ctx, graph),
        Command::Solve(a) => cmd_solve(&ctx, a),
        Command::Kernelize(a) => cmd_kernelize(&ctx, a),
        Command::CompressNd(a) => cmd_compress(&ctx, a),
        Command::DecompressNd { input, out } => cmd_decompress(&ctx, input, out.as_deref()),
        Command::Reduce(a) => cmd_reduce(&ctx, a),
        Command::Compose(a) => cmd_compose(&ctx, a),
        Command::TuringClique { graph, k } => cmd_turing(&ctx, graph, *k),
        Command::Verify(a) => cmd_verify(&ctx, a),
        Command::Gen(a) => cmd_gen(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
