//! `regraph`: regularity of edge ideals from the command line.

use std::io::Read;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use regraph::catalog;
use regraph::decomposition::{prime_decompositions, prime_factorization_check, reduction_algorithm};
use regraph::invariants::{
    cochord_upper, cochordal_cover_number, induced_matching, matching_number, privacy_degree, DEFAULT_COCHORD_BUDGET,
};
use regraph::io::{from_edge_list, parse_graph6_lines, to_edge_list, to_graph6};
use regraph::suites::{run_suite, Flag, SuiteOptions, SUITES};
use regraph::transforms::*;
use regraph::{Engine, Graph, PrimeField, VertexSet};

#[derive(Parser)]
#[command(name = "regraph", version, about = "Castelnuovo-Mumford regularity of graph edge ideals")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Opts {
    /// Characteristic of the coefficient field.
    #[arg(long, global = true, default_value_t = 2)]
    field: u32,
    /// Search budget for cochordal covers, mate search and decomposition lists.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Emit JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for random corpora.
    #[arg(long, global = true, default_value_t = regraph::enumerate::DEFAULT_SEED)]
    seed: u64,
    /// Larger corpora and budgets in `verify`.
    #[arg(long, global = true)]
    slow: bool,
    /// Exit 0 even when a value was only bounded.
    #[arg(long, global = true)]
    allow_inexact: bool,
}

/// Graph input: a file, `-` for stdin, or `catalog:NAME` (c5, p4, k3, k2,3,
/// 3k2, claw, mk, mv, r1, ...). Files hold one edge list or graph6 lines.
type Input = String;

#[derive(Subcommand)]
enum Cmd {
    /// Regularity with a witness subset.
    Reg { input: Input },
    /// Graded Betti table and homology of the independence complex.
    Betti { input: Input },
    /// Primeness of the graph and of each vertex.
    Prime { input: Input },
    /// Structural and combinatorial invariants.
    Invariants { input: Input },
    /// Apply a graph transform and print the result.
    Transform {
        #[command(subcommand)]
        kind: TransformKind,
        /// Output an edge list instead of graph6.
        #[arg(long, global = true)]
        edges: bool,
    },
    /// Prime factorization, optionally with the full decomposition list.
    Decompose {
        input: Input,
        /// List every prime decomposition (bounded by --budget).
        #[arg(long)]
        list: bool,
        /// Run the reduction algorithm over this comma-separated vertex set.
        #[arg(long, value_name = "VERTICES")]
        reduce: Option<String>,
    },
    /// Lower bound for vim by mate search.
    Vim {
        input: Input,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Stop once a mate with this induced matching number is found.
        #[arg(long)]
        target: Option<usize>,
        /// Print the trace with deg2mate macros expanded into t-moves.
        #[arg(long)]
        expand: bool,
    },
    /// Run verification suites.
    Verify {
        #[arg(required = true, value_name = "SUITE")]
        suites: Vec<String>,
    },
}

#[derive(Subcommand)]
enum TransformKind {
    /// Replace x by a path y-a-b-z with y joined to Y and z to Z.
    Lozin {
        input: Input,
        x: usize,
        #[arg(long, value_name = "VERTICES")]
        y: String,
        #[arg(long, value_name = "VERTICES")]
        z: String,
    },
    /// Subdivide edge xy with k new vertices.
    Subdivide { input: Input, x: usize, y: usize, k: usize },
    /// Two-vertex subdivision of xy.
    Double { input: Input, x: usize, y: usize },
    /// Three-vertex subdivision of xy.
    Triple { input: Input, x: usize, y: usize },
    /// Double subdivision of every edge.
    DoubleAll { input: Input },
    /// Contract edge xy.
    Contract { input: Input, x: usize, y: usize },
    /// Merge a g-pair.
    GContract { input: Input, x: usize, y: usize },
    /// Merge a t-pair.
    TContract { input: Input, x: usize, y: usize },
    /// Replace the path a-b-c-d (b, c of degree 2) by its mate.
    Deg2mate { input: Input, a: usize, b: usize, c: usize, d: usize },
    /// Exhaustive degree rules preserving regularity.
    DegreeReductions { input: Input },
    /// Graph with reg k+1 and im k from a seed graph and edge.
    RegIm { input: Input, x: usize, y: usize, k: usize },
    /// Replay a mate trace file.
    Replay { input: Input, trace: String },
    /// Complement graph.
    Complement { input: Input },
}

/// Result of one command: output already printed, plus pass/inexact status.
struct Status {
    ok: bool,
    inexact: bool,
}

impl Status {
    fn ok() -> Status {
        Status { ok: true, inexact: false }
    }
}

fn read_source(src: &str) -> Result<String> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(src).with_context(|| format!("reading {src}"))
    }
}

fn load(src: &str) -> Result<Vec<Graph>> {
    if let Some(name) = src.strip_prefix("catalog:") {
        return Ok(vec![catalog::by_name(name)?]);
    }
    let text = read_source(src)?;
    let t = text.trim_start();
    let graphs = if t.starts_with(|c: char| c.is_ascii_digit()) || t.starts_with('#') {
        vec![from_edge_list(&text)?]
    } else {
        parse_graph6_lines(&text)?
    };
    if graphs.is_empty() {
        bail!("no graph in {src}");
    }
    Ok(graphs)
}

fn vertex_set(s: &str) -> Result<VertexSet> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("'{t}' is not a vertex")))
        .collect()
}

fn emit(opts: &Opts, value: Value, text: String) {
    if opts.json {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

fn engine(opts: &Opts) -> Result<std::sync::Arc<Engine>> {
    Ok(Engine::shared(PrimeField::new(opts.field)?))
}

fn reg(opts: &Opts, input: &str) -> Result<Status> {
    let e = engine(opts)?;
    for g in load(input)? {
        let c = e.regularity(&g)?;
        emit(
            opts,
            json!({"graph": to_graph6(&g), "field": opts.field, "reg": c.value,
                   "witness": c.witness_subset.to_vec(), "degree": c.witness_degree}),
            c.value.to_string(),
        );
    }
    Ok(Status::ok())
}

fn betti(opts: &Opts, input: &str) -> Result<Status> {
    let e = engine(opts)?;
    for g in load(input)? {
        let t = e.betti_table(&g)?;
        let p = e.profile(&g, g.vertices())?;
        let entries: Vec<Value> = t.entries.iter().map(|(&(i, j), &b)| json!([i, j, b])).collect();
        let mut text = format!("reg {} pd {}\nhomology {:?}\n", t.regularity(), t.projective_dimension(), p.betti());
        for (&(i, j), &b) in &t.entries {
            text.push_str(&format!("beta_{i},{j} = {b}\n"));
        }
        emit(
            opts,
            json!({"graph": to_graph6(&g), "field": opts.field, "reg": t.regularity(),
                   "pd": t.projective_dimension(), "betti": entries, "homology": p.betti()}),
            text.trim_end().to_string(),
        );
    }
    Ok(Status::ok())
}

fn prime(opts: &Opts, input: &str) -> Result<Status> {
    let e = engine(opts)?;
    for g in load(input)? {
        let is_prime = e.is_prime_graph(&g)?;
        let vertices: Vec<bool> = (0..g.n()).map(|v| e.is_prime_vertex(&g, v)).collect::<regraph::Result<_>>()?;
        let pv: Vec<usize> = (0..g.n()).filter(|&v| vertices[v]).collect();
        emit(
            opts,
            json!({"graph": to_graph6(&g), "field": opts.field, "prime": is_prime, "prime_vertices": pv}),
            format!("prime {is_prime}\nprime vertices {pv:?}"),
        );
    }
    Ok(Status::ok())
}

fn invariants(opts: &Opts, input: &str) -> Result<Status> {
    let e = engine(opts)?;
    let mut status = Status::ok();
    for g in load(input)? {
        let cc = cochordal_cover_number(&g, opts.budget.unwrap_or(DEFAULT_COCHORD_BUDGET));
        status.inexact |= !cc.exact;
        let reg = e.reg(&g)?;
        let im = induced_matching(&g);
        let gamma = if g.is_2k2_free() && g.edge_count() > 0 { Some(privacy_degree(&g)?) } else { None };
        let v = json!({
            "graph": to_graph6(&g),
            "field": opts.field,
            "n": g.n(),
            "m": g.edge_count(),
            "reg": reg,
            "im": im.len(),
            "induced_matching": im,
            "matching": matching_number(&g),
            "cochord": cc.value(),
            "cochord_lower": cc.lower,
            "cochord_upper": cc.upper,
            "cochord_greedy": cochord_upper(&g),
            "max_degree": g.max_degree(),
            "min_degree": g.min_degree(),
            "girth": g.girth(),
            "clique_number": g.clique_number(),
            "connected": g.is_connected(),
            "bipartite": g.is_bipartite(),
            "claw_free": g.is_claw_free(),
            "2k2_free": g.is_2k2_free(),
            "chordal": g.is_chordal(),
            "cochordal": g.is_cochordal(),
            "weakly_chordal": g.is_weakly_chordal(),
            "privacy_degree": gamma,
        });
        let mut text = String::new();
        for (k, val) in v.as_object().expect("object") {
            if k != "induced_matching" {
                text.push_str(&format!("{k} {val}\n"));
            }
        }
        if !cc.exact {
            text.push_str("INEXACT cochord: budget exhausted before the bounds met\n");
        }
        emit(opts, v, text.trim_end().to_string());
    }
    Ok(status)
}

fn transform(opts: &Opts, kind: &TransformKind, edges: bool) -> Result<Status> {
    use TransformKind::*;
    let input = match kind {
        Lozin { input, .. }
        | Subdivide { input, .. }
        | Double { input, .. }
        | Triple { input, .. }
        | DoubleAll { input }
        | Contract { input, .. }
        | GContract { input, .. }
        | TContract { input, .. }
        | Deg2mate { input, .. }
        | DegreeReductions { input }
        | RegIm { input, .. }
        | Replay { input, .. }
        | Complement { input } => input,
    };
    let trace = match kind {
        Replay { trace, .. } => Some(read_source(trace)?.parse::<MateTrace>()?),
        _ => None,
    };
    for g in load(input)? {
        let mut log = Vec::new();
        let h = match kind {
            Lozin { x, y, z, .. } => lozin_transform(&g, &LozinSpec { x: *x, y: vertex_set(y)?, z: vertex_set(z)? })?,
            Subdivide { x, y, k, .. } => subdivide_edge(&g, *x, *y, *k)?,
            Double { x, y, .. } => double_subdivision(&g, *x, *y)?,
            Triple { x, y, .. } => triple_subdivision(&g, *x, *y)?,
            DoubleAll { .. } => double_all(&g)?,
            Contract { x, y, .. } => contract_edge(&g, *x, *y)?,
            GContract { x, y, .. } => g_contract(&g, *x, *y)?,
            TContract { x, y, .. } => t_contract(&g, *x, *y)?,
            Deg2mate { a, b, c, d, .. } => deg2mate(&g, *a, *b, *c, *d)?,
            DegreeReductions { .. } => {
                let (h, steps) = degree_reductions(&g);
                log = steps.iter().map(|s| format!("{} {} {}", s.x, s.y, s.z)).collect();
                h
            }
            RegIm { x, y, k, .. } => construct_reg_im(&g, (*x, *y), *k)?,
            Replay { .. } => trace.as_ref().expect("parsed above").replay(&g)?,
            Complement { .. } => g.complement(),
        };
        let out = if edges { to_edge_list(&h).trim_end().to_string() } else { to_graph6(&h) };
        emit(opts, json!({"input": to_graph6(&g), "graph": to_graph6(&h), "n": h.n(), "steps": log}), out);
    }
    Ok(Status::ok())
}

fn decompose(opts: &Opts, input: &str, list: bool, reduce: Option<&str>) -> Result<Status> {
    let e = engine(opts)?;
    let mut status = Status::ok();
    for g in load(input)? {
        let f = prime_factorization_check(&e, &g)?;
        status.ok &= f.equal;
        let parts: Vec<Value> = f.factorization.iter().map(|p| json!({"set": p.set.to_vec(), "reg": p.reg})).collect();
        let mut v = json!({"graph": to_graph6(&g), "field": opts.field, "reg": f.reg,
                           "best_sum": f.best_sum, "equal": f.equal, "factorization": parts});
        let mut text = format!("reg {} best prime sum {}\n", f.reg, f.best_sum);
        for p in &f.factorization {
            text.push_str(&format!("part {} reg {}\n", p.set, p.reg));
        }
        if list {
            let budget = opts.budget.unwrap_or(100_000) as usize;
            let l = prime_decompositions(&e, &g, budget)?;
            status.inexact |= !l.complete;
            let items: Vec<Vec<Vec<usize>>> =
                l.items.iter().map(|d| d.parts.iter().map(|s| s.to_vec()).collect()).collect();
            for d in &l.items {
                let sets: Vec<String> = d.parts.iter().map(|s| s.to_string()).collect();
                text.push_str(&format!("decomposition {}\n", sets.join(" ")));
            }
            if !l.complete {
                text.push_str("INEXACT decomposition list truncated at the budget\n");
            }
            v["decompositions"] = json!(items);
            v["complete"] = json!(l.complete);
        }
        if let Some(r) = reduce {
            let res = reduction_algorithm(&e, &g, vertex_set(r)?)?;
            let rr = e.reg(&res.residual)?;
            text.push_str(&format!("reduction counter {} residual reg {rr} bound {}\n", res.counter, res.counter + rr));
            v["reduction"] = json!({"counter": res.counter, "residual": to_graph6(&res.residual),
                                    "residual_reg": rr, "residual_map": res.residual_map,
                                    "log": res.log.iter().map(|s| json!([s.vertex, s.prime])).collect::<Vec<_>>()});
        }
        emit(opts, v, text.trim_end().to_string());
    }
    Ok(status)
}

fn vim(opts: &Opts, input: &str, depth: usize, target: Option<usize>, expand: bool) -> Result<Status> {
    let mut budget = MateBudget { depth, target, ..Default::default() };
    if let Some(b) = opts.budget {
        budget.states = b as usize;
    }
    for g in load(input)? {
        let r = mate_search(&g, &budget)?;
        let trace = if expand { r.trace.expand_macros(&g)? } else { r.trace.clone() };
        let moves: Vec<String> = trace.moves.iter().map(|m| m.to_string()).collect();
        let mut text = format!("vim >= {}\nmate {}\nvisited {}\n", r.best_im, to_graph6(&r.best), r.visited);
        if r.budget_hit {
            text.push_str("BUDGET search stopped at its limit\n");
        }
        text.push_str(&trace.to_string());
        emit(
            opts,
            json!({"graph": to_graph6(&g), "vim_lower_bound": r.best_im, "mate": to_graph6(&r.best),
                   "visited": r.visited, "budget_hit": r.budget_hit, "trace": moves}),
            text.trim_end().to_string(),
        );
    }
    Ok(Status::ok())
}

fn verify(opts: &Opts, suites: &[String]) -> Result<Status> {
    for s in suites {
        if !SUITES.contains(&s.as_str()) {
            bail!("unknown suite '{s}'; available: {}", SUITES.join(", "));
        }
    }
    let so = SuiteOptions { seed: opts.seed, field: PrimeField::new(opts.field)?, slow: opts.slow, budget: opts.budget };
    let mut status = Status::ok();
    for s in suites {
        let r = run_suite(s, &so)?;
        status.ok &= r.passed();
        status.inexact |= r.flags.contains(&Flag::Inexact);
        if opts.json {
            println!("{}", serde_json::to_string(&r)?);
        } else {
            let flags: Vec<String> = r.flags.iter().map(|f| format!("{f:?}").to_uppercase()).collect();
            println!(
                "{} {}: {} instances, {} failures, {} ms{}",
                if r.passed() { "PASS" } else { "FAIL" },
                r.suite,
                r.count,
                r.failures.len(),
                r.wall_ms,
                if flags.is_empty() { String::new() } else { format!(" [{}]", flags.join(",")) }
            );
            for f in &r.failures {
                println!("  {} {}: expected {}, got {}", f.graph, f.check, f.expected, f.got);
            }
            for n in &r.notes {
                eprintln!("  note: {n}");
            }
        }
    }
    Ok(status)
}

fn run(cli: &Cli) -> Result<Status> {
    let o = &cli.opts;
    match &cli.cmd {
        Cmd::Reg { input } => reg(o, input),
        Cmd::Betti { input } => betti(o, input),
        Cmd::Prime { input } => prime(o, input),
        Cmd::Invariants { input } => invariants(o, input),
        Cmd::Transform { kind, edges } => transform(o, kind, *edges),
        Cmd::Decompose { input, list, reduce } => decompose(o, input, *list, reduce.as_deref()),
        Cmd::Vim { input, depth, target, expand } => vim(o, input, *depth, *target, *expand),
        Cmd::Verify { suites } => verify(o, suites),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = std::env::var("REGRAPH_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("warning: REGRAPH_THREADS ignored: {e}");
        }
    }
    match run(&cli) {
        Ok(s) if s.ok && (!s.inexact || cli.opts.allow_inexact) => ExitCode::SUCCESS,
        Ok(s) => {
            if s.ok {
                eprintln!("result is INEXACT; pass --allow-inexact to accept bounds");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
