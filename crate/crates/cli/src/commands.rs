use std::path::Path;

use coopcolor_core::chain_partition::{
    check_br_constraints, coop_color_chain_pair, partition_two_cycles, BrPartition,
    TwoCycleInstance,
};
use coopcolor_core::doc::{
    parse_any_instance, parse_chain, parse_coloring, ChainDoc, ColoringDoc, InstanceDoc,
    LowerBoundDoc,
};
use coopcolor_core::experiment::{
    bench_partition, geometric_grid, run_trial, summarize, TrialSpec,
};
use coopcolor_core::generators::{
    make_loose_cycle, make_loose_path, make_tight_cycle, make_tight_path,
};
use coopcolor_core::hypergraph::{verify_coop_coloring, CoopColoring, CoopInstance, CoopVerdict};
use coopcolor_core::multipartite::{
    build_lower_bound_family, compute_bounds, gen_random_kpartite, lll_diagnostic,
    semi_random_coloring, FailureReport, SemiRandomConfig, SemiRandomOutcome,
};
use coopcolor_core::oracle::{
    exact_coop_coloring, exists_br_partition, SearchBudget, SearchOutcome,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::output::{
    csv_text, read_text, sibling, to_json, CmdResult, Failure, Run, EXIT_ABORTED, EXIT_INTERNAL,
    EXIT_NEGATIVE,
};

pub const MAX_ORACLE_ENV: &str = "COOPCOLOR_MAX_ORACLE";

pub fn gen_chain(
    kind: &str,
    size: usize,
    k: usize,
    out: Option<&Path>,
    chain_out: Option<&Path>,
) -> CmdResult {
    let (size_key, (h, chain)) = match kind {
        "tight-cycle" => ("n", make_tight_cycle(size, k)?),
        "loose-cycle" => ("edges", make_loose_cycle(size, k)?),
        "tight-path" => ("n", make_tight_path(size, k)?),
        "loose-path" => ("edges", make_loose_path(size, k)?),
        _ => unreachable!("unknown chain generator {kind}"),
    };
    let mut run = Run::new(&format!("gen {kind}"));
    run.param(size_key, size).param("k", k);
    eprintln!("{kind}: {} vertices, {} edges", h.n(), h.edges().len());
    let inst = CoopInstance::new(vec![h])?;
    run.emit(out, &to_json(&InstanceDoc::from(&inst)))?;
    let chain_path = chain_out
        .map(Path::to_path_buf)
        .or_else(|| out.map(|p| sibling(p, "chain.json")));
    if let Some(path) = chain_path {
        run.emit_file(&path, &to_json(&ChainDoc::from(&chain)))?;
    }
    Ok(())
}

pub fn gen_lower_bound(k: usize, m: usize, out: Option<&Path>) -> CmdResult {
    let fam = build_lower_bound_family(k, m)?;
    eprintln!(
        "lower-bound family: {} vertices, {m} complete {k}-partite hypergraphs",
        fam.n()
    );
    let mut run = Run::new("gen lower-bound");
    run.param("k", k).param("m", m);
    run.emit(out, &to_json(&LowerBoundDoc::from(&fam)))
}

pub fn gen_random(
    k: usize,
    m: usize,
    n: usize,
    dmax: usize,
    seed: u64,
    out: Option<&Path>,
) -> CmdResult {
    let inst = gen_random_kpartite(k, m, n, dmax, seed)?;
    let mut max_degree = 0;
    for (j, h) in inst.hypergraphs().iter().enumerate() {
        let parts = h.parts().unwrap_or_default();
        let d = h.degrees().into_iter().max().unwrap_or(0);
        max_degree = max_degree.max(d);
        let balanced = parts.len() == k && parts.iter().all(|p| p.len() == n / k);
        if !balanced || d > dmax || h.edges().iter().any(|e| e.len() != k) {
            return Err(Failure::new(
                EXIT_INTERNAL,
                format!("degree audit failed on hypergraph {j}"),
            ));
        }
    }
    let edges: usize = inst.hypergraphs().iter().map(|h| h.edges().len()).sum();
    eprintln!("audit ok: {m} hypergraphs, {edges} edges, max degree {max_degree} <= {dmax}");
    let mut run = Run::new("gen random-kpartite");
    run.param("k", k)
        .param("m", m)
        .param("n", n)
        .param("dmax", dmax)
        .seed(seed);
    run.emit(out, &to_json(&InstanceDoc::from(&inst)))
}

fn parse_perm(n: usize, text: &str) -> CmdResult<TwoCycleInstance> {
    let a = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Failure::input(format!("bad permutation entry {t:?}: {e}")))
        })
        .collect::<CmdResult<Vec<_>>>()?;
    if a.len() != n {
        return Err(Failure::input(format!(
            "permutation has {} entries, expected {n}",
            a.len()
        )));
    }
    Ok(TwoCycleInstance::new(a)?)
}

#[derive(Serialize)]
struct PartitionDoc<'a> {
    #[serde(rename = "B")]
    blue: Vec<usize>,
    #[serde(rename = "R")]
    red: Vec<usize>,
    #[serde(rename = "caseTag", skip_serializing_if = "Option::is_none")]
    case_tag: Option<&'a str>,
}

pub fn partition(n: usize, perm: &str, out: Option<&Path>) -> CmdResult {
    let inst = parse_perm(n, perm)?;
    let (p, trace) = partition_two_cycles(&inst)?;
    if !check_br_constraints(&inst, &p)?.is_ok() {
        return Err(Failure::new(
            EXIT_INTERNAL,
            "partition failed the constraint check",
        ));
    }
    eprintln!("case {}, constraint check ok", trace.case.as_str());
    let mut run = Run::new("partition");
    run.param("n", n).param("perm", perm);
    let doc = PartitionDoc {
        blue: p.blue(),
        red: p.red(),
        case_tag: Some(trace.case.as_str()),
    };
    run.emit(out, &to_json(&doc))
}

fn ensure_cooperative(inst: &CoopInstance, coloring: &CoopColoring) -> CmdResult {
    match verify_coop_coloring(inst, coloring)? {
        CoopVerdict::Ok => Ok(()),
        CoopVerdict::Violation { hypergraph, edge } => Err(Failure::new(
            EXIT_INTERNAL,
            format!(
                "produced coloring puts edge {edge:?} of hypergraph {hypergraph} in its own class"
            ),
        )),
    }
}

pub fn color_chain_pair(h1: &Path, h2: &Path, out: Option<&Path>) -> CmdResult {
    let (c1, c2) = (parse_chain(&read_text(h1)?)?, parse_chain(&read_text(h2)?)?);
    let coloring = coop_color_chain_pair(&c1, &c2)?;
    ensure_cooperative(
        &CoopInstance::new(vec![c1.to_hypergraph()?, c2.to_hypergraph()?])?,
        &coloring,
    )?;
    let mut run = Run::new("color chain-pair");
    run.param("h1", h1.display().to_string())
        .param("h2", h2.display().to_string());
    run.emit(out, &to_json(&ColoringDoc::from(&coloring)))
}

fn failure_json(report: &FailureReport, cfg: &SemiRandomConfig) -> serde_json::Value {
    let s = &report.state;
    let last = s.k() - 1;
    let bad: Vec<_> = report
        .bad_vertices
        .iter()
        .map(|&w| json!({ "vertex": w, "wClass": s.w_class(w) + 1, "candidates": s.j_set(w, last), "pruned": s.pruned(w) }))
        .collect();
    json!({
        "outcome": "aborted",
        "rounds": report.rounds,
        "maxRounds": cfg.max_rounds,
        "seed": cfg.seed,
        "epsilon": cfg.epsilon,
        "k": s.k(),
        "m": s.m(),
        "badVertices": bad,
    })
}

pub fn color_semirandom(
    instance: &Path,
    seed: u64,
    epsilon: f64,
    max_rounds: Option<usize>,
    out: Option<&Path>,
    report: Option<&Path>,
) -> CmdResult {
    let inst = parse_any_instance(&read_text(instance)?)?.instance()?;
    let cfg = match max_rounds {
        Some(r) => SemiRandomConfig::new(epsilon, seed, r)?,
        None => SemiRandomConfig::with_default_rounds(epsilon, seed, inst.n())?,
    };
    let mut run = Run::new("color semirandom");
    run.param("instance", instance.display().to_string())
        .param("epsilon", epsilon)
        .param("maxRounds", cfg.max_rounds)
        .seed(seed);
    match semi_random_coloring(&inst, &cfg)? {
        SemiRandomOutcome::Success {
            coloring, rounds, ..
        } => {
            ensure_cooperative(&inst, &coloring)?;
            eprintln!("success after {rounds} resampling rounds");
            run.emit(out, &to_json(&ColoringDoc::from(&coloring)))
        }
        SemiRandomOutcome::Aborted(r) => {
            let text = to_json(&failure_json(&r, &cfg));
            match report
                .map(Path::to_path_buf)
                .or_else(|| out.map(|p| sibling(p, "failure.json")))
            {
                Some(path) => run.emit_file(&path, &text)?,
                None => print!("{text}"),
            }
            Err(Failure::new(
                EXIT_ABORTED,
                format!(
                    "aborted after {} rounds with {} bad vertices",
                    r.rounds,
                    r.bad_vertices.len()
                ),
            ))
        }
    }
}

pub fn verify(instance: &Path, coloring: &Path) -> CmdResult {
    let inst = parse_any_instance(&read_text(instance)?)?.instance()?;
    let coloring = parse_coloring(&read_text(coloring)?)?;
    match verify_coop_coloring(&inst, &coloring)? {
        CoopVerdict::Ok => {
            println!("ok");
            Ok(())
        }
        CoopVerdict::Violation { hypergraph, edge } => {
            let set: Vec<String> = edge.iter().map(usize::to_string).collect();
            println!(
                "violation: hypergraph {hypergraph}, edge {{{}}}",
                set.join(",")
            );
            Err(Failure::new(EXIT_NEGATIVE, "coloring is not cooperative"))
        }
    }
}

pub fn bounds(k: usize, d: f64, epsilon: f64, m: Option<usize>) -> CmdResult {
    let b = compute_bounds(k, d, epsilon)?;
    let m = m.unwrap_or(b.upper.ceil() as usize);
    let lll = lll_diagnostic(k, d, m);
    let doc = json!({
        "k": k,
        "d": d,
        "epsilon": epsilon,
        "lower": b.lower,
        "upper": b.upper,
        "lll": { "m": m, "value": lll.value, "holds": lll.holds, "informational": true },
    });
    print!("{}", to_json(&doc));
    Ok(())
}

fn budget(max_assignments: Option<u64>, max_vertices: usize) -> CmdResult<SearchBudget> {
    let from_env = match std::env::var(MAX_ORACLE_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<u64>()
                .map_err(|e| Failure::input(format!("{MAX_ORACLE_ENV}={v:?}: {e}")))?,
        ),
        Err(_) => None,
    };
    let cap = max_assignments
        .or(from_env)
        .unwrap_or(SearchBudget::default().max_assignments);
    Ok(SearchBudget::new(cap, max_vertices)?)
}

pub fn oracle_solve(
    instance: &Path,
    max_assignments: Option<u64>,
    max_vertices: usize,
    out: Option<&Path>,
) -> CmdResult {
    let inst = parse_any_instance(&read_text(instance)?)?.instance()?;
    let budget = budget(max_assignments, max_vertices)?;
    let mut run = Run::new("oracle solve");
    run.param("instance", instance.display().to_string())
        .param("maxAssignments", budget.max_assignments)
        .param("maxVertices", budget.max_vertices);
    match exact_coop_coloring(&inst, &budget) {
        SearchOutcome::Found(c) => run.emit(out, &to_json(&ColoringDoc::from(&c))),
        SearchOutcome::None => {
            println!("none");
            Err(Failure::new(EXIT_NEGATIVE, ""))
        }
        SearchOutcome::BudgetExceeded => {
            println!("budget-exceeded");
            Err(Failure::new(EXIT_NEGATIVE, "search budget exceeded"))
        }
    }
}

pub fn oracle_partition(n: usize, perm: &str, out: Option<&Path>) -> CmdResult {
    let inst = parse_perm(n, perm)?;
    let mut run = Run::new("oracle partition");
    run.param("n", n).param("perm", perm);
    match exists_br_partition(&inst)? {
        SearchOutcome::Found(p) => emit_partition(&run, &p, out),
        _ => {
            println!("none");
            Err(Failure::new(EXIT_NEGATIVE, ""))
        }
    }
}

fn emit_partition(run: &Run, p: &BrPartition, out: Option<&Path>) -> CmdResult {
    run.emit(
        out,
        &to_json(&PartitionDoc {
            blue: p.blue(),
            red: p.red(),
            case_tag: None,
        }),
    )
}

pub struct SweepArgs<'a> {
    pub k: usize,
    pub n: usize,
    pub dmax: usize,
    pub m: &'a str,
    pub trials: usize,
    pub seed: u64,
    pub max_rounds: usize,
    pub epsilon: f64,
}

fn parse_range(text: &str) -> CmdResult<(usize, usize)> {
    let bad = || Failure::input(format!("expected a range a:b, got {text:?}"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let (a, b) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn sweep(args: SweepArgs, out: Option<&Path>) -> CmdResult {
    let (lo, hi) = parse_range(args.m)?;
    if args.trials == 0 {
        return Err(Failure::input("trials must be at least 1"));
    }
    let spec = TrialSpec {
        k: args.k,
        n: args.n,
        dmax: args.dmax,
        epsilon: args.epsilon,
        max_rounds: args.max_rounds,
    };
    let jobs: Vec<(usize, usize)> = (lo..=hi)
        .flat_map(|m| (0..args.trials).map(move |t| (m, t)))
        .collect();
    let mut results = jobs
        .par_iter()
        .map(|&(m, t)| run_trial(&spec, m, t, args.seed))
        .collect::<coopcolor_core::Result<Vec<_>>>()?;
    let rows = summarize(&mut results);
    let mut run = Run::new("experiment sweep");
    run.param("k", args.k)
        .param("n", args.n)
        .param("dmax", args.dmax)
        .param("m", args.m)
        .param("trials", args.trials)
        .param("maxRounds", args.max_rounds)
        .param("epsilon", args.epsilon)
        .seed(args.seed);
    run.emit(out, &csv_text(&rows)?)
}

pub fn bench(start: usize, count: usize, reps: usize, seed: u64, out: Option<&Path>) -> CmdResult {
    let rows = bench_partition(&geometric_grid(start, count), reps, seed)?;
    let mut run = Run::new("bench");
    run.param("start", start)
        .param("count", count)
        .param("reps", reps)
        .seed(seed);
    run.emit(out, &csv_text(&rows)?)
}
