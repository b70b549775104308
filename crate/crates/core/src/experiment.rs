//! Seeded semi-random trials and partition timings, shared by the CLI's
//! `experiment` and `bench` commands and by the acceptance suite.

use std::time::Instant;

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::chain_partition::{check_br_constraints, partition_two_cycles, TwoCycleInstance};
use crate::error::{ensure, Error, Result};
use crate::multipartite::{gen_random_kpartite, semi_random_coloring, SemiRandomConfig};
use crate::rng::seeded_rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSpec {
    pub k: usize,
    pub n: usize,
    pub dmax: usize,
    pub epsilon: f64,
    pub max_rounds: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialResult {
    pub m: usize,
    pub trial: usize,
    pub seed: u64,
    pub success: bool,
    pub rounds: usize,
}

/// Trial `t` of a sweep uses seed `base_seed + t` both to generate the
/// instance and to drive the process.
pub fn run_trial(spec: &TrialSpec, m: usize, trial: usize, base_seed: u64) -> Result<TrialResult> {
    let seed = base_seed.wrapping_add(trial as u64);
    let inst = gen_random_kpartite(spec.k, m, spec.n, spec.dmax, seed)?;
    let cfg = SemiRandomConfig::new(spec.epsilon, seed, spec.max_rounds)?;
    let out = semi_random_coloring(&inst, &cfg)?;
    Ok(TrialResult {
        m,
        trial,
        seed,
        success: out.is_success(),
        rounds: out.rounds(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub m: usize,
    pub successes: usize,
    pub trials: usize,
    /// Mean over all trials; an aborted trial counts its full round budget.
    pub mean_rounds: f64,
}

/// Sorts by `(m, trial)` and folds into one row per `m`.
pub fn summarize(results: &mut [TrialResult]) -> Vec<SweepRow> {
    results.sort_by_key(|r| (r.m, r.trial));
    results
        .chunk_by(|a, b| a.m == b.m)
        .map(|group| SweepRow {
            m: group[0].m,
            successes: group.iter().filter(|r| r.success).count(),
            trials: group.len(),
            mean_rounds: group.iter().map(|r| r.rounds as f64).sum::<f64>() / group.len() as f64,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub reps: usize,
    /// Case tag of the last instance timed at this size.
    pub case: String,
    pub min_nanos: u128,
    pub median_nanos: u128,
    /// `min_nanos / n`; the minimum is the least disturbed by other load.
    pub nanos_per_vertex: f64,
}

/// Times `partition_two_cycles` on `reps` random permutations per size and
/// checks every output. Permutation generation is not timed.
pub fn bench_partition(ns: &[usize], reps: usize, seed: u64) -> Result<Vec<BenchRow>> {
    ensure!(reps >= 1, Parameter, "reps must be at least 1");
    let mut rng = seeded_rng(seed);
    ns.iter()
        .map(|&n| {
            ensure!(n >= 3, Parameter, "bench sizes must be at least 3, got {n}");
            let mut times = Vec::with_capacity(reps);
            let mut case = "";
            for _ in 0..reps {
                let mut a: Vec<usize> = (0..n).collect();
                a.shuffle(&mut rng);
                let inst = TwoCycleInstance::new(a)?;
                let start = Instant::now();
                let (p, trace) = partition_two_cycles(&inst)?;
                times.push(start.elapsed().as_nanos());
                if !check_br_constraints(&inst, &p)?.is_ok() {
                    return Err(Error::AlgorithmInvariant(format!(
                        "bench partition failed the checker at n = {n}"
                    )));
                }
                case = trace.case.as_str();
            }
            times.sort_unstable();
            Ok(BenchRow {
                n,
                reps,
                case: case.to_string(),
                min_nanos: times[0],
                median_nanos: times[times.len() / 2],
                nanos_per_vertex: times[0] as f64 / n as f64,
            })
        })
        .collect()
}

/// `count` sizes `start·2^i`.
pub fn geometric_grid(start: usize, count: usize) -> Vec<usize> {
    (0..count).map(|i| start << i).collect()
}
