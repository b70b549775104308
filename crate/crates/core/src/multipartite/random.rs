use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{ensure, Result};
use crate::hypergraph::{CoopInstance, Hypergraph};
use crate::rng::seeded_rng;

/// Random family of `m` k-partite k-uniform hypergraphs on `n` vertices with
/// maximum degree at most `dmax`.
///
/// Each hypergraph draws its own balanced partition (a shuffle cut into `k`
/// runs of `n/k`), then samples uniform transversals, rejecting any that
/// repeats an edge or would push a vertex past `dmax`. Sampling stops after
/// `n·dmax/k` accepted edges or `50·n·dmax` rejections.
pub fn gen_random_kpartite(
    k: usize,
    m: usize,
    n: usize,
    dmax: usize,
    seed: u64,
) -> Result<CoopInstance> {
    ensure!(k >= 3, Parameter, "k must be at least 3, got {k}");
    ensure!(m >= 1, Parameter, "need at least one hypergraph");
    ensure!(
        n >= k && n.is_multiple_of(k),
        Parameter,
        "n = {n} must be a positive multiple of k = {k}"
    );
    ensure!(dmax >= 1, Parameter, "dmax must be at least 1");

    let mut rng = seeded_rng(seed);
    let size = n / k;
    let target = n * dmax / k;
    let max_rejections = 50 * n * dmax;
    let mut hypergraphs = Vec::with_capacity(m);
    for _ in 0..m {
        let mut shuffled: Vec<usize> = (0..n).collect();
        shuffled.shuffle(&mut rng);
        let parts: Vec<Vec<usize>> = shuffled
            .chunks(size)
            .map(|c| {
                let mut p = c.to_vec();
                p.sort_unstable();
                p
            })
            .collect();

        let mut degree = vec![0usize; n];
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(target);
        let mut rejections = 0;
        while edges.len() < target && rejections < max_rejections {
            let mut e: Vec<usize> = parts.iter().map(|p| p[rng.random_range(0..size)]).collect();
            e.sort_unstable();
            if e.iter().any(|&v| degree[v] >= dmax) || seen.contains(&e) {
                rejections += 1;
                continue;
            }
            for &v in &e {
                degree[v] += 1;
            }
            seen.insert(e.clone());
            edges.push(e);
        }
        hypergraphs.push(Hypergraph::explicit_kpartite(n, edges, parts)?);
    }
    CoopInstance::new(hypergraphs)
}
