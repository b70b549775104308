//! Uniform tight and loose cycles and paths, each returned both as an explicit
//! hypergraph and as the chain system it was laid out on.
//!
//! Loose structures use the canonical layout: edge `i` is the run of `k`
//! positions starting at `i·(k−1)`, so consecutive edges overlap in exactly one
//! vertex.

use crate::error::{ensure, Result};
use crate::hypergraph::{ChainSystem, Hypergraph, Interval};

fn build(n: usize, intervals: Vec<Interval>, closed: bool) -> Result<(Hypergraph, ChainSystem)> {
    let chain = ChainSystem::new((0..n).collect(), intervals, closed)?;
    let h = chain.to_hypergraph()?;
    Ok((h, chain))
}

/// Every circular run of `k` vertices on `0..n` is an edge.
pub fn make_tight_cycle(n: usize, k: usize) -> Result<(Hypergraph, ChainSystem)> {
    ensure!(k >= 3, Parameter, "tight cycle needs k >= 3, got {k}");
    ensure!(
        n > k,
        Parameter,
        "tight cycle needs n > k, got n = {n}, k = {k}"
    );
    build(n, (0..n).map(|i| Interval::new(i, k)).collect(), true)
}

/// `m_edges` edges of size `k` around a circle of `m_edges·(k−1)` vertices.
pub fn make_loose_cycle(m_edges: usize, k: usize) -> Result<(Hypergraph, ChainSystem)> {
    ensure!(k >= 3, Parameter, "loose cycle needs k >= 3, got {k}");
    ensure!(
        m_edges >= 3,
        Parameter,
        "loose cycle needs at least 3 edges, got {m_edges}"
    );
    let n = m_edges * (k - 1);
    build(
        n,
        (0..m_edges)
            .map(|i| Interval::new(i * (k - 1), k))
            .collect(),
        true,
    )
}

/// Every run of `k` vertices along the line `0..n`.
pub fn make_tight_path(n: usize, k: usize) -> Result<(Hypergraph, ChainSystem)> {
    ensure!(k >= 3, Parameter, "tight path needs k >= 3, got {k}");
    ensure!(
        n >= k,
        Parameter,
        "tight path needs n >= k, got n = {n}, k = {k}"
    );
    build(n, (0..=n - k).map(|i| Interval::new(i, k)).collect(), false)
}

/// `m_edges` edges of size `k` along a line of `m_edges·(k−1)+1` vertices.
pub fn make_loose_path(m_edges: usize, k: usize) -> Result<(Hypergraph, ChainSystem)> {
    ensure!(k >= 3, Parameter, "loose path needs k >= 3, got {k}");
    ensure!(
        m_edges >= 1,
        Parameter,
        "loose path needs at least one edge"
    );
    let n = m_edges * (k - 1) + 1;
    build(
        n,
        (0..m_edges)
            .map(|i| Interval::new(i * (k - 1), k))
            .collect(),
        false,
    )
}
