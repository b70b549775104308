use crate::chain_partition::two_cycle::{partition_two_cycles, Side, TwoCycleInstance};
use crate::error::{ensure, Error, Result};
use crate::hypergraph::{
    verify_coop_coloring, ChainSystem, CoopColoring, CoopInstance, CoopVerdict, Interval,
};

/// Rotates a chain system so that its 2-edge, if it has one, starts at
/// position 0. Returns the rotated copy and the position offset applied.
pub fn canonicalize_chain(c: &ChainSystem) -> Result<(ChainSystem, usize)> {
    let n = c.n();
    ensure!(
        n >= 3,
        Validation,
        "chain system needs at least 3 vertices, got {n}"
    );
    if let Some(iv) = c.intervals().iter().find(|iv| iv.len < 2) {
        return Err(Error::Validation(format!(
            "interval ({}, {}) has fewer than 2 vertices",
            iv.start, iv.len
        )));
    }
    let mut two_edge_starts: Vec<usize> = c
        .intervals()
        .iter()
        .filter(|iv| iv.len == 2)
        .map(|iv| iv.start)
        .collect();
    two_edge_starts.sort_unstable();
    two_edge_starts.dedup();
    let rotation = match two_edge_starts.as_slice() {
        [] => return Ok((c.clone(), 0)),
        [start] => *start,
        more => {
            return Err(Error::Unsupported(format!(
                "chain system has {} two-edges; at most one is supported",
                more.len()
            )))
        }
    };
    let order = (0..n).map(|p| c.order()[(p + rotation) % n]).collect();
    let intervals = c
        .intervals()
        .iter()
        .map(|iv| Interval::new((iv.start + n - rotation) % n, iv.len))
        .collect();
    Ok((
        ChainSystem::new_rotated(order, intervals, c.closed())?,
        rotation,
    ))
}

/// Cooperatively colors two chain systems on the same vertices, each with
/// at most one 2-edge: class 0 is independent in `h1`, class 1 in `h2`.
///
/// After canonicalization, relabel vertices by their position on `h1`'s
/// circle and read `h2`'s circle as a permutation of those positions. Every
/// `h1` edge then contains the pair at position 0 or the triple at its
/// start, and likewise for `h2`, so the two-cycle partition keeps every edge
/// out of its own class.
pub fn coop_color_chain_pair(h1: &ChainSystem, h2: &ChainSystem) -> Result<CoopColoring> {
    ensure!(
        h1.n() == h2.n(),
        Validation,
        "chain systems have different vertex counts ({} and {})",
        h1.n(),
        h2.n()
    );
    let n = h1.n();
    let (c1, _) = canonicalize_chain(h1)?;
    let (c2, _) = canonicalize_chain(h2)?;

    let mut pos1 = vec![0; n];
    for (p, &v) in c1.order().iter().enumerate() {
        pos1[v] = p;
    }
    let a = c2.order().iter().map(|&v| pos1[v]).collect();
    let (partition, _) = partition_two_cycles(&TwoCycleInstance::new(a)?)?;

    let mut assignment = vec![0; n];
    for (p, &v) in c1.order().iter().enumerate() {
        assignment[v] = match partition.side(p) {
            Side::Blue => 0,
            Side::Red => 1,
        };
    }
    let coloring = CoopColoring::new(2, assignment)?;

    let family = CoopInstance::new(vec![h1.to_hypergraph()?, h2.to_hypergraph()?])?;
    if let CoopVerdict::Violation { hypergraph, edge } = verify_coop_coloring(&family, &coloring)? {
        return Err(Error::AlgorithmInvariant(format!(
            "chain-pair coloring puts edge {edge:?} of system {hypergraph} inside its class"
        )));
    }
    Ok(coloring)
}
