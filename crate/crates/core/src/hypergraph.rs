//! Hypergraphs, families of hypergraphs on a shared vertex set, and
//! cooperative colorings of such families.
//!
//! Vertices are dense ids `0..n`. A [`Hypergraph`] is either an explicit edge
//! list (optionally declared k-partite) or an implicit complete k-partite
//! hypergraph whose edges are all transversals of its parts. Implicit
//! hypergraphs are never expanded unless [`Hypergraph::materialize`] is asked
//! to, since `(n/k)^k` edges is out of reach for anything but tiny instances.

use crate::error::{ensure, Error, Result};

pub type VertexId = usize;

/// Hard cap on the number of edges [`Hypergraph::materialize`] will produce.
pub const MATERIALIZE_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HypergraphKind {
    Explicit,
    CompleteKPartite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    kind: HypergraphKind,
    edges: Vec<Vec<VertexId>>,
    parts: Option<Vec<Vec<VertexId>>>,
}

impl Hypergraph {
    /// General constructor; validates every structural invariant.
    ///
    /// Edges are stored sorted. Duplicate vertices inside an edge are
    /// rejected rather than collapsed.
    pub fn new(
        n: usize,
        kind: HypergraphKind,
        edges: Vec<Vec<VertexId>>,
        parts: Option<Vec<Vec<VertexId>>>,
    ) -> Result<Self> {
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(idx, e)| {
                normalize_set(n, e).map_err(|m| Error::Validation(format!("edge {idx}: {m}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let parts = parts
            .map(|ps| {
                ps.into_iter()
                    .enumerate()
                    .map(|(idx, p)| {
                        normalize_set(n, p)
                            .map_err(|m| Error::Validation(format!("part {idx}: {m}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;

        if let Some(ps) = &parts {
            let mut owner = vec![usize::MAX; n];
            for (i, p) in ps.iter().enumerate() {
                for &v in p {
                    ensure!(
                        owner[v] == usize::MAX,
                        Validation,
                        "vertex {v} lies in parts {} and {i}",
                        owner[v]
                    );
                    owner[v] = i;
                }
            }
            if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
                return Err(Error::Validation(format!(
                    "vertex {v} is not covered by any part"
                )));
            }
            for (idx, e) in edges.iter().enumerate() {
                let mut hits = vec![0usize; ps.len()];
                for &v in e {
                    hits[owner[v]] += 1;
                }
                ensure!(
                    hits.iter().all(|&h| h == 1),
                    Validation,
                    "edge {idx} {e:?} does not meet every part exactly once"
                );
            }
        }

        if kind == HypergraphKind::CompleteKPartite {
            ensure!(
                parts.is_some(),
                Validation,
                "complete k-partite hypergraph needs parts"
            );
            ensure!(
                edges.is_empty(),
                Validation,
                "complete k-partite hypergraph must not list edges"
            );
        }

        Ok(Self {
            n,
            kind,
            edges,
            parts,
        })
    }

    pub fn explicit(n: usize, edges: Vec<Vec<VertexId>>) -> Result<Self> {
        Self::new(n, HypergraphKind::Explicit, edges, None)
    }

    pub fn explicit_kpartite(
        n: usize,
        edges: Vec<Vec<VertexId>>,
        parts: Vec<Vec<VertexId>>,
    ) -> Result<Self> {
        Self::new(n, HypergraphKind::Explicit, edges, Some(parts))
    }

    pub fn complete_kpartite(n: usize, parts: Vec<Vec<VertexId>>) -> Result<Self> {
        Self::new(n, HypergraphKind::CompleteKPartite, Vec::new(), Some(parts))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> HypergraphKind {
        self.kind
    }

    /// The explicit edge list. Empty for complete k-partite hypergraphs.
    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn parts(&self) -> Option<&[Vec<VertexId>]> {
        self.parts.as_deref()
    }

    pub fn is_complete_kpartite(&self) -> bool {
        self.kind == HypergraphKind::CompleteKPartite
    }

    /// Part index of every vertex, when parts are declared.
    pub fn part_index(&self) -> Option<Vec<usize>> {
        let parts = self.parts.as_ref()?;
        let mut owner = vec![0; self.n];
        for (i, p) in parts.iter().enumerate() {
            for &v in p {
                owner[v] = i;
            }
        }
        Some(owner)
    }

    /// Number of edges, counting implicit transversals (saturating).
    pub fn edge_count(&self) -> u128 {
        match self.kind {
            HypergraphKind::Explicit => self.edges.len() as u128,
            HypergraphKind::CompleteKPartite => self
                .parts
                .as_ref()
                .map(|ps| {
                    ps.iter()
                        .fold(1u128, |acc, p| acc.saturating_mul(p.len() as u128))
                })
                .unwrap_or(0),
        }
    }

    /// Expands an implicit complete k-partite hypergraph into an explicit one
    /// with the same parts. Explicit hypergraphs are returned unchanged.
    pub fn materialize(&self) -> Result<Hypergraph> {
        if self.kind == HypergraphKind::Explicit {
            return Ok(self.clone());
        }
        let count = self.edge_count();
        ensure!(
            count <= MATERIALIZE_CAP,
            Size,
            "materializing {count} edges exceeds the cap of {MATERIALIZE_CAP}"
        );
        let parts = self.parts.as_ref().expect("validated");
        let mut edges = Vec::with_capacity(count as usize);
        if parts.iter().all(|p| !p.is_empty()) {
            let mut cursor = vec![0usize; parts.len()];
            'outer: loop {
                let mut e: Vec<_> = cursor.iter().zip(parts).map(|(&c, p)| p[c]).collect();
                e.sort_unstable();
                edges.push(e);
                for (slot, p) in cursor.iter_mut().zip(parts).rev() {
                    *slot += 1;
                    if *slot < p.len() {
                        continue 'outer;
                    }
                    *slot = 0;
                }
                break;
            }
        }
        Ok(Hypergraph {
            n: self.n,
            kind: HypergraphKind::Explicit,
            edges,
            parts: self.parts.clone(),
        })
    }

    /// Returns an edge fully inside the vertex set described by `member`
    /// (a membership mask of length `n`), or `None` when the set is
    /// independent. For complete k-partite hypergraphs the witness is the
    /// transversal of the smallest member in each part.
    pub fn edge_within(&self, member: &[bool]) -> Option<Vec<VertexId>> {
        debug_assert_eq!(member.len(), self.n);
        match self.kind {
            HypergraphKind::Explicit => self
                .edges
                .iter()
                .find(|e| e.iter().all(|&v| member[v]))
                .cloned(),
            HypergraphKind::CompleteKPartite => {
                let parts = self.parts.as_ref().expect("validated");
                let mut witness = Vec::with_capacity(parts.len());
                for p in parts {
                    witness.push(*p.iter().find(|&&v| member[v])?);
                }
                witness.sort_unstable();
                Some(witness)
            }
        }
    }

    /// True iff no edge of the hypergraph is a subset of `set`.
    pub fn is_independent(&self, set: &[VertexId]) -> Result<bool> {
        let mut member = vec![false; self.n];
        for &v in set {
            ensure!(
                v < self.n,
                Validation,
                "vertex {v} out of range for n = {}",
                self.n
            );
            member[v] = true;
        }
        Ok(self.edge_within(&member).is_none())
    }

    /// Maximum number of edges through a single vertex. Complete k-partite
    /// hypergraphs use the closed form: a vertex of part `i` lies in
    /// `prod_{p != i} |part p|` transversals.
    pub fn max_degree(&self) -> u128 {
        match self.kind {
            HypergraphKind::Explicit => {
                let mut deg = vec![0u128; self.n];
                for e in &self.edges {
                    for &v in e {
                        deg[v] += 1;
                    }
                }
                deg.into_iter().max().unwrap_or(0)
            }
            HypergraphKind::CompleteKPartite => {
                let parts = self.parts.as_ref().expect("validated");
                (0..parts.len())
                    .filter(|&i| !parts[i].is_empty())
                    .map(|i| {
                        parts
                            .iter()
                            .enumerate()
                            .filter(|&(p, _)| p != i)
                            .fold(1u128, |acc, (_, q)| acc.saturating_mul(q.len() as u128))
                    })
                    .max()
                    .unwrap_or(0)
            }
        }
    }

    /// Per-vertex degrees of an explicit hypergraph.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }
}

fn normalize_set(n: usize, mut set: Vec<VertexId>) -> std::result::Result<Vec<VertexId>, String> {
    if let Some(&v) = set.iter().find(|&&v| v >= n) {
        return Err(format!("vertex {v} out of range for n = {n}"));
    }
    set.sort_unstable();
    if let Some(w) = set.windows(2).find(|w| w[0] == w[1]) {
        return Err(format!("vertex {} repeated", w[0]));
    }
    Ok(set)
}

/// A family of hypergraphs sharing the vertex set `0..n`. Members need not be
/// distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoopInstance {
    n: usize,
    hypergraphs: Vec<Hypergraph>,
}

impl CoopInstance {
    pub fn new(hypergraphs: Vec<Hypergraph>) -> Result<Self> {
        ensure!(
            !hypergraphs.is_empty(),
            Validation,
            "a family needs at least one hypergraph"
        );
        let n = hypergraphs[0].n();
        for (j, h) in hypergraphs.iter().enumerate() {
            ensure!(
                h.n() == n,
                Validation,
                "hypergraph {j} has {} vertices, expected {n}",
                h.n()
            );
        }
        Ok(Self { n, hypergraphs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of hypergraphs in the family.
    pub fn m(&self) -> usize {
        self.hypergraphs.len()
    }

    pub fn hypergraphs(&self) -> &[Hypergraph] {
        &self.hypergraphs
    }

    pub fn hypergraph(&self, j: usize) -> &Hypergraph {
        &self.hypergraphs[j]
    }
}

/// Assignment of every vertex to one hypergraph index; class `j` is the set of
/// vertices assigned `j`. Empty classes are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoopColoring {
    m: usize,
    assignment: Vec<usize>,
}

impl CoopColoring {
    pub fn new(m: usize, assignment: Vec<usize>) -> Result<Self> {
        ensure!(m >= 1, Validation, "a coloring needs at least one class");
        if let Some((v, &c)) = assignment.iter().enumerate().find(|(_, &c)| c >= m) {
            return Err(Error::Validation(format!(
                "vertex {v} assigned class {c}, but m = {m}"
            )));
        }
        Ok(Self { m, assignment })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn class_of(&self, v: VertexId) -> usize {
        self.assignment[v]
    }

    pub fn class(&self, j: usize) -> Vec<VertexId> {
        (0..self.assignment.len())
            .filter(|&v| self.assignment[v] == j)
            .collect()
    }

    pub fn into_assignment(self) -> Vec<usize> {
        self.assignment
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoopVerdict {
    Ok,
    /// Class `hypergraph` contains `edge` of that hypergraph.
    Violation {
        hypergraph: usize,
        edge: Vec<VertexId>,
    },
}

impl CoopVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, CoopVerdict::Ok)
    }
}

/// Checks that every class `I_j` is independent in hypergraph `j`, reporting
/// the first offending `(j, edge)` otherwise.
pub fn verify_coop_coloring(inst: &CoopInstance, coloring: &CoopColoring) -> Result<CoopVerdict> {
    ensure!(
        coloring.assignment().len() == inst.n(),
        Validation,
        "assignment has length {}, instance has {} vertices",
        coloring.assignment().len(),
        inst.n()
    );
    ensure!(
        coloring.m() == inst.m(),
        Validation,
        "coloring has {} classes, instance has {} hypergraphs",
        coloring.m(),
        inst.m()
    );
    for (j, h) in inst.hypergraphs().iter().enumerate() {
        let member: Vec<bool> = coloring.assignment().iter().map(|&c| c == j).collect();
        if let Some(edge) = h.edge_within(&member) {
            return Ok(CoopVerdict::Violation {
                hypergraph: j,
                edge,
            });
        }
    }
    Ok(CoopVerdict::Ok)
}

/// A run of consecutive positions `start, start+1, ..., start+len-1` (mod n)
/// on a chain system's circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub start: usize,
    pub len: usize,
}

impl Interval {
    pub fn new(start: usize, len: usize) -> Self {
        Self { start, len }
    }
}

/// A hypergraph whose vertices sit on a circle (`order`) with every edge a run
/// of consecutive positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSystem {
    n: usize,
    order: Vec<VertexId>,
    intervals: Vec<Interval>,
    closed: bool,
}

impl ChainSystem {
    /// Validates the order and intervals. Paths (`closed = false`) must not
    /// have intervals wrapping past position `n - 1`; use
    /// [`ChainSystem::new_rotated`] for a path that has been rotated.
    pub fn new(order: Vec<VertexId>, intervals: Vec<Interval>, closed: bool) -> Result<Self> {
        let chain = Self::new_rotated(order, intervals, closed)?;
        if !closed {
            if let Some(iv) = chain
                .intervals
                .iter()
                .find(|iv| iv.start + iv.len > chain.n)
            {
                return Err(Error::Validation(format!(
                    "interval ({}, {}) wraps around an open chain of {} vertices",
                    iv.start, iv.len, chain.n
                )));
            }
        }
        Ok(chain)
    }

    /// Like [`ChainSystem::new`] but allows wrapping intervals on paths.
    pub fn new_rotated(
        order: Vec<VertexId>,
        intervals: Vec<Interval>,
        closed: bool,
    ) -> Result<Self> {
        let n = order.len();
        ensure!(n >= 1, Validation, "chain system needs at least one vertex");
        let mut seen = vec![false; n];
        for &v in &order {
            ensure!(
                v < n && !seen[v],
                Validation,
                "order is not a permutation of 0..{n}"
            );
            seen[v] = true;
        }
        for iv in &intervals {
            ensure!(
                iv.start < n,
                Validation,
                "interval start {} out of range for n = {n}",
                iv.start
            );
            ensure!(
                iv.len >= 1 && iv.len <= n,
                Validation,
                "interval length {} not in 1..={n}",
                iv.len
            );
        }
        Ok(Self {
            n,
            order,
            intervals,
            closed,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    /// Vertex ids covered by an interval, in circular order.
    pub fn interval_vertices(&self, iv: Interval) -> Vec<VertexId> {
        (0..iv.len)
            .map(|t| self.order[(iv.start + t) % self.n])
            .collect()
    }

    /// The explicit hypergraph this chain system describes.
    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        let edges = self
            .intervals
            .iter()
            .map(|&iv| self.interval_vertices(iv))
            .collect();
        Hypergraph::explicit(self.n, edges)
    }
}

/// Part membership of every vertex in every hypergraph of a family where each
/// member declares the same number `k` of parts covering all vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPartiteView {
    k: usize,
    part_of: Vec<Vec<usize>>,
}

impl KPartiteView {
    pub fn new(inst: &CoopInstance) -> Result<Self> {
        let mut k = None;
        let mut part_of = Vec::with_capacity(inst.m());
        for (j, h) in inst.hypergraphs().iter().enumerate() {
            let parts = h.parts().ok_or_else(|| {
                Error::Validation(format!("hypergraph {j} does not declare parts"))
            })?;
            match k {
                None => k = Some(parts.len()),
                Some(k) => ensure!(
                    parts.len() == k,
                    Validation,
                    "hypergraph {j} has {} parts, expected {k}",
                    parts.len()
                ),
            }
            part_of.push(h.part_index().expect("parts checked above"));
        }
        let k = k.expect("families are non-empty");
        ensure!(
            k >= 1,
            Validation,
            "hypergraphs must have at least one part"
        );
        Ok(Self { k, part_of })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Zero-based part index of `v` in hypergraph `j`.
    pub fn part_of(&self, j: usize, v: VertexId) -> usize {
        self.part_of[j][v]
    }

    pub fn m(&self) -> usize {
        self.part_of.len()
    }
}
