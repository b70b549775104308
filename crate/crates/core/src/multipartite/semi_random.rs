//! Semi-random cooperative coloring of k-partite families.
//!
//! For a vertex `v` let `J_i(v)` be the hypergraphs placing `v` in part `i`.
//! `v` joins `W_i` for the least `i` with `k·|J_i(v)| ≥ m`. Vertices of
//! `W_1..W_{k−1}` pick a class uniformly from their `J_i`. A vertex `w` of
//! `W_k` then drops from `J_k(w)` every `j` for which some edge of hypergraph
//! `j` through `w` has all its other vertices `u` in `W_{part_j(u)}` with
//! chosen class `j`, and takes the smallest survivor.
//!
//! A `W_k` vertex with no survivor is a bad event. We repair bad events one
//! at a time, lowest id first, by redrawing the step-one choices of every
//! vertex sharing an edge with the bad vertex in one of its candidate
//! hypergraphs, until none remain or the round budget runs out.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{ensure, Error, Result};
use crate::hypergraph::{
    verify_coop_coloring, CoopColoring, CoopInstance, CoopVerdict, KPartiteView, VertexId,
};
use crate::rng::{seeded_rng, ProjectRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BadVertexRule {
    /// Repair the bad vertex with the smallest id first.
    #[default]
    LowestId,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiRandomConfig {
    /// Slack in the upper-bound regime `m ≥ k(1+ε)((k−1)d/ln d)^(1/(k−1))`.
    /// Reported by callers; the process itself does not read it.
    pub epsilon: f64,
    pub seed: u64,
    pub max_rounds: usize,
    pub bad_vertex_rule: BadVertexRule,
}

impl SemiRandomConfig {
    pub fn new(epsilon: f64, seed: u64, max_rounds: usize) -> Result<Self> {
        ensure!(
            epsilon.is_finite() && epsilon > 0.0,
            Parameter,
            "epsilon must be positive, got {epsilon}"
        );
        ensure!(max_rounds >= 1, Parameter, "max_rounds must be at least 1");
        Ok(Self {
            epsilon,
            seed,
            max_rounds,
            bad_vertex_rule: BadVertexRule::LowestId,
        })
    }

    /// Round budget of `10·n`.
    pub fn with_default_rounds(epsilon: f64, seed: u64, n: usize) -> Result<Self> {
        Self::new(epsilon, seed, (10 * n).max(1))
    }
}

/// The sets `J_i(v)`, the classes `W_i`, the step-one choices, and the pruned
/// candidate sets `J'_k(w)`. Part indices here are zero-based, so `W_k` is
/// class `k − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentState {
    k: usize,
    m: usize,
    j_sets: Vec<Vec<Vec<usize>>>,
    w_class: Vec<usize>,
    chosen: Vec<Option<usize>>,
    pruned: Vec<Option<Vec<usize>>>,
}

impl AssignmentState {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.w_class.len()
    }

    /// `J_i(v)` in ascending order.
    pub fn j_set(&self, v: VertexId, i: usize) -> &[usize] {
        &self.j_sets[v][i]
    }

    /// Zero-based index `i` with `v ∈ W_i`.
    pub fn w_class(&self, v: VertexId) -> usize {
        self.w_class[v]
    }

    pub fn w_members(&self, i: usize) -> Vec<VertexId> {
        (0..self.n()).filter(|&v| self.w_class[v] == i).collect()
    }

    /// Step-one choice `j(v)` of a vertex outside `W_k`.
    pub fn chosen(&self, v: VertexId) -> Option<usize> {
        self.chosen[v]
    }

    /// `J'_k(w)` for a vertex of `W_k`, once computed.
    pub fn pruned(&self, w: VertexId) -> Option<&[usize]> {
        self.pruned[w].as_deref()
    }

    fn is_last_class(&self, v: VertexId) -> bool {
        self.w_class[v] + 1 == self.k
    }
}

/// Computes `J_i(v)` and the `W` classes for a family whose members all have
/// the same number `k` of parts covering every vertex.
pub fn build_assignment_state(inst: &CoopInstance) -> Result<AssignmentState> {
    let view = KPartiteView::new(inst)?;
    state_from_view(inst, &view)
}

fn state_from_view(inst: &CoopInstance, view: &KPartiteView) -> Result<AssignmentState> {
    let (n, m, k) = (inst.n(), inst.m(), view.k());
    let mut j_sets = vec![vec![Vec::new(); k]; n];
    for j in 0..m {
        for (v, sets) in j_sets.iter_mut().enumerate() {
            sets[view.part_of(j, v)].push(j);
        }
    }
    let w_class = j_sets
        .iter()
        .enumerate()
        .map(|(v, sets)| {
            sets.iter().position(|s| k * s.len() >= m).ok_or_else(|| {
                Error::AlgorithmInvariant(format!("vertex {v} qualifies for no W class"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AssignmentState {
        k,
        m,
        j_sets,
        w_class,
        chosen: vec![None; n],
        pruned: vec![None; n],
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureReport {
    pub rounds: usize,
    /// `W_k` vertices whose pruned candidate set was still empty.
    pub bad_vertices: Vec<VertexId>,
    pub state: AssignmentState,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiRandomOutcome {
    Success {
        coloring: CoopColoring,
        rounds: usize,
        state: AssignmentState,
    },
    Aborted(FailureReport),
}

impl SemiRandomOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, SemiRandomOutcome::Success { .. })
    }

    pub fn rounds(&self) -> usize {
        match self {
            SemiRandomOutcome::Success { rounds, .. } => *rounds,
            SemiRandomOutcome::Aborted(r) => r.rounds,
        }
    }
}

/// Runs the semi-random process with local resampling.
///
/// A success always passes [`verify_coop_coloring`]; a failed verification
/// is reported as [`Error::AlgorithmInvariant`]. Exhausting the round budget
/// is an [`SemiRandomOutcome::Aborted`] result, not an error.
pub fn semi_random_coloring(
    inst: &CoopInstance,
    cfg: &SemiRandomConfig,
) -> Result<SemiRandomOutcome> {
    ensure!(
        cfg.max_rounds >= 1,
        Parameter,
        "max_rounds must be at least 1"
    );
    let view = KPartiteView::new(inst)?;
    let state = state_from_view(inst, &view)?;
    let mut engine = Engine::new(inst, &view, state, seeded_rng(cfg.seed));

    engine.step_one();
    let all_last: Vec<VertexId> = (0..inst.n())
        .filter(|&w| engine.state.is_last_class(w))
        .collect();
    engine.refresh(&all_last);

    let mut rounds = 0;
    while let Some(&bad) = engine.bad.first() {
        if rounds >= cfg.max_rounds {
            let bad_vertices = engine.bad.iter().copied().collect();
            return Ok(SemiRandomOutcome::Aborted(FailureReport {
                rounds,
                bad_vertices,
                state: engine.state,
            }));
        }
        match cfg.bad_vertex_rule {
            BadVertexRule::LowestId => engine.resample_around(bad),
        }
        rounds += 1;
    }

    let state = engine.state;
    let assignment = (0..inst.n())
        .map(|v| {
            if state.is_last_class(v) {
                state.pruned[v].as_ref().and_then(|p| p.first().copied())
            } else {
                state.chosen[v]
            }
            .ok_or_else(|| Error::AlgorithmInvariant(format!("vertex {v} left unassigned")))
        })
        .collect::<Result<Vec<_>>>()?;
    let coloring = CoopColoring::new(inst.m(), assignment)?;
    if let CoopVerdict::Violation { hypergraph, edge } = verify_coop_coloring(inst, &coloring)? {
        return Err(Error::AlgorithmInvariant(format!(
            "semi-random coloring left edge {edge:?} of hypergraph {hypergraph} inside its class"
        )));
    }
    Ok(SemiRandomOutcome::Success {
        coloring,
        rounds,
        state,
    })
}

struct Engine<'a> {
    inst: &'a CoopInstance,
    view: &'a KPartiteView,
    state: AssignmentState,
    rng: ProjectRng,
    /// incidence[j][v]: indices of explicit edges of hypergraph j through v.
    incidence: Vec<Vec<Vec<usize>>>,
    /// last_neighbors[u]: W_k vertices sharing an explicit edge with u.
    last_neighbors: Vec<Vec<VertexId>>,
    any_complete: bool,
    /// hits[j][i]: vertices of W_i whose chosen class is j. Only maintained
    /// for the complete k-partite members, where blocking needs only counts.
    hits: Vec<Vec<usize>>,
    bad: BTreeSet<VertexId>,
}

impl<'a> Engine<'a> {
    fn new(
        inst: &'a CoopInstance,
        view: &'a KPartiteView,
        state: AssignmentState,
        rng: ProjectRng,
    ) -> Self {
        let (n, m, k) = (inst.n(), inst.m(), view.k());
        let mut incidence = vec![vec![Vec::new(); n]; m];
        let mut last_neighbors = vec![Vec::new(); n];
        for (j, h) in inst.hypergraphs().iter().enumerate() {
            for (idx, e) in h.edges().iter().enumerate() {
                for &v in e {
                    incidence[j][v].push(idx);
                }
                for &w in e.iter().filter(|&&w| state.is_last_class(w)) {
                    for &u in e.iter().filter(|&&u| u != w) {
                        last_neighbors[u].push(w);
                    }
                }
            }
        }
        for list in &mut last_neighbors {
            list.sort_unstable();
            list.dedup();
        }
        let any_complete = inst.hypergraphs().iter().any(|h| h.is_complete_kpartite());
        Self {
            inst,
            view,
            state,
            rng,
            incidence,
            last_neighbors,
            any_complete,
            hits: vec![vec![0; k]; m],
            bad: BTreeSet::new(),
        }
    }

    fn step_one(&mut self) {
        for v in 0..self.inst.n() {
            if !self.state.is_last_class(v) {
                self.draw(v);
            }
        }
    }

    fn draw(&mut self, v: VertexId) {
        let i = self.state.w_class[v];
        let options = &self.state.j_sets[v][i];
        let j = options[self.rng.random_range(0..options.len())];
        debug_assert_eq!(self.view.part_of(j, v), i);
        if let Some(old) = self.state.chosen[v].replace(j) {
            self.hits[old][i] -= 1;
        }
        self.hits[j][i] += 1;
    }

    /// Whether hypergraph `j` blocks `w ∈ W_k` from class `j`.
    fn blocked(&self, w: VertexId, j: usize) -> bool {
        let h = self.inst.hypergraph(j);
        if h.is_complete_kpartite() {
            // Every other part needs some vertex of matching W class already in class j.
            return (0..self.view.k() - 1).all(|i| self.hits[j][i] > 0);
        }
        self.incidence[j][w].iter().any(|&idx| {
            h.edges()[idx].iter().filter(|&&u| u != w).all(|&u| {
                self.state.w_class[u] == self.view.part_of(j, u) && self.state.chosen[u] == Some(j)
            })
        })
    }

    fn refresh(&mut self, targets: &[VertexId]) {
        let last = self.view.k() - 1;
        for &w in targets {
            let pruned: Vec<usize> = self.state.j_sets[w][last]
                .iter()
                .copied()
                .filter(|&j| !self.blocked(w, j))
                .collect();
            if pruned.is_empty() {
                self.bad.insert(w);
            } else {
                self.bad.remove(&w);
            }
            self.state.pruned[w] = Some(pruned);
        }
    }

    fn resample_around(&mut self, w: VertexId) {
        let last = self.view.k() - 1;
        let mut targets = BTreeSet::new();
        for &j in &self.state.j_sets[w][last] {
            let h = self.inst.hypergraph(j);
            if h.is_complete_kpartite() {
                let parts = h.parts().expect("complete k-partite has parts");
                for (i, part) in parts.iter().enumerate() {
                    if i != self.view.part_of(j, w) {
                        targets.extend(
                            part.iter()
                                .copied()
                                .filter(|&u| !self.state.is_last_class(u)),
                        );
                    }
                }
            } else {
                for &idx in &self.incidence[j][w] {
                    targets.extend(
                        h.edges()[idx]
                            .iter()
                            .copied()
                            .filter(|&u| !self.state.is_last_class(u)),
                    );
                }
            }
        }
        for &u in &targets {
            self.draw(u);
        }

        let affected: Vec<VertexId> = if self.any_complete {
            (0..self.inst.n())
                .filter(|&v| self.state.is_last_class(v))
                .collect()
        } else {
            let mut set: BTreeSet<VertexId> = BTreeSet::new();
            set.insert(w);
            for &u in &targets {
                set.extend(self.last_neighbors[u].iter().copied());
            }
            set.into_iter().collect()
        };
        self.refresh(&affected);
    }
}
