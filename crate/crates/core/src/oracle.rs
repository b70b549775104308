//! Exhaustive ground truth: backtracking search for cooperative colorings,
//! brute-force search for two-cycle partitions, and the reduction of a
//! hypergraph family to graphs by keeping two vertices of every edge.

use crate::chain_partition::{check_br_constraints, BrPartition, Side, TwoCycleInstance};
use crate::error::{ensure, Error, Result};
use crate::hypergraph::{CoopColoring, CoopInstance, Hypergraph, HypergraphKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Cap on tentative vertex assignments made by the search.
    pub max_assignments: u64,
    pub max_vertices: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_assignments: 100_000_000,
            max_vertices: 32,
        }
    }
}

impl SearchBudget {
    pub fn new(max_assignments: u64, max_vertices: usize) -> Result<Self> {
        ensure!(
            max_assignments > 0 && max_vertices > 0,
            Validation,
            "search budget must be positive"
        );
        Ok(Self {
            max_assignments,
            max_vertices,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    None,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// Backtracking over vertices in id order and classes in index order; a
/// branch dies as soon as some hypergraph `j` has an edge entirely assigned
/// `j`. Returns the lexicographically first cooperative coloring.
pub fn exact_coop_coloring(
    inst: &CoopInstance,
    budget: &SearchBudget,
) -> SearchOutcome<CoopColoring> {
    if inst.n() > budget.max_vertices {
        return SearchOutcome::BudgetExceeded;
    }
    let mut search = Backtrack::new(inst, budget.max_assignments);
    match search.run(0) {
        Step::Found => SearchOutcome::Found(
            CoopColoring::new(inst.m(), search.assignment).expect("classes are < m"),
        ),
        Step::Exhausted => SearchOutcome::None,
        Step::OutOfBudget => SearchOutcome::BudgetExceeded,
    }
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Backtrack<'a> {
    inst: &'a CoopInstance,
    remaining: u64,
    assignment: Vec<usize>,
    /// edges_at[j][v]: explicit edges of hypergraph j containing v.
    edges_at: Vec<Vec<Vec<usize>>>,
    /// filled[j][e]: vertices of edge e of hypergraph j currently assigned j.
    filled: Vec<Vec<usize>>,
    /// part_of[j][v] and part_hits[j][p] for complete k-partite members.
    part_of: Vec<Option<Vec<usize>>>,
    part_hits: Vec<Vec<usize>>,
}

impl<'a> Backtrack<'a> {
    fn new(inst: &'a CoopInstance, remaining: u64) -> Self {
        let n = inst.n();
        let mut edges_at = Vec::with_capacity(inst.m());
        let mut filled = Vec::with_capacity(inst.m());
        let mut part_of = Vec::with_capacity(inst.m());
        let mut part_hits = Vec::with_capacity(inst.m());
        for h in inst.hypergraphs() {
            let mut at = vec![Vec::new(); n];
            for (idx, e) in h.edges().iter().enumerate() {
                for &v in e {
                    at[v].push(idx);
                }
            }
            edges_at.push(at);
            filled.push(vec![0; h.edges().len()]);
            if h.kind() == HypergraphKind::CompleteKPartite {
                part_of.push(h.part_index());
                part_hits.push(vec![0; h.parts().map_or(0, |p| p.len())]);
            } else {
                part_of.push(None);
                part_hits.push(Vec::new());
            }
        }
        Self {
            inst,
            remaining,
            assignment: vec![0; n],
            edges_at,
            filled,
            part_of,
            part_hits,
        }
    }

    fn run(&mut self, v: usize) -> Step {
        if v == self.inst.n() {
            return Step::Found;
        }
        for j in 0..self.inst.m() {
            if self.remaining == 0 {
                return Step::OutOfBudget;
            }
            self.remaining -= 1;
            self.assignment[v] = j;
            let completes = self.place(v, j);
            if !completes {
                match self.run(v + 1) {
                    Step::Exhausted => {}
                    done => return done,
                }
            }
            self.unplace(v, j);
        }
        Step::Exhausted
    }

    /// Records `v` in class `j`; true when that fills an edge of hypergraph `j`.
    fn place(&mut self, v: usize, j: usize) -> bool {
        let mut completes = false;
        let edges = self.inst.hypergraph(j).edges();
        for &idx in &self.edges_at[j][v] {
            self.filled[j][idx] += 1;
            completes |= self.filled[j][idx] == edges[idx].len();
        }
        if let Some(part_of) = &self.part_of[j] {
            self.part_hits[j][part_of[v]] += 1;
            completes |= self.part_hits[j].iter().all(|&c| c > 0);
        }
        completes
    }

    fn unplace(&mut self, v: usize, j: usize) {
        for &idx in &self.edges_at[j][v] {
            self.filled[j][idx] -= 1;
        }
        if let Some(part_of) = &self.part_of[j] {
            self.part_hits[j][part_of[v]] -= 1;
        }
    }
}

/// Largest `n` for which [`exists_br_partition`] enumerates `2^n` splits.
pub const BR_SEARCH_MAX_N: usize = 25;

/// First partition, in lexicographic order of `(side(0), side(1), ...)` with
/// blue before red, that passes the two-cycle constraint check.
pub fn exists_br_partition(inst: &TwoCycleInstance) -> Result<SearchOutcome<BrPartition>> {
    let n = inst.n();
    ensure!(
        n <= BR_SEARCH_MAX_N,
        Size,
        "2^{n} partitions exceed the search guard (n <= {BR_SEARCH_MAX_N})"
    );
    for mask in 0u64..(1 << n) {
        let sides = (0..n)
            .map(|v| {
                if mask >> (n - 1 - v) & 1 == 1 {
                    Side::Red
                } else {
                    Side::Blue
                }
            })
            .collect();
        let p = BrPartition::from_sides(sides);
        if check_br_constraints(inst, &p)?.is_ok() {
            return Ok(SearchOutcome::Found(p));
        }
    }
    Ok(SearchOutcome::None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReductionSelector {
    /// Keep the two smallest vertex ids of each edge.
    #[default]
    FirstTwoById,
}

/// Replaces every edge by a 2-edge on two of its vertices. Any cooperative
/// coloring of the result is one of the input, since each class that avoids
/// the chosen pair avoids the whole edge.
pub fn reduce_to_graphs(inst: &CoopInstance, selector: ReductionSelector) -> Result<CoopInstance> {
    let graphs = inst
        .hypergraphs()
        .iter()
        .enumerate()
        .map(|(j, h)| {
            let h = h.materialize()?;
            let mut edges = h
                .edges()
                .iter()
                .map(|e| {
                    ensure!(
                        e.len() >= 2,
                        Validation,
                        "hypergraph {j} has an edge {e:?} with fewer than 2 vertices"
                    );
                    Ok(match selector {
                        ReductionSelector::FirstTwoById => vec![e[0], e[1]],
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            edges.sort_unstable();
            edges.dedup();
            Hypergraph::explicit(inst.n(), edges)
        })
        .collect::<Result<Vec<_>>>()?;
    CoopInstance::new(graphs).map_err(|e| Error::AlgorithmInvariant(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::make_tight_cycle;
    use crate::hypergraph::verify_coop_coloring;
    use crate::multipartite::build_lower_bound_family;

    fn p1_p2() -> CoopInstance {
        let p1 = Hypergraph::explicit(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let p2 = Hypergraph::explicit(4, vec![vec![0, 2], vec![2, 1], vec![1, 3]]).unwrap();
        CoopInstance::new(vec![p1, p2]).unwrap()
    }

    /// Plain enumeration of all m^n assignments.
    fn unpruned_exists(inst: &CoopInstance) -> bool {
        let (n, m) = (inst.n(), inst.m());
        let mut a = vec![0; n];
        loop {
            let c = CoopColoring::new(m, a.clone()).unwrap();
            if verify_coop_coloring(inst, &c).unwrap().is_ok() {
                return true;
            }
            let mut i = 0;
            while i < n && a[i] == m - 1 {
                a[i] = 0;
                i += 1;
            }
            if i == n {
                return false;
            }
            a[i] += 1;
        }
    }

    #[test]
    fn counterexample_has_no_coloring() {
        assert_eq!(
            exact_coop_coloring(&p1_p2(), &SearchBudget::default()),
            SearchOutcome::None
        );
        assert!(!unpruned_exists(&p1_p2()));
    }

    #[test]
    fn lower_bound_family_has_no_coloring() {
        let fam = build_lower_bound_family(3, 2).unwrap();
        assert_eq!(
            exact_coop_coloring(fam.instance(), &SearchBudget::default()),
            SearchOutcome::None
        );
    }

    #[test]
    fn tight_cycles_are_colorable() {
        let (h, _) = make_tight_cycle(5, 3).unwrap();
        let inst = CoopInstance::new(vec![h.clone(), h]).unwrap();
        let SearchOutcome::Found(c) = exact_coop_coloring(&inst, &SearchBudget::default()) else {
            panic!("expected a coloring")
        };
        assert!(verify_coop_coloring(&inst, &c).unwrap().is_ok());
        // Lexicographically first: 0,0,1,0,1 is the smallest valid word.
        assert_eq!(c.assignment(), &[0, 0, 1, 0, 1]);
    }

    #[test]
    fn budget_limits() {
        let tiny = SearchBudget::new(3, 32).unwrap();
        assert_eq!(
            exact_coop_coloring(&p1_p2(), &tiny),
            SearchOutcome::BudgetExceeded
        );
        let narrow = SearchBudget::new(1000, 3).unwrap();
        assert_eq!(
            exact_coop_coloring(&p1_p2(), &narrow),
            SearchOutcome::BudgetExceeded
        );
        assert!(SearchBudget::new(0, 3).is_err());
    }

    #[test]
    fn br_search() {
        let inst = TwoCycleInstance::new(vec![2, 4, 3, 0, 1]).unwrap();
        let SearchOutcome::Found(p) = exists_br_partition(&inst).unwrap() else {
            panic!()
        };
        assert!(check_br_constraints(&inst, &p).unwrap().is_ok());
        let known = BrPartition::from_sets(5, &[0, 2, 3], &[1, 4]).unwrap();
        assert!(check_br_constraints(&inst, &known).unwrap().is_ok());

        let id3 = TwoCycleInstance::new(vec![0, 1, 2]).unwrap();
        let SearchOutcome::Found(p) = exists_br_partition(&id3).unwrap() else {
            panic!()
        };
        assert!(check_br_constraints(&id3, &p).unwrap().is_ok());
        let example = BrPartition::from_sets(3, &[0, 2], &[1]).unwrap();
        assert!(check_br_constraints(&id3, &example).unwrap().is_ok());

        let big = TwoCycleInstance::new((0..26).collect()).unwrap();
        assert!(exists_br_partition(&big).is_err());
    }

    #[test]
    fn reduction() {
        let h = Hypergraph::explicit(3, vec![vec![0, 1, 2]]).unwrap();
        let r = reduce_to_graphs(
            &CoopInstance::new(vec![h]).unwrap(),
            ReductionSelector::FirstTwoById,
        )
        .unwrap();
        assert_eq!(r.hypergraph(0).edges(), &[vec![0, 1]]);

        let (h, _) = make_tight_cycle(5, 3).unwrap();
        let r = reduce_to_graphs(
            &CoopInstance::new(vec![h]).unwrap(),
            ReductionSelector::FirstTwoById,
        )
        .unwrap();
        // Wrapping edges {0,3,4} and {0,1,4} keep {0,3} and a second {0,1}.
        assert_eq!(
            r.hypergraph(0).edges(),
            &[vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]
        );

        let h = Hypergraph::explicit(5, vec![vec![4]]).unwrap();
        let err = reduce_to_graphs(
            &CoopInstance::new(vec![h]).unwrap(),
            ReductionSelector::FirstTwoById,
        );
        assert!(matches!(err, Err(Error::Validation(_))));
    }

    #[test]
    fn search_agrees_with_unpruned_enumeration() {
        use crate::rng::seeded_rng;
        use rand::Rng;
        let mut rng = seeded_rng(42);
        for _ in 0..300 {
            let n = rng.random_range(1..=6);
            let hs = (0..2)
                .map(|_| {
                    let edges = (0..rng.random_range(0..6))
                        .map(|_| {
                            let mut e: Vec<usize> =
                                (0..n).filter(|_| rng.random_bool(0.5)).collect();
                            if e.is_empty() {
                                e.push(rng.random_range(0..n));
                            }
                            e
                        })
                        .collect();
                    Hypergraph::explicit(n, edges).unwrap()
                })
                .collect();
            let inst = CoopInstance::new(hs).unwrap();
            let found = exact_coop_coloring(&inst, &SearchBudget::default());
            assert_eq!(found.is_found(), unpruned_exists(&inst), "{inst:?}");
            assert_ne!(found, SearchOutcome::BudgetExceeded);
        }
    }
}
