//! The family on `{1..k}^m` where hypergraph `j` is complete k-partite with
//! parts `V_j^i = { v : v_j = i }`.
//!
//! Any independent set of a complete k-partite hypergraph misses a whole
//! part, so a choice of classes names a missed part per hypergraph, and the
//! vertex whose coordinates are exactly those missed parts is left uncovered.

use crate::error::{ensure, Error, Result};
use crate::hypergraph::{CoopInstance, Hypergraph, VertexId};

/// Largest vertex count `k^m` the builder accepts.
pub const VERTEX_GUARD: u64 = 10_000_000;
/// Largest number of part-miss combinations `k^m` the verifier will enumerate.
pub const COMBINATION_GUARD: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundFamily {
    k: usize,
    m: usize,
    instance: CoopInstance,
}

impl LowerBoundFamily {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.instance.n()
    }

    pub fn instance(&self) -> &CoopInstance {
        &self.instance
    }

    pub fn into_instance(self) -> CoopInstance {
        self.instance
    }

    /// Id of a coordinate vector with entries in `1..=k`:
    /// `sum_t (v_t − 1)·k^t` over zero-based coordinates `t`.
    pub fn vertex_id(&self, vector: &[usize]) -> Result<VertexId> {
        ensure!(
            vector.len() == self.m,
            Validation,
            "vector has {} coordinates, expected {}",
            vector.len(),
            self.m
        );
        let mut id = 0;
        for &c in vector.iter().rev() {
            ensure!(
                (1..=self.k).contains(&c),
                Validation,
                "coordinate {c} not in 1..={}",
                self.k
            );
            id = id * self.k + (c - 1);
        }
        Ok(id)
    }

    /// Coordinate vector (entries in `1..=k`) of a vertex id.
    pub fn vector(&self, mut id: VertexId) -> Vec<usize> {
        (0..self.m)
            .map(|_| {
                let c = id % self.k + 1;
                id /= self.k;
                c
            })
            .collect()
    }

    /// Zero-based coordinate `t` of vertex `id`, i.e. its part in hypergraph `t`.
    fn digit(&self, id: VertexId, t: usize) -> usize {
        id / self.k.pow(t as u32) % self.k
    }
}

pub fn build_lower_bound_family(k: usize, m: usize) -> Result<LowerBoundFamily> {
    ensure!(
        k >= 3,
        Parameter,
        "lower-bound family needs k >= 3, got {k}"
    );
    ensure!(m >= 1, Parameter, "lower-bound family needs m >= 1");
    let n = (k as u64)
        .checked_pow(m as u32)
        .filter(|&n| n <= VERTEX_GUARD)
        .ok_or_else(|| Error::Size(format!("k^m = {k}^{m} exceeds {VERTEX_GUARD} vertices")))?
        as usize;
    let hypergraphs = (0..m)
        .map(|t| {
            let stride = k.pow(t as u32);
            let mut parts = vec![Vec::with_capacity(n / k); k];
            for v in 0..n {
                parts[v / stride % k].push(v);
            }
            Hypergraph::complete_kpartite(n, parts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LowerBoundFamily {
        k,
        m,
        instance: CoopInstance::new(hypergraphs)?,
    })
}

/// The vertex with coordinates `missed` (entries in `1..=k`). If each class
/// `I_j` avoids part `missed[j]` of hypergraph `j`, this vertex is in no class.
pub fn uncovered_diagonal_vertex(fam: &LowerBoundFamily, missed: &[usize]) -> Result<VertexId> {
    fam.vertex_id(missed)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerBoundVerdict {
    Ok,
    /// Taking classes `V ∖ V_j^{missed[j]}` covered the diagonal vertex, or a
    /// class was not independent.
    Counterexample {
        missed: Vec<usize>,
    },
}

impl LowerBoundVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, LowerBoundVerdict::Ok)
    }
}

/// Mechanizes the diagonal argument over every combination of missed parts:
/// each class `V ∖ V_j^{i_j}` (the maximal independent sets of a complete
/// k-partite hypergraph) is independent, and together they leave the vertex
/// `(i_1, ..., i_m)` uncovered.
pub fn verify_lower_bound(fam: &LowerBoundFamily) -> Result<LowerBoundVerdict> {
    let (k, m, n) = (fam.k, fam.m, fam.n());
    let combos = (k as u64).pow(m as u32);
    ensure!(
        combos <= COMBINATION_GUARD,
        Size,
        "{combos} part-miss combinations exceed {COMBINATION_GUARD}"
    );

    // complement_independent[j][i]: V minus part i of hypergraph j is independent.
    let complement_independent: Vec<Vec<bool>> = fam
        .instance
        .hypergraphs()
        .iter()
        .enumerate()
        .map(|(t, h)| {
            (0..k)
                .map(|i| {
                    let member: Vec<bool> = (0..n).map(|v| fam.digit(v, t) != i).collect();
                    h.edge_within(&member).is_none()
                })
                .collect()
        })
        .collect();

    // Combinations of missed parts are in bijection with vertex ids.
    for combo in 0..n {
        let missed = fam.vector(combo);
        let independent = missed
            .iter()
            .enumerate()
            .all(|(t, &i)| complement_independent[t][i - 1]);
        let diagonal = uncovered_diagonal_vertex(fam, &missed)?;
        let covered = (0..m).any(|t| fam.digit(diagonal, t) != missed[t] - 1);
        if !independent || covered {
            return Ok(LowerBoundVerdict::Counterexample { missed });
        }
    }
    Ok(LowerBoundVerdict::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_family_shape() {
        let fam = build_lower_bound_family(3, 2).unwrap();
        assert_eq!(fam.n(), 9);
        for (t, h) in fam.instance().hypergraphs().iter().enumerate() {
            assert_eq!(h.max_degree(), 9);
            for (i, part) in h.parts().unwrap().iter().enumerate() {
                assert_eq!(part.len(), 3);
                assert!(part.iter().all(|&v| fam.vector(v)[t] == i + 1));
            }
        }
        let one = build_lower_bound_family(3, 1).unwrap();
        assert_eq!(
            one.instance().hypergraph(0).parts().unwrap(),
            &[vec![0], vec![1], vec![2]]
        );
        assert_eq!(one.instance().hypergraph(0).max_degree(), 1);
    }

    #[test]
    fn degree_by_materialization() {
        let fam = build_lower_bound_family(4, 2).unwrap();
        for h in fam.instance().hypergraphs() {
            let explicit = h.materialize().unwrap();
            assert_eq!(explicit.edges().len(), 256);
            assert_eq!(explicit.max_degree(), 64);
            assert_eq!(h.max_degree(), 64);
        }
    }

    #[test]
    fn encoding() {
        let fam = build_lower_bound_family(3, 3).unwrap();
        assert_eq!(uncovered_diagonal_vertex(&fam, &[2, 1, 3]).unwrap(), 19);
        assert_eq!(fam.vector(19), vec![2, 1, 3]);
        for id in 0..fam.n() {
            assert_eq!(fam.vertex_id(&fam.vector(id)).unwrap(), id);
        }
        let fam = build_lower_bound_family(3, 2).unwrap();
        assert_eq!(
            fam.vector(uncovered_diagonal_vertex(&fam, &[1, 2]).unwrap()),
            vec![1, 2]
        );
        assert_eq!(uncovered_diagonal_vertex(&fam, &[3, 3]).unwrap(), 8);
        assert!(uncovered_diagonal_vertex(&fam, &[0, 1]).is_err());
        assert!(uncovered_diagonal_vertex(&fam, &[4, 1]).is_err());
        assert!(uncovered_diagonal_vertex(&fam, &[1]).is_err());
    }

    #[test]
    fn verifier_and_guards() {
        for (k, m) in [(3, 1), (3, 2), (3, 3), (4, 2)] {
            assert!(verify_lower_bound(&build_lower_bound_family(k, m).unwrap())
                .unwrap()
                .is_ok());
        }
        assert!(matches!(
            build_lower_bound_family(10, 8),
            Err(Error::Size(_))
        ));
        assert!(matches!(
            verify_lower_bound(&build_lower_bound_family(1001, 2).unwrap()),
            Err(Error::Size(_))
        ));
        assert!(build_lower_bound_family(2, 2).is_err());
    }
}
