use crate::error::{ensure, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

/// Lower and upper bounds on the number of k-partite k-uniform hypergraphs of
/// maximum degree `d` that always admit a cooperative coloring:
///
/// `log_k(d)/(k−1)` and `k·(1+ε)·((k−1)·d/ln d)^(1/(k−1))`.
///
/// The asymptotic `o(1)` slack of the upper bound is supplied as `epsilon`.
/// `k = 2` is accepted for comparison with the bipartite graph bound.
pub fn compute_bounds(k: usize, d: f64, epsilon: f64) -> Result<Bounds> {
    ensure!(k >= 2, Domain, "k must be at least 2, got {k}");
    ensure!(
        d.is_finite() && d >= 2.0,
        Domain,
        "d must be at least 2, got {d}"
    );
    ensure!(
        epsilon.is_finite() && epsilon > 0.0,
        Domain,
        "epsilon must be positive, got {epsilon}"
    );
    let kf = k as f64;
    let lower = d.ln() / kf.ln() / (kf - 1.0);
    let upper = kf * (1.0 + epsilon) * ((kf - 1.0) * d / d.ln()).powf(1.0 / (kf - 1.0));
    Ok(Bounds { lower, upper })
}

/// The informational local-lemma check `e·d^−4·(m(k−1)²d² + 1) ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LllDiagnostic {
    pub value: f64,
    pub holds: bool,
}

pub fn lll_diagnostic(k: usize, d: f64, m: usize) -> LllDiagnostic {
    let km1 = k as f64 - 1.0;
    let value = std::f64::consts::E * d.powi(-4) * (m as f64 * km1 * km1 * d * d + 1.0);
    LllDiagnostic {
        value,
        holds: value <= 1.0,
    }
}
