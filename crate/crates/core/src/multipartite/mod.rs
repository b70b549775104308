//! k-partite k-uniform families: the `[k]^m` lower-bound construction, the
//! bound formulas, random instance generation, and the semi-random
//! cooperative colorer.

mod bounds;
mod lower_bound;
mod random;
mod semi_random;

pub use bounds::{compute_bounds, lll_diagnostic, Bounds, LllDiagnostic};
pub use lower_bound::{
    build_lower_bound_family, uncovered_diagonal_vertex, verify_lower_bound, LowerBoundFamily,
    LowerBoundVerdict,
};
pub use random::gen_random_kpartite;
pub use semi_random::{
    build_assignment_state, semi_random_coloring, AssignmentState, BadVertexRule, FailureReport,
    SemiRandomConfig, SemiRandomOutcome,
};
