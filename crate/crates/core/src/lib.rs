//! Decision and witness solver for the (out-branching, min-in-degree >= 1)
//! 2-partition problem on digraphs.
//!
//! Given a digraph `D` and sizes `k1`, `k2`, the question is whether the
//! vertices split into `V1` and `V2` such that `D[V1]` has an out-branching,
//! every vertex of `V2` has an in-neighbour inside `V2`, and `|Vi| >= ki`.
//!
//! The crate is organised bottom-up:
//!
//! * [`digraph`] holds the immutable graph type and structural queries.
//! * [`kernel`] holds the reusable primitives (`grow`, `trim`, branchable
//!   arcs, subsolution extension and witness verification).
//! * [`solver`] is the fixed-parameter decision procedure.
//! * [`oracle`] is the exhaustive reference implementation and the seeded
//!   instance generators used for testing.
//! * [`format`] reads and writes edge lists and result documents.

pub mod digraph;
pub mod error;
pub mod format;
pub mod kernel;
pub mod oracle;
pub mod solver;

pub use digraph::{Component, ContractionRecord, Cycle, Digraph, OutTree, VertexId, VertexSet};
pub use error::{GraphError, KernelError, SolveError};
pub use kernel::{
    branchable_arcs, extend_subsolution, grow, params, trim, verify, BranchableArcs, GoodPartition,
    Instance, ParamOverrides, Params, Verification, Violation,
};
pub use solver::{solve, solve_reversed, solve_with_defaults, Answer, CaseLabel, SolveResult};
