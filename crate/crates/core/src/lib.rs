//! Lower bounds on the reversal distance of signed permutations.
//!
//! Three constructions give the same bound:
//!
//! * [`plane_perm`]: the skew-symmetric plane permutation `(s̃, p ∘ s̃)`, bound
//!   `(2n+1 - C(p ∘ s̃)) / 2`;
//! * [`bounds`]: the breakpoint graph, bound `n+1 - C_BG`;
//! * [`fatgraph`]: the genus of an orientable fatgraph built from `s̃`.
//!
//! [`oracle`] computes exact distances by breadth-first search for small `n`,
//! and [`verify`] runs the cross-checks in bulk.

pub mod bounds;
pub mod cli;
pub mod fatgraph;
pub mod oracle;
pub mod perm_core;
pub mod plane_perm;
pub mod signed_perm;
pub mod verify;

pub use bounds::{
    bound_bg, bound_genus, bound_plane, breakpoint, check_conjecture, check_equivalence,
    involution_factors, BoundError, BoundReport, BreakpointData,
};
pub use fatgraph::{fatgraph_from_signed, genus, hat, Fatgraph, FatgraphError, FatgraphStats};
pub use oracle::{exact_distance, greedy_sort, survey, validate, OracleError, SortCertificate};
pub use perm_core::{GroundSet, PermError, Permutation, PermutationMatrix};
pub use plane_perm::{
    block_interchange, find_2_reversal, skew_symmetric, BlockInterchange, PlaneError,
    PlanePermutation, SkewSymmetricInstance,
};
pub use signed_perm::{ReversalStep, SignedPermError, SignedPermutation};
