//! Exact linear and symplectic algebra over Q(s): canonical subspaces,
//! Lagrangian relations and the symplectification functors.

mod matrix;
mod relation;
mod space;
mod symplectify;

pub use matrix::{nullspace, rank, rref, rref_with_pivots, Row};
pub use relation::{LagrangianRelation, LagrelError, LinearRelation};
pub use space::{concat, Block, Sign, Space, Subspace};
pub use symplectify::{
    graph_of_differential, pushforward_lagrangian, symplectify, symplectify_currents,
    symplectify_potentials,
};
