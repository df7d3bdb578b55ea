//! Deciding local-unitary and local-Clifford equivalence of graph states.
//!
//! The decision procedure reduces a pair of graphs to a block normal form,
//! builds a linear system over dyadic angles and solves it level by level.
//! Every positive answer carries a [`pipeline::Certificate`] that can be
//! checked exactly with [`hypergraph`] and, for small inputs, numerically
//! with [`oracle`].

pub mod census;
pub mod cli;
pub mod dyadic;
pub mod error;
pub mod gf2;
pub mod graphstate;
pub mod hypergraph;
pub mod mls;
pub mod oracle;
pub mod pauli;
pub mod pipeline;

pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use graphstate::{Graph, VertexSet};
pub use pipeline::{check_lc, check_lu, Certificate, Verdict};
