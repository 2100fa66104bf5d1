//! Foundational types for the lattice Hilbert space.
//!
//! States and operators are dense. A symmetric index `k ∈ {-j, …, j}` is
//! stored at offset `k + j`, so vectors and matrices are ordinary contiguous
//! arrays while every public accessor speaks in lattice labels.

mod basis;
mod dim;
mod eigen;
mod op;
mod state;

pub use basis::Basis;
pub use dim::{omega, omega_pow, Dim, LatticeScales, SymIndex};
pub use eigen::{eig_normal, op_exp, EigenPair, EigenSystem};
pub use op::Op;
pub use state::{inner, State};

/// Default absolute tolerance for comparing complex entries.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Largest label distance accepted when matching eigenvalues to lattice labels.
pub const LABEL_MATCH_TOL: f64 = 1e-6;
