//! Quantum mechanics of position and momentum on a one-dimensional cyclic
//! lattice.
//!
//! An `N`-site lattice lives in an `N`-dimensional Hilbert space. Every basis
//! is labelled by a symmetric index running over `-j, -j+1, …, j` with
//! `j = (N-1)/2`, so for even `N` the labels are half-odd-integers. The crate
//! builds the canonical operators on that space and the tools to check their
//! algebra numerically:
//!
//! - [`linalg`]: dimensions, symmetric indices, roots of unity, states,
//!   dense operators, bases and spectral decomposition of normal operators.
//! - [`operators`]: position `X`, momentum `P`, translation `T`, boost `B`,
//!   their exponential relations and the finite-`N` commutator `[X, P]`.
//! - [`fourier`]: the symmetric-index DFT and closed forms for the geometric
//!   and root-of-unity sums, each paired with a direct summation.
//! - [`mub`]: the shift operator `TB`, its eigenbasis `η`, unbiasedness
//!   reports and the quadratic-phase DFT identity.
//! - [`dynamics`]: propagators, free-particle evolution in both
//!   representations and revival periods.
//! - [`pauli`]: the two-dimensional state-determination problem.
//!
//! ```
//! use cyclic_qm::linalg::Dim;
//! use cyclic_qm::operators::CanonicalSet;
//!
//! let set = CanonicalSet::symmetric(Dim::new(5).unwrap());
//! assert!(set.t().unitarity_defect() < 1e-12);
//! ```

pub mod dynamics;
pub mod error;
pub mod fourier;
pub mod linalg;
pub mod mub;
pub mod operators;
pub mod pauli;

pub use error::{Error, Result};
pub use linalg::{Basis, Dim, EigenSystem, LatticeScales, Op, State, SymIndex};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
