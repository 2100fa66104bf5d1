pub mod evolve;
pub mod mub;
pub mod ops;
pub mod pauli;
pub mod sums;
pub mod sweep;
