//! Recovering a two-site state from its position and momentum distributions.
//!
//! A state `ψ = ρe^{iα}φ_− + √(1−ρ²)φ_+` gives `|⟨φ_−, ψ⟩|² = ρ²` in position
//! and `1/2 + ρ√(1−ρ²) sin α` for the lower momentum state, so `α` and
//! `π − α` cannot be told apart.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{ensure_same_dim, Error, Result};
use crate::fourier::dft_forward;
use crate::linalg::{Dim, State};
use crate::C64;

/// Additive slack on the compatibility disk.
pub const DISK_TOL: f64 = 1e-12;

/// Below this `ρ√(1−ρ²)` the phase no longer affects the data.
const UNOBSERVABLE_TOL: f64 = 1e-12;

/// Probabilities of the lower state `φ_−` in position (`rho_sq`) and in
/// momentum (`varpi_sq`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PauliData {
    rho_sq: f64,
    varpi_sq: f64,
}

impl PauliData {
    pub fn new(rho_sq: f64, varpi_sq: f64) -> Result<Self> {
        for (name, v) in [("rho_sq", rho_sq), ("varpi_sq", varpi_sq)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        Ok(PauliData { rho_sq, varpi_sq })
    }

    pub fn rho_sq(&self) -> f64 {
        self.rho_sq
    }

    pub fn varpi_sq(&self) -> f64 {
        self.varpi_sq
    }

    /// `(ϖ²−½)² + (ϱ²−½)² − ¼`, non-positive inside the disk.
    pub fn disk_excess(&self) -> f64 {
        (self.varpi_sq - 0.5).powi(2) + (self.rho_sq - 0.5).powi(2) - 0.25
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reconstruction {
    pub compatible: bool,
    /// Phases in `[0, 2π)`, ascending; two of them are related by `α ↔ π − α`.
    pub alpha_solutions: Vec<f64>,
    /// For compatible data the worst mismatch between the data and the
    /// forward data of a solution; otherwise the disk excess.
    pub residual: f64,
    /// `ρ ∈ {0, 1}`: every phase gives the same data.
    pub phase_unobservable: bool,
}

/// `ρe^{iα}φ_− + √(1−ρ²)φ_+` on two sites.
pub fn state_from_params(rho: f64, alpha: f64) -> Result<State> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::Domain(format!("rho must lie in [0, 1], got {rho}")));
    }
    if !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be finite, got {alpha}")));
    }
    let dim = Dim::new(2)?;
    State::new(
        dim,
        vec![
            C64::from_polar(rho, alpha),
            C64::new((1.0 - rho * rho).sqrt(), 0.0),
        ],
    )
}

/// Position and momentum distributions of any state.
pub fn marginals(psi: &State) -> (Vec<f64>, Vec<f64>) {
    (psi.probabilities(), dft_forward(psi).probabilities())
}

pub fn forward_data(psi: &State) -> Result<PauliData> {
    ensure_same_dim(2, psi.dim().n())?;
    let (pos, mom) = marginals(psi);
    PauliData::new(pos[0].min(1.0), mom[0].min(1.0))
}

/// Inside the disk `(ϖ²−½)² + (ϱ²−½)² ≤ ¼`, the region reachable by states.
pub fn compatible(data: &PauliData) -> bool {
    data.disk_excess() <= DISK_TOL
}

/// Solves `sin α = (ϖ² − ½)/(ϱ√(1−ϱ²))`.
pub fn reconstruct(data: &PauliData) -> Reconstruction {
    if !compatible(data) {
        return Reconstruction {
            compatible: false,
            alpha_solutions: Vec::new(),
            residual: data.disk_excess(),
            phase_unobservable: false,
        };
    }
    let rho = data.rho_sq.sqrt();
    let spread = rho * (1.0 - data.rho_sq).sqrt();
    if spread < UNOBSERVABLE_TOL {
        return Reconstruction {
            compatible: true,
            alpha_solutions: Vec::new(),
            residual: (data.varpi_sq - 0.5).abs(),
            phase_unobservable: true,
        };
    }
    let mut sin_alpha = ((data.varpi_sq - 0.5) / spread).clamp(-1.0, 1.0);
    // asin amplifies rounding near ±1 into a spurious pair of roots
    if 1.0 - sin_alpha.abs() < 1e-12 {
        sin_alpha = sin_alpha.signum();
    }
    let first = sin_alpha.asin().rem_euclid(TAU);
    let second = (PI - first).rem_euclid(TAU);
    let gap = (first - second).abs();
    let mut alpha_solutions = if gap.min(TAU - gap) < 1e-12 {
        vec![first]
    } else {
        vec![first, second]
    };
    alpha_solutions.sort_by(f64::total_cmp);
    let residual = alpha_solutions
        .iter()
        .map(|&alpha| {
            let fwd = forward_data(&state_from_params(rho, alpha).expect("rho in range"))
                .expect("two sites");
            (fwd.rho_sq - data.rho_sq)
                .abs()
                .max((fwd.varpi_sq - data.varpi_sq).abs())
        })
        .fold(0.0, f64::max);
    Reconstruction {
        compatible: true,
        alpha_solutions,
        residual,
        phase_unobservable: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn data(r: f64, v: f64) -> PauliData {
        PauliData::new(r, v).unwrap()
    }

    #[test]
    fn states_from_params() {
        let lower = state_from_params(1.0, 0.7).unwrap();
        assert!((lower.amplitudes()[0] - C64::cis(0.7)).norm() < 1e-15);
        assert_eq!(lower.amplitudes()[1], C64::new(0.0, 0.0));
        let upper = state_from_params(0.0, 2.0).unwrap();
        assert_eq!(upper.amplitudes()[1], C64::new(1.0, 0.0));
        assert!(state_from_params(1.2, 0.0).is_err());
        let top = forward_data(&state_from_params(FRAC_1_SQRT_2, PI / 2.0).unwrap()).unwrap();
        assert!((top.varpi_sq() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn forward_examples() {
        let d = forward_data(&state_from_params(1.0, 0.0).unwrap()).unwrap();
        assert!((d.rho_sq() - 1.0).abs() < 1e-15 && (d.varpi_sq() - 0.5).abs() < 1e-15);
        let d = forward_data(&state_from_params(0.0, 0.0).unwrap()).unwrap();
        assert!(d.rho_sq().abs() < 1e-15 && (d.varpi_sq() - 0.5).abs() < 1e-15);
        let mom = crate::operators::build_momentum_basis(Dim::new(2).unwrap());
        let d = forward_data(mom.at(-0.5).unwrap()).unwrap();
        assert!((d.rho_sq() - 0.5).abs() < 1e-15 && (d.varpi_sq() - 1.0).abs() < 1e-15);
        let three = State::basis_vector(Dim::new(3).unwrap().index(0.0).unwrap());
        assert!(forward_data(&three).is_err());
    }

    #[test]
    fn compatibility_disk() {
        assert!(compatible(&data(0.5, 0.5)));
        assert!(!compatible(&data(1.0, 1.0)));
        assert!(compatible(&data(1.0, 0.5)));
        assert!(PauliData::new(-0.1, 0.5).is_err());
        assert!(PauliData::new(0.5, f64::NAN).is_err());
    }

    #[test]
    fn reconstruct_examples() {
        let r = reconstruct(&data(0.5, 0.5));
        assert_eq!(r.alpha_solutions.len(), 2);
        assert!(r.alpha_solutions[0].abs() < 1e-12 && (r.alpha_solutions[1] - PI).abs() < 1e-12);
        let r = reconstruct(&data(0.5, 1.0));
        assert_eq!(r.alpha_solutions.len(), 1);
        assert!((r.alpha_solutions[0] - PI / 2.0).abs() < 1e-12);
        let r = reconstruct(&data(1.0, 0.9));
        assert!(!r.compatible && r.alpha_solutions.is_empty() && r.residual > 0.0);
        let r = reconstruct(&data(0.0, 0.5));
        assert!(r.compatible && r.phase_unobservable && r.alpha_solutions.is_empty());
        let r = reconstruct(&data(1.0, 0.5));
        assert!(r.compatible && r.phase_unobservable);
    }

    #[test]
    fn partners_share_data() {
        for (rho, alpha) in [(0.3, 0.4), (0.8, 2.5), (0.55, 5.9)] {
            let d = forward_data(&state_from_params(rho, alpha).unwrap()).unwrap();
            let r = reconstruct(&d);
            assert!(r.residual < 1e-12);
            let hit = r.alpha_solutions.iter().any(|&a| {
                let gap = (a - alpha).rem_euclid(TAU);
                gap.min(TAU - gap) < 1e-9
            });
            assert!(hit, "{alpha} not in {:?}", r.alpha_solutions);
        }
    }

    #[test]
    fn general_marginals() {
        let dim = Dim::new(5).unwrap();
        let psi = State::from_fn(dim, |x| C64::new(1.0, x))
            .normalize()
            .unwrap();
        let (pos, mom) = marginals(&psi);
        assert!((pos.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!((mom.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }
}
