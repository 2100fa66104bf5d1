//! Time evolution: propagators and the free particle on the lattice.

use serde::Serialize;

use crate::error::{ensure_same_dim, Error, Result};
use crate::linalg::{omega_pow, op_exp, Dim, LatticeScales, Op, State, DEFAULT_TOL};
use crate::operators::build_momentum_basis;
use crate::C64;

/// Lattice, mass, and the derived time scale `τ = 2ma/g`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EvolutionConfig {
    scales: LatticeScales,
    mass: f64,
    tau: f64,
}

impl EvolutionConfig {
    pub fn new(scales: LatticeScales, mass: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::Domain(format!(
                "mass must be positive and finite, got {mass}"
            )));
        }
        let tau = 2.0 * mass * scales.a() / scales.g();
        Ok(EvolutionConfig { scales, mass, tau })
    }

    /// Mass 1.
    pub fn unit_mass(scales: LatticeScales) -> Self {
        EvolutionConfig::new(scales, 1.0).expect("unit mass is valid")
    }

    pub fn dim(&self) -> Dim {
        self.scales.dim()
    }

    pub fn scales(&self) -> &LatticeScales {
        &self.scales
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// `U_t = exp(−iHt)` for hermitian `H`.
pub fn propagator(h: &Op, t: f64) -> Result<Op> {
    let defect = h.hermiticity_defect();
    if defect > DEFAULT_TOL * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { defect });
    }
    if !t.is_finite() {
        return Err(Error::Domain(format!("time must be finite, got {t}")));
    }
    op_exp(h, C64::new(0.0, -t))
}

/// `H = P²/2m`, built from the momentum eigenbasis with eigenvalues
/// `g²p²/2m`.
pub fn free_hamiltonian(cfg: &EvolutionConfig) -> Op {
    let dim = cfg.dim();
    let g = cfg.scales.g();
    let values: Vec<C64> = dim
        .labels()
        .map(|p| C64::new(g * g * p * p / (2.0 * cfg.mass), 0.0))
        .collect();
    Op::spectral(build_momentum_basis(dim).vectors(), &values).expect("basis and labels agree")
}

/// Free evolution of momentum coefficients, `d_p(t) = d_p(0) ω^{-p² t/τ}`.
pub fn evolve_momentum(cfg: &EvolutionConfig, d0: &State, t: f64) -> Result<State> {
    ensure_same_dim(cfg.dim().n(), d0.dim().n())?;
    let s = t / cfg.tau;
    if !s.is_finite() {
        return Err(Error::Domain(format!("time must be finite, got {t}")));
    }
    let dim = cfg.dim();
    Ok(d0.map_labels(|p, d| d * omega_pow(dim, -p * p * s).expect("finite exponent")))
}

/// Free evolution of position amplitudes by the double sum
/// `c_r(t) = Σ_x c_x(0) (1/N) Σ_p ω^{p(r−x) − p² t/τ}`.
pub fn evolve_position(cfg: &EvolutionConfig, c0: &State, t: f64) -> Result<State> {
    ensure_same_dim(cfg.dim().n(), c0.dim().n())?;
    let s = t / cfg.tau;
    if !s.is_finite() {
        return Err(Error::Domain(format!("time must be finite, got {t}")));
    }
    let dim = cfg.dim();
    let n = dim.n();
    // the inner sum depends on r − x only; index m + (N − 1)
    let kernel: Vec<C64> = (0..2 * n - 1)
        .map(|i| {
            let m = i as f64 - (n as f64 - 1.0);
            dim.labels()
                .map(|p| omega_pow(dim, p * m - p * p * s).expect("finite exponent"))
                .sum::<C64>()
                / n as f64
        })
        .collect();
    let amps = c0.amplitudes();
    let out = (0..n)
        .map(|r| (0..n).map(|x| amps[x] * kernel[r + n - 1 - x]).sum())
        .collect();
    State::new(dim, out)
}

/// Smallest time after which every free state returns exactly: `Nτ` for
/// odd `N`, `4Nτ` for even `N`. At half that for even `N` the state has
/// only picked up a factor `−1`.
pub fn revival_period(cfg: &EvolutionConfig) -> f64 {
    let n = cfg.dim().n() as f64;
    if cfg.dim().is_even() {
        4.0 * n * cfg.tau
    } else {
        n * cfg.tau
    }
}
