//! Position, momentum, translation and boost operators in the position
//! representation.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{ensure_same_dim, Result};
use crate::linalg::{omega_pow, op_exp, Basis, Dim, LatticeScales, Op, State};
use crate::C64;

/// `X = Σ_x a·x φ_x⟨φ_x, ·⟩`.
pub fn build_position(scales: &LatticeScales) -> Op {
    let a = scales.a();
    Op::diagonal(scales.dim(), |x| C64::new(a * x, 0.0))
}

/// Cyclic shift `φ_x → φ_{x+1}`; the wrap `φ_j → (-1)^{N-1} φ_{-j}` makes it
/// antiperiodic for even `N`.
pub fn build_translation(dim: Dim) -> Op {
    let wrap = if dim.is_even() { -1.0 } else { 1.0 };
    Op::from_fn(dim, |r, s| {
        let (next, wrapped) = s.succ();
        match (next == r, wrapped) {
            (true, false) => C64::new(1.0, 0.0),
            (true, true) => C64::new(wrap, 0.0),
            _ => C64::new(0.0, 0.0),
        }
    })
}

/// Eigenbasis of the translation, `⟨φ_x, φ_p⟩ = ω^{px}/√N`, with
/// `T φ_p = ω^{-p} φ_p`.
pub fn build_momentum_basis(dim: Dim) -> Basis {
    let norm = dim.sqrt_n();
    let vecs = dim
        .labels()
        .map(|p| {
            State::from_fn(dim, |x| {
                omega_pow(dim, p * x).expect("finite labels") / norm
            })
        })
        .collect();
    Basis::from_orthonormal(dim, vecs).expect("N vectors of length N")
}

/// `P = Σ_p g·p φ_p⟨φ_p, ·⟩`, built from the momentum basis.
pub fn build_momentum(scales: &LatticeScales) -> Op {
    let dim = scales.dim();
    let g = scales.g();
    let basis = build_momentum_basis(dim);
    let values: Vec<C64> = dim.labels().map(|p| C64::new(g * p, 0.0)).collect();
    Op::spectral(basis.vectors(), &values).expect("basis and labels agree")
}

/// `B = Σ_x ω^x φ_x⟨φ_x, ·⟩`, the momentum shift.
pub fn build_boost(dim: Dim) -> Op {
    Op::diagonal(dim, |x| omega_pow(dim, x).expect("finite label"))
}

/// `[A, B] = AB − BA`.
pub fn commutator(a: &Op, b: &Op) -> Result<Op> {
    ensure_same_dim(a.dim().n(), b.dim().n())?;
    a.product(b)?.sub(&b.product(a)?)
}

/// The operators `X, P, T, B` and the two bases for one lattice.
#[derive(Clone, Debug)]
pub struct CanonicalSet {
    scales: LatticeScales,
    x: Op,
    p: Op,
    t: Op,
    b: Op,
    position_basis: Basis,
    momentum_basis: Basis,
}

impl CanonicalSet {
    pub fn new(scales: LatticeScales) -> Self {
        let dim = scales.dim();
        CanonicalSet {
            x: build_position(&scales),
            p: build_momentum(&scales),
            t: build_translation(dim),
            b: build_boost(dim),
            position_basis: Basis::standard(dim),
            momentum_basis: build_momentum_basis(dim),
            scales,
        }
    }

    /// Built with `a = g = √(2π/N)`.
    pub fn symmetric(dim: Dim) -> Self {
        CanonicalSet::new(LatticeScales::symmetric(dim))
    }

    pub fn dim(&self) -> Dim {
        self.scales.dim()
    }

    pub fn scales(&self) -> &LatticeScales {
        &self.scales
    }

    pub fn x(&self) -> &Op {
        &self.x
    }

    pub fn p(&self) -> &Op {
        &self.p
    }

    pub fn t(&self) -> &Op {
        &self.t
    }

    pub fn b(&self) -> &Op {
        &self.b
    }

    pub fn position_basis(&self) -> &Basis {
        &self.position_basis
    }

    pub fn momentum_basis(&self) -> &Basis {
        &self.momentum_basis
    }
}

/// Deviations of `T` from `exp(−i(2π/N)P/g)` and of `B` from
/// `exp(i(2π/N)X/a)`, as max entrywise moduli.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExponentialCheck {
    pub translation: f64,
    pub boost: f64,
}

impl ExponentialCheck {
    pub fn max(&self) -> f64 {
        self.translation.max(self.boost)
    }
}

pub fn check_exponential_forms(set: &CanonicalSet) -> Result<ExponentialCheck> {
    let n = set.dim().n() as f64;
    let s = set.scales();
    let t_from_p = op_exp(set.p(), C64::new(0.0, -2.0 * PI / (n * s.g())))?;
    let b_from_x = op_exp(set.x(), C64::new(0.0, 2.0 * PI / (n * s.a())))?;
    Ok(ExponentialCheck {
        translation: t_from_p.max_abs_diff(set.t())?,
        boost: b_from_x.max_abs_diff(set.b())?,
    })
}

/// Normalized `c_x ∝ exp(−πx²/N)`, the discrete Gaussian whose width is the
/// same in position and momentum.
pub fn gaussian_probe(dim: Dim) -> State {
    let n = dim.n() as f64;
    State::from_fn(dim, |x| C64::new((-PI * x * x / n).exp(), 0.0))
        .normalize()
        .expect("gaussian has positive norm")
}

/// `⟨ψ, [X, P] ψ⟩`.
pub fn commutator_expectation(set: &CanonicalSet, psi: &State) -> Result<C64> {
    let xp = set.x().apply(&set.p().apply(psi)?)?;
    let px = set.p().apply(&set.x().apply(psi)?)?;
    Ok(psi.vector().dotc(xp.vector()) - psi.vector().dotc(px.vector()))
}

/// `|⟨probe, [X, P] probe⟩ − i|` with the symmetric scales, the distance
/// from the canonical commutation relation at finite `N`.
pub fn continuum_deviation(dim: Dim) -> Result<f64> {
    let set = CanonicalSet::symmetric(dim);
    let probe = gaussian_probe(dim);
    Ok((commutator_expectation(&set, &probe)? - C64::i()).norm())
}
