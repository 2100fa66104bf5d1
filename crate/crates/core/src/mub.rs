//! The shift `TB`, its eigenbasis `η`, and unbiasedness between bases.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{eig_normal, omega_pow, op_exp, Basis, Dim, LatticeScales, Op, State};
use crate::operators::{build_boost, build_momentum_basis, build_translation, CanonicalSet};
use crate::C64;

/// Relative eigenvalue gap below which the `gX − aP` eigenbasis is flagged
/// as not unique.
const DEGENERACY_REL: f64 = 1e-8;

/// `TB`, which shifts position and momentum eigenstates together:
/// `TB φ_x = ω^x φ_{x+1}`, wrapping with `ω^{-2j²}`.
pub fn build_shift(dim: Dim) -> Op {
    build_translation(dim)
        .product(&build_boost(dim))
        .expect("same dimension")
}

/// Eigenvectors of `TB` from their position components
/// `ω^{x²/2 − (s+1/2)x}/√N`, with `TB η_s = ω^s η_s`.
pub fn eta_basis_position(dim: Dim) -> Basis {
    let norm = dim.sqrt_n();
    let vecs = dim
        .labels()
        .map(|s| {
            State::from_fn(dim, |x| {
                omega_pow(dim, 0.5 * x * x - (s + 0.5) * x).expect("finite exponent") / norm
            })
        })
        .collect();
    Basis::from_orthonormal(dim, vecs).expect("N vectors of length N")
}

/// The same eigenvectors built from momentum coefficients
/// `ω^{-p²/2 − (s+1/2)p}/√N`. Each differs from the position-built vector
/// by the unit phase of [`gauss_identity_check`] at `b = s + 1/2`.
pub fn eta_basis_momentum(dim: Dim) -> Basis {
    let norm = dim.sqrt_n();
    let mom = build_momentum_basis(dim);
    let vecs = dim
        .labels()
        .map(|s| {
            let coeffs = State::from_fn(dim, |p| {
                omega_pow(dim, -0.5 * p * p - (s + 0.5) * p).expect("finite exponent") / norm
            });
            mom.synthesize(&coeffs).expect("same dimension")
        })
        .collect();
    Basis::from_orthonormal(dim, vecs).expect("N vectors of length N")
}

/// Overlap moduli `|⟨u_r, v_s⟩|` between two bases.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnbiasednessReport {
    pub n: usize,
    /// Row-major `N×N`, row `r` for `u_r`.
    pub overlaps: Vec<f64>,
    /// Largest `| |⟨u_r, v_s⟩| − 1/√N |`.
    pub max_deviation: f64,
    pub min_deviation: f64,
}

impl UnbiasednessReport {
    pub fn overlap(&self, r: usize, s: usize) -> f64 {
        self.overlaps[r * self.n + s]
    }

    /// Largest distance of a row or column sum of squared overlaps from 1.
    pub fn completeness_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0_f64;
        for i in 0..n {
            let row: f64 = (0..n).map(|s| self.overlap(i, s).powi(2)).sum();
            let col: f64 = (0..n).map(|r| self.overlap(r, i).powi(2)).sum();
            worst = worst.max((row - 1.0).abs()).max((col - 1.0).abs());
        }
        worst
    }
}

pub fn unbiasedness(u: &Basis, v: &Basis) -> Result<UnbiasednessReport> {
    let g = u.overlaps(v)?;
    let n = u.dim().n();
    let target = 1.0 / u.dim().sqrt_n();
    let mut overlaps = Vec::with_capacity(n * n);
    let (mut max_dev, mut min_dev) = (0.0_f64, f64::INFINITY);
    for r in 0..n {
        for s in 0..n {
            let m = g[(r, s)].norm();
            let dev = (m - target).abs();
            max_dev = max_dev.max(dev);
            min_dev = min_dev.min(dev);
            overlaps.push(m);
        }
    }
    Ok(UnbiasednessReport {
        n,
        overlaps,
        max_deviation: max_dev,
        min_deviation: min_dev,
    })
}

/// Outcome of checking a quadratic-phase DFT identity up to one global phase.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseIdentityReport {
    pub n: usize,
    pub b: f64,
    /// Unit-modulus `c` with `lhs ≈ c·rhs`.
    pub phase: C64,
    /// `max_p |lhs(p) − c·rhs(p)|`.
    pub residual: f64,
}

fn fit_phase(n: usize, b: f64, lhs: &[C64], rhs: &[C64]) -> PhaseIdentityReport {
    let cross: C64 = lhs.iter().zip(rhs).map(|(l, r)| l * r.conj()).sum();
    let phase = cross / cross.norm();
    let residual = lhs
        .iter()
        .zip(rhs)
        .map(|(l, r)| (l - phase * r).norm())
        .fold(0.0, f64::max);
    PhaseIdentityReport {
        n,
        b,
        phase,
        residual,
    }
}

/// Whether `b` is in the parity class the identity needs: integer for even
/// `N`, half-odd for odd `N`.
pub fn valid_gauss_parameter(dim: Dim, b: f64) -> bool {
    let shifted = if dim.is_even() { b } else { b - 0.5 };
    b.is_finite() && shifted == shifted.round()
}

/// Compares `(1/√N) Σ_x ω^{x²/2 − bx} ω^{-px}` with `ω^{-p²/2 − bp}` over
/// symmetric `p`, after fitting one global phase.
pub fn gauss_identity_check(dim: Dim, b: f64) -> Result<PhaseIdentityReport> {
    if !valid_gauss_parameter(dim, b) {
        let want = if dim.is_even() {
            "an integer"
        } else {
            "a half-odd integer"
        };
        return Err(Error::Domain(format!(
            "b = {b} must be {want} for N = {}",
            dim.n()
        )));
    }
    let norm = dim.sqrt_n();
    let w = |t: f64| omega_pow(dim, t).expect("finite exponent");
    let lhs: Vec<C64> = dim
        .labels()
        .map(|p| {
            dim.labels()
                .map(|x| w(0.5 * x * x - b * x - p * x))
                .sum::<C64>()
                / norm
        })
        .collect();
    let rhs: Vec<C64> = dim.labels().map(|p| w(-0.5 * p * p - b * p)).collect();
    Ok(fit_phase(dim.n(), b, &lhs, &rhs))
}

/// The same identity over indices `0..N`:
/// `(1/√N) Σ_n (−1)^n ω^{n²/2 − bn} ω^{-mn}` against `(−1)^m ω^{-m²/2 − bm}`.
pub fn gauss_identity_check_asymmetric(dim: Dim, b: i64) -> PhaseIdentityReport {
    let n = dim.n();
    let bf = b as f64;
    let w = |t: f64| omega_pow(dim, t).expect("finite exponent");
    let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let lhs: Vec<C64> = (0..n)
        .map(|m| {
            let mf = m as f64;
            (0..n)
                .map(|k| {
                    let kf = k as f64;
                    w(0.5 * kf * kf - bf * kf - mf * kf) * sign(k)
                })
                .sum::<C64>()
                / dim.sqrt_n()
        })
        .collect();
    let rhs: Vec<C64> = (0..n)
        .map(|m| {
            let mf = m as f64;
            w(-0.5 * mf * mf - bf * mf) * sign(m)
        })
        .collect();
    fit_phase(n, bf, &lhs, &rhs)
}

/// `S = Σ_s a·g·s η_s⟨η_s, ·⟩`, the hermitian generator with `exp(iS) = TB`.
pub fn build_s(scales: &LatticeScales) -> Op {
    let dim = scales.dim();
    let h = scales.a() * scales.g();
    let values: Vec<C64> = dim.labels().map(|s| C64::new(h * s, 0.0)).collect();
    Op::spectral(eta_basis_position(dim).vectors(), &values).expect("basis and labels agree")
}

/// Largest entrywise deviation in `exp(−iaP)·exp(igX) = TB` and
/// `exp(−igX)·exp(iaP) = (TB)†`.
pub fn weyl_swap_check(set: &CanonicalSet) -> Result<f64> {
    let (a, g) = (set.scales().a(), set.scales().g());
    let tb = build_shift(set.dim());
    let forward =
        op_exp(set.p(), C64::new(0.0, -a))?.product(&op_exp(set.x(), C64::new(0.0, g))?)?;
    let reverse =
        op_exp(set.x(), C64::new(0.0, -g))?.product(&op_exp(set.p(), C64::new(0.0, a))?)?;
    Ok(forward
        .max_abs_diff(&tb)?
        .max(reverse.max_abs_diff(&tb.adjoint())?))
}

/// Unbiasedness of the eigenbasis of `gX − aP` against the position and
/// momentum bases.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XpDifferenceReport {
    pub position: UnbiasednessReport,
    pub momentum: UnbiasednessReport,
    /// Smallest gap between adjacent eigenvalues.
    pub min_gap: f64,
    /// Set when some gap is too small for the eigenbasis to be unique.
    pub degenerate: bool,
}

impl XpDifferenceReport {
    pub fn max_deviation(&self) -> f64 {
        self.position.max_deviation.max(self.momentum.max_deviation)
    }
}

pub fn xp_difference_unbiasedness(set: &CanonicalSet) -> Result<XpDifferenceReport> {
    let (a, g) = (set.scales().a(), set.scales().g());
    let diff = set
        .x()
        .scale(C64::new(g, 0.0))
        .sub(&set.p().scale(C64::new(a, 0.0)))?;
    let es = eig_normal(&diff)?;
    let mut vals: Vec<f64> = es.values().iter().map(|z| z.re).collect();
    vals.sort_by(f64::total_cmp);
    let min_gap = vals
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let scale = vals.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let basis = es.basis();
    Ok(XpDifferenceReport {
        position: unbiasedness(&basis, set.position_basis())?,
        momentum: unbiasedness(&basis, set.momentum_basis())?,
        min_gap,
        degenerate: min_gap < DEGENERACY_REL * scale,
    })
}
