//! Symmetric-index discrete Fourier transform and finite root-of-unity sums.
//!
//! Every closed form here has a direct-summation counterpart in [`direct`];
//! the two are kept on separate code paths so one can check the other.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{omega_pow, Dim, State};
use crate::C64;

/// `|sin(πr/N)|` below this never reaches a generic quotient.
pub const GUARD_BAND: f64 = 1e-8;

type DftCache = RwLock<HashMap<usize, Arc<DMatrix<C64>>>>;

fn cache() -> &'static DftCache {
    static CACHE: OnceLock<DftCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Forward transform matrix, entry `(p, x) = ω^{-px}/√N`. Built once per `N`.
pub fn dft_matrix(dim: Dim) -> Arc<DMatrix<C64>> {
    if let Some(m) = cache().read().expect("dft cache poisoned").get(&dim.n()) {
        return Arc::clone(m);
    }
    let n = dim.n();
    let norm = dim.sqrt_n();
    let m = DMatrix::from_fn(n, n, |p, x| {
        omega_pow(dim, -dim.label(p) * dim.label(x)).expect("labels are finite") / norm
    });
    let m = Arc::new(m);
    cache()
        .write()
        .expect("dft cache poisoned")
        .entry(n)
        .or_insert_with(|| Arc::clone(&m));
    m
}

/// Position coefficients `c_x` to momentum coefficients
/// `d_p = (1/√N) Σ_x ω^{-px} c_x`.
pub fn dft_forward(c: &State) -> State {
    let f = dft_matrix(c.dim());
    State::from_vector(c.dim(), f.as_ref() * c.vector())
}

/// Momentum coefficients back to position, `c_x = (1/√N) Σ_p ω^{px} d_p`.
pub fn dft_inverse(d: &State) -> State {
    let f = dft_matrix(d.dim());
    State::from_vector(d.dim(), f.adjoint() * d.vector())
}

/// `Σ_{k=-j}^{j} z^k = (z^{N/2} − z^{-N/2}) / (z^{1/2} − z^{-1/2})`.
///
/// Powers are `z^s = exp(s·Log z)` with the principal logarithm. The
/// quotient is evaluated as `sinh(N·L/2) / sinh(L/2)`, `L = Log z`, which is
/// the same expression without the cancellation near `z = 1`.
pub fn geometric_sum(z: C64, dim: Dim) -> Result<C64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite ratio {z}")));
    }
    if z.norm() == 0.0 {
        return Err(Error::Domain(
            "geometric sum with z = 0 has negative powers of zero".into(),
        ));
    }
    let half_log = z.ln() * 0.5;
    let den = half_log.sinh();
    if den.norm() < GUARD_BAND {
        return Ok(C64::new(dim.n() as f64, 0.0));
    }
    Ok((half_log * dim.n() as f64).sinh() / den)
}

/// Split `r = nN + δ` with `δ ∈ [-N/2, N/2]`.
fn reduce(dim: Dim, r: f64) -> (i64, f64) {
    let n = dim.n() as f64;
    let mult = (r / n).round();
    (mult as i64, r - mult * n)
}

/// `(-1)^{n(N-1)}`, the value of `ω^{k·nN}` summed against any label `k`.
fn wrap_sign(dim: Dim, mult: i64) -> f64 {
    if dim.is_even() && mult.rem_euclid(2) == 1 {
        -1.0
    } else {
        1.0
    }
}

fn check_finite(r: f64) -> Result<()> {
    if r.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite parameter r = {r}")))
    }
}

/// True when `|sin(πr/N)|` falls inside the guard band.
pub fn in_guard_band(dim: Dim, r: f64) -> bool {
    let (_, delta) = reduce(dim, r);
    (PI * delta / dim.n() as f64).sin().abs() < GUARD_BAND
}

/// `Σ_{k=-j}^{j} ω^{kr} = sin(πr) / sin(πr/N)` for real `r`.
///
/// Evaluated after reducing `r = nN + δ`, which contributes the exact sign
/// `(-1)^{n(N-1)}`. At `r = nN` the exact value `(-1)^{n(N-1)}N` is returned.
pub fn omega_sum(dim: Dim, r: f64) -> Result<C64> {
    check_finite(r)?;
    let n = dim.n() as f64;
    let (mult, delta) = reduce(dim, r);
    let sign = wrap_sign(dim, mult);
    let den = (PI * delta / n).sin();
    if den.abs() < GUARD_BAND {
        if delta == 0.0 {
            return Ok(C64::new(sign * n, 0.0));
        }
        return Err(Error::Singular(format!(
            "r = {r} is within the guard band of {mult}·N"
        )));
    }
    Ok(C64::new(sign * (PI * delta).sin() / den, 0.0))
}

/// Case table for integer and half-odd-integer `r`:
///
/// - `r = nN`: `(-1)^{n(N-1)} N`
/// - other integers: `0`
/// - half-odd `r`: `2w / (1 − ω^r)` with `w` a fourth root of `ω^{2r}`.
///
/// The principal choice `w = exp(iπr/N)` is off by a factor `e^{iπ(r-1)}`
/// from the direct sum, so that factor is applied.
pub fn omega_sum_cases(dim: Dim, r: f64) -> Result<C64> {
    check_finite(r)?;
    let n = dim.n() as f64;
    if r.fract() == 0.0 {
        let (mult, delta) = reduce(dim, r);
        return Ok(if delta == 0.0 {
            C64::new(wrap_sign(dim, mult) * n, 0.0)
        } else {
            C64::new(0.0, 0.0)
        });
    }
    if (2.0 * r).fract() != 0.0 {
        return Err(Error::Domain(format!(
            "r = {r} is neither an integer nor a half-odd-integer; use omega_sum"
        )));
    }
    let quarter_turns = (2.0 * (r - 1.0)).rem_euclid(4.0) as u8;
    let branch = match quarter_turns {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    };
    let root = omega_pow(dim, r / 2.0)? * branch;
    Ok(root * 2.0 / (C64::new(1.0, 0.0) - omega_pow(dim, r)?))
}

/// `Σ_{k=-j}^{j} k ω^{kr} = (i/2)[sin(πr)cos(πr/N) − N cos(πr) sin(πr/N)] / sin²(πr/N)`.
///
/// `r = 0` gives `0`; other multiples of `N` are singular. Close to the
/// singular points the bracket cancels to `O(δ³)`, so there it is summed as
/// a power series instead.
pub fn k_weighted_sum(dim: Dim, r: f64) -> Result<C64> {
    check_finite(r)?;
    let n = dim.n() as f64;
    let (mult, delta) = reduce(dim, r);
    let b = PI * delta / n;
    let s = b.sin();
    if s.abs() < GUARD_BAND {
        if r == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        return Err(Error::Singular(format!(
            "r = {r} is a nonzero multiple of N (or within the guard band)"
        )));
    }
    let bracket = if b.abs() * (n + 1.0) < 0.5 {
        bracket_series(n, b)
    } else {
        (n * b).sin() * b.cos() - n * (n * b).cos() * s
    };
    Ok(C64::new(
        0.0,
        0.5 * wrap_sign(dim, mult) * bracket / (s * s),
    ))
}

/// `sin(NB)cos(B) − N cos(NB) sin(B)` as
/// `½[(1−N)(sin((N+1)B) − (N+1)B) + (1+N)(sin((N−1)B) − (N−1)B)]`,
/// the linear terms cancelling exactly.
fn bracket_series(n: f64, b: f64) -> f64 {
    let tail = |m: f64| {
        let x = m * b;
        let x2 = x * x;
        let mut term = -x * x2 / 6.0;
        let mut sum = 0.0_f64;
        let mut k = 1.0;
        while term.abs() > 1e-20 * sum.abs().max(f64::MIN_POSITIVE) && k < 40.0 {
            sum += term;
            term *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
            k += 1.0;
        }
        sum
    };
    0.5 * ((1.0 - n) * tail(n + 1.0) + (1.0 + n) * tail(n - 1.0))
}

/// Which closed form a [`SumQuery`] exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumVariant {
    /// [`geometric_sum`] at `z = ω^r`.
    Geometric,
    Omega,
    OmegaCases,
    KWeighted,
}

impl SumVariant {
    pub const ALL: [SumVariant; 4] = [
        SumVariant::Geometric,
        SumVariant::Omega,
        SumVariant::OmegaCases,
        SumVariant::KWeighted,
    ];
}

/// One closed-form sum evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumQuery {
    pub dim: Dim,
    pub r: f64,
    pub variant: SumVariant,
}

impl SumQuery {
    pub fn new(dim: Dim, r: f64, variant: SumVariant) -> Result<Self> {
        check_finite(r)?;
        Ok(SumQuery { dim, r, variant })
    }

    pub fn closed_form(&self) -> Result<C64> {
        match self.variant {
            SumVariant::Geometric => geometric_sum(omega_pow(self.dim, self.r)?, self.dim),
            SumVariant::Omega => omega_sum(self.dim, self.r),
            SumVariant::OmegaCases => omega_sum_cases(self.dim, self.r),
            SumVariant::KWeighted => k_weighted_sum(self.dim, self.r),
        }
    }

    pub fn direct(&self) -> Result<C64> {
        Ok(match self.variant {
            SumVariant::Geometric => direct::geometric(omega_pow(self.dim, self.r)?, self.dim),
            SumVariant::Omega | SumVariant::OmegaCases => direct::omega(self.dim, self.r),
            SumVariant::KWeighted => direct::k_weighted(self.dim, self.r),
        })
    }
}

/// Term-by-term sums over the symmetric labels.
pub mod direct {
    use super::*;

    /// `Σ_k exp(k·Log z)`.
    pub fn geometric(z: C64, dim: Dim) -> C64 {
        let log = z.ln();
        dim.labels().map(|k| (log * k).exp()).sum()
    }

    /// `Σ_k exp(i2πkr/N)`.
    pub fn omega(dim: Dim, r: f64) -> C64 {
        let n = dim.n() as f64;
        dim.labels().map(|k| C64::cis(2.0 * PI * k * r / n)).sum()
    }

    /// `Σ_k k·exp(i2πkr/N)`.
    pub fn k_weighted(dim: Dim, r: f64) -> C64 {
        let n = dim.n() as f64;
        dim.labels()
            .map(|k| C64::cis(2.0 * PI * k * r / n) * k)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::inner;

    fn d(n: usize) -> Dim {
        Dim::new(n).unwrap()
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn delta_at_origin_transforms_to_uniform() {
        let dim = d(3);
        let delta = State::basis_vector(dim.index(0.0).unwrap());
        let out = dft_forward(&delta);
        for &a in out.amplitudes() {
            assert!(close(a, C64::new(1.0 / 3f64.sqrt(), 0.0), 1e-15));
        }
        let back = dft_inverse(&out);
        assert!(back.distance(&delta).unwrap() <= 1e-12);
    }

    #[test]
    fn dft_is_unitary() {
        for n in 2..=16 {
            let f = dft_matrix(d(n));
            let defect = (f.as_ref() * f.adjoint() - DMatrix::<C64>::identity(n, n))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(defect < 1e-13, "N={n}: {defect}");
        }
    }

    #[test]
    fn inverse_of_momentum_vector_is_delta() {
        // The position components of φ_p are ω^{px}/√N, so the forward
        // transform of that column is a unit vector at p.
        let dim = d(5);
        for p in dim.labels() {
            let phi = State::from_fn(dim, |x| omega_pow(dim, p * x).unwrap() / 5f64.sqrt());
            let out = dft_forward(&phi);
            let expect = State::basis_vector(dim.index(p).unwrap());
            assert!(out.distance(&expect).unwrap() < 1e-13);
            assert!(inner(&phi, &phi).unwrap().re - 1.0 < 1e-14);
        }
    }

    #[test]
    fn geometric_examples() {
        assert!(close(
            geometric_sum(C64::new(1.0, 0.0), d(7)).unwrap(),
            C64::new(7.0, 0.0),
            0.0
        ));
        assert!(close(
            geometric_sum(C64::new(2.0, 0.0), d(3)).unwrap(),
            C64::new(3.5, 0.0),
            1e-14
        ));
        assert!(close(
            geometric_sum(C64::new(-1.0, 0.0), d(3)).unwrap(),
            C64::new(-1.0, 0.0),
            1e-14
        ));
        assert!(geometric_sum(C64::new(0.0, 0.0), d(3)).is_err());
    }

    #[test]
    fn omega_sum_examples() {
        assert!(close(
            omega_sum(d(3), 1.0).unwrap(),
            C64::new(0.0, 0.0),
            1e-15
        ));
        assert!(close(
            omega_sum(d(3), 3.0).unwrap(),
            C64::new(3.0, 0.0),
            0.0
        ));
        assert!(close(
            omega_sum(d(2), 0.5).unwrap(),
            C64::new(2f64.sqrt(), 0.0),
            1e-15
        ));
        assert!(omega_sum(d(4), 4.0 + 1e-12).is_err());
        assert!(omega_sum(d(4), f64::NAN).is_err());
    }

    #[test]
    fn omega_cases_examples() {
        assert_eq!(omega_sum_cases(d(5), 0.0).unwrap(), C64::new(5.0, 0.0));
        assert_eq!(omega_sum_cases(d(2), 2.0).unwrap(), C64::new(-2.0, 0.0));
        assert_eq!(omega_sum_cases(d(4), 3.0).unwrap(), C64::new(0.0, 0.0));
        assert!(close(
            omega_sum_cases(d(2), 0.5).unwrap(),
            C64::new(2f64.sqrt(), 0.0),
            1e-15
        ));
        assert!(matches!(omega_sum_cases(d(3), 0.3), Err(Error::Domain(_))));
    }

    #[test]
    fn k_weighted_examples() {
        assert_eq!(k_weighted_sum(d(4), 0.0).unwrap(), C64::new(0.0, 0.0));
        assert!(close(
            k_weighted_sum(d(3), 1.0).unwrap(),
            C64::new(0.0, 3f64.sqrt()),
            1e-14
        ));
        let dim = d(4);
        assert!(close(
            k_weighted_sum(dim, 2.0).unwrap(),
            direct::k_weighted(dim, 2.0),
            1e-12
        ));
        assert!(matches!(k_weighted_sum(dim, 4.0), Err(Error::Singular(_))));
    }

    #[test]
    fn k_weighted_near_singular_points_stays_accurate() {
        for n in [2usize, 5, 16] {
            let dim = d(n);
            for base in [0.0, n as f64, -2.0 * n as f64] {
                for off in [1e-3, -2e-4, 3e-5, 0.02, -0.05] {
                    let r = base + off;
                    let closed = k_weighted_sum(dim, r).unwrap();
                    let brute = direct::k_weighted(dim, r);
                    assert!(
                        close(closed, brute, 1e-10),
                        "N={n} r={r}: {closed} vs {brute}"
                    );
                }
            }
        }
    }

    #[test]
    fn query_dispatch() {
        let q = SumQuery::new(d(2), 0.5, SumVariant::OmegaCases).unwrap();
        assert!(close(q.closed_form().unwrap(), q.direct().unwrap(), 1e-14));
        assert!(SumQuery::new(d(2), f64::INFINITY, SumVariant::Omega).is_err());
    }
}
