use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Number of lattice sites, `N = 2j + 1 ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Dim(usize);

impl Dim {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDim(n));
        }
        Ok(Dim(n))
    }

    #[inline]
    pub fn n(self) -> usize {
        self.0
    }

    /// Largest label, `(N-1)/2`; a half-odd-integer when `N` is even.
    #[inline]
    pub fn j(self) -> f64 {
        (self.0 as f64 - 1.0) / 2.0
    }

    #[inline]
    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    #[inline]
    pub fn sqrt_n(self) -> f64 {
        (self.0 as f64).sqrt()
    }

    /// Label stored at `offset`.
    #[inline]
    pub fn label(self, offset: usize) -> f64 {
        offset as f64 - self.j()
    }

    /// Labels `-j, …, j` in storage order.
    pub fn labels(self) -> impl ExactSizeIterator<Item = f64> + Clone {
        (0..self.0).map(move |o| self.label(o))
    }

    pub fn indices(self) -> impl ExactSizeIterator<Item = SymIndex> + Clone {
        (0..self.0).map(move |offset| SymIndex { offset, dim: self })
    }

    /// Index for the label `k`, which must satisfy `k + j ∈ {0, …, N-1}`.
    pub fn index(self, k: f64) -> Result<SymIndex> {
        let shifted = k + self.j();
        if !shifted.is_finite()
            || shifted.fract() != 0.0
            || shifted < 0.0
            || shifted >= self.0 as f64
        {
            return Err(Error::Domain(format!(
                "label {k} is not in the symmetric range of N = {}",
                self.0
            )));
        }
        Ok(SymIndex {
            offset: shifted as usize,
            dim: self,
        })
    }

    pub fn index_at(self, offset: usize) -> Result<SymIndex> {
        if offset >= self.0 {
            return Err(Error::Domain(format!(
                "offset {offset} out of range for N = {}",
                self.0
            )));
        }
        Ok(SymIndex { offset, dim: self })
    }
}

impl TryFrom<usize> for Dim {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        Dim::new(n)
    }
}

impl From<Dim> for usize {
    fn from(d: Dim) -> usize {
        d.0
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}", self.0)
    }
}

/// A lattice label `k ∈ {-j, …, j}` tied to its dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymIndex {
    offset: usize,
    dim: Dim,
}

impl SymIndex {
    #[inline]
    pub fn value(self) -> f64 {
        self.dim.label(self.offset)
    }

    #[inline]
    pub fn offset(self) -> usize {
        self.offset
    }

    #[inline]
    pub fn dim(self) -> Dim {
        self.dim
    }

    /// The next label up, wrapping `j → -j`. The flag reports the wrap.
    pub fn succ(self) -> (SymIndex, bool) {
        if self.offset + 1 == self.dim.n() {
            (
                SymIndex {
                    offset: 0,
                    dim: self.dim,
                },
                true,
            )
        } else {
            (
                SymIndex {
                    offset: self.offset + 1,
                    dim: self.dim,
                },
                false,
            )
        }
    }
}

/// `ω^t = exp(i·2πt/N)` for the literal real exponent `t`.
///
/// The exponent is first reduced modulo `N`, which changes nothing
/// mathematically but makes `ω^{nN}` exactly `1`.
pub fn omega_pow(dim: Dim, t: f64) -> Result<C64> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("non-finite exponent {t}")));
    }
    Ok(omega_unchecked(dim, t))
}

/// The principal root `ω = e^{i2π/N}`.
pub fn omega(dim: Dim) -> C64 {
    omega_unchecked(dim, 1.0)
}

#[inline]
pub(crate) fn omega_unchecked(dim: Dim, t: f64) -> C64 {
    let n = dim.n() as f64;
    let mut r = t.rem_euclid(n);
    if r > n / 2.0 {
        r -= n;
    }
    C64::cis(2.0 * PI * r / n)
}

/// Position and momentum lattice constants tied by `a·g·N = 2π` (ħ = 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LatticeScales {
    a: f64,
    g: f64,
    dim: Dim,
}

impl LatticeScales {
    const PRODUCT_TOL: f64 = 1e-12;

    /// `a = g = √(2π/N)`.
    pub fn symmetric(dim: Dim) -> Self {
        let a = (2.0 * PI / dim.n() as f64).sqrt();
        LatticeScales { a, g: a, dim }
    }

    /// Fix `a` and derive `g = 2π/(aN)`.
    pub fn with_position_constant(dim: Dim, a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain(format!(
                "lattice constant a must be positive, got {a}"
            )));
        }
        Ok(LatticeScales {
            a,
            g: 2.0 * PI / (a * dim.n() as f64),
            dim,
        })
    }

    /// Fix `g` and derive `a = 2π/(gN)`.
    pub fn with_momentum_constant(dim: Dim, g: f64) -> Result<Self> {
        if !(g.is_finite() && g > 0.0) {
            return Err(Error::Domain(format!(
                "lattice constant g must be positive, got {g}"
            )));
        }
        Ok(LatticeScales {
            a: 2.0 * PI / (g * dim.n() as f64),
            g,
            dim,
        })
    }

    /// Both constants given; rejected unless `a·g·N = 2π` within `1e-12`.
    pub fn new(dim: Dim, a: f64, g: f64) -> Result<Self> {
        let product = a * g * dim.n() as f64;
        if !(a > 0.0 && g > 0.0) || (product - 2.0 * PI).abs() > Self::PRODUCT_TOL {
            return Err(Error::Domain(format!(
                "lattice constants must satisfy a·g·N = 2π, got a={a}, g={g}, a·g·N={product}"
            )));
        }
        Ok(LatticeScales { a, g, dim })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }
}
