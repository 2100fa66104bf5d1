use nalgebra::DMatrix;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Dim, State, SymIndex};
use crate::error::{ensure_same_dim, Error, Result};
use crate::C64;

/// Dense operator; entry `(r, s)` is the coefficient of `φ_r⟨φ_s, ·⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Op {
    dim: Dim,
    m: DMatrix<C64>,
}

impl Op {
    pub fn new(dim: Dim, m: DMatrix<C64>) -> Result<Self> {
        ensure_same_dim(dim.n(), m.nrows())?;
        ensure_same_dim(dim.n(), m.ncols())?;
        Ok(Op { dim, m })
    }

    pub fn from_fn(dim: Dim, mut f: impl FnMut(SymIndex, SymIndex) -> C64) -> Self {
        let idx: Vec<SymIndex> = dim.indices().collect();
        let m = DMatrix::from_fn(dim.n(), dim.n(), |r, s| f(idx[r], idx[s]));
        Op { dim, m }
    }

    pub fn identity(dim: Dim) -> Self {
        Op {
            dim,
            m: DMatrix::identity(dim.n(), dim.n()),
        }
    }

    pub fn zeros(dim: Dim) -> Self {
        Op {
            dim,
            m: DMatrix::zeros(dim.n(), dim.n()),
        }
    }

    /// Diagonal operator with entry `f(k)` at label `k`.
    pub fn diagonal(dim: Dim, mut f: impl FnMut(f64) -> C64) -> Self {
        let mut m = DMatrix::zeros(dim.n(), dim.n());
        for (o, k) in dim.labels().enumerate() {
            m[(o, o)] = f(k);
        }
        Op { dim, m }
    }

    /// `Σ_k λ_k v_k⟨v_k, ·⟩`.
    pub fn spectral(vectors: &[State], values: &[C64]) -> Result<Self> {
        ensure_same_dim(vectors.len(), values.len())?;
        let dim = vectors
            .first()
            .map(State::dim)
            .ok_or_else(|| Error::Domain("spectral sum needs at least one vector".into()))?;
        let mut m = DMatrix::zeros(dim.n(), dim.n());
        for (v, &lambda) in vectors.iter().zip(values) {
            ensure_same_dim(dim.n(), v.dim().n())?;
            let col = v.vector();
            m += (col * lambda) * col.adjoint();
        }
        Ok(Op { dim, m })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn entry(&self, r: SymIndex, s: SymIndex) -> C64 {
        self.m[(r.offset(), s.offset())]
    }

    pub fn adjoint(&self) -> Op {
        Op {
            dim: self.dim,
            m: self.m.adjoint(),
        }
    }

    pub fn product(&self, rhs: &Op) -> Result<Op> {
        ensure_same_dim(self.dim.n(), rhs.dim.n())?;
        Ok(Op {
            dim: self.dim,
            m: &self.m * &rhs.m,
        })
    }

    pub fn apply(&self, v: &State) -> Result<State> {
        ensure_same_dim(self.dim.n(), v.dim().n())?;
        Ok(State::from_vector(self.dim, &self.m * v.vector()))
    }

    pub fn add(&self, rhs: &Op) -> Result<Op> {
        ensure_same_dim(self.dim.n(), rhs.dim.n())?;
        Ok(Op {
            dim: self.dim,
            m: &self.m + &rhs.m,
        })
    }

    pub fn sub(&self, rhs: &Op) -> Result<Op> {
        ensure_same_dim(self.dim.n(), rhs.dim.n())?;
        Ok(Op {
            dim: self.dim,
            m: &self.m - &rhs.m,
        })
    }

    pub fn scale(&self, c: C64) -> Op {
        Op {
            dim: self.dim,
            m: &self.m * c,
        }
    }

    pub fn trace(&self) -> C64 {
        self.m.trace()
    }

    /// `⟨ψ, A ψ⟩`.
    pub fn expectation(&self, psi: &State) -> Result<C64> {
        let a_psi = self.apply(psi)?;
        Ok(psi.vector().dotc(a_psi.vector()))
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Op) -> Result<f64> {
        ensure_same_dim(self.dim.n(), other.dim.n())?;
        Ok(max_abs(&(&self.m - &other.m)))
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.m)
    }

    /// `max |A − A†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        max_abs(&(&self.m - self.m.adjoint()))
    }

    /// `max |A A† − 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim.n();
        max_abs(&(&self.m * self.m.adjoint() - DMatrix::<C64>::identity(n, n)))
    }

    /// `max |A A† − A† A|`.
    pub fn normality_defect(&self) -> f64 {
        let adj = self.m.adjoint();
        max_abs(&(&self.m * &adj - &adj * &self.m))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}

pub(crate) fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Rows of `[re, im]` pairs in symmetric-index order.
impl Serialize for Op {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .m
            .row_iter()
            .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Op {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(deserializer)?;
        let dim = Dim::new(rows.len()).map_err(D::Error::custom)?;
        if rows.iter().any(|r| r.len() != dim.n()) {
            return Err(D::Error::custom("operator rows must all have length N"));
        }
        let m = DMatrix::from_fn(dim.n(), dim.n(), |r, s| {
            let [re, im] = rows[r][s];
            C64::new(re, im)
        });
        Ok(Op { dim, m })
    }
}
