use nalgebra::DMatrix;

use super::{op::max_abs, Dim, State, SymIndex, DEFAULT_TOL};
use crate::error::{ensure_same_dim, Error, Result};
use crate::C64;

/// `N` orthonormal states labelled by the symmetric index.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    dim: Dim,
    vecs: Vec<State>,
}

impl Basis {
    /// Checks the Gram matrix against the identity within `1e-10`.
    pub fn new(dim: Dim, vecs: Vec<State>) -> Result<Self> {
        let basis = Basis::from_orthonormal(dim, vecs)?;
        let defect = basis.orthonormality_defect();
        if defect > DEFAULT_TOL {
            return Err(Error::NotOrthonormal { defect });
        }
        Ok(basis)
    }

    /// Skips the Gram check; for bases that are orthonormal by construction.
    pub(crate) fn from_orthonormal(dim: Dim, vecs: Vec<State>) -> Result<Self> {
        ensure_same_dim(dim.n(), vecs.len())?;
        for v in &vecs {
            ensure_same_dim(dim.n(), v.dim().n())?;
        }
        Ok(Basis { dim, vecs })
    }

    /// The site basis `{φ_x}`.
    pub fn standard(dim: Dim) -> Self {
        Basis {
            dim,
            vecs: dim.indices().map(State::basis_vector).collect(),
        }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn vectors(&self) -> &[State] {
        &self.vecs
    }

    pub fn vector(&self, k: SymIndex) -> &State {
        &self.vecs[k.offset()]
    }

    /// Vector at label `k`.
    pub fn at(&self, k: f64) -> Result<&State> {
        Ok(&self.vecs[self.dim.index(k)?.offset()])
    }

    /// Columns are the basis vectors in label order.
    pub fn as_matrix(&self) -> DMatrix<C64> {
        let n = self.dim.n();
        DMatrix::from_fn(n, n, |r, c| self.vecs[c].vector()[r])
    }

    /// `G[r][s] = ⟨self_r, other_s⟩`.
    pub fn overlaps(&self, other: &Basis) -> Result<DMatrix<C64>> {
        ensure_same_dim(self.dim.n(), other.dim.n())?;
        Ok(self.as_matrix().adjoint() * other.as_matrix())
    }

    pub fn orthonormality_defect(&self) -> f64 {
        let m = self.as_matrix();
        let n = self.dim.n();
        max_abs(&(m.adjoint() * &m - DMatrix::<C64>::identity(n, n)))
    }

    /// Coefficients of `psi` in this basis, `⟨b_k, ψ⟩`.
    pub fn coefficients(&self, psi: &State) -> Result<State> {
        ensure_same_dim(self.dim.n(), psi.dim().n())?;
        let coeffs = self
            .vecs
            .iter()
            .map(|b| b.vector().dotc(psi.vector()))
            .collect();
        State::new(self.dim, coeffs)
    }

    /// `Σ_k d_k b_k`, the inverse of [`Basis::coefficients`].
    pub fn synthesize(&self, coeffs: &State) -> Result<State> {
        ensure_same_dim(self.dim.n(), coeffs.dim().n())?;
        Ok(State::from_vector(
            self.dim,
            self.as_matrix() * coeffs.vector(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_orthonormal() {
        let dim = Dim::new(2).unwrap();
        let v = State::from_fn(dim, |_| C64::new(1.0, 0.0));
        let err = Basis::new(dim, vec![v.clone(), v]).unwrap_err();
        assert!(matches!(err, Error::NotOrthonormal { .. }));
    }

    #[test]
    fn standard_basis_overlaps_identity() {
        let dim = Dim::new(4).unwrap();
        let b = Basis::standard(dim);
        assert_eq!(b.orthonormality_defect(), 0.0);
        assert_eq!(b.overlaps(&b).unwrap(), DMatrix::identity(4, 4));
        assert_eq!(b.at(0.5).unwrap().at(0.5).unwrap(), C64::new(1.0, 0.0));
    }
}
