use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use super::{op::max_abs, Basis, Dim, Op, State, LABEL_MATCH_TOL};
use crate::error::{Error, Result};
use crate::C64;

/// Normality is checked relative to `max(1, ‖A‖_max)²`.
const NORMAL_TOL: f64 = 1e-10;
/// Eigenvalues of the Hermitian probe closer than this fraction of its
/// spread are treated as one cluster and split again.
const CLUSTER_REL: f64 = 1e-6;
/// A restricted block this close to a multiple of the identity is accepted.
const SCALAR_REL: f64 = 1e-12;
const MAX_DEPTH: usize = 12;
/// Component magnitudes within this fraction of the largest count as ties.
const PHASE_TIE_REL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub value: C64,
    pub vector: State,
}

/// Full spectral decomposition of a normal operator.
///
/// Pairs are ordered by the argument of the eigenvalue in `(-π, π]`. Each
/// eigenvector is rotated so that its largest component (lowest label on
/// ties) is real and positive.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem {
    dim: Dim,
    pairs: Vec<EigenPair>,
}

impl EigenSystem {
    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn pairs(&self) -> &[EigenPair] {
        &self.pairs
    }

    pub fn values(&self) -> Vec<C64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    pub fn vectors(&self) -> Vec<State> {
        self.pairs.iter().map(|p| p.vector.clone()).collect()
    }

    /// Eigenvectors in pair order as a basis.
    pub fn basis(&self) -> Basis {
        Basis::from_orthonormal(self.dim, self.vectors())
            .expect("eigenvectors share the operator dimension")
    }

    /// `max ‖A v − λ v‖` over all pairs.
    pub fn max_residual(&self, a: &Op) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for p in &self.pairs {
            let av = a.apply(&p.vector)?;
            worst = worst.max(av.distance(&p.vector.scale(p.value))?);
        }
        Ok(worst)
    }

    /// Assign each lattice label `k` the eigenvalue nearest `expected(k)`.
    ///
    /// Returns `order[k_offset] = pair index`. Fails when a distance exceeds
    /// `1e-6` or two labels claim the same eigenvalue.
    pub fn match_labels(&self, mut expected: impl FnMut(f64) -> C64) -> Result<Vec<usize>> {
        let mut taken = vec![false; self.pairs.len()];
        let mut order = Vec::with_capacity(self.pairs.len());
        for k in self.dim.labels() {
            let target = expected(k);
            let (best, dist) = self
                .pairs
                .iter()
                .enumerate()
                .map(|(i, p)| (i, (p.value - target).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("eigensystem is never empty");
            if dist > LABEL_MATCH_TOL {
                return Err(Error::LabelMatch(format!(
                    "no eigenvalue within {LABEL_MATCH_TOL:e} of the target for label {k} (nearest {dist:e})"
                )));
            }
            if taken[best] {
                return Err(Error::LabelMatch(format!(
                    "eigenvalue {best} claimed twice (label {k})"
                )));
            }
            taken[best] = true;
            order.push(best);
        }
        Ok(order)
    }

    /// Eigenvectors reordered by lattice label via [`EigenSystem::match_labels`].
    pub fn labelled_basis(&self, expected: impl FnMut(f64) -> C64) -> Result<Basis> {
        let order = self.match_labels(expected)?;
        let vecs = order
            .into_iter()
            .map(|i| self.pairs[i].vector.clone())
            .collect();
        Basis::from_orthonormal(self.dim, vecs)
    }
}

/// Spectral decomposition of a normal operator.
pub fn eig_normal(a: &Op) -> Result<EigenSystem> {
    let scale = a.max_abs().max(1.0);
    let defect = a.normality_defect();
    if defect > NORMAL_TOL * scale * scale {
        return Err(Error::NotNormal { defect });
    }
    let dim = a.dim();
    let m = a.matrix();
    let q = diagonalize(m, 0);

    let mut pairs: Vec<EigenPair> = q
        .column_iter()
        .map(|col| {
            let v = col.into_owned();
            let value = v.dotc(&(m * &v));
            EigenPair {
                value,
                vector: State::from_vector(dim, fix_phase(v)),
            }
        })
        .collect();
    pairs.sort_by(|x, y| principal_arg(x.value).total_cmp(&principal_arg(y.value)));
    Ok(EigenSystem { dim, pairs })
}

/// `exp(scale · A)` through the spectral decomposition of `A`.
pub fn op_exp(a: &Op, scale: C64) -> Result<Op> {
    let es = eig_normal(a)?;
    let values: Vec<C64> = es.pairs.iter().map(|p| (p.value * scale).exp()).collect();
    Op::spectral(&es.vectors(), &values)
}

fn principal_arg(z: C64) -> f64 {
    let t = z.arg();
    if t <= -PI + 1e-12 {
        PI
    } else {
        t
    }
}

/// Unitary `Q` whose columns are eigenvectors of the normal matrix `m`.
///
/// `m = H₁ + iH₂` with commuting Hermitian parts, so every eigenvector of
/// `cos φ·H₁ + sin φ·H₂` is one of `m` unless two eigenvalues of `m` project
/// onto the same value. Such clusters are restricted and split again with a
/// different angle.
fn diagonalize(m: &DMatrix<C64>, depth: usize) -> DMatrix<C64> {
    let k = m.nrows();
    if k == 1 {
        return DMatrix::identity(1, 1);
    }
    let phi = 0.5 + 0.618_033_988_749_895 * depth as f64;
    let adj = m.adjoint();
    let h1 = (m + &adj) * C64::new(0.5, 0.0);
    let h2 = (m - &adj) * C64::new(0.0, -0.5);
    let mut h = h1 * C64::new(phi.cos(), 0.0) + h2 * C64::new(phi.sin(), 0.0);
    h = (&h + h.adjoint()) * C64::new(0.5, 0.0);

    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let lo = eig.eigenvalues[order[0]];
    let hi = eig.eigenvalues[order[k - 1]];
    let gap_tol = CLUSTER_REL * (hi - lo).abs().max(max_abs(m));

    let mut q = DMatrix::<C64>::zeros(k, k);
    let mut col = 0;
    let mut start = 0;
    while start < k {
        let mut end = start + 1;
        while end < k && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] <= gap_tol {
            end += 1;
        }
        let cluster: Vec<usize> = order[start..end].to_vec();
        let mut v = DMatrix::<C64>::zeros(k, cluster.len());
        for (c, &i) in cluster.iter().enumerate() {
            v.set_column(c, &eig.eigenvectors.column(i));
        }
        if cluster.len() > 1 && depth < MAX_DEPTH {
            v = split_cluster(m, v, depth);
        }
        for c in 0..v.ncols() {
            q.set_column(col, &v.column(c));
            col += 1;
        }
        start = end;
    }
    q
}

fn split_cluster(m: &DMatrix<C64>, v: DMatrix<C64>, depth: usize) -> DMatrix<C64> {
    let size = v.ncols();
    let restricted = v.adjoint() * m * &v;
    let mean = restricted.trace() / size as f64;
    let shifted = &restricted - DMatrix::<C64>::identity(size, size) * mean;
    if max_abs(&shifted) <= SCALAR_REL * max_abs(m).max(1.0) {
        return v;
    }
    v * diagonalize(&shifted, depth + 1)
}

fn fix_phase(mut v: nalgebra::DVector<C64>) -> nalgebra::DVector<C64> {
    let biggest = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if biggest == 0.0 {
        return v;
    }
    let pivot = v
        .iter()
        .position(|z| z.norm() >= biggest * (1.0 - PHASE_TIE_REL))
        .expect("some component attains the maximum");
    let z = v[pivot];
    let rot = z.conj() / z.norm();
    v.iter_mut().for_each(|c| *c *= rot);
    v[pivot] = C64::new(v[pivot].norm(), 0.0);
    v
}
