use nalgebra::DVector;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Dim, SymIndex};
use crate::error::{ensure_same_dim, Error, Result};
use crate::C64;

/// Amplitudes `c_k` over the symmetric labels of one basis.
///
/// Physical constructors normalize; [`State::new`] keeps the raw vector so the
/// type also carries unnormalized coefficient sequences (DFT inputs, sums).
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    dim: Dim,
    amp: DVector<C64>,
}

impl State {
    pub fn new(dim: Dim, amplitudes: Vec<C64>) -> Result<Self> {
        ensure_same_dim(dim.n(), amplitudes.len())?;
        Ok(State {
            dim,
            amp: DVector::from_vec(amplitudes),
        })
    }

    /// Like [`State::new`] but rescaled to unit norm.
    pub fn normalized(dim: Dim, amplitudes: Vec<C64>) -> Result<Self> {
        State::new(dim, amplitudes)?.normalize()
    }

    pub(crate) fn from_vector(dim: Dim, amp: DVector<C64>) -> Self {
        debug_assert_eq!(dim.n(), amp.len());
        State { dim, amp }
    }

    /// Raw amplitudes from a function of the label.
    pub fn from_fn(dim: Dim, mut f: impl FnMut(f64) -> C64) -> Self {
        let amp = DVector::from_iterator(dim.n(), dim.labels().map(&mut f));
        State { dim, amp }
    }

    /// The basis vector at label `k`.
    pub fn basis_vector(k: SymIndex) -> Self {
        let mut amp = DVector::zeros(k.dim().n());
        amp[k.offset()] = C64::new(1.0, 0.0);
        State { dim: k.dim(), amp }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn vector(&self) -> &DVector<C64> {
        &self.amp
    }

    pub fn amplitudes(&self) -> &[C64] {
        self.amp.as_slice()
    }

    pub fn amp(&self, k: SymIndex) -> C64 {
        self.amp[k.offset()]
    }

    /// Amplitude at label `k`.
    pub fn at(&self, k: f64) -> Result<C64> {
        Ok(self.amp[self.dim.index(k)?.offset()])
    }

    pub fn norm(&self) -> f64 {
        self.amp.norm()
    }

    pub fn normalize(self) -> Result<Self> {
        let n = self.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Domain(format!(
                "cannot normalize a vector of norm {n}"
            )));
        }
        Ok(State {
            dim: self.dim,
            amp: self.amp.unscale(n),
        })
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// `|c_k|²` in storage order.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amp.iter().map(|c| c.norm_sqr()).collect()
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &State) -> Result<f64> {
        ensure_same_dim(self.dim.n(), other.dim.n())?;
        Ok((&self.amp - &other.amp).norm())
    }

    pub fn scale(&self, c: C64) -> State {
        State {
            dim: self.dim,
            amp: &self.amp * c,
        }
    }

    /// New amplitudes `f(k, c_k)`.
    pub fn map_labels(&self, mut f: impl FnMut(f64, C64) -> C64) -> State {
        let amp = DVector::from_iterator(
            self.dim.n(),
            self.dim
                .labels()
                .zip(self.amp.iter())
                .map(|(k, &c)| f(k, c)),
        );
        State { dim: self.dim, amp }
    }
}

/// `⟨u, v⟩`, conjugate-linear in `u`.
pub fn inner(u: &State, v: &State) -> Result<C64> {
    ensure_same_dim(u.dim.n(), v.dim.n())?;
    Ok(u.amp.dotc(&v.amp))
}

impl Serialize for State {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.amp.iter().map(|c| [c.re, c.im]))
    }
}

impl<'de> Deserialize<'de> for State {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        let dim = Dim::new(pairs.len()).map_err(D::Error::custom)?;
        let amps = pairs.into_iter().map(|[re, im]| C64::new(re, im)).collect();
        State::new(dim, amps).map_err(D::Error::custom)
    }
}
