//! Nullspaces of homogeneous linear constraint systems, minimal polynomials,
//! and a small dense polynomial type.

pub(crate) mod kernel;
mod minpoly;
mod poly;

pub use minpoly::minimal_polynomial;
pub use poly::Poly;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::TensorError;
use crate::scalar::Scalar;
use crate::tensor::{checked_pow, LinearMap};

/// A sparse row: `(unknown index, coefficient)` pairs.
pub type SparseRow<S> = Vec<(usize, S)>;

/// Homogeneous linear functionals on the coefficients of an unknown map
/// `V^{⊗dom} → V^{⊗cod}` (unknown index = flat coefficient index).
#[derive(Clone, Debug)]
pub struct ConstraintSystem<S> {
    dim: usize,
    dom: usize,
    cod: usize,
    unknowns: usize,
    rows: Vec<SparseRow<S>>,
}

impl<S: Scalar> ConstraintSystem<S> {
    pub fn new(dim: usize, dom: usize, cod: usize) -> Result<Self, TensorError> {
        if dim == 0 {
            return Err(TensorError::ZeroDimension);
        }
        let unknowns = checked_pow(dim, dom + cod)?;
        Ok(ConstraintSystem { dim, dom, cod, unknowns, rows: Vec::new() })
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.dim, self.dom, self.cod)
    }

    pub fn rows(&self) -> &[SparseRow<S>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds one functional; duplicate indices are summed and zeros dropped.
    /// An all-zero row is discarded and `Ok(false)` returned.
    pub fn push(&mut self, row: impl IntoIterator<Item = (usize, S)>) -> Result<bool, TensorError> {
        let mut acc: BTreeMap<usize, S> = BTreeMap::new();
        for (idx, val) in row {
            if idx >= self.unknowns {
                return Err(TensorError::UnknownOutOfRange { index: idx, count: self.unknowns });
            }
            if val.is_exact_zero() {
                continue;
            }
            let slot = acc.entry(idx).or_insert_with(S::zero);
            *slot = slot.clone() + val;
        }
        let row: SparseRow<S> = acc.into_iter().filter(|(_, v)| !v.is_exact_zero()).collect();
        if row.is_empty() {
            return Ok(false);
        }
        self.rows.push(row);
        Ok(true)
    }

    /// Largest `|functional(x)|` over all rows.
    pub fn residual(&self, x: &LinearMap<S>) -> f64 {
        let c = x.coeffs();
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(S::zero(), |acc, (i, a)| acc + a.clone() * c[*i].clone())
                    .magnitude()
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct Kernel<S> {
    pub dimension: usize,
    pub basis: Vec<LinearMap<S>>,
}

/// Kernel of a constraint system. Float engine: singular values at or below
/// `eps · σ_max` count as zero. Exact engine: exact row reduction, `eps` unused.
pub fn nullspace<S: Scalar>(sys: &ConstraintSystem<S>, eps: f64) -> Result<Kernel<S>, TensorError> {
    if sys.unknowns == 0 {
        return Err(TensorError::EmptyUnknown);
    }
    let vectors = S::kernel_vectors(sys.unknowns, &sys.rows, eps);
    let basis = vectors
        .into_iter()
        .map(|v| LinearMap::new(sys.dim, sys.dom, sys.cod, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Kernel { dimension: basis.len(), basis })
}
