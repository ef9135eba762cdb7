//! Dense linear maps `V^{⊗m} → V^{⊗n}` in the standard basis.
//!
//! Coefficients are stored row-major: the row is the output multi-index,
//! the column the input multi-index, both in v-adic order with the leftmost
//! tensor factor most significant.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::TensorError;
use crate::scalar::Scalar;

/// `dim^arity`, or an error when it does not fit in memory-addressable range.
pub fn checked_pow(dim: usize, arity: usize) -> Result<usize, TensorError> {
    let mut acc: usize = 1;
    for _ in 0..arity {
        acc = acc.checked_mul(dim).ok_or(TensorError::TooLarge { dim, arity })?;
    }
    Ok(acc)
}

/// Splits a flat index into `arity` base-`dim` digits, most significant first.
pub fn digits(mut index: usize, dim: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = index % dim;
        index /= dim;
    }
    out
}

/// Inverse of [`digits`].
pub fn flat_index(digits: &[usize], dim: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * dim + d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceSide {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<S> {
    dim: usize,
    dom: usize,
    cod: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> LinearMap<S> {
    pub fn new(dim: usize, dom: usize, cod: usize, coeffs: Vec<S>) -> Result<Self, TensorError> {
        if dim == 0 {
            return Err(TensorError::ZeroDimension);
        }
        let expected = checked_pow(dim, dom + cod)?;
        if coeffs.len() != expected {
            return Err(TensorError::CoefficientCount { expected, found: coeffs.len() });
        }
        Ok(LinearMap { dim, dom, cod, coeffs })
    }

    pub fn zeros(dim: usize, dom: usize, cod: usize) -> Result<Self, TensorError> {
        if dim == 0 {
            return Err(TensorError::ZeroDimension);
        }
        let len = checked_pow(dim, dom + cod)?;
        Ok(LinearMap { dim, dom, cod, coeffs: vec![S::zero(); len] })
    }

    pub fn from_fn(
        dim: usize,
        dom: usize,
        cod: usize,
        mut f: impl FnMut(usize, usize) -> S,
    ) -> Result<Self, TensorError> {
        if dim == 0 {
            return Err(TensorError::ZeroDimension);
        }
        let rows = checked_pow(dim, cod)?;
        let cols = checked_pow(dim, dom)?;
        checked_pow(dim, dom + cod)?;
        let mut coeffs = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                coeffs.push(f(r, c));
            }
        }
        Ok(LinearMap { dim, dom, cod, coeffs })
    }

    pub fn identity(dim: usize, arity: usize) -> Result<Self, TensorError> {
        Self::from_fn(dim, arity, arity, |r, c| if r == c { S::one() } else { S::zero() })
    }

    /// Arity-0 map, i.e. a scalar on the unit object.
    pub fn scalar(dim: usize, value: S) -> Result<Self, TensorError> {
        Self::new(dim, 0, 0, vec![value])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn dom_arity(&self) -> usize {
        self.dom
    }
    pub fn cod_arity(&self) -> usize {
        self.cod
    }
    pub fn rows(&self) -> usize {
        self.coeffs.len() / self.cols()
    }
    pub fn cols(&self) -> usize {
        self.dim.pow(self.dom as u32)
    }
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }
    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }
    pub fn is_square(&self) -> bool {
        self.dom == self.cod
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.coeffs[row * self.cols() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        let cols = self.cols();
        self.coeffs[row * cols + col] = value;
    }

    /// The value of an arity-0 map.
    pub fn as_scalar(&self) -> Option<&S> {
        (self.dom == 0 && self.cod == 0).then(|| &self.coeffs[0])
    }

    /// Coefficient `A^{out}_{inp}` addressed by multi-indices.
    pub fn entry(&self, out: &[usize], inp: &[usize]) -> &S {
        debug_assert_eq!(out.len(), self.cod);
        debug_assert_eq!(inp.len(), self.dom);
        self.get(flat_index(out, self.dim), flat_index(inp, self.dim))
    }

    fn same_dim(&self, other: &Self) -> Result<(), TensorError> {
        if self.dim != other.dim {
            return Err(TensorError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    /// `self ⊗ other` (Kronecker product in v-adic order).
    pub fn tensor(&self, other: &Self) -> Result<Self, TensorError> {
        self.same_dim(other)?;
        let (r1, c1) = (self.rows(), self.cols());
        let (r2, c2) = (other.rows(), other.cols());
        let len = checked_pow(self.dim, self.dom + self.cod + other.dom + other.cod)?;
        let mut coeffs = Vec::with_capacity(len);
        for i1 in 0..r1 {
            for i2 in 0..r2 {
                for j1 in 0..c1 {
                    let a = self.get(i1, j1);
                    for j2 in 0..c2 {
                        coeffs.push(a.clone() * other.get(i2, j2).clone());
                    }
                }
            }
        }
        Ok(LinearMap { dim: self.dim, dom: self.dom + other.dom, cod: self.cod + other.cod, coeffs })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, TensorError> {
        self.same_dim(other)?;
        if other.cod != self.dom {
            return Err(TensorError::ArityMismatch { expected: self.dom, found: other.cod });
        }
        let (n, k, m) = (self.rows(), self.cols(), other.cols());
        let mut coeffs = vec![S::zero(); n * m];
        for i in 0..n {
            for l in 0..k {
                let a = self.get(i, l);
                if a.is_exact_zero() {
                    continue;
                }
                let row = &other.coeffs[l * m..(l + 1) * m];
                let out = &mut coeffs[i * m..(i + 1) * m];
                for (o, b) in out.iter_mut().zip(row) {
                    if !b.is_exact_zero() {
                        *o = o.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(LinearMap { dim: self.dim, dom: other.dom, cod: self.cod, coeffs })
    }

    /// Right (`r_B`) or left (`l_B`) partial trace of an endomorphism of `V^{⊗i}`, `i ≥ 1`.
    pub fn partial_trace(&self, side: TraceSide) -> Result<Self, TensorError> {
        if self.dom != self.cod {
            return Err(TensorError::NotSquare { dom: self.dom, cod: self.cod });
        }
        if self.dom == 0 {
            return Err(TensorError::ZeroArityTrace);
        }
        let v = self.dim;
        let rest = self.dim.pow(self.dom as u32 - 1);
        let out = Self::from_fn(v, self.dom - 1, self.dom - 1, |k, j| {
            let mut acc = S::zero();
            for r in 0..v {
                let (row, col) = match side {
                    TraceSide::Right => (k * v + r, j * v + r),
                    TraceSide::Left => (r * rest + k, r * rest + j),
                };
                acc = acc + self.get(row, col).clone();
            }
            acc
        })?;
        Ok(out)
    }

    /// Ordinary matrix trace.
    pub fn trace(&self) -> Result<S, TensorError> {
        if self.dom != self.cod {
            return Err(TensorError::NotSquare { dom: self.dom, cod: self.cod });
        }
        let n = self.rows();
        Ok((0..n).fold(S::zero(), |acc, i| acc + self.get(i, i).clone()))
    }

    pub fn transpose(&self) -> Self {
        let (n, m) = (self.rows(), self.cols());
        let mut coeffs = Vec::with_capacity(n * m);
        for c in 0..m {
            for r in 0..n {
                coeffs.push(self.get(r, c).clone());
            }
        }
        LinearMap { dim: self.dim, dom: self.cod, cod: self.dom, coeffs }
    }

    pub fn scale(&self, factor: &S) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.clone() * factor.clone()).collect();
        LinearMap { dim: self.dim, dom: self.dom, cod: self.cod, coeffs }
    }

    fn same_shape(&self, other: &Self) -> Result<(), TensorError> {
        self.same_dim(other)?;
        if self.dom != other.dom || self.cod != other.cod {
            return Err(TensorError::ShapeMismatch {
                left: (self.dom, self.cod),
                right: (other.dom, other.cod),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        self.same_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(LinearMap { dim: self.dim, dom: self.dom, cod: self.cod, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.same_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(LinearMap { dim: self.dim, dom: self.dom, cod: self.cod, coeffs })
    }

    /// Largest entry magnitude (max-abs norm).
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Residual norm used throughout: max absolute entry difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, TensorError> {
        self.same_shape(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max))
    }

    pub fn is_zero_within(&self, eps: f64) -> bool {
        self.coeffs.iter().all(|x| x.is_zero_within(eps))
    }

    /// Post-composes with `id_p ⊗ local ⊗ id` acting on codomain strands
    /// `position .. position + local.dom_arity()`.
    pub fn apply_local(&self, position: usize, local: &Self) -> Result<Self, TensorError> {
        self.same_dim(local)?;
        let (k, l) = (local.dom, local.cod);
        if position + k > self.cod {
            return Err(TensorError::PositionOutOfRange { position, width: k, arity: self.cod });
        }
        let v = self.dim;
        let tail = self.cod - position - k;
        let new_cod = self.cod - k + l;
        let len = checked_pow(v, self.dom + new_cod)?;
        let cols = self.cols();
        let (vp, vk, vl, vt) = (v.pow(position as u32), v.pow(k as u32), v.pow(l as u32), v.pow(tail as u32));
        let mut coeffs = vec![S::zero(); len];
        for a in 0..vp {
            for b in 0..vk {
                for c in 0..vt {
                    let src_row = (a * vk + b) * vt + c;
                    for j in 0..cols {
                        let x = &self.coeffs[src_row * cols + j];
                        if x.is_exact_zero() {
                            continue;
                        }
                        for bp in 0..vl {
                            let g = local.get(bp, b);
                            if g.is_exact_zero() {
                                continue;
                            }
                            let dst = ((a * vl + bp) * vt + c) * cols + j;
                            coeffs[dst] = coeffs[dst].clone() + g.clone() * x.clone();
                        }
                    }
                }
            }
        }
        Ok(LinearMap { dim: v, dom: self.dom, cod: new_cod, coeffs })
    }

    /// Matrix inverse of a square map, `None` when singular (pivot below `eps`
    /// relative to the largest entry in float mode, exactly zero in exact mode).
    pub fn inverse(&self, eps: f64) -> Option<Self> {
        if self.dom != self.cod {
            return None;
        }
        let n = self.rows();
        let scale = self.max_abs();
        if scale == 0.0 {
            return None;
        }
        let mut a = self.coeffs.clone();
        let mut inv = Self::identity(self.dim, self.dom).ok()?.coeffs;
        for col in 0..n {
            let pivot = (col..n).max_by(|&x, &y| {
                a[x * n + col].magnitude().total_cmp(&a[y * n + col].magnitude())
            })?;
            if a[pivot * n + col].is_zero_within(eps * scale) {
                return None;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] = a[col * n + j].clone() / p.clone();
                inv[col * n + j] = inv[col * n + j].clone() / p.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col].clone();
                if f.is_exact_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a[col * n + j].clone();
                    if !t.is_exact_zero() {
                        a[r * n + j] = a[r * n + j].clone() - f.clone() * t;
                    }
                    let t = inv[col * n + j].clone();
                    if !t.is_exact_zero() {
                        inv[r * n + j] = inv[r * n + j].clone() - f.clone() * t;
                    }
                }
            }
        }
        Some(LinearMap { dim: self.dim, dom: self.dom, cod: self.cod, coeffs: inv })
    }

    /// Converts coefficients to another engine.
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LinearMap<T> {
        LinearMap { dim: self.dim, dom: self.dom, cod: self.cod, coeffs: self.coeffs.iter().map(f).collect() }
    }
}

/// `T_n`: reverses the order of tensor factors.
pub fn twist_map<S: Scalar>(dim: usize, n: usize) -> Result<LinearMap<S>, TensorError> {
    let mut out = LinearMap::zeros(dim, n, n)?;
    let size = checked_pow(dim, n)?;
    for col in 0..size {
        let mut d = digits(col, dim, n);
        d.reverse();
        out.set(flat_index(&d, dim), col, S::one());
    }
    Ok(out)
}

/// Power `A^k` of a square map.
pub fn power<S: Scalar>(a: &LinearMap<S>, k: usize) -> Result<LinearMap<S>, TensorError> {
    if !a.is_square() {
        return Err(TensorError::NotSquare { dom: a.dom_arity(), cod: a.cod_arity() });
    }
    let mut acc = LinearMap::identity(a.dim(), a.dom_arity())?;
    for _ in 0..k {
        acc = a.compose(&acc)?;
    }
    Ok(acc)
}
