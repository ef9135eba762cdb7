use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::TensorError;
use crate::scalar::Scalar;
use crate::tensor::LinearMap;

/// Dense univariate polynomial, coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    /// Trailing exact zeros are trimmed; the zero polynomial has no coefficients.
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_exact_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![S::zero(); degree + 1];
        c[degree] = S::one();
        Poly { coeffs: c }
    }

    /// `Π (X − r)`.
    pub fn from_roots(roots: &[S]) -> Self {
        roots.iter().fold(Poly::new(vec![S::one()]), |acc, r| {
            acc.mul(&Poly::new(vec![-r.clone(), S::one()]))
        })
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly { coeffs: Vec::new() };
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    /// Division with remainder by a polynomial with nonzero leading coefficient.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dl = divisor.leading()?.clone();
        if dl.is_exact_zero() {
            return None;
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Poly::new(Vec::new()), Poly::new(rem)));
        }
        let mut quot = vec![S::zero(); rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let f = rem[shift + dd].clone() / dl.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = rem[shift + j].clone() - f.clone() * d.clone();
            }
            quot[shift] = f;
        }
        rem.truncate(dd);
        Some((Poly::new(quot), Poly::new(rem)))
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `P(A)` by Horner's scheme.
    pub fn eval_map(&self, a: &LinearMap<S>) -> Result<LinearMap<S>, TensorError> {
        let id = LinearMap::identity(a.dim(), a.dom_arity())?;
        let mut acc = LinearMap::zeros(a.dim(), a.dom_arity(), a.cod_arity())?;
        for c in self.coeffs.iter().rev() {
            acc = a.compose(&acc)?.add(&id.scale(c))?;
        }
        Ok(acc)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(S::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(S::zero);
                (a - b).magnitude()
            })
            .fold(0.0, f64::max)
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    /// `X^3 + (-2)X^2 + (1/4)X + (-1/2)` style, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let unit = *c == S::one();
            match (deg, unit) {
                (0, _) => write!(f, "({c})")?,
                (1, true) => f.write_str("X")?,
                (1, false) => write!(f, "({c})X")?,
                (_, true) => write!(f, "X^{deg}")?,
                (_, false) => write!(f, "({c})X^{deg}")?,
            }
        }
        Ok(())
    }
}
