use alloc::vec::Vec;

use crate::error::TensorError;
use crate::scalar::{EngineKind, Scalar};
use crate::tensor::LinearMap;

use super::Poly;

/// Solves `Σ c_j columns[j] = target` by elimination with partial pivoting.
/// Returns `None` if the target is not in the span (entries beyond `tol`
/// remain after elimination) unless `force` is set.
fn solve_in_span<S: Scalar>(columns: &[Vec<S>], target: &[S], tol: f64, force: bool) -> Option<Vec<S>> {
    let k = columns.len();
    let m = target.len();
    // augmented row-major m × (k + 1)
    let w = k + 1;
    let mut a: Vec<S> = Vec::with_capacity(m * w);
    for i in 0..m {
        for col in columns {
            a.push(col[i].clone());
        }
        a.push(target[i].clone());
    }
    let mut pivot_rows = Vec::with_capacity(k);
    let mut row = 0;
    for j in 0..k {
        let best = (row..m).max_by(|&x, &y| a[x * w + j].magnitude().total_cmp(&a[y * w + j].magnitude()))?;
        if a[best * w + j].is_zero_within(tol) {
            if force {
                continue;
            }
            return None;
        }
        for c in 0..w {
            a.swap(best * w + c, row * w + c);
        }
        let p = a[row * w + j].clone();
        for r in (row + 1)..m {
            let f = a[r * w + j].clone();
            if f.is_exact_zero() {
                continue;
            }
            let f = f / p.clone();
            for c in j..w {
                let t = a[row * w + c].clone();
                a[r * w + c] = a[r * w + c].clone() - f.clone() * t;
            }
        }
        pivot_rows.push((row, j));
        row += 1;
    }
    if !force && (row..m).any(|r| !a[r * w + k].is_zero_within(tol)) {
        return None;
    }
    let mut x: Vec<S> = (0..k).map(|_| S::zero()).collect();
    for &(r, j) in pivot_rows.iter().rev() {
        let mut acc = a[r * w + k].clone();
        for c in (j + 1)..k {
            acc = acc - a[r * w + c].clone() * x[c].clone();
        }
        x[j] = acc / a[r * w + j].clone();
    }
    Some(x)
}

/// Monic polynomial `P` of least degree with `P(A) = 0`, found by testing
/// successive Krylov powers `I, A, A², …` for linear dependence.
///
/// In float mode a candidate is accepted only if
/// `‖P(A)‖_max ≤ eps · max(1, ‖A‖_max)^deg`.
pub fn minimal_polynomial<S: Scalar>(a: &LinearMap<S>, eps: f64) -> Result<Poly<S>, TensorError> {
    if !a.is_square() {
        return Err(TensorError::NotSquare { dom: a.dom_arity(), cod: a.cod_arity() });
    }
    let exact = S::ENGINE == EngineKind::Exact;
    let n = a.rows();
    let norm = a.max_abs().max(1.0);

    let mut power = LinearMap::identity(a.dim(), a.dom_arity())?;
    // columns are powers scaled to unit max-abs in float mode
    let mut scales: Vec<f64> = Vec::new();
    let mut columns: Vec<Vec<S>> = Vec::new();
    let push = |p: &LinearMap<S>, scales: &mut Vec<f64>, columns: &mut Vec<Vec<S>>| {
        let s = if exact { 1.0 } else { p.max_abs().max(f64::MIN_POSITIVE) };
        let inv = S::from_f64(1.0 / s);
        columns.push(p.coeffs().iter().map(|x| if exact { x.clone() } else { x.clone() * inv.clone() }).collect());
        scales.push(s);
    };
    push(&power, &mut scales, &mut columns);

    for k in 1..=n {
        power = a.compose(&power)?;
        let sk = if exact { 1.0 } else { power.max_abs().max(f64::MIN_POSITIVE) };
        let target: Vec<S> = if exact {
            power.coeffs().to_vec()
        } else {
            let inv = S::from_f64(1.0 / sk);
            power.coeffs().iter().map(|x| x.clone() * inv.clone()).collect()
        };
        let tol = if exact { 0.0 } else { eps };
        if let Some(c) = solve_in_span(&columns, &target, tol, k == n) {
            let mut coeffs: Vec<S> = c
                .into_iter()
                .zip(&scales)
                .map(|(cj, sj)| {
                    let cj = if exact { cj } else { cj * S::from_f64(sk / sj) };
                    -cj
                })
                .collect();
            coeffs.push(S::one());
            let poly = Poly::new(coeffs);
            if exact || k == n {
                return Ok(poly);
            }
            let residual = poly.eval_map(a)?.max_abs();
            if residual <= eps * num_traits::Float::powi(norm, k as i32) {
                return Ok(poly);
            }
        }
        push(&power, &mut scales, &mut columns);
    }
    unreachable!("Cayley-Hamilton bounds the degree by the matrix size")
}
