use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // f64::sqrt is inherent when std is linked
use num_traits::Float;

use crate::scalar::{Gaussian, Scalar};

const JACOBI_SWEEPS: usize = 80;

/// Folds `rows` into an `n × n` upper-triangular factor by blocked Householder QR.
fn triangular_factor(n: usize, rows: &[Vec<(usize, Complex64)>]) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut r = vec![zero; n * n];
    let mut start = 0;
    while start < rows.len() {
        let block = &rows[start..(start + n).min(rows.len())];
        start += block.len();
        let m = n + block.len();
        let mut a = vec![zero; m * n];
        a[..n * n].copy_from_slice(&r);
        for (bi, row) in block.iter().enumerate() {
            for &(c, v) in row {
                a[(n + bi) * n + c] += v;
            }
        }
        householder_in_place(&mut a, m, n);
        r.copy_from_slice(&a[..n * n]);
    }
    r
}

fn householder_in_place(a: &mut [Complex64], m: usize, n: usize) {
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; m];
    for j in 0..n.min(m) {
        let norm = (j..m).map(|i| a[i * n + j].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[j * n + j];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        for i in j..m {
            v[i] = a[i * n + j];
        }
        v[j] -= alpha;
        let vnorm = (j..m).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for item in v.iter_mut().take(m).skip(j) {
            *item /= vnorm;
        }
        for c in j..n {
            let s: Complex64 = (j..m).map(|i| v[i].conj() * a[i * n + c]).sum();
            if s == zero {
                continue;
            }
            for i in j..m {
                a[i * n + c] -= v[i] * s * 2.0;
            }
        }
        for i in (j + 1)..m {
            a[i * n + j] = zero;
        }
    }
}

/// Right singular vectors of the constraint matrix whose singular values are
/// at most `eps · σ_max`.
pub(crate) fn float_kernel(n: usize, rows: &[Vec<(usize, Complex64)>], eps: f64) -> Vec<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let r = triangular_factor(n, rows);
    // column-major working copies
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|c| (0..n).map(|i| r[i * n + c]).collect()).collect();
    let mut vmat: Vec<Vec<Complex64>> = (0..n)
        .map(|c| (0..n).map(|i| if i == c { one } else { zero }).collect())
        .collect();

    for _ in 0..JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = cols[p].iter().map(|x| x.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|x| x.norm_sqr()).sum();
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let ph = phase.conj();
                for i in 0..n {
                    let xp = cols[p][i];
                    let xq = cols[q][i] * ph;
                    cols[p][i] = xp * c - xq * s;
                    cols[q][i] = xp * s + xq * c;
                    let vp = vmat[p][i];
                    let vq = vmat[q][i] * ph;
                    vmat[p][i] = vp * c - vq * s;
                    vmat[q][i] = vp * s + vq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<f64> = cols.iter().map(|c| c.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()).collect();
    let smax = sigma.iter().copied().fold(0.0, f64::max);
    (0..n)
        .filter(|&j| sigma[j] <= eps * smax || smax == 0.0)
        .map(|j| vmat[j].clone())
        .collect()
}

type SparseMap = BTreeMap<usize, Gaussian>;

fn axpy_into(target: &mut SparseMap, coef: &Gaussian, source: &SparseMap, skip: usize) {
    for (&c, val) in source {
        if c == skip {
            continue;
        }
        let delta = coef.clone() * val.clone();
        match target.get_mut(&c) {
            Some(slot) => {
                *slot = slot.clone() - delta;
                if slot.is_exact_zero() {
                    target.remove(&c);
                }
            }
            None => {
                target.insert(c, -delta);
            }
        }
    }
}

/// Kernel basis by incremental sparse reduced row echelon form over Q(i).
/// Pivot = least column index, so the basis is deterministic.
pub(crate) fn exact_kernel(n: usize, rows: &[Vec<(usize, Gaussian)>]) -> Vec<Vec<Gaussian>> {
    let mut pivots: BTreeMap<usize, SparseMap> = BTreeMap::new();
    for row in rows {
        let mut r: SparseMap = SparseMap::new();
        for (c, v) in row {
            let slot = r.entry(*c).or_insert_with(Gaussian::zero);
            *slot = slot.clone() + v.clone();
        }
        r.retain(|_, v| !v.is_exact_zero());
        let hits: Vec<usize> = r.keys().copied().filter(|c| pivots.contains_key(c)).collect();
        for c in hits {
            let Some(coef) = r.remove(&c) else { continue };
            axpy_into(&mut r, &coef, &pivots[&c], c);
        }
        let Some((&pc, pv)) = r.iter().next() else { continue };
        let inv = pv.recip().expect("nonzero pivot");
        for v in r.values_mut() {
            *v = v.clone() * inv.clone();
        }
        for prow in pivots.values_mut() {
            if let Some(coef) = prow.remove(&pc) {
                axpy_into(prow, &coef, &r, pc);
            }
        }
        pivots.insert(pc, r);
    }
    (0..n)
        .filter(|c| !pivots.contains_key(c))
        .map(|free| {
            let mut x = vec![Gaussian::zero(); n];
            x[free] = Gaussian::one();
            for (&pc, prow) in &pivots {
                if let Some(val) = prow.get(&free) {
                    x[pc] = -val.clone();
                }
            }
            x
        })
        .collect()
}
