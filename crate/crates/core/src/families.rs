//! The two-dimensional weighted-swap family, YBE-preserving transforms,
//! and a small table of link values with known closed forms.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::FramedLink;
use crate::error::{FamilyError, RepError};
use crate::rep::SMatrix;
use crate::scalar::Scalar;
use crate::tensor::{twist_map, LinearMap};

#[derive(Clone, Debug, PartialEq)]
pub struct Dim2Params<S> {
    pub k: S,
    pub p: S,
    pub q: S,
}

impl<S: Scalar> Dim2Params<S> {
    pub fn new(k: S, p: S, q: S) -> Result<Self, FamilyError> {
        for (name, x) in [("k", &k), ("p", &p), ("q", &q)] {
            if x.is_exact_zero() {
                return Err(FamilyError::ZeroParameter(name));
            }
        }
        Ok(Dim2Params { k, p, q })
    }

    /// Member with `q = 1/(k²p)`.
    pub fn on_variety(k: S, p: S) -> Result<Self, FamilyError> {
        if k.is_exact_zero() || p.is_exact_zero() {
            return Err(FamilyError::ZeroParameter(if k.is_exact_zero() { "k" } else { "p" }));
        }
        let q = S::one() / (k.clone() * k.clone() * p.clone());
        Self::new(k, p, q)
    }

    /// `k²pq − 1`.
    pub fn constraint_defect(&self) -> S {
        self.k.clone() * self.k.clone() * self.p.clone() * self.q.clone() - S::one()
    }
}

/// `S(e_i ⊗ e_j) = c_ij e_j ⊗ e_i` with `c_11 = c_22 = k`, `c_12 = p`, `c_21 = q`.
/// Rows in basis order 11, 12, 21, 22: `[k 0 0 0; 0 0 q 0; 0 p 0 0; 0 0 0 k]`.
pub fn dim2_family<S: Scalar>(params: &Dim2Params<S>) -> LinearMap<S> {
    let Dim2Params { k, p, q } = params;
    LinearMap::from_fn(2, 2, 2, |r, c| match (r, c) {
        (0, 0) | (3, 3) => k.clone(),
        (1, 2) => q.clone(),
        (2, 1) => p.clone(),
        _ => S::zero(),
    })
    .expect("4x4")
}

/// Deterministic rational members with `k²pq = 1`.
pub fn variety_samples<S: Scalar>(count: usize) -> Vec<Dim2Params<S>> {
    const KS: [(i64, i64); 7] = [(2, 1), (3, 1), (1, 2), (-2, 1), (3, 2), (-1, 3), (5, 4)];
    const PS: [(i64, i64); 6] = [(1, 1), (2, 1), (-1, 3), (5, 4), (-3, 1), (7, 2)];
    let mut out = Vec::with_capacity(count);
    'outer: for (kn, kd) in KS {
        for (pn, pd) in PS {
            if out.len() == count {
                break 'outer;
            }
            let params = Dim2Params::on_variety(S::from_ratio(kn, kd), S::from_ratio(pn, pd)).expect("nonzero");
            out.push(params);
        }
    }
    out
}

/// Deterministic rational members with `k²pq ≠ 1`.
pub fn off_variety_samples<S: Scalar>(count: usize) -> Vec<Dim2Params<S>> {
    (0..count as i64)
        .map(|i| {
            let k = S::from_ratio(i % 3 + 1, 1);
            let p = S::from_ratio(1, i % 4 + 1);
            // k²pq = i + 2
            let q = S::from_i64(i + 2) / (k.clone() * k.clone() * p.clone());
            Dim2Params::new(k, p, q).expect("nonzero")
        })
        .collect()
}

/// The four members that are S-matrices: all weights `±1` with `pq = 1`.
pub fn sign_points<S: Scalar>() -> Vec<Dim2Params<S>> {
    [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .into_iter()
        .map(|(k, p)| Dim2Params::new(S::from_i64(k), S::from_i64(p), S::from_i64(p)).expect("nonzero"))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Transform<S> {
    Scale(S),
    Inverse,
    Transpose,
    /// `T ∘ S ∘ T`.
    FlipConjugate,
    /// `(Q ⊗ Q) ∘ S ∘ (Q⁻¹ ⊗ Q⁻¹)`.
    BasisChange(LinearMap<S>),
}

impl<S> Transform<S> {
    pub fn name(&self) -> &'static str {
        match self {
            Transform::Scale(_) => "scale",
            Transform::Inverse => "inverse",
            Transform::Transpose => "transpose",
            Transform::FlipConjugate => "flip conjugate",
            Transform::BasisChange(_) => "basis change",
        }
    }
}

pub fn transform_smatrix<S: Scalar>(
    s: &LinearMap<S>,
    transform: &Transform<S>,
    epsilon: f64,
) -> Result<LinearMap<S>, FamilyError> {
    if s.dom_arity() != 2 || s.cod_arity() != 2 {
        return Err(RepError::NotTwoByTwo.into());
    }
    let v = s.dim();
    Ok(match transform {
        Transform::Scale(lambda) => {
            if lambda.is_exact_zero() {
                return Err(FamilyError::ZeroScale);
            }
            s.scale(lambda)
        }
        Transform::Inverse => s.inverse(epsilon).ok_or(RepError::Singular)?,
        Transform::Transpose => s.transpose(),
        Transform::FlipConjugate => {
            let t = twist_map(v, 2)?;
            t.compose(s)?.compose(&t)?
        }
        Transform::BasisChange(q) => {
            if q.dim() != v || q.dom_arity() != 1 || q.cod_arity() != 1 {
                return Err(FamilyError::BadBasisChange);
            }
            let q_inv = q.inverse(epsilon).ok_or(FamilyError::SingularBasisChange)?;
            q.tensor(q)?.compose(s)?.compose(&q_inv.tensor(&q_inv)?)?
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GalleryRow<S> {
    pub presentation: String,
    pub manifold: Option<String>,
    pub link: FramedLink,
    pub value: S,
    /// Closed form where one is known: 1 for the empty link, `v^m` for the
    /// 0-framed trivial link with `m` components.
    pub expected: Option<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gallery<S> {
    pub rows: Vec<GalleryRow<S>>,
    /// `(i, j, residual, pass)` for `value(L_i ⊔ L_j)` against `value(L_i)·value(L_j)`.
    pub products: Vec<(usize, usize, f64, bool)>,
}

impl<S: Scalar> Gallery<S> {
    pub fn all_pass(&self, epsilon: f64) -> bool {
        let expected_ok = self
            .rows
            .iter()
            .all(|r| r.expected.as_ref().is_none_or(|e| scalar_close(&r.value, e, epsilon)));
        expected_ok && self.products.iter().all(|p| p.3)
    }
}

fn scalar_close<S: Scalar>(a: &S, b: &S, epsilon: f64) -> bool {
    let d = a.clone() - b.clone();
    if S::ENGINE == crate::scalar::EngineKind::Exact { d.is_exact_zero() } else { d.magnitude() <= epsilon }
}

pub fn manifold_gallery<S: Scalar>(sm: &SMatrix<S>, n_max: usize) -> Result<Gallery<S>, RepError> {
    let v = S::from_i64(sm.dim() as i64);
    let mut base: Vec<(String, Option<String>, FramedLink, Option<S>)> = Vec::new();
    base.push(("empty link".into(), Some("S^3".into()), FramedLink::empty(), Some(S::one())));
    let mut power = S::one();
    for m in 1..=n_max {
        power = power * v.clone();
        let manifold = if m == 1 { "S^1 x S^2".into() } else { format!("#{m} S^1 x S^2") };
        base.push((format!("trivial link, m={m}, framings 0"), Some(manifold), FramedLink::trivial(m), Some(power.clone())));
    }
    base.push(("unknot, framing +1".into(), Some("S^3".into()), FramedLink::unknot(1), None));
    base.push(("unknot, framing -1".into(), Some("S^3".into()), FramedLink::unknot(-1), None));

    let mut rows = Vec::with_capacity(base.len());
    for (presentation, manifold, link, expected) in base {
        let value = sm.link_invariant(&link)?;
        rows.push(GalleryRow { presentation, manifold, link, value, expected });
    }
    let mut products = Vec::new();
    for i in 0..rows.len() {
        for j in i..rows.len() {
            let union = rows[i].link.disjoint_union(&rows[j].link);
            let value = sm.link_invariant(&union)?;
            let product = rows[i].value.clone() * rows[j].value.clone();
            let residual = (value.clone() - product.clone()).magnitude();
            products.push((i, j, residual, scalar_close(&value, &product, sm.epsilon())));
        }
    }
    Ok(Gallery { rows, products })
}

/// `v = 1`, `S = [1]`.
pub fn unit_smatrix<S: Scalar>() -> LinearMap<S> {
    LinearMap::new(1, 2, 2, vec![S::one()]).expect("1x1")
}
