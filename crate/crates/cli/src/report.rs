//! Machine-readable JSON reports.

use serde_json::{json, Value};
use tanglerep_core::families::{Dim2Params, Gallery};
use tanglerep_core::kirby::{CompatReport, InvarianceCertificate};
use tanglerep_core::skein::SkeinRelation;
use tanglerep_core::{CertReport, EngineKind, LinearMap, Scalar};

/// Exact scalars as canonical strings, float scalars as `[re, im]`.
pub fn scalar_json<S: Scalar>(x: &S) -> Value {
    match S::ENGINE {
        EngineKind::Exact => Value::String(x.to_string()),
        EngineKind::Float => {
            let z = x.to_complex();
            json!([z.re, z.im])
        }
    }
}

pub fn map_json<S: Scalar>(m: &LinearMap<S>) -> Value {
    json!({
        "dim": m.dim(),
        "dom_arity": m.dom_arity(),
        "cod_arity": m.cod_arity(),
        "entries": m.coeffs().iter().map(scalar_json).collect::<Vec<_>>(),
    })
}

pub fn cert_json(report: &CertReport) -> Value {
    json!({
        "kind": "smatrix certification",
        "headline": report.headline(),
        "engine": report.engine.name(),
        "epsilon": report.epsilon,
        "overall": report.overall,
        "trivial": report.trivial,
        "sign_equivalence": report.sign_equivalence,
        "checks": report.checks.iter().map(|c| json!({
            "name": c.name,
            "residual": c.residual,
            "pass": c.pass,
        })).collect::<Vec<_>>(),
    })
}

pub fn invariance_json(cert: &InvarianceCertificate) -> Value {
    json!({
        "kind": "invariance certificate",
        "headline": cert.headline(),
        "strategy": cert.strategy.name(),
        "engine": cert.engine.name(),
        "epsilon": cert.epsilon,
        "outcome": cert.outcome.to_string(),
        "n": cert.n_used,
        "convention_flip": cert.convention_flip,
        "weakly_constrained": cert.weakly_constrained,
        "note": cert.note,
        "checks": cert.checks.iter().map(|c| json!({
            "name": c.name,
            "residual": c.residual,
            "pass": c.pass,
            "necessary": c.necessary,
            "observed": c.observed,
        })).collect::<Vec<_>>(),
    })
}

pub fn compat_json<S: Scalar>(report: &CompatReport<S>) -> Value {
    json!({
        "kind": "compatibility kernel",
        "n": report.n,
        "variant": report.variant.to_string(),
        "trivial": report.is_trivial(),
        "weakly_constrained": report.weakly_constrained,
        "levels": report.levels.iter().map(|l| json!({
            "arity": l.arity,
            "unknowns": l.unknowns,
            "kernel_dim": l.kernel_dim,
            "constraints": { "alpha": l.counts.alpha, "beta": l.counts.beta, "gamma": l.counts.gamma },
            "witness_residual": l.witness_residual,
        })).collect::<Vec<_>>(),
    })
}

pub fn skein_json<S: Scalar>(rel: &SkeinRelation<S>, residual: Option<(f64, bool)>) -> Value {
    json!({
        "kind": "skein relation",
        "strands": rel.strands,
        "braid": rel.braid,
        "offset": rel.offset,
        "coeffs": rel.coeffs.iter().map(scalar_json).collect::<Vec<_>>(),
        "relation": rel.to_string(),
        "verification": residual.map(|(r, pass)| json!({ "residual": r, "pass": pass })),
    })
}

pub struct ScanRow<S> {
    pub params: Dim2Params<S>,
    pub cert: CertReport,
    pub a0: S,
    pub b0: S,
}

pub fn scan_json<S: Scalar>(rows: &[ScanRow<S>]) -> Value {
    json!({
        "kind": "dim2 scan",
        "samples": rows.iter().map(|r| json!({
            "k": scalar_json(&r.params.k),
            "p": scalar_json(&r.params.p),
            "q": scalar_json(&r.params.q),
            "certified": r.cert.overall,
            "headline": r.cert.headline(),
            "A_0": scalar_json(&r.a0),
            "B_0": scalar_json(&r.b0),
        })).collect::<Vec<_>>(),
    })
}

pub fn gallery_json<S: Scalar>(gallery: &Gallery<S>, epsilon: f64, warning: Option<&str>) -> Value {
    json!({
        "kind": "gallery",
        "all_pass": gallery.all_pass(epsilon),
        "warning": warning,
        "rows": gallery.rows.iter().map(|r| json!({
            "presentation": r.presentation,
            "manifold": r.manifold,
            "link": r.link.to_string(),
            "value": scalar_json(&r.value),
            "expected": r.expected.as_ref().map(scalar_json),
        })).collect::<Vec<_>>(),
        "products": gallery.products.iter().map(|&(i, j, residual, pass)| json!({
            "left": i, "right": j, "residual": residual, "pass": pass,
        })).collect::<Vec<_>>(),
    })
}
