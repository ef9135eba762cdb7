//! Evaluation of tangle words under an `S`, and certification of the
//! conditions on `S` that make the evaluation an isotopy invariant.

use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{FramedLink, Generator, TangleWord};
use crate::error::RepError;
use crate::scalar::{EngineKind, Scalar};
use crate::tensor::{twist_map, LinearMap, TraceSide};

/// Standard cap `b(1) = Σ e_i ⊗ e_i` and cup `d(e_i ⊗ e_j) = δ_ij`.
pub fn build_cup_cap<S: Scalar>(v: usize) -> Result<(LinearMap<S>, LinearMap<S>), RepError> {
    let b = LinearMap::from_fn(v, 0, 2, |r, _| if r / v == r % v { S::one() } else { S::zero() })?;
    let d = b.transpose();
    Ok((b, d))
}

/// Max-entry size of `diff` and whether it counts as zero: exactly zero in
/// the exact engine, at most `eps` in the float engine.
pub fn judge<S: Scalar>(diff: &LinearMap<S>, eps: f64) -> (f64, bool) {
    let residual = diff.max_abs();
    let pass = match S::ENGINE {
        EngineKind::Exact => diff.coeffs().iter().all(Scalar::is_exact_zero),
        EngineKind::Float => residual <= eps,
    };
    (residual, pass)
}

/// `(S⊗id)(id⊗S)(S⊗id) − (id⊗S)(S⊗id)(id⊗S)`.
pub fn ybe_defect<S: Scalar>(s: &LinearMap<S>) -> Result<LinearMap<S>, RepError> {
    let v = s.dim();
    let id = LinearMap::identity(v, 1)?;
    let s1 = s.tensor(&id)?;
    let s2 = id.tensor(s)?;
    let lhs = s1.compose(&s2)?.compose(&s1)?;
    let rhs = s2.compose(&s1)?.compose(&s2)?;
    Ok(lhs.sub(&rhs)?)
}

/// `X^{cd}_{ab} − X^{ba}_{dc}`.
pub fn index_rotation_defect<S: Scalar>(x: &LinearMap<S>) -> LinearMap<S> {
    let v = x.dim();
    LinearMap::from_fn(v, 2, 2, |row, col| {
        let (c, d) = (row / v, row % v);
        let (a, b) = (col / v, col % v);
        x.get(row, col).clone() - x.get(b * v + a, d * v + c).clone()
    })
    .expect("same shape as x")
}

/// `S^{pm}_{kl} − (S⁻¹)^{kp}_{lm}`, the coefficient form of sliding a
/// crossing past a cap.
pub fn mixed_rotation_defect<S: Scalar>(s: &LinearMap<S>, s_inv: &LinearMap<S>) -> LinearMap<S> {
    let v = s.dim();
    LinearMap::from_fn(v, 2, 2, |row, col| {
        let (p, m) = (row / v, row % v);
        let (k, l) = (col / v, col % v);
        s.get(row, col).clone() - s_inv.get(k * v + p, l * v + m).clone()
    })
    .expect("same shape as s")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub pass: bool,
}

pub const CHECK_INVERTIBLE: &str = "invertibility";
pub const CHECK_YBE: &str = "Yang-Baxter equation";
pub const CHECK_CUP_CAP: &str = "cup/cap structure";
pub const CHECK_SLIDE_POS: &str = "sliding (+)";
pub const CHECK_SLIDE_NEG: &str = "sliding (-)";
pub const CHECK_TRACES: &str = "partial traces r(S)=l(S)";
pub const CHECK_INDEX_ROTATION: &str = "index rotation";
pub const CHECK_T_SYMMETRY: &str = "T-symmetry";

/// Outcome of [`certify_smatrix`]. Index rotation and T-symmetry are
/// reported but do not enter `overall`.
#[derive(Clone, Debug, PartialEq)]
pub struct CertReport {
    pub engine: EngineKind,
    pub epsilon: f64,
    pub checks: Vec<Check>,
    pub overall: bool,
    /// `S² = 1`.
    pub trivial: bool,
    /// One sign of sliding plus index rotation gives the other sign.
    pub sign_equivalence: bool,
}

impl CertReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.check(name).is_some_and(|c| c.pass)
    }

    /// First failing check that `overall` depends on.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks
            .iter()
            .find(|c| !c.pass && c.name != CHECK_INDEX_ROTATION && c.name != CHECK_T_SYMMETRY)
    }

    pub fn headline(&self) -> alloc::string::String {
        use alloc::format;
        match (self.overall, self.first_failure()) {
            (true, _) if self.trivial => "PASS (trivial S-matrix, S²=𝟙)".into(),
            (true, _) => "PASS".into(),
            (false, Some(c)) => format!("FAIL at {} (residual {:e})", c.name, c.residual),
            (false, None) => "FAIL".into(),
        }
    }
}

impl fmt::Display for CertReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.headline())?;
        writeln!(f, "engine: {}  epsilon: {:e}", self.engine, self.epsilon)?;
        for c in &self.checks {
            writeln!(f, "  [{}] {:<28} residual {:e}", if c.pass { "ok" } else { "FAIL" }, c.name, c.residual)?;
        }
        Ok(())
    }
}

/// An invertible `S ∈ End(V⊗V)` with its inverse and the standard cup/cap.
#[derive(Clone, Debug, PartialEq)]
pub struct SMatrix<S> {
    s: LinearMap<S>,
    s_inv: LinearMap<S>,
    cap: LinearMap<S>,
    cup: LinearMap<S>,
    epsilon: f64,
    certified: bool,
}

impl<S: Scalar> SMatrix<S> {
    /// Builds without checking the S-matrix conditions. Evaluations are then
    /// diagram-dependent values only.
    pub fn unchecked(s: LinearMap<S>, epsilon: f64) -> Result<Self, RepError> {
        if s.dom_arity() != 2 || s.cod_arity() != 2 {
            return Err(RepError::NotTwoByTwo);
        }
        let epsilon = effective_epsilon::<S>(epsilon);
        let s_inv = s.inverse(epsilon).ok_or(RepError::Singular)?;
        let (cap, cup) = build_cup_cap(s.dim())?;
        Ok(SMatrix { s, s_inv, cap, cup, epsilon, certified: false })
    }

    /// Certifies and returns the matrix only if every condition holds.
    pub fn certify(s: LinearMap<S>, epsilon: f64) -> Result<(Option<Self>, CertReport), RepError> {
        certify_smatrix(s, epsilon)
    }

    pub fn dim(&self) -> usize {
        self.s.dim()
    }

    pub fn s(&self) -> &LinearMap<S> {
        &self.s
    }

    pub fn s_inv(&self) -> &LinearMap<S> {
        &self.s_inv
    }

    /// `b: 𝟏 → V⊗V`.
    pub fn cap(&self) -> &LinearMap<S> {
        &self.cap
    }

    /// `d: V⊗V → 𝟏`.
    pub fn cup(&self) -> &LinearMap<S> {
        &self.cup
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn engine(&self) -> EngineKind {
        S::ENGINE
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// `S` for `+1`, `S⁻¹` for `-1`.
    pub fn crossing(&self, positive: bool) -> &LinearMap<S> {
        if positive { &self.s } else { &self.s_inv }
    }

    /// The curl endomorphism `tw^{±1} = r(S^{±1})`.
    pub fn curl_map(&self, positive: bool) -> Result<LinearMap<S>, RepError> {
        Ok(self.crossing(positive).partial_trace(TraceSide::Right)?)
    }

    pub fn generator_map(&self, gen: Generator) -> Result<LinearMap<S>, RepError> {
        Ok(match gen {
            Generator::Id => LinearMap::identity(self.dim(), 1)?,
            Generator::XPos => self.s.clone(),
            Generator::XNeg => self.s_inv.clone(),
            Generator::Cap => self.cap.clone(),
            Generator::Cup => self.cup.clone(),
        })
    }

    /// `ρ(word)`, slices composed bottom to top.
    pub fn evaluate(&self, word: &TangleWord) -> Result<LinearMap<S>, RepError> {
        let mut acc = LinearMap::identity(self.dim(), word.dom())?;
        for slice in word.slices() {
            let mut pos = 0;
            for &g in slice.generators() {
                let local = match g {
                    Generator::Id => {
                        pos += 1;
                        continue;
                    }
                    Generator::XPos => &self.s,
                    Generator::XNeg => &self.s_inv,
                    Generator::Cap => &self.cap,
                    Generator::Cup => &self.cup,
                };
                acc = acc.apply_local(pos, local)?;
                pos += g.outputs();
            }
        }
        Ok(acc)
    }

    /// Scalar value of a closed word.
    pub fn evaluate_closed(&self, word: &TangleWord) -> Result<S, RepError> {
        if !word.is_closed() {
            return Err(crate::error::DiagramError::NotClosed { dom: word.dom(), cod: word.cod() }.into());
        }
        Ok(self.evaluate(word)?.as_scalar().cloned().expect("closed word evaluates to a scalar"))
    }

    pub fn link_invariant(&self, link: &FramedLink) -> Result<S, RepError> {
        self.evaluate_closed(&link.to_tangle_word())
    }

    /// `‖(T_m ∘ ρ(F) ∘ T_n)⁺ − ρ(s(F))‖` for `F: n → m`.
    pub fn rotation_transpose_residual(&self, word: &TangleWord) -> Result<f64, RepError> {
        let v = self.dim();
        let rho = self.evaluate(word)?;
        let lhs = twist_map(v, word.cod())?.compose(&rho)?.compose(&twist_map(v, word.dom())?)?.transpose();
        let rhs = self.evaluate(&word.rotate_pi())?;
        Ok(lhs.max_abs_diff(&rhs)?)
    }
}

fn effective_epsilon<S: Scalar>(epsilon: f64) -> f64 {
    match S::ENGINE {
        EngineKind::Exact => 0.0,
        EngineKind::Float => epsilon,
    }
}

/// Sliding a crossing of sign `±` past a cap:
/// `(S^{±1} ⊗ id)(id ⊗ b) − (id ⊗ S^{∓1})(b ⊗ id)`.
pub fn sliding_defect<S: Scalar>(
    s: &LinearMap<S>,
    s_inv: &LinearMap<S>,
    cap: &LinearMap<S>,
    positive: bool,
) -> Result<LinearMap<S>, RepError> {
    let (this, other) = if positive { (s, s_inv) } else { (s_inv, s) };
    let id = LinearMap::identity(s.dim(), 1)?;
    let lhs = this.tensor(&id)?.compose(&id.tensor(cap)?)?;
    let rhs = id.tensor(other)?.compose(&cap.tensor(&id)?)?;
    Ok(lhs.sub(&rhs)?)
}

/// Runs every check on a candidate crossing matrix. A singular candidate
/// yields a failed report, not an error.
pub fn certify_smatrix<S: Scalar>(
    candidate: LinearMap<S>,
    epsilon: f64,
) -> Result<(Option<SMatrix<S>>, CertReport), RepError> {
    if candidate.dom_arity() != 2 || candidate.cod_arity() != 2 {
        return Err(RepError::NotTwoByTwo);
    }
    let epsilon = effective_epsilon::<S>(epsilon);
    let mut checks = Vec::new();
    let mut sm = match SMatrix::unchecked(candidate, epsilon) {
        Ok(sm) => sm,
        Err(RepError::Singular) => {
            checks.push(Check { name: CHECK_INVERTIBLE, residual: f64::INFINITY, pass: false });
            let report = CertReport {
                engine: S::ENGINE,
                epsilon,
                checks,
                overall: false,
                trivial: false,
                sign_equivalence: true,
            };
            return Ok((None, report));
        }
        Err(e) => return Err(e),
    };
    let v = sm.dim();
    let id2 = LinearMap::identity(v, 2)?;
    let mut push = |name, diffs: &[&LinearMap<S>]| {
        let mut residual = 0.0f64;
        let mut pass = true;
        for diff in diffs {
            let (r, p) = judge(diff, epsilon);
            residual = residual.max(r);
            pass &= p;
        }
        checks.push(Check { name, residual, pass });
        pass
    };

    let inv_defect = sm.s.compose(&sm.s_inv)?.sub(&id2)?;
    let invertible = push(CHECK_INVERTIBLE, &[&inv_defect]);
    let ybe = push(CHECK_YBE, &[&ybe_defect(&sm.s)?]);

    let id1 = LinearMap::identity(v, 1)?;
    let zig = id1.tensor(&sm.cup)?.compose(&sm.cap.tensor(&id1)?)?.sub(&id1)?;
    let zag = sm.cup.tensor(&id1)?.compose(&id1.tensor(&sm.cap)?)?.sub(&id1)?;
    let sym = sm.cup.sub(&sm.cup.compose(&twist_map(v, 2)?)?)?;
    let cup_cap = push(CHECK_CUP_CAP, &[&zig, &zag, &sym]);

    let slide_pos = push(CHECK_SLIDE_POS, &[&sliding_defect(&sm.s, &sm.s_inv, &sm.cap, true)?]);
    let slide_neg = push(CHECK_SLIDE_NEG, &[&sliding_defect(&sm.s, &sm.s_inv, &sm.cap, false)?]);
    let traces = sm.s.partial_trace(TraceSide::Right)?.sub(&sm.s.partial_trace(TraceSide::Left)?)?;
    let traces = push(CHECK_TRACES, &[&traces]);
    let rotation = push(CHECK_INDEX_ROTATION, &[&index_rotation_defect(&sm.s), &index_rotation_defect(&sm.s_inv)]);
    let ts = twist_map(v, 2)?.compose(&sm.s)?;
    push(CHECK_T_SYMMETRY, &[&ts.sub(&ts.transpose())?]);

    let trivial = judge(&sm.s.compose(&sm.s)?.sub(&id2)?, epsilon).1;
    let sign_equivalence = !(rotation && (slide_pos != slide_neg));
    let overall = invertible && ybe && cup_cap && slide_pos && slide_neg && traces;
    sm.certified = overall;
    let report = CertReport { engine: S::ENGINE, epsilon, checks, overall, trivial, sign_equivalence };
    Ok((overall.then_some(sm), report))
}

/// The flip `T` on `V⊗V`, the trivial S-matrix.
pub fn flip<S: Scalar>(v: usize) -> Result<LinearMap<S>, RepError> {
    Ok(twist_map(v, 2)?)
}
