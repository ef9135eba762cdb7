//! Fenn-Rourke defect maps, the compatibility system whose trivial kernel
//! reduces Kirby invariance to finitely many checks, and the invariance
//! certificates built on them.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{curl, fr_side, full_twist, full_twist_letters, braid_word, Sign};
use crate::error::KirbyError;
use crate::linalg::{minimal_polynomial, nullspace, ConstraintSystem};
use crate::rep::{certify_smatrix, judge, SMatrix};
use crate::scalar::{EngineKind, Scalar};
use crate::tensor::{twist_map, LinearMap, TraceSide};

/// Default bound on the number of unknowns of a compatibility system.
pub const DEFAULT_SIZE_CAP: usize = 1 << 16;

/// The defect pairing runs each ring against the opposite-handed full
/// twist (blowing down a `+1` ring gives a left-handed twist).
pub const CONVENTION_FLIP: bool = true;

/// `A_n` for `Sign::Pos`, `B_n` for `Sign::Neg`: the ring of framing `±1`
/// around `n` strands minus the full twist of the opposite sign.
pub fn fr_defect<S: Scalar>(sm: &SMatrix<S>, n: usize, sign: Sign) -> Result<LinearMap<S>, KirbyError> {
    let ring = sm.evaluate(&fr_side(n, sign))?;
    let twist = sm.evaluate(&full_twist(n, sign.flip()))?;
    Ok(ring.sub(&twist)?)
}

/// `‖ρ(tw^{±1})^{⊗n} ∘ A_n − (ρ(tw^{⊗n} ∘ ring) − ρ(Δ^{∓2}))‖`, with the
/// curl sign matching the ring. The right side is computed from its own
/// words: the ring followed by a curl on each strand, and the bare braid.
pub fn c_relation_residual<S: Scalar>(sm: &SMatrix<S>, n: usize, sign: Sign) -> Result<f64, KirbyError> {
    let v = sm.dim();
    let defect = fr_defect(sm, n, sign)?;
    let tw = sm.curl_map(sign == Sign::Pos)?;
    let mut tw_n = LinearMap::identity(v, 0)?;
    for _ in 0..n {
        tw_n = tw_n.tensor(&tw)?;
    }
    let lhs = tw_n.compose(&defect)?;
    let mut ring = fr_side(n, sign);
    for j in 0..n {
        ring = ring.then(&curl(sign).embed(j, n - 1 - j))?;
    }
    let braid = braid_word(n, &full_twist_letters(n, sign.flip()))?;
    let rhs = sm.evaluate(&ring)?.sub(&sm.evaluate(&braid)?)?;
    Ok(lhs.max_abs_diff(&rhs)?)
}

/// `max_i ‖D_{n+2} ∘ b^{(i)} − b^{(i)} ∘ D_n‖` over `D ∈ {A, B}` and cap
/// positions `0 ≤ i ≤ n`: a cap under the defect slides out through it.
pub fn check_descent<S: Scalar>(sm: &SMatrix<S>, n: usize, size_cap: usize) -> Result<f64, KirbyError> {
    let v = sm.dim();
    let unknowns = v.checked_pow(2 * (n + 2) as u32).unwrap_or(usize::MAX);
    if unknowns > size_cap {
        return Err(KirbyError::SizeCap { unknowns, cap: size_cap });
    }
    let mut worst = 0.0f64;
    for sign in [Sign::Pos, Sign::Neg] {
        let big = fr_defect(sm, n + 2, sign)?;
        let small = fr_defect(sm, n, sign)?;
        for i in 0..=n {
            let cap = embedded(sm.cap(), v, i, n - i)?;
            let lhs = big.compose(&cap)?;
            let rhs = cap.compose(&small)?;
            worst = worst.max(lhs.max_abs_diff(&rhs)?);
        }
    }
    Ok(worst)
}

/// `id_left ⊗ x ⊗ id_right`.
fn embedded<S: Scalar>(x: &LinearMap<S>, v: usize, left: usize, right: usize) -> Result<LinearMap<S>, KirbyError> {
    Ok(LinearMap::identity(v, left)?.tensor(x)?.tensor(&LinearMap::identity(v, right)?)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompatVariant {
    Plain,
    Symmetric,
}

impl fmt::Display for CompatVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompatVariant::Plain => "plain",
            CompatVariant::Symmetric => "symmetric",
        })
    }
}

/// Which constraint groups to assemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Groups {
    /// Cap/cup annihilation (and symmetry of `H` in the symmetric variant).
    pub alpha: bool,
    /// Vanishing partial trace.
    pub beta: bool,
    /// Commuting with shifted crossings and curls.
    pub gamma: bool,
}

impl Groups {
    pub const ALL: Groups = Groups { alpha: true, beta: true, gamma: true };
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConstraintCounts {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

struct Builder<S> {
    sys: ConstraintSystem<S>,
    size: usize,
}

impl<S: Scalar> Builder<S> {
    fn idx(&self, row: usize, col: usize) -> usize {
        row * self.size + col
    }

    /// `E ∘ x = 0` for `x: · → V^{⊗L}`.
    fn right_compose(&mut self, x: &LinearMap<S>) -> Result<usize, KirbyError> {
        let mut count = 0;
        let columns = column_entries(x);
        for k in 0..self.size {
            for col in &columns {
                let row: Vec<_> = col.iter().map(|(m, c)| (self.idx(k, *m), c.clone())).collect();
                count += usize::from(self.sys.push(row)?);
            }
        }
        Ok(count)
    }

    /// `y ∘ E = 0` for `y: V^{⊗L} → ·`.
    fn left_compose(&mut self, y: &LinearMap<S>) -> Result<usize, KirbyError> {
        let mut count = 0;
        let rows = row_entries(y);
        for r in &rows {
            for m in 0..self.size {
                let row: Vec<_> = r.iter().map(|(k, c)| (self.idx(*k, m), c.clone())).collect();
                count += usize::from(self.sys.push(row)?);
            }
        }
        Ok(count)
    }

    /// `E ∘ x − x ∘ E = 0`.
    fn commutator(&mut self, x: &LinearMap<S>) -> Result<usize, KirbyError> {
        let mut count = 0;
        let columns = column_entries(x);
        let rows = row_entries(x);
        for k in 0..self.size {
            for j in 0..self.size {
                let mut row: Vec<(usize, S)> = columns[j].iter().map(|(m, c)| (self.idx(k, *m), c.clone())).collect();
                row.extend(rows[k].iter().map(|(m, c)| (self.idx(*m, j), -c.clone())));
                count += usize::from(self.sys.push(row)?);
            }
        }
        Ok(count)
    }

    fn partial_trace(&mut self, v: usize, side: TraceSide) -> Result<usize, KirbyError> {
        let small = self.size / v;
        let mut count = 0;
        for k in 0..small {
            for j in 0..small {
                let row: Vec<_> = (0..v)
                    .map(|r| {
                        let (a, b) = match side {
                            TraceSide::Right => (k * v + r, j * v + r),
                            TraceSide::Left => (r * small + k, r * small + j),
                        };
                        (self.idx(a, b), S::one())
                    })
                    .collect();
                count += usize::from(self.sys.push(row)?);
            }
        }
        Ok(count)
    }

    fn symmetric(&mut self) -> Result<usize, KirbyError> {
        let mut count = 0;
        for a in 0..self.size {
            for b in (a + 1)..self.size {
                count += usize::from(self.sys.push([(self.idx(a, b), S::one()), (self.idx(b, a), -S::one())])?);
            }
        }
        Ok(count)
    }
}

fn column_entries<S: Scalar>(x: &LinearMap<S>) -> Vec<Vec<(usize, S)>> {
    (0..x.cols())
        .map(|j| (0..x.rows()).filter(|&m| !x.get(m, j).is_exact_zero()).map(|m| (m, x.get(m, j).clone())).collect())
        .collect()
}

fn row_entries<S: Scalar>(x: &LinearMap<S>) -> Vec<Vec<(usize, S)>> {
    (0..x.rows())
        .map(|k| (0..x.cols()).filter(|&m| !x.get(k, m).is_exact_zero()).map(|m| (m, x.get(k, m).clone())).collect())
        .collect()
}

/// Constraints on an endomorphism of `V^{⊗(m+2)}` with index ranges taken
/// with parameter `m`:
/// plain: `E∘b^{(i,m−i)} = 0`, `d^{(i,m−i)}∘E = 0` (`0<i<m`), `r(E) = 0`,
/// `[E, S^{(i,m−i)}] = 0` (`0<i<m`), `[E, tw^{(i,m+1−i)}] = 0` (`0<i<m+1`);
/// symmetric: `E∘b^{(i,m−i)} = 0`, `E` symmetric, `l(E) = 0`, same commutators.
pub fn compat_system<S: Scalar>(
    sm: &SMatrix<S>,
    m: usize,
    variant: CompatVariant,
    groups: Groups,
) -> Result<(ConstraintSystem<S>, ConstraintCounts), KirbyError> {
    let v = sm.dim();
    let level = m + 2;
    let sys = ConstraintSystem::new(v, level, level)?;
    let size = crate::tensor::checked_pow(v, level)?;
    let mut b = Builder { sys, size };
    let mut counts = ConstraintCounts::default();
    if groups.alpha {
        for i in 1..m {
            counts.alpha += b.right_compose(&embedded(sm.cap(), v, i, m - i)?)?;
            if variant == CompatVariant::Plain {
                counts.alpha += b.left_compose(&embedded(sm.cup(), v, i, m - i)?)?;
            }
        }
        if variant == CompatVariant::Symmetric {
            counts.alpha += b.symmetric()?;
        }
    }
    if groups.beta {
        let side = match variant {
            CompatVariant::Plain => TraceSide::Right,
            CompatVariant::Symmetric => TraceSide::Left,
        };
        counts.beta += b.partial_trace(v, side)?;
    }
    if groups.gamma {
        for i in 1..m {
            counts.gamma += b.commutator(&embedded(sm.s(), v, i, m - i)?)?;
        }
        let tw = sm.curl_map(true)?;
        for i in 1..(m + 1) {
            counts.gamma += b.commutator(&embedded(&tw, v, i, m + 1 - i)?)?;
        }
    }
    Ok((b.sys, counts))
}

#[derive(Clone, Debug)]
pub struct CompatLevel<S> {
    /// Arity of the unknown endomorphism.
    pub arity: usize,
    pub unknowns: usize,
    pub kernel_dim: usize,
    pub basis: Vec<LinearMap<S>>,
    pub counts: ConstraintCounts,
    /// Largest constraint value on the first basis element.
    pub witness_residual: Option<f64>,
}

impl<S> CompatLevel<S> {
    pub fn witness(&self) -> Option<&LinearMap<S>> {
        self.basis.first()
    }
}

#[derive(Clone, Debug)]
pub struct CompatReport<S> {
    pub n: usize,
    pub variant: CompatVariant,
    pub levels: Vec<CompatLevel<S>>,
    /// `n ≤ 1` leaves the cap/cup and crossing ranges empty.
    pub weakly_constrained: bool,
}

impl<S> CompatReport<S> {
    /// No nonzero solution at any level.
    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.kernel_dim == 0)
    }
}

impl<S: Scalar> fmt::Display for CompatReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "compatibility kernel, n={}, variant {}", self.n, self.variant)?;
        for l in &self.levels {
            writeln!(
                f,
                "  level V^{}: {} unknowns, constraints alpha={} beta={} gamma={}, kernel dim {}",
                l.arity, l.unknowns, l.counts.alpha, l.counts.beta, l.counts.gamma, l.kernel_dim
            )?;
            if let Some(r) = l.witness_residual {
                writeln!(f, "    witness residual {r:e}")?;
            }
        }
        if self.weakly_constrained {
            writeln!(f, "  note: n <= 1 leaves most constraint ranges empty")?;
        }
        Ok(())
    }
}

pub fn compat_kernel<S: Scalar>(
    sm: &SMatrix<S>,
    n: usize,
    variant: CompatVariant,
    size_cap: usize,
) -> Result<CompatReport<S>, KirbyError> {
    let params: &[usize] = match variant {
        CompatVariant::Plain => &[n],
        CompatVariant::Symmetric => &[n, n + 1],
    };
    let v = sm.dim();
    for &m in params {
        let unknowns = v.checked_pow(2 * (m + 2) as u32).unwrap_or(usize::MAX);
        if unknowns > size_cap {
            return Err(KirbyError::SizeCap { unknowns, cap: size_cap });
        }
    }
    let mut levels = Vec::new();
    for &m in params {
        let (sys, counts) = compat_system(sm, m, variant, Groups::ALL)?;
        let kernel = nullspace(&sys, sm.epsilon())?;
        let witness_residual = kernel.basis.first().map(|w| sys.residual(w));
        levels.push(CompatLevel {
            arity: m + 2,
            unknowns: sys.unknowns(),
            kernel_dim: kernel.dimension,
            basis: kernel.basis,
            counts,
            witness_residual,
        });
    }
    Ok(CompatReport { n, variant, levels, weakly_constrained: n <= 1 })
}

/// Minimal polynomial of `S` has full degree `v²`.
pub fn is_irreducible<S: Scalar>(sm: &SMatrix<S>) -> Result<bool, KirbyError> {
    let p = minimal_polynomial(sm.s(), sm.epsilon())?;
    Ok(p.degree() == Some(sm.s().rows()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Defects `B_1, B_2, A_n, A_{n+1}` vanish and the plain system has trivial kernel.
    Zentral,
    /// As `Zentral`, with `[S,T] = 0` and the symmetric system at two levels.
    Symmetric,
    /// Trace conditions, `A_1 = B_1 = 0`, and a nonderogatory `S`.
    Irreducible,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Zentral => "zentral",
            Strategy::Symmetric => "sym",
            Strategy::Irreducible => "irreducible",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KirbyCheck {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
    /// Observed value when the check compares a scalar against a target.
    pub observed: Option<String>,
    /// A failure here proves the evaluation is not a Kirby invariant.
    pub necessary: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceCertificate {
    pub strategy: Strategy,
    pub engine: EngineKind,
    pub epsilon: f64,
    pub checks: Vec<KirbyCheck>,
    pub outcome: Outcome,
    pub n_used: Option<usize>,
    pub convention_flip: bool,
    pub weakly_constrained: bool,
    pub note: Option<String>,
}

impl InvarianceCertificate {
    /// First failing necessary check, else the first failing check.
    pub fn failed_at(&self) -> Option<&KirbyCheck> {
        self.checks.iter().find(|c| !c.pass && c.necessary).or_else(|| self.checks.iter().find(|c| !c.pass))
    }

    pub fn headline(&self) -> String {
        match (self.outcome, self.failed_at()) {
            (Outcome::Pass, _) => match self.n_used {
                Some(n) => format!("PASS ({} strategy, n={n})", self.strategy),
                None => format!("PASS ({} strategy)", self.strategy),
            },
            (o, Some(c)) => match &c.observed {
                Some(obs) => format!("{o} at {} (got {obs})", c.name),
                None => format!("{o} at {} (residual {:e})", c.name, c.residual),
            },
            (o, None) => match &self.note {
                Some(note) => format!("{o} ({note})"),
                None => format!("{o}"),
            },
        }
    }
}

impl fmt::Display for InvarianceCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.headline())?;
        writeln!(f, "strategy: {}  engine: {}  epsilon: {:e}", self.strategy, self.engine, self.epsilon)?;
        for c in &self.checks {
            write!(f, "  [{}] {:<32} residual {:e}", if c.pass { "ok" } else { "FAIL" }, c.name, c.residual)?;
            match &c.observed {
                Some(o) => writeln!(f, "  value {o}")?,
                None => writeln!(f)?,
            }
        }
        if let Some(n) = self.n_used {
            writeln!(f, "n used: {n}")?;
        }
        writeln!(f, "defect pairing flipped: {}", self.convention_flip)?;
        if self.weakly_constrained {
            writeln!(f, "note: certificate rests on a weakly constrained level (n <= 1)")?;
        }
        if let Some(note) = &self.note {
            writeln!(f, "note: {note}")?;
        }
        Ok(())
    }
}

struct Run<'a, S> {
    sm: &'a SMatrix<S>,
    checks: Vec<KirbyCheck>,
}

impl<S: Scalar> Run<'_, S> {
    fn record(&mut self, name: String, diff: &LinearMap<S>, observed: Option<String>, necessary: bool) -> bool {
        let (residual, pass) = judge(diff, self.sm.epsilon());
        self.checks.push(KirbyCheck { name, residual, pass, observed, necessary });
        pass
    }

    fn trace_is_one(&mut self, positive: bool) -> Result<bool, KirbyError> {
        let x = self.sm.crossing(positive);
        let tr = x.trace()?;
        let diff = LinearMap::scalar(self.sm.dim(), tr.clone() - S::one())?;
        let name = if positive { "tr(S)=1" } else { "tr(S^-1)=1" };
        Ok(self.record(name.into(), &diff, Some(format!("{tr}")), true))
    }

    fn defect_zero(&mut self, n: usize, sign: Sign) -> Result<bool, KirbyError> {
        let d = fr_defect(self.sm, n, sign)?;
        let letter = if sign == Sign::Pos { 'A' } else { 'B' };
        Ok(self.record(format!("{letter}_{n}=0"), &d, None, true))
    }

    fn certification(&mut self) -> Result<bool, KirbyError> {
        let (_, report) = certify_smatrix(self.sm.s().clone(), self.sm.epsilon())?;
        let residual = report.checks.iter().filter(|c| !c.pass).map(|c| c.residual).fold(0.0, f64::max);
        let observed = report.first_failure().map(|c| format!("{} fails", c.name));
        self.checks.push(KirbyCheck { name: "S-matrix conditions".into(), residual, pass: report.overall, observed, necessary: true });
        Ok(report.overall)
    }

    fn commutes_with_flip(&mut self) -> Result<bool, KirbyError> {
        let t = twist_map(self.sm.dim(), 2)?;
        let s = self.sm.s();
        let diff = s.compose(&t)?.sub(&t.compose(s)?)?;
        Ok(self.record("[S,T]=0".into(), &diff, None, false))
    }

    fn push_flag(&mut self, name: String, pass: bool, observed: Option<String>) {
        self.checks.push(KirbyCheck { name, residual: if pass { 0.0 } else { 1.0 }, pass, observed, necessary: false });
    }
}

/// Certifies that the evaluation is invariant under Kirby moves.
///
/// Any nonzero defect, trace condition or failed S-matrix condition is a
/// definite failure. A hypothesis that is only sufficient (trivial kernel,
/// nonderogatory `S`, `[S,T] = 0`) failing, or the size cap being reached,
/// gives `Inconclusive`.
pub fn certify_invariance<S: Scalar>(
    sm: &SMatrix<S>,
    strategy: Strategy,
    n_max: usize,
    size_cap: usize,
) -> Result<InvarianceCertificate, KirbyError> {
    let mut run = Run { sm, checks: Vec::new() };
    let mut n_used = None;
    let mut note = None;

    let mut necessary_ok = run.trace_is_one(true)? & run.trace_is_one(false)?;
    necessary_ok &= run.certification()?;
    let mut hypotheses_ok = true;

    match strategy {
        Strategy::Irreducible => {
            necessary_ok &= run.defect_zero(1, Sign::Pos)? & run.defect_zero(1, Sign::Neg)?;
            let irreducible = is_irreducible(sm)?;
            let degree = minimal_polynomial(sm.s(), sm.epsilon())?.degree().unwrap_or(0);
            run.push_flag("irreducible S".into(), irreducible, Some(format!("minimal polynomial degree {degree}")));
            hypotheses_ok &= irreducible;
        }
        Strategy::Zentral | Strategy::Symmetric => {
            necessary_ok &= run.defect_zero(1, Sign::Neg)? & run.defect_zero(2, Sign::Neg)?;
            if strategy == Strategy::Symmetric {
                hypotheses_ok &= run.commutes_with_flip()?;
            }
            let variant = match strategy {
                Strategy::Symmetric => CompatVariant::Symmetric,
                _ => CompatVariant::Plain,
            };
            let mut found = false;
            let mut last_defect = 0;
            if necessary_ok && hypotheses_ok {
                for n in 0..=n_max {
                    for k in (last_defect + 1).max(1)..=(n + 1) {
                        necessary_ok &= run.defect_zero(k, Sign::Pos)?;
                        last_defect = k;
                    }
                    if !necessary_ok {
                        break;
                    }
                    match compat_kernel(sm, n, variant, size_cap) {
                        Ok(report) => {
                            let dims: Vec<String> = report.levels.iter().map(|l| format!("{}", l.kernel_dim)).collect();
                            let trivial = report.is_trivial();
                            run.push_flag(format!("trivial compatibility kernel, n={n}"), trivial, Some(format!("kernel dim {}", dims.join("/"))));
                            if trivial {
                                n_used = Some(n);
                                found = true;
                                break;
                            }
                        }
                        Err(KirbyError::SizeCap { unknowns, cap }) => {
                            note = Some(format!("size cap {cap} reached at n={n} ({unknowns} unknowns)"));
                            break;
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            hypotheses_ok &= found;
            if !found && note.is_none() && necessary_ok {
                note = Some(format!("no n <= {n_max} with trivial compatibility kernel"));
            }
        }
    }

    let outcome = if !necessary_ok {
        Outcome::Fail
    } else if hypotheses_ok {
        Outcome::Pass
    } else {
        Outcome::Inconclusive
    };
    Ok(InvarianceCertificate {
        strategy,
        engine: S::ENGINE,
        epsilon: sm.epsilon(),
        checks: run.checks,
        outcome,
        n_used,
        convention_flip: CONVENTION_FLIP,
        weakly_constrained: n_used.is_some_and(|n| n <= 1),
        note,
    })
}
