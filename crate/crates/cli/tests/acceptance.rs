//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Tolerances are pinned: exact-engine checks require every coefficient to
//! be exactly zero, float-engine checks allow a max-abs residual of 1e-9.

use std::fs;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tanglerep::formats::{
    parse_link, parse_sequence, parse_tangle, read_smatrix, write_link, write_sequence, write_smatrix, write_tangle,
    MatrixData, SMatrixFile, SequenceSpec,
};
use tanglerep_core::diagram::{
    braid_word, curl, nested_caps, nested_cups, FramedLink, Generator, Sign, Slice, TangleWord,
};
use tanglerep_core::families::{
    dim2_family, off_variety_samples, sign_points, transform_smatrix, unit_smatrix, variety_samples, Dim2Params,
    Transform,
};
use tanglerep_core::kirby::{check_descent, compat_kernel, fr_defect, CompatVariant, DEFAULT_SIZE_CAP};
use tanglerep_core::linalg::Poly;
use tanglerep_core::rep::{
    flip, index_rotation_defect, judge, mixed_rotation_defect, ybe_defect, CHECK_SLIDE_NEG,
    CHECK_SLIDE_POS,
};
use tanglerep_core::skein::{braid_power, skein_relation, verify_skein, BetaSequence};
use tanglerep_core::tensor::twist_map;
use tanglerep_core::{certify_smatrix, CertReport, Gaussian, LinearMap, SMatrix, Scalar, TraceSide};

const EPS_FLOAT: f64 = 1e-9;
const EPS_EXACT: f64 = 0.0;

type G = Gaussian;
type C = Complex64;

fn g(n: i64) -> G {
    G::from_i64(n)
}

fn gr(n: i64, d: i64) -> G {
    G::from_ratio(n, d)
}

fn eps_of<S: Scalar>() -> f64 {
    match S::ENGINE {
        tanglerep_core::EngineKind::Exact => EPS_EXACT,
        tanglerep_core::EngineKind::Float => EPS_FLOAT,
    }
}

fn within<S: Scalar>(residual: f64) -> bool {
    residual <= eps_of::<S>()
}

fn diff<S: Scalar>(a: &LinearMap<S>, b: &LinearMap<S>) -> f64 {
    a.max_abs_diff(b).unwrap()
}

fn certify<S: Scalar>(s: LinearMap<S>) -> (Option<SMatrix<S>>, CertReport) {
    certify_smatrix(s, eps_of::<S>()).unwrap()
}

fn must_certify<S: Scalar>(s: LinearMap<S>) -> SMatrix<S> {
    let (sm, report) = certify(s);
    sm.unwrap_or_else(|| panic!("expected an S-matrix: {report}"))
}

fn rotation<S: Scalar>(c: S, s: S) -> LinearMap<S> {
    LinearMap::new(2, 1, 1, vec![c.clone(), -s.clone(), s, c]).unwrap()
}

/// Flips, sign points of the family, negatives, and 3-4-5 rotation conjugates.
fn exact_pool() -> Vec<SMatrix<G>> {
    let q = rotation(gr(3, 5), gr(4, 5));
    let mut raw = vec![flip::<G>(2).unwrap(), flip::<G>(3).unwrap()];
    for p in sign_points::<G>() {
        let s = dim2_family(&p);
        raw.push(s.scale(&-G::one()));
        raw.push(transform_smatrix(&s, &Transform::BasisChange(q.clone()), 0.0).unwrap());
        raw.push(s);
    }
    raw.into_iter().map(must_certify).collect()
}

/// Random-angle rotation conjugates of the exact dimension-2 members, plus the float flips.
fn float_pool(rng: &mut ChaCha8Rng, count: usize) -> Vec<SMatrix<C>> {
    let bases: Vec<LinearMap<C>> = sign_points::<G>().iter().map(|p| dim2_family(p).map_scalars(G::to_complex)).collect();
    let mut out = vec![must_certify(flip::<C>(2).unwrap()), must_certify(flip::<C>(3).unwrap())];
    for i in 0..count {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let q = rotation(C::new(theta.cos(), 0.0), C::new(theta.sin(), 0.0));
        let s = transform_smatrix(&bases[i % bases.len()], &Transform::BasisChange(q), EPS_FLOAT).unwrap();
        out.push(must_certify(s));
    }
    out
}

fn build_word(start: usize, ops: &[(u8, usize)], max_width: usize, close: bool) -> TangleWord {
    let mut slices = Vec::new();
    let mut width = start;
    for &(kind, pos) in ops {
        let gen = [Generator::Cap, Generator::Cup, Generator::XPos, Generator::XNeg][kind as usize % 4];
        let fits = if gen == Generator::Cap { width + 2 <= max_width } else { width >= 2 };
        if !fits {
            continue;
        }
        slices.push(Slice::with_at(width, pos % (width + 1 - gen.inputs()), gen).unwrap());
        width = width + gen.outputs() - gen.inputs();
    }
    if close {
        assert!(width % 2 == 0, "an odd number of endpoints cannot be closed");
        while width > 0 {
            slices.push(Slice::with_at(width, 0, Generator::Cup).unwrap());
            width -= 2;
        }
    }
    if slices.is_empty() {
        return TangleWord::identity(start);
    }
    TangleWord::new(slices).unwrap()
}

fn random_ops(rng: &mut ChaCha8Rng, len: usize) -> Vec<(u8, usize)> {
    (0..len).map(|_| (rng.gen_range(0..4), rng.gen_range(0..8))).collect()
}

fn random_braid(rng: &mut ChaCha8Rng, strands: usize, max_len: usize) -> Vec<i32> {
    if strands < 2 {
        return Vec::new();
    }
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let x = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) { x } else { -x }
        })
        .collect()
}

fn random_link(rng: &mut ChaCha8Rng) -> FramedLink {
    let strands = rng.gen_range(1..=4);
    let braid = random_braid(rng, strands, 6);
    let components = match FramedLink::new(strands, braid.clone(), vec![]) {
        Err(tanglerep_core::DiagramError::FramingCount { components, .. }) => components,
        other => panic!("unexpected {other:?}"),
    };
    let framings = (0..components).map(|_| rng.gen_range(-3..=3)).collect();
    FramedLink::new(strands, braid, framings).unwrap()
}

fn closure(strands: usize, letters: &[i32]) -> TangleWord {
    let inner = braid_word(strands, letters).unwrap().embed(0, strands);
    nested_caps(strands).then(&inner).unwrap().then(&nested_cups(strands)).unwrap()
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

// 1. certification of the flip and of the two-dimensional family
fn criterion_1() -> Verdict {
    let mut flips_ok = true;
    for v in [2, 3] {
        let (sm, r) = certify(flip::<G>(v).unwrap());
        flips_ok &= sm.is_some() && r.checks.iter().all(|c| c.residual == 0.0);
        let (sm, r) = certify(flip::<C>(v).unwrap());
        flips_ok &= sm.is_some() && r.checks.iter().all(|c| c.residual <= EPS_FLOAT);
    }
    let on = variety_samples::<G>(25);
    let mut on_certified = 0;
    let mut on_failure = None;
    for p in &on {
        let (sm, r) = certify(dim2_family(p));
        if sm.is_some() && r.checks.iter().all(|c| c.residual == 0.0) {
            on_certified += 1;
        } else if on_failure.is_none() {
            on_failure = r.first_failure().map(|c| c.name);
        }
    }
    let off = off_variety_samples::<G>(10);
    let off_rejected = off
        .iter()
        .filter(|p| {
            let (sm, r) = certify(dim2_family(p));
            sm.is_none() && r.first_failure().is_some()
        })
        .count();
    verdict(
        flips_ok && on_certified == on.len() && off_rejected == off.len(),
        format!(
            "flip v=2,3 {}; on-variety certified {on_certified}/{} (first failure: {}); off-variety rejected with a named condition {off_rejected}/{}",
            if flips_ok { "certifies" } else { "FAILS" },
            on.len(),
            on_failure.unwrap_or("none"),
            off.len()
        ),
    )
}

// 2. trivial links evaluate to v^m
fn criterion_2() -> Verdict {
    let mut ok = true;
    let mut worst = 0.0f64;
    for v in 1..=3usize {
        let exact = must_certify(flip::<G>(v).unwrap());
        let float = must_certify(flip::<C>(v).unwrap());
        for m in 1..=3usize {
            let link = FramedLink::trivial(m);
            let expected = v.pow(m as u32) as i64;
            ok &= exact.link_invariant(&link).unwrap() == g(expected);
            let r = (float.link_invariant(&link).unwrap() - C::new(expected as f64, 0.0)).norm();
            worst = worst.max(r);
            ok &= r <= EPS_FLOAT;
        }
    }
    verdict(ok, format!("v in 1..=3, m in 1..=3: exact values equal v^m, float max residual {worst:e}"))
}

fn isotopy_suite<S: Scalar>(pool: &[SMatrix<S>], rng: &mut ChaCha8Rng) -> (bool, f64) {
    let mut worst = 0.0f64;
    let snake = TangleWord::new(vec![Slice(vec![Generator::Id, Generator::Cap]), Slice(vec![Generator::Cup, Generator::Id])]).unwrap();
    for sm in pool {
        let id = LinearMap::identity(sm.dim(), 1).unwrap();
        worst = worst.max(diff(&sm.evaluate(&snake).unwrap(), &id));
        worst = worst.max(diff(&sm.evaluate(&snake.rotate_pi()).unwrap(), &id));
        for (sign, positive) in [(Sign::Pos, true), (Sign::Neg, false)] {
            let curl_value = sm.evaluate(&curl(sign)).unwrap();
            worst = worst.max(diff(&curl_value, &sm.crossing(positive).partial_trace(TraceSide::Right).unwrap()));
            worst = worst.max(diff(&curl_value, &sm.crossing(positive).partial_trace(TraceSide::Left).unwrap()));
        }
    }
    // Whitney pairs on 50 closed words
    for i in 0..50 {
        let sm = &pool[i % pool.len()];
        let (w, heights) = loop {
            let w = build_word(0, &random_ops(rng, 12), 4, true);
            let heights: Vec<usize> = (0..=w.slices().len()).filter(|&h| w.width_at(h).unwrap_or(0) >= 2).collect();
            if !heights.is_empty() {
                break (w, heights);
            }
        };
        let h = heights[rng.gen_range(0..heights.len())];
        let width = w.width_at(h).unwrap();
        let p = rng.gen_range(0..width - 1);
        let (a, b) = if rng.gen_bool(0.5) { (Generator::XPos, Generator::XNeg) } else { (Generator::XNeg, Generator::XPos) };
        let pair = TangleWord::single(width, p, a).unwrap().then(&TangleWord::single(width, p, b).unwrap()).unwrap();
        let lhs = sm.evaluate_closed(&w.insert_at(h, &pair).unwrap()).unwrap();
        let rhs = sm.evaluate_closed(&w).unwrap();
        worst = worst.max((lhs - rhs).magnitude());
    }
    // closure cyclicity on 50 pairs
    for i in 0..50 {
        let sm = &pool[i % pool.len()];
        let strands = rng.gen_range(2..=3);
        let a = random_braid(rng, strands, 4);
        let b = random_braid(rng, strands, 4);
        let ab: Vec<i32> = a.iter().chain(&b).copied().collect();
        let ba: Vec<i32> = b.iter().chain(&a).copied().collect();
        let r = (sm.evaluate_closed(&closure(strands, &ab)).unwrap() - sm.evaluate_closed(&closure(strands, &ba)).unwrap()).magnitude();
        worst = worst.max(r);
    }
    (within::<S>(worst), worst)
}

// 3. functoriality and isotopy
fn criterion_3(rng: &mut ChaCha8Rng) -> Verdict {
    let (exact_ok, exact_worst) = isotopy_suite(&exact_pool(), rng);
    let (float_ok, float_worst) = isotopy_suite(&float_pool(rng, 6), rng);
    verdict(
        exact_ok && float_ok,
        format!("zig-zag, curl = partial trace, 50 Whitney pairs, 50 closure pairs: exact max {exact_worst:e}, float max {float_worst:e}"),
    )
}

fn rotation_suite<S: Scalar>(pool: &[SMatrix<S>], rng: &mut ChaCha8Rng) -> (bool, f64) {
    let mut worst = 0.0f64;
    for sm in pool {
        for _ in 0..20 {
            let start = rng.gen_range(0..=2);
            let w = build_word(start, &random_ops(rng, 10), 4, false);
            worst = worst.max(sm.rotation_transpose_residual(&w).unwrap());
        }
    }
    (within::<S>(worst), worst)
}

// 4. rotation theorem and the sign equivalence of sliding
fn criterion_4(rng: &mut ChaCha8Rng) -> Verdict {
    let exact = exact_pool();
    let float = float_pool(rng, 6);
    let (exact_ok, exact_worst) = rotation_suite(&exact, rng);
    let (float_ok, float_worst) = rotation_suite(&float, rng);

    let mut reports = Vec::new();
    for sm in &exact {
        reports.push(certify(sm.s().clone()).1);
        for lambda in [g(2), G::i(), -g(1)] {
            reports.push(certify(sm.s().scale(&lambda)).1);
        }
    }
    for sm in &float {
        reports.push(certify(sm.s().clone()).1);
    }
    for p in variety_samples::<G>(25).iter().chain(&off_variety_samples::<G>(10)) {
        reports.push(certify(dim2_family(p)).1);
    }
    let equivalence = reports.iter().filter(|r| r.sign_equivalence).count();
    let certified_have_ir = reports.iter().filter(|r| r.overall).all(|r| r.passed(tanglerep_core::rep::CHECK_INDEX_ROTATION));
    verdict(
        exact_ok && float_ok && equivalence == reports.len() && certified_have_ir,
        format!(
            "20 words per matrix: exact max {exact_worst:e}, float max {float_worst:e}; (one sign and index rotation) => both signs on {equivalence}/{} runs",
            reports.len()
        ),
    )
}

fn write_temp_smatrix(dir: &tempfile::TempDir, name: &str, s: &LinearMap<G>) -> String {
    let path = dir.path().join(name);
    let file = SMatrixFile { data: MatrixData::Exact(s.clone()), epsilon: None };
    fs::write(&path, write_smatrix(&file)).unwrap();
    path.to_str().unwrap().to_string()
}

fn cli_exit(args: &[&str]) -> i32 {
    let mut argv = vec!["tanglerep"];
    argv.extend_from_slice(args);
    tanglerep::run(argv, &mut Vec::new(), &mut Vec::new())
}

// 5. trace defects of the family and the Kirby verdicts
fn criterion_5() -> Verdict {
    let samples = variety_samples::<G>(25);
    let mut formulas_ok = true;
    let mut jointly_zero = 0;
    for p in &samples {
        let sm = SMatrix::unchecked(dim2_family(p), 0.0).unwrap();
        let a0 = fr_defect(&sm, 0, Sign::Pos).unwrap().as_scalar().cloned().unwrap();
        let b0 = fr_defect(&sm, 0, Sign::Neg).unwrap().as_scalar().cloned().unwrap();
        formulas_ok &= a0 == g(2) * p.k.clone() - g(1);
        formulas_ok &= b0 == g(2) / p.k.clone() - g(1);
        if a0.is_exact_zero() && b0.is_exact_zero() {
            jointly_zero += 1;
        }
    }
    // 2k − 1 = 0 forces k = 1/2, where 2/k − 1 = 3
    let k = gr(1, 2);
    let infeasible = !(g(2) / k - g(1)).is_exact_zero();

    let dir = tempfile::TempDir::new().unwrap();
    let mut exits_one = 0;
    for (i, p) in samples.iter().enumerate() {
        let path = write_temp_smatrix(&dir, &format!("s{i}.smat"), &dim2_family(p));
        if cli_exit(&["kirby", &path, "--strategy", "irreducible"]) == 1 {
            exits_one += 1;
        }
    }
    let unit = write_temp_smatrix(&dir, "unit.smat", &unit_smatrix());
    let unit_exit = cli_exit(&["kirby", &unit]);
    verdict(
        formulas_ok && jointly_zero == 0 && infeasible && exits_one == samples.len() && unit_exit == 0,
        format!(
            "A_0 = 2k-1 and B_0 = 2/k-1 on {} samples: {}; joint zero: none; kirby exit 1 on {exits_one}/{}; unit matrix exit {unit_exit}",
            samples.len(),
            if formulas_ok { "exact" } else { "MISMATCH" },
            samples.len()
        ),
    )
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn big_mod(x: &BigInt) -> u64 {
    let p = BigInt::from(P);
    (((x % &p) + &p) % &p).to_u64().unwrap()
}

fn to_mod(x: &G) -> u64 {
    assert!(x.is_real());
    mulmod(big_mod(x.re.numer()), powmod(big_mod(x.re.denom()), P - 2))
}

/// Dense matrix over `Z/p`.
#[derive(Clone)]
struct ModMat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMat {
    fn zeros(rows: usize, cols: usize) -> Self {
        ModMat { rows, cols, data: vec![0; rows * cols] }
    }

    fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    fn from_map(a: &LinearMap<G>) -> Self {
        ModMat { rows: a.rows(), cols: a.cols(), data: a.coeffs().iter().map(to_mod).collect() }
    }

    fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + mulmod(a, other.at(k, j))) % P;
                }
            }
        }
        out
    }

    fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * out.cols + j * other.cols + l] = mulmod(self.at(i, j), other.at(k, l));
                    }
                }
            }
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        ModMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| (a + P - b) % P).collect() }
    }

    fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.at(i, j);
            }
        }
        out
    }

    /// Trace over the last (`right`) or first tensor factor of dimension 2.
    fn partial_trace(&self, right: bool) -> Self {
        let small = self.rows / 2;
        let mut out = Self::zeros(small, small);
        for k in 0..small {
            for j in 0..small {
                let mut acc = 0;
                for r in 0..2 {
                    let (a, b) = if right { (k * 2 + r, j * 2 + r) } else { (r * small + k, r * small + j) };
                    acc = (acc + self.at(a, b)) % P;
                }
                out.data[k * small + j] = acc;
            }
        }
        out
    }
}

fn mod_rank(mut rows: Vec<Vec<u64>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = powmod(rows[rank][c], P - 2);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = mulmod(row[c], inv);
            for j in c..cols {
                row[j] = (row[j] + P - mulmod(f, pivot[j])) % P;
            }
        }
        rank += 1;
    }
    rank
}

/// Brute-force kernel dimension of the compatibility system at level
/// `m + 2`, assembled by composing every unit endomorphism with the
/// constraint maps. Rank mod p bounds the rational rank from below.
fn oracle_kernel_dim(sm: &SMatrix<G>, m: usize, symmetric: bool) -> usize {
    let id = |k: usize| ModMat::identity(1 << k);
    let s = ModMat::from_map(sm.s());
    let b = ModMat::from_map(sm.cap());
    let d = ModMat::from_map(sm.cup());
    let tw = id(1).kron(&d).mul(&s.kron(&id(1))).mul(&id(1).kron(&b));
    let n = 1usize << (m + 2);
    let caps: Vec<ModMat> = (1..m).map(|i| id(i).kron(&b).kron(&id(m - i))).collect();
    let cups: Vec<ModMat> = (1..m).map(|i| id(i).kron(&d).kron(&id(m - i))).collect();
    let mut comm: Vec<ModMat> = (1..m).map(|i| id(i).kron(&s).kron(&id(m - i))).collect();
    comm.extend((1..m + 1).map(|i| id(i).kron(&tw).kron(&id(m + 1 - i))));
    let mut columns: Vec<Vec<u64>> = Vec::with_capacity(n * n);
    for u in 0..n * n {
        let mut e = ModMat::zeros(n, n);
        e.data[u] = 1;
        let mut col = Vec::new();
        for x in &caps {
            col.extend(e.mul(x).data);
        }
        if symmetric {
            col.extend(e.sub(&e.transpose()).data);
            col.extend(e.partial_trace(false).data);
        } else {
            for y in &cups {
                col.extend(y.mul(&e).data);
            }
            col.extend(e.partial_trace(true).data);
        }
        for x in &comm {
            col.extend(e.mul(x).sub(&x.mul(&e)).data);
        }
        columns.push(col);
    }
    let rows = columns.first().map_or(0, Vec::len);
    let dense: Vec<Vec<u64>> = (0..rows).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    n * n - mod_rank(dense, n * n)
}

fn embedded(x: &LinearMap<G>, left: usize, right: usize) -> LinearMap<G> {
    let v = x.dim();
    LinearMap::identity(v, left).unwrap().tensor(x).unwrap().tensor(&LinearMap::identity(v, right).unwrap()).unwrap()
}

/// Largest coefficient of the constraint maps applied to `e`, computed by composition.
fn witness_residual(sm: &SMatrix<G>, m: usize, symmetric: bool, e: &LinearMap<G>) -> f64 {
    let mut worst = 0.0f64;
    let tw = sm.curl_map(true).unwrap();
    for i in 1..m {
        worst = worst.max(e.compose(&embedded(sm.cap(), i, m - i)).unwrap().max_abs());
        if !symmetric {
            worst = worst.max(embedded(sm.cup(), i, m - i).compose(e).unwrap().max_abs());
        }
    }
    if symmetric {
        worst = worst.max(diff(e, &e.transpose()));
        worst = worst.max(e.partial_trace(TraceSide::Left).unwrap().max_abs());
    } else {
        worst = worst.max(e.partial_trace(TraceSide::Right).unwrap().max_abs());
    }
    let mut comm: Vec<LinearMap<G>> = (1..m).map(|i| embedded(sm.s(), i, m - i)).collect();
    comm.extend((1..m + 1).map(|i| embedded(&tw, i, m + 1 - i)));
    for x in &comm {
        worst = worst.max(diff(&e.compose(x).unwrap(), &x.compose(e).unwrap()));
    }
    worst
}

// 6. compatibility kernel against a brute-force oracle
fn criterion_6(rng: &mut ChaCha8Rng) -> Verdict {
    let pool: Vec<SMatrix<G>> = exact_pool().into_iter().filter(|sm| sm.dim() == 2).collect();
    let picks = [0usize, 1, 2, 3, 4, 5, 8];
    let mut ok = true;
    let mut compared = 0;
    let mut dims = Vec::new();
    let mut worst = 0.0f64;
    for &i in &picks {
        let sm = &pool[i];
        for (n, variant) in [(0, CompatVariant::Plain), (1, CompatVariant::Plain), (2, CompatVariant::Plain), (0, CompatVariant::Symmetric), (1, CompatVariant::Symmetric)] {
            let report = compat_kernel(sm, n, variant, DEFAULT_SIZE_CAP).unwrap();
            let symmetric = variant == CompatVariant::Symmetric;
            for level in &report.levels {
                let m = level.arity - 2;
                let oracle = oracle_kernel_dim(sm, m, symmetric);
                ok &= oracle == level.kernel_dim && level.basis.len() == level.kernel_dim;
                compared += 1;
                if i == 0 && !symmetric {
                    dims.push(format!("n={n}:{}", level.kernel_dim));
                }
                for e in &level.basis {
                    worst = worst.max(witness_residual(sm, m, symmetric, e));
                }
                if !level.basis.is_empty() {
                    for _ in 0..3 {
                        let mut combo = LinearMap::zeros(2, level.arity, level.arity).unwrap();
                        for e in &level.basis {
                            combo = combo.add(&e.scale(&g(rng.gen_range(-5..=5)))).unwrap();
                        }
                        worst = worst.max(witness_residual(sm, m, symmetric, &combo));
                    }
                }
            }
        }
    }
    // the float engine agrees on the flip and a rotated sign point
    let mut float_ok = true;
    for sm in float_pool(rng, 2).iter().filter(|sm| sm.dim() == 2) {
        let exact_dims: Vec<usize> = (0..=2).map(|n| oracle_kernel_dim(&must_certify(round_to_sign_point(sm)), n, false)).collect();
        for n in 0..=2 {
            let r = compat_kernel(sm, n, CompatVariant::Plain, DEFAULT_SIZE_CAP).unwrap();
            float_ok &= r.levels[0].kernel_dim == exact_dims[n];
        }
    }
    verdict(
        ok && worst == 0.0 && float_ok,
        format!("{compared} levels match the mod-p dense oracle (flip kernel dims {}); witness and random combinations residual {worst:e}; float dims {}", dims.join(" "), if float_ok { "agree" } else { "DISAGREE" }),
    )
}

/// The exact member a float rotation conjugate is similar to, found by
/// matching its trace and the traces of its powers.
fn round_to_sign_point(sm: &SMatrix<C>) -> LinearMap<G> {
    if sm.s().max_abs_diff(&flip::<C>(2).unwrap()).unwrap() <= EPS_FLOAT {
        return flip::<G>(2).unwrap();
    }
    let tr = sm.s().trace().unwrap();
    let tr_sq = sm.s().compose(sm.s()).unwrap().trace().unwrap();
    for p in sign_points::<G>() {
        let s = dim2_family(&p);
        let t = s.trace().unwrap().to_complex();
        let t2 = s.compose(&s).unwrap().trace().unwrap().to_complex();
        if (t - tr).norm() <= 1e-6 && (t2 - tr_sq).norm() <= 1e-6 {
            return s;
        }
    }
    panic!("no matching sign point")
}

// 7. descent of the ring defects through a cap
fn criterion_7() -> Verdict {
    let worst_of = |sm: &SMatrix<G>| (0..=1).map(|n| check_descent(sm, n, DEFAULT_SIZE_CAP).unwrap()).fold(0.0, f64::max);
    let mut runs: Vec<(String, f64)> = vec![
        ("flip v=2".into(), worst_of(&must_certify(flip::<G>(2).unwrap()))),
        ("flip v=3".into(), worst_of(&must_certify(flip::<G>(3).unwrap()))),
    ];
    let sign_max = sign_points::<G>().iter().map(|p| worst_of(&must_certify(dim2_family(p)))).fold(0.0, f64::max);
    runs.push(("sign points".into(), sign_max));
    for p in variety_samples::<G>(5) {
        let sm = SMatrix::unchecked(dim2_family(&p), 0.0).unwrap();
        runs.push((format!("S({},{},{})", p.k, p.p, p.q), worst_of(&sm)));
    }
    let ok = runs.iter().all(|(_, r)| *r == 0.0);
    let lines: Vec<String> = runs.iter().map(|(l, r)| format!("{l} {r:e}")).collect();
    verdict(ok, format!("max residual over n=0,1: {}", lines.join("; ")))
}

fn random_context(rng: &mut ChaCha8Rng, deg: usize) -> (usize, usize, Vec<i32>, Vec<i32>, Vec<i32>) {
    let s = rng.gen_range(2..=4);
    let hole = rng.gen_range(0..=s - 2);
    let below = random_braid(rng, s, 3);
    let above = random_braid(rng, s, 3);
    let shift = rng.gen_range(-2..=1);
    let powers = (shift..=shift + deg as i32).collect();
    (s, hole, below, above, powers)
}

fn skein_suite<S: Scalar>(sm: &SMatrix<S>, rng: &mut ChaCha8Rng, contexts: usize) -> f64 {
    let rel = skein_relation(sm, 2, &[1]).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..contexts {
        let (s, hole, below, above, powers) = random_context(rng, rel.degree());
        let shift = powers[0];
        let seq = BetaSequence::closure_context(s, hole, &below, &above, 2, vec![1], powers).unwrap();
        worst = worst.max(verify_skein(sm, &rel.shifted(shift), &seq).unwrap());
    }
    worst
}

fn conjugation_suite<S: Scalar>(sm: &SMatrix<S>, rng: &mut ChaCha8Rng) -> f64 {
    let base = skein_relation(sm, 3, &[1]).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let c = random_braid(rng, 3, 4);
        let mut word = c.clone();
        word.push(1);
        word.extend(braid_power(&c, -1));
        let rel = skein_relation(sm, 3, &word).unwrap();
        worst = worst.max(if rel.coeffs.len() == base.coeffs.len() { Poly::new(rel.coeffs).max_abs_diff(&base.poly()) } else { f64::INFINITY });
    }
    worst
}

// 8. skein relations along β-sequences
fn criterion_8(rng: &mut ChaCha8Rng) -> Verdict {
    let flip_exact = must_certify(flip::<G>(2).unwrap());
    let family = SMatrix::unchecked(dim2_family(&Dim2Params::new(g(2), g(1), gr(1, 4)).unwrap()), 0.0).unwrap();
    let flip_float = must_certify(flip::<C>(2).unwrap());
    let family_float = SMatrix::unchecked(family.s().map_scalars(G::to_complex), EPS_FLOAT).unwrap();

    let quadratic = skein_relation(&flip_exact, 2, &[1]).unwrap();
    let cubic = skein_relation(&family, 2, &[1]).unwrap();
    let shapes_ok = quadratic.coeffs == vec![-g(1), g(0), g(1)]
        && cubic.poly() == Poly::from_roots(&[g(2), gr(1, 2), gr(-1, 2)]);

    let r_flip = skein_suite(&flip_exact, rng, 50);
    let r_family = skein_suite(&family, rng, 50);
    let r_flip_f = skein_suite(&flip_float, rng, 50);
    let r_family_f = skein_suite(&family_float, rng, 50);
    let c_flip = conjugation_suite(&flip_exact, rng);
    let c_family = conjugation_suite(&family, rng);
    let ok = shapes_ok
        && r_flip == 0.0
        && r_family == 0.0
        && r_flip_f <= EPS_FLOAT
        && r_family_f <= EPS_FLOAT
        && c_flip == 0.0
        && c_family == 0.0;
    verdict(
        ok,
        format!(
            "50 contexts each: X^2-1 exact {r_flip:e} float {r_flip_f:e}; cubic exact {r_family:e} float {r_family_f:e}; 20 conjugators: {c_flip:e}, {c_family:e}"
        ),
    )
}

fn ybe_residual<S: Scalar>(s: &LinearMap<S>) -> f64 {
    judge(&ybe_defect(s).unwrap(), eps_of::<S>()).0
}

fn transform_suite<S: Scalar>(pool: &[SMatrix<S>], rng: &mut ChaCha8Rng, picks: usize, scales: &[S]) -> (f64, f64) {
    let mut ybe_worst = 0.0f64;
    let mut transpose_worst = 0.0f64;
    for _ in 0..picks {
        let sm = &pool[rng.gen_range(0..pool.len())];
        let v = sm.dim();
        let q = loop {
            let q = LinearMap::from_fn(v, 1, 1, |_, _| S::from_i64(rng.gen_range(-3..=3))).unwrap();
            if q.inverse(eps_of::<S>().max(1e-12)).is_some() {
                break q;
            }
        };
        let transforms = [
            Transform::Scale(scales[rng.gen_range(0..scales.len())].clone()),
            Transform::Inverse,
            Transform::Transpose,
            Transform::FlipConjugate,
            Transform::BasisChange(q),
        ];
        for t in &transforms {
            let out = transform_smatrix(sm.s(), t, eps_of::<S>()).unwrap();
            ybe_worst = ybe_worst.max(ybe_residual(&out));
        }
        let t = twist_map(v, 2).unwrap();
        transpose_worst = transpose_worst.max(diff(&sm.s().transpose(), &t.compose(sm.s()).unwrap().compose(&t).unwrap()));
    }
    (ybe_worst, transpose_worst)
}

// 9. transforms preserve the Yang-Baxter equation
fn criterion_9(rng: &mut ChaCha8Rng) -> Verdict {
    let exact = exact_pool();
    let float = float_pool(rng, 8);
    let (ybe_e, tr_e) = transform_suite(&exact, rng, 10, &[g(2), G::i(), gr(-3, 2), g(1) + G::i()]);
    let (ybe_f, tr_f) = transform_suite(&float, rng, 10, &[C::new(2.0, 0.0), C::new(0.0, 1.0), C::new(-1.5, 0.0)]);

    let mut scale_fails = true;
    let mut linear_holds = true;
    for sm in &exact {
        for lambda in [g(2), G::i()] {
            let scaled = sm.s().scale(&lambda);
            let inv = scaled.inverse(0.0).unwrap();
            scale_fails &= !judge(&mixed_rotation_defect(&scaled, &inv), 0.0).1;
            let (cert, report) = certify(scaled.clone());
            scale_fails &= cert.is_none() && !report.passed(CHECK_SLIDE_POS) && !report.passed(CHECK_SLIDE_NEG);
            linear_holds &= judge(&index_rotation_defect(&scaled), 0.0).1;
        }
    }
    verdict(
        ybe_e == 0.0 && ybe_f <= EPS_FLOAT && tr_e == 0.0 && tr_f <= EPS_FLOAT && scale_fails && linear_holds,
        format!(
            "YBE after 5 transforms on 10 inputs: exact {ybe_e:e}, float {ybe_f:e}; S^T = TST: exact {tr_e:e}, float {tr_f:e}; 2S and iS fail the mixed rotation identity: {scale_fails} (linear form holds: {linear_holds})"
        ),
    )
}

fn random_gaussian(rng: &mut ChaCha8Rng) -> G {
    let part = |rng: &mut ChaCha8Rng| gr(rng.gen_range(-1_000_000..=1_000_000), rng.gen_range(1..=99_999));
    part(rng) + G::i() * part(rng)
}

fn random_f64(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..5) {
        0 => 0.0,
        1 => -0.0,
        2 => f64::from_bits(rng.gen_range(1..(1u64 << 52))),
        3 => rng.gen_range(-1e300..1e300),
        _ => rng.gen_range(-1.0..1.0) * 10f64.powi(rng.gen_range(-30..30)),
    }
}

// 10. round trips of the file formats
fn criterion_10(rng: &mut ChaCha8Rng) -> Verdict {
    let mut smat_ok = 0;
    let mut smat_total = 0;
    for v in 1..=3 {
        for _ in 0..10 {
            smat_total += 2;
            let exact = LinearMap::from_fn(v, 2, 2, |_, _| random_gaussian(rng)).unwrap();
            let file = SMatrixFile { data: MatrixData::Exact(exact), epsilon: None };
            if read_smatrix(&write_smatrix(&file)).unwrap() == file {
                smat_ok += 1;
            }
            let float = LinearMap::from_fn(v, 2, 2, |_, _| C::new(random_f64(rng), random_f64(rng))).unwrap();
            let file = SMatrixFile { data: MatrixData::Float(float.clone()), epsilon: Some(random_f64(rng).abs()) };
            let back = read_smatrix(&write_smatrix(&file)).unwrap();
            let bits = |m: &LinearMap<C>| m.coeffs().iter().flat_map(|z| [z.re.to_bits(), z.im.to_bits()]).collect::<Vec<_>>();
            if let MatrixData::Float(m) = &back.data {
                if bits(m) == bits(&float) && back.epsilon.map(f64::to_bits) == file.epsilon.map(f64::to_bits) {
                    smat_ok += 1;
                }
            }
        }
    }
    let mut tangle_ok = 0;
    for i in 0..50 {
        let start = i % 3;
        let w = build_word(start, &random_ops(rng, 12), 6, start % 2 == 0 && i % 2 == 0);
        if parse_tangle(&write_tangle(&w)).unwrap() == w {
            tangle_ok += 1;
        }
    }
    let mut link_ok = 0;
    for _ in 0..50 {
        let l = random_link(rng);
        if parse_link(&write_link(&l)).unwrap() == l {
            link_ok += 1;
        }
    }
    let mut seq_ok = 0;
    for _ in 0..20 {
        let (s, hole, below, above, powers) = random_context(rng, 2);
        let spec = SequenceSpec { strands: s, hole, below, above, powers };
        if parse_sequence(&write_sequence(&spec)).unwrap() == spec {
            seq_ok += 1;
        }
    }
    verdict(
        smat_ok == smat_total && tangle_ok == 50 && link_ok == 50 && seq_ok == 20,
        format!("S-matrix files {smat_ok}/{smat_total} bit-exact, tangles {tangle_ok}/50, links {link_ok}/50, sequences {seq_ok}/20"),
    )
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let criteria: Vec<(&str, Box<dyn FnOnce(&mut ChaCha8Rng) -> Verdict>)> = vec![
        ("S-matrix certification of flips and the dim-2 family", Box::new(|_| criterion_1())),
        ("trivial links evaluate to v^m", Box::new(|_| criterion_2())),
        ("functoriality and isotopy", Box::new(criterion_3)),
        ("rotation theorem and sliding sign equivalence", Box::new(criterion_4)),
        ("trace defects of the family and kirby exit codes", Box::new(|_| criterion_5())),
        ("compatibility kernel against a dense oracle", Box::new(criterion_6)),
        ("descent of ring defects", Box::new(|_| criterion_7())),
        ("skein relations along sequences", Box::new(criterion_8)),
        ("YBE-preserving transforms", Box::new(criterion_9)),
        ("file format round trips", Box::new(criterion_10)),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let v = check(&mut rng);
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {:>2}: {}  {name} ({secs:.1}s): {}", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
        if !v.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
