#![allow(dead_code)]

use rand::Rng;
use tanglerep_core::diagram::{Generator, Slice, TangleWord};
use tanglerep_core::families::{dim2_family, sign_points, transform_smatrix, Transform};
use tanglerep_core::rep::flip;
use tanglerep_core::{certify_smatrix, Gaussian, LinearMap, SMatrix, Scalar};

pub type G = Gaussian;

pub fn g(n: i64) -> G {
    G::from_i64(n)
}

pub fn gr(n: i64, d: i64) -> G {
    G::from_ratio(n, d)
}

/// Rational rotation by the 3-4-5 angle.
pub fn pythagorean_rotation() -> LinearMap<G> {
    LinearMap::new(2, 1, 1, vec![gr(3, 5), gr(-4, 5), gr(4, 5), gr(3, 5)]).unwrap()
}

/// Exact S-matrices: flips, the sign points of the two-dimensional family,
/// their negatives, and orthogonal conjugates.
pub fn certified_pool() -> Vec<SMatrix<G>> {
    let mut raw = vec![flip::<G>(2).unwrap(), flip::<G>(3).unwrap()];
    for p in sign_points::<G>() {
        let s = dim2_family(&p);
        raw.push(s.scale(&-G::one()));
        raw.push(transform_smatrix(&s, &Transform::BasisChange(pythagorean_rotation()), 0.0).unwrap());
        raw.push(s);
    }
    raw.into_iter()
        .map(|s| {
            let (sm, report) = certify_smatrix(s, 0.0).unwrap();
            sm.unwrap_or_else(|| panic!("pool member fails: {report}"))
        })
        .collect()
}

pub fn random_gaussian_int<R: Rng>(rng: &mut R, bound: i64) -> G {
    G::from_i64(rng.gen_range(-bound..=bound)) + G::i() * G::from_i64(rng.gen_range(-bound..=bound))
}

pub fn random_map<R: Rng>(rng: &mut R, dim: usize, dom: usize, cod: usize, bound: i64) -> LinearMap<G> {
    LinearMap::from_fn(dim, dom, cod, |_, _| random_gaussian_int(rng, bound)).unwrap()
}

/// Interprets `(kind, position)` pairs as slices on a running width that
/// never exceeds `max_width`; ops that do not fit are skipped. With `close`,
/// cups are appended until the word is closed.
pub fn build_word(start: usize, ops: &[(u8, usize)], max_width: usize, close: bool) -> TangleWord {
    let mut slices = Vec::new();
    let mut width = start;
    for &(kind, pos) in ops {
        let gen = match kind % 4 {
            0 => Generator::Cap,
            1 => Generator::Cup,
            2 => Generator::XPos,
            _ => Generator::XNeg,
        };
        let fits = match gen {
            Generator::Cap => width + 2 <= max_width,
            _ => width >= 2,
        };
        if !fits {
            continue;
        }
        let position = pos % (width + 1 - gen.inputs());
        slices.push(Slice::with_at(width, position, gen).unwrap());
        width = width + gen.outputs() - gen.inputs();
    }
    if close {
        if width % 2 == 1 {
            slices.push(Slice::with_at(width, 0, Generator::Cap).unwrap());
            width += 2;
        }
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

pub fn random_ops<R: Rng>(rng: &mut R, len: usize) -> Vec<(u8, usize)> {
    (0..len).map(|_| (rng.gen_range(0..4), rng.gen_range(0..8))).collect()
}
