//! Skein relations from polynomial identities satisfied by represented braids.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{braid_word, nested_caps, nested_cups, FramedLink, TangleWord};
use crate::error::{DiagramError, SkeinError};
use crate::linalg::{minimal_polynomial, Poly};
use crate::rep::SMatrix;
use crate::scalar::Scalar;

/// `Σ a_e X^e = 0` for `e` from `offset` to `offset + deg`, satisfied by `ρ(β)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkeinRelation<S> {
    pub strands: usize,
    pub braid: Vec<i32>,
    pub offset: i32,
    /// `a_offset, …`, last entry 1.
    pub coeffs: Vec<S>,
}

impl<S: Scalar> SkeinRelation<S> {
    /// Multiplies the relation by `X^shift`.
    pub fn shifted(&self, shift: i32) -> Self {
        SkeinRelation { offset: self.offset + shift, ..self.clone() }
    }

    pub fn exponents(&self) -> (i32, i32) {
        (self.offset, self.offset + self.coeffs.len() as i32 - 1)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn poly(&self) -> Poly<S> {
        Poly::new(self.coeffs.clone())
    }
}

impl<S: Scalar> fmt::Display for SkeinRelation<S> {
    /// `a_m X^m + … + a_n X^n = 0`, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({a}) X^{}", self.offset + i as i32)?;
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(" = 0")
    }
}

/// Monic minimal polynomial of `ρ(β)` as a relation with offset 0.
pub fn skein_relation<S: Scalar>(sm: &SMatrix<S>, strands: usize, braid: &[i32]) -> Result<SkeinRelation<S>, SkeinError> {
    let word = braid_word(strands, braid)?;
    let a = sm.evaluate(&word)?;
    let p = minimal_polynomial(&a, sm.epsilon())?;
    Ok(SkeinRelation { strands, braid: braid.to_vec(), offset: 0, coeffs: p.coeffs().to_vec() })
}

/// `β^{power}` as letters; negative powers use the inverse word.
pub fn braid_power(braid: &[i32], power: i32) -> Vec<i32> {
    let unit: Vec<i32> = if power >= 0 { braid.to_vec() } else { braid.iter().rev().map(|g| -g).collect() };
    let mut out = Vec::with_capacity(unit.len() * power.unsigned_abs() as usize);
    for _ in 0..power.unsigned_abs() {
        out.extend_from_slice(&unit);
    }
    out
}

/// Closed diagrams that agree outside a hole of width `w` holding `β^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaSequence {
    pub below: TangleWord,
    pub above: TangleWord,
    pub hole: usize,
    pub strands: usize,
    pub braid: Vec<i32>,
    pub powers: Vec<i32>,
}

impl BetaSequence {
    pub fn new(
        below: TangleWord,
        above: TangleWord,
        hole: usize,
        strands: usize,
        braid: Vec<i32>,
        powers: Vec<i32>,
    ) -> Result<Self, SkeinError> {
        if below.dom() != 0 || above.cod() != 0 {
            let w = if below.dom() != 0 { &below } else { &above };
            return Err(DiagramError::NotClosed { dom: w.dom(), cod: w.cod() }.into());
        }
        if below.cod() != above.dom() {
            return Err(DiagramError::StackMismatch { below: below.cod(), above: above.dom() }.into());
        }
        if hole + strands > below.cod() {
            return Err(DiagramError::PositionOutOfRange { position: hole + strands, width: below.cod() }.into());
        }
        braid_word(strands, &braid)?;
        Ok(BetaSequence { below, above, hole, strands, braid, powers })
    }

    /// Braid closure context on `s ≥ w` strands: caps, `γ_below`, the hole
    /// at strands `hole..hole+w`, `γ_above`, cups. The return strands sit on
    /// the right.
    pub fn closure_context(
        s: usize,
        hole: usize,
        gamma_below: &[i32],
        gamma_above: &[i32],
        strands: usize,
        braid: Vec<i32>,
        powers: Vec<i32>,
    ) -> Result<Self, SkeinError> {
        let below = nested_caps(s).then(&braid_word(s, gamma_below)?.embed(0, s))?;
        let above = braid_word(s, gamma_above)?.embed(0, s).then(&nested_cups(s))?;
        Self::new(below, above, hole, strands, braid, powers)
    }

    /// The closed word with `β^power` in the hole.
    pub fn insert(&self, power: i32) -> Result<TangleWord, SkeinError> {
        let width = self.below.cod();
        let inner = braid_word(self.strands, &braid_power(&self.braid, power))?;
        let layer = inner.embed(self.hole, width - self.hole - self.strands);
        Ok(self.below.then(&layer)?.then(&self.above)?)
    }
}

/// `|Σ a_e ρ(L_e)|` over the exponents of the relation.
pub fn verify_skein<S: Scalar>(sm: &SMatrix<S>, rel: &SkeinRelation<S>, seq: &BetaSequence) -> Result<f64, SkeinError> {
    if seq.braid != rel.braid || seq.strands != rel.strands {
        return Err(SkeinError::BraidMismatch);
    }
    let (lo, hi) = rel.exponents();
    if !(lo..=hi).all(|e| seq.powers.contains(&e)) {
        return Err(SkeinError::PowerMismatch { expected: (lo, hi), found: seq.powers.clone() });
    }
    let mut total = S::zero();
    for (i, a) in rel.coeffs.iter().enumerate() {
        if a.is_exact_zero() {
            continue;
        }
        let value = sm.evaluate_closed(&seq.insert(lo + i as i32)?)?;
        total = total + a.clone() * value;
    }
    Ok(total.magnitude())
}

/// Link of a Conway-style sequence: the closure of `γ β^i` on `s` strands.
pub fn conway_link(s: usize, gamma: &[i32], braid: &[i32], power: i32, framings: Vec<i64>) -> Result<FramedLink, SkeinError> {
    let mut letters = gamma.to_vec();
    letters.extend(braid_power(braid, power));
    Ok(FramedLink::new(s, letters, framings)?)
}

/// Coefficients of relations sampled at parameter values `t`, each
/// interpolated as a polynomial in `t` of degree at most `degree_bound`.
pub fn interpolate_coefficients<S: Scalar>(
    samples: &[(S, SkeinRelation<S>)],
    degree_bound: usize,
) -> Result<Vec<Poly<S>>, SkeinError> {
    let needed = degree_bound + 1;
    if samples.len() < needed {
        return Err(SkeinError::TooFewSamples { needed, found: samples.len() });
    }
    let samples = &samples[..needed];
    let len = samples[0].1.coeffs.len();
    let offset = samples[0].1.offset;
    if samples.iter().any(|(_, r)| r.coeffs.len() != len || r.offset != offset) {
        return Err(SkeinError::DegreeMismatch);
    }
    for (i, (a, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(b, _)| (a.clone() - b.clone()).is_exact_zero()) {
            return Err(SkeinError::RepeatedSample);
        }
    }
    // Lagrange basis polynomials
    let basis: Vec<Poly<S>> = samples
        .iter()
        .enumerate()
        .map(|(i, (ti, _))| {
            let others: Vec<S> = samples.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, (t, _))| t.clone()).collect();
            let num = Poly::from_roots(&others);
            let den = num.eval(ti);
            num.mul(&Poly::new(vec![S::one() / den]))
        })
        .collect();
    Ok((0..len)
        .map(|c| {
            let mut acc = vec![S::zero(); needed];
            for ((_, rel), l) in samples.iter().zip(&basis) {
                for (slot, lc) in acc.iter_mut().zip(l.coeffs()) {
                    *slot = slot.clone() + rel.coeffs[c].clone() * lc.clone();
                }
            }
            Poly::new(acc)
        })
        .collect())
}
