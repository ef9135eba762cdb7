use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::standard::{braid_word, curl, nested_caps, nested_cups, Sign};
use super::TangleWord;
use crate::error::DiagramError;

/// Closure of a braid with one framing integer per component.
///
/// Components are the cycles of the braid permutation, ordered by their
/// least strand index. `strands = 0` is the empty link.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramedLink {
    strands: usize,
    braid: Vec<i32>,
    framings: Vec<i64>,
}

impl FramedLink {
    pub fn new(strands: usize, braid: Vec<i32>, framings: Vec<i64>) -> Result<Self, DiagramError> {
        for &g in &braid {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(DiagramError::GeneratorOutOfRange { generator: g, strands });
            }
        }
        let components = cycles(&permutation(strands, &braid)).len();
        if components != framings.len() {
            return Err(DiagramError::FramingCount { components, framings: framings.len() });
        }
        Ok(FramedLink { strands, braid, framings })
    }

    pub fn empty() -> Self {
        FramedLink { strands: 0, braid: Vec::new(), framings: Vec::new() }
    }

    /// `m` unlinked 0-framed unknots.
    pub fn trivial(m: usize) -> Self {
        FramedLink { strands: m, braid: Vec::new(), framings: vec![0; m] }
    }

    pub fn unknot(framing: i64) -> Self {
        FramedLink { strands: 1, braid: Vec::new(), framings: vec![framing] }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn braid(&self) -> &[i32] {
        &self.braid
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    /// `perm[i]` is the top position of the strand starting at bottom position `i`.
    pub fn permutation(&self) -> Vec<usize> {
        permutation(self.strands, &self.braid)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        cycles(&self.permutation())
    }

    /// Signed count of crossings between strands of the same component.
    pub fn self_writhe(&self) -> Vec<i64> {
        let comps = self.components();
        let mut owner = vec![0; self.strands];
        for (c, cyc) in comps.iter().enumerate() {
            for &p in cyc {
                owner[p] = c;
            }
        }
        // at[pos] = bottom position of the strand currently at pos
        let mut at: Vec<usize> = (0..self.strands).collect();
        let mut writhe = vec![0i64; comps.len()];
        for &g in &self.braid {
            let i = g.unsigned_abs() as usize - 1;
            let (a, b) = (owner[at[i]], owner[at[i + 1]]);
            if a == b {
                writhe[a] += i64::from(g.signum());
            }
            at.swap(i, i + 1);
        }
        writhe
    }

    /// Closed diagram: nested caps, the braid on the left half, framing
    /// curls, nested cups. A component with framing `f` gets `f − writhe`
    /// curls on its least position above the braid.
    pub fn to_tangle_word(&self) -> TangleWord {
        let s = self.strands;
        if s == 0 {
            return TangleWord::empty();
        }
        let braid = braid_word(s, &self.braid).expect("letters validated");
        let mut word = nested_caps(s).then(&braid.embed(0, s)).expect("widths agree");
        for ((cyc, f), w) in self.components().iter().zip(&self.framings).zip(self.self_writhe()) {
            let extra = f - w;
            let c = curl(Sign::of(extra)).embed(cyc[0], 2 * s - 1 - cyc[0]);
            for _ in 0..extra.unsigned_abs() {
                word = word.then(&c).expect("widths agree");
            }
        }
        word.then(&nested_cups(s)).expect("widths agree")
    }

    /// Every crossing and framing negated.
    pub fn mirror(&self) -> Self {
        FramedLink {
            strands: self.strands,
            braid: self.braid.iter().map(|g| -g).collect(),
            framings: self.framings.iter().map(|f| -f).collect(),
        }
    }

    /// Side by side; `other`'s strands are shifted right.
    pub fn disjoint_union(&self, other: &FramedLink) -> FramedLink {
        let shift = self.strands as i32;
        let mut braid = self.braid.clone();
        braid.extend(other.braid.iter().map(|&g| g + g.signum() * shift));
        let mut framings = self.framings.clone();
        framings.extend(other.framings.iter().copied());
        FramedLink { strands: self.strands + other.strands, braid, framings }
    }
}

impl fmt::Display for FramedLink {
    /// The link text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "link s={} braid:", self.strands)?;
        for g in &self.braid {
            write!(f, " {g}")?;
        }
        f.write_str(" ; framings:")?;
        for x in &self.framings {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

fn permutation(strands: usize, braid: &[i32]) -> Vec<usize> {
    let mut at: Vec<usize> = (0..strands).collect();
    for &g in braid {
        let i = g.unsigned_abs() as usize - 1;
        at.swap(i, i + 1);
    }
    let mut perm = vec![0; strands];
    for (top, &bottom) in at.iter().enumerate() {
        perm[bottom] = top;
    }
    perm
}

fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push(i);
            i = perm[i];
        }
        cyc.sort_unstable();
        out.push(cyc);
    }
    out
}
