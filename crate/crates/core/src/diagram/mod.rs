//! Slice-based words for framed tangles, read bottom to top.

mod link;
mod standard;

pub use link::FramedLink;
pub use standard::{braid_word, curl, fr_side, full_twist, full_twist_letters, nested_caps, nested_cups, Sign, StandardKind};

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::DiagramError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Straight strand, 1 → 1.
    Id,
    /// Positive crossing, evaluated by `S`.
    XPos,
    /// Negative crossing, evaluated by `S⁻¹`.
    XNeg,
    /// Cap `b`, 0 → 2.
    Cap,
    /// Cup `d`, 2 → 0.
    Cup,
}

impl Generator {
    pub const ALL: [Generator; 5] = [Generator::Id, Generator::XPos, Generator::XNeg, Generator::Cap, Generator::Cup];

    pub fn inputs(self) -> usize {
        match self {
            Generator::Id => 1,
            Generator::XPos | Generator::XNeg | Generator::Cup => 2,
            Generator::Cap => 0,
        }
    }

    pub fn outputs(self) -> usize {
        match self {
            Generator::Id => 1,
            Generator::XPos | Generator::XNeg | Generator::Cap => 2,
            Generator::Cup => 0,
        }
    }

    /// Token in the tangle text format.
    pub fn token(self) -> &'static str {
        match self {
            Generator::Id => "|",
            Generator::XPos => "X+",
            Generator::XNeg => "X-",
            Generator::Cap => "U",
            Generator::Cup => "A",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Generator::ALL.into_iter().find(|g| g.token() == token)
    }

    /// Crossing change; caps, cups and strands are unchanged.
    pub fn mirror(self) -> Self {
        match self {
            Generator::XPos => Generator::XNeg,
            Generator::XNeg => Generator::XPos,
            g => g,
        }
    }

    /// Image under rotation of the picture by π.
    pub fn rotate_pi(self) -> Self {
        match self {
            Generator::Cap => Generator::Cup,
            Generator::Cup => Generator::Cap,
            g => g,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// One horizontal layer of generators, left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Slice(pub Vec<Generator>);

impl Slice {
    pub fn identity(width: usize) -> Self {
        Slice(vec![Generator::Id; width])
    }

    /// `width` strands with `gen` placed so that its leftmost input is at `position`.
    pub fn with_at(width: usize, position: usize, gen: Generator) -> Result<Self, DiagramError> {
        if position + gen.inputs() > width {
            return Err(DiagramError::PositionOutOfRange { position, width });
        }
        let mut gens = vec![Generator::Id; position];
        gens.push(gen);
        gens.extend(core::iter::repeat(Generator::Id).take(width - position - gen.inputs()));
        Ok(Slice(gens))
    }

    pub fn inputs(&self) -> usize {
        self.0.iter().map(|g| g.inputs()).sum()
    }

    pub fn outputs(&self) -> usize {
        self.0.iter().map(|g| g.outputs()).sum()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    fn is_identity(&self) -> bool {
        self.0.iter().all(|g| *g == Generator::Id)
    }
}

/// Checks that consecutive slices fit and returns `(dom, cod)`.
/// An empty slice list is the empty diagram, `(0, 0)`.
pub fn validate(slices: &[Slice]) -> Result<(usize, usize), DiagramError> {
    let Some(first) = slices.first() else { return Ok((0, 0)) };
    for (index, pair) in slices.windows(2).enumerate() {
        let (outputs, inputs) = (pair[0].outputs(), pair[1].inputs());
        if outputs != inputs {
            return Err(DiagramError::SliceMismatch { index, outputs, inputs });
        }
    }
    Ok((first.inputs(), slices[slices.len() - 1].outputs()))
}

/// A validated word of slices. Identity words on `n ≥ 1` strands carry one
/// slice of `n` strands; the empty word is the unit `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangleWord {
    slices: Vec<Slice>,
    dom: usize,
    cod: usize,
}

impl TangleWord {
    pub fn new(slices: Vec<Slice>) -> Result<Self, DiagramError> {
        let (dom, cod) = validate(&slices)?;
        Ok(TangleWord { slices, dom, cod })
    }

    pub fn empty() -> Self {
        TangleWord { slices: Vec::new(), dom: 0, cod: 0 }
    }

    pub fn identity(width: usize) -> Self {
        if width == 0 {
            return Self::empty();
        }
        TangleWord { slices: vec![Slice::identity(width)], dom: width, cod: width }
    }

    pub fn single(width: usize, position: usize, gen: Generator) -> Result<Self, DiagramError> {
        Self::new(vec![Slice::with_at(width, position, gen)?])
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn is_closed(&self) -> bool {
        self.dom == 0 && self.cod == 0
    }

    pub fn crossing_count(&self) -> usize {
        self.generators().filter(|g| matches!(g, Generator::XPos | Generator::XNeg)).count()
    }

    pub fn count(&self, gen: Generator) -> usize {
        self.generators().filter(|g| **g == gen).count()
    }

    fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.slices.iter().flat_map(|s| s.0.iter())
    }

    /// `above ∘ self`: `above` is drawn on top.
    pub fn then(&self, above: &TangleWord) -> Result<Self, DiagramError> {
        if self.cod != above.dom {
            return Err(DiagramError::StackMismatch { below: self.cod, above: above.dom });
        }
        let mut slices = self.slices.clone();
        slices.extend(above.slices.iter().cloned());
        Ok(TangleWord { slices, dom: self.dom, cod: above.cod })
    }

    /// Side by side, `self` on the left. The shorter word is padded with
    /// identity slices at its top.
    pub fn juxtapose(&self, right: &TangleWord) -> Self {
        let height = self.slices.len().max(right.slices.len());
        let pad = |w: &TangleWord, k: usize| match w.slices.get(k) {
            Some(s) => s.0.clone(),
            None => vec![Generator::Id; w.cod],
        };
        let slices = (0..height)
            .map(|k| {
                let mut gens = pad(self, k);
                gens.extend(pad(right, k));
                Slice(gens)
            })
            .collect();
        TangleWord { slices, dom: self.dom + right.dom, cod: self.cod + right.cod }
    }

    /// `id_left ⊗ self ⊗ id_right`.
    pub fn embed(&self, left: usize, right: usize) -> Self {
        if self.slices.is_empty() {
            return TangleWord::identity(left + right);
        }
        let slices = self
            .slices
            .iter()
            .map(|s| {
                let mut gens = vec![Generator::Id; left];
                gens.extend(s.0.iter().copied());
                gens.extend(core::iter::repeat(Generator::Id).take(right));
                Slice(gens)
            })
            .collect();
        TangleWord { slices, dom: self.dom + left + right, cod: self.cod + left + right }
    }

    /// Side-by-side union of two closed diagrams.
    pub fn disjoint_union(&self, other: &TangleWord) -> Result<Self, DiagramError> {
        for w in [self, other] {
            if !w.is_closed() {
                return Err(DiagramError::NotClosed { dom: w.dom, cod: w.cod });
            }
        }
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().cloned());
        Ok(TangleWord { slices, dom: 0, cod: 0 })
    }

    /// Rotation of the picture by π: slice order and generator order are
    /// reversed, caps and cups trade places, crossings keep their sign.
    pub fn rotate_pi(&self) -> Self {
        let slices = self
            .slices
            .iter()
            .rev()
            .map(|s| Slice(s.0.iter().rev().map(|g| g.rotate_pi()).collect()))
            .collect();
        TangleWord { slices, dom: self.cod, cod: self.dom }
    }

    /// All crossings changed.
    pub fn mirror(&self) -> Self {
        let slices = self.slices.iter().map(|s| Slice(s.0.iter().map(|g| g.mirror()).collect())).collect();
        TangleWord { slices, dom: self.dom, cod: self.cod }
    }

    /// Inserts `layer` between slice `at - 1` and slice `at`.
    pub fn insert_at(&self, at: usize, layer: &TangleWord) -> Result<Self, DiagramError> {
        let width = if at == 0 {
            self.dom
        } else {
            self.slices.get(at - 1).map(|s| s.outputs()).ok_or(DiagramError::PositionOutOfRange {
                position: at,
                width: self.slices.len(),
            })?
        };
        if layer.dom != width || layer.cod != width {
            return Err(DiagramError::StackMismatch { below: width, above: layer.dom });
        }
        let mut slices = self.slices[..at].to_vec();
        slices.extend(layer.slices.iter().cloned());
        slices.extend(self.slices[at..].iter().cloned());
        TangleWord::new(slices)
    }

    /// Number of strands between slice `at - 1` and slice `at`.
    pub fn width_at(&self, at: usize) -> Option<usize> {
        match at {
            0 => Some(self.dom),
            _ => self.slices.get(at - 1).map(|s| s.outputs()),
        }
    }

    /// Drops slices made only of straight strands.
    pub fn trim_identities(&self) -> Self {
        let slices: Vec<Slice> = self.slices.iter().filter(|s| !s.is_identity()).cloned().collect();
        if slices.is_empty() {
            return TangleWord::identity(self.dom);
        }
        TangleWord { slices, dom: self.dom, cod: self.cod }
    }

    /// For a word whose every bottom endpoint runs to a top endpoint, the
    /// top position reached from each bottom position. Closed loops are
    /// ignored. `None` if some strand turns back.
    pub fn permutation(&self) -> Option<Vec<usize>> {
        if self.dom != self.cod {
            return None;
        }
        let mut offsets = vec![0usize];
        let mut widths = vec![self.dom];
        for s in &self.slices {
            widths.push(s.outputs());
        }
        for w in &widths {
            let last = *offsets.last().expect("nonempty");
            offsets.push(last + w);
        }
        let total = *offsets.last().expect("nonempty");
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            p[ra] = rb;
        };
        for (level, s) in self.slices.iter().enumerate() {
            let (below, above) = (offsets[level], offsets[level + 1]);
            let (mut i, mut o) = (0, 0);
            for g in &s.0 {
                match g {
                    Generator::Id => union(&mut parent, below + i, above + o),
                    Generator::XPos | Generator::XNeg => {
                        union(&mut parent, below + i, above + o + 1);
                        union(&mut parent, below + i + 1, above + o);
                    }
                    Generator::Cap => union(&mut parent, above + o, above + o + 1),
                    Generator::Cup => union(&mut parent, below + i, below + i + 1),
                }
                i += g.inputs();
                o += g.outputs();
            }
        }
        let top = offsets[self.slices.len()];
        let mut perm = vec![usize::MAX; self.dom];
        for (b, slot) in perm.iter_mut().enumerate() {
            let root = find(&mut parent, b);
            for t in 0..self.cod {
                if find(&mut parent, top + t) == root {
                    *slot = t;
                }
            }
            if *slot == usize::MAX {
                return None;
            }
        }
        Some(perm)
    }
}

impl fmt::Display for TangleWord {
    /// The tangle text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tangle")?;
        for s in &self.slices {
            let mut first = true;
            for g in &s.0 {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                f.write_str(g.token())?;
            }
            writeln!(f)?;
        }
        writeln!(f, "end")
    }
}
