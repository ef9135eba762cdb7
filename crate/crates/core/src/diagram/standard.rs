use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Generator, Slice, TangleWord};
use crate::error::DiagramError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn of(x: i64) -> Sign {
        if x < 0 { Sign::Neg } else { Sign::Pos }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn crossing(self) -> Generator {
        match self {
            Sign::Pos => Generator::XPos,
            Sign::Neg => Generator::XNeg,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardKind {
    /// `(1,1)` curl, a single framing change.
    Curl,
    /// Full twist `Δ²` on `n` strands with one curl per strand.
    FullTwist,
    /// `n` strands threaded through a `±1`-framed circle.
    FrSide,
    /// `n` nested cups, the scalar-product tangle `(2n, 0)`.
    Un,
}

impl StandardKind {
    pub fn build(self, n: usize, sign: Sign) -> Result<TangleWord, DiagramError> {
        match self {
            StandardKind::Curl if n != 1 => Err(DiagramError::InvalidSize { kind: "curl", n, min: 1 }),
            StandardKind::Curl => Ok(curl(sign)),
            StandardKind::FullTwist => Ok(full_twist(n, sign)),
            StandardKind::FrSide => Ok(fr_side(n, sign)),
            StandardKind::Un => Ok(nested_cups(n)),
        }
    }
}

/// `[ID, CAP]`, then `[X±, ID]`, then `[ID, CUP]`.
pub fn curl(sign: Sign) -> TangleWord {
    TangleWord::new(vec![
        Slice(vec![Generator::Id, Generator::Cap]),
        Slice(vec![sign.crossing(), Generator::Id]),
        Slice(vec![Generator::Id, Generator::Cup]),
    ])
    .expect("curl slices fit")
}

/// `n` nested cups pairing position `i` with `2n - 1 - i`.
pub fn nested_cups(n: usize) -> TangleWord {
    let slices = (1..=n)
        .rev()
        .map(|level| {
            let mut gens = vec![Generator::Id; level - 1];
            gens.push(Generator::Cup);
            gens.extend(core::iter::repeat(Generator::Id).take(level - 1));
            Slice(gens)
        })
        .collect();
    TangleWord::new(slices).expect("nested cups fit")
}

/// `n` nested caps, the rotation of [`nested_cups`].
pub fn nested_caps(n: usize) -> TangleWord {
    nested_cups(n).rotate_pi()
}

/// Braid word on `strands` strands. Letter `±i` is a crossing of sign `±`
/// between positions `i - 1` and `i`.
pub fn braid_word(strands: usize, letters: &[i32]) -> Result<TangleWord, DiagramError> {
    let mut slices = Vec::with_capacity(letters.len());
    for &letter in letters {
        let i = letter.unsigned_abs() as usize;
        if letter == 0 || i >= strands {
            return Err(DiagramError::GeneratorOutOfRange { generator: letter, strands });
        }
        slices.push(Slice::with_at(strands, i - 1, Sign::of(letter.into()).crossing())?);
    }
    if slices.is_empty() {
        return Ok(TangleWord::identity(strands));
    }
    TangleWord::new(slices)
}

/// Letters of `Δ² = (σ_1 ⋯ σ_{n-1})^n`, every crossing of sign `sign`.
pub fn full_twist_letters(n: usize, sign: Sign) -> Vec<i32> {
    let mut out = Vec::new();
    for _ in 0..n {
        out.extend((1..n as i32).map(|i| i * sign.value()));
    }
    out
}

/// `Δ²` on `n` strands followed by a curl of sign `sign` on every strand.
pub fn full_twist(n: usize, sign: Sign) -> TangleWord {
    if n == 0 {
        return TangleWord::empty();
    }
    let mut word = braid_word(n, &full_twist_letters(n, sign)).expect("letters in range");
    for j in 0..n {
        word = word.then(&curl(sign).embed(j, n - 1 - j)).expect("widths agree");
    }
    word
}

/// `n` vertical strands passing once through a circle of framing `±1`.
///
/// The circle opens with a cap left of the strands. Its right leg crosses
/// the strands rightwards, takes a curl, and crosses back leftwards before
/// the closing cup. Every crossing has the sign of `sign`, so the leg runs
/// over the strands one way and under them on the way back.
pub fn fr_side(n: usize, sign: Sign) -> TangleWord {
    let width = n + 2;
    let x = sign.crossing();
    let mut slices = Vec::with_capacity(2 * n + 5);
    let mut first = vec![Generator::Cap];
    first.extend(core::iter::repeat(Generator::Id).take(n));
    slices.push(Slice(first));
    for pos in 1..=n {
        slices.push(Slice::with_at(width, pos, x).expect("in range"));
    }
    slices.extend(curl(sign).embed(n + 1, 0).slices().iter().cloned());
    for pos in (1..=n).rev() {
        slices.push(Slice::with_at(width, pos, x).expect("in range"));
    }
    let mut last = vec![Generator::Cup];
    last.extend(core::iter::repeat(Generator::Id).take(n));
    slices.push(Slice(last));
    TangleWord::new(slices).expect("fr side fits")
}
