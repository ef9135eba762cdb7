use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("vector space dimension must be positive")]
    ZeroDimension,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("map is not square ({dom} -> {cod})")]
    NotSquare { dom: usize, cod: usize },
    #[error("partial trace of an arity-0 map")]
    ZeroArityTrace,
    #[error("tensor power {dim}^{arity} is too large")]
    TooLarge { dim: usize, arity: usize },
    #[error("local map of width {width} at position {position} exceeds arity {arity}")]
    PositionOutOfRange { position: usize, width: usize, arity: usize },
    #[error("constraint system has no unknowns")]
    EmptyUnknown,
    #[error("constraint references unknown {index} but only {count} exist")]
    UnknownOutOfRange { index: usize, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("slice {index} outputs {outputs} strands but slice {next} takes {inputs}", next = index + 1)]
    SliceMismatch { index: usize, outputs: usize, inputs: usize },
    #[error("arity mismatch stacking words: {below} strands below, {above} above")]
    StackMismatch { below: usize, above: usize },
    #[error("word is not closed (arities {dom} -> {cod})")]
    NotClosed { dom: usize, cod: usize },
    #[error("{kind} requires n >= {min}, got {n}")]
    InvalidSize { kind: &'static str, n: usize, min: usize },
    #[error("braid generator {generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: i32, strands: usize },
    #[error("closure has {components} components but {framings} framings were given")]
    FramingCount { components: usize, framings: usize },
    #[error("strand position {position} out of range for width {width}")]
    PositionOutOfRange { position: usize, width: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RepError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("candidate is not an endomorphism of V⊗V")]
    NotTwoByTwo,
    #[error("candidate is not invertible")]
    Singular,
    #[error("word dimension {word} does not match S-matrix dimension {smatrix}")]
    DimensionMismatch { word: usize, smatrix: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KirbyError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("{unknowns} unknowns exceed the size cap of {cap}")]
    SizeCap { unknowns: usize, cap: usize },
}

impl From<TensorError> for KirbyError {
    fn from(e: TensorError) -> Self {
        KirbyError::Rep(RepError::Tensor(e))
    }
}

impl From<DiagramError> for KirbyError {
    fn from(e: DiagramError) -> Self {
        KirbyError::Rep(RepError::Diagram(e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("sequence braid does not match the relation's braid")]
    BraidMismatch,
    #[error("powers {found:?} do not cover exponents {expected:?}")]
    PowerMismatch { expected: (i32, i32), found: alloc::vec::Vec<i32> },
    #[error("need at least {needed} sample points, got {found}")]
    TooFewSamples { needed: usize, found: usize },
    #[error("sample relations have different degrees")]
    DegreeMismatch,
    #[error("sample parameters are not distinct")]
    RepeatedSample,
}

impl From<TensorError> for SkeinError {
    fn from(e: TensorError) -> Self {
        SkeinError::Rep(RepError::Tensor(e))
    }
}

impl From<DiagramError> for SkeinError {
    fn from(e: DiagramError) -> Self {
        SkeinError::Rep(RepError::Diagram(e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("family parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("basis change is singular")]
    SingularBasisChange,
    #[error("basis change must be an endomorphism of V")]
    BadBasisChange,
}

impl From<TensorError> for FamilyError {
    fn from(e: TensorError) -> Self {
        FamilyError::Rep(RepError::Tensor(e))
    }
}
