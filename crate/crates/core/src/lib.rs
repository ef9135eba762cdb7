//! Monoidal representations of framed tangles built from a single
//! invertible matrix `S ∈ End(V ⊗ V)`, with certification of the conditions
//! that make link evaluations well defined and invariant.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod diagram;
pub mod error;
pub mod families;
pub mod kirby;
pub mod linalg;
pub mod rep;
pub mod scalar;
pub mod skein;
pub mod tensor;

pub use error::{DiagramError, FamilyError, KirbyError, RepError, SkeinError, TensorError};
pub use rep::{certify_smatrix, CertReport, SMatrix};
pub use scalar::{EngineKind, Gaussian, Scalar, DEFAULT_EPSILON};
pub use tensor::{LinearMap, TraceSide};
