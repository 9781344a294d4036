//! Exact Kac-Moody root-system combinatorics: generalized Cartan matrices,
//! real roots with coroots, Weyl group inversion sets, prenilpotent pairs,
//! and nilpotency degrees of inversion sets.

#![allow(clippy::needless_range_loop)]

pub mod affine;
mod fm;
pub mod gcm;
pub mod nilpotency;
pub mod pairs;
pub mod reference;
pub mod roots;
pub mod verify;
pub mod weyl;

pub use gcm::{Gcm, GcmError, Kind, MatrixType};
pub use roots::{CorootVector, RealRoot, RootClass, RootError, RootTable, RootVector};
pub use weyl::{InversionSet, WeylElement, WeylError, Word};
