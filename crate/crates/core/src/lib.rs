//! Graded self-injective algebras, their stable categories, and the tilting
//! module `T = ⊕_{i=0}^{ℓ−1} Λ(i)_{≤0}` with stable endomorphism algebra `Γ`.
//!
//! Everything is exact: scalars are rationals or elements of a prime field.
//! Batch work (hom spaces over window pairs, Ext table entries, base-change
//! checks) runs on rayon when the `parallel` feature is enabled.

pub mod algebra;
pub mod base_change;
pub mod error;
pub mod field;
pub mod linalg;
pub mod module;
pub mod par;
pub mod stable;
pub mod tilt;
pub mod window;

pub use algebra::{AlgebraRef, GradedAlgebra};
pub use error::{Error, Hypothesis, Result};
pub use field::{Field, FieldSpec, Fp, Rat};
pub use linalg::Matrix;
pub use module::{GradedMap, GradedModule, HomSpace};
