//! Exact computations in free finite-dimensional algebras over a field.
//!
//! Algebras are given by structural constants. On top of exact scalar and
//! matrix arithmetic the crate provides:
//!
//! - element arithmetic, associators, nucleus and center ([`algebra`]);
//! - tensors by standard components and tensor-product algebras ([`tensor`]);
//! - linear maps acting through sandwich products `x ↦ a x b`, their
//!   standard components, orbits and generator sets ([`linmap`]);
//! - polylinear maps and permutation tensors ([`polylinear`]);
//! - linear homomorphism and quaternion automorphism checks ([`homomorphism`]);
//! - a brute-force interchange-law checker for finite operation tables
//!   ([`omega`]);
//! - text formats and the `freealg` command line ([`io`], [`cli`]).

pub mod algebra;
pub mod cli;
pub mod fixtures;
pub mod homomorphism;
pub mod io;
pub mod linmap;
pub mod matrix;
pub mod omega;
pub mod polylinear;
pub mod scalar;
pub mod tensor;

pub use algebra::{AlgElem, Algebra, AlgebraDef, AlgebraError};
pub use linmap::LinMap;
pub use matrix::{Matrix, Rref, Solution, Subspace};
pub use polylinear::PolyForm;
pub use scalar::{arith, ArithOp, Field, Scalar, ScalarError};
pub use tensor::Tensor;
