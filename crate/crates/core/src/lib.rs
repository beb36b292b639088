//! Tensor categories of projective modules reconstructed from finite data:
//! a fusion ring, a graded algebra, a tensor-product map on matrices and an
//! associator, together with the checks that make them a tensor category.
//!
//! Everything is generic over an exact [`Field`]; [`Rational`] and [`Fp`]
//! are the provided scalar types.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod associator;
pub mod blockmat;
pub mod category;
pub mod equivalence;
pub mod error;
pub mod fusion;
pub mod h4;
pub mod io;
pub mod linalg;
pub mod phimap;
pub mod report;

pub use category::Quadruple;
pub use error::{Error, Result};
pub use fusion::{FusionRing, Obj};
pub use linalg::{DenseMatrix, Field, FieldKind, Fp, Rational};
pub use report::Report;

pub type RationalQuadruple = Quadruple<Rational>;
pub type PrimeQuadruple = Quadruple<Fp>;
pub type RationalBlockMatrix = blockmat::BlockMatrix<Rational>;
pub type PrimeBlockMatrix = blockmat::BlockMatrix<Fp>;
