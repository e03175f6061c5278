//! Exact computations for parafermion vertex operator algebras: the fusion
//! ring of `K(sl₂,k)`, its σ-type orbifold subring, integral lattice
//! machinery, lifts to the central extension `L̂`, code-built lattices and
//! the representation theory of `U_{5A}`.
//!
//! All arithmetic is exact. The linear algebra is generic over an integer
//! backend ([`ExactInt`]); the aliases below pick arbitrary precision.

pub mod central_ext;
pub mod code;
pub mod error;
pub mod f2;
pub mod fusion;
pub mod fusion_vector;
pub mod golden;
pub mod matrix;
pub mod normal_form;
pub mod lattice;
pub mod orbifold;
pub mod report;
pub mod scalar;
pub mod u5a;

pub use error::{Error, Result};
pub use fusion::{IrrLabel, TildeLabel};
pub use fusion_vector::FusionVector;
pub use report::Report;
pub use scalar::{ExactInt, Q};

/// Arbitrary-precision integers.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
