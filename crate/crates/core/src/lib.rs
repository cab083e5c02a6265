//! Exact verification toolkit for the nonconforming vector elements
//! `P_{k,d} = [P_k]^d ⊕ ∇H_{k+2} ⊕ … ⊕ ∇H_{2k}` with interior and facet
//! moment degrees of freedom.
//!
//! Everything is computed over the rationals (or Gaussian rationals), so
//! every verdict produced here is exact: a determinant is either zero or it
//! is not.

pub mod certificate;
pub mod dofsys;
pub mod error;
pub mod exactnum;
pub mod femspace;
pub mod multipoly;
pub mod random;
pub mod simplexint;

pub use error::{Error, Result};
pub use exactnum::{Field, GaussianRational, Matrix, Rational};
pub use multipoly::{Exponents, MultiPoly, VectorField, ZPoly};
pub use simplexint::Simplex;

/// JSON schema tag carried by every exported document.
pub const SCHEMA: &str = "unisolv/1";
