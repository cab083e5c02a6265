//! Sparse multivariate polynomials with exact coefficients, vector fields,
//! and the complex `z`/`z̄` representation of planar fields.

mod poly;
mod vector;
mod zpoly;

pub use poly::{poly_arith, AffineMap, Exponents, MultiPoly, PolyOp, MAX_VARS};
pub use vector::{curl2d, curl3d, divergence, gradient, laplacian, VectorField};
pub use zpoly::{complexify, ZPoly};
