//! Simplex geometry and exact integration of polynomials over simplices
//! and their facets.

mod green;
mod integrate;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Rational};
use crate::multipoly::{AffineMap, Exponents, MultiPoly};

pub use green::{facet_area_normal, green_residual, green_residual_curl3d, GreenMode};
pub use integrate::{
    integrate_facet_scaled, integrate_reference, integrate_simplex, reference_monomial_integral,
};

type Poly = MultiPoly<Rational>;

/// A nondegenerate triangle (`dim = 2`) or tetrahedron (`dim = 3`) with
/// rational vertices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Simplex {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
}

#[derive(Deserialize)]
struct SimplexRecord {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = SimplexRecord::deserialize(deserializer)?;
        Simplex::new(r.dim, r.vertices).map_err(serde::de::Error::custom)
    }
}

impl Simplex {
    /// Validates shape and rejects degenerate vertex sets.
    pub fn new(dim: usize, vertices: Vec<Vec<Rational>>) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(Error::Dimension(format!("simplices of dimension {dim} are not supported")));
        }
        if vertices.len() != dim + 1 {
            return Err(Error::Dimension(format!(
                "a {dim}-simplex needs {} vertices, got {}",
                dim + 1,
                vertices.len()
            )));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(Error::Dimension(format!("vertex with {} coordinates in dimension {dim}", v.len())));
        }
        let s = Simplex { dim, vertices };
        if s.edge_matrix().det()?.is_zero() {
            return Err(Error::Geometry("vertices are affinely dependent".into()));
        }
        Ok(s)
    }

    pub fn from_ints(dim: usize, vertices: &[&[i64]]) -> Result<Self> {
        Self::new(dim, vertices.iter().map(|v| v.iter().map(|&x| Rational::from(x)).collect()).collect())
    }

    /// The unit simplex: origin plus the standard basis vectors.
    pub fn reference(dim: usize) -> Self {
        let mut vertices = vec![vec![Rational::zero(); dim]];
        for i in 0..dim {
            let mut v = vec![Rational::zero(); dim];
            v[i] = Rational::one();
            vertices.push(v);
        }
        Simplex::new(dim, vertices).expect("reference simplex is nondegenerate")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &[Rational] {
        &self.vertices[i]
    }

    /// `dim × dim` matrix whose column `j` is `v_{j+1} − v_0`.
    pub fn edge_matrix(&self) -> Matrix<Rational> {
        Matrix::from_fn(self.dim, self.dim, |i, j| &self.vertices[j + 1][i] - &self.vertices[0][i])
    }

    /// `x = v_0 + E·u`, mapping the reference simplex onto this one.
    pub fn reference_map(&self) -> AffineMap {
        AffineMap { linear: self.edge_matrix(), shift: self.vertices[0].clone() }
    }

    /// `|det E|`, the Jacobian of [`Simplex::reference_map`].
    pub fn jacobian(&self) -> Rational {
        self.edge_matrix().det().expect("square").abs()
    }

    pub fn volume(&self) -> Rational {
        self.jacobian() / Rational::factorial(self.dim as u32)
    }

    /// Vertex indices of facet `j` (every vertex but `j`), increasing.
    pub fn facet_vertices(&self, j: usize) -> Result<Vec<usize>> {
        if j > self.dim {
            return Err(Error::InvalidFacet { index: j, dim: self.dim });
        }
        Ok((0..=self.dim).filter(|&i| i != j).collect())
    }

    /// Affine map from the reference `(dim−1)`-simplex onto facet `j`,
    /// sending reference vertices to the facet's vertices in increasing
    /// index order.
    pub fn facet_map(&self, j: usize) -> Result<AffineMap> {
        let idx = self.facet_vertices(j)?;
        let base = &self.vertices[idx[0]];
        let linear = Matrix::from_fn(self.dim, self.dim - 1, |r, c| &self.vertices[idx[c + 1]][r] - &base[r]);
        AffineMap::new(linear, base.clone())
    }

    /// Applies a vertex permutation: vertex `i` of the result is
    /// `self.vertex(perm[i])`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Simplex> {
        Simplex::new(self.dim, perm.iter().map(|&p| self.vertices[p].clone()).collect())
    }
}

/// `|det E| / d!` for an arbitrary vertex list; zero when degenerate.
pub fn simplex_volume(vertices: &[Vec<Rational>]) -> Rational {
    let d = vertices.len().saturating_sub(1);
    if d == 0 || vertices.iter().any(|v| v.len() != d) {
        return Rational::zero();
    }
    let e = Matrix::from_fn(d, d, |i, j| &vertices[j + 1][i] - &vertices[0][i]);
    e.det().expect("square").abs() / Rational::factorial(d as u32)
}

/// Barycentric coordinate functions `λ_0, …, λ_d` of a simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct BarycentricForms {
    pub lambdas: Vec<Poly>,
}

impl BarycentricForms {
    /// `∏ λ_i^{α_i}`.
    pub fn monomial(&self, alpha: &[u32]) -> Poly {
        let dim = self.lambdas[0].dim();
        let mut acc = Poly::one(dim);
        for (l, &a) in self.lambdas.iter().zip(alpha) {
            if a > 0 {
                acc = &acc * &l.pow(a);
            }
        }
        acc
    }
}

/// Solves `[v_0 … v_d; 1 … 1] λ = [x; 1]` for the affine forms `λ_i`.
pub fn barycentric(t: &Simplex) -> BarycentricForms {
    let d = t.dim;
    let a = Matrix::from_fn(d + 1, d + 1, |r, c| if r < d { t.vertices[c][r].clone() } else { Rational::one() });
    let inv = a.inverse().expect("nondegenerate simplex");
    let lambdas = (0..=d)
        .map(|i| {
            let mut terms = vec![(Exponents::default(), inv[(i, d)].clone())];
            for r in 0..d {
                let mut e = [0; 3];
                e[r] = 1;
                terms.push((Exponents(e), inv[(i, r)].clone()));
            }
            Poly::from_terms(d, terms)
        })
        .collect();
    BarycentricForms { lambdas }
}
