//! Residuals of the integration-by-parts identities
//!
//! ```text
//! ∫_T (∇·v) q      = ∫_∂T (n·v) q    − ∫_T v·∇q
//! ∫_T (∇×v) q      = ∫_∂T (n×v) q    − ∫_T (v₂ ∂ₓq − v₁ ∂ᵧq)      (planar)
//! ∫_T (∇×v)·q      = ∫_∂T (n×v)·q    + ∫_T v·(∇×q)                 (3D)
//! ```
//!
//! Facet terms use the area-weighted outward normal `|F_j| n_j`, which is
//! rational, together with the scaled facet integrals, so every residual is
//! an exact rational that vanishes iff the identity holds.

use super::{integrate_facet_scaled, integrate_simplex, Poly, Simplex};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::multipoly::{curl2d, curl3d, divergence, gradient, VectorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreenMode {
    Div,
    Curl,
}

/// `|F_j| n_j`: outward normal of facet `j` scaled by the facet measure,
/// assembled from edge vectors (rotated edge in 2D, half cross product in
/// 3D) and oriented away from the opposite vertex.
pub fn facet_area_normal(t: &Simplex, j: usize) -> Result<Vec<Rational>> {
    let idx = t.facet_vertices(j)?;
    let sub = |a: &[Rational], b: &[Rational]| -> Vec<Rational> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let base = t.vertex(idx[0]);
    let n = match t.dim() {
        2 => {
            let e = sub(t.vertex(idx[1]), base);
            vec![e[1].clone(), -&e[0]]
        }
        3 => {
            let a = sub(t.vertex(idx[1]), base);
            let b = sub(t.vertex(idx[2]), base);
            let half = Rational::new(1, 2);
            vec![
                (&a[1] * &b[2] - &a[2] * &b[1]) * &half,
                (&a[2] * &b[0] - &a[0] * &b[2]) * &half,
                (&a[0] * &b[1] - &a[1] * &b[0]) * &half,
            ]
        }
        d => return Err(Error::Dimension(format!("no facet normals in dimension {d}"))),
    };
    let away = sub(base, t.vertex(j));
    let dot: Rational = n.iter().zip(&away).map(|(x, y)| x * y).sum();
    Ok(if dot.is_negative() { n.iter().map(|x| -x).collect() } else { n })
}

fn check_dims(v: &VectorField, q_dim: usize, t: &Simplex) -> Result<()> {
    if v.dim() != t.dim() || q_dim != t.dim() {
        return Err(Error::Dimension(format!(
            "field of dimension {}, test function in {} variables, {}-simplex",
            v.dim(),
            q_dim,
            t.dim()
        )));
    }
    Ok(())
}

/// `Σ_j ∫_{F_j} f_j(N_j) ds`, where the integrand is linear in the facet's
/// area-weighted normal `N_j` and built by `integrand`.
fn boundary_term(t: &Simplex, integrand: impl Fn(&[Rational]) -> Result<Poly>) -> Result<Rational> {
    let scale = Rational::factorial(t.dim() as u32 - 1);
    let mut acc = Rational::zero();
    for j in 0..=t.dim() {
        let n = facet_area_normal(t, j)?;
        acc += integrate_facet_scaled(&integrand(&n)?, t, j)?;
    }
    Ok(acc * scale)
}

/// Left side minus right side of the divergence or planar curl identity
/// for a vector field `v` and scalar test polynomial `q`.
pub fn green_residual(v: &VectorField, q: &Poly, t: &Simplex, mode: GreenMode) -> Result<Rational> {
    check_dims(v, q.dim(), t)?;
    let d = t.dim();
    match mode {
        GreenMode::Div => {
            let lhs = integrate_simplex(&(&divergence(v) * q), t)?;
            let boundary = boundary_term(t, |n| {
                let mut acc = Poly::zero(d);
                for (ni, vi) in n.iter().zip(v.components()) {
                    acc = &acc + &vi.scale(ni);
                }
                Ok(&acc * q)
            })?;
            let interior = integrate_simplex(&v.dot(&gradient(q))?, t)?;
            Ok(lhs - (boundary - interior))
        }
        GreenMode::Curl => {
            if d != 2 {
                return Err(Error::Dimension(
                    "scalar curl identity is planar; use green_residual_curl3d".into(),
                ));
            }
            let (v1, v2) = (v.component(0), v.component(1));
            let lhs = integrate_simplex(&(&curl2d(v)? * q), t)?;
            let boundary = boundary_term(t, |n| Ok(&(&v2.scale(&n[0]) - &v1.scale(&n[1])) * q))?;
            let interior =
                integrate_simplex(&(&(v2 * &q.differentiate(0)) - &(v1 * &q.differentiate(1))), t)?;
            Ok(lhs - (boundary - interior))
        }
    }
}

/// Residual of `∫_T (∇×v)·q = ∫_∂T (n×v)·q + ∫_T v·(∇×q)` in three
/// dimensions with a vector test field `q`.
pub fn green_residual_curl3d(v: &VectorField, q: &VectorField, t: &Simplex) -> Result<Rational> {
    check_dims(v, q.dim(), t)?;
    if t.dim() != 3 {
        return Err(Error::Dimension("curl3d identity needs a tetrahedron".into()));
    }
    let lhs = integrate_simplex(&curl3d(v)?.dot(q)?, t)?;
    let vxq = v.cross(q)?;
    let boundary = boundary_term(t, |n| {
        let mut acc = Poly::zero(3);
        for (ni, c) in n.iter().zip(vxq.components()) {
            acc = &acc + &c.scale(ni);
        }
        Ok(acc)
    })?;
    let interior = integrate_simplex(&v.dot(&curl3d(q)?)?, t)?;
    Ok(lhs - (boundary + interior))
}
