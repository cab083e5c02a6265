use super::{Poly, Simplex};
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// `∫ ∏ u_i^{a_i}` over the reference simplex in `exps.len()` variables,
/// `(∏ a_i!) / (Σ a_i + d)!`.
pub fn reference_monomial_integral(exps: &[u32]) -> Rational {
    let d = exps.len() as u32;
    let total: u32 = exps.iter().sum();
    let num: Rational = exps.iter().map(|&a| Rational::factorial(a)).product();
    num / Rational::factorial(total + d)
}

/// Integral of `p` over the reference simplex in `p.dim()` variables.
pub fn integrate_reference(p: &Poly) -> Rational {
    let d = p.dim();
    p.terms().map(|(e, c)| c * &reference_monomial_integral(e.as_slice(d))).sum()
}

/// Exact `∫_t p dx` by affine pullback to the reference simplex.
pub fn integrate_simplex(p: &Poly, t: &Simplex) -> Result<Rational> {
    if p.dim() != t.dim() {
        return Err(Error::Dimension(format!(
            "polynomial in {} variables over a {}-simplex",
            p.dim(),
            t.dim()
        )));
    }
    let pulled = p.compose_affine(&t.reference_map())?;
    Ok(t.jacobian() * integrate_reference(&pulled))
}

/// `∫ p∘φ_j` over the reference `(d−1)`-simplex, where `φ_j` is
/// [`Simplex::facet_map`]. This is the surface integral over facet `j`
/// divided by `(d−1)!·|F_j|`.
pub fn integrate_facet_scaled(p: &Poly, t: &Simplex, j: usize) -> Result<Rational> {
    if p.dim() != t.dim() {
        return Err(Error::Dimension(format!(
            "polynomial in {} variables over a {}-simplex",
            p.dim(),
            t.dim()
        )));
    }
    let pulled = p.compose_affine(&t.facet_map(j)?)?;
    Ok(integrate_reference(&pulled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{Exponents, MultiPoly};
    use crate::simplexint::barycentric;

    fn m(d: usize, e: &[u32]) -> Poly {
        MultiPoly::monomial(d, Exponents::from_slice(e), Rational::one())
    }

    /// `∫_0^1 x^a ∫_0^{1-x} y^b dy dx = ∫_0^1 x^a (1-x)^{b+1}/(b+1) dx`,
    /// expanded binomially.
    fn iterated_triangle(a: u32, b: u32) -> Rational {
        let n = b + 1;
        let mut acc = Rational::zero();
        let mut binom = Rational::one();
        for k in 0..=n {
            let term = &binom / Rational::from(a + k + 1);
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            binom = binom * Rational::from(n - k) / Rational::from(k + 1);
        }
        acc / Rational::from(n)
    }

    #[test]
    fn closed_form_vs_iterated() {
        assert_eq!(integrate_simplex(&m(2, &[1, 1]), &Simplex::reference(2)).unwrap(), Rational::new(1, 24));
        assert_eq!(iterated_triangle(1, 1), Rational::new(1, 24));
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(reference_monomial_integral(&[a, b]), iterated_triangle(a, b), "x^{a} y^{b}");
            }
        }
    }

    #[test]
    fn constant_is_volume() {
        let t = Simplex::reference(3);
        assert_eq!(integrate_simplex(&MultiPoly::one(3), &t).unwrap(), Rational::new(1, 6));
    }

    #[test]
    fn bubble_moment() {
        let t = Simplex::new(
            2,
            vec![
                vec![Rational::new(1, 3), Rational::from(-2)],
                vec![Rational::from(4), Rational::new(1, 2)],
                vec![Rational::from(-1), Rational::from(3)],
            ],
        )
        .unwrap();
        let b = barycentric(&t);
        let bubble = b.monomial(&[1, 1, 1]);
        assert_eq!(integrate_simplex(&bubble, &t).unwrap(), t.volume() / Rational::from(60));
    }

    #[test]
    fn facet_examples() {
        let tri = Simplex::reference(2);
        let tet = Simplex::reference(3);
        for j in 0..3 {
            assert_eq!(integrate_facet_scaled(&MultiPoly::one(2), &tri, j).unwrap(), Rational::one());
        }
        for j in 0..4 {
            assert_eq!(integrate_facet_scaled(&MultiPoly::one(3), &tet, j).unwrap(), Rational::new(1, 2));
        }
        assert_eq!(integrate_facet_scaled(&m(2, &[1, 0]), &tri, 0).unwrap(), Rational::new(1, 2));
        assert_eq!(integrate_facet_scaled(&m(2, &[1, 1]), &tri, 0).unwrap(), Rational::new(1, 6));
    }

    #[test]
    fn facet_errors() {
        let tri = Simplex::reference(2);
        assert!(matches!(
            integrate_facet_scaled(&MultiPoly::one(2), &tri, 3),
            Err(Error::InvalidFacet { index: 3, dim: 2 })
        ));
        assert!(integrate_facet_scaled(&MultiPoly::one(3), &tri, 0).is_err());
        assert!(integrate_simplex(&MultiPoly::one(3), &tri).is_err());
    }
}
