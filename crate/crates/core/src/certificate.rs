//! The complex-analytic determinant certificate for planar unisolvence.
//!
//! For vertices `Z = (z1, z2, z3)` the bilinear form
//! `q_Z(P, (Q1, Q2)) = ∫_{[z1,z2]} P Q1 dz + ∫_{[z1,z3]} P Q2 dz` on
//! `C_{2k−1} × (C_{k−1} × C_{k−1})` has the `2k × 2k` matrix `M(Z)` with
//! entries `(z2^{i+j−1} − z1^{i+j−1}) / (i+j−1)` (left block) and the same
//! with `z3` (right block). Its determinant has the closed form
//! `α (z1−z2)^{k²} (z2−z3)^{k²} (z3−z1)^{k²}`, which this module checks by
//! exact elimination.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{GaussianRational, Matrix, Rational};
use crate::multipoly::{complexify, VectorField};
use crate::simplexint::Simplex;

type G = GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexTriple {
    pub z1: G,
    pub z2: G,
    pub z3: G,
}

impl ComplexTriple {
    pub fn new(z1: G, z2: G, z3: G) -> Self {
        ComplexTriple { z1, z2, z3 }
    }

    /// Vertex `i` of a triangle becomes `x_i + i·y_i`.
    pub fn from_triangle(t: &Simplex) -> Result<Self> {
        if t.dim() != 2 {
            return Err(Error::Dimension(format!("complex coordinates of a {}-simplex", t.dim())));
        }
        let z = |i: usize| G::new(t.vertex(i)[0].clone(), t.vertex(i)[1].clone());
        Ok(ComplexTriple { z1: z(0), z2: z(1), z3: z(2) })
    }

    pub fn pairwise_distinct(&self) -> bool {
        self.z1 != self.z2 && self.z2 != self.z3 && self.z1 != self.z3
    }

    pub fn translate(&self, c: &G) -> Self {
        ComplexTriple { z1: &self.z1 + c, z2: &self.z2 + c, z3: &self.z3 + c }
    }

    /// `(z3, z2, z1)`.
    pub fn reversed(&self) -> Self {
        ComplexTriple { z1: self.z3.clone(), z2: self.z2.clone(), z3: self.z1.clone() }
    }
}

/// `∫ Σ a_r z^r dz` along the oriented segment from `z1` to `z2`.
pub fn segment_integral(coeffs: &[G], z1: &G, z2: &G) -> G {
    let mut acc = G::zero();
    let (mut p1, mut p2) = (z1.clone(), z2.clone());
    for (r, a) in coeffs.iter().enumerate() {
        if !a.is_zero() {
            let diff = (&p2 - &p1).scale(&Rational::new(1, r as i64 + 1));
            acc += &(a * &diff);
        }
        p1 = &p1 * z1;
        p2 = &p2 * z2;
    }
    acc
}

/// The `2k × 2k` matrix of `q_Z` in the monomial bases, from the closed
/// entry formula.
pub fn build_m(k: u32, zt: &ComplexTriple) -> Matrix<G> {
    let k = k as usize;
    Matrix::from_fn(2 * k, 2 * k, |i, j| {
        let (end, col) = if j < k { (&zt.z2, j) } else { (&zt.z3, j - k) };
        let p = (i + col + 1) as u32;
        (&end.pow(p) - &zt.z1.pow(p)).scale(&Rational::new(1, p as i64))
    })
}

/// `(∏_{i<k} i!)^5 / ∏_{i<k} (2k+i)!`.
pub fn alpha(k: u32) -> Rational {
    let num: Rational = (0..k).map(Rational::factorial).product();
    let den: Rational = (0..k).map(|i| Rational::factorial(2 * k + i)).product();
    num.pow(5) / den
}

/// The matrix `(1 / (a_i + b_j))`.
pub fn cauchy_matrix(a: &[Rational], b: &[Rational]) -> Result<Matrix<Rational>> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!("{} row and {} column parameters", a.len(), b.len())));
    }
    let mut rows = Vec::with_capacity(a.len());
    for (i, ai) in a.iter().enumerate() {
        let mut row = Vec::with_capacity(b.len());
        for (j, bj) in b.iter().enumerate() {
            let s = ai + bj;
            if s.is_zero() {
                return Err(Error::Pole { i, j });
            }
            row.push(s.recip());
        }
        rows.push(row);
    }
    Matrix::from_rows(rows)
}

/// Closed form `∏_{i<j}(a_i−a_j)(b_i−b_j) / ∏_{i,j}(a_i+b_j)`.
pub fn cauchy_det(a: &[Rational], b: &[Rational]) -> Result<Rational> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!("{} row and {} column parameters", a.len(), b.len())));
    }
    let n = a.len();
    let mut den = Rational::one();
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let s = ai + bj;
            if s.is_zero() {
                return Err(Error::Pole { i, j });
            }
            den *= s;
        }
    }
    let mut num = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= (&a[i] - &a[j]) * (&b[i] - &b[j]);
        }
    }
    Ok(num / den)
}

/// `α (z1−z2)^{k²} (z2−z3)^{k²} (z3−z1)^{k²}`.
pub fn closed_form_det(k: u32, zt: &ComplexTriple) -> G {
    let e = k * k;
    let prod = &(&(&zt.z1 - &zt.z2).pow(e) * &(&zt.z2 - &zt.z3).pow(e)) * &(&zt.z3 - &zt.z1).pow(e);
    prod.scale(&alpha(k))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateResult {
    pub k: u32,
    pub triple: ComplexTriple,
    pub det_elimination: G,
    pub det_closed_form: G,
    pub alpha: Rational,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Compares the elimination determinant of `M(Z)` with the closed form.
pub fn verify_certificate(k: u32, zt: &ComplexTriple) -> CertificateResult {
    let det_elimination = build_m(k, zt).det().expect("square");
    let det_closed_form = closed_form_det(k, zt);
    CertificateResult {
        k,
        triple: zt.clone(),
        matches: det_elimination == det_closed_form,
        det_elimination,
        det_closed_form,
        alpha: alpha(k),
    }
}

/// Values `q_Z(P_v, b)` for the `2k` basis pairs `b = (z^j, 0)` then
/// `(0, z^j)`, `j < k`, where `P_v = v₁ − i·v₂` must be holomorphic of
/// degree at most `2k − 1`.
pub fn certificate_bridge(v: &VectorField, zt: &ComplexTriple, k: u32) -> Result<Vec<G>> {
    if v.dim() != 2 {
        return Err(Error::Dimension(format!("bridge needs a planar field, got dimension {}", v.dim())));
    }
    let pv = complexify(v);
    let coeffs = pv
        .holomorphic_coeffs()
        .ok_or_else(|| Error::Contract("P_v has conjugate terms: div v or curl v is nonzero".into()))?;
    if coeffs.len() > 2 * k as usize {
        return Err(Error::Contract(format!(
            "P_v has degree {} above 2k - 1 = {}",
            coeffs.len() - 1,
            2 * k - 1
        )));
    }
    let shifted = |j: usize| -> Vec<G> {
        let mut c = vec![G::zero(); j];
        c.extend(coeffs.iter().cloned());
        c
    };
    let mut out = Vec::with_capacity(2 * k as usize);
    for end in [&zt.z2, &zt.z3] {
        for j in 0..k as usize {
            out.push(segment_integral(&shifted(j), &zt.z1, end));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{Exponents, MultiPoly};

    fn g(re: i64, im: i64) -> G {
        G::from_ints(re, im)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn triple(a: G, b: G, c: G) -> ComplexTriple {
        ComplexTriple::new(a, b, c)
    }

    #[test]
    fn segment_examples() {
        assert_eq!(segment_integral(&[G::one()], &G::zero(), &g(1, 1)), g(1, 1));
        assert_eq!(segment_integral(&[G::zero(), G::one()], &G::zero(), &G::one()), G::real(q(1, 2)));
        assert_eq!(segment_integral(&[G::zero(), G::zero(), G::one()], &g(1, 0), &g(2, 0)), G::real(q(7, 3)));
    }

    #[test]
    fn m_for_k1() {
        let m = build_m(1, &triple(g(0, 0), g(2, 0), g(1, 0)));
        let expect = Matrix::from_rows(vec![vec![g(2, 0), g(1, 0)], vec![g(2, 0), G::real(q(1, 2))]]).unwrap();
        assert_eq!(m, expect);
    }

    #[test]
    fn m_for_k2_matches_displayed_form() {
        // M(z1, z2, z3) for k = 2, written out entry by entry.
        let (z1, z2, z3) = (g(0, 0), g(1, 0), g(2, 0));
        let e = |z: &G, p: u32| (&z.pow(p) - &z1.pow(p)).scale(&q(1, p as i64));
        let expect = Matrix::from_rows(vec![
            vec![e(&z2, 1), e(&z2, 2), e(&z3, 1), e(&z3, 2)],
            vec![e(&z2, 2), e(&z2, 3), e(&z3, 2), e(&z3, 3)],
            vec![e(&z2, 3), e(&z2, 4), e(&z3, 3), e(&z3, 4)],
            vec![e(&z2, 4), e(&z2, 5), e(&z3, 4), e(&z3, 5)],
        ])
        .unwrap();
        assert_eq!(build_m(2, &triple(z1.clone(), z2.clone(), z3.clone())), expect);
        assert_eq!(expect[(1, 3)], G::real(q(8, 3)));
    }

    #[test]
    fn coincident_points_zero_left_block() {
        let m = build_m(2, &triple(G::zero(), G::zero(), g(1, 1)));
        assert!(m.column(0).iter().all(G::is_zero));
        assert!(m.column(1).iter().all(G::is_zero));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(1), q(1, 2));
        assert_eq!(alpha(2), q(1, 2880));
        assert_eq!(alpha(3), Rational::new(32, 720i64 * 5040 * 40320));
        assert!(alpha(6).is_positive());
    }

    #[test]
    fn cauchy_examples() {
        let r = |v: &[i64]| v.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
        assert_eq!(cauchy_det(&r(&[1]), &r(&[0])).unwrap(), Rational::one());
        assert_eq!(cauchy_det(&r(&[1, 2]), &r(&[0, 1])).unwrap(), q(1, 12));
        assert_eq!(cauchy_det(&r(&[1, 2]), &r(&[2, 3])).unwrap(), q(1, 240));
        assert_eq!(cauchy_matrix(&r(&[1, 2]), &r(&[2, 3])).unwrap().det().unwrap(), q(1, 240));
        assert!(matches!(cauchy_det(&r(&[1, 2]), &r(&[0, -2])), Err(Error::Pole { i: 1, j: 1 })));
        assert!(matches!(cauchy_matrix(&r(&[1]), &r(&[-1])), Err(Error::Pole { i: 0, j: 0 })));
    }

    #[test]
    fn certificate_examples() {
        let r = verify_certificate(1, &triple(g(0, 0), g(2, 0), g(1, 0)));
        assert!(r.matches);
        assert_eq!(r.det_elimination, g(-1, 0));

        for k in 1..=3 {
            let r = verify_certificate(k, &triple(g(1, 1), g(1, 1), g(3, -2)));
            assert!(r.matches);
            assert!(r.det_elimination.is_zero());
        }

        let r = verify_certificate(2, &triple(g(0, 0), g(2, 0), g(1, 0)));
        assert!(r.matches);
        assert_eq!(r.det_elimination, G::real(q(1, 180)));
    }

    #[test]
    fn bridge_examples() {
        let zt = triple(g(0, 0), g(1, 0), g(0, 1));
        assert_eq!(certificate_bridge(&VectorField::zero(2), &zt, 2).unwrap(), vec![G::zero(); 4]);
        let e1 = VectorField::new(vec![MultiPoly::one(2), MultiPoly::zero(2)]).unwrap();
        assert_eq!(certificate_bridge(&e1, &zt, 1).unwrap(), vec![g(1, 0), g(0, 1)]);
    }

    #[test]
    fn bridge_contract() {
        let zt = triple(g(0, 0), g(1, 0), g(0, 1));
        let x = MultiPoly::monomial(2, Exponents([1, 0, 0]), Rational::one());
        let v = VectorField::new(vec![x, MultiPoly::zero(2)]).unwrap();
        assert!(matches!(certificate_bridge(&v, &zt, 2), Err(Error::Contract(_))));
        // (x^2 - y^2, -2xy) is z^2: fine for k = 2, too high for k = 1.
        let sq = VectorField::new(vec![
            MultiPoly::from_terms(2, [(Exponents([2, 0, 0]), q(1, 1)), (Exponents([0, 2, 0]), q(-1, 1))]),
            MultiPoly::monomial(2, Exponents([1, 1, 0]), q(-2, 1)),
        ])
        .unwrap();
        assert!(certificate_bridge(&sq, &zt, 2).is_ok());
        assert!(matches!(certificate_bridge(&sq, &zt, 1), Err(Error::Contract(_))));
    }

    #[test]
    fn triangle_coordinates() {
        let t = Simplex::reference(2);
        let zt = ComplexTriple::from_triangle(&t).unwrap();
        assert_eq!(zt, triple(g(0, 0), g(1, 0), g(0, 1)));
        assert!(ComplexTriple::from_triangle(&Simplex::reference(3)).is_err());
    }
}
