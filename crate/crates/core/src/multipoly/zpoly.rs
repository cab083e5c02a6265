use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::VectorField;
use crate::exactnum::{GaussianRational, Rational};

/// `Σ c_{m,n} z^m z̄^n` with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZPoly {
    coeffs: BTreeMap<(u32, u32), GaussianRational>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = ZPoly::zero();
        p.add_term(0, 0, &c);
        p
    }

    pub fn z() -> Self {
        let mut p = ZPoly::zero();
        p.add_term(1, 0, &GaussianRational::one());
        p
    }

    pub fn zbar() -> Self {
        let mut p = ZPoly::zero();
        p.add_term(0, 1, &GaussianRational::one());
        p
    }

    /// `Σ a_r z^r` from a dense coefficient list.
    pub fn holomorphic(coeffs: &[GaussianRational]) -> Self {
        let mut p = ZPoly::zero();
        for (r, c) in coeffs.iter().enumerate() {
            p.add_term(r as u32, 0, c);
        }
        p
    }

    pub fn add_term(&mut self, m: u32, n: u32, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((m, n)).or_insert_with(GaussianRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(m, n));
        }
    }

    pub fn coeff(&self, m: u32, n: u32) -> GaussianRational {
        self.coeffs.get(&(m, n)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when no `z̄` appears.
    pub fn is_holomorphic(&self) -> bool {
        self.coeffs.keys().all(|&(_, n)| n == 0)
    }

    /// Total degree in `(z, z̄)`; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(m, n)| m + n).max()
    }

    /// Dense coefficients `a_0, …, a_deg` of a holomorphic polynomial, or
    /// `None` if some `z̄` term is present. Zero maps to an empty list.
    pub fn holomorphic_coeffs(&self) -> Option<Vec<GaussianRational>> {
        if !self.is_holomorphic() {
            return None;
        }
        let len = self.degree().map_or(0, |d| d as usize + 1);
        let mut out = vec![GaussianRational::zero(); len];
        for (&(m, _), c) in &self.coeffs {
            out[m as usize] = c.clone();
        }
        Some(out)
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (&(m, n), c) in &other.coeffs {
            out.add_term(m, n, c);
        }
        out
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero();
        for (&(m1, n1), a) in &self.coeffs {
            for (&(m2, n2), b) in &other.coeffs {
                out.add_term(m1 + m2, n1 + n2, &(a * b));
            }
        }
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> ZPoly {
        let mut out = ZPoly::zero();
        for (&(m, n), c) in &self.coeffs {
            out.add_term(m, n, &(c * s));
        }
        out
    }
}

/// Rewrites `v₁ − i·v₂` in the `z`, `z̄` basis via `x = (z + z̄)/2` and
/// `y = (z − z̄)/(2i)`. Panics unless `v` is planar.
pub fn complexify(v: &VectorField) -> ZPoly {
    assert_eq!(v.dim(), 2, "complexify needs a planar field");
    let half = GaussianRational::real(Rational::new(1, 2));
    let x = ZPoly::z().add(&ZPoly::zbar()).scale(&half);
    // 1/(2i) = -i/2
    let minus_half_i = GaussianRational::new(Rational::zero(), Rational::new(-1, 2));
    let y = ZPoly::z().add(&ZPoly::zbar().scale(&-GaussianRational::one())).scale(&minus_half_i);

    let max_deg = v.degree().unwrap_or(0) as usize;
    let powers = |base: &ZPoly| {
        let mut out = vec![ZPoly::constant(GaussianRational::one())];
        for k in 1..=max_deg {
            out.push(out[k - 1].mul(base));
        }
        out
    };
    let (xp, yp) = (powers(&x), powers(&y));

    let mut out = ZPoly::zero();
    let weights = [GaussianRational::one(), -GaussianRational::i()];
    for (comp, w) in v.components().iter().zip(&weights) {
        for (e, c) in comp.terms() {
            let coeff = w.scale(c);
            let term = xp[e.0[0] as usize].mul(&yp[e.0[1] as usize]).scale(&coeff);
            out = out.add(&term);
        }
    }
    out
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.coeffs.iter().map(|(&(m, n), c)| format!("({c}) z^{m} zbar^{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct ZTerm {
    z: u32,
    zbar: u32,
    coeff: GaussianRational,
}

impl Serialize for ZPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<ZTerm> = self
            .coeffs
            .iter()
            .map(|(&(m, n), c)| ZTerm { z: m, zbar: n, coeff: c.clone() })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ZPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms: Vec<ZTerm> = Vec::deserialize(deserializer)?;
        let mut p = ZPoly::zero();
        for t in terms {
            p.add_term(t.z, t.zbar, &t.coeff);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{curl2d, divergence, gradient, Exponents, MultiPoly};

    type Poly = MultiPoly<Rational>;

    fn m(e: &[u32], n: i64) -> Poly {
        Poly::monomial(2, Exponents::from_slice(e), Rational::from(n))
    }

    fn field(a: Poly, b: Poly) -> VectorField {
        VectorField::new(vec![a, b]).unwrap()
    }

    #[test]
    fn constant_field() {
        let p = complexify(&field(m(&[0, 0], 1), Poly::zero(2)));
        assert_eq!(p, ZPoly::constant(GaussianRational::one()));
    }

    #[test]
    fn swap_field_is_minus_i_z() {
        let p = complexify(&field(m(&[0, 1], 1), m(&[1, 0], 1)));
        let mut expect = ZPoly::zero();
        expect.add_term(1, 0, &GaussianRational::from_ints(0, -1));
        assert_eq!(p, expect);
    }

    #[test]
    fn gradient_of_re_z3() {
        let h = &m(&[3, 0], 1) - &m(&[1, 2], 3);
        let p = complexify(&gradient(&h));
        let mut expect = ZPoly::zero();
        expect.add_term(2, 0, &GaussianRational::from_ints(3, 0));
        assert_eq!(p, expect);
    }

    #[test]
    fn non_solenoidal_field_is_not_holomorphic() {
        let v = field(m(&[1, 0], 1), Poly::zero(2));
        assert!(!divergence(&v).is_zero());
        assert!(!complexify(&v).is_holomorphic());
        let w = field(m(&[0, 1], 1), Poly::zero(2));
        assert!(!curl2d(&w).unwrap().is_zero());
        assert!(!complexify(&w).is_holomorphic());
    }

    #[test]
    fn dense_coeffs() {
        let p = ZPoly::holomorphic(&[GaussianRational::one(), GaussianRational::zero(), GaussianRational::i()]);
        assert_eq!(p.holomorphic_coeffs().unwrap().len(), 3);
        assert_eq!(ZPoly::zero().holomorphic_coeffs().unwrap(), vec![]);
        assert!(ZPoly::zbar().holomorphic_coeffs().is_none());
    }
}
