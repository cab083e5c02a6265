//! Seeded samplers for simplices, complex triples and polynomials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::ComplexTriple;
use crate::exactnum::{GaussianRational, Rational};
use crate::multipoly::{Exponents, MultiPoly, VectorField};
use crate::simplexint::Simplex;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Numerator in `[−9, 9]`, denominator in `[1, 4]`.
    pub fn rational(&mut self) -> Rational {
        let n: i64 = self.rng.gen_range(-9..=9);
        let d: i64 = self.rng.gen_range(1..=4);
        Rational::new(n, d)
    }

    pub fn gaussian(&mut self) -> GaussianRational {
        GaussianRational::new(self.rational(), self.rational())
    }

    /// A non-degenerate `d`-simplex with small rational vertices.
    pub fn simplex(&mut self, d: usize) -> Simplex {
        loop {
            let vertices: Vec<Vec<Rational>> = (0..=d).map(|_| (0..d).map(|_| self.rational()).collect()).collect();
            if let Ok(t) = Simplex::new(d, vertices) {
                return t;
            }
        }
    }

    /// Three pairwise distinct, non-collinear points.
    pub fn triple(&mut self) -> ComplexTriple {
        loop {
            let zt = ComplexTriple::new(self.gaussian(), self.gaussian(), self.gaussian());
            let a = &zt.z2 - &zt.z1;
            let b = &zt.z3 - &zt.z1;
            // Im(conj(a)·b) is twice the signed area.
            if !(&a.conj() * &b).im.is_zero() {
                return zt;
            }
        }
    }

    /// Polynomial of degree at most `max_deg` with roughly half its
    /// monomials present.
    pub fn poly(&mut self, dim: usize, max_deg: u32) -> MultiPoly<Rational> {
        let mut p = MultiPoly::zero(dim);
        for e in Exponents::up_to(dim, max_deg) {
            if self.rng.gen_bool(0.5) {
                p.add_term(e, &self.rational());
            }
        }
        p
    }

    pub fn field(&mut self, dim: usize, max_deg: u32) -> VectorField {
        VectorField::new((0..dim).map(|_| self.poly(dim, max_deg)).collect()).expect("matching dims")
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
