use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix, Rational};

/// Largest number of variables a polynomial may carry.
pub const MAX_VARS: usize = 3;

/// Exponent vector. Slots past the owning polynomial's `dim` are zero.
///
/// Ordered graded-lexicographically: lower total degree first, and within a
/// degree the larger power of an earlier variable first (`x² < xy < y²`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Exponents(pub [u32; MAX_VARS]);

impl Exponents {
    pub fn from_slice(e: &[u32]) -> Self {
        let mut a = [0; MAX_VARS];
        a[..e.len()].copy_from_slice(e);
        Exponents(a)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self, dim: usize) -> &[u32] {
        &self.0[..dim]
    }

    /// All exponent vectors in `dim` variables of total degree exactly
    /// `degree`, in graded-lex order.
    pub fn homogeneous(dim: usize, degree: u32) -> Vec<Exponents> {
        let mut out = Vec::new();
        let mut cur = [0u32; MAX_VARS];
        fill(dim, 0, degree, &mut cur, &mut out);
        out
    }

    /// All exponent vectors in `dim` variables of total degree at most
    /// `degree`, in graded-lex order.
    pub fn up_to(dim: usize, degree: u32) -> Vec<Exponents> {
        (0..=degree).flat_map(|m| Self::homogeneous(dim, m)).collect()
    }
}

fn fill(dim: usize, slot: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Exponents>) {
    if dim == 0 {
        if left == 0 {
            out.push(Exponents(*cur));
        }
        return;
    }
    if slot + 1 == dim {
        cur[slot] = left;
        out.push(Exponents(*cur));
        cur[slot] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[slot] = e;
        fill(dim, slot + 1, left - e, cur, out);
    }
    cur[slot] = 0;
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse polynomial in `dim` variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<C> {
    dim: usize,
    terms: BTreeMap<Exponents, C>,
}

/// Arithmetic operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Dimension-checked `p op q`.
pub fn poly_arith<C: Field>(p: &MultiPoly<C>, q: &MultiPoly<C>, op: PolyOp) -> Result<MultiPoly<C>> {
    if p.dim != q.dim {
        return Err(Error::Dimension(format!(
            "polynomials in {} and {} variables",
            p.dim, q.dim
        )));
    }
    Ok(match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
    })
}

/// Affine substitution `x = A·u + b`, with `A` of shape
/// `source_dim × target_dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap {
    pub linear: Matrix<Rational>,
    pub shift: Vec<Rational>,
}

impl AffineMap {
    pub fn new(linear: Matrix<Rational>, shift: Vec<Rational>) -> Result<Self> {
        if linear.rows() != shift.len() {
            return Err(Error::Dimension(format!(
                "affine map with {} rows and a shift of length {}",
                linear.rows(),
                shift.len()
            )));
        }
        if linear.rows() > MAX_VARS || linear.cols() > MAX_VARS {
            return Err(Error::Dimension("affine map exceeds three variables".into()));
        }
        Ok(AffineMap { linear, shift })
    }

    pub fn identity(dim: usize) -> Self {
        AffineMap { linear: Matrix::identity(dim), shift: vec![Rational::zero(); dim] }
    }

    /// `x = u + c`.
    pub fn translation(c: Vec<Rational>) -> Self {
        AffineMap { linear: Matrix::identity(c.len()), shift: c }
    }

    pub fn source_dim(&self) -> usize {
        self.linear.rows()
    }

    pub fn target_dim(&self) -> usize {
        self.linear.cols()
    }
}

impl<C: Field> MultiPoly<C> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_VARS, "at most {MAX_VARS} variables");
        MultiPoly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: C) -> Self {
        Self::monomial(dim, Exponents::default(), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, C::one())
    }

    /// The coordinate function `x_var`.
    pub fn var(dim: usize, var: usize) -> Self {
        assert!(var < dim, "variable {var} out of range for {dim} variables");
        let mut e = [0; MAX_VARS];
        e[var] = 1;
        Self::monomial(dim, Exponents(e), C::one())
    }

    pub fn monomial(dim: usize, exps: Exponents, c: C) -> Self {
        let mut p = Self::zero(dim);
        debug_assert!(exps.0[dim..].iter().all(|&e| e == 0));
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Exponents, C)>) -> Self {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponents) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Exponents::degree)
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.degree() == degree)
    }

    pub fn add_term(&mut self, e: Exponents, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add_ref(c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        MultiPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (*e, c.mul_ref(s))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c));
        }
        out
    }

    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.dim {
            return Err(Error::Dimension(format!(
                "point of length {} for a polynomial in {} variables",
                point.len(),
                self.dim
            )));
        }
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.0.iter()) {
                for _ in 0..k {
                    t = t.mul_ref(x);
                }
            }
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }

    /// Partial derivative with respect to `x_var`.
    pub fn differentiate(&self, var: usize) -> Self {
        assert!(var < self.dim, "variable {var} out of range for {} variables", self.dim);
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut de = *e;
            de.0[var] -= 1;
            out.add_term(de, &c.mul_ref(&C::from_rational(&Rational::from(k))));
        }
        out
    }

    /// Expands `p(A·u + b)` as a polynomial in the map's target variables.
    pub fn compose_affine(&self, map: &AffineMap) -> Result<Self> {
        if map.source_dim() != self.dim {
            return Err(Error::Dimension(format!(
                "affine map from {} variables applied to a polynomial in {}",
                map.source_dim(),
                self.dim
            )));
        }
        let target = map.target_dim();
        let images: Vec<MultiPoly<C>> = (0..self.dim)
            .map(|i| {
                let mut img = MultiPoly::constant(target, C::from_rational(&map.shift[i]));
                for j in 0..target {
                    let a = C::from_rational(&map.linear[(i, j)]);
                    img = &img + &MultiPoly::var(target, j).scale(&a);
                }
                img
            })
            .collect();
        let max_pow: Vec<u32> = (0..self.dim)
            .map(|i| self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<MultiPoly<C>>> = images
            .iter()
            .zip(&max_pow)
            .map(|(img, &m)| {
                let mut v = vec![MultiPoly::one(target)];
                for k in 1..=m as usize {
                    let next = &v[k - 1] * img;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for i in 0..self.dim {
                if e.0[i] > 0 {
                    t = &t * &powers[i][e.0[i] as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Homogeneous part of the given degree.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        MultiPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == degree)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }
}

impl<'b, C: Field> Add<&'b MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    /// Panics on a dimension mismatch; use [`poly_arith`] for a checked version.
    fn add(self, rhs: &'b MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<'b, C: Field> Sub<&'b MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &'b MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &c.neg_ref());
        }
        out
    }
}

impl<'b, C: Field> Mul<&'b MultiPoly<C>> for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &'b MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = MultiPoly::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..MAX_VARS {
                    e.0[i] += eb.0[i];
                }
                out.add_term(e, &ca.mul_ref(cb));
            }
        }
        out
    }
}

impl<C: Field> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.scale(&C::one().neg_ref())
    }
}

const VAR_NAMES: [&str; MAX_VARS] = ["x", "y", "z"];

impl<C: Field> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .as_slice(self.dim)
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { VAR_NAMES[i].to_string() } else { format!("{}^{k}", VAR_NAMES[i]) })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<C: Field> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.dim)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermRecord<C> {
    pub exponents: Vec<u32>,
    pub coeff: C,
}

impl<C: Field> MultiPoly<C> {
    pub(crate) fn from_records(dim: usize, records: Vec<TermRecord<C>>) -> Result<Self> {
        if dim == 0 || dim > MAX_VARS {
            return Err(Error::Dimension(format!("unsupported dimension {dim}")));
        }
        let mut p = MultiPoly::zero(dim);
        for r in records {
            if r.exponents.len() != dim {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} in a polynomial of {dim} variables",
                    r.exponents.len()
                )));
            }
            p.add_term(Exponents::from_slice(&r.exponents), &r.coeff);
        }
        Ok(p)
    }
}

/// Serialized as a graded-lex sorted list of `{exponents, coeff}` records.
impl<C: Field + Serialize> Serialize for MultiPoly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord<&C>> = self
            .terms
            .iter()
            .map(|(e, c)| TermRecord { exponents: e.as_slice(self.dim).to_vec(), coeff: c })
            .collect();
        records.serialize(serializer)
    }
}

impl<'de, C: Field + DeserializeOwned> Deserialize<'de> for MultiPoly<C> {
    /// The dimension is taken from the exponent length; an empty list
    /// cannot carry one and is rejected, so wrap zero polynomials with an
    /// explicit dimension where that matters.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let records: Vec<TermRecord<C>> = Vec::deserialize(deserializer)?;
        let Some(first) = records.first() else {
            return Err(D::Error::custom("cannot infer dimension of an empty polynomial"));
        };
        let dim = first.exponents.len();
        MultiPoly::from_records(dim, records).map_err(D::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = MultiPoly<Rational>;

    fn x(d: usize) -> P {
        P::var(d, 0)
    }
    fn y(d: usize) -> P {
        P::var(d, 1)
    }
    fn z(d: usize) -> P {
        P::var(d, 2)
    }
    fn c(d: usize, n: i64) -> P {
        P::constant(d, Rational::from(n))
    }
    fn m(d: usize, e: &[u32], n: i64) -> P {
        P::monomial(d, Exponents::from_slice(e), Rational::from(n))
    }

    #[test]
    fn graded_lex_order() {
        let h = Exponents::homogeneous(2, 2);
        assert_eq!(h, vec![Exponents([2, 0, 0]), Exponents([1, 1, 0]), Exponents([0, 2, 0])]);
        let all = Exponents::up_to(3, 2);
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Exponents::homogeneous(3, 4).len(), 15);
    }

    #[test]
    fn arithmetic_examples() {
        let p = &(&x(2) + &y(2)) * &(&x(2) - &y(2));
        assert_eq!(p, &m(2, &[2, 0], 1) - &m(2, &[0, 2], 1));
        let q = &x(2) + &c(2, 3);
        assert!((&q + &(-&q)).is_zero());
        let s = &(&x(3) + &y(3)) + &z(3);
        let expect = P::from_terms(
            3,
            [([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 2], 1), ([1, 1, 0], 2), ([1, 0, 1], 2), ([0, 1, 1], 2)]
                .map(|(e, n)| (Exponents(e), Rational::from(n))),
        );
        assert_eq!(&s * &s, expect);
        assert!(poly_arith(&x(2), &x(3), PolyOp::Add).is_err());
        assert_eq!(poly_arith(&x(2), &y(2), PolyOp::Mul).unwrap(), m(2, &[1, 1], 1));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(P::zero(2).degree(), None);
        assert_eq!(c(2, 4).degree(), Some(0));
    }

    #[test]
    fn derivative_examples() {
        let x3 = m(2, &[3, 0], 1);
        assert_eq!(x3.differentiate(0), m(2, &[2, 0], 3));
        assert!(x3.differentiate(1).is_zero());
        let p = &m(2, &[2, 1], 1) + &m(2, &[1, 2], 1);
        assert_eq!(p.differentiate(0), &m(2, &[1, 1], 2) + &m(2, &[0, 2], 1));
    }

    #[test]
    fn compose_examples() {
        // x^2 with x = u + 1
        let p = m(1, &[2], 1);
        let shift = AffineMap::translation(vec![Rational::one()]);
        assert_eq!(p.compose_affine(&shift).unwrap(), &(&m(1, &[2], 1) + &m(1, &[1], 2)) + &c(1, 1));
        let q = &m(2, &[2, 1], 3) - &y(2);
        assert_eq!(q.compose_affine(&AffineMap::identity(2)).unwrap(), q);
        // (x, y) = (t, 1 - t)
        let edge = AffineMap::new(
            Matrix::from_rows(vec![vec![Rational::one()], vec![-Rational::one()]]).unwrap(),
            vec![Rational::zero(), Rational::one()],
        )
        .unwrap();
        assert_eq!((&x(2) + &y(2)).compose_affine(&edge).unwrap(), c(1, 1));
        assert!(x(2).compose_affine(&AffineMap::identity(3)).is_err());
    }

    #[test]
    fn eval_works() {
        let p = &m(2, &[2, 1], 3) - &y(2);
        let v = p.eval(&[Rational::from(2), Rational::new(1, 2)]).unwrap();
        assert_eq!(v, Rational::new(11, 2));
    }

    #[test]
    fn serde_records() {
        let p = &m(2, &[0, 2], -3) + &m(2, &[1, 0], 1);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[{"exponents":[1,0],"coeff":"1"},{"exponents":[0,2],"coeff":"-3"}]"#);
        assert_eq!(serde_json::from_str::<P>(&s).unwrap(), p);
    }

    pub(crate) fn arb_poly(dim: usize, max_deg: u32) -> impl Strategy<Value = P> {
        let monos = Exponents::up_to(dim, max_deg);
        let n = monos.len();
        proptest::collection::vec((0..n, -5i64..=5, 1i64..=3), 0..8).prop_map(move |ts| {
            P::from_terms(dim, ts.into_iter().map(|(i, a, b)| (monos[i], Rational::new(a, b))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn degree_is_additive(p in arb_poly(3, 4), q in arb_poly(3, 4)) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            prop_assert_eq!((&p * &q).degree(), Some(p.degree().unwrap() + q.degree().unwrap()));
        }

        #[test]
        fn translation_round_trip(p in arb_poly(2, 5), a in -4i64..4, b in 1i64..4, e in -3i64..3) {
            let fwd = AffineMap::translation(vec![Rational::new(a, b), Rational::from(e)]);
            let back = AffineMap::translation(vec![-Rational::new(a, b), -Rational::from(e)]);
            let there = p.compose_affine(&fwd).unwrap();
            prop_assert_eq!(there.compose_affine(&back).unwrap(), p);
        }
    }
}
