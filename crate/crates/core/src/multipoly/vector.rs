use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::TermRecord;
use super::MultiPoly;
use crate::error::{Error, Result};
use crate::exactnum::Rational;

type Poly = MultiPoly<Rational>;

/// A `dim`-tuple of rational polynomials in `dim` variables.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    components: Vec<Poly>,
}

impl VectorField {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let dim = components.len();
        if !(1..=super::MAX_VARS).contains(&dim) {
            return Err(Error::Dimension(format!("vector field with {dim} components")));
        }
        if let Some(bad) = components.iter().find(|c| c.dim() != dim) {
            return Err(Error::Dimension(format!(
                "component in {} variables inside a {dim}-dimensional field",
                bad.dim()
            )));
        }
        Ok(VectorField { components })
    }

    pub fn zero(dim: usize) -> Self {
        VectorField { components: vec![Poly::zero(dim); dim] }
    }

    /// Field whose only nonzero component is `p` at slot `component`.
    pub fn unit_component(component: usize, p: Poly) -> Self {
        let dim = p.dim();
        let mut v = Self::zero(dim);
        v.components[component] = p;
        v
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Largest component degree; `None` for the zero field.
    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Poly::degree).max()
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        self.check_dim(other)?;
        Ok(VectorField {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField> {
        self.check_dim(other)?;
        Ok(VectorField {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> VectorField {
        VectorField { components: self.components.iter().map(|c| c.scale(s)).collect() }
    }

    /// `Σ coeffs[i] · fields[i]`.
    pub fn linear_combination(dim: usize, coeffs: &[Rational], fields: &[VectorField]) -> Result<VectorField> {
        if coeffs.len() != fields.len() {
            return Err(Error::Dimension(format!(
                "{} coefficients for {} fields",
                coeffs.len(),
                fields.len()
            )));
        }
        let mut acc = VectorField::zero(dim);
        for (c, f) in coeffs.iter().zip(fields) {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&f.scale(c))?;
        }
        Ok(acc)
    }

    /// Pointwise dot product `v · w`.
    pub fn dot(&self, other: &VectorField) -> Result<Poly> {
        self.check_dim(other)?;
        let mut acc = Poly::zero(self.dim());
        for (a, b) in self.components.iter().zip(&other.components) {
            acc = &acc + &(a * b);
        }
        Ok(acc)
    }

    /// Pointwise cross product; three dimensions only.
    pub fn cross(&self, other: &VectorField) -> Result<VectorField> {
        self.check_dim(other)?;
        if self.dim() != 3 {
            return Err(Error::Dimension("cross product needs three components".into()));
        }
        let (a, b) = (&self.components, &other.components);
        Ok(VectorField {
            components: vec![
                &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
                &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
                &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
            ],
        })
    }

    pub fn scale_by_poly(&self, p: &Poly) -> Result<VectorField> {
        if p.dim() != self.dim() {
            return Err(Error::Dimension("scalar and field dimensions differ".into()));
        }
        Ok(VectorField { components: self.components.iter().map(|c| c * p).collect() })
    }

    fn check_dim(&self, other: &VectorField) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "fields of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }
}

/// `∇p`.
pub fn gradient(p: &Poly) -> VectorField {
    VectorField { components: (0..p.dim()).map(|i| p.differentiate(i)).collect() }
}

/// `∇·v`.
pub fn divergence(v: &VectorField) -> Poly {
    let mut acc = Poly::zero(v.dim());
    for (i, c) in v.components.iter().enumerate() {
        acc = &acc + &c.differentiate(i);
    }
    acc
}

/// Scalar curl `∂v₂/∂x − ∂v₁/∂y` of a planar field.
pub fn curl2d(v: &VectorField) -> Result<Poly> {
    if v.dim() != 2 {
        return Err(Error::Dimension(format!("curl2d of a {}-dimensional field", v.dim())));
    }
    Ok(&v.components[1].differentiate(0) - &v.components[0].differentiate(1))
}

/// `∇×v` of a field in three dimensions.
pub fn curl3d(v: &VectorField) -> Result<VectorField> {
    if v.dim() != 3 {
        return Err(Error::Dimension(format!("curl3d of a {}-dimensional field", v.dim())));
    }
    let c = &v.components;
    let d = |i: usize, var: usize| c[i].differentiate(var);
    Ok(VectorField {
        components: vec![&d(2, 1) - &d(1, 2), &d(0, 2) - &d(2, 0), &d(1, 0) - &d(0, 1)],
    })
}

/// `Δp`.
pub fn laplacian(p: &Poly) -> Poly {
    let mut acc = Poly::zero(p.dim());
    for i in 0..p.dim() {
        acc = &acc + &p.differentiate(i).differentiate(i);
    }
    acc
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.components.iter().map(|c| format!("{c}"))).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct FieldRecord<P> {
    dim: usize,
    components: Vec<P>,
}

impl Serialize for VectorField {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FieldRecord { dim: self.dim(), components: self.components.iter().collect() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VectorField {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rec: FieldRecord<Vec<TermRecord<Rational>>> = FieldRecord::deserialize(deserializer)?;
        let comps = rec
            .components
            .into_iter()
            .map(|r| MultiPoly::from_records(rec.dim, r))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        VectorField::new(comps).map_err(D::Error::custom)
    }
}
