//! Harmonic polynomial spaces and the enriched vector space
//! `P_{k,d} = [P_k(R^d)]^d ⊕ ∇H_{k+2}(R^d) ⊕ … ⊕ ∇H_{2k}(R^d)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Rational};
use crate::multipoly::{gradient, Exponents, MultiPoly, VectorField};

type Poly = MultiPoly<Rational>;

/// Deterministic basis of the homogeneous harmonic polynomials of degree
/// `m` in `d` variables: the echelon nullspace of the Laplacian restricted
/// to degree-`m` monomials, in graded-lex column order.
pub fn harmonic_basis(m: u32, d: usize) -> Vec<Poly> {
    let cols = Exponents::homogeneous(d, m);
    let rows = if m >= 2 { Exponents::homogeneous(d, m - 2) } else { Vec::new() };
    let row_index: BTreeMap<Exponents, usize> = rows.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut lap = Matrix::<Rational>::zeros(rows.len(), cols.len());
    for (c, e) in cols.iter().enumerate() {
        for var in 0..d {
            let k = e.0[var];
            if k >= 2 {
                let mut t = *e;
                t.0[var] -= 2;
                let r = row_index[&t];
                lap[(r, c)] += Rational::from(k * (k - 1));
            }
        }
    }
    lap.nullspace()
        .into_iter()
        .map(|v| Poly::from_terms(d, cols.iter().copied().zip(v)))
        .collect()
}

/// `dim H_m(R^d)`: 1 for `m = 0`; 2 in the plane otherwise; `2m+1` in space.
pub fn harmonic_dimension(m: u32, d: usize) -> usize {
    match (d, m) {
        (_, 0) => 1,
        (2, _) => 2,
        (3, m) => 2 * m as usize + 1,
        _ => panic!("unsupported dimension {d}"),
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim P_{k,d} = d·C(k+d, d) + Σ_{m=k+2}^{2k} dim H_m(R^d)`.
pub fn dimension(k: u32, d: usize) -> usize {
    let poly = d * binomial(k as usize + d, d);
    let enrich: usize = (k + 2..=2 * k).map(|m| harmonic_dimension(m, d)).sum();
    poly + enrich
}

/// Where a basis field of `P_{k,d}` comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    /// `x^γ e_component`, `|γ| ≤ k`.
    MonomialComponent { component: usize, exponents: Vec<u32> },
    /// `∇h` for `h` the `index`-th element of `harmonic_basis(degree, d)`.
    HarmonicGradient { degree: u32, index: usize },
}

/// Ordered basis of `P_{k,d}`.
#[derive(Clone, Debug)]
pub struct SpaceBasis {
    k: u32,
    dim: usize,
    fields: Vec<VectorField>,
    provenance: Vec<Provenance>,
    coords: CoordinateSystem,
    coefficients: Matrix<Rational>,
}

/// Enumerates the `(component, monomial)` slots a field of `P_{k,d}` can
/// occupy, so fields can be flattened into coefficient vectors.
#[derive(Clone, Debug)]
struct CoordinateSystem {
    dim: usize,
    index: BTreeMap<(usize, Exponents), usize>,
}

impl CoordinateSystem {
    fn new(dim: usize, max_degree: u32) -> Self {
        let monos = Exponents::up_to(dim, max_degree);
        let mut index = BTreeMap::new();
        for c in 0..dim {
            for e in &monos {
                let n = index.len();
                index.insert((c, *e), n);
            }
        }
        CoordinateSystem { dim, index }
    }

    fn len(&self) -> usize {
        self.index.len()
    }

    /// `None` if the field has a term outside the coordinate range.
    fn flatten(&self, v: &VectorField) -> Option<Vec<Rational>> {
        if v.dim() != self.dim {
            return None;
        }
        let mut out = vec![Rational::zero(); self.len()];
        for (c, p) in v.components().iter().enumerate() {
            for (e, coeff) in p.terms() {
                out[*self.index.get(&(c, *e))?] = coeff.clone();
            }
        }
        Some(out)
    }
}

/// Builds the ordered basis of `P_{k,d}`: monomial fields (component-major,
/// graded-lex exponents) followed by `∇H_m` for `m = k+2, …, 2k`.
pub fn build_space(k: u32, d: usize) -> Result<SpaceBasis> {
    if k == 0 {
        return Err(Error::Contract("degree k must be at least 1".into()));
    }
    if !(2..=3).contains(&d) {
        return Err(Error::Dimension(format!("spaces in dimension {d} are not supported")));
    }
    let mut fields = Vec::new();
    let mut provenance = Vec::new();
    for component in 0..d {
        for e in Exponents::up_to(d, k) {
            fields.push(VectorField::unit_component(component, Poly::monomial(d, e, Rational::one())));
            provenance.push(Provenance::MonomialComponent { component, exponents: e.as_slice(d).to_vec() });
        }
    }
    for m in k + 2..=2 * k {
        for (index, h) in harmonic_basis(m, d).iter().enumerate() {
            fields.push(gradient(h));
            provenance.push(Provenance::HarmonicGradient { degree: m, index });
        }
    }

    let max_degree = if k >= 2 { 2 * k - 1 } else { k };
    let coords = CoordinateSystem::new(d, max_degree);
    let columns: Vec<Vec<Rational>> = fields
        .iter()
        .map(|f| coords.flatten(f).ok_or_else(|| Error::Internal("basis field outside coordinate range".into())))
        .collect::<Result<_>>()?;
    let coefficients = Matrix::from_fn(coords.len(), fields.len(), |r, c| columns[c][r].clone());

    let expected = dimension(k, d);
    let rank = coefficients.rank();
    if fields.len() != expected || rank != expected {
        return Err(Error::Internal(format!(
            "P_{{{k},{d}}}: {} fields of rank {rank}, expected dimension {expected}",
            fields.len()
        )));
    }
    Ok(SpaceBasis { k, dim: d, fields, provenance, coords, coefficients })
}

impl SpaceBasis {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    /// Column `j` holds the monomial coefficients of basis field `j`.
    pub fn coefficient_matrix(&self) -> &Matrix<Rational> {
        &self.coefficients
    }

    /// `Σ coeffs[j] · field_j`.
    pub fn combine(&self, coeffs: &[Rational]) -> Result<VectorField> {
        VectorField::linear_combination(self.dim, coeffs, &self.fields)
    }

    /// Coordinates of `v` in this basis, or `None` if `v ∉ P_{k,d}`.
    pub fn membership(&self, v: &VectorField) -> Result<Option<Vec<Rational>>> {
        if v.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "{}-dimensional field against a {}-dimensional space",
                v.dim(),
                self.dim
            )));
        }
        match self.coords.flatten(v) {
            None => Ok(None),
            Some(flat) => self.coefficients.solve_in_span(&flat),
        }
    }

    /// Serializable view: each field with its provenance tag.
    pub fn export(&self) -> Vec<BasisEntry> {
        self.fields
            .iter()
            .zip(&self.provenance)
            .map(|(f, p)| BasisEntry { field: f.clone(), provenance: p.clone() })
            .collect()
    }
}

/// Free-function form of [`SpaceBasis::membership`].
pub fn membership(v: &VectorField, s: &SpaceBasis) -> Result<Option<Vec<Rational>>> {
    s.membership(v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub field: VectorField,
    pub provenance: Provenance,
}
