//! Degree-of-freedom functionals, the DOF matrix, unisolvence verdicts and
//! nodal (dual) bases.

mod counterexample;
mod functional;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Rational};
use crate::femspace::{build_space, SpaceBasis};
use crate::multipoly::{AffineMap, Exponents, MultiPoly, VectorField};
use crate::simplexint::{barycentric, Simplex};

pub use counterexample::{
    counterexample_p0, counterexample_u0, run_counterexample_checks, verify_counterexample, CheckOutcome,
    CounterexampleReport,
};
pub use functional::{apply_functional, enumerate_functionals, functional_count, multi_indices, FunctionalSpec};

type Poly = MultiPoly<Rational>;

/// The DOF matrix of `N_{k,d}(t)` against the basis of `P_{k,d}`, together
/// with the pieces it was built from.
#[derive(Clone, Debug)]
pub struct DofSystem {
    pub k: u32,
    pub d: usize,
    pub simplex: Simplex,
    pub space: SpaceBasis,
    pub functionals: Vec<FunctionalSpec>,
    /// Rows follow `functionals`, columns follow `space.fields()`.
    pub matrix: Matrix<Rational>,
}

impl DofSystem {
    pub fn new(k: u32, d: usize, t: &Simplex) -> Result<Self> {
        if t.dim() != d {
            return Err(Error::Dimension(format!("{}-simplex for a d = {d} system", t.dim())));
        }
        let space = build_space(k, d)?;
        let functionals = enumerate_functionals(k, d);
        let matrix = assemble(&functionals, space.fields(), t)?;
        Ok(DofSystem { k, d, simplex: t.clone(), space, functionals, matrix })
    }
}

/// Evaluates every functional on every field. Each region (interior or one
/// facet) pulls the barycentric forms and the field components back to
/// reference coordinates once; entries are then reference-simplex integrals
/// of products.
pub fn assemble(functionals: &[FunctionalSpec], fields: &[VectorField], t: &Simplex) -> Result<Matrix<Rational>> {
    let d = t.dim();
    for f in functionals {
        functional::validate(f, d)?;
    }
    if let Some(bad) = fields.iter().find(|f| f.dim() != d) {
        return Err(Error::Dimension(format!("{}-dimensional field on a {d}-simplex", bad.dim())));
    }
    let bary = barycentric(t);
    let max_weight = functionals.iter().map(|f| f.weight().iter().sum::<u32>()).max().unwrap_or(0);

    // Region 0 is the interior, region j+1 is facet j.
    let mut maps: Vec<(AffineMap, Rational)> = vec![(t.reference_map(), t.jacobian())];
    for j in 0..=d {
        maps.push((t.facet_map(j)?, Rational::one()));
    }
    let regions: Vec<Region> = maps
        .into_par_iter()
        .map(|(map, scale)| Region::pull_back(&map, scale, &bary.lambdas, fields, max_weight))
        .collect::<Result<_>>()?;

    let rows: Vec<Vec<Rational>> = functionals
        .par_iter()
        .map(|spec| {
            let region = match spec {
                FunctionalSpec::Interior { .. } => &regions[0],
                FunctionalSpec::Facet { facet, .. } => &regions[facet + 1],
            };
            let moments = region.weighted_moments(spec.weight());
            region
                .components
                .iter()
                .map(|comps| {
                    let acc: Rational = comps[spec.component()].terms().map(|(e, c)| c * &moments[e]).sum();
                    &region.scale * &acc
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows)
}

struct Region {
    scale: Rational,
    lambdas: Vec<Poly>,
    /// `components[field][i]`.
    components: Vec<Vec<Poly>>,
    /// Every monomial occurring in some pulled-back component.
    exponents: BTreeSet<Exponents>,
    factorials: Vec<Rational>,
}

impl Region {
    fn pull_back(
        map: &AffineMap,
        scale: Rational,
        lambdas: &[Poly],
        fields: &[VectorField],
        max_weight: u32,
    ) -> Result<Region> {
        let lambdas: Vec<Poly> = lambdas.iter().map(|l| l.compose_affine(map)).collect::<Result<_>>()?;
        let components: Vec<Vec<Poly>> = fields
            .iter()
            .map(|f| f.components().iter().map(|c| c.compose_affine(map)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let exponents: BTreeSet<Exponents> =
            components.iter().flatten().flat_map(|p| p.terms().map(|(e, _)| *e)).collect();
        let dim = lambdas.first().map_or(0, |l| l.dim());
        let top = exponents.iter().map(|e| e.degree()).max().unwrap_or(0) as usize
            + max_weight as usize
            + dim;
        let mut factorials = vec![Rational::one()];
        for i in 1..=top {
            let next = &factorials[i - 1] * &Rational::from(i);
            factorials.push(next);
        }
        Ok(Region { scale, lambdas, components, exponents, factorials })
    }

    /// `∫ x^e` over the reference simplex of this region's dimension.
    fn moment(&self, e: &Exponents) -> Rational {
        let dim = self.lambdas[0].dim();
        let exps = e.as_slice(dim);
        let num: Rational = exps.iter().map(|&a| self.factorials[a as usize].clone()).product();
        let total = exps.iter().sum::<u32>() as usize + dim;
        num / &self.factorials[total]
    }

    /// `e ↦ ∫ λ^α x^e` for every monomial `e` the components use.
    fn weighted_moments(&self, alpha: &[u32]) -> BTreeMap<Exponents, Rational> {
        let weight = self.weight(alpha);
        self.exponents
            .iter()
            .map(|e| {
                let v: Rational = weight
                    .terms()
                    .map(|(w, c)| {
                        let mut sum = *e;
                        for (s, x) in sum.0.iter_mut().zip(w.0) {
                            *s += x;
                        }
                        c * &self.moment(&sum)
                    })
                    .sum();
                (*e, v)
            })
            .collect()
    }

    fn weight(&self, alpha: &[u32]) -> Poly {
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

/// Builds the square DOF matrix for `(k, d)` on `t`.
pub fn dof_matrix(k: u32, d: usize, t: &Simplex) -> Result<Matrix<Rational>> {
    Ok(DofSystem::new(k, d, t)?.matrix)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Unisolvent,
    Singular,
}

/// A kernel element of the DOF system, in basis coordinates (first nonzero
/// coefficient normalized to 1) and as an explicit field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelField {
    pub coefficients: Vec<Rational>,
    pub field: VectorField,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnisolvenceReport {
    pub k: u32,
    pub d: usize,
    pub simplex: Simplex,
    pub dim: usize,
    pub n_functionals: usize,
    pub rank: usize,
    pub det: Option<Rational>,
    pub kernel: Vec<KernelField>,
    pub verdict: Verdict,
}

impl UnisolvenceReport {
    pub fn from_system(sys: &DofSystem) -> Result<Self> {
        let m = &sys.matrix;
        let rref = m.rref();
        let rank = rref.rank();
        // A rank-deficient square matrix has determinant zero; skip the
        // second elimination.
        let det = match (m.is_square(), rank == m.cols()) {
            (false, _) => None,
            (true, true) => Some(m.det()?),
            (true, false) => Some(Rational::zero()),
        };
        let kernel = rref
            .nullspace()
            .into_iter()
            .map(|mut v| {
                if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
                    for x in &mut v {
                        *x = &*x / &lead;
                    }
                }
                let field = sys.space.combine(&v)?;
                Ok(KernelField { coefficients: v, field })
            })
            .collect::<Result<Vec<_>>>()?;
        let unisolvent = rank == sys.space.len() && det.as_ref().is_some_and(|x| !x.is_zero());
        Ok(UnisolvenceReport {
            k: sys.k,
            d: sys.d,
            simplex: sys.simplex.clone(),
            dim: sys.space.len(),
            n_functionals: sys.functionals.len(),
            rank,
            det,
            kernel,
            verdict: if unisolvent { Verdict::Unisolvent } else { Verdict::Singular },
        })
    }

    pub fn is_unisolvent(&self) -> bool {
        self.verdict == Verdict::Unisolvent
    }
}

/// Exact unisolvence check of `N_{k,d}(t)` on `P_{k,d}`.
pub fn unisolvence(k: u32, d: usize, t: &Simplex) -> Result<UnisolvenceReport> {
    UnisolvenceReport::from_system(&DofSystem::new(k, d, t)?)
}

/// Nodal basis `φ_j` with `l_i(φ_j) = δ_ij`, plus the independently
/// recomputed biorthogonality matrix.
#[derive(Clone, Debug, Serialize)]
pub struct DualBasis {
    pub k: u32,
    pub d: usize,
    pub simplex: Simplex,
    pub functionals: Vec<FunctionalSpec>,
    pub fields: Vec<VectorField>,
    pub biorthogonality: Matrix<Rational>,
}

impl DualBasis {
    pub fn is_biorthogonal(&self) -> bool {
        self.biorthogonality == Matrix::identity(self.fields.len())
    }

    /// SHA-256 of the biorthogonality matrix entries written row by row as
    /// `p/q` strings separated by `,` and rows by `;`.
    pub fn certificate_hash(&self) -> String {
        matrix_hash(&self.biorthogonality)
    }
}

pub fn matrix_hash(m: &Matrix<Rational>) -> String {
    let text = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";");
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Computes the nodal basis; refused unless the system is unisolvent.
pub fn dual_basis(k: u32, d: usize, t: &Simplex) -> Result<DualBasis> {
    let sys = DofSystem::new(k, d, t)?;
    let report = UnisolvenceReport::from_system(&sys)?;
    if !report.is_unisolvent() {
        return Err(Error::Refused(format!(
            "DOF matrix for k = {k}, d = {d} is singular (rank {} of {}, kernel dimension {}); see the unisolvence report",
            report.rank,
            report.dim,
            report.kernel.len()
        )));
    }
    let n = sys.space.len();
    let coeffs = sys.matrix.inverse()?;
    let fields: Vec<VectorField> = (0..n)
        .into_par_iter()
        .map(|j| sys.space.combine(&coeffs.column(j)))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<Rational>> = sys
        .functionals
        .par_iter()
        .map(|spec| fields.iter().map(|f| apply_functional(spec, f, t)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(DualBasis {
        k,
        d,
        simplex: t.clone(),
        functionals: sys.functionals,
        fields,
        biorthogonality: Matrix::from_rows(rows)?,
    })
}
