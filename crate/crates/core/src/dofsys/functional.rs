use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::multipoly::VectorField;
use crate::simplexint::{barycentric, integrate_facet_scaled, integrate_simplex, Simplex};

/// One degree-of-freedom functional. Components are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FunctionalSpec {
    /// `∫_T λ^α v_component`, `|α| = k − 2`.
    Interior { component: usize, alpha: Vec<u32> },
    /// `∫_{F_facet} λ^β v_component`, `|β| = k − 1`, `β_facet = 0`.
    Facet { component: usize, facet: usize, beta: Vec<u32> },
}

impl FunctionalSpec {
    pub fn component(&self) -> usize {
        match self {
            FunctionalSpec::Interior { component, .. } | FunctionalSpec::Facet { component, .. } => *component,
        }
    }

    /// Barycentric multi-index of the weight.
    pub fn weight(&self) -> &[u32] {
        match self {
            FunctionalSpec::Interior { alpha, .. } => alpha,
            FunctionalSpec::Facet { beta, .. } => beta,
        }
    }
}

/// Multi-indices over `slots` entries summing to `total`, in graded-lex
/// order (larger earlier entries first).
pub fn multi_indices(slots: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(slots: usize, total: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == slots {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=total).rev() {
            cur.push(e);
            rec(slots, total - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if slots > 0 {
        rec(slots, total, &mut Vec::new(), &mut out);
    }
    out
}

/// The functionals of `N_{k,d}`: interior moments (component-major) then
/// facet moments (facet-major, then component). Panics if `k == 0`.
pub fn enumerate_functionals(k: u32, d: usize) -> Vec<FunctionalSpec> {
    assert!(k >= 1, "degree k must be at least 1");
    let mut out = Vec::new();
    if k >= 2 {
        for component in 0..d {
            for alpha in multi_indices(d + 1, k - 2) {
                out.push(FunctionalSpec::Interior { component, alpha });
            }
        }
    }
    for facet in 0..=d {
        for component in 0..d {
            for reduced in multi_indices(d, k - 1) {
                let mut beta = reduced;
                beta.insert(facet, 0);
                out.push(FunctionalSpec::Facet { component, facet, beta });
            }
        }
    }
    out
}

/// `d·C(k−2+d, d) + d·(d+1)·C(k+d−2, d−1)`.
pub fn functional_count(k: u32, d: usize) -> usize {
    fn binom(n: i64, r: i64) -> usize {
        if n < 0 || r < 0 || r > n {
            return 0;
        }
        (0..r).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
    }
    let (k, di) = (k as i64, d as i64);
    d * binom(k - 2 + di, di) + d * (d + 1) * binom(k + di - 2, di - 1)
}

pub(crate) fn validate(spec: &FunctionalSpec, d: usize) -> Result<()> {
    let bad = |msg: String| Err(Error::Contract(msg));
    if spec.component() >= d {
        return bad(format!("component {} in dimension {d}", spec.component()));
    }
    if spec.weight().len() != d + 1 {
        return bad(format!("multi-index of length {} in dimension {d}", spec.weight().len()));
    }
    if let FunctionalSpec::Facet { facet, beta, .. } = spec {
        if *facet > d {
            return Err(Error::InvalidFacet { index: *facet, dim: d });
        }
        if beta[*facet] != 0 {
            return bad(format!("beta_{facet} must vanish on facet {facet}"));
        }
    }
    Ok(())
}

/// Exact value of `spec` on `v` over `t`. Facet moments are returned
/// scaled by `1 / ((d−1)!·|F_j|)`.
pub fn apply_functional(spec: &FunctionalSpec, v: &VectorField, t: &Simplex) -> Result<Rational> {
    let d = t.dim();
    if v.dim() != d {
        return Err(Error::Dimension(format!("{}-dimensional field on a {d}-simplex", v.dim())));
    }
    validate(spec, d)?;
    let weight = barycentric(t).monomial(spec.weight());
    let integrand = &weight * v.component(spec.component());
    match spec {
        FunctionalSpec::Interior { .. } => integrate_simplex(&integrand, t),
        FunctionalSpec::Facet { facet, .. } => integrate_facet_scaled(&integrand, t, *facet),
    }
}
