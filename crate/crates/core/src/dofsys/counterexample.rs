//! The quartic harmonic `P0` whose gradient is annihilated by every
//! functional of `N_{2,3}` on the unit tetrahedron.

use serde::Serialize;

use super::{apply_functional, DofSystem, UnisolvenceReport};
use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Rational};
use crate::multipoly::{curl3d, divergence, gradient, laplacian, Exponents, MultiPoly, VectorField};
use crate::simplexint::Simplex;

/// `(coefficient, [x, y, z] exponents)`, 31 terms.
const P0_TERMS: [(i64, [u32; 3]); 31] = [
    (3, [1, 0, 0]),
    (10, [3, 0, 0]),
    (-15, [4, 0, 0]),
    (3, [0, 1, 0]),
    (-18, [1, 1, 0]),
    (-15, [2, 1, 0]),
    (30, [3, 1, 0]),
    (-15, [1, 2, 0]),
    (45, [2, 2, 0]),
    (10, [0, 3, 0]),
    (30, [1, 3, 0]),
    (-15, [0, 4, 0]),
    (3, [0, 0, 1]),
    (-18, [1, 0, 1]),
    (-15, [2, 0, 1]),
    (30, [3, 0, 1]),
    (-18, [0, 1, 1]),
    (240, [1, 1, 1]),
    (-180, [2, 1, 1]),
    (-15, [0, 2, 1]),
    (-180, [1, 2, 1]),
    (30, [0, 3, 1]),
    (-15, [1, 0, 2]),
    (45, [2, 0, 2]),
    (-15, [0, 1, 2]),
    (-180, [1, 1, 2]),
    (45, [0, 2, 2]),
    (10, [0, 0, 3]),
    (30, [1, 0, 3]),
    (30, [0, 1, 3]),
    (-15, [0, 0, 4]),
];

pub fn counterexample_p0() -> MultiPoly<Rational> {
    MultiPoly::from_terms(3, P0_TERMS.iter().map(|&(c, e)| (Exponents(e), Rational::from(c))))
}

/// `u0 = ∇P0`.
pub fn counterexample_u0() -> VectorField {
    gradient(&counterexample_p0())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub step: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub simplex: Simplex,
    pub p0: MultiPoly<Rational>,
    pub u0: VectorField,
    pub u0_coefficients: Option<Vec<Rational>>,
    pub functional_values: Vec<Rational>,
    pub kernel_dimension: usize,
    pub kernel: Option<super::KernelField>,
    pub checks: Vec<CheckOutcome>,
}

impl CounterexampleReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Runs all five checks and records each outcome, failing or not.
pub fn run_counterexample_checks() -> Result<CounterexampleReport> {
    let t0 = Simplex::reference(3);
    let p0 = counterexample_p0();
    let u0 = counterexample_u0();
    let mut checks = Vec::new();

    let lap = laplacian(&p0);
    checks.push(CheckOutcome {
        step: "a",
        description: "laplacian(P0) = 0",
        passed: lap.is_zero(),
        detail: format!("laplacian(P0) = {lap}"),
    });

    let sys = DofSystem::new(2, 3, &t0)?;
    let u0_coefficients = sys.space.membership(&u0)?;
    checks.push(CheckOutcome {
        step: "b",
        description: "u0 = grad P0 lies in P_{2,3}",
        passed: u0_coefficients.is_some(),
        detail: match &u0_coefficients {
            Some(_) => "coefficients found in the space basis".into(),
            None => "u0 is outside the span of the basis".into(),
        },
    });

    let functional_values = sys
        .functionals
        .iter()
        .map(|spec| apply_functional(spec, &u0, &t0))
        .collect::<Result<Vec<_>>>()?;
    let nonzero = functional_values.iter().filter(|v| !v.is_zero()).count();
    checks.push(CheckOutcome {
        step: "c",
        description: "every functional of N_{2,3}(T0) vanishes on u0",
        passed: nonzero == 0 && functional_values.len() == 39,
        detail: format!("{} functionals, {nonzero} nonzero", functional_values.len()),
    });

    let report = UnisolvenceReport::from_system(&sys)?;
    let kernel_dimension = report.kernel.len();
    let kernel = report.kernel.first().cloned();
    let spans_u0 = match (&kernel, &u0_coefficients) {
        (Some(k), Some(c)) if kernel_dimension == 1 => {
            Matrix::from_rows(vec![k.coefficients.clone(), c.clone()])?.rank() == 1
        }
        _ => false,
    };
    checks.push(CheckOutcome {
        step: "d",
        description: "kernel of the 39x39 DOF matrix is spanned by u0",
        passed: spans_u0,
        detail: format!("kernel dimension {kernel_dimension}, proportional to u0: {spans_u0}"),
    });

    let div = divergence(&u0);
    let curl = curl3d(&u0)?;
    checks.push(CheckOutcome {
        step: "e",
        description: "div u0 = 0 and curl u0 = 0",
        passed: div.is_zero() && curl.is_zero(),
        detail: format!("div zero: {}, curl zero: {}", div.is_zero(), curl.is_zero()),
    });

    Ok(CounterexampleReport {
        simplex: t0,
        p0,
        u0,
        u0_coefficients,
        functional_values,
        kernel_dimension,
        kernel,
        checks,
    })
}

/// Like [`run_counterexample_checks`] but fails on the first failed step.
pub fn verify_counterexample() -> Result<CounterexampleReport> {
    let report = run_counterexample_checks()?;
    if let Some(f) = report.first_failure() {
        return Err(Error::Counterexample { step: f.step, detail: format!("{}: {}", f.description, f.detail) });
    }
    Ok(report)
}
