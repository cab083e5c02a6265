use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use unisolv::certificate::{alpha, cauchy_det, verify_certificate, CertificateResult, ComplexTriple};
use unisolv::dofsys::{dual_basis, enumerate_functionals, run_counterexample_checks, unisolvence, UnisolvenceReport};
use unisolv::femspace::{build_space, dimension};
use unisolv::random::Sampler;
use unisolv::{GaussianRational, Rational, Simplex, SCHEMA};

use crate::config::{CliError, CliResult, KRange, RunConfig, SimplexSource};

/// A finished command: the JSON document, human-readable summary lines and
/// whether every expectation held.
pub struct Outcome {
    pub document: Value,
    pub summary: Vec<String>,
    pub ok: bool,
    pub failure: Option<String>,
}

fn envelope(cfg: &RunConfig, body: Value) -> Value {
    let mut doc = json!({
        "schema": SCHEMA,
        "command": cfg.command,
        "seed": cfg.seed,
        "config": cfg,
    });
    if let (Value::Object(d), Value::Object(b)) = (&mut doc, body) {
        d.extend(b);
    }
    doc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Unisolvent,
    Singular,
    /// Not settled; reported but never counted as a failure.
    Open,
}

/// Expected verdict for `(k, d)` on `t`. Three-dimensional cases with
/// `k ≥ 3` are only allowed in exploratory mode.
pub fn expectation(k: u32, d: usize, t: &Simplex, exploratory: bool) -> CliResult<Expectation> {
    match (d, k) {
        (2, _) | (3, 1) => Ok(Expectation::Unisolvent),
        (3, 2) if *t == Simplex::reference(3) => Ok(Expectation::Singular),
        (3, 2) => Ok(Expectation::Open),
        _ if exploratory => Ok(Expectation::Open),
        _ => Err(CliError::usage(format!(
            "k = {k}, d = 3 has no settled answer; pass --exploratory to run it anyway"
        ))),
    }
}

#[derive(Serialize)]
struct VerifyEntry {
    expected: Expectation,
    /// `null` when the expectation is open.
    as_expected: Option<bool>,
    report: UnisolvenceReport,
}

pub fn verify(cfg: &RunConfig, k: KRange, d: usize, source: &SimplexSource) -> CliResult<Outcome> {
    let simplices = source.resolve(d, cfg.seed)?;
    let mut jobs = Vec::new();
    for kk in k.degrees() {
        for (i, t) in simplices.iter().enumerate() {
            jobs.push((kk, i, t, expectation(kk, d, t, cfg.exploratory)?));
        }
    }
    let results: Vec<(u32, usize, CliResult<VerifyEntry>)> = jobs
        .into_par_iter()
        .map(|(kk, i, t, expected)| {
            let entry = unisolvence(kk, d, t).map_err(CliError::from).map(|report| {
                let as_expected = match expected {
                    Expectation::Unisolvent => Some(report.is_unisolvent()),
                    Expectation::Singular => Some(!report.is_unisolvent()),
                    Expectation::Open => None,
                };
                VerifyEntry { expected, as_expected, report }
            });
            (kk, i, entry)
        })
        .collect();

    let mut entries = Vec::new();
    let mut summary = Vec::new();
    let mut failure = None;
    for (kk, i, entry) in results {
        let entry = entry?;
        let r = &entry.report;
        summary.push(format!(
            "k={kk} d={d} simplex#{i}: {:?} (rank {}/{}, kernel {}) expected {:?}{}",
            r.verdict,
            r.rank,
            r.dim,
            r.kernel.len(),
            entry.expected,
            match entry.as_expected {
                Some(true) => "",
                Some(false) => "  MISMATCH",
                None => "  [open, not counted]",
            }
        ));
        if entry.as_expected == Some(false) && failure.is_none() {
            failure = Some(format!("k = {kk}, d = {d}, simplex #{i}: verdict {:?}, expected {:?}", r.verdict, entry.expected));
        }
        entries.push(entry);
    }
    let ok = failure.is_none();
    let document = envelope(cfg, json!({ "reports": entries, "all_as_expected": ok }));
    Ok(Outcome { document, summary, ok, failure })
}

#[derive(Serialize)]
struct Fixture {
    name: &'static str,
    expected_det: Option<GaussianRational>,
    passed: bool,
    result: CertificateResult,
}

#[derive(Serialize)]
struct RandomCheck {
    pairwise_distinct: bool,
    passed: bool,
    result: CertificateResult,
}

#[derive(Serialize)]
struct AlphaCheck {
    k: u32,
    alpha: Rational,
    cauchy_product: Rational,
    passed: bool,
}

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

fn alpha_check(k: u32) -> CliResult<AlphaCheck> {
    let ints = |r: std::ops::Range<u32>| r.map(Rational::from).collect::<Vec<_>>();
    let prod = cauchy_det(&ints(1..k + 1), &ints(0..k))? * cauchy_det(&ints(1..k + 1), &ints(k..2 * k))?;
    let a = alpha(k);
    Ok(AlphaCheck { k, passed: a == prod, alpha: a, cauchy_product: prod })
}

pub fn certificate(cfg: &RunConfig, k: KRange, count: usize) -> CliResult<Outcome> {
    let mut sampler = Sampler::new(cfg.seed);
    let triples: Vec<ComplexTriple> = (0..count).map(|_| sampler.triple()).collect();

    let mut fixtures = vec![
        (1, "k=1 Z=(0,2,1)", ComplexTriple::new(g(0, 0), g(2, 0), g(1, 0)), Some(g(-1, 0))),
        (2, "k=2 M(0,z,1) at z=2", ComplexTriple::new(g(0, 0), g(2, 0), g(1, 0)), Some(GaussianRational::real(Rational::new(1, 180)))),
    ];
    for kk in k.degrees() {
        fixtures.push((kk, "repeated point z1=z2", ComplexTriple::new(g(1, 1), g(1, 1), g(3, -2)), Some(g(0, 0))));
    }
    let fixtures: Vec<Fixture> = fixtures
        .into_par_iter()
        .map(|(kk, name, zt, expected_det)| {
            let result = verify_certificate(kk, &zt);
            let passed = result.matches && expected_det.as_ref().is_none_or(|e| *e == result.det_elimination);
            Fixture { name, expected_det, passed, result }
        })
        .collect();

    let jobs: Vec<(u32, &ComplexTriple)> = k.degrees().flat_map(|kk| triples.iter().map(move |t| (kk, t))).collect();
    let random: Vec<RandomCheck> = jobs
        .into_par_iter()
        .map(|(kk, zt)| {
            let result = verify_certificate(kk, zt);
            let pairwise_distinct = zt.pairwise_distinct();
            let passed = result.matches && (!pairwise_distinct || !result.det_elimination.is_zero());
            RandomCheck { pairwise_distinct, passed, result }
        })
        .collect();

    let alphas = k.degrees().map(alpha_check).collect::<CliResult<Vec<_>>>()?;

    let mut summary = Vec::new();
    let mut failure = None;
    for f in &fixtures {
        summary.push(format!("fixture {} (k={}): {}", f.name, f.result.k, if f.passed { "match" } else { "FAIL" }));
        if !f.passed && failure.is_none() {
            failure = Some(format!("fixture {} failed for k = {}", f.name, f.result.k));
        }
    }
    for kk in k.degrees() {
        let of_k: Vec<&RandomCheck> = random.iter().filter(|r| r.result.k == kk).collect();
        let passed = of_k.iter().filter(|r| r.passed).count();
        summary.push(format!("k={kk}: {passed}/{} random triples match", of_k.len()));
        if passed != of_k.len() && failure.is_none() {
            failure = Some(format!("closed form mismatch for k = {kk}"));
        }
    }
    for a in &alphas {
        summary.push(format!("alpha({}) = {} {}", a.k, a.alpha, if a.passed { "= Cauchy product" } else { "!= Cauchy product" }));
        if !a.passed && failure.is_none() {
            failure = Some(format!("alpha({}) differs from the Cauchy determinant product", a.k));
        }
    }
    let ok = failure.is_none();
    let document = envelope(
        cfg,
        json!({ "fixtures": fixtures, "random": random, "alpha": alphas, "all_match": ok }),
    );
    Ok(Outcome { document, summary, ok, failure })
}

pub fn counterexample(cfg: &RunConfig) -> CliResult<Outcome> {
    let report = run_counterexample_checks()?;
    let summary = report
        .checks
        .iter()
        .map(|c| format!("({}) {}: {}  [{}]", c.step, c.description, if c.passed { "pass" } else { "FAIL" }, c.detail))
        .collect();
    let failure = report
        .first_failure()
        .map(|c| format!("counterexample step ({}) failed: {}: {}", c.step, c.description, c.detail));
    let ok = report.all_passed();
    let document = envelope(cfg, json!({ "report": report, "all_passed": ok }));
    Ok(Outcome { document, summary, ok, failure })
}

pub fn dual(cfg: &RunConfig, k: u32, d: usize, source: &SimplexSource) -> CliResult<Outcome> {
    let simplices = source.resolve(d, cfg.seed)?;
    let [t] = simplices.as_slice() else {
        return Err(CliError::usage(format!("dual-basis needs exactly one simplex, got {}", simplices.len())));
    };
    expectation(k, d, t, cfg.exploratory)?;
    let basis = match dual_basis(k, d, t) {
        Ok(b) => b,
        Err(unisolv::Error::Refused(msg)) => {
            return Err(CliError::failure(format!(
                "{msg}\nrun `unisolv verify --k {k} --d {d}` with the same simplex for the full unisolvence report"
            )))
        }
        Err(e) => return Err(e.into()),
    };
    let space = build_space(k, d)?;
    let identity = basis.is_biorthogonal();
    let hash = basis.certificate_hash();
    let summary = vec![
        format!("k={k} d={d}: {} dual basis fields", basis.fields.len()),
        format!("biorthogonality matrix is identity: {identity}"),
        format!("certificate sha256: {hash}"),
    ];
    let failure = (!identity).then(|| "biorthogonality matrix is not the identity".to_string());
    let document = envelope(
        cfg,
        json!({
            "k": k,
            "d": d,
            "simplex": basis.simplex,
            "space_basis": space.export(),
            "functionals": basis.functionals,
            "dual_fields": basis.fields,
            "biorthogonality": basis.biorthogonality,
            "biorthogonality_is_identity": identity,
            "certificate_hash": hash,
        }),
    );
    Ok(Outcome { document, summary, ok: identity, failure })
}

/// Counting identity, reference-simplex verdicts, the certificate and the
/// counterexample in one document.
pub fn report(cfg: &RunConfig, max_k: u32, count: usize) -> CliResult<Outcome> {
    if max_k == 0 {
        return Err(CliError::usage("--max-k must be at least 1"));
    }
    let mut summary = Vec::new();
    let mut failure: Option<String> = None;
    let mut note = |ok: bool, line: String, failure: &mut Option<String>| {
        if !ok && failure.is_none() {
            *failure = Some(line.clone());
        }
        summary.push(line);
    };

    let mut counting = Vec::new();
    for d in [2usize, 3] {
        for k in 1..=max_k {
            let (dim, n) = (dimension(k, d), enumerate_functionals(k, d).len());
            note(dim == n, format!("count k={k} d={d}: dim {dim}, functionals {n}"), &mut failure);
            counting.push(json!({ "k": k, "d": d, "dim": dim, "n_functionals": n, "equal": dim == n }));
        }
    }

    let sub = |command: &'static str, k: KRange, d: Option<usize>, source: Option<SimplexSource>| RunConfig {
        command,
        k: Some(k),
        d,
        source,
        ..cfg.clone()
    };
    let mut sections = serde_json::Map::new();
    let all = KRange { first: 1, last: max_k };
    let mut runs: Vec<(&str, CliResult<Outcome>)> = vec![(
        "verify_2d_reference",
        verify(&sub("verify", all, Some(2), Some(SimplexSource::Reference)), all, 2, &SimplexSource::Reference),
    )];
    if count > 0 {
        let src = SimplexSource::Random { count };
        runs.push(("verify_2d_random", verify(&sub("verify", all, Some(2), Some(src.clone())), all, 2, &src)));
    }
    let low3 = KRange { first: 1, last: max_k.min(2) };
    runs.push((
        "verify_3d_reference",
        verify(&sub("verify", low3, Some(3), Some(SimplexSource::Reference)), low3, 3, &SimplexSource::Reference),
    ));
    let cert_k = KRange { first: 1, last: max_k.min(4) };
    runs.push(("certificate", certificate(&sub("certificate", cert_k, None, None), cert_k, count.max(10))));
    runs.push(("counterexample", counterexample(&RunConfig { command: "counterexample", k: None, d: None, source: None, ..cfg.clone() })));

    for (name, run) in runs {
        let out = run?;
        for line in &out.summary {
            note(true, format!("[{name}] {line}"), &mut failure);
        }
        if let Some(f) = &out.failure {
            note(false, format!("[{name}] {f}"), &mut failure);
        }
        sections.insert(name.to_string(), out.document);
    }
    let ok = failure.is_none();
    let document = envelope(cfg, json!({ "counting": counting, "sections": sections, "all_passed": ok }));
    Ok(Outcome { document, summary, ok, failure })
}
