use proptest::prelude::*;
use unisolv::certificate::{build_m, cauchy_det, cauchy_matrix, segment_integral, ComplexTriple};
use unisolv::dofsys::{unisolvence, DofSystem};
use unisolv::femspace::harmonic_basis;
use unisolv::multipoly::{complexify, curl2d, curl3d, divergence, gradient};
use unisolv::random::Sampler;
use unisolv::simplexint::{green_residual, green_residual_curl3d, integrate_simplex, GreenMode};
use unisolv::{GaussianRational, MultiPoly, Rational, Simplex, VectorField};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// Planar field: either a random field or the gradient of a random
/// combination of harmonic polynomials, so both outcomes of the
/// holomorphy test show up.
fn planar_field(s: &mut Sampler, harmonic: bool) -> VectorField {
    if !harmonic {
        return s.field(2, 3);
    }
    let mut h = MultiPoly::zero(2);
    for m in 0..=4 {
        for b in harmonic_basis(m, 2) {
            h = &h + &b.scale(&s.rational());
        }
    }
    gradient(&h)
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn holomorphic_iff_div_and_curl_vanish(seed in any::<u64>(), harmonic in any::<bool>()) {
        let v = planar_field(&mut Sampler::new(seed), harmonic);
        let calm = divergence(&v).is_zero() && curl2d(&v).unwrap().is_zero();
        prop_assert_eq!(complexify(&v).is_holomorphic(), calm);
        if harmonic {
            prop_assert!(calm);
        }
    }

    #[test]
    fn integral_ignores_vertex_order(seed in any::<u64>(), d in 2usize..=3, perm in 0usize..24) {
        let mut s = Sampler::new(seed);
        let t = s.simplex(d);
        let p = s.poly(d, 4);
        let mut order: Vec<usize> = (0..=d).collect();
        // Decode `perm` as a permutation of the d+1 vertices.
        let mut code = perm;
        for i in (1..order.len()).rev() {
            order.swap(i, code % (i + 1));
            code /= i + 1;
        }
        let permuted = t.permuted(&order).unwrap();
        prop_assert_eq!(integrate_simplex(&p, &t).unwrap(), integrate_simplex(&p, &permuted).unwrap());
    }

    #[test]
    fn integral_is_additive_over_centroid_split(seed in any::<u64>(), d in 2usize..=3) {
        let mut s = Sampler::new(seed);
        let t = s.simplex(d);
        let p = s.poly(d, 3);
        let n = Rational::from(d as i64 + 1);
        let centroid: Vec<Rational> = (0..d)
            .map(|c| t.vertices().iter().map(|v| v[c].clone()).sum::<Rational>() / n.clone())
            .collect();
        let mut total = Rational::zero();
        for i in 0..=d {
            let mut vs = t.vertices().to_vec();
            vs[i] = centroid.clone();
            total += integrate_simplex(&p, &Simplex::new(d, vs).unwrap()).unwrap();
        }
        prop_assert_eq!(total, integrate_simplex(&p, &t).unwrap());
    }

    #[test]
    fn green_identities_hold(seed in any::<u64>(), d in 2usize..=3) {
        let mut s = Sampler::new(seed);
        let t = s.simplex(d);
        let v = s.field(d, 4);
        let q = s.poly(d, 3);
        prop_assert!(green_residual(&v, &q, &t, GreenMode::Div).unwrap().is_zero());
        if d == 2 {
            prop_assert!(green_residual(&v, &q, &t, GreenMode::Curl).unwrap().is_zero());
        } else {
            let qv = s.field(3, 3);
            prop_assert!(green_residual_curl3d(&v, &qv, &t).unwrap().is_zero());
        }
    }

    #[test]
    fn m_entries_are_segment_integrals(seed in any::<u64>(), k in 1u32..=4) {
        let zt = Sampler::new(seed).triple();
        let m = build_m(k, &zt);
        for i in 0..2 * k as usize {
            for j in 0..2 * k as usize {
                let (end, col) = if j < k as usize { (&zt.z2, j) } else { (&zt.z3, j - k as usize) };
                let mut coeffs = vec![GaussianRational::zero(); i + col + 1];
                coeffs[i + col] = GaussianRational::one();
                prop_assert_eq!(&m[(i, j)], &segment_integral(&coeffs, &zt.z1, end));
            }
        }
    }

    #[test]
    fn det_m_translation_invariant(seed in any::<u64>(), k in 1u32..=4) {
        let mut s = Sampler::new(seed);
        let zt = s.triple();
        let c = s.gaussian();
        prop_assert_eq!(build_m(k, &zt).det().unwrap(), build_m(k, &zt.translate(&c)).det().unwrap());
    }

    #[test]
    fn det_m_swap_sign(seed in any::<u64>(), k in 1u32..=4) {
        let zt = Sampler::new(seed).triple();
        let det = build_m(k, &zt).det().unwrap();
        let swapped = build_m(k, &zt.reversed()).det().unwrap();
        let expect = if k % 2 == 0 { det } else { -&det };
        prop_assert_eq!(swapped, expect);
    }

    #[test]
    fn cauchy_closed_form_matches_elimination(
        a in proptest::collection::btree_set(1i64..40, 1..=5),
        b in proptest::collection::btree_set(0i64..40, 1..=5),
    ) {
        let n = a.len().min(b.len());
        let a: Vec<Rational> = a.into_iter().take(n).map(Rational::from).collect();
        let b: Vec<Rational> = b.into_iter().rev().take(n).map(|x| Rational::new(x, 3)).collect();
        let closed = cauchy_det(&a, &b).unwrap();
        prop_assert_eq!(closed, cauchy_matrix(&a, &b).unwrap().det().unwrap());
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn planar_verdict_ignores_vertex_order(seed in any::<u64>(), k in 1u32..=3) {
        let t = Sampler::new(seed).simplex(2);
        let r = unisolvence(k, 2, &t).unwrap();
        let p = unisolvence(k, 2, &t.permuted(&[2, 0, 1]).unwrap()).unwrap();
        prop_assert!(r.is_unisolvent());
        prop_assert_eq!(r.rank, p.rank);
    }

    /// The space is translation invariant, so the kernel dimension of the
    /// quadratic 3D system cannot change under a shift.
    #[test]
    fn kernel_dimension_translation_invariant(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let t = s.simplex(3);
        let shift: Vec<Rational> = (0..3).map(|_| s.rational()).collect();
        let moved: Vec<Vec<Rational>> =
            t.vertices().iter().map(|v| v.iter().zip(&shift).map(|(a, b)| a + b).collect()).collect();
        let a = unisolvence(2, 3, &t).unwrap();
        let b = unisolvence(2, 3, &Simplex::new(3, moved).unwrap()).unwrap();
        prop_assert_eq!(a.kernel.len(), b.kernel.len());
    }

    /// Fields annihilated by every functional are divergence and curl free.
    #[test]
    fn kernel_fields_are_calm(seed in any::<u64>()) {
        let t = Sampler::new(seed).simplex(3);
        let sys = DofSystem::new(2, 3, &t).unwrap();
        let r = unisolv::dofsys::UnisolvenceReport::from_system(&sys).unwrap();
        for kf in &r.kernel {
            prop_assert!(divergence(&kf.field).is_zero());
            prop_assert!(curl3d(&kf.field).unwrap().is_zero());
            let col = sys.matrix.mul_vec(&kf.coefficients).unwrap();
            prop_assert!(col.iter().all(Rational::is_zero));
        }
    }
}

#[test]
fn triple_helpers() {
    let zt = ComplexTriple::new(GaussianRational::zero(), GaussianRational::one(), GaussianRational::i());
    assert!(zt.pairwise_distinct());
    assert_eq!(zt.reversed().z1, GaussianRational::i());
}
