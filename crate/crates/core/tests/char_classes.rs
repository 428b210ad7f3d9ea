use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use qcgamma::char_classes::*;
use qcgamma::cohomology_ring::box_partitions;
use qcgamma::special::{gamma_real, hurwitz_zeta_em, ln_gamma};
use qcgamma::{CohClass, Error, Kind, Partition, Real, Ring, C64, DD};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn grass(r: usize, n: usize) -> Arc<Ring> {
    Ring::build(Kind::Grassmannian { r, n }).unwrap()
}

fn proj(n: usize) -> Arc<Ring> {
    Ring::build(Kind::ProjSpace { n }).unwrap()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn assert_close(a: &CohClass, b: &CohClass, tol: f64) {
    let d = a.max_abs_diff(b);
    assert!(d < tol, "difference {d}:\n{:?}\n{:?}", a.coeffs(), b.coeffs());
}

#[test]
fn zeta_and_euler_constants_in_f64() {
    assert!((f64::zeta(3) - 1.202_056_903_159_594_3).abs() < 1e-15);
    assert!((f64::zeta(48) - 1.0).abs() < 1e-14);
    assert!((f64::euler_gamma() - EULER_GAMMA).abs() < 1e-16);
    assert!((DD::euler_gamma().f64() - EULER_GAMMA).abs() < 1e-16);
}

#[test]
fn hurwitz_zeta_values() {
    // zeta(s, 1) = zeta(s); zeta(-1, a) = -B_2(a)/2; zeta(0, a) = 1/2 - a
    assert!((hurwitz_zeta_em(2.0f64, 1.0) - PI * PI / 6.0).abs() < 1e-14);
    for a in [0.5f64, 1.0, 1.7, 3.0] {
        let b2 = a * a - a + 1.0 / 6.0;
        assert!((hurwitz_zeta_em(-1.0f64, a) + b2 / 2.0).abs() < 1e-12, "a = {a}");
        assert!((hurwitz_zeta_em(0.0f64, a) - (0.5 - a)).abs() < 1e-12);
    }
    // zeta(2, 1/2) = 3 zeta(2)
    assert!((hurwitz_zeta_em(2.0f64, 0.5) - PI * PI / 2.0).abs() < 1e-13);
}

#[test]
fn gamma_function_values() {
    assert!((gamma_real(5.0) - 24.0).abs() < 1e-12);
    assert!((gamma_real(0.5) - PI.sqrt()).abs() < 1e-14);
    assert!((gamma_real(1.5) - PI.sqrt() / 2.0).abs() < 1e-14);
    // |Gamma(i)|^2 = pi / sinh(pi)
    let g = ln_gamma(Complex64::new(0.0, 1.0)).exp();
    assert!((g.norm_sqr() - PI / PI.sinh()).abs() < 1e-14);
    // Gamma(1 + i) = i Gamma(i)
    let g1 = ln_gamma(Complex64::new(1.0, 1.0)).exp();
    assert!((g1 - Complex64::i() * g).norm() < 1e-14);
}

#[test]
fn gamma_class_of_projective_line_and_plane() {
    let p1 = proj(2);
    let g = gamma_class::<f64>(&p1);
    assert_eq!(g.coeff(0), c(1.0, 0.0));
    assert!((g.coeff(1) - c(-2.0 * EULER_GAMMA, 0.0)).norm() < 1e-15);
    let p2 = proj(3);
    let g = gamma_class::<f64>(&p2);
    let z2 = PI * PI / 6.0;
    let expect = [1.0, -3.0 * EULER_GAMMA, 4.5 * EULER_GAMMA * EULER_GAMMA + 1.5 * z2];
    for (k, e) in expect.iter().enumerate() {
        assert!((g.coeff(k) - c(*e, 0.0)).norm() < 1e-14, "h^{k}");
    }
}

#[test]
fn gamma_class_routes_agree() {
    for ring in [proj(3), proj(5), grass(2, 4), grass(2, 5), grass(3, 6)] {
        let a = gamma_class::<f64>(&ring);
        let b = gamma_class_from_roots::<f64>(&ring);
        assert_close(&a, &b, 1e-10);
        assert_eq!(a.coeff(0), c(1.0, 0.0));
        if ring.rank() <= 10 {
            assert_close(&a, &gamma_class_closed_form::<f64>(&ring), 1e-10);
        }
        // the closed form cancels through (2 pi i)^k growth; compare in double-double
        let cf = gamma_class_closed_form::<DD>(&ring).convert::<f64>();
        assert_close(&gamma_class::<DD>(&ring).convert::<f64>(), &cf, 1e-12);
    }
    let g25 = grass(2, 5);
    let g = gamma_class::<f64>(&g25);
    assert!((g.coeff(1) - c(-5.0 * EULER_GAMMA, 0.0)).norm() < 1e-14);
}

#[test]
fn gamma_class_closed_form_at_r1_is_gamma_power() {
    let p = proj(4);
    assert_close(&gamma_class_closed_form::<f64>(&p), &gamma_class_from_roots::<f64>(&p), 1e-13);
}

#[test]
fn double_double_agrees_with_f64() {
    let ring = grass(2, 5);
    let hi = gamma_class::<DD>(&ring).convert::<f64>();
    assert_close(&hi, &gamma_class::<f64>(&ring), 1e-13);
}

#[test]
fn chern_characters() {
    let p2 = proj(3);
    let o1 = Bundle::line(&p2, 1).unwrap();
    let t = C64::new(0.0, 2.0 * PI);
    let ch_o1 = ch_modified::<f64>(&o1);
    for (k, e) in [c(1.0, 0.0), t, t * t / 2.0].iter().enumerate() {
        assert!((ch_o1.coeff(k) - e).norm() < 1e-12);
    }
    let o = Bundle::line(&p2, 0).unwrap();
    assert_close(&ch_modified::<f64>(&o), &CohClass::one(&p2), 1e-15);
    assert_close(&todd::<f64>(&o), &CohClass::one(&p2), 1e-15);

    let g = grass(2, 4);
    let v = Bundle::kapranov(&g, "[1]".parse().unwrap()).unwrap();
    assert_eq!(v.rank(), 2);
    let chv = ch::<f64>(&v);
    assert!((chv.coeff(0) - c(2.0, 0.0)).norm() < 1e-15);
    assert!((chv.coeff(g.parse_label("[1]").unwrap()) - c(1.0, 0.0)).norm() < 1e-15);
    let det = Bundle::kapranov(&g, "[1,1]".parse().unwrap()).unwrap();
    assert_eq!(det.rank(), 1);
    let chd = ch_modified::<f64>(&det);
    assert!((chd.coeff(1) - t).norm() < 1e-12);
}

#[test]
fn modified_classes_rescale_by_degree() {
    for ring in [proj(4), grass(2, 4)] {
        let bundles = [Bundle::tangent(&ring), Bundle::tangent(&ring).dual()];
        for b in bundles {
            let scaled = |x: &CohClass| x.map_by_degree(|p| C64::new(0.0, 2.0 * PI).powi(p as i32));
            let chm = ch_modified::<f64>(&b);
            assert_close(&chm, &scaled(&ch::<f64>(&b)), 1e-9 * (1.0 + chm.max_abs()));
            let td = todd::<f64>(&b);
            assert_close(&td, &scaled(&todd_classical::<f64>(&b)), 1e-9 * (1.0 + td.max_abs()));
        }
    }
}

#[test]
fn kapranov_routes_agree() {
    for (r, n) in [(2, 4), (2, 5), (3, 6)] {
        let g = grass(r, n);
        for nu in box_partitions(r, n - r) {
            let b = Bundle::kapranov(&g, nu.clone()).unwrap();
            let alt = kapranov_ch::<DD>(&g, &nu).unwrap().convert::<f64>();
            let roots = ch_modified::<f64>(&b);
            assert_close(&alt, &roots, 1e-8 * (1.0 + roots.max_abs()));
            assert!((alt.coeff(0) - c(b.rank() as f64, 0.0)).norm() < 1e-10);
        }
    }
    let g = grass(2, 4);
    assert_close(&kapranov_ch::<f64>(&g, &Partition::empty()).unwrap(), &CohClass::one(&g), 1e-11);
    assert!(matches!(kapranov_ch::<f64>(&g, &"[3]".parse().unwrap()), Err(Error::InvalidBundle(_))));
}

#[test]
fn invalid_bundles_are_rejected() {
    let g = grass(2, 4);
    assert!(matches!(Bundle::line(&g, 1), Err(Error::InvalidBundle(_))));
    assert!(matches!(Bundle::kapranov(&g, "[1,1,1]".parse().unwrap()), Err(Error::InvalidBundle(_))));
}

#[test]
fn todd_factorization_of_gamma() {
    // e^{pi i c_1} ((-1)^deg Gamma) Gamma = modified Todd of the tangent bundle
    for ring in [proj(3), proj(4), grass(2, 4)] {
        let g = gamma_class::<f64>(&ring);
        let gstar = g.map_by_degree(|p| C64::new(if p % 2 == 0 { 1.0 } else { -1.0 }, 0.0));
        let lhs = (&gstar * &g).exp_rho(C64::new(0.0, PI));
        let td = todd::<f64>(&Bundle::tangent(&ring));
        assert_close(&lhs, &td, 1e-10 * (1.0 + td.max_abs()));
    }
}

#[test]
fn bracket_examples() {
    let p1 = proj(2);
    let v = |k| gamma_ch::<f64>(&Bundle::line(&p1, k).unwrap());
    assert!((bracket_pairing(&v(0), &v(0)).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    assert!((bracket_pairing(&v(0), &v(1)).unwrap() - c(2.0, 0.0)).norm() < 1e-12);
    assert!(bracket_pairing(&v(1), &v(0)).unwrap().norm() < 1e-12);
    let p2 = proj(3);
    let v = |k| gamma_ch::<f64>(&Bundle::line(&p2, k).unwrap());
    assert!(bracket_pairing(&v(1), &v(0)).unwrap().norm() < 1e-12);
    assert!(matches!(bracket_pairing(&v(0), &CohClass::one(&p1)), Err(Error::RingMismatch)));
}

fn check_lemma(bundles: &[Bundle]) {
    for a in bundles {
        for b in bundles {
            let br = bracket_pairing(&gamma_ch::<f64>(a), &gamma_ch::<f64>(b)).unwrap();
            let chi = euler_pairing_hrr(a, b).unwrap();
            assert!((br - chi.raw).norm() < 1e-9, "{:?} {:?}: {br} vs {}", a.desc(), b.desc(), chi.raw);
            assert!((br - c(chi.value as f64, 0.0)).norm() < 1e-9);
        }
    }
}

#[test]
fn bracket_equals_euler_pairing() {
    for n in [3, 4] {
        let p = proj(n);
        let bs: Vec<Bundle> = (0..n as i64).map(|k| Bundle::line(&p, k).unwrap()).collect();
        check_lemma(&bs);
    }
    let g = grass(2, 4);
    let bs: Vec<Bundle> = box_partitions(2, 2).into_iter().map(|nu| Bundle::kapranov(&g, nu).unwrap()).collect();
    check_lemma(&bs);
}

#[test]
fn euler_pairings_of_line_bundles() {
    for n in [2i64, 3, 4, 5] {
        let p = proj(n as usize);
        for i in -1..3i64 {
            for j in i..i + 4 {
                let chi = euler_pairing_hrr(&Bundle::line(&p, i).unwrap(), &Bundle::line(&p, j).unwrap()).unwrap();
                let expect = qcgamma::special::binomial(n - 1 + j - i, n - 1);
                assert_eq!(chi.value, expect, "P^{} chi(O({i}),O({j}))", n - 1);
            }
        }
    }
    let p2 = proj(3);
    assert_eq!(euler_pairing_hrr(&Bundle::line(&p2, 0).unwrap(), &Bundle::line(&p2, 2).unwrap()).unwrap().value, 6);
    for ring in [grass(2, 4), grass(2, 5), grass(3, 6)] {
        let o = Bundle::kapranov(&ring, Partition::empty()).unwrap();
        assert_eq!(euler_pairing_hrr(&o, &o).unwrap().value, 1);
    }
    let g = grass(2, 4);
    let v = Bundle::kapranov(&g, "[1]".parse().unwrap()).unwrap();
    assert_eq!(euler_pairing_hrr(&v, &v).unwrap().value, 1);
    // chi(O, V^*) = dim H^0(V^*) = N
    let o = Bundle::kapranov(&g, Partition::empty()).unwrap();
    assert_eq!(euler_pairing_hrr(&o, &v).unwrap().value, 4);
}

#[test]
fn zeta_regularized_product_grid() {
    for delta in [0.0, 0.5, 1.0, 2.0] {
        for z in [0.5, 1.0, 2.0] {
            let r = zeta_regularized_product(delta, z).unwrap();
            assert!(r.rel_error < 1e-8, "delta {delta} z {z}: {r:?}");
        }
    }
    let inv_sqrt_2pi = 1.0 / (2.0 * PI).sqrt();
    assert!((zeta_regularized_product(1.0, 1.0).unwrap().numeric - inv_sqrt_2pi).abs() < 1e-9);
    assert!((zeta_regularized_product(0.0, 1.0).unwrap().numeric - inv_sqrt_2pi).abs() < 1e-9);
    // sqrt(2 / 2 pi) 2^{1/2} Gamma(3/2) = 1 / sqrt(2)
    assert!((zeta_regularized_product(1.0, 2.0).unwrap().numeric - 0.5f64.sqrt()).abs() < 1e-9);
    assert!(zeta_regularized_product(1.0, -1.0).is_err());
}
