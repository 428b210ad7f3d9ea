use std::sync::Arc;

use proptest::prelude::*;
use qcgamma::cohomology_ring::symmetric::{ring_basis, schur_poly, symmetric_to_class, symmetric_to_class_elimination};
use qcgamma::cohomology_ring::{box_partitions, satake, ssyt_contents, wedge_pairing};
use qcgamma::{CohClass, Error, Kind, Partition, Ring, C64};

fn grass(r: usize, n: usize) -> Arc<Ring> {
    Ring::build(Kind::Grassmannian { r, n }).unwrap()
}

fn proj(n: usize) -> Arc<Ring> {
    Ring::build(Kind::ProjSpace { n }).unwrap()
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn class(ring: &Arc<Ring>, terms: &[(&str, f64)]) -> CohClass {
    let mut c = CohClass::zero(ring);
    for (l, v) in terms {
        c.coeffs_mut()[ring.parse_label(l).unwrap()] += *v;
    }
    c
}

fn assert_class_eq(a: &CohClass, b: &CohClass, tol: f64) {
    let d = a.max_abs_diff(b);
    assert!(d <= tol, "classes differ by {d}:\n{:?}\n{:?}", a.coeffs(), b.coeffs());
}

#[test]
fn basis_order_of_g24() {
    let g = grass(2, 4);
    let labels: Vec<String> = (0..g.rank()).map(|i| g.label_string(i)).collect();
    assert_eq!(labels, ["[]", "[1]", "[2]", "[1,1]", "[2,1]", "[2,2]"]);
    let p = proj(3);
    let labels: Vec<String> = (0..p.rank()).map(|i| p.label_string(i)).collect();
    assert_eq!(labels, ["h^0", "h^1", "h^2"]);
}

#[test]
fn rank_is_binomial() {
    for (r, n, k) in [(1, 5, 5), (2, 4, 6), (2, 5, 10), (3, 6, 20), (2, 6, 15)] {
        assert_eq!(grass(r, n).rank(), k);
    }
}

#[test]
fn cap_and_invalid_rings() {
    assert_eq!(
        Ring::build(Kind::Grassmannian { r: 5, n: 12 }).unwrap_err(),
        Error::TableCap { size: 792, cap: 300 }
    );
    assert!(matches!(Ring::build(Kind::Grassmannian { r: 3, n: 3 }), Err(Error::InvalidRing(_))));
    assert!(matches!(Ring::build(Kind::ProjSpace { n: 1 }), Err(Error::InvalidRing(_))));
}

#[test]
fn target_parsing() {
    assert_eq!("P(3)".parse::<Kind>().unwrap(), Kind::ProjSpace { n: 4 });
    assert_eq!("G(2,5)".parse::<Kind>().unwrap(), Kind::Grassmannian { r: 2, n: 5 });
    assert!("Q(2)".parse::<Kind>().is_err());
}

#[test]
fn g24_cup_products() {
    let g = grass(2, 4);
    let s1 = class(&g, &[("[1]", 1.0)]);
    assert_class_eq(&(&s1 * &s1), &class(&g, &[("[2]", 1.0), ("[1,1]", 1.0)]), 0.0);
    let s2 = class(&g, &[("[2]", 1.0)]);
    let s11 = class(&g, &[("[1,1]", 1.0)]);
    assert_class_eq(&(&s2 * &s11), &CohClass::zero(&g), 0.0);
    assert_class_eq(&(&s2 * &s2), &class(&g, &[("[2,2]", 1.0)]), 0.0);
    assert_class_eq(&(&s1 * &class(&g, &[("[2,1]", 1.0)])), &class(&g, &[("[2,2]", 1.0)]), 0.0);
}

#[test]
fn quantum_pieri_examples() {
    let g = grass(2, 4);
    let qp = g.quantum_pieri(1, &part("[2,1]")).unwrap();
    assert_class_eq(&qp.by_q[0], &class(&g, &[("[2,2]", 1.0)]), 0.0);
    assert_class_eq(&qp.by_q[1], &CohClass::one(&g), 0.0);
    let qp = g.quantum_pieri(1, &part("[2,2]")).unwrap();
    assert_class_eq(&qp.by_q[1], &class(&g, &[("[1]", 1.0)]), 0.0);
    let p = proj(3);
    let qp = p.quantum_pieri(1, &part("[2]")).unwrap();
    assert_class_eq(&qp.by_q[0], &CohClass::zero(&p), 0.0);
    assert_class_eq(&qp.by_q[1], &CohClass::one(&p), 0.0);
    assert!(matches!(g.quantum_pieri(3, &part("[1]")), Err(Error::OutOfRange(_))));
}

#[test]
fn degree_of_grassmannians() {
    // int sigma_1^{dim}: 1 on projective space, Catalan-type degrees on G(2,N), 42 on G(3,6)
    for (r, n, deg) in [(1, 4, 1.0), (2, 4, 2.0), (2, 5, 5.0), (2, 6, 14.0), (3, 6, 42.0)] {
        let g = grass(r, n);
        let s1 = class(&g, &[("[1]", 1.0)]);
        let mut p = CohClass::one(&g);
        for _ in 0..g.dim() {
            p = &p * &s1;
        }
        assert_eq!(p.integrate(), C64::new(deg, 0.0), "G({r},{n})");
    }
}

#[test]
fn poincare_duality() {
    for g in [grass(2, 4), grass(2, 5), grass(3, 6), proj(5)] {
        for i in 0..g.rank() {
            for j in 0..g.rank() {
                let a = CohClass::<f64>::basis(&g, i);
                let b = CohClass::<f64>::basis(&g, j);
                let pr = a.pair(&b).unwrap().re;
                let expected = if g.labels()[j] == g.labels()[i].complement(g.r(), g.n() - g.r()) { 1.0 } else { 0.0 };
                assert_eq!(pr, expected);
                assert_eq!(pr, g.pairing(i, j) as f64);
            }
        }
    }
}

/// Independent oracle: multiply Schur polynomials in the roots and expand
/// by leading-term elimination.
#[test]
fn cup_table_matches_schur_polynomial_products() {
    for g in [grass(2, 4), grass(2, 5), grass(3, 6), proj(4)] {
        let basis = ring_basis(&g);
        let polys: Vec<_> = g.labels().iter().map(|l| schur_poly::<f64>(&basis, l)).collect();
        for i in 0..g.rank() {
            for j in i..g.rank() {
                let oracle = symmetric_to_class_elimination(&polys[i].mul(&polys[j]), &g);
                let table = &CohClass::basis(&g, i) * &CohClass::basis(&g, j);
                assert_class_eq(&table, &oracle, 1e-9);
            }
        }
    }
}

#[test]
fn alternant_and_elimination_expansions_agree() {
    let g = grass(3, 6);
    let basis = ring_basis(&g);
    let s21 = schur_poly::<f64>(&basis, &part("[2,1]"));
    let s1 = schur_poly::<f64>(&basis, &part("[1]"));
    let p = s21.mul(&s1).mul(&s1).add(&s1.exp());
    assert_class_eq(&symmetric_to_class(&p, &g), &symmetric_to_class_elimination(&p, &g), 1e-10);
}

#[test]
fn ssyt_counts_give_schur_module_ranks() {
    // dim S^nu C^r by the hook-content formula
    fn hook_content(nu: &Partition, r: usize) -> usize {
        let mut num = 1i64;
        let mut den = 1i64;
        for (i, &l) in nu.parts().iter().enumerate() {
            for j in 0..l as usize {
                num *= r as i64 + j as i64 - i as i64;
                let arm = l as usize - j - 1;
                let leg = (i + 1..nu.len()).filter(|&k| nu.part(k) as usize > j).count();
                den *= (arm + leg + 1) as i64;
            }
        }
        (num / den) as usize
    }
    for nu in box_partitions(3, 3) {
        assert_eq!(ssyt_contents(&nu, 3).len(), hook_content(&nu, 3), "{nu}");
    }
    assert_eq!(ssyt_contents(&part("[2,1]"), 2).len(), 2);
}

#[test]
fn grading_operators() {
    let g = grass(2, 5);
    for i in 0..g.rank() {
        let a = CohClass::<f64>::basis(&g, i);
        // [mu, rho] = rho
        let lhs = &a.rho().mu() - &a.mu().rho();
        assert_class_eq(&lhs, &a.rho(), 1e-12);
        for j in 0..g.rank() {
            let b = CohClass::<f64>::basis(&g, j);
            let x = a.mu().pair(&b).unwrap() + a.pair(&b.mu()).unwrap();
            assert!(x.norm() < 1e-12);
            let y = a.rho().pair(&b).unwrap() - a.pair(&b.rho()).unwrap();
            assert!(y.norm() < 1e-12);
        }
    }
}

#[test]
fn ring_exp_ln_inverse() {
    let g = grass(2, 4);
    let x = class(&g, &[("[]", 0.5), ("[1]", 1.5), ("[2]", -0.25), ("[2,1]", 2.0)]);
    assert_class_eq(&x.ln().unwrap().exp(), &x, 1e-12);
    assert_class_eq(&(&x * &x.inv().unwrap()), &CohClass::one(&g), 1e-12);
    let c1 = CohClass::<f64>::c1(&g);
    assert_class_eq(&CohClass::one(&g).exp_rho(C64::new(0.3, 0.0)), &c1.scale(C64::new(0.3, 0.0)).exp(), 1e-12);
}

#[test]
fn satake_of_hyperplane_powers() {
    // Sat(h^{a} ^ h^{b}) with a > b is sigma_{(a-1, b)}
    let p = proj(5);
    let g = grass(2, 5);
    let h = |k: usize| CohClass::<f64>::basis(&p, k);
    let s = satake(&[h(3), h(1)], &g).unwrap();
    assert_class_eq(&s, &class(&g, &[("[2,1]", 1.0)]), 0.0);
    let s = satake(&[h(1), h(3)], &g).unwrap();
    assert_class_eq(&s, &class(&g, &[("[2,1]", -1.0)]), 0.0);
    assert!(matches!(satake(&[h(1)], &g), Err(Error::OutOfRange(_))));
    let wrong = CohClass::<f64>::one(&proj(4));
    assert!(matches!(satake(&[wrong.clone(), wrong], &g), Err(Error::RingMismatch)));
}

#[test]
fn wedge_pairing_sign_law() {
    // (a, b)_{wedge} = (-1)^{r(r-1)/2} (Sat a, Sat b)_G
    for (r, n) in [(2, 4), (2, 5), (3, 6)] {
        let p = proj(n);
        let g = grass(r, n);
        let sign = if (r * (r - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let subs = qcgamma::linalg::subsets(n, r);
        for a in &subs {
            for b in &subs {
                let fa: Vec<CohClass> = a.iter().map(|&i| CohClass::basis(&p, i)).collect();
                let fb: Vec<CohClass> = b.iter().map(|&i| CohClass::basis(&p, i)).collect();
                let lhs = wedge_pairing(&fa, &fb).unwrap();
                let rhs = satake(&fa, &g).unwrap().pair(&satake(&fb, &g).unwrap()).unwrap() * sign;
                assert!((lhs - rhs).norm() < 1e-12, "G({r},{n}) {a:?} {b:?}");
            }
        }
    }
}

#[test]
fn satake_matches_determinant_division() {
    use qcgamma::cohomology_ring::symmetric::{det_poly, MPoly};
    // det(f_j(x_i)) / Delta expanded by elimination, with f_j the polynomial of alpha_j
    let p = proj(5);
    let g = grass(2, 5);
    let basis = ring_basis(&g);
    let a = class(&p, &[("h^0", 1.0), ("h^2", 2.0), ("h^3", -1.0)]);
    let b = class(&p, &[("h^1", 3.0), ("h^4", 0.5)]);
    let f = |c: &CohClass, i: usize| {
        let mut acc = MPoly::zero(&basis);
        for k in 0..p.rank() {
            let mut e = vec![0u32; 2];
            e[i] = k as u32;
            acc = acc.add(&MPoly::monomial(&basis, &e, c.coeff(k)));
        }
        acc
    };
    let m = vec![vec![f(&a, 0), f(&b, 0)], vec![f(&a, 1), f(&b, 1)]];
    let q = det_poly(&m).div_difference(0, 1).unwrap().truncate(g.dim());
    let oracle = symmetric_to_class_elimination(&q, &g);
    assert_class_eq(&satake(&[a, b], &g).unwrap(), &oracle, 1e-10);
}

fn int_class(ring: Arc<Ring>) -> impl Strategy<Value = CohClass> {
    prop::collection::vec(-5i32..=5, ring.rank()).prop_map(move |v| {
        CohClass::from_coeffs(&ring, v.into_iter().map(|x| C64::new(x as f64, 0.0)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cup_is_commutative_and_associative(
        a in int_class(grass(2, 5)), b in int_class(grass(2, 5)), c in int_class(grass(2, 5))
    ) {
        let (ab, ba) = (&a * &b, &b * &a);
        prop_assert_eq!(ab.coeffs(), ba.coeffs());
        let (l, r) = (&ab * &c, &a * &(&b * &c));
        prop_assert_eq!(l.coeffs(), r.coeffs());
    }

    #[test]
    fn cup_respects_grading(i in 0usize..20, j in 0usize..20) {
        let g = grass(3, 6);
        let p = &CohClass::<f64>::basis(&g, i) * &CohClass::basis(&g, j);
        for k in 0..g.rank() {
            if p.coeff(k).norm() != 0.0 {
                prop_assert_eq!(g.degree(k), g.degree(i) + g.degree(j));
            }
        }
    }

    #[test]
    fn pairing_is_symmetric_and_frobenius(
        a in int_class(grass(2, 4)), b in int_class(grass(2, 4)), c in int_class(grass(2, 4))
    ) {
        prop_assert_eq!(a.pair(&b).unwrap(), b.pair(&a).unwrap());
        prop_assert_eq!((&a * &b).pair(&c).unwrap(), a.pair(&(&b * &c)).unwrap());
    }
}

#[test]
fn quantum_pieri_at_q0_is_classical_pieri() {
    for g in [grass(2, 4), grass(2, 5)] {
        let s = |k: usize| class(&g, &[(&format!("[{k}]"), 1.0)]);
        for k in 1..=g.n() - g.r() {
            for (i, lam) in g.labels().iter().enumerate() {
                let qp = g.quantum_pieri(k, lam).unwrap();
                assert_class_eq(&qp.by_q[0], &(&s(k) * &CohClass::basis(&g, i)), 0.0);
            }
        }
    }
}

#[test]
fn satake_is_an_isomorphism_on_standard_wedges() {
    use qcgamma::linalg::{det_i64, subsets};
    for (r, n) in [(2, 4), (2, 5), (3, 6)] {
        let p = proj(n);
        let g = grass(r, n);
        let m: Vec<Vec<i64>> = subsets(n, r)
            .iter()
            .map(|s| {
                let f: Vec<CohClass> = s.iter().rev().map(|&i| CohClass::basis(&p, i)).collect();
                satake(&f, &g).unwrap().coeffs().iter().map(|c| c.re as i64).collect()
            })
            .collect();
        assert_eq!(m.len(), g.rank());
        assert_eq!(det_i64(&m).abs(), 1, "G({r},{n})");
    }
}

#[test]
fn satake_examples_on_p3() {
    let p = proj(4);
    let g = grass(2, 4);
    let h = |k: usize| CohClass::<f64>::basis(&p, k);
    // exponents (lambda_1 + 1, lambda_2)
    assert_class_eq(&satake(&[h(3), h(1)], &g).unwrap(), &class(&g, &[("[2,1]", 1.0)]), 0.0);
    assert_class_eq(&satake(&[h(3), h(2)], &g).unwrap(), &class(&g, &[("[2,2]", 1.0)]), 0.0);
    assert_class_eq(&satake(&[h(1), h(3)], &g).unwrap(), &class(&g, &[("[2,1]", -1.0)]), 0.0);
    assert_class_eq(&satake(&[h(1), h(1)], &g).unwrap(), &CohClass::zero(&g), 0.0);
    assert_eq!(wedge_pairing(&[h(3), h(2)], &[h(0), h(1)]).unwrap(), C64::new(1.0, 0.0));
    assert_eq!(wedge_pairing(&[h(3), h(3)], &[h(0), h(1)]).unwrap(), C64::new(0.0, 0.0));
    assert_eq!(wedge_pairing(&[h(2)], &[h(1)]).unwrap(), h(2).pair(&h(1)).unwrap());
}

#[test]
fn spec_examples_on_pairing_and_grading() {
    let g = grass(2, 5);
    let s21 = class(&g, &[("[2,1]", 1.0)]);
    assert_eq!(s21.pair(&s21).unwrap(), C64::new(1.0, 0.0));
    let p = proj(4);
    let h = CohClass::<f64>::basis(&p, 1);
    assert_class_eq(&h.mu(), &h.scale(C64::new(-0.5, 0.0)), 0.0);
    assert_class_eq(&CohClass::<f64>::basis(&p, 3).rho(), &CohClass::zero(&p), 0.0);
    assert_class_eq(&(&h * &CohClass::basis(&p, 3)), &CohClass::zero(&p), 0.0);
    let g4 = grass(2, 4);
    assert_class_eq(&class(&g4, &[("[1,1]", 1.0)]).mu(), &CohClass::zero(&g4), 0.0);
    let c1 = CohClass::<f64>::c1(&g4);
    assert_class_eq(&c1, &class(&g4, &[("[1]", 4.0)]), 0.0);
}

#[test]
fn class_json_uses_labels() {
    let g = grass(2, 4);
    let v = class(&g, &[("[2,1]", 2.5)]).to_json();
    assert_eq!(v["[2,1]"], serde_json::json!([2.5, 0.0]));
    assert_eq!(v.as_object().unwrap().keys().next().unwrap(), "[]");
}
