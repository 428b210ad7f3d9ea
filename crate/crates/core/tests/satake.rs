use std::f64::consts::PI;

use qcgamma::char_classes::{ch_modified, gamma_class, Bundle};
use qcgamma::cohomology_ring::{box_partitions, sat_normalized};
use qcgamma::mrs::integer_gram;
use qcgamma::quantum_connection::{closed_form_spectrum, eigenvalues};
use qcgamma::satake::*;
use qcgamma::{Kind, Partition, Ring};

#[test]
fn wedge_spectrum_law() {
    for (r, n) in [(1, 4), (1, 5), (2, 4), (2, 5), (3, 6), (2, 6)] {
        let rep = check_wedge_spectrum(r, n).unwrap();
        assert!(rep.residual < 1e-8, "({r}, {n}): {rep:?}");
        assert!(rep.p_residual < 1e-8);
    }
}

#[test]
fn wedge_spectrum_top_value() {
    let (_, g) = rings(2, 5).unwrap();
    let ev = eigenvalues(&g).unwrap();
    let t = ev.iter().fold(f64::MIN, |m, z| m.max(z.re));
    let closed = closed_form_spectrum(2, 5).iter().fold(f64::MIN, |m, z| m.max(z.re));
    assert!((t - 10.0 * (PI / 5.0).cos()).abs() < 1e-8);
    assert!((t - closed).abs() < 1e-8);
    // 5 sin(2 pi / 5) / sin(pi / 5) = 10 cos(pi / 5)
    assert!((closed - 5.0 * (2.0 * PI / 5.0).sin() / (PI / 5.0).sin()).abs() < 1e-12);
}

#[test]
fn kapranov_identity_on_all_boxes() {
    let mut count = 0;
    for (r, n) in [(2, 4), (2, 5), (3, 6)] {
        for nu in box_partitions(r, n - r) {
            let rep = check_kapranov_wedge_identity(r, n, &nu).unwrap();
            assert!(rep.residual < 1e-10, "({r}, {n}) {nu}: {:e}", rep.residual);
            count += 1;
        }
    }
    assert_eq!(count, 6 + 10 + 20);
}

#[test]
fn kapranov_identity_empty_partition_is_gamma_class() {
    let rep = check_kapranov_wedge_identity(2, 4, &Partition::empty()).unwrap();
    let (_, g) = rings(2, 4).unwrap();
    assert!(rep.lhs_roots.max_abs_diff(&gamma_class::<f64>(&g)) < 1e-12);
    assert!(rep.rhs.max_abs_diff(&gamma_class::<f64>(&g)) < 1e-10);
}

#[test]
fn kapranov_identity_degenerates_for_r1() {
    let (p, g) = rings(1, 4).unwrap();
    for k in 0..4 {
        let nu = if k == 0 { Partition::empty() } else { Partition::row(k) };
        let rep = check_kapranov_wedge_identity(1, 4, &nu).unwrap();
        assert!(rep.residual < 1e-13);
        let a = &gamma_class::<f64>(&p) * &ch_modified::<f64>(&Bundle::line(&p, k as i64).unwrap());
        let s = sat_normalized(std::slice::from_ref(&a), &g).unwrap();
        assert_eq!(s.coeffs(), a.coeffs());
    }
}

#[test]
fn kapranov_identity_rejects_partitions_outside_the_box() {
    let nu = Partition::new(&[3]).unwrap();
    assert!(check_kapranov_wedge_identity(2, 4, &nu).is_err());
}

#[test]
fn pairing_is_transported() {
    for (r, n) in [(1, 4), (2, 4), (2, 5)] {
        let d = check_pairing_transport(r, n).unwrap();
        assert!(d < 1e-9, "({r}, {n}): {d:e}");
    }
}

#[test]
fn sat_matrix_is_unimodular() {
    for (r, n) in [(2, 4), (2, 5), (3, 6)] {
        let (p, g) = rings(r, n).unwrap();
        let m = sat_matrix(&p, &g).unwrap();
        // Sat' = (2 pi i)^{-C(r,2)} e^{-(r-1) pi i sigma_1} Sat: the determinant
        // is a root of unity times the power of 2 pi
        let d = qcgamma::linalg::det(&m);
        let k = (r * (r - 1) / 2 * m.len()) as i32;
        let scaled = d.norm() * (2.0 * PI).powi(k);
        assert!((scaled - 1.0).abs() < 1e-8, "({r}, {n}): {scaled}");
    }
}

#[test]
fn mrs_wedge_matches_kapranov() {
    for (r, n, phase) in [(2, 4, -0.05), (2, 5, -0.03), (1, 4, -0.05)] {
        let rep = check_mrs_wedge(r, n, phase).unwrap();
        assert!(rep.pass, "({r}, {n}): {rep:?}");
        assert!(rep.gram_match);
        let (a, b) = (rep.gram_lhs.unwrap(), rep.gram_rhs.unwrap());
        for (i, row) in b.iter().enumerate() {
            assert_eq!(row[i], 1);
            assert!(row[..i].iter().all(|&x| x == 0));
            assert_eq!(a[i][i], 1);
        }
    }
}

#[test]
fn gr24_kapranov_gram_is_integral() {
    let g = Ring::build(Kind::Grassmannian { r: 2, n: 4 }).unwrap();
    let (m, _) = qcgamma::mrs::kapranov_gamma_mrs(&g, -0.05).unwrap();
    let s = m.stokes_matrix().unwrap();
    assert!(integer_gram(&s, 1e-9).is_some());
}
