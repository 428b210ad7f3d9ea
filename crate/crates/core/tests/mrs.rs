use std::f64::consts::PI;
use std::sync::Arc;

use proptest::prelude::*;
use qcgamma::linalg::{det, solve};
use qcgamma::mrs::*;
use qcgamma::quantum_connection::{eigenvalues, multiset_distance};
use qcgamma::special::binomial;
use qcgamma::{Error, Kind, Ring, C64};

fn proj(n: usize) -> Arc<Ring> {
    Ring::build(Kind::ProjSpace { n }).unwrap()
}

fn grass(r: usize, n: usize) -> Arc<Ring> {
    Ring::build(Kind::Grassmannian { r, n }).unwrap()
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn unit(n: usize, i: usize) -> Vec<C64> {
    (0..n).map(|j| c(if i == j { 1.0 } else { 0.0 })).collect()
}

/// Standard basis with the form given by a uni-uppertriangular integer matrix.
fn standard_sob(upper: &[Vec<i64>]) -> Sob {
    let n = upper.len();
    let m = upper.iter().map(|row| row.iter().map(|&x| c(x as f64)).collect()).collect();
    let form = BilinearForm::new((0..n).map(|i| format!("e{i}")).collect(), m);
    Sob::new((0..n).map(|i| unit(n, i)).collect(), Arc::new(form))
}

fn round(g: &[Vec<C64>]) -> Vec<Vec<i64>> {
    integer_gram(g, 1e-9).expect("integral Gram")
}

#[test]
fn beilinson_grams_are_euler_pairings() {
    for n in 2..=5 {
        let ring = proj(n);
        let form = Arc::new(BilinearForm::bracket(&ring).unwrap());
        let basis = beilinson_gamma_basis(&ring).unwrap();
        let sob = Sob::new(basis.iter().map(|b| b.coeffs().to_vec()).collect(), form);
        let rep = gram(&sob);
        assert!(rep.unipotent_upper);
        let g = round(&rep.matrix);
        for i in 0..n {
            for j in 0..n {
                let e = if j >= i { binomial((n - 1 + j - i) as i64, (n - 1) as i64) } else { 0 };
                assert_eq!(g[i][j], e, "P^{} entry ({i}, {j})", n - 1);
            }
        }
    }
}

#[test]
fn gram_examples() {
    let p2 = proj(3);
    let form = Arc::new(BilinearForm::bracket(&p2).unwrap());
    let basis = beilinson_gamma_basis(&p2).unwrap();
    let sob = Sob::new(basis.iter().map(|b| b.coeffs().to_vec()).collect(), form);
    assert_eq!(round(&gram(&sob).matrix), vec![vec![1, 3, 6], vec![0, 1, 3], vec![0, 0, 1]]);
    let p1 = proj(2);
    let form = Arc::new(BilinearForm::bracket(&p1).unwrap());
    let basis = beilinson_gamma_basis(&p1).unwrap();
    let sob = Sob::new(basis.iter().map(|b| b.coeffs().to_vec()).collect(), form);
    assert_eq!(round(&gram(&sob).matrix), vec![vec![1, 2], vec![0, 1]]);
    let id = standard_sob(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    assert_eq!(round(&gram(&id).matrix), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
}

#[test]
fn kapranov_gram_on_gr24() {
    let g = grass(2, 4);
    let form = Arc::new(BilinearForm::bracket(&g).unwrap());
    let basis = kapranov_gamma_basis(&g).unwrap();
    let sob = Sob::new(basis.iter().map(|(_, b)| b.coeffs().to_vec()).collect(), form.clone());
    let rep = gram(&sob);
    assert!(rep.unipotent_upper);
    let m = round(&rep.matrix);
    // first row: chi(O, S^nu V^*) = dim of the GL_4 module of highest weight nu
    for (j, (nu, _)) in basis.iter().enumerate() {
        assert_eq!(m[0][j], weyl_dim(&nu.padded(4)), "{nu:?}");
    }
    // the two classes with marking 0 pair non-trivially before transport
    let i1 = basis.iter().position(|(nu, _)| nu.parts() == [1]).unwrap();
    let i21 = basis.iter().position(|(nu, _)| nu.parts() == [2, 1]).unwrap();
    assert_eq!(m[i1][i21], 16);
}

fn weyl_dim(l: &[u32]) -> i64 {
    let n = l.len();
    let (mut num, mut den) = (1i64, 1i64);
    for i in 0..n {
        for j in i + 1..n {
            num *= l[i] as i64 - l[j] as i64 + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    num / den
}

#[test]
fn mutation_examples() {
    let s = standard_sob(&[vec![1, 3], vec![0, 1]]);
    let f = &s.form;
    let (v1, v2) = (&s.vectors[0], &s.vectors[1]);
    let r = right_mutation(f, v1, v2);
    assert_eq!(r, vec![c(1.0), c(-3.0)]);
    let o = standard_sob(&[vec![1, 0], vec![0, 1]]);
    assert_eq!(left_mutation(&o.form, &o.vectors[1], &o.vectors[0]), o.vectors[1]);
    assert!(right_mutation(f, v1, v1).iter().all(|z| z.norm() == 0.0));
}

#[test]
fn braid_on_p1() {
    let p1 = proj(2);
    let form = Arc::new(BilinearForm::bracket(&p1).unwrap());
    let basis = beilinson_gamma_basis(&p1).unwrap();
    let sob = Sob::new(basis.iter().map(|b| b.coeffs().to_vec()).collect(), form);
    let out = sob.braid_act(&[1]).unwrap();
    let expect: Vec<C64> = sob.vectors[0].iter().zip(&sob.vectors[1]).map(|(a, b)| a - b * 2.0).collect();
    assert!(out.vectors[0].iter().zip(&sob.vectors[1]).all(|(a, b)| (a - b).norm() < 1e-12));
    assert!(out.vectors[1].iter().zip(&expect).all(|(a, b)| (a - b).norm() < 1e-12));
    assert!(gram(&out).unipotent_upper);
    // [v_2, v_1 - 2 v_2) = -2
    assert_eq!(round(&gram(&out).matrix), vec![vec![1, -2], vec![0, 1]]);
    assert!(sob.braid_act(&[2]).is_err());
    assert!(sob.braid_act(&[0]).is_err());
}

#[test]
fn non_sob_is_rejected() {
    let s = standard_sob(&[vec![1, 0], vec![1, 1]]);
    assert!(matches!(s.check(), Err(Error::NotSemiorthonormal(_))));
    assert!(s.braid_act(&[1]).is_err());
}

fn random_upper(n: usize, entries: Vec<i64>) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    let mut k = 0;
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
        for x in row.iter_mut().skip(i + 1) {
            *x = entries[k];
            k += 1;
        }
    }
    m
}

fn sob_strategy() -> impl Strategy<Value = (Sob, Vec<i32>)> {
    (3usize..=6).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        (
            Just(n),
            prop::collection::vec(-3i64..=3, m),
            prop::collection::vec((1..n as i32, any::<bool>()).prop_map(|(k, s)| if s { k } else { -k }), 0..6),
        )
            .prop_map(|(n, e, pre)| (standard_sob(&random_upper(n, e)), pre))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn braid_relations_hold_exactly((s0, pre) in sob_strategy()) {
        // scramble by a short word so the vectors are not the standard basis
        let s = s0.braid_act(&pre).unwrap();
        let n = s.len() as i32;
        for i in 1..n {
            let a = s.braid_act(&[i, -i]).unwrap();
            prop_assert_eq!(&a.vectors, &s.vectors);
            let b = s.braid_act(&[-i, i]).unwrap();
            prop_assert_eq!(&b.vectors, &s.vectors);
            if i + 1 < n {
                let l = s.braid_act(&[i, i + 1, i]).unwrap();
                let r = s.braid_act(&[i + 1, i, i + 1]).unwrap();
                prop_assert_eq!(&l.vectors, &r.vectors);
            }
            for j in i + 2..n {
                let l = s.braid_act(&[i, j]).unwrap();
                let r = s.braid_act(&[j, i]).unwrap();
                prop_assert_eq!(&l.vectors, &r.vectors);
            }
        }
    }

    #[test]
    fn random_words_preserve_semiorthonormality(
        (s, _) in sob_strategy(),
        word in prop::collection::vec((1i32..6, any::<bool>()), 0..=20),
    ) {
        let n = s.len() as i32;
        let mut cur = s;
        // pairings stay exact in f64 while vector entries are below 2^20
        for &(k, p) in &word {
            let k = 1 + (k - 1) % (n - 1);
            let next = cur.braid_act(&[if p { k } else { -k }]).unwrap();
            let big = next.vectors.iter().flatten().fold(0.0f64, |m, z| m.max(z.norm()));
            let rep = gram(&next);
            if big > 2f64.powi(20) {
                break;
            }
            prop_assert!(rep.unipotent_upper);
            prop_assert_eq!(rep.max_lower, 0.0);
            prop_assert_eq!(rep.max_diag_dev, 0.0);
            cur = next;
        }
    }
}

#[test]
fn admissibility_examples() {
    let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
    let p2 = [c(3.0), w * 3.0, w * w * 3.0];
    assert!(is_admissible(&p2, 0.0));
    assert!(!is_admissible(&[c(0.0), c(1.0)], 0.0));
    assert!(is_admissible(&[C64::new(1.0, 2.0)], 0.7));
    // 3 - 3 omega points in direction e^{-i pi / 6}
    assert!(!is_admissible(&p2, -PI / 6.0));
    assert!(!is_admissible(&p2, 5.0 * PI / 6.0));
}

fn orthonormal_mrs(markings: Vec<C64>, phase: f64) -> Result<Mrs, Error> {
    let n = markings.len();
    let s = standard_sob(&random_upper(n, vec![0; n * (n - 1) / 2]));
    Mrs::new(s.vectors, markings, phase, s.form)
}

#[test]
fn sort_by_phase_examples() {
    let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
    let u = vec![c(3.0), w * 3.0, w * w * 3.0];
    let m = orthonormal_mrs(u.clone(), -0.1).unwrap();
    assert_eq!(m.ids, vec![1, 0, 2]);
    let m2 = orthonormal_mrs(u.clone(), -0.1 + 2.0 * PI).unwrap();
    assert_eq!(m2.ids, m.ids);
    let same = orthonormal_mrs(vec![c(1.0); 3], 0.3).unwrap();
    let s = same.sort_by_phase().unwrap();
    assert_eq!(round(&gram(&s).matrix), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    let bad = orthonormal_mrs(vec![c(0.0), c(1.0)], 0.0).unwrap();
    assert!(matches!(bad.sort_by_phase(), Err(Error::InadmissiblePhase(_))));
}

#[test]
fn mrs_rejects_wrong_order() {
    let s = standard_sob(&[vec![1, 2], vec![0, 1]]);
    // v_0 must sit strictly above v_1
    assert!(Mrs::new(s.vectors.clone(), vec![c(0.0), C64::new(0.0, 1.0)], 0.0, s.form.clone()).is_err());
    assert!(Mrs::new(s.vectors.clone(), vec![C64::new(0.0, 1.0), c(0.0)], 0.0, s.form.clone()).is_ok());
    assert!(Mrs::new(s.vectors.clone(), vec![c(0.0), c(0.0)], 0.0, s.form.clone()).is_err());
}

#[test]
fn beilinson_markings_match_spectrum() {
    assert!(multiset_distance(&beilinson_markings(2, 0.0), &[c(2.0), c(-2.0)]) < 1e-12);
    let w = C64::from_polar(1.0, -2.0 * PI / 3.0);
    assert!(multiset_distance(&beilinson_markings(3, 0.0), &[c(3.0), w * 3.0, w * w * 3.0]) < 1e-12);
    for n in 2..=6 {
        let ev = eigenvalues(&proj(n)).unwrap();
        assert!(multiset_distance(&beilinson_markings(n, 0.0), &ev) < 1e-8);
    }
}

#[test]
fn p1_rotation_by_minus_pi() {
    let m = beilinson_gamma_mrs(2, 0.0, 0.3).unwrap();
    // O(1) sits above O at this phase
    assert_eq!(m.ids, vec![1, 0]);
    assert_eq!(round(&m.stokes_matrix().unwrap()), vec![vec![1, -2], vec![0, 1]]);
    let (out, log) = m.rotate_phase(0.3 - PI).unwrap();
    assert_eq!(log.len(), 1);
    assert!(log[0].direction.is_some());
    let g = round(&out.stokes_matrix().unwrap());
    assert_eq!(g[1][0], 0);
    assert_eq!(g[0][1].abs(), 2);
    // with no crossing the vectors do not move
    let (same, log) = m.rotate_phase(0.5).unwrap();
    assert!(log.is_empty());
    assert_eq!(same.vectors, m.vectors);
}

#[test]
fn p2_monodromy_is_unimodular() {
    let m = beilinson_gamma_mrs(3, 0.0, -0.1).unwrap();
    let mono = m.monodromy(1).unwrap();
    let ints = round(&mono);
    assert_eq!(qcgamma::linalg::det_i64(&ints).abs(), 1, "{ints:?}");
    // one turn in each direction cancel
    let (fwd, _) = m.rotate_phase(m.phase - 2.0 * PI).unwrap();
    let (back, _) = fwd.rotate_phase(m.phase).unwrap();
    for (a, b) in back.vectors.iter().zip(&m.vectors) {
        assert!(a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-9));
    }
}

#[test]
fn each_crossing_is_unimodular() {
    let m = beilinson_gamma_mrs(4, 0.0, -0.05).unwrap();
    let mut cur = m.clone();
    let n = m.len();
    let step = 2.0 * PI / 40.0;
    let col = |x: &Mrs| -> Vec<Vec<C64>> { (0..n).map(|i| (0..n).map(|j| x.vectors[j][i]).collect()).collect() };
    for k in 1..=40 {
        let (next, _) = cur.rotate_phase(m.phase - step * k as f64 + 1e-3).unwrap();
        let t = solve(&col(&cur), &col(&next)).unwrap();
        assert!((det(&t).norm() - 1.0).abs() < 1e-9);
        cur = next;
    }
}

#[test]
fn collision_of_non_orthogonal_vectors_is_refused() {
    let m = beilinson_gamma_mrs(2, 0.0, 0.3).unwrap();
    let swapped = vec![m.markings[1], m.markings[0]];
    assert!(matches!(m.move_markings(swapped), Err(Error::Collision(_, _))));
}

#[test]
fn stokes_matrices_are_integral() {
    for n in 3..=4 {
        let m = beilinson_gamma_mrs(n, 0.0, -0.05).unwrap();
        let g = round(&m.stokes_matrix().unwrap());
        for (i, row) in g.iter().enumerate() {
            assert_eq!(row[i], 1);
            assert!(row[..i].iter().all(|&x| x == 0));
        }
    }
    let (m, _) = kapranov_gamma_mrs(&grass(2, 4), -0.05).unwrap();
    let s = m.stokes_matrix().unwrap();
    let g = round(&s);
    assert_eq!(g.len(), 6);
    for (i, row) in g.iter().enumerate() {
        assert_eq!(row[i], 1);
        assert!(row[..i].iter().all(|&x| x == 0));
    }
    // equal markings force vanishing entries both ways
    for b in marking_blocks(&m.markings) {
        for &i in &b {
            for &j in &b {
                if i != j {
                    assert_eq!(g[i][j], 0);
                }
            }
        }
    }
}

#[test]
fn kapranov_markings_on_gr24() {
    let g = grass(2, 4);
    let u = kapranov_markings(&g);
    let zeros = u.iter().filter(|z| z.norm() < 1e-12).count();
    assert_eq!(zeros, 2);
    assert!(multiset_distance(&u, &eigenvalues(&g).unwrap()) < 1e-8);
}

#[test]
fn wedge_examples() {
    let m = beilinson_gamma_mrs(4, 0.0, -0.05).unwrap();
    let w1 = wedge_mrs(&m, 1).unwrap();
    assert_eq!(w1.vectors, m.vectors);
    let w4 = wedge_mrs(&m, 4).unwrap();
    assert_eq!(w4.len(), 1);
    assert!((w4.stokes_matrix().unwrap()[0][0] - 1.0).norm() < 1e-9);
    let sum: C64 = m.markings.iter().sum();
    assert!((w4.markings[0] - sum).norm() < 1e-12);
    let rot = beilinson_gamma_mrs(4, PI / 4.0, -0.05).unwrap();
    let w2 = wedge_mrs(&rot, 2).unwrap();
    assert!(multiset_distance(&w2.markings, &eigenvalues(&grass(2, 4)).unwrap()) < 1e-8);
    assert!(wedge_mrs(&m, 0).is_err() && wedge_mrs(&m, 5).is_err());
}

#[test]
fn mrs_json_shape() {
    let m = beilinson_gamma_mrs(2, 0.0, 0.3).unwrap();
    let j = m.to_json();
    assert_eq!(j["vectors"].as_array().unwrap().len(), 2);
    assert_eq!(j["markings"][0].as_array().unwrap().len(), 2);
    assert!(j["phase"].is_number());
}
