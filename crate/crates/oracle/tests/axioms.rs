use std::f64::consts::PI;

use proptest::prelude::*;
use zxlab_core::{ComplexMatrix, C64};
use zxlab_oracle::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn col(xs: &[C64]) -> ComplexMatrix {
    ComplexMatrix::column(xs)
}

fn phase_point(t: f64) -> ComplexMatrix {
    col(&[c(1.0, 0.0), C64::from_polar(1.0, t)])
}

fn pair(d: usize) -> StructurePair {
    Family::Fourier(d).pair().unwrap()
}

/// `x ⊙ y` for the structure on the columns of `h`, written out as sums.
fn hadamard_product(h: &ComplexMatrix, x: &[C64], y: &[C64]) -> Vec<C64> {
    let d = h.rows();
    let s = 1.0 / (d as f64).sqrt();
    let mut out = vec![c(0.0, 0.0); d];
    for j in 0..d {
        let (mut ox, mut oy) = (c(0.0, 0.0), c(0.0, 0.0));
        for k in 0..d {
            ox += (h[(k, j)] * s).conj() * x[k];
            oy += (h[(k, j)] * s).conj() * y[k];
        }
        for (k, o) in out.iter_mut().enumerate() {
            *o += ox * oy * h[(k, j)] * s;
        }
    }
    out
}

/// Brute-force closedness of the standard basis (length √D) under the
/// multiplication of `h`'s columns.
fn brute_closed(h: &ComplexMatrix) -> bool {
    let d = h.rows();
    let sd = (d as f64).sqrt();
    let basis: Vec<Vec<C64>> = (0..d)
        .map(|i| (0..d).map(|k| c(if k == i { sd } else { 0.0 }, 0.0)).collect())
        .collect();
    basis.iter().all(|a| {
        basis.iter().all(|b| {
            let p = hadamard_product(h, a, b);
            basis.iter().any(|e| p.iter().zip(e).all(|(u, v)| (u - v).norm() < 1e-9))
        })
    })
}

#[test]
fn qubit_structures_have_expected_units() {
    let z = obs_standard(2);
    assert!(z.unit().max_diff(&col(&[c(1.0, 0.0), c(1.0, 0.0)])) < TOL);
    let x = obs_fourier(2);
    assert!(x.unit().max_diff(&col(&[c(2f64.sqrt(), 0.0), c(0.0, 0.0)])) < TOL);
    for i in 0..2 {
        let mut e = vec![c(0.0, 0.0); 2];
        e[i] = c(1.0, 0.0);
        let e = col(&e);
        assert!((&z.delta * &e).max_diff(&e.kron(&e)) < TOL);
        assert!(((&z.epsilon * &e)[(0, 0)] - c(1.0, 0.0)).norm() < TOL);
    }
}

#[test]
fn classical_and_unbiased_points() {
    let (z, x) = (obs_standard(2), obs_fourier(2));
    let zero = col(&[c(1.0, 0.0), c(0.0, 0.0)]);
    assert!(z.is_classical(&zero));
    assert!(x.is_unbiased(&zero));
    assert!(!z.is_unbiased(&zero));
    for k in 0..16 {
        let t = k as f64 * PI / 8.0;
        assert!(z.is_unbiased(&phase_point(t)), "angle {t}");
        assert!(!z.is_classical(&phase_point(t)));
    }
    for d in 1..=5 {
        let s = obs_fourier(d);
        assert!(s.is_unbiased(&s.unit()));
    }
    assert!(!z.is_unbiased(&col(&[c(0.0, 0.0), c(0.0, 0.0)])));
}

#[test]
fn point_multiplication_adds_phases() {
    let z = obs_standard(2);
    let (a, b) = (0.3, 1.9);
    assert!(z.point_mult(&phase_point(a), &phase_point(b)).max_diff(&phase_point(a + b)) < TOL);
    let pauli_z = ComplexMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
    assert!(z.lambda_map(&phase_point(PI)).max_diff(&pauli_z) < TOL);
    for d in 1..=4 {
        let s = obs_fourier(d);
        let p = col(&(0..d).map(|k| c(k as f64, 1.0 - k as f64)).collect::<Vec<_>>());
        assert!(s.point_mult(&s.unit(), &p).max_diff(&p) < TOL);
    }
}

#[test]
fn inner_product_special_cases() {
    for d in 2..=4 {
        let s = obs_fourier(d);
        let u = s.unit();
        assert!(s.inner_product_check(&u, &u) < TOL);
        let lhs = (&u.adjoint() * &u)[(0, 0)];
        assert!((lhs - c(d as f64, 0.0)).norm() < TOL);
        let b = s.basis.clone().unwrap();
        assert!(s.inner_product_check(&b[0], &b[1]) < TOL);
    }
}

#[test]
fn fourier_constructors_agree() {
    let a = obs_fourier(3);
    let b = obs_from_hadamard(&fourier_matrix(3)).unwrap();
    assert!(a.delta.max_diff(&b.delta) < TOL);
    for d in 1..=5 {
        assert!(obs_fourier(d).check().pass, "d = {d}");
    }
    assert!(brute_closed(&fourier_matrix(4)));
    let s = obs_fourier(4);
    let zs = obs_standard(4).scaled_basis().unwrap();
    for a in &zs {
        for b in &zs {
            assert!(zs.iter().any(|e| s.point_mult(a, b).max_diff(e) < TOL));
        }
    }
}

#[test]
fn dualiser_values() {
    assert!(dualiser(&pair(2)).max_diff(&ComplexMatrix::identity(2)) < TOL);
    // k ↦ −k mod 3, written out.
    let mut perm = ComplexMatrix::zeros(3, 3);
    for k in 0..3 {
        perm[((3 - k) % 3, k)] = c(1.0, 0.0);
    }
    assert!(dualiser(&pair(3)).max_diff(&perm) < TOL, "{}", dualiser(&pair(3)));
    for d in 1..=5 {
        assert!(dualiser(&pair(d)).is_unitary(TOL));
    }
    assert!(dualiser(&Family::F4(1.0).pair().unwrap()).is_unitary(TOL));
}

#[test]
fn hopf_needs_the_dualiser_beyond_qubits() {
    assert!(check_hopf(&pair(2), false).pass);
    for d in 3..=5 {
        assert!(check_hopf(&pair(d), true).pass, "d = {d}");
        assert!(!check_hopf(&pair(d), false).pass, "d = {d}");
    }
}

#[test]
fn complementarity() {
    for d in 2..=5 {
        assert!(check_complementary(&pair(d)).unwrap().pass);
    }
    let same = StructurePair::new(obs_standard(2), obs_standard(2)).unwrap();
    assert!(!check_complementary(&same).unwrap().pass);
}

#[test]
fn coherence_and_coherify() {
    assert!(check_coherent(&pair(2)).pass);
    // Re-phase the Fourier basis at d = 3.
    let fb = obs_fourier(3).basis.unwrap();
    let phases = [0.7, -1.3, 2.2];
    let moved: Vec<ComplexMatrix> = fb.iter().zip(phases).map(|(v, t)| v.scale(C64::from_polar(1.0, t))).collect();
    let p = StructurePair::new(obs_standard(3), obs_from_basis(&moved).unwrap()).unwrap();
    assert!(check_complementary(&p).unwrap().pass);
    assert!(!check_coherent(&p).pass);
    let fixed = coherify(&p).unwrap();
    assert!(check_coherent(&fixed).pass);
    // Same observables: each new vector is an old one up to phase.
    for (a, b) in fixed.right().basis.as_ref().unwrap().iter().zip(&moved) {
        let o = (&a.adjoint() * b)[(0, 0)];
        assert!((o.norm() - 1.0).abs() < TOL);
    }
    let again = coherify(&fixed).unwrap();
    assert!(again.right().delta.max_diff(&fixed.right().delta) < TOL);
    assert!(again.left().delta.max_diff(&fixed.left().delta) < TOL);
}

#[test]
fn closed_pairs() {
    for d in 2..=5 {
        let p = pair(d);
        for r in [check_closed(&p), check_oper_comm(&p), check_comul_comm(&p), check_bialg_comm(&p)] {
            let r = r.unwrap();
            assert!(r.pass, "d = {d}: {r:?}");
        }
    }
    assert!(brute_closed(&f4_matrix(0.0)));
    assert!(check_closed(&Family::F4(0.0).pair().unwrap()).unwrap().pass);
}

#[test]
fn f4_one_is_complementary_and_coherent_but_not_closed() {
    let p = Family::F4(1.0).pair().unwrap();
    assert!(check_complementary(&p).unwrap().pass);
    assert!(check_coherent(&p).pass);
    assert!(!brute_closed(&f4_matrix(1.0)));
    for r in [check_closed(&p), check_oper_comm(&p), check_comul_comm(&p), check_bialg_comm(&p)] {
        assert!(!r.unwrap().pass);
    }
}

#[test]
fn four_predicates_agree() {
    let families = [
        Family::Fourier(2),
        Family::Fourier(3),
        Family::Fourier(4),
        Family::Fourier(5),
        Family::F4(0.0),
        Family::F4(1.0),
        Family::F4(PI / 3.0),
    ];
    for f in families {
        let p = f.pair().unwrap();
        let v = [
            check_closed(&p).unwrap().pass,
            check_oper_comm(&p).unwrap().pass,
            check_comul_comm(&p).unwrap().pass,
            check_bialg_comm(&p).unwrap().pass,
        ];
        assert!(v.iter().all(|b| *b == v[0]), "{f}: {v:?}");
        assert_eq!(v[0], brute_closed(&match f {
            Family::Fourier(d) => fourier_matrix(d),
            Family::F4(x) => f4_matrix(x),
        }), "{f}");
        // Hopf and complementarity go together; a scaled bialgebra is Hopf.
        let hopf = check_hopf(&p, true).pass;
        assert_eq!(hopf, check_complementary(&p).unwrap().pass, "{f}");
        if v[3] && check_coherent(&p).pass {
            assert!(hopf, "{f}");
        }
        assert!(check_dimension(&p).pass);
    }
}

#[test]
fn automorphisms() {
    let p = pair(2);
    let ks = p.left().scaled_basis().unwrap();
    let k0 = p.right().lambda_map(&ks[0]);
    assert!(k0.max_diff(&ComplexMatrix::identity(2)) < TOL);
    let k1 = p.right().lambda_map(&ks[1]);
    for k in 0..16 {
        let t = k as f64 * PI / 8.0;
        // X sends the Z phase α to −α, with global phase e^{iα}.
        let want = phase_point(-t).scale(C64::from_polar(1.0, t));
        assert!((&k1 * &phase_point(t)).max_diff(&want) < TOL);
    }
    for d in [2, 3, 4] {
        assert!(check_automorphism(&pair(d), GRID_SAMPLES, 5).unwrap().pass, "d = {d}");
    }
    // Each K permutes the d = 3 grid, up to the global phase the grid
    // normalizes away.
    let p3 = pair(3);
    let grid = p3.left().unbiased_grid(GRID_SAMPLES, 5).unwrap();
    for k in p3.left().scaled_basis().unwrap() {
        let kk = p3.right().lambda_map(&k);
        for a in &grid {
            let ka = &kk * a;
            let ka = ka.scale(ka[(0, 0)].conj() / ka[(0, 0)].norm());
            assert!(grid.iter().any(|b| b.max_diff(&ka) < TOL));
        }
    }
}

#[test]
fn phase_groups() {
    for os in [obs_standard(2), obs_fourier(2), obs_standard(3), obs_fourier(3)] {
        let r = check_phase_group(&os, GRID_SAMPLES, 9).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn transpose_and_conjugate() {
    let z = obs_standard(2);
    let id = ComplexMatrix::identity(2);
    let (t, cj) = transpose_conjugate(&id, &z, &z).unwrap();
    assert!(t.max_diff(&id) < TOL && cj.max_diff(&id) < TOL);
    let f = ComplexMatrix::diag(&[c(1.0, 0.0), c(0.0, 1.0)]);
    let (_, cj) = transpose_conjugate(&f, &z, &z).unwrap();
    assert!(cj.max_diff(&ComplexMatrix::diag(&[c(1.0, 0.0), c(0.0, -1.0)])) < TOL);
    assert!(transpose_conjugate(&f, &obs_standard(3), &z).is_err());
}

#[test]
fn tensor_structures() {
    let zz = obs_tensor(&obs_standard(2), &obs_standard(2));
    assert!(zz.check().pass);
    let a = col(&[c(1.0, 0.0), c(0.0, 0.0)]);
    let b = col(&[c(0.0, 0.0), c(1.0, 0.0)]);
    assert!(zz.is_classical(&a.kron(&b)));
    let p = pair_tensor(&pair(2), &pair(2));
    assert!(check_complementary(&p).unwrap().pass);
    assert!(check_closed(&p).unwrap().pass);
    assert!(check_hopf(&p, true).pass);
}

#[test]
fn reports_serialize() {
    let r = check_hopf(&pair(3), false);
    let j = r.to_json();
    for key in ["check", "dim", "residual", "pass", "witnesses"] {
        assert!(j.get(key).is_some(), "{key}");
    }
    assert_eq!(j["dim"], 3);
    let back: Report = serde_json::from_value(j).unwrap();
    assert_eq!(back, r);
}

fn rand_vec(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d).prop_map(|v| {
        ComplexMatrix::column(&v.into_iter().map(|(a, b)| C64::new(a, b)).collect::<Vec<_>>())
    })
}

fn rand_mat(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d * d)
        .prop_map(move |v| ComplexMatrix::from_vec(d, d, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inner_product_through_multiplication(
        (d, a, b) in (2usize..5).prop_flat_map(|d| (Just(d), rand_vec(d), rand_vec(d)))
    ) {
        for os in [obs_standard(d), obs_fourier(d)] {
            prop_assert!(os.inner_product_check(&a, &b) <= TOL);
        }
    }

    #[test]
    fn conjugation_is_an_involution((d, f) in (2usize..4).prop_flat_map(|d| (Just(d), rand_mat(d)))) {
        let (z, x) = (obs_standard(d), obs_fourier(d));
        let (_, once) = transpose_conjugate(&f, &x, &z).unwrap();
        let (_, twice) = transpose_conjugate(&once, &x, &z).unwrap();
        prop_assert!(twice.max_diff(&f) <= TOL);
        let (t, _) = transpose_conjugate(&f, &z, &z).unwrap();
        prop_assert!(t.max_diff(&f.transpose()) <= TOL);
    }

    #[test]
    fn multiplication_is_commutative_with_unit((d, a, b) in (1usize..5).prop_flat_map(|d| (Just(d), rand_vec(d), rand_vec(d)))) {
        let s = obs_fourier(d);
        prop_assert!(s.point_mult(&a, &b).max_diff(&s.point_mult(&b, &a)) <= TOL);
        prop_assert!(s.point_mult(&s.unit(), &a).max_diff(&a) <= TOL);
        prop_assert!(s.conjugate_point(&s.conjugate_point(&a)).max_diff(&a) <= TOL);
    }

    #[test]
    fn tensor_of_classical_points_is_classical(d1 in 1usize..4, d2 in 1usize..4, i in 0usize..3, j in 0usize..3) {
        let (a, b) = (obs_fourier(d1), obs_fourier(d2));
        let (pa, pb) = (&a.basis.clone().unwrap()[i % d1], &b.basis.clone().unwrap()[j % d2]);
        let t = obs_tensor(&a, &b);
        prop_assert!(t.check().pass);
        prop_assert!(t.is_classical(&pa.kron(pb)));
    }

    #[test]
    fn random_rephasing_is_repaired(t in prop::collection::vec(-3.0f64..3.0, 3), u in prop::collection::vec(-3.0f64..3.0, 3)) {
        let rephase = |b: Vec<ComplexMatrix>, ts: &[f64]| -> Vec<ComplexMatrix> {
            b.iter().zip(ts).map(|(v, t)| v.scale(C64::from_polar(1.0, *t))).collect()
        };
        let z = obs_from_basis(&rephase(obs_standard(3).basis.unwrap(), &t)).unwrap();
        let x = obs_from_basis(&rephase(obs_fourier(3).basis.unwrap(), &u)).unwrap();
        let fixed = coherify(&StructurePair::new(z, x).unwrap()).unwrap();
        prop_assert!(check_coherent(&fixed).pass);
        prop_assert!(check_complementary(&fixed).unwrap().pass);
        prop_assert!(check_closed(&fixed).unwrap().pass);
    }
}
