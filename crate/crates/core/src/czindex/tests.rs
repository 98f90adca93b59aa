use super::*;
use crate::lagrangian::{intersection_dim, kernel_dim, DoubledSpace};
use crate::maslov::{GeneratorSpec, SymplecticPath};
use crate::random::{random_path, random_symplectic};
use crate::symplinalg::{direct_sum_matrix, max_abs, rotation, standard_j, SymmetricForm, SymplecticMatrix};
use crate::{IndexError, Tolerances};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn tol() -> Tolerances<f64> {
    Tolerances::default()
}

fn rot(chi: f64) -> SymplecticPath<f64> {
    GeneratorSpec::Rotation { chi, fraction: 1.0 }.build(&tol()).unwrap()
}

fn alpha(r: i64, n: usize) -> SymplecticPath<f64> {
    GeneratorSpec::AlphaPower { r, n }.build(&tol()).unwrap()
}

fn sp(m: DMatrix<f64>) -> SymplecticMatrix<f64> {
    SymplecticMatrix::new(m, &tol()).unwrap()
}

#[test]
fn nu_examples() {
    assert_eq!(nu(&SymplecticPath::<f64>::identity(2), &tol()).unwrap(), 0);
    // half-turn e^{πtJ}; the orientation of the doubled space makes this −1
    assert_eq!(nu(&rot(PI), &tol()).unwrap(), -1);
    assert_eq!(nu(&rot(2.0 * PI), &tol()).unwrap(), -2);
    assert_eq!(nu_inverse_check(&rot(PI), &tol()).unwrap(), 1);
    assert_eq!(nu_inverse_check(&SymplecticPath::<f64>::identity(1), &tol()).unwrap(), 0);
}

#[test]
fn nu_of_rotations() {
    for &chi in &[0.3 * PI, 0.9 * PI, 1.5 * PI, 2.0 * PI, 2.4 * PI, 4.0 * PI, 5.7 * PI] {
        let expected = -1 - 2 * (chi / (2.0 * PI)).floor() as i64;
        let expected = if (chi / (2.0 * PI)).fract() == 0.0 { expected + 1 } else { expected };
        assert_eq!(nu(&rot(chi), &tol()).unwrap(), expected, "chi = {chi}");
    }
}

#[test]
fn graph_path_geometry() {
    let d = DoubledSpace::new(1);
    let planes = graph_lagrangian_path(&SymplecticPath::<f64>::identity(1));
    assert_eq!(intersection_dim(&planes[0], &d.diagonal(), &tol()), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=3 {
        let p = random_path::<f64, _>(&mut rng, n, 1.0);
        let d = DoubledSpace::new(n);
        let form = d.form::<f64>();
        for s in p.samples().iter().step_by(7) {
            // σ⊖ vanishes on {(z, Sz)}
            let mut g = DMatrix::zeros(4 * n, 2 * n);
            g.view_mut((0, 0), (2 * n, 2 * n)).fill_with_identity();
            g.view_mut((2 * n, 0), (2 * n, 2 * n)).copy_from(s.matrix());
            assert!(max_abs(&(g.transpose() * &form * &g)) < 1e-9 * max_abs(s.matrix()).powi(2).max(1.0));
        }
        let s = p.endpoint();
        assert_eq!(intersection_dim(&d.graph(s.matrix()), &d.diagonal(), &tol()), kernel_dim(s.matrix(), &tol()));
    }
    let s = direct_sum_matrix(&rotation(0.7), &DMatrix::identity(2, 2));
    assert_eq!(intersection_dim(&DoubledSpace::new(2).graph(&s), &DoubledSpace::new(2).diagonal(), &tol()), 2);
}

#[test]
fn product_and_repetition_examples() {
    assert!(matches!(nu_product(&rot(1.0), &SymplecticPath::identity(1), &tol()), Err(IndexError::DegenerateEndpoint(_))));
    let rec = nu_product(&rot(1.0), &rot(0.5), &tol()).unwrap();
    assert!(rec.holds(), "{rec:?}");
    // r = 2: ν(S²) = 2ν(S) + ½ sign M_S
    let p = rot(0.8 * PI);
    let pw = nu_power(&p, 2, &tol()).unwrap();
    assert_eq!(pw.closed_form_matches(), Some(true));
    assert_eq!(pw.value(), pw.direct);
    assert_eq!(nu_power(&p, 1, &tol()).unwrap().value(), nu(&p, &tol()).unwrap());
}

#[test]
fn oscillator_repetitions_fall_back() {
    let loop_path = GeneratorSpec::Oscillator { omega: 1.0, period: 2.0 * PI }.build(&tol()).unwrap();
    for r in 1..=4u32 {
        let pw = nu_power(&loop_path, r, &tol()).unwrap();
        assert_eq!(pw.fallback, r > 1);
        assert_eq!(pw.value(), -2 * r as i64);
    }
}

#[test]
fn repetition_closed_form_counterexample() {
    // M_S = ½cot(0.45π)·I > 0, yet S³ winds past −I: sign(M_S + M_{S²}) < 0
    let pw = nu_power(&rot(0.9 * PI), 3, &tol()).unwrap();
    assert_eq!(pw.direct, -3);
    assert_eq!(pw.iterated_matches(), Some(true));
    assert_eq!(pw.closed_form.map(|h| h.twice), Some(-2));
    assert_eq!(pw.closed_form_matches(), Some(false));
}

#[test]
fn generating_function_examples() {
    let j = sp(standard_j::<f64>(1));
    let g = generating_function(&j, &tol()).unwrap();
    assert!(max_abs(g.p.matrix()) < 1e-15 && max_abs(g.q.matrix()) < 1e-15);
    assert!((g.l[(0, 0)] - 1.0).abs() < 1e-15);
    assert!((g.w_xx.matrix()[(0, 0)] + 2.0).abs() < 1e-15);
    for &chi in &[0.3, 1.1, 2.5, -0.7] {
        let g = generating_function(&sp(rotation(chi)), &tol()).unwrap();
        assert!((g.w_xx.matrix()[(0, 0)] + 2.0 * (chi / 2.0).tan()).abs() < 1e-12);
        let (lhs, rhs) = det_factorization_check(&sp(rotation(chi)), &tol()).unwrap();
        assert!((lhs - (2.0 - 2.0 * chi.cos())).abs() < 1e-12 && (lhs - rhs).abs() < 1e-12);
    }
    let upper = sp(DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 3.0, 0.5]));
    assert!(matches!(generating_function(&upper, &tol()), Err(IndexError::NotFree)));
}

#[test]
fn factorization_on_random_and_degenerate_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for k in 0..300 {
        let s = random_symplectic::<f64, _>(&mut rng, 1 + k % 3, 0.7);
        let Ok(g) = generating_function(&s, &tol()) else { continue };
        assert!(max_abs(&(g.reconstruct().unwrap() - s.matrix())) <= 1e-8 * max_abs(s.matrix()).max(1.0));
        let (lhs, rhs) = det_factorization_check(&s, &tol()).unwrap();
        assert!((lhs - rhs).abs() <= 1e-7 * lhs.abs().max(1.0));
    }
    // a free matrix with eigenvalue 1: W″xx must be singular
    let shear = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
    let s = sp(direct_sum_matrix(&shear, &rotation(0.9)));
    let (lhs, rhs) = det_factorization_check(&s, &tol()).unwrap();
    assert!(lhs.abs() < 1e-12 && rhs.abs() < 1e-12);
    let g = generating_function(&s, &tol()).unwrap();
    assert!(g.w_xx.matrix().determinant().abs() < 1e-12);
    assert!(matches!(concavity_index(&s, &tol()), Err(IndexError::DegenerateEndpoint(_))));
}

#[test]
fn concavity_examples() {
    assert_eq!(concavity_index(&sp(rotation(0.6 * PI)), &tol()).unwrap(), 1);
    assert_eq!(concavity_index(&sp(rotation(1.6 * PI)), &tol()).unwrap(), 0);
    let s = sp(direct_sum_matrix(&rotation(0.6 * PI), &rotation(1.6 * PI)));
    assert_eq!(concavity_index(&s, &tol()).unwrap(), 1);
    let s = sp(direct_sum_matrix(&rotation(0.6 * PI), &rotation(0.3 * PI)));
    assert_eq!(concavity_index(&s, &tol()).unwrap(), 2);
}

#[test]
fn concavity_route_on_rotations() {
    for &chi in &[0.3 * PI, 0.6 * PI, 1.6 * PI, 2.3 * PI, 4.5 * PI, 5.9 * PI] {
        let rec = nu_via_concavity(&rot(chi), &tol()).unwrap();
        assert!(rec.consistent());
        assert_eq!(rec.via_reduced, -1 - 2 * (chi / (2.0 * PI)).floor() as i64, "chi = {chi}");
        assert_eq!(rec.via_reduced, nu(&rot(chi), &tol()).unwrap());
    }
}

#[test]
fn oracle_examples() {
    assert_eq!(cz_winding_oracle(&rot(PI), &tol()).unwrap(), -1);
    assert!(matches!(cz_winding_oracle(&rot(2.0 * PI), &tol()), Err(IndexError::DegenerateEndpoint(_))));
    let half = rot(PI);
    for r in -2..=2 {
        let p = alpha(r, 1).product(&half, &tol()).unwrap();
        assert_eq!(cz_winding_oracle(&p, &tol()).unwrap(), -1 + 2 * r);
    }
    let hyperbolic = GeneratorSpec::HamiltonianFlow {
        h: SymmetricForm::new(DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])),
        duration: 1.0,
    }
    .build(&tol())
    .unwrap();
    assert_eq!(classify(hyperbolic.endpoint(), &tol()), SpClass::Minus);
    assert_eq!(cz_winding_oracle(&hyperbolic, &tol()).unwrap(), nu(&hyperbolic, &tol()).unwrap());
}

#[test]
fn oracle_on_several_hyperbolic_pairs() {
    // e^{tK} with K = diag(Λ, −Λ) has index 0; the endpoint has |Λ| positive
    // hyperbolic pairs, so no straight Cayley segment reaches the basepoint
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for lambdas in [vec![0.7, 1.3], vec![0.9, 1.6, 2.2], vec![1.1, 0.3]] {
        let n = lambdas.len();
        let mut k = DMatrix::zeros(2 * n, 2 * n);
        for (i, l) in lambdas.iter().enumerate() {
            k[(i, i)] = *l;
            k[(n + i, n + i)] = -*l;
        }
        for conj in [false, true] {
            let kk = if conj {
                let w = random_symplectic::<f64, _>(&mut rng, n, 0.5);
                w.matrix() * &k * w.inverse().matrix()
            } else {
                k.clone()
            };
            let j = standard_j::<f64>(n);
            let h = SymmetricForm::new(-(&j * &kk));
            let p = GeneratorSpec::HamiltonianFlow { h, duration: 1.0 }.build(&tol()).unwrap();
            assert_eq!(cz_winding_oracle(&p, &tol()).unwrap(), 0, "{lambdas:?} conj={conj}");
            assert_eq!(nu(&p, &tol()).unwrap(), 0);
        }
    }
}

#[test]
fn sp_minus_basepoint_is_in_sp_minus() {
    for n in 1..=3 {
        let s = sp_minus_basepoint::<f64>(n);
        assert!(SymplecticMatrix::new(s.matrix().clone(), &tol()).is_ok());
        assert_eq!(classify(&s, &tol()), SpClass::Minus);
    }
}

#[test]
fn f32_nu() {
    let t = Tolerances::<f32>::default();
    let p = GeneratorSpec::<f32>::Rotation { chi: 3.0, fraction: 1.0 }.build(&t).unwrap();
    assert_eq!(nu(&p, &t).unwrap(), -1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn nu_alpha_action_and_inverse(seed in any::<u64>(), n in 1usize..=2, r in -3i64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_path::<f64, _>(&mut rng, n, 1.0);
        let v = nu(&p, &tol()).unwrap();
        prop_assert_eq!(nu(&alpha(r, n).product(&p, &tol()).unwrap(), &tol()).unwrap(), v + 2 * r);
        prop_assert_eq!(nu_inverse_check(&p, &tol()).unwrap(), -v);
    }

    #[test]
    fn nu_matches_oracle_and_concavity(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_path::<f64, _>(&mut rng, n, 1.0);
        prop_assume!(classify(p.endpoint(), &tol()) != SpClass::Zero);
        let v = nu(&p, &tol()).unwrap();
        prop_assert_eq!(cz_winding_oracle(&p, &tol()).unwrap(), v);
        if let Ok(rec) = nu_via_concavity(&p, &tol()) {
            prop_assert!(rec.consistent());
            prop_assert_eq!(rec.via_reduced, v);
        }
    }

    #[test]
    fn nu_product_formula(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_path::<f64, _>(&mut rng, n, 1.0);
        let q = random_path::<f64, _>(&mut rng, n, 1.0);
        match nu_product(&p, &q, &tol()) {
            Ok(rec) => prop_assert!(rec.holds(), "{:?}", rec),
            Err(IndexError::DegenerateEndpoint(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn nu_direct_sum(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_path::<f64, _>(&mut rng, 1, 1.0);
        let q = random_path::<f64, _>(&mut rng, 2, 1.0);
        prop_assert_eq!(
            nu(&p.direct_sum(&q, &tol()).unwrap(), &tol()).unwrap(),
            nu(&p, &tol()).unwrap() + nu(&q, &tol()).unwrap()
        );
    }
}


#[test]
fn shear_endpoint_gives_half_integer() {
    // S_t = [[1, t], [0, 1]]: dim Ker(S − I) = 1
    let p = SymplecticPath::from_fn(1, |t: f64| DMatrix::from_row_slice(2, 2, &[1.0, t, 0.0, 1.0]), 16, &tol()).unwrap();
    let v = nu_half(&p, &tol()).unwrap();
    assert_eq!(v.twice.rem_euclid(2), 1);
    assert_eq!(nu(&p, &tol()), Err(IndexError::HalfIntegerIndex { twice: v.twice }));
    let inv = nu_half(&p.inverse(&tol()).unwrap(), &tol()).unwrap();
    assert_eq!(inv.twice, -v.twice);
}
