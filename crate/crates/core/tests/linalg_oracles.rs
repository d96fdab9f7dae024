//! Linear-algebra kernels checked against independent constructions.

use nalgebra::Schur;
use symmono::linalg::{
    self, devectorize, eigenvalues, hermitian_eig, hermitian_matrix_function, hermitian_power, kron, matrix_exp,
    null_space_basis, vectorize, CMatrix, HermitianMatrix, SingularPolicy, C64,
};
use symmono::superop::random::{ginibre, random_hermitian, rng_from_seed};

/// `exp(A) = V e^Λ V⁻¹` with eigenvectors obtained from the Schur form by
/// back substitution. Valid for matrices with distinct eigenvalues.
fn exp_by_diagonalization(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let (q, t) = Schur::new(a.clone()).unpack();
    let mut y = CMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        y[(k, k)] = C64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut s = C64::new(0.0, 0.0);
            for j in i + 1..=k {
                s += t[(i, j)] * y[(j, k)];
            }
            y[(i, k)] = -s / (t[(i, i)] - lambda);
        }
    }
    let v = &q * y;
    let v_inv = v.clone().try_inverse().unwrap();
    let exp_diag = CMatrix::from_diagonal(&t.diagonal().map(|z| z.exp()));
    v * exp_diag * v_inv
}

#[test]
fn matrix_exp_matches_diagonalization() {
    let mut rng = rng_from_seed(100);
    for &scale in &[0.01, 0.5, 1.0, 3.0, 8.0] {
        for _ in 0..5 {
            let a = ginibre(4, 4, &mut rng).scale(scale);
            let got = matrix_exp(&a).unwrap();
            let want = exp_by_diagonalization(&a);
            let err = (&got - &want).norm() / want.norm();
            assert!(err < 1e-11, "scale {scale}: relative error {err:e}");
        }
    }
}

#[test]
fn matrix_exp_of_nilpotent_and_hermitian() {
    // Jordan block: exp(λI + N) = e^λ (I + N + N²/2).
    let lambda = C64::new(0.3, -1.2);
    let mut j = CMatrix::identity(3, 3) * lambda;
    j[(0, 1)] = C64::new(1.0, 0.0);
    j[(1, 2)] = C64::new(1.0, 0.0);
    let n = &j - CMatrix::identity(3, 3) * lambda;
    let want = (CMatrix::identity(3, 3) + &n + (&n * &n).scale(0.5)) * lambda.exp();
    assert!((matrix_exp(&j).unwrap() - want).norm() < 1e-14);

    let mut rng = rng_from_seed(101);
    let h = random_hermitian(5, &mut rng);
    let spec = hermitian_eig(&h);
    let want = spec.eigenvectors.clone()
        * CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            5,
            spec.eigenvalues.iter().map(|&x| C64::new(0.0, 2.0 * x).exp()),
        ))
        * spec.eigenvectors.adjoint();
    let got = matrix_exp(&h.as_matrix().map(|z| z * C64::new(0.0, 2.0))).unwrap();
    assert!((got - want).norm() < 1e-13);
}

#[test]
fn matrix_exp_group_law() {
    let mut rng = rng_from_seed(102);
    let a = ginibre(3, 3, &mut rng);
    let half = matrix_exp(&a.scale(0.5)).unwrap();
    let full = matrix_exp(&a).unwrap();
    assert!((&half * &half - &full).norm() < 1e-12 * full.norm());
    let inv = matrix_exp(&a.scale(-1.0)).unwrap();
    assert!((full * inv - CMatrix::identity(3, 3)).norm() < 1e-12);
}

#[test]
fn vectorization_identity() {
    let mut rng = rng_from_seed(103);
    for (r, k, c) in [(2, 3, 4), (3, 3, 3), (1, 2, 5)] {
        let a = ginibre(r, k, &mut rng);
        let x = ginibre(k, k, &mut rng);
        let b = ginibre(k, c, &mut rng);
        let lhs = vectorize(&(&a * &x * &b));
        let rhs = kron(&b.transpose(), &a) * vectorize(&x);
        assert!((lhs - rhs).norm() < 1e-13);
        assert_eq!(devectorize(&vectorize(&x), k, k).unwrap(), x);
    }
}

#[test]
fn spectral_functions() {
    let mut rng = rng_from_seed(104);
    let g = ginibre(4, 4, &mut rng);
    let pos = HermitianMatrix::hermitian_part(&(&g * g.adjoint() + CMatrix::identity(4, 4).scale(0.1)));
    let root = hermitian_matrix_function(&pos, f64::sqrt).unwrap();
    assert!((root.as_matrix() * root.as_matrix() - pos.as_matrix()).norm() < 1e-12);
    let inv = hermitian_power(&pos, -1.0, SingularPolicy::Reject).unwrap();
    assert!((inv.as_matrix() * pos.as_matrix() - CMatrix::identity(4, 4)).norm() < 1e-11);
    let singular = HermitianMatrix::from_real_diagonal(&[2.0, 0.0]);
    assert!(hermitian_power(&singular, -1.0, SingularPolicy::Reject).is_err());
    let pinv = hermitian_power(&singular, -1.0, SingularPolicy::PseudoInverse).unwrap();
    assert!((pinv.as_matrix() - HermitianMatrix::from_real_diagonal(&[0.5, 0.0]).as_matrix()).norm() < 1e-15);
}

#[test]
fn null_space_of_rank_deficient_product() {
    let mut rng = rng_from_seed(105);
    let a = ginibre(6, 2, &mut rng) * ginibre(2, 5, &mut rng);
    let basis = null_space_basis(&a, 1e-10);
    assert_eq!(basis.len(), 3);
    for v in &basis {
        assert!((&a * v).norm() < 1e-12);
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }
    let wide = ginibre(2, 5, &mut rng);
    assert_eq!(null_space_basis(&wide, 1e-10).len(), 3);
}

#[test]
fn schur_eigenvalues_of_triangular() {
    let mut m = CMatrix::zeros(3, 3);
    let diag = [C64::new(1.0, 2.0), C64::new(-0.5, 0.0), C64::new(0.0, -3.0)];
    for i in 0..3 {
        m[(i, i)] = diag[i];
        for j in i + 1..3 {
            m[(i, j)] = C64::new(0.7, 0.1 * j as f64);
        }
    }
    let mut got = eigenvalues(&m).unwrap();
    let mut want = diag.to_vec();
    let key = |z: &C64| (z.re * 1e6).round() as i64 * 1_000_000 + (z.im * 1e3).round() as i64;
    got.sort_by_key(key);
    want.sort_by_key(key);
    for (a, b) in got.iter().zip(&want) {
        assert!((a - b).norm() < 1e-12);
    }
    assert_eq!(linalg::trace(&m), diag.iter().sum::<C64>());
}

#[test]
fn svd_reconstructs_rank_deficient_matrices() {
    let mut rng = rng_from_seed(106);
    for &(r, c, k) in &[(9, 6, 3), (9, 9, 3), (6, 9, 3), (16, 16, 4), (12, 4, 2), (81, 81, 9)] {
        for _ in 0..20 {
            let m = ginibre(r, k, &mut rng) * ginibre(k, c, &mut rng);
            let sys = linalg::svd(&m).unwrap();
            let n = r.min(c);
            let sigma = CMatrix::from_fn(r, c, |i, j| {
                if i == j && i < n {
                    C64::new(sys.singular_values[i], 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            });
            let rebuilt = &sys.u * sigma * sys.v.adjoint();
            assert!((rebuilt - &m).norm() < 1e-12 * m.norm(), "{r}x{c} rank {k}");
            assert!(sys.singular_values.windows(2).all(|w| w[0] >= w[1]));
            let null = null_space_basis(&m, 1e-10);
            assert_eq!(null.len(), c - k);
            for v in &null {
                assert!((&m * v).norm() < 1e-12 * m.norm());
            }
        }
    }
}
