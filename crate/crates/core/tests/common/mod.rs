#![allow(dead_code)]

use rand::Rng;
use symmono::linalg::{self, CMatrix, CVector, HermitianMatrix, C64, NULL_SPACE_TOL};
use symmono::models::{bloch_to_state, BlochVector};
use symmono::superop::random::{complex_gaussian, random_hermitian, random_unitary};
use symmono::symmetry::superop_commutant_basis;
use symmono::{FullRankState, Lindbladian, Superoperator};

pub fn bloch(x: f64, y: f64, z: f64) -> FullRankState {
    bloch_to_state(&BlochVector::new(x, y, z))
        .unwrap()
        .into_full_rank()
        .unwrap()
}

/// Random element of the superoperator commutant, scaled to unit Frobenius norm.
pub fn random_commutant_symmetry<R: Rng>(l: &Lindbladian, rng: &mut R) -> Superoperator {
    let basis = superop_commutant_basis(l, NULL_SPACE_TOL).unwrap();
    let coeffs: Vec<C64> = (0..basis.len()).map(|_| complex_gaussian(rng)).collect();
    let m = basis.combination(&coeffs);
    let norm = m.frobenius_norm();
    m.scale(C64::new(1.0 / norm, 0.0))
}

/// Generator whose Hamiltonian and jumps are simultaneously diagonal in a
/// random basis.
pub fn random_commuting_generator<R: Rng>(d: usize, n_jumps: usize, rng: &mut R) -> Lindbladian {
    let u = random_unitary(d, rng);
    let h_diag: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
    let h =
        &u * CMatrix::from_diagonal(&CVector::from_iterator(d, h_diag.iter().map(|&x| C64::new(x, 0.0)))) * u.adjoint();
    let jumps = (0..n_jumps)
        .map(|_| {
            let diag = CVector::from_iterator(d, (0..d).map(|_| complex_gaussian(rng)));
            &u * CMatrix::from_diagonal(&diag) * u.adjoint()
        })
        .collect();
    Lindbladian::new(HermitianMatrix::hermitian_part(&h), jumps).unwrap()
}

pub fn random_jump_free<R: Rng>(d: usize, rng: &mut R) -> Lindbladian {
    Lindbladian::hamiltonian_only(random_hermitian(d, rng)).unwrap()
}

pub fn max_abs(m: &CMatrix) -> f64 {
    linalg::max_abs(m)
}
