//! Seeded random ensembles for property tests and benchmarks.
//!
//! Every generator takes either an explicit seed or a caller-owned RNG; there
//! is no global RNG state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{DensityMatrix, FullRankState, Lindbladian};
use crate::linalg::{self, spectral_norm, CMatrix, HermitianMatrix, C64};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian, `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// GUE-style Hermitian matrix rescaled to unit operator norm.
pub fn random_hermitian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> HermitianMatrix {
    let g = ginibre(d, d, rng);
    let h = (&g + g.adjoint()).scale(0.5);
    let norm = spectral_norm(&h);
    HermitianMatrix::hermitian_part(&h.unscale(norm))
}

/// Ginibre matrix rescaled to unit operator norm.
pub fn random_operator<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let g = ginibre(d, d, rng);
    let norm = spectral_norm(&g);
    g.unscale(norm)
}

/// Haar-random isometry `C^cols → C^rows` (`rows ≥ cols`) from the QR
/// decomposition of a complex Gaussian matrix, with the phases of `R`'s
/// diagonal absorbed into `Q`.
pub fn random_isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let qr = ginibre(rows, cols, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..cols {
        let diag = r[(k, k)];
        let phase = if diag.norm() > 0.0 {
            diag / diag.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let mut col = q.column_mut(k);
        col *= phase;
    }
    q
}

pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    random_isometry(d, d, rng)
}

/// `G G† / Tr(G G†)` with `G` square Ginibre: full rank almost surely.
pub fn random_density_matrix<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre(d, d, rng);
    DensityMatrix::from_unnormalized(&(&g * g.adjoint())).expect("Ginibre state is valid")
}

/// A random state whose minimum eigenvalue is at least `floor / d`; the
/// Ginibre state is mixed with `I/d` when needed.
pub fn random_full_rank_state<R: Rng + ?Sized>(d: usize, floor: f64, rng: &mut R) -> FullRankState {
    let rho = random_density_matrix(d, rng);
    let min = rho.min_eigenvalue() * d as f64;
    let m = if min >= floor {
        rho.matrix().clone()
    } else {
        let mix = ((floor - min) / (1.0 - min)).clamp(0.0, 1.0);
        rho.matrix().scale(1.0 - mix) + linalg::identity(d).scale(mix / d as f64)
    };
    FullRankState::from_matrix(m).expect("mixed state is full rank")
}

pub fn random_lindbladian_with<R: Rng + ?Sized>(d: usize, n_jumps: usize, rng: &mut R) -> Lindbladian {
    let h = random_hermitian(d, rng);
    let jumps = (0..n_jumps).map(|_| random_operator(d, rng)).collect();
    Lindbladian::new(h, jumps).expect("random generator parts are consistent")
}

/// Random generator: GUE Hamiltonian and `n_jumps` Ginibre jump operators,
/// all of unit operator norm. Deterministic per seed.
pub fn random_lindbladian(d: usize, n_jumps: usize, seed: u64) -> Lindbladian {
    random_lindbladian_with(d, n_jumps, &mut rng_from_seed(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superop::is_cptp;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = rng_from_seed(9);
        for d in 1..5 {
            let u = random_unitary(d, &mut rng);
            assert!((u.adjoint() * &u - linalg::identity(d)).norm() < 1e-13);
        }
        let v = random_isometry(6, 2, &mut rng);
        assert!((v.adjoint() * &v - linalg::identity(2)).norm() < 1e-13);
    }

    #[test]
    fn hermitian_and_jumps_have_unit_norm() {
        let mut rng = rng_from_seed(10);
        let h = random_hermitian(4, &mut rng);
        assert!((spectral_norm(h.as_matrix()) - 1.0).abs() < 1e-12);
        assert!((spectral_norm(&random_operator(3, &mut rng)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lindbladian_reproducible_and_unitary_without_jumps() {
        let a = random_lindbladian(3, 2, 77);
        let b = random_lindbladian(3, 2, 77);
        assert_eq!(a.superop(), b.superop());
        let ham = random_lindbladian(3, 0, 5);
        let prop = ham.propagator(1.7).unwrap();
        let report = is_cptp(&prop, 1e-10);
        assert!(report.is_cptp);
        // Unitary channels are unitary as d² x d² matrices.
        let m = prop.matrix();
        assert!((m.adjoint() * m - linalg::identity(9)).norm() < 1e-10);
    }

    #[test]
    fn full_rank_floor_respected() {
        let mut rng = rng_from_seed(3);
        for _ in 0..20 {
            let s = random_full_rank_state(3, 0.05, &mut rng);
            assert!(s.spectral().min_eigenvalue() * 3.0 >= 0.05 - 1e-12);
        }
    }
}
