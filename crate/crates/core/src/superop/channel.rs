use rand::Rng;

use super::random::{random_isometry, rng_from_seed};
use super::Superoperator;
use crate::linalg::{self, hermitian_eig, CMatrix, HermitianMatrix};

/// Choi matrix `C = Σ_ij |i⟩⟨j| ⊗ S(|i⟩⟨j|)` (unnormalized).
///
/// In the column-stacking representation this is a reshuffle of the
/// superoperator matrix: `C[(i·d + a), (j·d + b)] = S[(b·d + a), (j·d + i)]`.
/// For a qubit identity channel,
///
/// ```text
/// S = I₄                          C = |Ω⟩⟨Ω| = [1 0 0 1]
///                                              [0 0 0 0]
///                                              [0 0 0 0]
///                                              [1 0 0 1]
/// ```
pub fn choi(s: &Superoperator) -> CMatrix {
    let d = s.dim();
    let m = s.matrix();
    CMatrix::from_fn(d * d, d * d, |row, col| {
        let (i, a) = (row / d, row % d);
        let (j, b) = (col / d, col % d);
        m[(b * d + a, j * d + i)]
    })
}

/// Diagnostics of a complete-positivity / trace-preservation check.
#[derive(Debug, Clone, PartialEq)]
pub struct CptpReport {
    pub is_cptp: bool,
    /// Smallest eigenvalue of the Hermitian part of the Choi matrix.
    pub min_choi_eigenvalue: f64,
    /// Largest entry of `C − C†`.
    pub choi_hermiticity_error: f64,
    /// Largest entry of `Tr_out(C) − I`.
    pub trace_preservation_error: f64,
}

/// CP iff the Choi matrix is positive semidefinite; TP iff tracing the
/// output factor out of it yields the identity.
pub fn is_cptp(s: &Superoperator, tol: f64) -> CptpReport {
    let d = s.dim();
    let c = choi(s);
    let choi_hermiticity_error = linalg::hermiticity_deviation(&c);
    let min_choi_eigenvalue = hermitian_eig(&HermitianMatrix::hermitian_part(&c)).min_eigenvalue();
    let mut partial = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            partial[(i, j)] = (0..d).map(|a| c[(i * d + a, j * d + a)]).sum();
        }
    }
    let trace_preservation_error = linalg::max_abs(&(partial - linalg::identity(d)));
    CptpReport {
        is_cptp: min_choi_eigenvalue >= -tol && choi_hermiticity_error <= tol && trace_preservation_error <= tol,
        min_choi_eigenvalue,
        choi_hermiticity_error,
        trace_preservation_error,
    }
}

/// Channel `ρ ↦ Tr_env(V ρ V†)` for a Haar-random isometry `V: H → H ⊗ H_env`.
pub fn random_channel(d: usize, d_env: usize, seed: u64) -> Superoperator {
    random_channel_with(d, d_env, &mut rng_from_seed(seed))
}

pub fn random_channel_with<R: Rng + ?Sized>(d: usize, d_env: usize, rng: &mut R) -> Superoperator {
    assert!(d >= 1 && d_env >= 1, "dimensions must be positive");
    let v = random_isometry(d * d_env, d, rng);
    let mut matrix = CMatrix::zeros(d * d, d * d);
    for k in 0..d_env {
        // Kraus operator K_k: rows a·d_env + k of V.
        let kraus = CMatrix::from_fn(d, d, |a, b| v[(a * d_env + k, b)]);
        matrix += linalg::kron(&kraus.conjugate(), &kraus);
    }
    Superoperator::from_matrix(d, matrix).expect("shape is d² x d²")
}
