use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eig, CMatrix, CVector, HermitianMatrix, SpectralDecomposition};

/// Smallest eigenvalue tolerated for a positive semidefinite state.
pub const PSD_TOL: f64 = -1e-12;
/// Allowed deviation of a state's trace from one.
pub const TRACE_TOL: f64 = 1e-11;
/// Minimum eigenvalue required for full rank / positive definiteness.
pub const FULL_RANK_TOL: f64 = 1e-12;

/// A quantum state: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: HermitianMatrix,
}

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        let matrix = HermitianMatrix::new(m)?;
        Self::from_hermitian(matrix)
    }

    /// Like [`DensityMatrix::new`] with a caller-chosen relative hermiticity
    /// tolerance, for parsed input.
    pub fn with_hermitian_tolerance(m: CMatrix, rel_tol: f64) -> Result<Self> {
        Self::from_hermitian(HermitianMatrix::with_tolerance(m, rel_tol)?)
    }

    pub fn from_hermitian(matrix: HermitianMatrix) -> Result<Self> {
        let tr = matrix.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = hermitian_eig(&matrix).min_eigenvalue();
        if min < PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(DensityMatrix { matrix })
    }

    /// Normalizes a positive semidefinite matrix by its trace.
    pub fn from_unnormalized(m: &CMatrix) -> Result<Self> {
        let tr = linalg::trace(m).re;
        if !(tr > 0.0) {
            return Err(Error::InvalidState("trace must be positive".into()));
        }
        Self::new(m.unscale(tr))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        DensityMatrix {
            matrix: HermitianMatrix::from_real_diagonal(&vec![1.0 / d as f64; d]),
        }
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) vector `ψ`.
    pub fn pure(psi: &CVector) -> Result<Self> {
        let n = psi.norm();
        if n == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v = psi.unscale(n);
        Ok(DensityMatrix {
            matrix: HermitianMatrix::hermitian_part(&(&v * v.adjoint())),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        self.matrix.as_matrix()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn spectral(&self) -> SpectralDecomposition {
        hermitian_eig(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectral().min_eigenvalue()
    }

    pub fn is_full_rank(&self) -> bool {
        self.min_eigenvalue() >= FULL_RANK_TOL
    }

    pub fn to_full_rank(&self) -> Result<FullRankState> {
        FullRankState::new(self.clone())
    }

    pub fn into_full_rank(self) -> Result<FullRankState> {
        FullRankState::new(self)
    }
}

/// A positive definite operator together with its spectral decomposition.
#[derive(Debug, Clone)]
pub struct PositiveDefinite {
    matrix: HermitianMatrix,
    spectral: SpectralDecomposition,
}

impl PositiveDefinite {
    pub fn new(matrix: HermitianMatrix) -> Result<Self> {
        let spectral = hermitian_eig(&matrix);
        let min = spectral.min_eigenvalue();
        if !(min >= FULL_RANK_TOL) {
            return Err(Error::Domain(format!(
                "operator is not positive definite (min eigenvalue {min:e})"
            )));
        }
        Ok(PositiveDefinite { matrix, spectral })
    }

    /// Checks hermiticity first (relative tolerance `1e-10`), for operators
    /// produced by a superoperator such as `N(ρ)`.
    pub fn from_matrix(m: &CMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::with_tolerance(m.clone(), 1e-10)?)
    }

    pub fn matrix(&self) -> &CMatrix {
        self.matrix.as_matrix()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn spectral(&self) -> &SpectralDecomposition {
        &self.spectral
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn inverse(&self) -> CMatrix {
        let inv: Vec<f64> = self.spectral.eigenvalues.iter().map(|x| 1.0 / x).collect();
        self.spectral.recombine(&inv)
    }
}

/// A state with strictly positive spectrum (minimum eigenvalue ≥ 1e-12).
#[derive(Debug, Clone)]
pub struct FullRankState {
    state: DensityMatrix,
    positive: PositiveDefinite,
}

impl FullRankState {
    pub fn new(state: DensityMatrix) -> Result<Self> {
        let spectral = state.spectral();
        let min = spectral.min_eigenvalue();
        if min < FULL_RANK_TOL {
            return Err(Error::InvalidState(format!(
                "state is not full rank (min eigenvalue {min:e})"
            )));
        }
        let positive = PositiveDefinite {
            matrix: state.as_hermitian().clone(),
            spectral,
        };
        Ok(FullRankState { state, positive })
    }

    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(DensityMatrix::new(m)?)
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self::new(DensityMatrix::maximally_mixed(d)).expect("I/d is full rank")
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn matrix(&self) -> &CMatrix {
        self.state.matrix()
    }

    pub fn positive(&self) -> &PositiveDefinite {
        &self.positive
    }

    pub fn spectral(&self) -> &SpectralDecomposition {
        &self.positive.spectral
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }

    pub fn inverse(&self) -> CMatrix {
        self.positive.inverse()
    }
}

impl AsRef<DensityMatrix> for FullRankState {
    fn as_ref(&self) -> &DensityMatrix {
        &self.state
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, real};

    #[test]
    fn validation() {
        assert!(DensityMatrix::new(linalg::identity(2)).is_err());
        let neg = CMatrix::from_diagonal(&CVector::from_vec(vec![real(1.5), real(-0.5)]));
        assert!(matches!(DensityMatrix::new(neg), Err(Error::InvalidState(_))));
        let ok = CMatrix::from_row_slice(2, 2, &[real(0.5), c(0.1, 0.2), c(0.1, -0.2), real(0.5)]);
        let rho = DensityMatrix::new(ok).unwrap();
        assert!(rho.is_full_rank());
    }

    #[test]
    fn pure_states_are_not_full_rank() {
        let psi = CVector::from_vec(vec![real(1.0), c(0.0, 1.0)]);
        let rho = DensityMatrix::pure(&psi).unwrap();
        assert!((linalg::trace(rho.matrix()).re - 1.0).abs() < 1e-15);
        assert!(matches!(rho.to_full_rank(), Err(Error::InvalidState(_))));
    }

    #[test]
    fn positive_definite_inverse() {
        let p = PositiveDefinite::new(HermitianMatrix::from_real_diagonal(&[0.25, 2.0])).unwrap();
        let inv = p.inverse();
        assert!((inv[(0, 0)].re - 4.0).abs() < 1e-14 && (inv[(1, 1)].re - 0.5).abs() < 1e-14);
        assert!(PositiveDefinite::new(HermitianMatrix::from_real_diagonal(&[0.0, 1.0])).is_err());
    }
}
