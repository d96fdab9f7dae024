use super::{DensityMatrix, Superoperator};
use crate::error::{Error, Result};
use crate::linalg::{self, kron, matrix_exp, vectorize, CMatrix, HermitianMatrix, C64};

/// Post-check tolerance on trace, hermiticity and positivity of evolved states.
const EVOLVE_TOL: f64 = 1e-10;

/// A generator in standard form
/// `L(X) = −i[H, X] + Σ_k (L_k X L_k† − ½{L_k† L_k, X})`
/// together with its superoperator matrix.
#[derive(Debug, Clone)]
pub struct Lindbladian {
    hamiltonian: HermitianMatrix,
    jumps: Vec<CMatrix>,
    hamiltonian_part: Superoperator,
    dissipator: Superoperator,
    superop: Superoperator,
}

pub fn lindbladian_from_parts(hamiltonian: &HermitianMatrix, jumps: &[CMatrix]) -> Result<Lindbladian> {
    Lindbladian::new(hamiltonian.clone(), jumps.to_vec())
}

impl Lindbladian {
    pub fn new(hamiltonian: HermitianMatrix, jumps: Vec<CMatrix>) -> Result<Self> {
        let d = hamiltonian.dim();
        if d == 0 {
            return Err(Error::Dimension("empty Hilbert space".into()));
        }
        for (k, l) in jumps.iter().enumerate() {
            if l.shape() != (d, d) {
                return Err(Error::Dimension(format!(
                    "jump operator {k} is {}x{}, Hamiltonian is {d}x{d}",
                    l.nrows(),
                    l.ncols()
                )));
            }
            if !linalg::all_finite(l) {
                return Err(Error::Domain(format!("jump operator {k} has non-finite entries")));
            }
        }
        let id = linalg::identity(d);
        let h = hamiltonian.as_matrix();
        let minus_i = C64::new(0.0, -1.0);
        let ham = (kron(&id, h) - kron(&h.transpose(), &id)).map(|z| z * minus_i);

        let mut diss = CMatrix::zeros(d * d, d * d);
        for l in &jumps {
            let ldl = l.adjoint() * l;
            diss += kron(&l.conjugate(), l);
            diss -= kron(&id, &ldl).scale(0.5);
            diss -= kron(&ldl.transpose(), &id).scale(0.5);
        }
        let hamiltonian_part = Superoperator::from_matrix(d, ham)?;
        let dissipator = Superoperator::from_matrix(d, diss)?;
        let superop = &hamiltonian_part + &dissipator;
        Ok(Lindbladian {
            hamiltonian,
            jumps,
            hamiltonian_part,
            dissipator,
            superop,
        })
    }

    /// A purely Hamiltonian generator `X ↦ −i[H, X]`.
    pub fn hamiltonian_only(hamiltonian: HermitianMatrix) -> Result<Self> {
        Self::new(hamiltonian, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    pub fn hamiltonian(&self) -> &HermitianMatrix {
        &self.hamiltonian
    }

    pub fn jumps(&self) -> &[CMatrix] {
        &self.jumps
    }

    pub fn superop(&self) -> &Superoperator {
        &self.superop
    }

    /// `−i[H, ·]`.
    pub fn hamiltonian_part(&self) -> &Superoperator {
        &self.hamiltonian_part
    }

    pub fn dissipator(&self) -> &Superoperator {
        &self.dissipator
    }

    /// Heisenberg-picture generator `L*`.
    pub fn adjoint(&self) -> Superoperator {
        self.superop.adjoint()
    }

    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        self.superop.apply(x)
    }

    /// The set `{H} ∪ {L_k, L_k†}`.
    pub fn generating_operators(&self) -> Vec<CMatrix> {
        let mut ops = vec![self.hamiltonian.as_matrix().clone()];
        for l in &self.jumps {
            ops.push(l.clone());
            ops.push(l.adjoint());
        }
        ops
    }

    /// `exp(tL)`.
    pub fn propagator(&self, t: f64) -> Result<Superoperator> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("evolution time must be finite and ≥ 0, got {t}")));
        }
        let m = matrix_exp(&self.superop.matrix().map(|z| z * t))?;
        Superoperator::from_matrix(self.dim(), m)
    }

    /// `exp(tL)(ρ)` without any clean-up.
    pub fn evolve_raw(&self, rho: &DensityMatrix, t: f64) -> Result<CMatrix> {
        let prop = self.propagator(t)?;
        let v = prop.matrix() * vectorize(rho.matrix());
        Ok(CMatrix::from_column_slice(self.dim(), self.dim(), v.as_slice()))
    }

    /// `exp(tL)(ρ)` as a state.
    ///
    /// The raw result must be Hermitian, unit trace and have minimum
    /// eigenvalue ≥ −1e-10; eigenvalues in `[−1e-10, 0)` are then clipped to
    /// zero and the trace renormalized.
    pub fn evolve(&self, rho: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        let raw = self.evolve_raw(rho, t)?;
        state_from_evolved(&raw)
    }

    /// States on a list of times, sharing nothing but the generator.
    pub fn trajectory(&self, rho: &DensityMatrix, times: &[f64]) -> Result<Vec<DensityMatrix>> {
        times.iter().map(|&t| self.evolve(rho, t)).collect()
    }
}

/// Validates and cleans an evolved operator into a [`DensityMatrix`].
pub(crate) fn state_from_evolved(raw: &CMatrix) -> Result<DensityMatrix> {
    if !linalg::all_finite(raw) {
        return Err(Error::Numerical("evolved state has non-finite entries".into()));
    }
    let dev = linalg::hermiticity_deviation(raw);
    if dev > EVOLVE_TOL {
        return Err(Error::Numerical(format!(
            "evolved state not Hermitian (deviation {dev:e})"
        )));
    }
    let herm = HermitianMatrix::hermitian_part(raw);
    let tr = herm.trace();
    if (tr - 1.0).abs() > EVOLVE_TOL {
        return Err(Error::Numerical(format!("evolved state has trace {tr}")));
    }
    let spec = linalg::hermitian_eig(&herm);
    let min = spec.min_eigenvalue();
    if min < -EVOLVE_TOL {
        return Err(Error::Numerical(format!(
            "evolved state has negative eigenvalue {min:e}"
        )));
    }
    let cleaned = if min < 0.0 {
        let clipped: Vec<f64> = spec.eigenvalues.iter().map(|&x| x.max(0.0)).collect();
        let total: f64 = clipped.iter().sum();
        let normalized: Vec<f64> = clipped.iter().map(|x| x / total).collect();
        HermitianMatrix::hermitian_part(&spec.recombine(&normalized))
    } else if (tr - 1.0).abs() > 1e-13 {
        HermitianMatrix::hermitian_part(&herm.as_matrix().unscale(tr))
    } else {
        herm
    };
    DensityMatrix::from_hermitian(cleaned).map_err(|e| Error::Numerical(format!("evolved state rejected: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, real};
    use crate::superop::random::{random_density_matrix, random_lindbladian};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pauli() -> (CMatrix, CMatrix, CMatrix) {
        let x = CMatrix::from_row_slice(2, 2, &[real(0.0), real(1.0), real(1.0), real(0.0)]);
        let y = CMatrix::from_row_slice(2, 2, &[real(0.0), c(0.0, -1.0), c(0.0, 1.0), real(0.0)]);
        let z = CMatrix::from_row_slice(2, 2, &[real(1.0), real(0.0), real(0.0), real(-1.0)]);
        (x, y, z)
    }

    #[test]
    fn qubit_dephasing_on_sigma_x() {
        let (x, y, z) = pauli();
        for &g in &[0.0, 1.0, 2.5] {
            let h = HermitianMatrix::new(z.scale(g)).unwrap();
            let l = Lindbladian::new(h, vec![z.clone()]).unwrap();
            let expected = y.scale(2.0 * g) - x.scale(2.0);
            assert!((l.apply(&x) - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn hamiltonian_generator_is_commutator() {
        let (x, y, z) = pauli();
        let l = Lindbladian::hamiltonian_only(HermitianMatrix::new(z).unwrap()).unwrap();
        assert!((l.apply(&x) - y.scale(2.0)).norm() < 1e-14);
    }

    #[test]
    fn trace_and_hermiticity_preservation() {
        for seed in 0..10 {
            let l = random_lindbladian(3, 2, seed);
            let star_id = l.adjoint().apply(&linalg::identity(3));
            assert!(linalg::max_abs(&star_id) < 1e-11);
            assert!(l.superop().is_hermiticity_preserving(1e-11));
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
            let x = CMatrix::from_fn(3, 3, |i, j| c((i + 2 * j) as f64, (i * j) as f64 - 1.0));
            assert!(linalg::trace(&l.apply(&x)).norm() < 1e-12 * x.norm().max(1.0) * 10.0);
            let rho = random_density_matrix(3, &mut rng);
            assert_eq!(l.evolve(&rho, 0.0).unwrap(), rho);
        }
    }

    #[test]
    fn semigroup_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for seed in 0..10 {
            let l = random_lindbladian(2 + (seed as usize % 2), 2, seed);
            let rho = random_density_matrix(l.dim(), &mut rng);
            let (s, t) = (0.4, 1.3);
            let two_step = l.evolve(&l.evolve(&rho, s).unwrap(), t).unwrap();
            let one_step = l.evolve(&rho, s + t).unwrap();
            assert!((two_step.matrix() - one_step.matrix()).norm() < 1e-9);
        }
    }

    #[test]
    fn negative_time_and_bad_dimensions_rejected() {
        let l = random_lindbladian(2, 1, 0);
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(matches!(l.evolve(&rho, -1.0), Err(Error::Domain(_))));
        let h = HermitianMatrix::from_real_diagonal(&[1.0, 2.0]);
        assert!(matches!(
            Lindbladian::new(h, vec![linalg::identity(3)]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn evolved_cleanup_clips_tiny_negative_eigenvalues() {
        let raw = CMatrix::from_diagonal(&crate::linalg::CVector::from_vec(vec![real(1.0 + 5e-11), real(-5e-11)]));
        let rho = state_from_evolved(&raw).unwrap();
        assert!(rho.min_eigenvalue() >= 0.0);
        let bad = CMatrix::from_diagonal(&crate::linalg::CVector::from_vec(vec![real(1.1), real(-0.1)]));
        assert!(matches!(state_from_evolved(&bad), Err(Error::Numerical(_))));
    }
}
