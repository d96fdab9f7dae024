//! Symmetries of a generator: the superoperator commutant, the operator
//! commutant of `{H, L_k, L_k†}`, conserved operators (`Ker L*`), fixed points
//! (`Ker L`) and the Jordan product on fixed points.

use crate::error::{Error, Result};
use crate::linalg::{
    self, devectorize, hermitian_eig, hermitian_power, kron, null_space_basis, vectorize, CMatrix, CVector,
    HermitianMatrix, SingularPolicy, C64, NULL_SPACE_TOL,
};
use crate::superop::{Lindbladian, Superoperator};

/// Largest Hilbert-space dimension accepted by [`superop_commutant_basis`]
/// (the solve involves a `d⁴ x d⁴` SVD).
pub const MAX_COMMUTANT_DIM: usize = 5;

/// Relative tolerance of [`is_symmetry`] used for soundness checks.
pub const SYMMETRY_TOL: f64 = 1e-8;

/// `‖ML − LM‖_F / (‖L‖_F ‖M‖_F)`, zero when either map vanishes.
pub fn symmetry_residual(l: &Superoperator, m: &Superoperator) -> f64 {
    let scale = l.frobenius_norm() * m.frobenius_norm();
    if scale == 0.0 {
        return 0.0;
    }
    m.commutator(l).frobenius_norm() / scale
}

pub fn is_symmetry(l: &Lindbladian, m: &Superoperator, tol: f64) -> bool {
    m.dim() == l.dim() && symmetry_residual(l.superop(), m) <= tol
}

/// `X ↦ A X B`: a symmetry whenever `A` and `B` lie in the commutant of
/// `{H, L_k, L_k†}`.
pub fn left_right_symmetry(a: &CMatrix, b: &CMatrix) -> Superoperator {
    Superoperator::sandwich(a, b)
}

/// `X ↦ Tr(Y X) ω`: a symmetry for conserved `Y` and fixed `ω`.
pub fn fixed_state_symmetry(y: &CMatrix, omega: &CMatrix) -> Superoperator {
    Superoperator::trace_map(y, omega)
}

/// Orthonormal (Hilbert–Schmidt) basis of the superoperators commuting with a
/// generator.
#[derive(Debug, Clone)]
pub struct SymmetryBasis {
    pub dim: usize,
    pub elements: Vec<Superoperator>,
}

impl SymmetryBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Orthogonal projection of `s` onto the span.
    pub fn project(&self, s: &Superoperator) -> Superoperator {
        self.elements
            .iter()
            .fold(Superoperator::zero(self.dim), |acc, e| &acc + &e.scale(e.inner(s)))
    }

    /// Relative distance of `s` from the span.
    pub fn distance(&self, s: &Superoperator) -> f64 {
        let norm = s.frobenius_norm();
        if norm == 0.0 {
            return 0.0;
        }
        (s - &self.project(s)).frobenius_norm() / norm
    }

    pub fn contains(&self, s: &Superoperator, tol: f64) -> bool {
        self.distance(s) <= tol
    }

    /// `Σ_k c_k E_k`.
    pub fn combination(&self, coefficients: &[C64]) -> Superoperator {
        assert_eq!(coefficients.len(), self.len(), "one coefficient per basis element");
        self.elements
            .iter()
            .zip(coefficients)
            .fold(Superoperator::zero(self.dim), |acc, (e, &c)| &acc + &e.scale(c))
    }
}

/// Null space of `M ↦ ML − LM`, i.e. of `Lᵀ ⊗ I − I ⊗ L` acting on the
/// column-stacked superoperator matrix.
pub fn superop_commutant_basis(l: &Lindbladian, tol: f64) -> Result<SymmetryBasis> {
    let d = l.dim();
    if d > MAX_COMMUTANT_DIM {
        return Err(Error::Capability(format!(
            "superoperator commutant limited to d ≤ {MAX_COMMUTANT_DIM} (got d = {d}); \
             use the operator commutant instead"
        )));
    }
    let n = d * d;
    let lm = l.superop().matrix();
    let id = linalg::identity(n);
    let k = kron(&lm.transpose(), &id) - kron(&id, lm);
    let elements = null_space_basis(&k, tol)
        .into_iter()
        .map(|v| {
            let m = devectorize(&v, n, n).expect("length n²");
            Superoperator::from_matrix(d, m).expect("shape n x n")
        })
        .collect();
    Ok(SymmetryBasis { dim: d, elements })
}

/// Orthonormal basis of `{X : [X, S] = 0 for all S in ops}`.
///
/// When the resulting space is closed under `X ↦ X†` (always the case for an
/// adjoint-closed `ops`) the basis is returned Hermitian.
pub fn operator_commutant_basis(ops: &[CMatrix], tol: f64) -> Vec<CMatrix> {
    let Some(first) = ops.first() else {
        return Vec::new();
    };
    let d = first.nrows();
    operator_commutant_basis_dim(d, ops, tol)
}

/// As [`operator_commutant_basis`], with the dimension given explicitly so
/// that an empty `ops` yields the full matrix algebra.
pub fn operator_commutant_basis_dim(d: usize, ops: &[CMatrix], tol: f64) -> Vec<CMatrix> {
    let n = d * d;
    let id = linalg::identity(d);
    let mut stacked = CMatrix::zeros(n * ops.len(), n);
    for (k, s) in ops.iter().enumerate() {
        assert_eq!(s.shape(), (d, d), "operator dimensions differ");
        let block = kron(&id, s) - kron(&s.transpose(), &id);
        stacked.view_mut((k * n, 0), (n, n)).copy_from(&block);
    }
    let raw: Vec<CMatrix> = null_space_basis(&stacked, tol)
        .into_iter()
        .map(|v| devectorize(&v, d, d).expect("length d²"))
        .collect();
    hermitian_span(&raw, tol).unwrap_or(raw)
}

/// Real coordinates of a Hermitian matrix in an orthonormal basis of the
/// Hermitian matrices (so the Euclidean product equals `Tr(A B)`).
fn hermitian_coordinates(h: &CMatrix) -> Vec<f64> {
    let d = h.nrows();
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        out.push(h[(i, i)].re);
    }
    let s = std::f64::consts::SQRT_2;
    for i in 0..d {
        for j in i + 1..d {
            out.push(s * h[(i, j)].re);
            out.push(s * h[(i, j)].im);
        }
    }
    out
}

fn from_hermitian_coordinates(d: usize, x: &[f64]) -> CMatrix {
    let mut h = CMatrix::zeros(d, d);
    for i in 0..d {
        h[(i, i)] = linalg::real(x[i]);
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut k = d;
    for i in 0..d {
        for j in i + 1..d {
            let z = C64::new(s * x[k], s * x[k + 1]);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            k += 2;
        }
    }
    h
}

/// A Hilbert–Schmidt orthonormal Hermitian basis with the same complex span
/// as `basis`, or `None` if that span is not closed under the adjoint.
pub fn hermitian_span(basis: &[CMatrix], tol: f64) -> Option<Vec<CMatrix>> {
    if basis.is_empty() {
        return Some(Vec::new());
    }
    let d = basis[0].nrows();
    let mut columns = Vec::with_capacity(2 * basis.len());
    for x in basis {
        let xd = x.adjoint();
        let re_part = (x + &xd).scale(0.5);
        let im_part = (x - &xd).map(|z| z * C64::new(0.0, -0.5));
        columns.push(hermitian_coordinates(&re_part));
        columns.push(hermitian_coordinates(&im_part));
    }
    let rows = d * d;
    let m = faer::Mat::<f64>::from_fn(rows, columns.len(), |i, j| columns[j][i]);
    let svd = m.thin_svd().expect("SVD did not converge");
    let u = svd.U();
    let s = svd.S().column_vector();
    let smax = (0..s.nrows()).map(|k| s[k]).fold(0.0, f64::max);
    let threshold = tol * smax.max(1.0);
    let keep: Vec<usize> = (0..s.nrows()).filter(|&k| s[k] > threshold).collect();
    if keep.len() != basis.len() {
        return None;
    }
    Some(
        keep.into_iter()
            .map(|k| {
                let col: Vec<f64> = (0..rows).map(|i| u[(i, k)]).collect();
                from_hermitian_coordinates(d, &col)
            })
            .collect(),
    )
}

/// Operators `Y` with `L*(Y) = 0`, i.e. `Tr(Y† ρ_t)` constant in time.
#[derive(Debug, Clone)]
pub struct ConservedSet {
    pub dim: usize,
    /// Hermitian, Hilbert–Schmidt orthonormal.
    pub operators: Vec<CMatrix>,
}

impl ConservedSet {
    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// Relative distance of `y` from the span.
    pub fn distance(&self, y: &CMatrix) -> f64 {
        span_distance(&self.operators, y)
    }
}

pub(crate) fn span_distance(basis: &[CMatrix], y: &CMatrix) -> f64 {
    let norm = y.norm();
    if norm == 0.0 {
        return 0.0;
    }
    let proj = basis.iter().fold(CMatrix::zeros(y.nrows(), y.ncols()), |acc, b| {
        acc + b * linalg::hs_inner(b, y)
    });
    (y - proj).norm() / norm
}

pub fn noether_basis(l: &Lindbladian, tol: f64) -> ConservedSet {
    let d = l.dim();
    let raw: Vec<CMatrix> = null_space_basis(l.adjoint().matrix(), tol)
        .into_iter()
        .map(|v| devectorize(&v, d, d).expect("length d²"))
        .collect();
    let operators = hermitian_span(&raw, tol).unwrap_or(raw);
    ConservedSet { dim: d, operators }
}

/// `Ker L` together with `F`, the spectral projection of the identity onto it.
#[derive(Debug, Clone)]
pub struct FixedPointSet {
    pub dim: usize,
    /// Hermitian, Hilbert–Schmidt orthonormal basis of `Ker L`.
    pub operators: Vec<CMatrix>,
    /// Image of the identity under the spectral projector of `L` onto the
    /// eigenvalue zero. This equals `lim_{t→∞} exp(tL)(I)` whenever that
    /// limit exists.
    pub f: HermitianMatrix,
    /// Purely imaginary nonzero eigenvalues of `L`. When non-empty,
    /// `exp(tL)(I)` may oscillate forever and `f` is only the kernel
    /// projection, not a long-time limit.
    pub peripheral_eigenvalues: Vec<C64>,
}

impl FixedPointSet {
    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn has_peripheral_oscillations(&self) -> bool {
        !self.peripheral_eigenvalues.is_empty()
    }

    pub fn distance(&self, x: &CMatrix) -> f64 {
        span_distance(&self.operators, x)
    }
}

pub fn fixed_point_set(l: &Lindbladian, tol: f64) -> Result<FixedPointSet> {
    let d = l.dim();
    let lm = l.superop().matrix();
    let right = null_space_basis(lm, tol);
    let left = null_space_basis(&lm.adjoint(), tol);
    if right.len() != left.len() || right.is_empty() {
        return Err(Error::Numerical(format!(
            "kernel dimensions of L ({}) and L* ({}) disagree",
            right.len(),
            left.len()
        )));
    }
    let v = CMatrix::from_columns(&right);
    let w = CMatrix::from_columns(&left);
    // Riesz projector onto the zero eigenvalue: V (W†V)⁻¹ W†. W†V is
    // singular exactly when the zero eigenvalue has a Jordan block.
    let gram = w.adjoint() * &v;
    let smin = linalg::singular_values(&gram).last().copied().unwrap_or(0.0);
    if smin < 1e-8 {
        return Err(Error::Numerical(format!(
            "zero eigenvalue of L is defective (overlap singular value {smin:e})"
        )));
    }
    let coeffs = gram
        .lu()
        .solve(&(w.adjoint() * vectorize(&linalg::identity(d))))
        .ok_or_else(|| Error::Numerical("singular kernel overlap".into()))?;
    let f_vec: CVector = &v * coeffs;
    let f_raw = devectorize(&f_vec, d, d)?;
    let scale = f_raw.norm().max(1.0);
    let dev = linalg::hermiticity_deviation(&f_raw);
    if dev > 1e-9 * scale {
        return Err(Error::Numerical(format!("F is not Hermitian (deviation {dev:e})")));
    }
    let f = HermitianMatrix::hermitian_part(&f_raw);
    let min = hermitian_eig(&f).min_eigenvalue();
    if min < -1e-9 * scale {
        return Err(Error::Numerical(format!("F is not positive (eigenvalue {min:e})")));
    }

    let raw_ops: Vec<CMatrix> = right.iter().map(|x| devectorize(x, d, d).expect("length d²")).collect();
    let operators = hermitian_span(&raw_ops, tol).unwrap_or(raw_ops);

    let lnorm = l.superop().frobenius_norm().max(1.0);
    let axis_tol = 1e-9 * lnorm;
    let peripheral_eigenvalues = linalg::eigenvalues(lm)?
        .into_iter()
        .filter(|z| z.re.abs() <= axis_tol && z.im.abs() > axis_tol)
        .collect();

    Ok(FixedPointSet {
        dim: d,
        operators,
        f,
        peripheral_eigenvalues,
    })
}

/// `A ∘_F B = ½(A_F B_F + B_F A_F)` with `X_F = F^{-1/2} X F^{-1/2}`, the
/// inverse square root taken on the support of `F`.
pub fn jordan_product(a: &CMatrix, b: &CMatrix, f: &HermitianMatrix, tol: f64) -> Result<CMatrix> {
    let d = f.dim();
    if a.shape() != (d, d) || b.shape() != (d, d) {
        return Err(Error::Dimension("Jordan product operands must match F".into()));
    }
    let spec = hermitian_eig(f);
    let threshold = NULL_SPACE_TOL * spec.max_eigenvalue().abs().max(1.0);
    if spec.min_eigenvalue() < -threshold {
        return Err(Error::Domain("F must be positive semidefinite".into()));
    }
    let support: Vec<f64> = spec
        .eigenvalues
        .iter()
        .map(|&x| if x > threshold { 1.0 } else { 0.0 })
        .collect();
    let proj = spec.recombine(&support);
    for (name, x) in [("A", a), ("B", b)] {
        let leak = (x - &proj * x * &proj).norm();
        if leak > tol * x.norm().max(1.0) {
            return Err(Error::Domain(format!(
                "{name} is not supported on the range of F (leak {leak:e})"
            )));
        }
    }
    let isqrt = hermitian_power(f, -0.5, SingularPolicy::PseudoInverse)?;
    let s = isqrt.as_matrix();
    let af = s * a * s;
    let bf = s * b * s;
    Ok((&af * &bf + &bf * &af).scale(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, real};
    use crate::superop::random::random_lindbladian;

    fn sz() -> CMatrix {
        CMatrix::from_diagonal(&CVector::from_vec(vec![real(1.0), real(-1.0)]))
    }
    fn sx() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[real(0.0), real(1.0), real(1.0), real(0.0)])
    }
    fn proj(k: usize) -> CMatrix {
        let mut p = CMatrix::zeros(2, 2);
        p[(k, k)] = real(1.0);
        p
    }
    fn dephasing(g: f64) -> Lindbladian {
        Lindbladian::new(HermitianMatrix::new(sz().scale(g)).unwrap(), vec![sz()]).unwrap()
    }

    #[test]
    fn dephasing_commutant_contains_expected_maps() {
        let l = dephasing(1.0);
        let basis = superop_commutant_basis(&l, NULL_SPACE_TOL).unwrap();
        for e in &basis.elements {
            assert!(is_symmetry(&l, e, SYMMETRY_TOL));
        }
        assert!(basis.contains(&Superoperator::left_mult(&proj(0)), 1e-8));
        assert!(basis.contains(&Superoperator::left_mult(&proj(1)), 1e-8));
        assert!(basis.contains(&Superoperator::commutator_map(&sz()), 1e-8));
        assert!(basis.contains(&Superoperator::identity(2), 1e-8));
        assert!(basis.contains(l.superop(), 1e-8));
        let gram = CMatrix::from_fn(basis.len(), basis.len(), |i, j| {
            basis.elements[i].inner(&basis.elements[j])
        });
        assert!((gram - linalg::identity(basis.len())).norm() < 1e-10);
    }

    #[test]
    fn hamiltonian_commutant_contains_spectral_projectors() {
        let h = HermitianMatrix::from_real_diagonal(&[0.3, -1.1, 2.0]);
        let u = crate::superop::random::random_unitary(3, &mut crate::superop::random::rng_from_seed(1));
        let h = HermitianMatrix::hermitian_part(&(&u * h.as_matrix() * u.adjoint()));
        let l = Lindbladian::hamiltonian_only(h.clone()).unwrap();
        let basis = superop_commutant_basis(&l, NULL_SPACE_TOL).unwrap();
        let spec = hermitian_eig(&h);
        for k in 0..3 {
            let v = spec.eigenvectors.column(k).into_owned();
            let p = &v * v.adjoint();
            assert!(basis.contains(&Superoperator::left_mult(&p), 1e-8));
        }
    }

    #[test]
    fn commutant_capability_cap() {
        let l = random_lindbladian(6, 1, 0);
        assert!(matches!(
            superop_commutant_basis(&l, NULL_SPACE_TOL),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn operator_commutant_examples() {
        let diag = operator_commutant_basis(&[sz()], NULL_SPACE_TOL);
        assert_eq!(diag.len(), 2);
        assert!(span_distance(&diag, &proj(0)) < 1e-12 && span_distance(&diag, &proj(1)) < 1e-12);
        for x in &diag {
            assert!(linalg::hermiticity_deviation(x) < 1e-14);
        }
        let scalars = operator_commutant_basis(&[sx(), sz()], NULL_SPACE_TOL);
        assert_eq!(scalars.len(), 1);
        assert!(span_distance(&scalars, &linalg::identity(2)) < 1e-12);
        assert_eq!(operator_commutant_basis_dim(3, &[], NULL_SPACE_TOL).len(), 9);
    }

    #[test]
    fn operator_commutant_without_adjoint_closure_is_raw() {
        // Commutant of the nilpotent |0⟩⟨1| is span{I, |0⟩⟨1|}, not †-closed.
        let mut n = CMatrix::zeros(2, 2);
        n[(0, 1)] = real(1.0);
        let basis = operator_commutant_basis(&[n.clone()], NULL_SPACE_TOL);
        assert_eq!(basis.len(), 2);
        assert!(span_distance(&basis, &n) < 1e-12);
        assert!(span_distance(&basis, &n.adjoint()) > 0.5);
    }

    #[test]
    fn noether_examples() {
        let deph = noether_basis(&dephasing(1.0), NULL_SPACE_TOL);
        assert_eq!(deph.len(), 2);
        assert!(deph.distance(&proj(0)) < 1e-10 && deph.distance(&proj(1)) < 1e-10);
        for seed in 0..5 {
            let l = random_lindbladian(3, 2, seed);
            let set = noether_basis(&l, NULL_SPACE_TOL);
            assert!(set.distance(&linalg::identity(3)) < 1e-9);
            for y in &set.operators {
                assert!(linalg::max_abs(&l.adjoint().apply(y)) < 1e-9);
            }
        }
    }

    #[test]
    fn fixed_points_of_unital_and_random_generators() {
        let fp = fixed_point_set(&dephasing(0.7), NULL_SPACE_TOL).unwrap();
        assert_eq!(fp.len(), 2);
        assert!((fp.f.as_matrix() - linalg::identity(2)).norm() < 1e-10);
        // g ≠ 0 gives the eigenvalues −2 ± 2ig, off the imaginary axis.
        assert!(!fp.has_peripheral_oscillations());
        for seed in 0..10 {
            let l = random_lindbladian(2 + seed as usize % 2, 1 + seed as usize % 2, seed);
            let fp = fixed_point_set(&l, NULL_SPACE_TOL).unwrap();
            assert_eq!(fp.len(), noether_basis(&l, NULL_SPACE_TOL).len());
            for x in &fp.operators {
                assert!(linalg::max_abs(&l.apply(x)) < 1e-9);
            }
            // Trace preservation gives Tr F = Tr I.
            assert!((fp.f.trace() - l.dim() as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn hamiltonian_generator_flags_peripheral_spectrum() {
        let l = Lindbladian::hamiltonian_only(HermitianMatrix::new(sz()).unwrap()).unwrap();
        let fp = fixed_point_set(&l, NULL_SPACE_TOL).unwrap();
        assert_eq!(fp.len(), 2);
        assert!(fp.has_peripheral_oscillations());
        assert!((fp.f.as_matrix() - linalg::identity(2)).norm() < 1e-10);
    }

    #[test]
    fn jordan_product_examples() {
        let id = HermitianMatrix::new(linalg::identity(2)).unwrap();
        let p = proj(0);
        let pp = jordan_product(&p, &p, &id, 1e-10).unwrap();
        assert!((pp - &p).norm() < 1e-14);
        let cross = jordan_product(&proj(0), &proj(1), &id, 1e-10).unwrap();
        assert!(cross.norm() < 1e-14);

        let a = CMatrix::from_row_slice(2, 2, &[real(1.0), c(0.3, 0.1), c(0.3, -0.1), real(2.0)]);
        let b = CMatrix::from_row_slice(2, 2, &[real(0.5), real(0.2), real(0.2), real(-1.0)]);
        let sym = jordan_product(&a, &b, &id, 1e-10).unwrap();
        assert!((sym - (&a * &b + &b * &a).scale(0.5)).norm() < 1e-13);
    }

    #[test]
    fn jordan_product_rejects_leaking_operands() {
        let f = HermitianMatrix::new(proj(0)).unwrap();
        assert!(jordan_product(&proj(0), &proj(0), &f, 1e-10).is_ok());
        assert!(matches!(
            jordan_product(&proj(0), &sx(), &f, 1e-10),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn is_symmetry_examples() {
        let l = dephasing(1.0);
        assert!(is_symmetry(&l, l.superop(), 1e-12));
        assert!(is_symmetry(&l, &Superoperator::identity(2), 1e-12));
        let lx = Superoperator::left_mult(&sx());
        let residual = symmetry_residual(l.superop(), &lx);
        assert!(residual > 0.1, "residual {residual}");
        assert!(!is_symmetry(&l, &lx, SYMMETRY_TOL));
    }
}
