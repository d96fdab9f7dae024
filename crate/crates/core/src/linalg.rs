//! Dense complex linear-algebra kernel.
//!
//! Everything in the crate goes through one vectorization convention:
//! column stacking, so entry `(i, j)` of a `rows x cols` matrix lands at
//! index `j * rows + i`. With it, `vec(A X B) = (Bᵀ ⊗ A) vec(X)`, left
//! multiplication by `A` is `I ⊗ A` and right multiplication by `B` is
//! `Bᵀ ⊗ I`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Relative rank threshold used for null spaces throughout the crate.
pub const NULL_SPACE_TOL: f64 = 1e-10;

/// Relative hermiticity tolerance for [`HermitianMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// Hilbert–Schmidt inner product `Tr(A† B)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise deviation of `m` from its conjugate transpose.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs(&(m - m.adjoint()))
}

pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// A square matrix equal to its conjugate transpose.
///
/// The stored matrix is exactly Hermitian: construction symmetrizes away the
/// (tolerated) round-off asymmetry of the input.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Accepts `m` if `‖m − m†‖_max ≤ 1e-12 · max|m_ij|`.
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerance(m, HERMITIAN_TOL)
    }

    pub fn with_tolerance(m: CMatrix, rel_tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "Hermitian matrix must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if !all_finite(&m) {
            return Err(Error::Domain("matrix has non-finite entries".into()));
        }
        let deviation = hermiticity_deviation(&m);
        if deviation > rel_tol * max_abs(&m).max(f64::MIN_POSITIVE) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::hermitian_part(&m))
    }

    /// `(m + m†) / 2`, no checks.
    pub fn hermitian_part(m: &CMatrix) -> Self {
        HermitianMatrix((m + m.adjoint()).scale(0.5))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let v = DVector::from_iterator(diag.len(), diag.iter().map(|&x| real(x)));
        HermitianMatrix(CMatrix::from_diagonal(&v))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        trace(&self.0).re
    }
}

impl AsRef<CMatrix> for HermitianMatrix {
    fn as_ref(&self) -> &CMatrix {
        &self.0
    }
}

/// `A = V diag(λ) V†` with real eigenvalues in ascending order.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// `V diag(values) V†` for an arbitrary list of new eigenvalues.
    pub fn recombine(&self, values: &[f64]) -> CMatrix {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (k, &x) in values.iter().enumerate() {
            scaled.column_mut(k).scale_mut(x);
        }
        scaled * v.adjoint()
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.recombine(&self.eigenvalues)
    }
}

pub fn hermitian_eig(a: &HermitianMatrix) -> SpectralDecomposition {
    let n = a.dim();
    let eig = SymmetricEigen::new(a.as_matrix().clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// `V f(Λ) V†`. Fails if `f` is not finite at some eigenvalue.
pub fn hermitian_matrix_function<F>(a: &HermitianMatrix, f: F) -> Result<HermitianMatrix>
where
    F: Fn(f64) -> f64,
{
    let spec = hermitian_eig(a);
    let mut values = Vec::with_capacity(spec.dim());
    for &x in &spec.eigenvalues {
        let y = f(x);
        if !y.is_finite() {
            return Err(Error::Domain(format!("matrix function undefined at eigenvalue {x:e}")));
        }
        values.push(y);
    }
    Ok(HermitianMatrix::hermitian_part(&spec.recombine(&values)))
}

/// How eigenvalues inside the null-space threshold are treated by singular
/// matrix functions such as `x⁻¹` or `x^{-1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularPolicy {
    Reject,
    /// Map the (numerically) zero eigenvalues to zero: Moore–Penrose style.
    PseudoInverse,
}

/// `A^p` for a positive semidefinite `A`.
///
/// Eigenvalues with `|x| ≤ 1e-10 · max(1, λ_max)` count as zero; for `p < 0`
/// they are either rejected or mapped to zero depending on `policy`. Clearly
/// negative eigenvalues are a domain error for non-integer `p`.
pub fn hermitian_power(a: &HermitianMatrix, p: f64, policy: SingularPolicy) -> Result<HermitianMatrix> {
    let spec = hermitian_eig(a);
    let scale = spec.eigenvalues.iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let threshold = NULL_SPACE_TOL * scale;
    let mut values = Vec::with_capacity(spec.dim());
    for &x in &spec.eigenvalues {
        let y = if x.abs() <= threshold {
            if p > 0.0 {
                0.0
            } else if p == 0.0 {
                1.0
            } else {
                match policy {
                    SingularPolicy::PseudoInverse => 0.0,
                    SingularPolicy::Reject => {
                        return Err(Error::Domain(format!(
                            "power {p} of a singular matrix (eigenvalue {x:e})"
                        )))
                    }
                }
            }
        } else if x < 0.0 && p.fract() != 0.0 {
            return Err(Error::Domain(format!(
                "fractional power {p} of a negative eigenvalue {x:e}"
            )));
        } else {
            x.powf(p)
        };
        values.push(y);
    }
    Ok(HermitianMatrix::hermitian_part(&spec.recombine(&values)))
}

pub fn vectorize(m: &CMatrix) -> CVector {
    // nalgebra storage is column-major, which is exactly column stacking.
    CVector::from_column_slice(m.as_slice())
}

pub fn devectorize(v: &CVector, rows: usize, cols: usize) -> Result<CMatrix> {
    if v.len() != rows * cols {
        return Err(Error::Dimension(format!(
            "cannot reshape vector of length {} into {rows}x{cols}",
            v.len()
        )));
    }
    Ok(CMatrix::from_column_slice(rows, cols, v.as_slice()))
}

/// Square devectorization, `d² → d x d`.
pub fn devectorize_square(v: &CVector) -> Result<CMatrix> {
    let d = (v.len() as f64).sqrt().round() as usize;
    devectorize(v, d, d)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
// Backward-error bounds for the [m/m] Padé approximants in the 1-norm.
const THETA3: f64 = 1.495585217958292e-2;
const THETA5: f64 = 2.539398330063230e-1;
const THETA7: f64 = 9.504178996162932e-1;
const THETA9: f64 = 2.097847961257068;
const THETA13: f64 = 5.371920351148152;

fn one_norm(m: &CMatrix) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn pade_low(a: &CMatrix, b: &[f64]) -> (CMatrix, CMatrix) {
    let n = a.nrows();
    let a2 = a * a;
    let mut power = identity(n);
    let mut u = CMatrix::zeros(n, n);
    let mut v = CMatrix::zeros(n, n);
    for k in 0..b.len() / 2 {
        u += power.scale(b[2 * k + 1]);
        v += power.scale(b[2 * k]);
        power = &power * &a2;
    }
    (a * u, v)
}

fn pade13(a: &CMatrix) -> (CMatrix, CMatrix) {
    let n = a.nrows();
    let b = &PADE13;
    let id = identity(n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = &a6 * (a6.scale(b[13]) + a4.scale(b[11]) + a2.scale(b[9]));
    let u = a * (inner_u + a6.scale(b[7]) + a4.scale(b[5]) + a2.scale(b[3]) + id.scale(b[1]));
    let inner_v = &a6 * (a6.scale(b[12]) + a4.scale(b[10]) + a2.scale(b[8]));
    let v = inner_v + a6.scale(b[6]) + a4.scale(b[4]) + a2.scale(b[2]) + id.scale(b[0]);
    (u, v)
}

/// Matrix exponential by scaling and squaring with a diagonal Padé approximant.
pub fn matrix_exp(m: &CMatrix) -> Result<CMatrix> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "matrix exponential needs a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if !all_finite(m) {
        return Err(Error::Numerical("matrix exponential of non-finite input".into()));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(CMatrix::zeros(0, 0));
    }
    let norm = one_norm(m);
    let (u, v, squarings) = if norm <= THETA3 {
        let (u, v) = pade_low(m, &PADE3);
        (u, v, 0)
    } else if norm <= THETA5 {
        let (u, v) = pade_low(m, &PADE5);
        (u, v, 0)
    } else if norm <= THETA7 {
        let (u, v) = pade_low(m, &PADE7);
        (u, v, 0)
    } else if norm <= THETA9 {
        let (u, v) = pade_low(m, &PADE9);
        (u, v, 0)
    } else {
        let s = (norm / THETA13).log2().ceil().max(0.0) as i32;
        if s > 1000 {
            return Err(Error::Numerical(format!("matrix exponential: norm {norm:e} too large")));
        }
        let scaled = m.scale(0.5_f64.powi(s));
        let (u, v) = pade13(&scaled);
        (u, v, s)
    };
    let denom = &v - &u;
    let numer = &v + &u;
    let mut result = denom
        .lu()
        .solve(&numer)
        .ok_or_else(|| Error::Numerical("matrix exponential: singular Padé denominator".into()))?;
    for _ in 0..squarings {
        result = &result * &result;
    }
    if !all_finite(&result) {
        return Err(Error::Numerical("matrix exponential overflowed".into()));
    }
    Ok(result)
}

/// Singular value decomposition `M = U Σ V†`.
#[derive(Debug, Clone)]
pub struct SingularSystem {
    /// Descending, `min(rows, cols)` of them.
    pub singular_values: Vec<f64>,
    /// `rows x rows`.
    pub u: CMatrix,
    /// `cols x cols`; columns beyond `min(rows, cols)` span part of the null space.
    pub v: CMatrix,
}

// nalgebra's SVD is unreliable on rank-deficient input (reconstruction errors
// of order 1e-1 were observed), which is exactly the case null spaces need;
// faer's is used instead.
fn to_faer(m: &CMatrix) -> faer::Mat<C64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer(m: faer::MatRef<'_, C64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

pub fn svd(m: &CMatrix) -> Result<SingularSystem> {
    let f = to_faer(m);
    let dec = f
        .svd()
        .map_err(|e| Error::Numerical(format!("SVD did not converge: {e:?}")))?;
    let s = dec.S().column_vector();
    let mut singular_values: Vec<f64> = (0..s.nrows()).map(|k| s[k].re).collect();
    let mut u = from_faer(dec.U());
    let mut v = from_faer(dec.V());
    // Enforce descending order regardless of backend conventions.
    let mut order: Vec<usize> = (0..singular_values.len()).collect();
    order.sort_by(|&a, &b| singular_values[b].total_cmp(&singular_values[a]));
    if order.iter().enumerate().any(|(k, &o)| k != o) {
        let (u0, v0, s0) = (u.clone(), v.clone(), singular_values.clone());
        for (k, &o) in order.iter().enumerate() {
            u.set_column(k, &u0.column(o));
            v.set_column(k, &v0.column(o));
            singular_values[k] = s0[o];
        }
    }
    Ok(SingularSystem { singular_values, u, v })
}

/// Singular values, descending.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let s = to_faer(m)
        .singular_values()
        .expect("singular value iteration did not converge");
    let mut out: Vec<f64> = s.into_iter().collect();
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

/// Orthonormal basis of `{v : M v = 0}`.
///
/// A right singular vector belongs to the null space when its singular value
/// is at most `tol · max(1, σ_max)`.
pub fn null_space_basis(m: &CMatrix, tol: f64) -> Vec<CVector> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    if m.nrows() == 0 {
        return (0..cols)
            .map(|k| CVector::from_fn(cols, |i, _| if i == k { real(1.0) } else { real(0.0) }))
            .collect();
    }
    let sys = svd(m).expect("SVD did not converge");
    let sigma_max = sys.singular_values.first().copied().unwrap_or(0.0);
    let threshold = tol * sigma_max.max(1.0);
    (0..cols)
        .filter(|&k| sys.singular_values.get(k).is_none_or(|&s| s <= threshold))
        .map(|k| sys.v.column(k).into_owned())
        .collect()
}

/// Orthonormal basis of the span of `vectors` (rank threshold as in
/// [`null_space_basis`]).
pub fn span_basis(vectors: &[CVector], tol: f64) -> Vec<CVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let stacked = CMatrix::from_columns(vectors);
    let sys = svd(&stacked).expect("SVD did not converge");
    let sigma_max = sys.singular_values.first().copied().unwrap_or(0.0);
    let threshold = tol * sigma_max.max(1.0);
    sys.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > threshold)
        .map(|(k, _)| sys.u.column(k).into_owned())
        .collect()
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Eigenvalues of a general square matrix from its complex Schur form.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    let schur = nalgebra::Schur::try_new(m.clone(), 1e-15, 100_000)
        .ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok(t.diagonal().iter().copied().collect())
}
