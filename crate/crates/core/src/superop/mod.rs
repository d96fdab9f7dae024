//! Superoperators on `B(C^d)` in the column-stacking representation,
//! Lindblad generators and their time evolution, channel checks and random
//! ensembles.

mod channel;
mod lindbladian;
pub mod random;
mod state;

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::linalg::{self, kron, vectorize, CMatrix, C64};

pub use channel::{choi, is_cptp, random_channel, random_channel_with, CptpReport};
pub use lindbladian::{lindbladian_from_parts, Lindbladian};
pub use random::random_lindbladian;
pub use state::{DensityMatrix, FullRankState, PositiveDefinite, FULL_RANK_TOL, PSD_TOL, TRACE_TOL};

/// A linear map on `d x d` matrices stored as its `d² x d²` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    dim: usize,
    matrix: CMatrix,
}

impl Superoperator {
    pub fn from_matrix(dim: usize, matrix: CMatrix) -> Result<Self> {
        let n = dim * dim;
        if matrix.shape() != (n, n) {
            return Err(Error::Dimension(format!(
                "superoperator on {dim}x{dim} operators needs a {n}x{n} matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Superoperator { dim, matrix })
    }

    /// Builds the matrix of an arbitrary linear map by applying it to the
    /// matrix units `|i⟩⟨j|`.
    pub fn from_map<F>(dim: usize, map: F) -> Self
    where
        F: Fn(&CMatrix) -> CMatrix,
    {
        let n = dim * dim;
        let mut matrix = CMatrix::zeros(n, n);
        for j in 0..dim {
            for i in 0..dim {
                let mut unit = CMatrix::zeros(dim, dim);
                unit[(i, j)] = linalg::real(1.0);
                let image = map(&unit);
                matrix.set_column(j * dim + i, &vectorize(&image));
            }
        }
        Superoperator { dim, matrix }
    }

    pub fn identity(dim: usize) -> Self {
        Superoperator {
            dim,
            matrix: CMatrix::identity(dim * dim, dim * dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Superoperator {
            dim,
            matrix: CMatrix::zeros(dim * dim, dim * dim),
        }
    }

    /// `X ↦ A X`, matrix `I ⊗ A`.
    pub fn left_mult(a: &CMatrix) -> Self {
        let d = a.nrows();
        Superoperator {
            dim: d,
            matrix: kron(&linalg::identity(d), a),
        }
    }

    /// `X ↦ X B`, matrix `Bᵀ ⊗ I`.
    pub fn right_mult(b: &CMatrix) -> Self {
        let d = b.nrows();
        Superoperator {
            dim: d,
            matrix: kron(&b.transpose(), &linalg::identity(d)),
        }
    }

    /// `X ↦ A X B`.
    pub fn sandwich(a: &CMatrix, b: &CMatrix) -> Self {
        Superoperator {
            dim: a.nrows(),
            matrix: kron(&b.transpose(), a),
        }
    }

    /// `X ↦ U X U†`.
    pub fn conjugation(u: &CMatrix) -> Self {
        Self::sandwich(u, &u.adjoint())
    }

    /// `X ↦ −i[A, X]`.
    pub fn commutator_map(a: &CMatrix) -> Self {
        let minus_i = C64::new(0.0, -1.0);
        (&Self::left_mult(a) - &Self::right_mult(a)).scale(minus_i)
    }

    /// `X ↦ Tr(Y X) · W`.
    pub fn trace_map(y: &CMatrix, w: &CMatrix) -> Self {
        let d = w.nrows();
        let col = vectorize(w);
        let row = vectorize(&y.transpose()).transpose();
        Superoperator {
            dim: d,
            matrix: col * row,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        assert_eq!(
            x.shape(),
            (self.dim, self.dim),
            "operator shape does not match superoperator dimension"
        );
        let v = &self.matrix * vectorize(x);
        CMatrix::from_column_slice(self.dim, self.dim, v.as_slice())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Superoperator) -> Superoperator {
        assert_eq!(self.dim, other.dim, "superoperator dimensions differ");
        Superoperator {
            dim: self.dim,
            matrix: &self.matrix * &other.matrix,
        }
    }

    /// Hilbert–Schmidt adjoint: `⟨A, S(B)⟩ = ⟨S*(A), B⟩`.
    pub fn adjoint(&self) -> Superoperator {
        Superoperator {
            dim: self.dim,
            matrix: self.matrix.adjoint(),
        }
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &Superoperator) -> Superoperator {
        &self.compose(other) - &other.compose(self)
    }

    pub fn scale(&self, factor: C64) -> Superoperator {
        Superoperator {
            dim: self.dim,
            matrix: self.matrix.scale_complex(factor),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.norm()
    }

    /// Hilbert–Schmidt inner product on `B(B(H))`.
    pub fn inner(&self, other: &Superoperator) -> C64 {
        linalg::hs_inner(&self.matrix, &other.matrix)
    }

    /// True if `S(X†) = S(X)†` for all `X`, to tolerance `tol` (relative).
    pub fn is_hermiticity_preserving(&self, tol: f64) -> bool {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for j in 0..d {
            for i in 0..d {
                let mut unit = CMatrix::zeros(d, d);
                unit[(i, j)] = linalg::real(1.0);
                let lhs = self.apply(&unit.adjoint());
                let rhs = self.apply(&unit).adjoint();
                worst = worst.max(linalg::max_abs(&(lhs - rhs)));
            }
        }
        worst <= tol * linalg::max_abs(&self.matrix).max(1.0)
    }

    /// `‖S S* − S* S‖_F ≤ tol ‖S‖²_F`.
    pub fn normality_residual(&self) -> f64 {
        let m = &self.matrix;
        let ma = m.adjoint();
        let scale = m.norm().powi(2).max(f64::MIN_POSITIVE);
        (m * &ma - &ma * m).norm() / scale
    }
}

trait ScaleComplex {
    fn scale_complex(&self, factor: C64) -> Self;
}

impl ScaleComplex for CMatrix {
    fn scale_complex(&self, factor: C64) -> Self {
        self.map(|z| z * factor)
    }
}

impl Add for &Superoperator {
    type Output = Superoperator;
    fn add(self, rhs: &Superoperator) -> Superoperator {
        assert_eq!(self.dim, rhs.dim, "superoperator dimensions differ");
        Superoperator {
            dim: self.dim,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub for &Superoperator {
    type Output = Superoperator;
    fn sub(self, rhs: &Superoperator) -> Superoperator {
        assert_eq!(self.dim, rhs.dim, "superoperator dimensions differ");
        Superoperator {
            dim: self.dim,
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

impl Mul for &Superoperator {
    type Output = Superoperator;
    fn mul(self, rhs: &Superoperator) -> Superoperator {
        self.compose(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, real, CVector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
        CMatrix::from_fn(n, n, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    #[test]
    fn left_and_right_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(
            Superoperator::left_mult(&linalg::identity(3)),
            Superoperator::identity(3)
        );
        let a = random_matrix(&mut rng, 3);
        let b = random_matrix(&mut rng, 3);
        let x = random_matrix(&mut rng, 3);
        assert!((Superoperator::left_mult(&a).apply(&x) - &a * &x).norm() < 1e-14);
        assert!((Superoperator::right_mult(&b).apply(&x) - &x * &b).norm() < 1e-14);
        let comm = Superoperator::left_mult(&a).commutator(&Superoperator::right_mult(&b));
        assert!(comm.frobenius_norm() < 1e-14);

        let p0 = CMatrix::from_diagonal(&CVector::from_vec(vec![real(1.0), real(0.0)]));
        let rho = random_matrix(&mut rng, 2);
        assert_eq!(Superoperator::left_mult(&p0).apply(&rho), &p0 * &rho);
    }

    #[test]
    fn adjoint_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_matrix(&mut rng, 3);
        let lhs = Superoperator::left_mult(&a).adjoint();
        assert!((lhs.matrix() - Superoperator::left_mult(&a.adjoint()).matrix()).norm() < 1e-14);

        let s = Superoperator::from_matrix(2, random_matrix(&mut rng, 4)).unwrap();
        let x = random_matrix(&mut rng, 2);
        let y = random_matrix(&mut rng, 2);
        let lhs = linalg::hs_inner(&x, &s.apply(&y));
        let rhs = linalg::hs_inner(&s.adjoint().apply(&x), &y);
        assert!((lhs - rhs).norm() < 1e-12);
        assert_eq!(s.adjoint().adjoint(), s);

        let t = Superoperator::from_matrix(2, random_matrix(&mut rng, 4)).unwrap();
        let lhs = s.compose(&t).adjoint();
        let rhs = t.adjoint().compose(&s.adjoint());
        assert!((lhs.matrix() - rhs.matrix()).norm() < 1e-13);
    }

    #[test]
    fn unitary_conjugation_adjoint_is_inverse() {
        let u = random::random_unitary(3, &mut ChaCha8Rng::seed_from_u64(3));
        let conj = Superoperator::conjugation(&u);
        let inv = Superoperator::conjugation(&u.adjoint());
        assert!((conj.adjoint().matrix() - inv.matrix()).norm() < 1e-13);
    }

    #[test]
    fn from_map_matches_explicit_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = random_matrix(&mut rng, 2);
        let b = random_matrix(&mut rng, 2);
        let explicit = Superoperator::sandwich(&a, &b);
        let built = Superoperator::from_map(2, |x| &a * x * &b);
        assert!((explicit.matrix() - built.matrix()).norm() < 1e-14);

        let y = random_matrix(&mut rng, 2);
        let w = random_matrix(&mut rng, 2);
        let x = random_matrix(&mut rng, 2);
        let tm = Superoperator::trace_map(&y, &w).apply(&x);
        let expected = w.scale_complex(linalg::trace(&(&y * &x)));
        assert!((tm - expected).norm() < 1e-13);
    }

    #[test]
    fn dimension_checked() {
        assert!(Superoperator::from_matrix(2, CMatrix::zeros(3, 3)).is_err());
    }
}
