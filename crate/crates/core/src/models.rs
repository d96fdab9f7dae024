//! Named generator families with closed-form dynamics, and Bloch-sphere
//! utilities for qubits.
//!
//! Conventions: `σ_z = |0⟩⟨0| − |1⟩⟨1|`, `σ⁺ = |0⟩⟨1|`, `σ⁻ = |1⟩⟨0|`, and a
//! qubit state is `ρ = ½(I + xσ_x + yσ_y + zσ_z)`. With these, `σ⁺` pumps
//! population towards `|0⟩`, i.e. towards `z = +1`.

use crate::error::{Error, Result};
use crate::linalg::{self, c, hermitian_eig, real, CMatrix, CVector, HermitianMatrix, C64};
use crate::monotone::{monotone_value_extended, MonotoneSpec};
use crate::superop::{DensityMatrix, FullRankState, Lindbladian, Superoperator, FULL_RANK_TOL};

pub fn sigma_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[real(0.0), real(1.0), real(1.0), real(0.0)])
}

pub fn sigma_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[real(0.0), c(0.0, -1.0), c(0.0, 1.0), real(0.0)])
}

pub fn sigma_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[real(1.0), real(0.0), real(0.0), real(-1.0)])
}

/// `|0⟩⟨1|`.
pub fn sigma_plus() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[real(0.0), real(1.0), real(0.0), real(0.0)])
}

/// `|1⟩⟨0|`.
pub fn sigma_minus() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[real(0.0), real(0.0), real(1.0), real(0.0)])
}

const BLOCH_RADIUS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Distance from the z-axis.
    pub fn radius(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Azimuth in `(−π, π]`.
    pub fn phi(&self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn from_cylindrical(r: f64, phi: f64, z: f64) -> Self {
        BlochVector::new(r * phi.cos(), r * phi.sin(), z)
    }

    pub fn scaled(&self, s: f64) -> Self {
        BlochVector::new(self.x * s, self.y * s, self.z * s)
    }

    /// Largest componentwise difference.
    pub fn distance(&self, other: &BlochVector) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

/// `½(I + v·σ)`.
pub fn bloch_to_state(v: &BlochVector) -> Result<DensityMatrix> {
    if !(v.x.is_finite() && v.y.is_finite() && v.z.is_finite()) {
        return Err(Error::Domain("Bloch vector has non-finite components".into()));
    }
    if v.norm() > 1.0 + BLOCH_RADIUS_TOL {
        return Err(Error::Domain(format!("Bloch vector has length {} > 1", v.norm())));
    }
    // Within tolerance outside the sphere: pull back onto it.
    let v = if v.norm() > 1.0 { v.scaled(1.0 / v.norm()) } else { *v };
    let m = CMatrix::from_row_slice(
        2,
        2,
        &[
            real(0.5 * (1.0 + v.z)),
            c(0.5 * v.x, -0.5 * v.y),
            c(0.5 * v.x, 0.5 * v.y),
            real(0.5 * (1.0 - v.z)),
        ],
    );
    let h = HermitianMatrix::new(m)?;
    DensityMatrix::from_hermitian(h)
}

pub fn state_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    bloch_of_matrix(rho.matrix())
}

pub(crate) fn bloch_of_matrix(m: &CMatrix) -> Result<BlochVector> {
    if m.shape() != (2, 2) {
        return Err(Error::Dimension(format!(
            "Bloch coordinates need a qubit, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let off = m[(1, 0)];
    Ok(BlochVector::new(2.0 * off.re, 2.0 * off.im, (m[(0, 0)] - m[(1, 1)]).re))
}

/// `L(X) = −ig[σ_z, X] + σ_z X σ_z − X`.
pub fn qubit_dephasing(g: f64) -> Lindbladian {
    assert!(g.is_finite(), "dephasing frequency must be finite");
    let h = HermitianMatrix::new(sigma_z().scale(g)).expect("σ_z is Hermitian");
    Lindbladian::new(h, vec![sigma_z()]).expect("qubit operators are consistent")
}

/// Closed form: radius shrinks as `e^{−2t}`, azimuth advances by `2gt`, `z` is fixed.
pub fn qubit_dephasing_trajectory(v0: &BlochVector, g: f64, t: f64) -> BlochVector {
    assert!(t >= 0.0, "time must be nonnegative");
    BlochVector::from_cylindrical(v0.radius() * (-2.0 * t).exp(), v0.phi() + 2.0 * g * t, v0.z)
}

/// Joint spectral structure of a generator whose `H, L_k, L_k†` all commute.
#[derive(Debug, Clone)]
pub struct DephasingStructure {
    pub projectors: Vec<CMatrix>,
    /// `L(P_i X P_j) = λ_ij P_i X P_j`.
    pub eigenvalues: Vec<Vec<C64>>,
}

impl DephasingStructure {
    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    /// `exp(tL)(X) = Σ_ij e^{tλ_ij} P_i X P_j`.
    pub fn evolve(&self, x: &CMatrix, t: f64) -> CMatrix {
        let mut out = CMatrix::zeros(x.nrows(), x.ncols());
        for (i, pi) in self.projectors.iter().enumerate() {
            for (j, pj) in self.projectors.iter().enumerate() {
                out += (pi * x * pj) * (self.eigenvalues[i][j] * t).exp();
            }
        }
        out
    }

    pub fn propagator(&self, t: f64) -> Superoperator {
        let d = self.projectors[0].nrows();
        let mut m = CMatrix::zeros(d * d, d * d);
        for (i, pi) in self.projectors.iter().enumerate() {
            for (j, pj) in self.projectors.iter().enumerate() {
                m += linalg::kron(&pj.transpose(), pi) * (self.eigenvalues[i][j] * t).exp();
            }
        }
        Superoperator::from_matrix(d, m).expect("projectors share a dimension")
    }

    /// Coherence functional `Tr(P_i ρ P_j ρ†)`, the squared norm of the `(i, j)` block.
    pub fn coherence(&self, rho: &CMatrix, i: usize, j: usize) -> f64 {
        linalg::trace(&(&self.projectors[i] * rho * &self.projectors[j] * rho.adjoint())).re
    }

    pub fn population(&self, rho: &CMatrix, i: usize) -> f64 {
        linalg::trace(&(&self.projectors[i] * rho)).re
    }
}

/// Eigenvalue gaps below this are treated as degeneracies when forming joint
/// eigenspaces.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Maximal joint spectral projectors of `{H, L_k, L_k†}` and the eigenvalue
/// table of the generator on the blocks `P_i X P_j`.
pub fn dephasing_structure(h: &HermitianMatrix, jumps: &[CMatrix], tol: f64) -> Result<DephasingStructure> {
    let l = Lindbladian::new(h.clone(), jumps.to_vec())?;
    let ops = l.generating_operators();
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            let scale = a.norm().max(1.0) * b.norm().max(1.0);
            if linalg::commutator(a, b).norm() > tol * scale {
                return Err(Error::Domain(
                    "not a dephasing generator: H and the jump operators do not all commute".into(),
                ));
            }
        }
    }

    // Hermitian generators of the same commutative algebra.
    let mut hermitian = vec![h.as_matrix().clone()];
    for j in jumps {
        hermitian.push((j + j.adjoint()).scale(0.5));
        hermitian.push((j - j.adjoint()) * c(0.0, -0.5));
    }

    let d = h.dim();
    let mut blocks = vec![linalg::identity(d)];
    for b in &hermitian {
        let gap = DEGENERACY_TOL * b.norm().max(1.0);
        let mut refined = Vec::new();
        for v in &blocks {
            let restricted = HermitianMatrix::hermitian_part(&(v.adjoint() * b * v));
            let spec = hermitian_eig(&restricted);
            let mut start = 0;
            for k in 1..=spec.eigenvalues.len() {
                if k == spec.eigenvalues.len() || spec.eigenvalues[k] - spec.eigenvalues[k - 1] > gap {
                    let w = spec.eigenvectors.columns(start, k - start).into_owned();
                    refined.push(v * w);
                    start = k;
                }
            }
        }
        blocks = refined;
    }

    let projectors: Vec<CMatrix> = blocks.iter().map(|v| v * v.adjoint()).collect();
    let mut eigenvalues = vec![vec![C64::new(0.0, 0.0); blocks.len()]; blocks.len()];
    for (i, vi) in blocks.iter().enumerate() {
        for (j, vj) in blocks.iter().enumerate() {
            let probe = vi.column(0) * vj.column(0).adjoint();
            let image = l.apply(&probe);
            let lambda = linalg::hs_inner(&probe, &image);
            if (image - &probe * lambda).norm() > 1e-8 * l.superop().frobenius_norm().max(1.0) {
                return Err(Error::Numerical(format!("block ({i},{j}) is not an eigenspace of L")));
            }
            eigenvalues[i][j] = if i == j { C64::new(0.0, 0.0) } else { lambda };
        }
    }
    Ok(DephasingStructure {
        projectors,
        eigenvalues,
    })
}

/// Qubit Davies generator with `H = σ_z` and jumps `aσ⁺, bσ⁻`.
#[derive(Debug, Clone)]
pub struct DaviesModel {
    pub lindbladian: Lindbladian,
    pub a: C64,
    pub b: C64,
    /// `|a|² + |b|²`.
    pub g: f64,
    /// `(|a|² − |b|²) / g`, the z-coordinate of the steady state.
    pub w_z: f64,
    pub steady_state: DensityMatrix,
}

impl DaviesModel {
    /// The detailed-balance state; fails when it is pure (`a = 0` or `b = 0`).
    pub fn tau(&self) -> Result<FullRankState> {
        self.steady_state.to_full_rank()
    }
}

pub fn davies_qubit(a: C64, b: C64) -> Result<DaviesModel> {
    let g = a.norm_sqr() + b.norm_sqr();
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::Domain(
            "Davies amplitudes must be finite and not both zero".into(),
        ));
    }
    let h = HermitianMatrix::new(sigma_z())?;
    let lindbladian = Lindbladian::new(h, vec![sigma_plus() * a, sigma_minus() * b])?;
    let w_z = (a.norm_sqr() - b.norm_sqr()) / g;
    let steady_state = bloch_to_state(&BlochVector::new(0.0, 0.0, w_z))?;
    Ok(DaviesModel {
        lindbladian,
        a,
        b,
        g,
        w_z,
        steady_state,
    })
}

/// Closed form: radius shrinks as `e^{−gt/2}`, azimuth advances by `2t`,
/// `z` relaxes exponentially to `w_z` at rate `g`.
pub fn qubit_davies_trajectory(v0: &BlochVector, a: C64, b: C64, t: f64) -> BlochVector {
    assert!(t >= 0.0, "time must be nonnegative");
    let g = a.norm_sqr() + b.norm_sqr();
    let w_z = if g > 0.0 {
        (a.norm_sqr() - b.norm_sqr()) / g
    } else {
        0.0
    };
    let decay = (-g * t).exp();
    BlochVector::from_cylindrical(
        v0.radius() * (-0.5 * g * t).exp(),
        v0.phi() + 2.0 * t,
        (1.0 - decay) * w_z + decay * v0.z,
    )
}

/// Whether `D ∘ R_τ = R_τ ∘ D*`, with the residual
/// `‖D R_τ − R_τ D*‖_F / (‖D‖_F ‖R_τ‖_F)`.
pub fn detailed_balance_check(d: &Superoperator, tau: &FullRankState, tol: f64) -> (bool, f64) {
    let r = Superoperator::right_mult(tau.matrix());
    let lhs = d.compose(&r);
    let rhs = r.compose(&d.adjoint());
    let scale = d.frobenius_norm() * r.frobenius_norm();
    let residual = if scale == 0.0 {
        0.0
    } else {
        (&lhs - &rhs).frobenius_norm() / scale
    };
    (residual <= tol, residual)
}

/// `|Tr(τ⁻¹ Y† ρ)| = |⟨Y, ρ⟩_{τ⁻¹}|`.
pub fn eigenmode_monotone(rho: &FullRankState, y: &CMatrix, tau: &FullRankState) -> Result<f64> {
    if y.shape() != (rho.dim(), rho.dim()) || tau.dim() != rho.dim() {
        return Err(Error::Dimension("eigenmode operands differ in dimension".into()));
    }
    Ok(linalg::trace(&(tau.inverse() * y.adjoint() * rho.matrix())).norm())
}

/// The symmetry `X ↦ Tr(τ⁻¹ Y† X) Y` underlying [`eigenmode_monotone`].
pub fn eigenmode_projector(y: &CMatrix, tau: &FullRankState) -> Superoperator {
    Superoperator::trace_map(&(tau.inverse() * y.adjoint()), y)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurityMonotone {
    /// `Tr(τ⁻¹ ρ²)`.
    pub value: f64,
    /// `‖ρ − τ‖²_{τ⁻¹} = Tr(τ⁻¹ρ²) − 1`, meaningful when `τ` is the fixed state.
    pub distance: f64,
}

pub fn purity_monotone(rho: &FullRankState, tau: &FullRankState) -> Result<PurityMonotone> {
    if tau.dim() != rho.dim() {
        return Err(Error::Dimension("state and reference differ in dimension".into()));
    }
    let value = linalg::trace(&(tau.inverse() * rho.matrix() * rho.matrix())).re;
    Ok(PurityMonotone {
        value,
        distance: value - 1.0,
    })
}

/// One cell of an x–z contour grid; `value` is `None` for points outside the
/// Bloch ball or on its boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourCell {
    pub x: f64,
    pub z: f64,
    pub value: Option<f64>,
}

/// Monotone values on the `y = 0` slice of the Bloch ball, together with the
/// value at a reference state; the region reachable from the reference is
/// contained in `value ≤ threshold`.
#[derive(Debug, Clone)]
pub struct ContourGrid {
    pub n: usize,
    pub threshold: f64,
    /// Row-major: `z` outer, `x` inner, both ascending over `[−1, 1]`.
    pub cells: Vec<ContourCell>,
}

/// Grid coordinate `k` of `n` evenly spaced points on `[−1, 1]`.
pub fn grid_coordinate(k: usize, n: usize) -> f64 {
    -1.0 + 2.0 * k as f64 / (n - 1) as f64
}

/// Monotone value at the Bloch point `(x, 0, z)`, or `None` when that point is
/// not a full-rank state.
pub fn contour_cell(spec: &MonotoneSpec, x: f64, z: f64) -> Result<ContourCell> {
    let r = x.hypot(z);
    // Eigenvalues of the grid state are (1 ± r)/2.
    if (1.0 - r) / 2.0 < FULL_RANK_TOL {
        return Ok(ContourCell { x, z, value: None });
    }
    let rho = bloch_to_state(&BlochVector::new(x, 0.0, z))?.into_full_rank()?;
    let value = crate::monotone::monotone_value(&rho, spec)?;
    Ok(ContourCell {
        x,
        z,
        value: Some(value),
    })
}

pub fn xz_contour(spec: &MonotoneSpec, reference: &DensityMatrix, n: usize) -> Result<ContourGrid> {
    if n < 3 {
        return Err(Error::Domain(format!("contour grid needs n ≥ 3, got {n}")));
    }
    if spec.m.dim() != 2 {
        return Err(Error::Dimension("contour grids are defined for qubits only".into()));
    }
    let threshold = monotone_value_extended(reference, spec)?;
    let mut cells = Vec::with_capacity(n * n);
    for iz in 0..n {
        for ix in 0..n {
            cells.push(contour_cell(spec, grid_coordinate(ix, n), grid_coordinate(iz, n))?);
        }
    }
    Ok(ContourGrid { n, threshold, cells })
}

/// Computational-basis projector `|i⟩⟨i|` in dimension `d`.
pub fn basis_projector(d: usize, i: usize) -> CMatrix {
    let mut v = CVector::zeros(d);
    v[i] = real(1.0);
    &v * v.adjoint()
}
