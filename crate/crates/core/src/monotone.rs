//! Monotones of Markovian evolutions built from pairs of symmetries.
//!
//! For positive definite `σ, τ` and `λ ≥ 0` the quadratic form
//!
//! ```text
//! Q(A; σ, τ, λ) = Tr(A† (R_σ + λ L_τ)⁻¹ A)
//! ```
//!
//! (with `R_σ(X) = Xσ` and `L_τ(X) = τX`) never increases when a quantum
//! channel is applied jointly to `A`, `σ` and `τ`. Choosing `A = M(ρ)` and
//! `σ = τ = N(ρ)` for superoperators `M`, `N` commuting with the generator
//! turns this into a function of the state that is non-increasing along
//! every trajectory: [`monotone_value`].
//!
//! In the eigenbases `τ = Σ t_a |a⟩⟨a|`, `σ = Σ s_b |b⟩⟨b|` the form is
//! `Σ_ab |⟨a|A|b⟩|² / (λ t_a + s_b)`; that spectral route is the default and
//! [`lr_quadratic_form_dense`] solves the `d² x d²` system directly as an
//! independent check.

use crate::error::{Error, Result};
use crate::linalg::{
    self, hermitian_matrix_function, kron, matrix_exp, vectorize, CMatrix, HermitianMatrix, C64, NULL_SPACE_TOL,
};
use crate::superop::{DensityMatrix, FullRankState, Lindbladian, PositiveDefinite, Superoperator};
use crate::symmetry::{self, symmetry_residual, SYMMETRY_TOL};

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("λ must be finite and ≥ 0, got {lambda}")));
    }
    Ok(())
}

/// `Tr(A† (R_σ + λ L_τ)⁻¹ A)` through the spectral decompositions of `σ` and `τ`.
pub fn lr_quadratic_form(a: &CMatrix, sigma: &PositiveDefinite, tau: &PositiveDefinite, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let d = sigma.dim();
    if tau.dim() != d || a.shape() != (d, d) {
        return Err(Error::Dimension("quadratic form operands differ in dimension".into()));
    }
    let s = sigma.spectral();
    let t = tau.spectral();
    let coords = t.eigenvectors.adjoint() * a * &s.eigenvectors;
    let mut total = 0.0;
    for (b, &sb) in s.eigenvalues.iter().enumerate() {
        for (row, &ta) in t.eigenvalues.iter().enumerate() {
            total += coords[(row, b)].norm_sqr() / (lambda * ta + sb);
        }
    }
    Ok(total)
}

/// Same quantity as [`lr_quadratic_form`], by solving
/// `(σᵀ ⊗ I + λ I ⊗ τ) x = vec(A)` with an LU factorization.
pub fn lr_quadratic_form_dense(a: &CMatrix, sigma: &CMatrix, tau: &CMatrix, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let d = sigma.nrows();
    let id = linalg::identity(d);
    let system = kron(&sigma.transpose(), &id) + kron(&id, tau).scale(lambda);
    let rhs = vectorize(a);
    let x = system
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Domain("R_σ + λ L_τ is singular".into()))?;
    Ok(rhs.dotc(&x).re)
}

/// The second symmetry `N` of a monotone, with the two common special cases
/// given their own variants.
#[derive(Debug, Clone)]
pub enum Normalizer {
    /// `N = I`, so `N(ρ) = ρ`.
    Identity,
    /// `N(X) = Tr(X) ω` for a full-rank fixed state `ω`.
    FixedState(FullRankState),
    /// Any superoperator; `N(ρ)` must be positive definite where evaluated.
    General(Superoperator),
}

impl Normalizer {
    pub fn image(&self, rho: &CMatrix) -> CMatrix {
        match self {
            Normalizer::Identity => rho.clone(),
            Normalizer::FixedState(omega) => omega.matrix() * linalg::trace(rho),
            Normalizer::General(n) => n.apply(rho),
        }
    }

    /// The superoperator form of `N`.
    pub fn superop(&self, dim: usize) -> Superoperator {
        match self {
            Normalizer::Identity => Superoperator::identity(dim),
            Normalizer::FixedState(omega) => Superoperator::trace_map(&linalg::identity(dim), omega.matrix()),
            Normalizer::General(n) => n.clone(),
        }
    }

    fn positive_image(&self, rho: &FullRankState) -> Result<PositiveDefinite> {
        match self {
            Normalizer::Identity => Ok(rho.positive().clone()),
            Normalizer::FixedState(omega) => Ok(omega.positive().clone()),
            Normalizer::General(n) => PositiveDefinite::from_matrix(&n.apply(rho.matrix()))
                .map_err(|e| Error::Domain(format!("N(ρ) must be positive definite at the evaluated state: {e}"))),
        }
    }
}

/// One member `⟦·⟧_{M,N}^{(λ)}` of a monotone family.
#[derive(Debug, Clone)]
pub struct MonotoneSpec {
    pub m: Superoperator,
    pub n: Normalizer,
    lambda: f64,
    pub label: Option<String>,
}

impl MonotoneSpec {
    pub fn new(m: Superoperator, n: Normalizer, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        if let Normalizer::FixedState(omega) = &n {
            if omega.dim() != m.dim() {
                return Err(Error::Dimension("fixed state and M differ in dimension".into()));
            }
        }
        if let Normalizer::General(s) = &n {
            if s.dim() != m.dim() {
                return Err(Error::Dimension("N and M differ in dimension".into()));
            }
        }
        Ok(MonotoneSpec {
            m,
            n,
            lambda,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(MonotoneSpec { lambda, ..self.clone() })
    }

    /// `M ↦ S ∘ M`.
    pub fn precomposed(&self, s: &Superoperator) -> Self {
        MonotoneSpec {
            m: s.compose(&self.m),
            ..self.clone()
        }
    }

    /// Largest symmetry residual of `M` and (when not trivially a symmetry)
    /// `N` against the generator.
    pub fn symmetry_residual(&self, l: &Lindbladian) -> f64 {
        let mut worst = symmetry_residual(l.superop(), &self.m);
        match &self.n {
            Normalizer::Identity => {}
            other => worst = worst.max(symmetry_residual(l.superop(), &other.superop(l.dim()))),
        }
        worst
    }

    pub fn describe(&self) -> String {
        let n = match &self.n {
            Normalizer::Identity => "N=I".to_string(),
            Normalizer::FixedState(_) => "N=fixed state".to_string(),
            Normalizer::General(_) => "N=general".to_string(),
        };
        match &self.label {
            Some(l) => format!("{l} [{n}, λ={}]", self.lambda),
            None => format!("[{n}, λ={}]", self.lambda),
        }
    }
}

/// `Tr(M(ρ)† (R_{N(ρ)} + λ L_{N(ρ)})⁻¹ M(ρ))`.
pub fn monotone_value(rho: &FullRankState, spec: &MonotoneSpec) -> Result<f64> {
    if rho.dim() != spec.m.dim() {
        return Err(Error::Dimension("state and monotone differ in dimension".into()));
    }
    let a = spec.m.apply(rho.matrix());
    let n = spec.n.positive_image(rho)?;
    lr_quadratic_form(&a, &n, &n, spec.lambda)
}

/// [`monotone_value`] evaluated through the dense superoperator solve.
pub fn monotone_value_dense(rho: &FullRankState, spec: &MonotoneSpec) -> Result<f64> {
    let a = spec.m.apply(rho.matrix());
    let n = spec.n.positive_image(rho)?;
    lr_quadratic_form_dense(&a, n.matrix(), n.matrix(), spec.lambda)
}

/// [`monotone_value`] extended to rank-deficient states.
///
/// If `N(ρ)` is positive definite the ordinary value is returned. Otherwise a
/// term whose denominator vanishes while its numerator does not makes the
/// form diverge and `+∞` is returned; if every such term is also `0/0` the
/// value is undefined and a domain error is reported.
pub fn monotone_value_extended(rho: &DensityMatrix, spec: &MonotoneSpec) -> Result<f64> {
    if let Ok(full) = rho.to_full_rank() {
        if let Ok(v) = monotone_value(&full, spec) {
            return Ok(v);
        }
    }
    let a = spec.m.apply(rho.matrix());
    let n_img = HermitianMatrix::with_tolerance(spec.n.image(rho.matrix()), 1e-10)?;
    if let Ok(pd) = PositiveDefinite::new(n_img.clone()) {
        return lr_quadratic_form(&a, &pd, &pd, spec.lambda);
    }
    let spec_n = linalg::hermitian_eig(&n_img);
    if spec_n.min_eigenvalue() < -1e-10 {
        return Err(Error::Domain("N(ρ) is not positive semidefinite".into()));
    }
    let coords = spec_n.eigenvectors.adjoint() * &a * &spec_n.eigenvectors;
    let scale = spec_n.max_eigenvalue().max(1.0);
    let zero = 1e-12 * scale;
    let numerator_floor = 1e-9 * linalg::max_abs(&a).max(1e-300);
    let mut total = 0.0;
    let mut divergent = false;
    let mut undefined = false;
    let p = &spec_n.eigenvalues;
    for i in 0..p.len() {
        for j in 0..p.len() {
            let denom = spec.lambda * p[i].max(0.0) + p[j].max(0.0);
            let num = coords[(i, j)].norm_sqr();
            if denom <= zero {
                if num.sqrt() > numerator_floor {
                    divergent = true;
                } else {
                    undefined = true;
                }
            } else {
                total += num / denom;
            }
        }
    }
    if divergent {
        Ok(f64::INFINITY)
    } else if undefined {
        Err(Error::Domain("monotone undefined on this boundary state".into()))
    } else {
        Ok(total)
    }
}

/// `Σ_ij |⟨i|M(ρ)|j⟩|² / (√p_i + √p_j)²` in the eigenbasis of `ρ`.
pub fn wigner_yanase(rho: &FullRankState, m: &Superoperator) -> Result<f64> {
    let spec = rho.spectral();
    let a = m.apply(rho.matrix());
    let coords = spec.eigenvectors.adjoint() * a * &spec.eigenvectors;
    let roots: Vec<f64> = spec.eigenvalues.iter().map(|p| p.sqrt()).collect();
    let mut total = 0.0;
    for i in 0..roots.len() {
        for j in 0..roots.len() {
            total += coords[(i, j)].norm_sqr() / (roots[i] + roots[j]).powi(2);
        }
    }
    Ok(total)
}

/// Relative Rényi entropy of order ½, `−2 log Tr(√ρ √σ)`.
///
/// Returns `+∞` when the supports are orthogonal.
pub fn renyi_half(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Dimension("states differ in dimension".into()));
    }
    let sqrt = |x: f64| x.max(0.0).sqrt();
    let a = hermitian_matrix_function(rho.as_hermitian(), sqrt)?;
    let b = hermitian_matrix_function(sigma.as_hermitian(), sqrt)?;
    let overlap = linalg::hs_inner(a.as_matrix(), b.as_matrix()).re;
    if overlap <= 1e-300 {
        return Ok(f64::INFINITY);
    }
    Ok((-2.0 * overlap.ln()).max(0.0))
}

/// Smallest step accepted by [`expansion_estimate`]; below it the divided
/// difference `f_s / s²` is dominated by round-off.
pub const MIN_EXPANSION_STEP: f64 = 1e-5;

/// Steps used when the caller has no preference.
pub const DEFAULT_EXPANSION_STEPS: [f64; 3] = [4e-3, 2e-3, 1e-3];

/// Second-order coefficient of `f_s = S_½(ρ, e^{sM} ρ)` for the unitary
/// orbit `M(X) = −i[A, X]`, from polynomial (Richardson) extrapolation of
/// `f_s / s²` in `s²` to `s = 0`.
pub fn expansion_estimate(rho: &FullRankState, a: &HermitianMatrix, s_values: &[f64]) -> Result<f64> {
    if s_values.len() < 2 {
        return Err(Error::Domain(
            "Richardson extrapolation needs at least two steps".into(),
        ));
    }
    for (k, &s) in s_values.iter().enumerate() {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::Domain(format!("expansion step {s} must be positive")));
        }
        if s < MIN_EXPANSION_STEP {
            return Err(Error::Domain(format!(
                "expansion step {s:e} is below {MIN_EXPANSION_STEP:e}: round-off dominated"
            )));
        }
        if s_values[..k].iter().any(|&t| (t - s).abs() <= 1e-3 * s) {
            return Err(Error::Domain("expansion steps must be distinct".into()));
        }
    }
    let d = rho.dim();
    if a.dim() != d {
        return Err(Error::Dimension("generator and state differ in dimension".into()));
    }
    let mut nodes = Vec::with_capacity(s_values.len());
    for &s in s_values {
        let u = matrix_exp(&a.as_matrix().map(|z| z * C64::new(0.0, -s)))?;
        let moved = &u * rho.matrix() * u.adjoint();
        let sigma = DensityMatrix::from_hermitian(HermitianMatrix::hermitian_part(&moved))
            .map_err(|e| Error::Numerical(format!("rotated state invalid: {e}")))?;
        let f = renyi_half(rho.state(), &sigma)?;
        nodes.push((s * s, f / (s * s)));
    }
    Ok(neville_at_zero(&nodes))
}

/// Value at `h = 0` of the interpolating polynomial through `(h_k, y_k)`.
fn neville_at_zero(nodes: &[(f64, f64)]) -> f64 {
    let n = nodes.len();
    let mut p: Vec<f64> = nodes.iter().map(|&(_, y)| y).collect();
    for level in 1..n {
        for i in 0..n - level {
            let (hi, hj) = (nodes[i].0, nodes[i + level].0);
            p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
        }
    }
    p[0]
}

/// A finite group of unitaries, acting by conjugation.
///
/// Closure is checked projectively: products only need to match a member up
/// to a global phase, since conjugation ignores phases.
#[derive(Debug, Clone)]
pub struct FiniteUnitaryGroup {
    elements: Vec<CMatrix>,
}

impl FiniteUnitaryGroup {
    pub fn new(elements: Vec<CMatrix>, tol: f64) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::Domain("group must have at least one element".into()));
        };
        let d = first.nrows();
        let id = linalg::identity(d);
        for (k, u) in elements.iter().enumerate() {
            if u.shape() != (d, d) {
                return Err(Error::Dimension(format!("group element {k} has the wrong shape")));
            }
            if (u.adjoint() * u - &id).norm() > tol {
                return Err(Error::Domain(format!("group element {k} is not unitary")));
            }
        }
        let same_up_to_phase = |a: &CMatrix, b: &CMatrix| (linalg::hs_inner(a, b).norm() - d as f64).abs() <= tol;
        if !elements.iter().any(|u| same_up_to_phase(u, &id)) {
            return Err(Error::Domain("group must contain the identity".into()));
        }
        for a in &elements {
            for b in &elements {
                let prod = a * b;
                if !elements.iter().any(|u| same_up_to_phase(u, &prod)) {
                    return Err(Error::Domain("unitaries are not closed under multiplication".into()));
                }
            }
        }
        Ok(FiniteUnitaryGroup { elements })
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }

    pub fn conjugations(&self) -> Vec<Superoperator> {
        self.elements.iter().map(Superoperator::conjugation).collect()
    }
}

/// `P(X) = (1/|G|) Σ_g U_g X U_g†`, the projector onto `G`-invariant operators.
pub fn invariant_projector(group: &FiniteUnitaryGroup) -> Superoperator {
    let sum = group
        .conjugations()
        .iter()
        .fold(Superoperator::zero(group.dim()), |acc, c| &acc + c);
    sum.scale(C64::new(1.0 / group.order() as f64, 0.0))
}

/// `(1/|G|) Σ_g ⟦ρ⟧_{U_g M, N}^{(λ)}`.
pub fn group_averaged_monotone(rho: &FullRankState, spec: &MonotoneSpec, group: &FiniteUnitaryGroup) -> Result<f64> {
    if group.dim() != spec.m.dim() {
        return Err(Error::Dimension("group and monotone differ in dimension".into()));
    }
    let mut total = 0.0;
    for conj in group.conjugations() {
        total += monotone_value(rho, &spec.precomposed(&conj))?;
    }
    Ok(total / group.order() as f64)
}

/// `Σ_k w_k ⟦ρ⟧_{M,N}^{(λ_k)}` for nonnegative weights.
pub fn lambda_averaged_monotone(
    rho: &FullRankState,
    m: &Superoperator,
    n: &Normalizer,
    weights: &[(f64, f64)],
) -> Result<f64> {
    let mut total = 0.0;
    for &(lambda, w) in weights {
        if !(w >= 0.0) || !w.is_finite() {
            return Err(Error::Domain(format!("averaging weight {w} must be finite and ≥ 0")));
        }
        if w == 0.0 {
            continue;
        }
        let spec = MonotoneSpec::new(m.clone(), n.clone(), lambda)?;
        total += w * monotone_value(rho, &spec)?;
    }
    Ok(total)
}

/// Tolerances separating a genuine violation from evaluation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExclusionSlack {
    pub relative: f64,
    pub absolute: f64,
}

impl Default for ExclusionSlack {
    fn default() -> Self {
        ExclusionSlack {
            relative: 1e-7,
            absolute: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Excluded,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub enum WitnessKind {
    /// Index into the spec list passed to [`exclusion_certificate`].
    Monotone { spec_index: usize, description: String },
    /// A conserved operator `Y`; the witness values are `Tr(Y† ρ)`.
    Conserved { operator_index: usize, operator: CMatrix },
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub kind: WitnessKind,
    pub source_value: f64,
    pub target_value: f64,
    /// Amount by which the violation exceeds the slack threshold (> 0).
    pub margin: f64,
}

#[derive(Debug, Clone)]
pub struct ExclusionVerdict {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
}

impl ExclusionVerdict {
    pub fn is_excluded(&self) -> bool {
        self.verdict == Verdict::Excluded
    }
}

/// Decides whether `target` is certainly unreachable from `source`.
///
/// Each spec contributes a monotone; a target value above the source value
/// (beyond the slack) proves exclusion. Every conserved operator of the
/// generator is also compared. Monotones are evaluated with `M` rescaled to
/// unit Frobenius norm, so the verdict does not depend on the normalization
/// of the supplied symmetries; reported values refer to the rescaled `M`.
///
/// Specs whose `M` or `N` fails [`symmetry::is_symmetry`] are rejected: a
/// non-symmetry could certify false exclusions.
pub fn exclusion_certificate(
    l: &Lindbladian,
    source: &FullRankState,
    target: &FullRankState,
    specs: &[MonotoneSpec],
    slack: ExclusionSlack,
) -> Result<ExclusionVerdict> {
    let d = l.dim();
    if source.dim() != d || target.dim() != d {
        return Err(Error::Dimension("states and generator differ in dimension".into()));
    }
    for (k, spec) in specs.iter().enumerate() {
        let residual = spec.symmetry_residual(l);
        if residual > SYMMETRY_TOL {
            return Err(Error::NotASymmetry(format!(
                "spec {k} ({}) has commutator residual {residual:e}",
                spec.describe()
            )));
        }
    }

    let mut witnesses = Vec::new();
    for (k, spec) in specs.iter().enumerate() {
        let norm = spec.m.frobenius_norm();
        if norm == 0.0 {
            continue;
        }
        let unit = MonotoneSpec {
            m: spec.m.scale(C64::new(1.0 / norm, 0.0)),
            ..spec.clone()
        };
        let before = monotone_value(source, &unit)?;
        let after = monotone_value(target, &unit)?;
        let margin = after - (before * (1.0 + slack.relative) + slack.absolute);
        if margin > 0.0 {
            witnesses.push(Witness {
                kind: WitnessKind::Monotone {
                    spec_index: k,
                    description: spec.describe(),
                },
                source_value: before,
                target_value: after,
                margin,
            });
        }
    }

    let conserved = symmetry::noether_basis(l, NULL_SPACE_TOL);
    for (k, y) in conserved.operators.iter().enumerate() {
        let before = linalg::hs_inner(y, source.matrix());
        let after = linalg::hs_inner(y, target.matrix());
        let scale = before.norm().max(after.norm());
        let margin = (after - before).norm() - (slack.absolute + slack.relative * scale);
        if margin > 0.0 {
            witnesses.push(Witness {
                kind: WitnessKind::Conserved {
                    operator_index: k,
                    operator: y.clone(),
                },
                source_value: before.re,
                target_value: after.re,
                margin,
            });
        }
    }

    let verdict = if witnesses.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::Excluded
    };
    Ok(ExclusionVerdict { verdict, witnesses })
}

/// A broad family of specs derived from the generator alone, used when the
/// caller has no particular symmetries in mind.
///
/// For every `λ` it contains `M = L`, `M = −i[H, ·]` (when it commutes with
/// `L`), left multiplications and first-order products `X ↦ A X B` over the
/// operator commutant of `{H, L_k, L_k†}`, and the superoperator commutant
/// basis when `d` is small enough. Each is paired with `N = I` and, when
/// `Ker L` contains a full-rank state `ω`, also with `N = Tr(·) ω`.
pub fn generator_spec_family(l: &Lindbladian, lambdas: &[f64]) -> Result<Vec<MonotoneSpec>> {
    let d = l.dim();
    let mut maps: Vec<(String, Superoperator)> = vec![("L".into(), l.superop().clone())];
    let kh = l.hamiltonian_part();
    if kh.frobenius_norm() > 0.0 && symmetry::is_symmetry(l, kh, SYMMETRY_TOL) {
        maps.push(("K_H".into(), kh.clone()));
    }
    let commutant = symmetry::operator_commutant_basis_dim(d, &l.generating_operators(), NULL_SPACE_TOL);
    if commutant.len() > 1 {
        for (i, a) in commutant.iter().enumerate() {
            maps.push((format!("left(A'_{i})"), Superoperator::left_mult(a)));
            for (j, b) in commutant.iter().enumerate() {
                maps.push((
                    format!("left(A'_{i})right(A'_{j})"),
                    symmetry::left_right_symmetry(a, b),
                ));
            }
        }
    }
    if d <= 3 {
        let basis = symmetry::superop_commutant_basis(l, NULL_SPACE_TOL)?;
        for (k, e) in basis.elements.into_iter().enumerate() {
            maps.push((format!("commutant_{k}"), e));
        }
    }
    maps.retain(|(_, m)| symmetry_residual(l.superop(), m) <= SYMMETRY_TOL);

    let mut normalizers = vec![Normalizer::Identity];
    if let Some(omega) = full_rank_fixed_state(l)? {
        normalizers.push(Normalizer::FixedState(omega));
    }

    let mut specs = Vec::new();
    for &lambda in lambdas {
        for (name, m) in &maps {
            for n in &normalizers {
                specs.push(MonotoneSpec::new(m.clone(), n.clone(), lambda)?.with_label(name.clone()));
            }
        }
    }
    Ok(specs)
}

/// A full-rank state in `Ker L`, if the projected identity `F / Tr F` is one.
pub fn full_rank_fixed_state(l: &Lindbladian) -> Result<Option<FullRankState>> {
    let fixed = symmetry::fixed_point_set(l, NULL_SPACE_TOL)?;
    let tr = fixed.f.trace();
    if tr <= 0.0 {
        return Ok(None);
    }
    let omega = fixed.f.as_matrix().unscale(tr);
    Ok(FullRankState::from_matrix(omega).ok())
}
