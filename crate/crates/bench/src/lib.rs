//! Fixtures shared by the benchmarks under `benches/`.

use symmono::linalg::{real, NULL_SPACE_TOL};
use symmono::models::davies_qubit;
use symmono::monotone::full_rank_fixed_state;
use symmono::superop::random::{random_full_rank_state, random_lindbladian_with, rng_from_seed};
use symmono::symmetry::superop_commutant_basis;
use symmono::{FullRankState, Lindbladian, MonotoneSpec, Normalizer};

/// Deterministic random generator of dimension `d`.
pub fn generator(d: usize, n_jumps: usize) -> Lindbladian {
    random_lindbladian_with(d, n_jumps, &mut rng_from_seed(d as u64 * 1000 + n_jumps as u64))
}

/// Deterministic full-rank state of dimension `d`.
pub fn state(d: usize) -> FullRankState {
    random_full_rank_state(d, 0.05, &mut rng_from_seed(d as u64))
}

/// A monotone on a random generator built from its first commutant element,
/// normalized by the fixed state when one exists.
pub fn commutant_monotone(d: usize, lambda: f64) -> (Lindbladian, MonotoneSpec) {
    let l = generator(d, 2);
    let m = superop_commutant_basis(&l, NULL_SPACE_TOL)
        .expect("d within cap")
        .elements[0]
        .clone();
    let n = match full_rank_fixed_state(&l).expect("kernel") {
        Some(omega) => Normalizer::FixedState(omega),
        None => Normalizer::Identity,
    };
    let spec = MonotoneSpec::new(m, n, lambda).expect("valid spec");
    (l, spec)
}

/// The Davies qubit with `a = √2`, `b = 1` and the monotone `M = L`, `λ = ½`.
pub fn davies_lindbladian_monotone() -> (Lindbladian, MonotoneSpec) {
    let l = davies_qubit(real(2f64.sqrt()), real(1.0))
        .expect("valid amplitudes")
        .lindbladian;
    let spec = MonotoneSpec::new(l.superop().clone(), Normalizer::Identity, 0.5).expect("valid spec");
    (l, spec)
}
