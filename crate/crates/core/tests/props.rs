//! Property-based invariants: quantities stay in their mathematical ranges,
//! projections land where they must, guards fire where they must, and the two
//! engines agree on randomized configurations.

use ampcoh_core::bounds::{entropic_coherence_sandwich, l1_boxcar};
use ampcoh_core::closed_form::{solve, ClosedFormUnavailable};
use ampcoh_core::coherence::{
    geometric_coherence_pure, l1_coherence_pure, project_to_simplex,
    relative_entropy_of_coherence,
};
use ampcoh_core::engine::{run_pure, GroverConfig};
use ampcoh_core::sample::{random_crosscheck_config, random_density, random_pure, rng_from_seed};
use ampcoh_core::state::{fidelity, shannon_entropy, MarkedSet, PureState};

use proptest::prelude::*;

proptest! {
    #[test]
    fn shannon_entropy_is_bounded(weights in proptest::collection::vec(1e-9..1.0f64, 2..12)) {
        let sum: f64 = weights.iter().sum();
        let probs: Vec<f64> = weights.iter().map(|w| w / sum).collect();
        let h = shannon_entropy(&probs);
        prop_assert!(h >= -1e-12);
        prop_assert!(h <= (probs.len() as f64).ln() + 1e-12);
    }

    #[test]
    fn simplex_projection_lands_on_the_simplex_and_is_idempotent(
        v in proptest::collection::vec(-5.0..5.0f64, 2..10),
    ) {
        let p = project_to_simplex(&v);
        prop_assert!(p.iter().all(|&x| x >= 0.0));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        let q = project_to_simplex(&p);
        for (a, b) in p.iter().zip(q.iter()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn pure_coherences_lie_in_their_ranges(seed in any::<u64>(), n in 2usize..12) {
        let mut rng = rng_from_seed(seed);
        let psi = random_pure(&mut rng, n);
        let cg = geometric_coherence_pure(&psi);
        prop_assert!(cg >= 0.0);
        prop_assert!(cg <= 1.0 - 1.0 / n as f64 + 1e-12);
        let cl1 = l1_coherence_pure(&psi);
        prop_assert!(cl1 >= -1e-10);
        prop_assert!(cl1 <= n as f64 - 1.0 + 1e-9);
    }

    #[test]
    fn density_quantities_lie_in_their_ranges(
        seed in any::<u64>(),
        n in 2usize..8,
        rank_hint in 1usize..8,
    ) {
        let mut rng = rng_from_seed(seed);
        let rho = random_density(&mut rng, n, rank_hint.min(n));
        let purity = rho.purity();
        prop_assert!(purity >= 1.0 / n as f64 - 1e-10);
        prop_assert!(purity <= 1.0 + 1e-10);
        let s = rho.von_neumann_entropy();
        prop_assert!(s >= -1e-9);
        prop_assert!(s <= (n as f64).ln() + 1e-9);
        prop_assert!(relative_entropy_of_coherence(&rho) >= -1e-9);
    }

    #[test]
    fn fidelity_is_symmetric_normalized_and_bounded(seed in any::<u64>(), n_exp in 1usize..3) {
        let n = 1usize << n_exp;
        let mut rng = rng_from_seed(seed);
        let a = random_density(&mut rng, n, n);
        let b = random_density(&mut rng, n, n);
        let f_ab = fidelity(&a, &b);
        let f_ba = fidelity(&b, &a);
        prop_assert!((f_ab - f_ba).abs() < 1e-9);
        prop_assert!(f_ab >= -1e-12);
        prop_assert!(f_ab <= 1.0 + 1e-9);
        prop_assert!((fidelity(&a, &a) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn entropic_sandwich_is_ordered_and_boxcar_is_in_range(
        p in 0.0..1.0f64,
        n_exp in 1usize..7,
        m_frac in 0.01..0.99f64,
    ) {
        let n = 1usize << n_exp;
        let m = ((n as f64 * m_frac) as usize).clamp(1, n - 1);
        let (lower, upper) = entropic_coherence_sandwich(n, m, p, 0.0);
        prop_assert!(lower <= upper + 1e-12);
        let c = l1_boxcar(n, m, p);
        prop_assert!(c >= -1e-10);
        prop_assert!(c <= n as f64 - 1.0 + 1e-9);
    }

    #[test]
    fn iteration_preserves_norm(seed in any::<u64>(), n_exp in 1usize..5) {
        let n = 1usize << n_exp;
        let mut rng = rng_from_seed(seed);
        let cfg = random_crosscheck_config(&mut rng, n);
        let traj = run_pure(&cfg, 100);
        for point in traj.iter().step_by(20) {
            let norm: f64 = point.state.probabilities().iter().sum();
            prop_assert!((norm - 1.0).abs() < 1e-10, "t={}: norm {}", point.t, norm);
        }
    }

    #[test]
    fn closed_form_matches_engine_on_random_configs(seed in any::<u64>(), n_exp in 2usize..5) {
        let n = 1usize << n_exp;
        let mut rng = rng_from_seed(seed);
        let cfg = random_crosscheck_config(&mut rng, n);
        let sol = solve(&cfg).unwrap();
        for point in &run_pure(&cfg, 12) {
            let p_cf = sol.success_probability_at(point.t);
            prop_assert!(
                (p_cf - point.p_suc).abs() < 1e-10,
                "t={}: closed form {} vs engine {}",
                point.t,
                p_cf,
                point.p_suc
            );
        }
    }

    #[test]
    fn gamma_at_a_multiple_of_two_pi_is_always_rejected(
        k in -3i32..4,
        beta in 0.3..5.9f64,
    ) {
        let gamma = f64::from(k) * 2.0 * std::f64::consts::PI;
        let uniform = PureState::uniform(4);
        let cfg = GroverConfig::new(
            MarkedSet::first(4, 1).unwrap(),
            beta,
            gamma,
            uniform.clone(),
            uniform,
        )
        .unwrap();
        let rejected = matches!(
            solve(&cfg),
            Err(ClosedFormUnavailable::GammaNearZero { .. })
        );
        prop_assert!(rejected, "gamma = {} slipped through the guard", gamma);
    }
}
