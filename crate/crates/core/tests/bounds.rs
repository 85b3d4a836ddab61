//! Bound-machinery oracle tests: frozen sandwich values, universal validity on
//! random states, the dominant-branch selection rule, the boxcar l1 profile,
//! and sweep reproducibility.

use ampcoh_core::bounds::{
    dominant_mass_lower_bound, entropic_coherence_bounds, entropic_coherence_sandwich,
    fidelity_success_bound, fidelity_with_marked_uniform, geometric_coherence_bounds,
    geometric_coherence_sandwich, l1_boxcar, l1_boxcar_residual, DominantBranch,
};
use ampcoh_core::coherence::{relative_entropy_of_coherence, CgOptions};
use ampcoh_core::sample::{random_density, random_marked, random_pure, rng_from_seed};
use ampcoh_core::state::{DensityMatrix, MarkedSet, PureState};
use ampcoh_core::sweep::{run, run_seq, SweepConfig, StateKind};

use std::f64::consts::LN_2;

// --- frozen sandwich values -----------------------------------------------------

#[test]
fn entropic_sandwich_on_the_uniform_state() {
    // Frozen: N = 4, M = 1, P = 1/4, pure state. Lower = h(1/4), and the
    // upper bound collapses to ln 4, which the uniform state attains.
    let (lower, upper) = entropic_coherence_sandwich(4, 1, 0.25, 0.0);
    assert!((lower - 0.5623351446188083).abs() < 1e-15);
    assert!((upper - 4f64.ln()).abs() < 1e-15);

    let report = entropic_coherence_bounds(
        &PureState::uniform(4).density(),
        &MarkedSet::first(4, 1).unwrap(),
    );
    assert!((report.value - 4f64.ln()).abs() < 1e-10);
    assert!(report.upper_slack().abs() < 1e-10, "uniform state saturates");
    assert!(report.holds(1e-10));
}

#[test]
fn geometric_sandwich_on_the_uniform_state() {
    // Frozen: N = 4, M = 1, purity 1, P = 1/4 gives
    // lower = 3/4 (1 - sqrt(1/2)), upper = 3/4 = Cg.
    let (lower, upper, active) = geometric_coherence_sandwich(4, 1, 1.0, 0.25);
    assert!((lower - 0.2196699141100893).abs() < 1e-15);
    assert!((upper - 0.75).abs() < 1e-15);
    assert!(active);

    let report = geometric_coherence_bounds(
        &PureState::uniform(4).density(),
        &MarkedSet::first(4, 1).unwrap(),
        &CgOptions::default(),
    );
    assert!((report.value - 0.75).abs() < 1e-12);
    assert!(report.upper_slack().abs() < 1e-12, "uniform state saturates");
    assert!(report.holds(1e-12));
}

#[test]
fn geometric_lower_bound_goes_vacuous_for_very_mixed_states() {
    let marked = MarkedSet::first(4, 1).unwrap();
    let report = geometric_coherence_bounds(
        &DensityMatrix::maximally_mixed(4),
        &marked,
        &CgOptions::default(),
    );
    assert!(!report.lower_active);
    assert!(report.lower <= 0.0);
    assert!(report.value.abs() < 1e-7);
    assert!(report.holds(1e-7));
}

#[test]
fn marked_basis_state_sits_on_every_boundary() {
    // |0> with {0} marked: P = 1, no coherence, and both sandwiches collapse
    // to the point 0.
    let rho = PureState::basis(4, 0).density();
    let marked = MarkedSet::first(4, 1).unwrap();

    let geo = geometric_coherence_bounds(&rho, &marked, &CgOptions::default());
    assert!(geo.value.abs() < 1e-12);
    assert!(geo.upper.abs() < 1e-12);
    assert!(geo.holds(1e-10));

    let ent = entropic_coherence_bounds(&rho, &marked);
    assert!(ent.value.abs() < 1e-9);
    assert!(ent.upper.abs() < 1e-12);
    assert!(ent.holds(1e-9));

    let fid = fidelity_success_bound(&rho, &marked, &CgOptions::default());
    assert!((fid.bound - 1.0).abs() < 1e-12);
    assert!(fid.slack().abs() < 1e-12, "equality at the basis state");
}

#[test]
fn uniform_state_saturates_the_fidelity_success_bound() {
    // For the uniform state max_delta F = 1/N, so M * max F = M/N = P exactly.
    let rho = PureState::uniform(8).density();
    let marked = MarkedSet::first(8, 3).unwrap();
    let fid = fidelity_success_bound(&rho, &marked, &CgOptions::default());
    assert!((fid.max_fidelity - 0.125).abs() < 1e-12);
    assert!(fid.slack().abs() < 1e-12);
    assert!(fid.holds(1e-12));
}

// --- dominant-branch lower bound ----------------------------------------------------

#[test]
fn dominant_branch_selection_and_value() {
    // Tie on the uniform qubit resolves to the marked branch; the bound
    // saturates: C1 = ln 2 = -ln(1/2).
    let rho = PureState::uniform(2).density();
    let marked = MarkedSet::first(2, 1).unwrap();
    let (value, branch) = dominant_mass_lower_bound(&rho, &marked);
    assert_eq!(branch, DominantBranch::Marked);
    assert!((value - LN_2).abs() < 1e-10);
    assert!((relative_entropy_of_coherence(&rho) - value).abs() < 1e-10);

    // Clear unmarked dominance: Omega = 1 - P.
    let rho = DensityMatrix::from_diagonal(&[0.1, 0.9]).unwrap();
    let (value, branch) = dominant_mass_lower_bound(&rho, &marked);
    assert_eq!(branch, DominantBranch::Unmarked);
    assert!((value - (-(0.9f64).ln() - rho.von_neumann_entropy())).abs() < 1e-10);
    // Bound must hold even when it is negative (diagonal state: C1 = 0).
    assert!(relative_entropy_of_coherence(&rho) >= value - 1e-10);
}

#[test]
fn dominant_branch_can_disagree_with_total_mass() {
    // The largest single probability sits on the marked index even though the
    // unmarked block holds more total mass; the branch rule follows the peak.
    let mut probs = vec![0.6 / 7.0; 8];
    probs[0] = 0.4;
    let rho = DensityMatrix::from_diagonal(&probs).unwrap();
    let marked = MarkedSet::first(8, 1).unwrap();
    let (value, branch) = dominant_mass_lower_bound(&rho, &marked);
    assert_eq!(branch, DominantBranch::Marked);
    assert!((value - (-(0.4f64).ln() - rho.von_neumann_entropy())).abs() < 1e-9);
    assert!(relative_entropy_of_coherence(&rho) >= value - 1e-9);
}

// --- boxcar l1 profile -----------------------------------------------------------------

#[test]
fn l1_boxcar_frozen_values() {
    // Frozen: N = 8, M = 2, P = 1/2 gives (1 + sqrt(3))^2 - 1 = 3 + 2 sqrt(3).
    let expected = 3.0 + 2.0 * 3f64.sqrt();
    assert!((l1_boxcar(8, 2, 0.5) - expected).abs() < 1e-12);

    // At P = M/N the boxcar is the uniform state: C_l1 = N - 1.
    for (n, m) in [(4usize, 1usize), (16, 2), (64, 8)] {
        let p = m as f64 / n as f64;
        assert!((l1_boxcar(n, m, p) - (n as f64 - 1.0)).abs() < 1e-10);
    }

    // Frozen residual: (3 + 2 sqrt(3) + 4)/8 - 1 = (2 sqrt(3) - 1)/8.
    let res = l1_boxcar_residual(8, 2, 0.5);
    assert!((res - (2.0 * 3f64.sqrt() - 1.0) / 8.0).abs() < 1e-12);
}

#[test]
fn l1_boxcar_residual_shrinks_like_sqrt_m_over_n() {
    // Doubling N at fixed M and P must shrink the residual by about sqrt(2).
    let p = 0.3;
    let r1 = l1_boxcar_residual(1 << 10, 1, p);
    let r2 = l1_boxcar_residual(1 << 12, 1, p);
    let ratio = r1 / r2;
    assert!(
        (ratio - 2.0).abs() < 0.1,
        "two doublings should scale the residual by ~2, got {ratio}"
    );
    for n in [64usize, 256, 1024] {
        let r = l1_boxcar_residual(n, 1, p).abs();
        assert!(r <= 2.0 * (1.0 / n as f64).sqrt());
    }
}

// --- universal validity on random states ------------------------------------------------

#[test]
fn all_bounds_hold_on_random_pure_states() {
    let mut rng = rng_from_seed(211);
    let opts = CgOptions::default();
    for n in [2usize, 4, 8, 16] {
        for _ in 0..10 {
            let marked = random_marked(&mut rng, n);
            let rho = random_pure(&mut rng, n).density();
            assert!(geometric_coherence_bounds(&rho, &marked, &opts).holds(1e-9));
            assert!(entropic_coherence_bounds(&rho, &marked).holds(1e-8));
            assert!(fidelity_success_bound(&rho, &marked, &opts).holds(1e-10));
            let (value, _) = dominant_mass_lower_bound(&rho, &marked);
            assert!(relative_entropy_of_coherence(&rho) >= value - 1e-8);
        }
    }
}

#[test]
fn all_bounds_hold_on_random_mixed_states() {
    let mut rng = rng_from_seed(223);
    let opts = CgOptions::default();
    for n in [2usize, 4, 8] {
        for trial in 0..6 {
            let marked = random_marked(&mut rng, n);
            let rho = random_density(&mut rng, n, 1 + trial % n);
            assert!(geometric_coherence_bounds(&rho, &marked, &opts).holds(1e-6));
            assert!(entropic_coherence_bounds(&rho, &marked).holds(1e-8));
            assert!(fidelity_success_bound(&rho, &marked, &opts).holds(1e-10));
        }
    }
}

#[test]
fn marked_uniform_candidate_makes_the_fidelity_bound_unconditional() {
    // F(rho, uniform-on-marked) >= P/M pointwise, so M * maxF >= P no matter
    // how early the ascent stops. Check the candidate inequality directly.
    let mut rng = rng_from_seed(227);
    for _ in 0..10 {
        let n = 8;
        let marked = random_marked(&mut rng, n);
        let rho = random_density(&mut rng, n, n);
        let f = fidelity_with_marked_uniform(&rho, &marked);
        let p = rho.success_probability(&marked);
        assert!(f >= p / marked.len() as f64 - 1e-10);
    }
}

// --- sweeps ------------------------------------------------------------------------------

#[test]
fn sweep_is_reproducible_and_schedule_independent() {
    let cfg = SweepConfig {
        seed: 424242,
        dims: vec![2, 4, 8],
        trials_pure: 24,
        trials_mixed: 24,
        cg: CgOptions::default(),
    };
    let a = run(&cfg);
    let b = run_seq(&cfg);
    let c = run(&cfg);
    assert_eq!(a.len(), 48);
    for ((x, y), z) in a.iter().zip(b.iter()).zip(c.iter()) {
        assert_eq!(x.trial, y.trial);
        assert_eq!(x.p_suc.to_bits(), y.p_suc.to_bits());
        assert_eq!(x.cg.to_bits(), y.cg.to_bits());
        assert_eq!(x.c1.to_bits(), y.c1.to_bits());
        assert_eq!(x.p_suc.to_bits(), z.p_suc.to_bits());
    }
    for record in &a {
        let expected_kind = if record.trial < 24 {
            StateKind::Pure
        } else {
            StateKind::Mixed
        };
        assert_eq!(record.kind, expected_kind);
        assert!(
            record.min_slack() >= -1e-6,
            "trial {}: bound violated with slack {}",
            record.trial,
            record.min_slack()
        );
        assert!(!record.cg_optimizer_capped, "trial {}", record.trial);
    }
}

#[test]
fn sweep_survives_an_eigensolver_corner_case() {
    // Regression: this exact pure-state trial once drove the default QL
    // eigensolver to NaN inside the incoherent-fidelity evaluation (a rank-1
    // matrix conjugated by a sparse diagonal), which poisoned every slack.
    // The Jacobi fallback has to keep all reported quantities finite.
    let mut rng = ampcoh_core::sample::rng_for_trial(0xACC6, 114);
    let marked = random_marked(&mut rng, 8);
    let rho = random_pure(&mut rng, 8).density();
    let record = ampcoh_core::sweep::record_for(
        &rho,
        &marked,
        StateKind::Pure,
        114,
        &CgOptions::default(),
    );
    assert!(record.min_slack().is_finite());
    assert!(
        record.min_slack() >= -1e-9,
        "slack {} on the corner-case state",
        record.min_slack()
    );
}
