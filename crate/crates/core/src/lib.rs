//! Numerical laboratory for amplitude amplification with arbitrary phase
//! angles and an arbitrary preparation state, instrumented with quantum
//! coherence measures.
//!
//! The crate provides two independent engines for the generalized iteration
//! ([`engine`] iterates the operator directly, [`closed_form`] evaluates the
//! two-term recursion solution in O(1) per step), coherence quantifiers with
//! respect to the computational basis ([`coherence`]), trade-off bounds
//! linking coherence to the success probability ([`bounds`]), analytic
//! reference scenarios ([`scenarios`]), and seeded randomized sweeps that
//! stress every bound ([`sweep`]).
//!
//! Data-parallel paths (sweeps, per-t curve evaluation) run on rayon under
//! the default `parallel` feature and degrade to sequential loops without it;
//! results are identical either way.

pub mod bounds;
pub mod closed_form;
pub mod coherence;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod par;
pub mod sample;
pub mod scenarios;
pub mod state;
pub mod sweep;

pub use num_complex::Complex64 as C64;
