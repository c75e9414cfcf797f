//! Measurement-conditioned distillation of a target subsystem, with a
//! tunable freezing coupling that decides which subspace survives.
//!
//! A *Master* subsystem is measured repeatedly; whenever every detection
//! finds it in the same state, the *Slave* subsystem evolves under the
//! non-unitary contraction `V(tau) = <phi_0| exp(-i H tau) |phi_0>`. Iterating
//! projects the Slave onto the dominant eigenspace of `V`, and a strong
//! second coupling acts as a continuous observer that closes chosen channels
//! of probability loss, steering the result.
//!
//! Modules:
//! * [`hilbert`] - dense complex linear algebra and product-space indexing;
//! * [`models`] - coupling-chain and three-level-ion/oscillator Hamiltonians;
//! * [`distill`] - the conditional propagator, its spectral structure and the
//!   N-step conditioned evolution;
//! * [`steering`] - interval/coupling design realizing a prefixed target;
//! * [`trajectory`] - stochastic (Monte Carlo) runs of the same protocol.
//!
//! Everything is generic over the real scalar type; the `*64` aliases below
//! fix `f64`, which all shipped tools use.

pub mod distill;
pub mod error;
pub mod hilbert;
pub mod models;
pub mod scalar;
pub mod steering;
pub mod trajectory;

pub use error::{Error, Result};
pub use scalar::Real;

/// Complex amplitude over `f64`.
pub type C64 = num_complex::Complex<f64>;
/// Dense complex matrix over `f64`.
pub type Matrix64 = hilbert::ComplexMatrix<f64>;
/// State vector over `f64`.
pub type StateVector64 = hilbert::StateVector<f64>;
/// Compound-system model over `f64`.
pub type HamiltonianModel64 = models::HamiltonianModel<f64>;
/// Chain parameters over `f64`.
pub type ChainParams64 = models::ChainParams<f64>;
/// Ion-model parameters over `f64`.
pub type TrappedIonParams64 = models::TrappedIonParams<f64>;
/// Conditional propagator over `f64`.
pub type ConditionalPropagator64 = distill::ConditionalPropagator<f64>;
/// Spectral decomposition over `f64`.
pub type SpectralDecomposition64 = distill::SpectralDecomposition<f64>;
/// Channel report over `f64`.
pub type ChannelReport64 = distill::ChannelReport<f64>;
/// Distillation run over `f64`.
pub type DistillationRun64 = distill::DistillationRun<f64>;
/// Steering plan over `f64`.
pub type SteeringPlan64 = steering::SteeringPlan<f64>;
