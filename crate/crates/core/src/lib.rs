// SPDX-License-Identifier: Apache-2.0

//! Quantum computation with coherent-state qubits.
//!
//! A logical qubit is `a|α⟩ + b|−α⟩`. States are kept as finite sums of
//! multimode coherent kets, so every gate in the set (beam splitters, `P(π)`,
//! displacements, the Kerr quarter map) acts exactly, without Fock truncation.
//! On top of that the crate provides photon-counting readout, a quasi-Bell
//! measurement, teleportation, a teleportation-based CNOT, closed-form error
//! budgets and vacuum decoherence. [`fock`] is an independent truncated
//! Fock-space simulator used to cross-check all of it.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the aliases
//! at the crate root fix the scalar to `f64`.

// NaN is rejected by writing range checks as `!(x >= lo)`
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod budget;
pub mod decoherence;
pub mod detection;
pub mod error;
pub mod fock;
pub mod gates;
pub mod logical;
pub mod protocols;
pub mod sampling;
pub mod scalar;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use protocols::ProtocolTrace;
pub use scalar::Real;
pub use state::Operand;

pub type Complex = num_complex::Complex<f64>;
pub type CoherentKet = state::Ket<f64>;
pub type SuperposedState = state::Superposition<f64>;
pub type DyadMixture = state::Mixture<f64>;
pub type LogicalQubit = state::Qubit<f64>;
pub type DetectorModel = detection::Detector<f64>;
pub type CountDistribution = detection::CountDistribution<f64>;
pub type ErrorBudget = budget::ErrorBudget<f64>;
pub type DecoherenceParams = decoherence::DecoherenceParams<f64>;
pub type FockVector = fock::FockVector<f64>;
pub type TwoModeFock = fock::TwoModeFock<f64>;
pub type Mat2 = logical::Mat2<f64>;
