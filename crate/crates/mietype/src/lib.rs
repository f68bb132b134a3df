//! Analytic bound states of the inverse-power diatomic potential
//! V(r) = -A/r + B/r^2 + C in N spatial dimensions, with built-in numerical
//! self-verification.
//!
//! The crate provides closed-form energy levels, normalized radial
//! eigenfunctions, level degeneracies, Hellmann-Feynman expectation values
//! and the SU(1,1) ladder algebra of the fixed-decay-rate Laguerre family.
//! Every closed form is paired with an independent numerical oracle
//! (generalized Gauss-Laguerre quadrature and a finite-difference
//! eigensolver); the [`report`] module runs the whole comparison suite and
//! emits a machine-readable verification report, flagging the places where
//! the published closed forms disagree with the oracles.

pub mod cli;
pub mod error;
pub mod ladder;
pub mod laguerre;
pub mod model;
pub mod observables;
pub mod oracle;
pub mod quadrature;
pub mod report;
pub mod spectrum;
pub mod wavefunction;

pub use error::{Error, Result};
pub use model::{Channel, DerivedParams, KratzerForm, KratzerVariant, PotentialParams};
pub use spectrum::EnergyLevel;
pub use wavefunction::{GridFunction, RadialState};
