//! Qubit-channel analysis kernel.
//!
//! Measures how much quantum correlation a local qubit channel creates when
//! it acts on one half of a classically correlated two-qubit state:
//!
//! * [`measures`]: the commutator trace-norm measure `Q = 4‖[X₀, X₁]‖₁` for
//!   quantum-classical states, the classical correlation `C`, and the
//!   created-correlation formula `2|t × Λn|·C`.
//! * [`power`]: correlating power of a channel, the sphere average of the
//!   created correlation, by product Gauss quadrature or seeded Monte Carlo.
//! * [`geometry`]: closed-form nearest classically correlated state for
//!   pure-block quantum-classical states, with a brute-force oracle.
//!
//! The crate is `no_std` and only needs `alloc`. IO and file formats live in
//! the `qcpower` companion crate.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod channels;
pub mod config;
mod error;
pub mod geometry;
pub mod linalg;
pub mod measures;
pub mod power;
pub mod random;
pub mod states;

pub use error::{Error, Result};

pub use channels::{AffineChannel, CanonicalForm, KrausChannel, QubitChannel, ValidityReport};
pub use config::Tolerances;
pub use linalg::{CMatrix, Mat3, Vec3};
pub use states::{CCState, DensityMatrix, PureQCState, QCState};
