//! Exact quantum-search simulation for magic-square constraint problems.
//!
//! The crate is organised bottom-up:
//!
//! - [`statevector`]: dense q-qubit register, gates, phase oracles, diffusion and sampling.
//! - [`revcircuit`]: reversible adders, comparators and gate-level oracle assembly.
//! - [`magic`]: the classical side (construction, validation, enumeration, ranking, domains).
//! - [`grover`]: iteration planning and the oracle/diffusion/measure/verify loop.
//! - [`bench`]: classical-versus-Grover comparison reports.
//! - [`cli`]: the command implementations behind the `qsearch` binary.
//!
//! See the `examples/` directory of this crate for one runnable program per capability.

pub mod bench;
pub mod cli;
mod error;
pub mod grover;
pub mod magic;
pub mod revcircuit;
pub mod statevector;

pub use error::{Error, Result};
