//! Symmetry-constrained thermalization of finite-dimensional quantum systems.
//!
//! A strong symmetry splits the Hilbert space into invariant sectors. Under
//! thermal contact each sector keeps its initial probability weight and
//! relaxes to a sector-restricted Gibbs state, so the steady state is
//! `ρ_SS = ⊕ᵢ pᵢ ωᵢ^β` rather than the Gibbs state `ω^β`.
//!
//! This crate provides:
//!
//! - [`linalg`]: dense complex Hermitian matrices and a cyclic Jacobi eigensolver.
//! - [`thermal`]: Gibbs and sector Gibbs states, the constrained steady state,
//!   entropies, energies and free energies.
//! - [`analysis`]: erasure-entropy bookkeeping, the amplification ratio and
//!   amplified/mitigated classification.
//! - [`ergotropy`]: single-copy and asymptotic ergotropy.
//! - [`demon`]: the system ⊗ register circuit that makes the sector
//!   information explicit.
//!
//! Units: `k_B = 1`, entropies in nats.
#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod analysis;
pub mod demon;
pub mod ergotropy;
mod error;
pub mod linalg;
pub mod thermal;

pub use error::{Error, Result};
pub use num_complex::Complex64;
