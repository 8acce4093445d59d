// SPDX-License-Identifier: Apache-2.0

//! Leggett-Garg temporal correlators for two-flavour neutrino oscillations in
//! matter under Lindblad-Kossakowski dissipation.
//!
//! The dynamics is written in the Bloch representation: an observable
//! `A = a0·𝟙 + a1·σx + a2·σy + a3·σz` is the real vector `(a0, a1, a2, a3)`
//! and the Heisenberg-picture master equation becomes `dA/dt = G·A` with a
//! real 4×4 generator `G = H + D` (antisymmetric unitary part plus symmetric
//! dissipator). Everything downstream is built on that generator:
//!
//! * [`linalg`]: 4×4 kernel and the matrix exponential.
//! * [`model`]: physical parameters, Kossakowski coefficients, generator.
//! * [`dynamics`]: propagation by `exp(G t)` and by fixed-step RK4.
//! * [`lgi`]: two-time correlators, `K3`, and the Dirac-Majorana difference.
//! * [`scan`]: deterministic parameter sweeps and optimum location.
//!
//! Units follow ħ = 1: energies in eV, times in 1/eV.

pub mod dynamics;
pub mod error;
pub mod lgi;
pub mod linalg;
pub mod model;
pub mod scan;

pub use dynamics::{evolve, evolve_rk4, rk4_steps_for, schrodinger_dual, BlochVector};
pub use error::{Error, Result};
pub use lgi::{correlation, delta_k3, k3, k3_for, lgi_violated, K3Result, TimeTriple, LGI_SLACK};
pub use linalg::{dot, mat_exp, mat_vec, Mat4, Vec4};
pub use model::{
    build_dissipator, build_effective_generator, build_hamiltonian_part, validate_kossakowski,
    BoundViolation, Generator4, KossakowskiCoefficients, OscillationParams, ValidationReport,
};
pub use scan::{
    correlation_scan, phi_envelope_scan, run_scan, run_scan_2d, CorrelationResult,
    CorrelationRow, EnvelopeResult, EnvelopeRow, Grid, ScanBase, ScanMode, ScanParameter,
    ScanResult, ScanRow, ScanSpec, DEFAULT_PHI_POINTS,
};
