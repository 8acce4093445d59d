// SPDX-License-Identifier: Apache-2.0

//! Leggett-Garg correlators.
//!
//! For a dichotomic observable evolved in the Heisenberg picture the
//! symmetrised two-time correlator reduces to a Bloch dot product,
//! `C(ti, tj) = q(ti)·q(tj)`. Times are anchored at `(0, τ, 2τ)`: under
//! dissipation the correlator depends on `ti + tj` as well as on the gap, so
//! fixing `t1 = 0` is what makes `K3` a function of `τ` alone.

use crate::dynamics::{evolve, BlochVector};
use crate::error::{Error, Result};
use crate::linalg::{dot, Mat4};
use crate::model::{build_effective_generator, KossakowskiCoefficients, OscillationParams};

/// Absolute slack above the macrorealist bound `K3 <= 1` before a violation is flagged.
pub const LGI_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeTriple {
    t1: f64,
    t2: f64,
    t3: f64,
}

impl TimeTriple {
    pub fn new(t1: f64, t2: f64, t3: f64) -> Result<Self> {
        if !(t1.is_finite() && t2.is_finite() && t3.is_finite()) || t1 < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "times ({t1}, {t2}, {t3}) must be finite and non-negative"
            )));
        }
        if !(t1 < t2 && t2 < t3) {
            return Err(Error::InvalidArgument(format!(
                "times ({t1}, {t2}, {t3}) must be strictly increasing"
            )));
        }
        Ok(TimeTriple { t1, t2, t3 })
    }

    /// Equally spaced `(0, τ, 2τ)`.
    pub fn from_spacing(tau: f64) -> Result<Self> {
        if !(tau > 0.0) {
            return Err(Error::InvalidArgument(format!("tau = {tau} must be > 0")));
        }
        Self::new(0.0, tau, 2.0 * tau)
    }

    pub fn times(&self) -> (f64, f64, f64) {
        (self.t1, self.t2, self.t3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct K3Result {
    pub c21: f64,
    pub c32: f64,
    pub c31: f64,
    pub k3: f64,
    pub violated: bool,
}

impl K3Result {
    fn from_correlators(c21: f64, c32: f64, c31: f64) -> Self {
        let k3 = c21 + c32 - c31;
        let mut r = K3Result { c21, c32, c31, k3, violated: false };
        r.violated = lgi_violated(&r);
        r
    }
}

/// `C(ti, tj) = q(ti)·q(tj)` with all four Bloch components.
pub fn correlation(g: &Mat4, q0: &BlochVector, ti: f64, tj: f64) -> Result<f64> {
    if !(0.0 <= ti && ti <= tj) {
        return Err(Error::InvalidArgument(format!(
            "correlation needs 0 <= ti <= tj, got ti = {ti}, tj = {tj}"
        )));
    }
    let qi = evolve(g, q0, ti)?;
    let qj = evolve(g, q0, tj)?;
    Ok(dot(&qi.0, &qj.0))
}

/// `K3 = C21 + C32 − C31`.
pub fn k3(g: &Mat4, q0: &BlochVector, times: &TimeTriple) -> Result<K3Result> {
    let (t1, t2, t3) = times.times();
    // Evolve each time once and reuse for the three pairs.
    let q1 = evolve(g, q0, t1)?;
    let q2 = evolve(g, q0, t2)?;
    let q3 = evolve(g, q0, t3)?;
    Ok(K3Result::from_correlators(
        dot(&q1.0, &q2.0),
        dot(&q2.0, &q3.0),
        dot(&q1.0, &q3.0),
    ))
}

pub fn lgi_violated(r: &K3Result) -> bool {
    r.k3 > 1.0 + LGI_SLACK
}

/// `K3` with `q0 = σz` for physical inputs at spacing `tau`.
pub fn k3_for(p: &OscillationParams, k: &KossakowskiCoefficients, tau: f64) -> Result<K3Result> {
    let g = build_effective_generator(p, k)?;
    k3(&g, &BlochVector::SIGMA_Z, &TimeTriple::from_spacing(tau)?)
}

/// `ΔK3 = K3(φ = 0) − K3(φ = p.phi)`, all other inputs shared.
pub fn delta_k3(p: &OscillationParams, k: &KossakowskiCoefficients, tau: f64) -> Result<f64> {
    let dirac = k3_for(&p.with_phi(0.0), k, tau)?;
    let majorana = k3_for(p, k, tau)?;
    Ok(dirac.k3 - majorana.k3)
}
