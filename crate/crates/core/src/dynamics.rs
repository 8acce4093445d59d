// SPDX-License-Identifier: Apache-2.0

//! Propagation of Bloch vectors under a constant generator.
//!
//! [`evolve`] uses the matrix exponential and [`evolve_rk4`] a fixed-step
//! classical Runge-Kutta scheme. The two paths share nothing except the
//! generator and are used to check each other.

use crate::error::{Error, Result};
use crate::linalg::{mat_exp, Mat4, Vec4};

/// Coefficients of `A = a0·𝟙 + a1·σx + a2·σy + a3·σz`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub Vec4);

impl BlochVector {
    /// `σz`, the flavour observable, as `(0, 0, 0, 1)`.
    pub const SIGMA_Z: BlochVector = BlochVector(Vec4([0.0, 0.0, 0.0, 1.0]));

    pub fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Result<Self> {
        Vec4::try_new([a0, a1, a2, a3]).map(BlochVector)
    }

    pub fn vec(&self) -> &Vec4 {
        &self.0
    }
}

/// `q(t) = exp(G t)·q0` for `t >= 0`.
pub fn evolve(g: &Mat4, q0: &BlochVector, t: f64) -> Result<BlochVector> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(*q0);
    }
    let q = mat_exp(g, t)? * q0.0;
    finite(q, "evolved Bloch vector")
}

/// Fixed-step RK4 integration of `dA/dt = G·A` over `[0, t]`.
pub fn evolve_rk4(g: &Mat4, q0: &BlochVector, t: f64, steps: usize) -> Result<BlochVector> {
    check_time(t)?;
    if steps == 0 {
        return Err(Error::InvalidArgument("evolve_rk4 needs at least one step".into()));
    }
    if !g.is_finite() {
        return Err(Error::InvalidArgument("generator has non-finite entries".into()));
    }
    let h = t / steps as f64;
    let mut y = q0.0;
    for _ in 0..steps {
        let k1 = *g * y;
        let k2 = *g * (y + (0.5 * h) * k1);
        let k3 = *g * (y + (0.5 * h) * k2);
        let k4 = *g * (y + h * k3);
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    finite(y, "RK4 Bloch vector")
}

/// Step count with `(t / steps)·‖G‖∞ <= 0.01`.
///
/// RK4 phase error grows like `t‖G‖·(h‖G‖)⁴/120`, so 0.01 keeps it near
/// 1e-9 for `t‖G‖` up to ~100.
pub fn rk4_steps_for(g: &Mat4, t: f64) -> usize {
    ((t.abs() * g.norm_inf() / 0.01).ceil() as usize).max(1)
}

/// Generator of the state (Schrödinger-picture) dynamics dual to `G`.
///
/// For all `q`, `r`, `t`: `q·(exp(Gᵀt) r) = (exp(Gt) q)·r`.
pub fn schrodinger_dual(g: &Mat4) -> Mat4 {
    g.transpose()
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidArgument(format!("time {t} must be finite and >= 0")));
    }
    Ok(())
}

fn finite(v: Vec4, what: &str) -> Result<BlochVector> {
    if v.is_finite() {
        Ok(BlochVector(v))
    } else {
        Err(Error::NonFinite(what.into()))
    }
}
