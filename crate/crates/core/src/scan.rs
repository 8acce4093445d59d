// SPDX-License-Identifier: Apache-2.0

//! Deterministic one- and two-dimensional parameter sweeps.
//!
//! Every grid point is evaluated independently (the Dirac column is always
//! recomputed at φ = 0), so rows can be farmed out to a thread pool and the
//! output does not depend on evaluation order. Argmax ties go to the smallest
//! parameter value, i.e. the earliest grid point.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lgi::{k3, K3Result, TimeTriple};
use crate::dynamics::BlochVector;
use crate::model::{
    build_effective_generator, validate_kossakowski, KossakowskiCoefficients, OscillationParams,
};

/// Number of φ samples on `[0, 2π)` used for envelope scans.
pub const DEFAULT_PHI_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanParameter {
    Phi,
    VCc,
    C12,
    Tau,
    Energy,
}

impl ScanParameter {
    pub const ALL: [ScanParameter; 5] = [
        ScanParameter::Phi,
        ScanParameter::VCc,
        ScanParameter::C12,
        ScanParameter::Tau,
        ScanParameter::Energy,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ScanParameter::Phi => "phi",
            ScanParameter::VCc => "v_cc",
            ScanParameter::C12 => "c12",
            ScanParameter::Tau => "tau",
            ScanParameter::Energy => "energy",
        }
    }
}

impl fmt::Display for ScanParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanParameter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ScanParameter::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown scan parameter '{s}' (expected phi, v_cc, c12, tau or energy)"
                ))
            })
    }
}

/// Which quantity a sweep is about. Rows always carry every column; the mode
/// selects the default plot and is echoed in output metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanMode {
    K3Pair,
    #[default]
    DeltaK3,
}

impl ScanMode {
    pub fn name(&self) -> &'static str {
        match self {
            ScanMode::K3Pair => "k3_pair",
            ScanMode::DeltaK3 => "delta_k3",
        }
    }
}

impl FromStr for ScanMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k3_pair" => Ok(ScanMode::K3Pair),
            "delta_k3" => Ok(ScanMode::DeltaK3),
            _ => Err(Error::InvalidArgument(format!(
                "unknown scan mode '{s}' (expected k3_pair or delta_k3)"
            ))),
        }
    }
}

/// Closed uniform grid `start + i·(stop − start)/(count − 1)`, `i < count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    start: f64,
    stop: f64,
    count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(Error::InvalidArgument("grid bounds must be finite".into()));
        }
        if count < 2 {
            return Err(Error::InvalidArgument(format!("grid count {count} must be >= 2")));
        }
        if !(start < stop) {
            return Err(Error::InvalidArgument(format!(
                "grid start {start} must be below stop {stop}"
            )));
        }
        Ok(Grid { start, stop, count })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn value(&self, i: usize) -> f64 {
        self.start + i as f64 * (self.stop - self.start) / (self.count - 1) as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// Fixed inputs of a sweep; the swept parameter overrides one of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanBase {
    pub params: OscillationParams,
    pub coefficients: KossakowskiCoefficients,
    pub tau: f64,
}

impl ScanBase {
    pub fn with(&self, parameter: ScanParameter, value: f64) -> ScanBase {
        let mut b = *self;
        match parameter {
            ScanParameter::Phi => b.params.phi = value,
            ScanParameter::VCc => b.params.v_cc = value,
            ScanParameter::Energy => b.params.energy = value,
            ScanParameter::Tau => b.tau = value,
            ScanParameter::C12 => b.coefficients = b.coefficients.with_c12(value),
        }
        b
    }

    pub fn get(&self, parameter: ScanParameter) -> f64 {
        match parameter {
            ScanParameter::Phi => self.params.phi,
            ScanParameter::VCc => self.params.v_cc,
            ScanParameter::Energy => self.params.energy,
            ScanParameter::Tau => self.tau,
            ScanParameter::C12 => self.coefficients.get(1, 2),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        let report = validate_kossakowski(&self.coefficients)?;
        if !report.passed() {
            return Err(Error::RejectedCoefficients(report));
        }
        TimeTriple::from_spacing(self.tau).map(|_| ())
    }

    /// `K3` at this point for the given phase, with `q0 = σz`.
    pub fn k3_at_phi(&self, phi: f64) -> Result<K3Result> {
        let g = build_effective_generator(&self.params.with_phi(phi), &self.coefficients)?;
        k3(&g, &BlochVector::SIGMA_Z, &TimeTriple::from_spacing(self.tau)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub parameter: ScanParameter,
    pub grid: Grid,
    pub base: ScanBase,
    pub mode: ScanMode,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub param_value: f64,
    pub k3_dirac: f64,
    pub k3_majorana: f64,
    pub delta_k3: f64,
    pub violated_dirac: bool,
    pub violated_majorana: bool,
}

impl ScanRow {
    fn from_pair(param_value: f64, dirac: &K3Result, majorana: &K3Result) -> Self {
        ScanRow {
            param_value,
            k3_dirac: dirac.k3,
            k3_majorana: majorana.k3,
            delta_k3: dirac.k3 - majorana.k3,
            violated_dirac: dirac.violated,
            violated_majorana: majorana.violated,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub spec: ScanSpec,
    /// Coordinate of the enclosing outer sweep, for rows of a 2-D scan.
    pub outer: Option<(ScanParameter, f64)>,
    pub rows: Vec<ScanRow>,
    /// `(param_value, delta_k3)` of the row with the largest `|ΔK3|`.
    pub argmax_abs_delta: Option<(f64, f64)>,
    /// `(param_value, k3_majorana)` of the row with the largest Majorana `K3`.
    pub argmax_k3: Option<(f64, f64)>,
}

impl ScanResult {
    pub fn new(spec: ScanSpec, outer: Option<(ScanParameter, f64)>, rows: Vec<ScanRow>) -> Self {
        let argmax_abs_delta =
            argmax(&rows, |r| r.delta_k3.abs()).map(|r| (r.param_value, r.delta_k3));
        let argmax_k3 = argmax(&rows, |r| r.k3_majorana).map(|r| (r.param_value, r.k3_majorana));
        ScanResult { spec, outer, rows, argmax_abs_delta, argmax_k3 }
    }
}

/// First row attaining the maximum of `key`.
fn argmax<T>(rows: &[T], key: impl Fn(&T) -> f64) -> Option<&T> {
    let mut best: Option<(&T, f64)> = None;
    for r in rows {
        let k = key(r);
        if best.is_none_or(|(_, b)| k > b) {
            best = Some((r, k));
        }
    }
    best.map(|(r, _)| r)
}

/// Evaluates `f` at every grid point in parallel, preserving grid order and
/// reporting the first failing point.
fn evaluate_grid<T, F>(spec: &ScanSpec, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64, &ScanBase) -> Result<T> + Sync,
{
    let results: Vec<Result<T>> = (0..spec.grid.count())
        .into_par_iter()
        .map(|i| {
            let value = spec.grid.value(i);
            let base = spec.base.with(spec.parameter, value);
            base.validate()
                .and_then(|_| f(value, &base))
                .map_err(|e| Error::Scan {
                    parameter: spec.parameter.name().to_string(),
                    value,
                    source: Box::new(e),
                })
        })
        .collect();
    results.into_iter().collect()
}

fn evaluate_pair(value: f64, base: &ScanBase) -> Result<(K3Result, K3Result, ScanRow)> {
    let dirac = base.k3_at_phi(0.0)?;
    let majorana = base.k3_at_phi(base.params.phi)?;
    for r in [&dirac, &majorana] {
        if !r.k3.is_finite() {
            return Err(Error::NonFinite("K3".into()));
        }
    }
    Ok((dirac, majorana, ScanRow::from_pair(value, &dirac, &majorana)))
}

/// One row per grid point: Dirac and Majorana `K3` and their difference.
pub fn run_scan(spec: &ScanSpec) -> Result<ScanResult> {
    let rows = evaluate_grid(spec, |v, b| evaluate_pair(v, b).map(|(_, _, row)| row))?;
    Ok(ScanResult::new(*spec, None, rows))
}

/// Outer-major 2-D sweep. The inner spec supplies the base inputs; each
/// outer grid value overrides the outer parameter before the inner sweep.
pub fn run_scan_2d(spec_outer: &ScanSpec, spec_inner: &ScanSpec) -> Result<Vec<ScanResult>> {
    if spec_outer.parameter == spec_inner.parameter {
        return Err(Error::InvalidArgument(format!(
            "2-D scan needs distinct parameters, both are {}",
            spec_outer.parameter
        )));
    }
    spec_outer
        .grid
        .points()
        .into_iter()
        .map(|v| {
            let inner = ScanSpec {
                base: spec_inner.base.with(spec_outer.parameter, v),
                ..*spec_inner
            };
            let rows = evaluate_grid(&inner, |iv, b| evaluate_pair(iv, b).map(|(_, _, r)| r))
                .map_err(|e| Error::Scan {
                    parameter: spec_outer.parameter.name().to_string(),
                    value: v,
                    source: Box::new(e),
                })?;
            Ok(ScanResult::new(inner, Some((spec_outer.parameter, v)), rows))
        })
        .collect()
}

/// Per-pair correlators of the Majorana evaluation and their Dirac-Majorana
/// differences `ΔC = C(φ = 0) − C(φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationRow {
    pub c21: f64,
    pub c32: f64,
    pub c31: f64,
    pub dc21: f64,
    pub dc32: f64,
    pub dc31: f64,
}

/// A scan result with a correlator row aligned to each scan row.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationResult {
    pub scan: ScanResult,
    pub correlators: Vec<CorrelationRow>,
}

pub fn correlation_scan(spec: &ScanSpec) -> Result<CorrelationResult> {
    let evaluated = evaluate_grid(spec, |v, b| {
        let (d, m, row) = evaluate_pair(v, b)?;
        let c = CorrelationRow {
            c21: m.c21,
            c32: m.c32,
            c31: m.c31,
            dc21: d.c21 - m.c21,
            dc32: d.c32 - m.c32,
            dc31: d.c31 - m.c31,
        };
        Ok((row, c))
    })?;
    let (rows, correlators) = evaluated.into_iter().unzip();
    Ok(CorrelationResult { scan: ScanResult::new(*spec, None, rows), correlators })
}

/// Per grid point, the maxima over a uniform φ grid on `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeRow {
    pub param_value: f64,
    pub phi_at_max_abs_delta: f64,
    pub max_abs_delta_k3: f64,
    pub phi_at_max_k3: f64,
    pub max_k3: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeResult {
    pub spec: ScanSpec,
    pub phi_points: usize,
    pub rows: Vec<EnvelopeRow>,
    /// `(param_value, max_abs_delta_k3)` of the best row.
    pub argmax_abs_delta: Option<(f64, f64)>,
    /// `(param_value, max_k3)` of the best row.
    pub argmax_k3: Option<(f64, f64)>,
}

/// Maximises `|ΔK3|` and `K3` over φ at every grid point of a non-φ sweep.
pub fn phi_envelope_scan(spec: &ScanSpec, phi_points: usize) -> Result<EnvelopeResult> {
    if spec.parameter == ScanParameter::Phi {
        return Err(Error::InvalidArgument("envelope scans maximise over phi; sweep another parameter".into()));
    }
    if phi_points == 0 {
        return Err(Error::InvalidArgument("phi_points must be >= 1".into()));
    }
    let phis: Vec<f64> = (0..phi_points).map(|j| TAU * j as f64 / phi_points as f64).collect();
    let rows = evaluate_grid(spec, |value, base| {
        let dirac = base.k3_at_phi(0.0)?.k3;
        let mut row = EnvelopeRow {
            param_value: value,
            phi_at_max_abs_delta: 0.0,
            max_abs_delta_k3: f64::NEG_INFINITY,
            phi_at_max_k3: 0.0,
            max_k3: f64::NEG_INFINITY,
        };
        for &phi in &phis {
            let k = base.k3_at_phi(phi)?.k3;
            if !k.is_finite() {
                return Err(Error::NonFinite("K3".into()));
            }
            let d = (dirac - k).abs();
            if d > row.max_abs_delta_k3 {
                row.max_abs_delta_k3 = d;
                row.phi_at_max_abs_delta = phi;
            }
            if k > row.max_k3 {
                row.max_k3 = k;
                row.phi_at_max_k3 = phi;
            }
        }
        Ok(row)
    })?;
    let argmax_abs_delta =
        argmax(&rows, |r| r.max_abs_delta_k3).map(|r| (r.param_value, r.max_abs_delta_k3));
    let argmax_k3 = argmax(&rows, |r| r.max_k3).map(|r| (r.param_value, r.max_k3));
    Ok(EnvelopeResult { spec: *spec, phi_points, rows, argmax_abs_delta, argmax_k3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn base(v_cc: f64, phi: f64, k: KossakowskiCoefficients) -> ScanBase {
        ScanBase {
            params: OscillationParams::new(0.187 * PI, 7.54e-5, 1.0, v_cc, phi).unwrap(),
            coefficients: k,
            tau: 0.1,
        }
    }

    fn spec(parameter: ScanParameter, grid: Grid, base: ScanBase) -> ScanSpec {
        ScanSpec { parameter, grid, base, mode: ScanMode::DeltaK3 }
    }

    #[test]
    fn grid_rules() {
        assert!(Grid::new(0.0, 1.0, 1).is_err());
        assert!(Grid::new(1.0, 1.0, 5).is_err());
        assert!(Grid::new(2.0, 1.0, 5).is_err());
        let g = Grid::new(0.1, 10.0, 200).unwrap();
        for i in 0..200 {
            assert_eq!(g.value(i), 0.1 + i as f64 * (10.0 - 0.1) / 199.0);
        }
        let phi = Grid::new(0.0, TAU, 65).unwrap();
        assert_eq!(phi.value(64), TAU);
    }

    #[test]
    fn parameter_names_round_trip() {
        for p in ScanParameter::ALL {
            assert_eq!(p.name().parse::<ScanParameter>().unwrap(), p);
        }
        assert!("theta".parse::<ScanParameter>().is_err());
    }

    #[test]
    fn phi_scan_without_matter_is_flat() {
        let s = spec(
            ScanParameter::Phi,
            Grid::new(0.0, TAU, 33).unwrap(),
            base(0.0, 0.0, KossakowskiCoefficients::uniform_with_c12(0.1, 0.1)),
        );
        let r = run_scan(&s).unwrap();
        assert_eq!(r.rows.len(), 33);
        assert!(r.rows.iter().all(|row| row.delta_k3.abs() <= 1e-14));
    }

    #[test]
    fn phi_scan_with_isotropic_diagonal_coefficients_is_flat() {
        let s = spec(
            ScanParameter::Phi,
            Grid::new(0.0, TAU, 33).unwrap(),
            base(2.0, 0.0, KossakowskiCoefficients::uniform_with_c12(0.1, 0.0)),
        );
        let r = run_scan(&s).unwrap();
        assert!(r.rows.iter().all(|row| row.delta_k3.abs() <= 1e-12));
    }

    #[test]
    fn rows_are_self_consistent_and_argmax_is_attained() {
        let s = spec(
            ScanParameter::VCc,
            Grid::new(0.1, 10.0, 40).unwrap(),
            base(0.0, 1.3, KossakowskiCoefficients::uniform_with_c12(0.1, 0.1)),
        );
        let r = run_scan(&s).unwrap();
        for row in &r.rows {
            assert_eq!(row.delta_k3, row.k3_dirac - row.k3_majorana);
        }
        let (pv, val) = r.argmax_abs_delta.unwrap();
        assert!(r.rows.iter().any(|row| row.param_value == pv && row.delta_k3 == val));
        let (pv, val) = r.argmax_k3.unwrap();
        assert!(r.rows.iter().any(|row| row.param_value == pv && row.k3_majorana == val));
    }

    #[test]
    fn argmax_ties_go_to_first_row() {
        let s = spec(
            ScanParameter::Tau,
            Grid::new(0.1, 1.0, 5).unwrap(),
            base(0.0, 0.0, KossakowskiCoefficients::ZERO),
        );
        let r = run_scan(&s).unwrap();
        // Vacuum with σz: K3 = 1 and ΔK3 = 0 everywhere.
        assert_eq!(r.argmax_k3.unwrap().0, 0.1);
        assert_eq!(r.argmax_abs_delta.unwrap().0, 0.1);
    }

    #[test]
    fn invalid_grid_point_aborts_with_value() {
        let s = spec(
            ScanParameter::C12,
            Grid::new(0.0, 0.3, 4).unwrap(),
            base(2.0, 1.0, KossakowskiCoefficients::uniform_with_c12(0.1, 0.0)),
        );
        match run_scan(&s) {
            Err(Error::Scan { parameter, value, source }) => {
                assert_eq!(parameter, "c12");
                assert!((value - 0.2).abs() < 1e-15);
                assert!(matches!(*source, Error::RejectedCoefficients(_)));
            }
            other => panic!("expected scan error, got {other:?}"),
        }
    }

    #[test]
    fn two_d_vacuum_grid() {
        let b = ScanBase {
            params: OscillationParams::new(0.187 * PI, 7.54e-5, 1.0, 0.0, 0.0).unwrap(),
            coefficients: KossakowskiCoefficients::ZERO,
            tau: 0.1,
        };
        let outer = spec(ScanParameter::Phi, Grid::new(0.0, 1.0, 2).unwrap(), b);
        let inner = spec(ScanParameter::Energy, Grid::new(1.0, 2.0, 2).unwrap(), b);
        let res = run_scan_2d(&outer, &inner).unwrap();
        assert_eq!(res.len(), 2);
        for r in &res {
            assert_eq!(r.rows.len(), 2);
            for row in &r.rows {
                assert!((row.k3_dirac - 1.0).abs() < 1e-15);
                assert!((row.k3_majorana - 1.0).abs() < 1e-15);
            }
        }
        assert_eq!(res[1].outer, Some((ScanParameter::Phi, 1.0)));
        assert!(run_scan_2d(&outer, &outer).is_err());
    }

    #[test]
    fn two_d_transpose_gives_same_rows() {
        let b = base(0.0, 0.0, KossakowskiCoefficients::uniform_with_c12(0.01, 0.01));
        let phi = spec(ScanParameter::Phi, Grid::new(0.0, TAU, 9).unwrap(), b);
        let vcc = spec(ScanParameter::VCc, Grid::new(1.0, 20.0, 7).unwrap(), b);
        let key = |phi: f64, v: f64| (phi.to_bits(), v.to_bits());
        let mut a: Vec<_> = run_scan_2d(&phi, &vcc)
            .unwrap()
            .into_iter()
            .flat_map(|r| {
                let p = r.outer.unwrap().1;
                r.rows.into_iter().map(move |row| (key(p, row.param_value), row))
            })
            .collect();
        let mut b: Vec<_> = run_scan_2d(&vcc, &phi)
            .unwrap()
            .into_iter()
            .flat_map(|r| {
                let v = r.outer.unwrap().1;
                r.rows.into_iter().map(move |row| (key(row.param_value, v), row))
            })
            .collect();
        a.sort_by_key(|x| x.0);
        b.sort_by_key(|x| x.0);
        assert_eq!(a.len(), 63);
        for ((ka, ra), (kb, rb)) in a.iter().zip(&b) {
            assert_eq!(ka, kb);
            assert!((ra.k3_dirac - rb.k3_dirac).abs() <= 1e-14);
            assert!((ra.k3_majorana - rb.k3_majorana).abs() <= 1e-14);
        }
    }

    #[test]
    fn correlation_scan_columns() {
        let s = spec(
            ScanParameter::VCc,
            Grid::new(0.0, 20.0, 21).unwrap(),
            base(0.0, 2.0, KossakowskiCoefficients::uniform_with_c12(0.01, 0.01)),
        );
        let r = correlation_scan(&s).unwrap();
        let c0 = r.correlators[0];
        // V_CC = 0 row: a3 decouples and decays at rate 2(c11 + c22) = 0.04.
        let decay = |t: f64| (-0.04 * t).exp();
        assert!((c0.c21 - decay(0.1)).abs() < 1e-14);
        assert!((c0.c32 - decay(0.3)).abs() < 1e-14);
        assert!((c0.c31 - decay(0.2)).abs() < 1e-14);
        assert_eq!([c0.dc21, c0.dc32, c0.dc31], [0.0; 3]);
        for (row, c) in r.scan.rows.iter().zip(&r.correlators) {
            assert!((row.k3_majorana - (c.c21 + c.c32 - c.c31)).abs() <= 1e-14);
            let dirac = (c.c21 + c.dc21) + (c.c32 + c.dc32) - (c.c31 + c.dc31);
            assert!((row.k3_dirac - dirac).abs() <= 1e-14);
        }
    }

    #[test]
    fn correlation_scan_zero_matter_row_is_exact_in_vacuum_without_splitting() {
        let mut b = base(0.0, 1.0, KossakowskiCoefficients::ZERO);
        b.params.dm2 = 0.0;
        let s = spec(ScanParameter::VCc, Grid::new(0.0, 1.0, 2).unwrap(), b);
        let r = correlation_scan(&s).unwrap();
        let c0 = r.correlators[0];
        assert_eq!([c0.c21, c0.c32, c0.c31], [1.0; 3]);
    }

    #[test]
    fn correlation_scan_diagonal_coefficients_show_no_phase() {
        let s = spec(
            ScanParameter::VCc,
            Grid::new(0.1, 10.0, 25).unwrap(),
            base(0.0, 2.0, KossakowskiCoefficients::uniform_with_c12(0.1, 0.0)),
        );
        let r = correlation_scan(&s).unwrap();
        for c in &r.correlators {
            assert!(c.dc21.abs() <= 1e-12 && c.dc32.abs() <= 1e-12 && c.dc31.abs() <= 1e-12);
        }
    }

    #[test]
    fn envelope_rejects_phi_sweeps() {
        let s = spec(ScanParameter::Phi, Grid::new(0.0, 1.0, 2).unwrap(), base(1.0, 0.0, KossakowskiCoefficients::ZERO));
        assert!(phi_envelope_scan(&s, 8).is_err());
    }

    #[test]
    fn envelope_bounds_every_phi() {
        let k = KossakowskiCoefficients::uniform_with_c12(0.1, 0.1);
        let s = spec(ScanParameter::VCc, Grid::new(0.5, 4.0, 4).unwrap(), base(0.0, 0.0, k));
        let env = phi_envelope_scan(&s, 16).unwrap();
        for row in &env.rows {
            let b = s.base.with(ScanParameter::VCc, row.param_value);
            let dirac = b.k3_at_phi(0.0).unwrap().k3;
            for j in 0..16 {
                let phi = TAU * j as f64 / 16.0;
                let k3 = b.k3_at_phi(phi).unwrap().k3;
                assert!(k3 <= row.max_k3);
                assert!((dirac - k3).abs() <= row.max_abs_delta_k3);
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let s = spec(
            ScanParameter::VCc,
            Grid::new(0.1, 10.0, 50).unwrap(),
            base(0.0, 1.0, KossakowskiCoefficients::uniform_with_c12(0.1, 0.1)),
        );
        let par = run_scan(&s).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let seq = pool.install(|| run_scan(&s)).unwrap();
        assert_eq!(par, seq);
    }
}
