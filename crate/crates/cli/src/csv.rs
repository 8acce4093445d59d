// SPDX-License-Identifier: Apache-2.0

//! CSV emitters. LF line endings, `.` decimal separator, metadata as leading
//! `#` lines, numbers rounded to a fixed count of significant digits.

use std::fmt::Write as _;

use lgnu_core::{CorrelationResult, EnvelopeResult, ScanResult, ScanSpec};

pub const SCAN_HEADER: &str = "param,k3_dirac,k3_majorana,delta_k3,violated_dirac,violated_majorana";
pub const CORRELATOR_COLUMNS: &str = "C21,C32,C31,dC21,dC32,dC31";
pub const ENVELOPE_HEADER: &str = "param,phi_at_max_abs_delta,max_abs_delta_k3,phi_at_max_k3,max_k3";

pub const TOOL_VERSION: &str = concat!("lgnu ", env!("CARGO_PKG_VERSION"));

/// Rounds `x` to `digits` significant digits and prints the shortest
/// decimal that parses back to the rounded value. With 17 digits this is
/// the exact double.
pub fn format_float(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.clamp(1, 17);
    let rounded: f64 = format!("{:.*e}", digits - 1, x).parse().unwrap_or(x);
    if rounded == 0.0 {
        return "0".to_string();
    }
    let a = rounded.abs();
    if (1e-5..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn spec_metadata(out: &mut String, spec: &ScanSpec) {
    let p = &spec.base.params;
    let [c11, c22, c33, c12, c13, c23] = spec.base.coefficients.six();
    let _ = writeln!(out, "# {TOOL_VERSION}");
    let _ = writeln!(
        out,
        "# scan: parameter={} grid={:?}:{:?}:{} mode={}",
        spec.parameter,
        spec.grid.start(),
        spec.grid.stop(),
        spec.grid.count(),
        spec.mode.name()
    );
    let _ = writeln!(
        out,
        "# base: theta={:?} dm2={:?} energy={:?} v_cc={:?} phi={:?} tau={:?}",
        p.theta, p.dm2, p.energy, p.v_cc, p.phi, spec.base.tau
    );
    let _ = writeln!(
        out,
        "# kossakowski: c11={c11:?} c22={c22:?} c33={c33:?} c12={c12:?} c13={c13:?} c23={c23:?}"
    );
    let _ = writeln!(out, "# protocol: q0=sigma_z times=(0,tau,2tau) dirac=phi0 majorana=base_phi");
}

fn argmax_metadata(out: &mut String, name: &str, value: Option<(f64, f64)>) {
    match value {
        Some((p, v)) => {
            let _ = writeln!(out, "# {name}: param={p:?} value={v:?}");
        }
        None => {
            let _ = writeln!(out, "# {name}: none");
        }
    }
}

fn scan_metadata(out: &mut String, result: &ScanResult, extra: &[String]) {
    spec_metadata(out, &result.spec);
    if let Some((p, v)) = result.outer {
        let _ = writeln!(out, "# outer: {p}={v:?}");
    }
    argmax_metadata(out, "argmax_abs_delta_k3", result.argmax_abs_delta);
    argmax_metadata(out, "argmax_k3_majorana", result.argmax_k3);
    let _ = writeln!(out, "# tie_break: smallest parameter value");
    for line in extra {
        let _ = writeln!(out, "# {line}");
    }
}

fn row_fields(out: &mut String, r: &lgnu_core::ScanRow, digits: usize) {
    let f = |x| format_float(x, digits);
    let _ = write!(
        out,
        "{},{},{},{},{},{}",
        f(r.param_value),
        f(r.k3_dirac),
        f(r.k3_majorana),
        f(r.delta_k3),
        r.violated_dirac,
        r.violated_majorana
    );
}

/// 1-D scan table with `extra` appended as metadata lines.
pub fn emit_csv_with_meta(result: &ScanResult, digits: usize, extra: &[String]) -> String {
    let mut out = String::new();
    scan_metadata(&mut out, result, extra);
    out.push_str(SCAN_HEADER);
    out.push('\n');
    for r in &result.rows {
        row_fields(&mut out, r, digits);
        out.push('\n');
    }
    out
}

pub fn emit_csv(result: &ScanResult, digits: usize) -> String {
    emit_csv_with_meta(result, digits, &[])
}

/// Scan table followed by the per-pair correlators and their differences.
pub fn emit_correlation_csv(result: &CorrelationResult, digits: usize, extra: &[String]) -> String {
    let mut out = String::new();
    scan_metadata(&mut out, &result.scan, extra);
    let _ = writeln!(out, "# correlators: C = C(phi=base_phi), dC = C(phi=0) - C(phi=base_phi)");
    let _ = writeln!(out, "{SCAN_HEADER},{CORRELATOR_COLUMNS}");
    let f = |x| format_float(x, digits);
    for (r, c) in result.scan.rows.iter().zip(&result.correlators) {
        row_fields(&mut out, r, digits);
        let _ = writeln!(
            out,
            ",{},{},{},{},{},{}",
            f(c.c21),
            f(c.c32),
            f(c.c31),
            f(c.dc21),
            f(c.dc32),
            f(c.dc31)
        );
    }
    out
}

/// Outer-major 2-D table; each row is prefixed with the outer coordinate.
pub fn emit_scan_2d_csv(results: &[ScanResult], digits: usize, extra: &[String]) -> String {
    let mut out = String::new();
    if let Some(first) = results.first() {
        spec_metadata(&mut out, &first.spec);
        if let Some((p, _)) = first.outer {
            let _ = writeln!(out, "# outer_parameter: {p}");
        }
    } else {
        let _ = writeln!(out, "# {TOOL_VERSION}");
    }
    for r in results {
        if let Some((_, v)) = r.outer {
            argmax_metadata(&mut out, &format!("outer={v:?} argmax_abs_delta_k3"), r.argmax_abs_delta);
            argmax_metadata(&mut out, &format!("outer={v:?} argmax_k3_majorana"), r.argmax_k3);
        }
    }
    let _ = writeln!(out, "# tie_break: smallest parameter value");
    for line in extra {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "outer,{SCAN_HEADER}");
    for r in results {
        let outer = r.outer.map(|(_, v)| v).unwrap_or(f64::NAN);
        for row in &r.rows {
            out.push_str(&format_float(outer, digits));
            out.push(',');
            row_fields(&mut out, row, digits);
            out.push('\n');
        }
    }
    out
}

/// Per-grid-point maxima over φ.
pub fn emit_envelope_csv(result: &EnvelopeResult, digits: usize, extra: &[String]) -> String {
    let mut out = String::new();
    spec_metadata(&mut out, &result.spec);
    let _ = writeln!(out, "# envelope: maxima over {} phi points on [0, 2pi)", result.phi_points);
    argmax_metadata(&mut out, "argmax_max_abs_delta_k3", result.argmax_abs_delta);
    argmax_metadata(&mut out, "argmax_max_k3", result.argmax_k3);
    let _ = writeln!(out, "# tie_break: smallest parameter value");
    for line in extra {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "{ENVELOPE_HEADER}");
    let f = |x| format_float(x, digits);
    for r in &result.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            f(r.param_value),
            f(r.phi_at_max_abs_delta),
            f(r.max_abs_delta_k3),
            f(r.phi_at_max_k3),
            f(r.max_k3)
        );
    }
    out
}

/// Data lines of a CSV document (skips `#` metadata and the header).
pub fn data_lines(csv: &str) -> impl Iterator<Item = &str> {
    csv.lines().filter(|l| !l.starts_with('#')).skip(1)
}
