// SPDX-License-Identifier: Apache-2.0

//! Minimal static SVG line charts. Output depends only on the input data.

use std::fmt::Write as _;

use lgnu_core::{CorrelationResult, Error, Result, ScanResult};

use crate::csv::format_float;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 580.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 420.0;
const TICKS: usize = 5;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Columns of a scan that can be plotted against the swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    K3Dirac,
    K3Majorana,
    DeltaK3,
}

impl Column {
    pub fn name(&self) -> &'static str {
        match self {
            Column::K3Dirac => "k3_dirac",
            Column::K3Majorana => "k3_majorana",
            Column::DeltaK3 => "delta_k3",
        }
    }

    fn value(&self, r: &lgnu_core::ScanRow) -> f64 {
        match self {
            Column::K3Dirac => r.k3_dirac,
            Column::K3Majorana => r.k3_majorana,
            Column::DeltaK3 => r.delta_k3,
        }
    }
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo == hi {
        let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.5 };
        (lo - pad, hi + pad)
    } else {
        (lo, hi)
    }
}

fn coord(x: f64) -> String {
    format!("{x:.3}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders one polyline per series on shared linear axes.
///
/// The data range maps exactly onto the plot box; a constant range is padded
/// symmetrically so the line sits at mid-height.
pub fn render_svg(series: &[Series], title: &str, x_label: &str, y_label: &str) -> Result<String> {
    if series.is_empty() {
        return Err(Error::InvalidArgument("no series to plot".into()));
    }
    if let Some(s) = series.iter().find(|s| s.points.len() < 2) {
        return Err(Error::InvalidArgument(format!(
            "series '{}' has {} points; need at least 2",
            s.label,
            s.points.len()
        )));
    }
    if series.iter().flat_map(|s| &s.points).any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::NonFinite("plot data".into()));
    }
    let all = || series.iter().flat_map(|s| s.points.iter());
    let (x0, x1) = range(all().map(|p| p.0));
    let (y0, y1) = range(all().map(|p| p.1));
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * (RIGHT - LEFT);
    let py = |y: f64| BOTTOM - (y - y0) / (y1 - y0) * (BOTTOM - TOP);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        coord((LEFT + RIGHT) / 2.0),
        escape(title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        RIGHT - LEFT,
        BOTTOM - TOP
    );
    for i in 0..TICKS {
        let f = i as f64 / (TICKS - 1) as f64;
        let xv = x0 + f * (x1 - x0);
        let yv = y0 + f * (y1 - y0);
        let (tx, ty) = (px(xv), py(yv));
        let _ = writeln!(
            s,
            r#"<line x1="{0}" y1="{BOTTOM}" x2="{0}" y2="{1}" stroke="black"/><text x="{0}" y="{2}" text-anchor="middle">{3}</text>"#,
            coord(tx),
            BOTTOM + 5.0,
            BOTTOM + 20.0,
            format_float(xv, 4)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{1}" y1="{0}" x2="{LEFT}" y2="{0}" stroke="black"/><text x="{2}" y="{3}" text-anchor="end">{4}</text>"#,
            coord(ty),
            LEFT - 5.0,
            LEFT - 8.0,
            coord(ty + 4.0),
            format_float(yv, 4)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        coord((LEFT + RIGHT) / 2.0),
        BOTTOM + 45.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{0}" text-anchor="middle" transform="rotate(-90 20 {0})">{1}</text>"#,
        coord((TOP + BOTTOM) / 2.0),
        escape(y_label)
    );
    for (i, ser) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = ser
            .points
            .iter()
            .map(|&(x, y)| format!("{},{}", coord(px(x)), coord(py(y))))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="{color}" stroke-width="2"/><text x="{3}" y="{4}">{5}</text>"#,
            RIGHT + 15.0,
            coord(ly),
            RIGHT + 40.0,
            RIGHT + 45.0,
            coord(ly + 4.0),
            escape(&ser.label)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// One polyline per selected column against the swept parameter.
pub fn emit_svg(result: &ScanResult, columns: &[Column]) -> Result<String> {
    if result.rows.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "plot needs at least 2 rows, got {}",
            result.rows.len()
        )));
    }
    let series: Vec<Series> = columns
        .iter()
        .map(|c| Series {
            label: c.name().to_string(),
            points: result.rows.iter().map(|r| (r.param_value, c.value(r))).collect(),
        })
        .collect();
    let label = series_label(columns);
    render_svg(&series, &format!("{label} vs {}", result.spec.parameter), result.spec.parameter.name(), &label)
}

/// One polyline per outer coordinate of a 2-D scan, for a single column.
pub fn emit_svg_family(results: &[ScanResult], column: Column) -> Result<String> {
    let first = results
        .first()
        .ok_or_else(|| Error::InvalidArgument("no scan results to plot".into()))?;
    let series: Vec<Series> = results
        .iter()
        .map(|r| Series {
            label: match r.outer {
                Some((p, v)) => format!("{p} = {}", format_float(v, 4)),
                None => column.name().to_string(),
            },
            points: r.rows.iter().map(|row| (row.param_value, column.value(row))).collect(),
        })
        .collect();
    render_svg(
        &series,
        &format!("{} vs {}", column.name(), first.spec.parameter),
        first.spec.parameter.name(),
        column.name(),
    )
}

/// The three Majorana correlators against the swept parameter.
pub fn emit_correlation_svg(result: &CorrelationResult) -> Result<String> {
    let xs: Vec<f64> = result.scan.rows.iter().map(|r| r.param_value).collect();
    let pick = |label: &str, f: fn(&lgnu_core::CorrelationRow) -> f64| Series {
        label: label.to_string(),
        points: xs.iter().copied().zip(result.correlators.iter().map(f)).collect(),
    };
    let series = vec![pick("C21", |c| c.c21), pick("C32", |c| c.c32), pick("C31", |c| c.c31)];
    let p = result.scan.spec.parameter;
    render_svg(&series, &format!("correlators vs {p}"), p.name(), "C")
}

fn series_label(columns: &[Column]) -> String {
    columns.iter().map(|c| c.name()).collect::<Vec<_>>().join(", ")
}
