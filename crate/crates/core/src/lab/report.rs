//! CSV, JSON and SVG renderings of lab reports.

use std::io::Write;

use crate::error::{GeomError, Result};

use super::check::InequalityReport;
use super::fuzz::FuzzOutcome;

pub const CSV_HEADER: [&str; 14] = [
    "id", "dim", "r", "p", "i", "phi", "lhs", "rhs", "slack", "tolerance", "status", "approximate", "inputs_digest", "seed",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

/// Shortest round-trip form, with an exponent for very small or large values.
fn float(x: f64) -> String {
    format!("{x:?}")
}

fn io(e: impl std::fmt::Display) -> GeomError {
    GeomError::InvalidParameter(format!("write failed: {e}"))
}

/// Writes the header and one row per report; minimal quoting, LF line endings.
pub fn write_csv<'a, W: Write>(out: W, reports: impl IntoIterator<Item = &'a InequalityReport>) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in reports {
        w.write_record([
            r.id.to_string(),
            r.dim.to_string(),
            opt(&r.r),
            r.p.map(float).unwrap_or_default(),
            opt(&r.i),
            opt(&r.phi),
            float(r.lhs),
            float(r.rhs),
            float(r.slack),
            float(r.tolerance),
            r.status.as_str().to_string(),
            r.approximate.to_string(),
            r.inputs_digest.clone(),
            opt(&r.seed),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(io)
}

pub fn csv_string<'a>(reports: impl IntoIterator<Item = &'a InequalityReport>) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, reports)?;
    String::from_utf8(buf).map_err(io)
}

/// JSON with full vertex data for every trial.
pub fn outcome_json(outcome: &FuzzOutcome) -> Result<String> {
    serde_json::to_string_pretty(outcome).map_err(io)
}

/// Per-id slack histograms stacked vertically in one SVG document.
pub fn slack_histogram_svg(outcome: &FuzzOutcome, bins: usize) -> String {
    let bins = bins.max(1);
    let (w, h, pad) = (480.0, 140.0, 30.0);
    let panels: Vec<_> = outcome
        .summary
        .iter()
        .map(|s| {
            let slacks: Vec<f64> = outcome.reports().filter(|r| r.id == s.id).map(|r| r.slack).collect();
            (s.id, slacks)
        })
        .collect();
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{}\" font-family=\"monospace\" font-size=\"11\">\n",
        h * panels.len().max(1) as f64
    );
    for (k, (id, slacks)) in panels.iter().enumerate() {
        let y0 = h * k as f64;
        svg.push_str(&format!("<text x=\"4\" y=\"{}\">{id} (n={})</text>\n", y0 + 14.0, slacks.len()));
        if slacks.is_empty() {
            continue;
        }
        let lo = slacks.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = slacks.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
        let mut counts = vec![0usize; bins];
        for &s in slacks {
            counts[(((s - lo) / width) as usize).min(bins - 1)] += 1;
        }
        let top = *counts.iter().max().unwrap_or(&1) as f64;
        let bar_w = (w - 2.0 * pad) / bins as f64;
        let plot_h = h - 2.0 * pad;
        for (b, &c) in counts.iter().enumerate() {
            let bh = plot_h * c as f64 / top;
            svg.push_str(&format!(
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{bh:.2}\" fill=\"{}\"/>\n",
                pad + b as f64 * bar_w,
                y0 + pad + plot_h - bh,
                (bar_w - 1.0).max(0.5),
                if lo + (b as f64 + 1.0) * width < 0.0 { "#c0392b" } else { "#2c7fb8" },
            ));
        }
        svg.push_str(&format!(
            "<text x=\"{pad}\" y=\"{}\">{lo:.3e}</text><text x=\"{}\" y=\"{}\" text-anchor=\"end\">{hi:.3e}</text>\n",
            y0 + h - 8.0,
            w - pad,
            y0 + h - 8.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::{fuzz, FuzzConfig, InequalityId};

    #[test]
    fn csv_shape() {
        let out = fuzz(&[InequalityId::ClassicalAf], &FuzzConfig::new(2, 3), 1).unwrap();
        let text = csv_string(out.reports()).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[4], "");
        assert!(!text.contains('\r'));
        assert!(lines[1].starts_with("CLASSICAL_AF_1_8,2,"));
        let svg = slack_histogram_svg(&out, 10);
        assert!(svg.starts_with("<svg") && svg.contains("CLASSICAL_AF_1_8"));
    }
}
