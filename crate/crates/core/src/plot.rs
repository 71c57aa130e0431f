//! Deterministic SVG line charts for the four report figures.
//!
//! Self-contained vector output, no plotting toolkit: elements are
//! emitted in a fixed order so identical reports produce identical files.
//! Machine-readable `data-*` attributes carry the data-space ranges and
//! threshold level so tests and scripts need not reverse the coordinate
//! transform.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::analysis::log10_series;
use crate::decimal::decimal_to_f64_nearest;
use crate::error::{Error, Result};
use crate::report::AuditReport;

/// 1-based sample windows taken from the original experiment's figures;
/// sample k is iterate k-1.
const VALUE_WINDOW: (usize, usize) = (41, 101);
const ERROR_WINDOW: (usize, usize) = (31, 70);
/// The threshold guide line extends slightly left of the error window.
const THRESHOLD_LINE_START: f64 = 30.0;

#[derive(Clone, Copy)]
enum Marker {
    Circle,
    Asterisk,
    Square,
}

struct Series {
    label: &'static str,
    marker: Marker,
    points: Vec<(f64, f64)>,
}

struct Figure {
    file_name: &'static str,
    x_label: &'static str,
    y_label: &'static str,
    series: Vec<Series>,
    /// Horizontal guide line: (x_start, x_end, y).
    threshold_line: Option<(f64, f64, f64)>,
    x_range: (f64, f64),
}

pub(crate) fn emit_figures(report: &AuditReport, directory: &Path) -> Result<Vec<PathBuf>> {
    let len = report.orbit_g.len();
    let value_window = clamp_window(VALUE_WINDOW, len)?;
    let error_window = clamp_window(ERROR_WINDOW, len)?;

    let g_values = windowed(report.orbit_g.values(), value_window);
    let h_values = windowed(report.orbit_h.values(), value_window);
    let p_f64: Vec<f64> = report
        .reference
        .values()
        .iter()
        .map(decimal_to_f64_nearest)
        .collect();
    let p_values = windowed(&p_f64, value_window);

    let log_lb = log10_series(&report.lower_bound);
    let log_dg = log10_series(&report.deviation_g);
    let log_dh = log10_series(&report.deviation_h);
    let threshold_level = report.crossings.lower_bound.threshold.log10();
    let threshold_line = Some((
        THRESHOLD_LINE_START.min(error_window.0 as f64),
        error_window.1 as f64,
        threshold_level,
    ));

    let figures = [
        Figure {
            file_name: "fig1.svg",
            x_label: "n",
            y_label: "G(X_n), H(X_n)",
            series: vec![
                series("G(X_n)", Marker::Circle, &g_values),
                series("H(X_n)", Marker::Asterisk, &h_values),
            ],
            threshold_line: None,
            x_range: (value_window.0 as f64, value_window.1 as f64),
        },
        Figure {
            file_name: "fig2.svg",
            x_label: "n",
            y_label: "log10(delta_alpha_n)",
            series: vec![series(
                "log10(delta_alpha_n)",
                Marker::Circle,
                &windowed(&log_lb, error_window),
            )],
            threshold_line,
            x_range: (
                THRESHOLD_LINE_START.min(error_window.0 as f64),
                error_window.1 as f64,
            ),
        },
        Figure {
            file_name: "fig3.svg",
            x_label: "n",
            y_label: "G(X_n), H(X_n), P(X_n)",
            series: vec![
                series("G(X_n)", Marker::Circle, &g_values),
                series("H(X_n)", Marker::Asterisk, &h_values),
                series("P(X_n)", Marker::Square, &p_values),
            ],
            threshold_line: None,
            x_range: (value_window.0 as f64, value_window.1 as f64),
        },
        Figure {
            file_name: "fig4.svg",
            x_label: "n",
            y_label: "log10(delta_GP_n), log10(delta_HP_n)",
            series: vec![
                series("log10(delta_GP_n)", Marker::Circle, &windowed(&log_dg, error_window)),
                series("log10(delta_HP_n)", Marker::Asterisk, &windowed(&log_dh, error_window)),
            ],
            threshold_line,
            x_range: (
                THRESHOLD_LINE_START.min(error_window.0 as f64),
                error_window.1 as f64,
            ),
        },
    ];

    let mut paths = Vec::with_capacity(figures.len());
    for figure in figures {
        let path = directory.join(figure.file_name);
        let svg = render(&figure);
        let mut file = std::fs::File::create(&path)
            .map_err(|e| Error::io(format!("creating {}", path.display()), e))?;
        file.write_all(svg.as_bytes())
            .map_err(|e| Error::io(format!("writing {}", path.display()), e))?;
        paths.push(path);
    }
    Ok(paths)
}

/// Intersects a 1-based sample window with the available samples.
fn clamp_window(window: (usize, usize), available: usize) -> Result<(usize, usize)> {
    if available < window.0 {
        return Err(Error::InsufficientData(format!(
            "figures need at least {} samples, run produced {}",
            window.0, available
        )));
    }
    Ok((window.0, window.1.min(available)))
}

/// Pairs 1-based sample numbers with values, dropping non-finite entries
/// (log10 sentinels).
fn windowed(values: &[f64], window: (usize, usize)) -> Vec<(f64, f64)> {
    (window.0..=window.1)
        .map(|sample| (sample as f64, values[sample - 1]))
        .filter(|(_, y)| y.is_finite())
        .collect()
}

fn series(label: &'static str, marker: Marker, points: &[(f64, f64)]) -> Series {
    Series {
        label,
        marker,
        points: points.to_vec(),
    }
}

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 92.0;
const MARGIN_RIGHT: f64 = 28.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 64.0;

struct Projection {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Projection {
    fn x(&self, v: f64) -> f64 {
        MARGIN_LEFT + (v - self.x_min) / (self.x_max - self.x_min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        // SVG y grows downward.
        HEIGHT - MARGIN_BOTTOM
            - (v - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn render(figure: &Figure) -> String {
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in &figure.series {
        for &(_, y) in &s.points {
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    if let Some((_, _, level)) = figure.threshold_line {
        y_min = y_min.min(level);
        y_max = y_max.max(level);
    }
    if !y_min.is_finite() || !y_max.is_finite() {
        y_min = 0.0;
        y_max = 1.0;
    }
    if y_min == y_max {
        y_min -= 0.5;
        y_max += 0.5;
    }
    let pad = (y_max - y_min) * 0.06;
    let proj = Projection {
        x_min: figure.x_range.0,
        x_max: figure.x_range.1.max(figure.x_range.0 + 1.0),
        y_min: y_min - pad,
        y_max: y_max + pad,
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" data-x-min=\"{}\" data-x-max=\"{}\">\n",
        figure.x_range.0, figure.x_range.1
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));

    // axes
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    svg.push_str(&format!(
        "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x0:.2}\" y2=\"{y1:.2}\" stroke=\"black\"/>\n"
    ));

    for tick in ticks(proj.x_min, proj.x_max) {
        let px = proj.x(tick);
        svg.push_str(&format!(
            "  <line x1=\"{px:.2}\" y1=\"{y0:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            y0 + 6.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{px:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
            y0 + 22.0,
            tick_label(tick)
        ));
    }
    for tick in ticks(proj.y_min, proj.y_max) {
        let py = proj.y(tick);
        svg.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{x0:.2}\" y2=\"{py:.2}\" stroke=\"black\"/>\n",
            x0 - 6.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"end\">{}</text>\n",
            x0 - 10.0,
            py + 4.0,
            tick_label(tick)
        ));
    }

    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
        (x0 + x1) / 2.0,
        HEIGHT - 14.0,
        figure.x_label
    ));
    svg.push_str(&format!(
        "  <text x=\"20\" y=\"{:.2}\" font-size=\"16\" text-anchor=\"middle\" \
         transform=\"rotate(-90 20 {:.2})\">{}</text>\n",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        figure.y_label
    ));

    if let Some((start, end, level)) = figure.threshold_line {
        svg.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" \
             data-role=\"threshold\" data-y=\"{level}\"/>\n",
            proj.x(start),
            proj.y(level),
            proj.x(end),
            proj.y(level),
        ));
    }

    for (index, s) in figure.series.iter().enumerate() {
        let path: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", proj.x(x), proj.y(y)))
            .collect();
        svg.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"black\" data-series=\"{}\"/>\n",
            path.join(" "),
            s.label
        ));
        for &(x, y) in &s.points {
            svg.push_str(&marker_svg(s.marker, proj.x(x), proj.y(y)));
        }
        // legend entry
        let lx = MARGIN_LEFT + 16.0 + index as f64 * 190.0;
        let ly = MARGIN_TOP - 18.0;
        svg.push_str(&marker_svg(s.marker, lx, ly));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\">{}</text>\n",
            lx + 12.0,
            ly + 4.0,
            s.label
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

fn marker_svg(marker: Marker, px: f64, py: f64) -> String {
    match marker {
        Marker::Circle => format!(
            "  <circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"3.5\" fill=\"none\" stroke=\"black\"/>\n"
        ),
        Marker::Square => format!(
            "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"7\" height=\"7\" fill=\"none\" stroke=\"black\"/>\n",
            px - 3.5,
            py - 3.5
        ),
        Marker::Asterisk => {
            let r = 4.0;
            let d = r * std::f64::consts::FRAC_1_SQRT_2;
            format!(
                "  <g stroke=\"black\">\
                 <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>\
                 <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>\
                 <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>\
                 </g>\n",
                px - r, py, px + r, py,
                px - d, py - d, px + d, py + d,
                px - d, py + d, px + d, py - d,
            )
        }
    }
}

/// Round tick steps: 1, 2 or 5 times a power of ten, aiming for about six
/// intervals.
fn ticks(min: f64, max: f64) -> Vec<f64> {
    let range = max - min;
    let raw_step = range / 6.0;
    let magnitude = 10f64.powf(raw_step.log10().floor());
    let normalized = raw_step / magnitude;
    let step = if normalized < 1.5 {
        magnitude
    } else if normalized < 3.5 {
        2.0 * magnitude
    } else if normalized < 7.5 {
        5.0 * magnitude
    } else {
        10.0 * magnitude
    };
    let first = (min / step).ceil();
    let mut out = Vec::new();
    let mut k = first;
    while k * step <= max + step * 1e-9 {
        out.push(k * step);
        k += 1.0;
    }
    out
}

fn tick_label(value: f64) -> String {
    let rounded = (value * 1e6).round() / 1e6;
    format!("{rounded}")
}
