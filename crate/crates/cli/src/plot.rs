//! Minimal SVG line plots of sweep CSV columns against `omega_pc`.

use std::fmt::Write as _;

use crate::{CliError, CliResult};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

/// Parsed numeric table of a sweep CSV (header comments skipped).
struct Table {
    names: Vec<String>,
    rows: Vec<Vec<f64>>,
}

fn parse_csv(csv: &str) -> CliResult<Table> {
    let mut lines = csv
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let names: Vec<String> = lines
        .next()
        .ok_or_else(|| CliError::Usage("CSV has no header row".into()))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|f| f.trim().parse::<f64>().unwrap_or(f64::NAN))
                .collect()
        })
        .collect();
    Ok(Table { names, rows })
}

fn column(table: &Table, name: &str) -> CliResult<Vec<f64>> {
    let idx = table
        .names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| CliError::Usage(format!("CSV has no column `{name}`")))?;
    Ok(table
        .rows
        .iter()
        .map(|r| r.get(idx).copied().unwrap_or(f64::NAN))
        .collect())
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.1 };
        return (lo - pad, hi + pad);
    }
    (lo, hi)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders `columns` of a sweep CSV against `omega_pc` as one SVG document.
///
/// Non-finite samples break the line. A single-row CSV is drawn as point
/// markers.
pub fn emit_plot(csv: &str, columns: &[&str]) -> CliResult<String> {
    if columns.is_empty() {
        return Err(CliError::Usage("no columns to plot".into()));
    }
    let table = parse_csv(csv)?;
    let x = column(&table, "omega_pc")?;
    let series = columns
        .iter()
        .map(|c| column(&table, c).map(|v| (*c, v)))
        .collect::<CliResult<Vec<_>>>()?;
    if x.is_empty() {
        return Err(CliError::Usage("CSV has no data rows".into()));
    }

    let (x0, x1) = range(x.iter().copied());
    let (y0, y1) = range(series.iter().flat_map(|(_, v)| v.iter().copied()));
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |v: f64| LEFT + (v - x0) / (x1 - x0) * plot_w;
    let sy = |v: f64| TOP + (y1 - v) / (y1 - y0) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for k in 0..=TICKS {
        let f = k as f64 / TICKS as f64;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{b:.2}" x2="{px:.2}" y2="{b5:.2}" stroke="black"/><text x="{px:.2}" y="{bt:.2}" text-anchor="middle">{xv:.4}</text>"#,
            b = TOP + plot_h,
            b5 = TOP + plot_h + 5.0,
            bt = TOP + plot_h + 20.0
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{l5:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{lt:.2}" y="{py:.2}" text-anchor="end" dominant-baseline="middle">{yv:.4e}</text>"#,
            l5 = LEFT - 5.0,
            lt = LEFT - 8.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{cx:.2}" y="{y:.2}" text-anchor="middle">omega_pc / kappa</text>"#,
        cx = LEFT + plot_w / 2.0,
        y = HEIGHT - 15.0
    );

    for (k, (name, ys)) in series.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let points: Vec<Option<(f64, f64)>> = x
            .iter()
            .zip(ys)
            .map(|(&a, &b)| (a.is_finite() && b.is_finite()).then(|| (sx(a), sy(b))))
            .collect();
        if points.len() == 1 {
            if let Some((px, py)) = points[0] {
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{px:.2}" cy="{py:.2}" r="4" fill="{colour}"/>"#
                );
            }
        } else {
            for run in points.split(|p| p.is_none()).filter(|r| !r.is_empty()) {
                let coords: Vec<String> = run
                    .iter()
                    .flatten()
                    .map(|(px, py)| format!("{px:.2},{py:.2}"))
                    .collect();
                let _ = writeln!(
                    svg,
                    r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
                    coords.join(" ")
                );
            }
        }
        let ly = TOP + 20.0 + 20.0 * k as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{lx2}" y2="{ly}" stroke="{colour}" stroke-width="2"/><text x="{tx}" y="{ly}" dominant-baseline="middle">{}</text>"#,
            escape(name),
            lx2 = lx + 25.0,
            tx = lx + 32.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
