//! Static SVG charts derived from sweep rows. Each figure is a pure
//! function of the emitted CSV data, so regenerating a plot never requires
//! recomputing the sweep.

use std::collections::BTreeSet;
use std::fmt::Write;

use ciot_energy::SweepRow;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;

const GRID_COLOR: &str = "#dddddd";
const SERIES_COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

/// The four figure recipes: lifetime vs payload, lifetime vs cycle,
/// energy breakdown bars, and device comparison bars. Returns
/// `(file-name suffix, svg)` pairs; recipes with no usable data are skipped.
pub fn figures(rows: &[SweepRow]) -> Vec<(&'static str, String)> {
    let ok: Vec<&SweepRow> = rows.iter().filter(|r| r.error.is_empty()).collect();
    let mut out = Vec::new();
    if let Some(svg) = lifetime_vs(&ok, |r| r.payload_bytes as f64, "payload (B)") {
        out.push(("lifetime_vs_payload", svg));
    }
    if let Some(svg) = lifetime_vs(&ok, |r| r.cycle_hours, "cycle (h)") {
        out.push(("lifetime_vs_cycle", svg));
    }
    if let Some(svg) = breakdown_bars(&ok) {
        out.push(("energy_breakdown", svg));
    }
    if let Some(svg) = device_comparison(&ok) {
        out.push(("device_comparison", svg));
    }
    out
}

/// One line per (device, scenario) pair of lifetime against the chosen
/// x-axis; needs at least two distinct x values to be a line chart.
fn lifetime_vs(
    rows: &[&SweepRow],
    x_of: impl Fn(&SweepRow) -> f64,
    x_label: &str,
) -> Option<String> {
    let xs: BTreeSet<u64> = rows.iter().map(|r| x_of(r).to_bits()).collect();
    if xs.len() < 2 {
        return None;
    }
    let keys: BTreeSet<(String, String)> = rows
        .iter()
        .map(|r| (r.device.clone(), r.scenario.clone()))
        .collect();
    let mut series = Vec::new();
    for (device, scenario) in keys {
        let mut points: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.device == device && r.scenario == scenario)
            .map(|r| (x_of(r), r.lifetime_years))
            .collect();
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        points.dedup_by(|a, b| a.0 == b.0);
        if points.len() >= 2 {
            series.push((format!("{device}/{scenario}"), points));
        }
    }
    if series.is_empty() {
        return None;
    }
    Some(line_chart(&series, x_label, "lifetime (years)"))
}

fn line_chart(series: &[(String, Vec<(f64, f64)>)], x_label: &str, y_label: &str) -> String {
    let all: Vec<(f64, f64)> = series.iter().flat_map(|(_, p)| p.iter().copied()).collect();
    let (x_min, x_max) = span(all.iter().map(|p| p.0));
    let (_, y_max) = span(all.iter().map(|p| p.1));
    let y_min = 0.0;
    let sx = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w();
    let sy = |y: f64| HEIGHT - MARGIN_BOTTOM - (y - y_min) / (y_max - y_min) * plot_h();

    let mut svg = header();
    axes(&mut svg, x_label, y_label, x_min, x_max, y_min, y_max);
    for (i, (name, points)) in series.iter().enumerate() {
        let color = SERIES_COLORS[i % SERIES_COLORS.len()];
        let path: Vec<String> = points
            .iter()
            .map(|(x, y)| format!("{:.1},{:.1}", sx(*x), sy(*y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            path.join(" ")
        );
        legend_entry(&mut svg, i, name, color);
    }
    svg.push_str("</svg>\n");
    svg
}

/// Stacked component bars (sync, service request, cDRX, release, TAU,
/// sleep) for each grid point of the first device/scenario pair.
fn breakdown_bars(rows: &[&SweepRow]) -> Option<String> {
    let first = rows.first()?;
    let group: Vec<&&SweepRow> = rows
        .iter()
        .filter(|r| r.device == first.device && r.scenario == first.scenario)
        .take(12)
        .collect();
    let labels = ["sync", "service request", "cDRX", "release", "TAU", "sleep"];
    let parts = |r: &SweepRow| {
        [
            r.e_sync_mj,
            r.e_sr_mj,
            r.e_cdrx_mj,
            r.e_release_mj,
            r.e_tau_mj,
            r.e_sleep_mj,
        ]
    };
    let y_max = group.iter().map(|r| r.e_cycle_mj).fold(0.0_f64, f64::max);
    if y_max <= 0.0 {
        return None;
    }
    let sy = |y: f64| HEIGHT - MARGIN_BOTTOM - y / y_max * plot_h();
    let band = plot_w() / group.len() as f64;

    let mut svg = header();
    axes(
        &mut svg,
        &format!("{}/{} grid points", first.device, first.scenario),
        "energy per cycle (mJ)",
        0.0,
        group.len() as f64,
        0.0,
        y_max,
    );
    for (i, row) in group.iter().enumerate() {
        let x = MARGIN_LEFT + i as f64 * band + band * 0.15;
        let w = band * 0.7;
        let mut base = 0.0;
        for (j, part) in parts(row).iter().enumerate() {
            let y0 = sy(base);
            let y1 = sy(base + part);
            let _ = writeln!(
                svg,
                r#"<rect x="{x:.1}" y="{y1:.1}" width="{w:.1}" height="{:.1}" fill="{}"/>"#,
                y0 - y1,
                SERIES_COLORS[j]
            );
            base += part;
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle">{}B/{}h</text>"#,
            x + w / 2.0,
            HEIGHT - MARGIN_BOTTOM + 16.0,
            row.payload_bytes,
            row.cycle_hours
        );
    }
    for (j, label) in labels.iter().enumerate() {
        legend_entry(&mut svg, j, label, SERIES_COLORS[j]);
    }
    svg.push_str("</svg>\n");
    Some(svg)
}

/// Mean lifetime per device over the rows both devices share; one bar per
/// device, so relative standings are read directly off the chart.
fn device_comparison(rows: &[&SweepRow]) -> Option<String> {
    let devices: BTreeSet<&str> = rows.iter().map(|r| r.device.as_str()).collect();
    if devices.len() < 2 {
        return None;
    }
    let mut bars = Vec::new();
    for device in devices {
        let values: Vec<f64> = rows
            .iter()
            .filter(|r| r.device == device)
            .map(|r| r.lifetime_years)
            .collect();
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        bars.push((device.to_string(), mean));
    }
    let y_max = bars.iter().map(|(_, v)| *v).fold(0.0_f64, f64::max);
    if y_max <= 0.0 {
        return None;
    }
    let sy = |y: f64| HEIGHT - MARGIN_BOTTOM - y / y_max * plot_h();
    let band = plot_w() / bars.len() as f64;

    let mut svg = header();
    axes(
        &mut svg,
        "device",
        "mean lifetime (years)",
        0.0,
        bars.len() as f64,
        0.0,
        y_max,
    );
    for (i, (device, value)) in bars.iter().enumerate() {
        let x = MARGIN_LEFT + i as f64 * band + band * 0.2;
        let w = band * 0.6;
        let y = sy(*value);
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.1}" y="{y:.1}" width="{w:.1}" height="{:.1}" fill="{}"/>"#,
            HEIGHT - MARGIN_BOTTOM - y,
            SERIES_COLORS[i % SERIES_COLORS.len()]
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">{device}</text>"#,
            x + w / 2.0,
            HEIGHT - MARGIN_BOTTOM + 18.0
        );
    }
    svg.push_str("</svg>\n");
    Some(svg)
}

fn plot_w() -> f64 {
    WIDTH - MARGIN_LEFT - MARGIN_RIGHT
}

fn plot_h() -> f64 {
    HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
}

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in values {
        min = min.min(v);
        max = max.max(v);
    }
    if !min.is_finite() || !max.is_finite() {
        return (0.0, 1.0);
    }
    if min == max {
        return (min - 0.5, max + 0.5);
    }
    (min, max)
}

fn header() -> String {
    format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">
<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>
"#
    )
}

fn axes(
    svg: &mut String,
    x_label: &str,
    y_label: &str,
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
) {
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    let _ = writeln!(
        svg,
        r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>
<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>
<text x="{:.1}" y="{:.1}" font-size="13" text-anchor="middle">{x_label}</text>
<text x="18" y="{:.1}" font-size="13" text-anchor="middle" transform="rotate(-90 18 {:.1})">{y_label}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 14.0,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let xv = x_min + f * (x_max - x_min);
        let yv = y_min + f * (y_max - y_min);
        let xp = x0 + f * (x1 - x0);
        let yp = y0 - f * (y0 - y1);
        let _ = writeln!(
            svg,
            r#"<text x="{xp:.1}" y="{:.1}" font-size="11" text-anchor="middle">{xv:.3}</text>
<text x="{:.1}" y="{yp:.1}" font-size="11" text-anchor="end">{yv:.3}</text>
<line x1="{x0}" y1="{yp:.1}" x2="{x1}" y2="{yp:.1}" stroke="{GRID_COLOR}"/>"#,
            y0 + 16.0,
            x0 - 6.0,
        );
    }
}

fn legend_entry(svg: &mut String, index: usize, name: &str, color: &str) {
    let x = WIDTH - MARGIN_RIGHT + 12.0;
    let y = MARGIN_TOP + 8.0 + index as f64 * 18.0;
    let _ = writeln!(
        svg,
        r#"<rect x="{x}" y="{:.1}" width="12" height="12" fill="{color}"/>
<text x="{:.1}" y="{:.1}" font-size="11">{name}</text>"#,
        y - 10.0,
        x + 16.0,
        y
    );
}
