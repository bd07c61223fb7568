//! Static SVG line chart of per-method means against density, with
//! standard-deviation error bars.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::bench::{read_csv, ResultRow};
use crate::error::{write_string, CliError, Result};

/// Mean and spread of one method at one density.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub p: f64,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub method: String,
    pub points: Vec<Point>,
}

/// Which column is plotted: accuracy when every row has it, else size.
pub fn metric_name(rows: &[ResultRow]) -> &'static str {
    if !rows.is_empty() && rows.iter().all(|r| r.accuracy.is_some()) {
        "accuracy"
    } else {
        "size"
    }
}

fn value(row: &ResultRow, metric: &str) -> f64 {
    match (metric, row.accuracy) {
        ("accuracy", Some(a)) => a,
        _ => row.size as f64,
    }
}

/// Groups rows by method (in first-seen order) and density (ascending).
pub fn aggregate(rows: &[ResultRow]) -> Result<Vec<Series>> {
    if rows.is_empty() {
        return Err(CliError::Param("nothing to plot".into()));
    }
    let metric = metric_name(rows);
    let mut order: Vec<&str> = Vec::new();
    let mut groups: BTreeMap<(&str, u64), Vec<f64>> = BTreeMap::new();
    for row in rows {
        if !row.p.is_finite() {
            return Err(CliError::Param(format!("density {} is not finite", row.p)));
        }
        if !order.contains(&row.method.as_str()) {
            order.push(&row.method);
        }
        // densities are non-negative, so the bit pattern sorts like the value
        groups.entry((&row.method, row.p.to_bits())).or_default().push(value(row, metric));
    }
    Ok(order
        .into_iter()
        .map(|method| Series {
            method: method.to_string(),
            points: groups
                .range((method, 0)..=(method, u64::MAX))
                .map(|(&(_, bits), vs)| {
                    let n = vs.len() as f64;
                    let mean = vs.iter().sum::<f64>() / n;
                    let var = vs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
                    Point { p: f64::from_bits(bits), mean, std: var.sqrt(), count: vs.len() }
                })
                .collect(),
        })
        .collect())
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

pub fn svg(rows: &[ResultRow]) -> Result<String> {
    let series = aggregate(rows)?;
    let metric = metric_name(rows);
    let points = || series.iter().flat_map(|s| &s.points);
    let (mut x0, mut x1) = points().fold((f64::MAX, f64::MIN), |(lo, hi), q| (lo.min(q.p), hi.max(q.p)));
    if x1 - x0 < 1e-9 {
        x0 -= 0.05;
        x1 += 0.05;
    }
    let y1 = points().map(|q| q.mean + q.std).fold(0.0, f64::max).max(1e-9) * 1.05;
    let sx = |p: f64| MARGIN + (p - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |v: f64| HEIGHT - MARGIN - v / y1 * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (left, right, bottom, top) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(out, r#"<path d="M{left} {top} V{bottom} H{right}" fill="none" stroke="black"/>"#);
    for k in 0..=4 {
        let v = y1 * k as f64 / 4.0;
        let _ = writeln!(out, r#"<text x="{}" y="{:.1}" text-anchor="end">{v:.2}</text>"#, left - 6.0, sy(v) + 4.0);
        let p = x0 + (x1 - x0) * k as f64 / 4.0;
        let _ = writeln!(out, r#"<text x="{:.1}" y="{}" text-anchor="middle">{p:.2}</text>"#, sx(p), bottom + 18.0);
    }
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">p</text>"#, WIDTH / 2.0, HEIGHT - 12.0);
    let _ = writeln!(
        out,
        r#"<text x="16" y="{}" transform="rotate(-90 16 {})" text-anchor="middle">mean {metric}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );

    for (k, s) in series.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let coords: Vec<String> = s.points.iter().map(|q| format!("{:.2},{:.2}", sx(q.p), sy(q.mean))).collect();
        let _ = writeln!(
            out,
            r#"<polyline data-method="{}" points="{}" fill="none" stroke="{colour}" stroke-width="2"/>"#,
            s.method,
            coords.join(" ")
        );
        for q in &s.points {
            let x = sx(q.p);
            let _ = writeln!(
                out,
                r#"<line class="err" x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="{colour}"/><circle cx="{x:.2}" cy="{:.2}" r="3" fill="{colour}"><title>{} p={} mean={:.4} std={:.4} n={}</title></circle>"#,
                sy((q.mean - q.std).max(0.0)),
                sy(q.mean + q.std),
                sy(q.mean),
                s.method,
                q.p,
                q.mean,
                q.std,
                q.count
            );
        }
        let y = top + 16.0 * k as f64;
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="{colour}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            right - 110.0,
            right - 90.0,
            right - 84.0,
            y + 4.0,
            s.method
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Reads a results CSV and writes its chart.
pub fn plot_file(input: &Path, output: &Path) -> Result<()> {
    let rows = read_csv(input)?;
    write_string(output, &svg(&rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(p: f64, method: &str, size: usize, accuracy: Option<f64>) -> ResultRow {
        ResultRow {
            p,
            seed: 0,
            method: method.into(),
            size,
            accuracy,
            iterations: None,
            kernel_size: None,
            wall_ms: None,
        }
    }

    #[test]
    fn aggregates_by_method_and_density() {
        let rows =
            [row(0.5, "RD", 4, None), row(0.1, "RD", 6, None), row(0.5, "RD", 6, None), row(0.5, "AIH", 7, None)];
        let series = aggregate(&rows).unwrap();
        assert_eq!(series.len(), 2);
        assert_eq!(series[0].method, "RD");
        assert_eq!(series[0].points[0], Point { p: 0.1, mean: 6.0, std: 0.0, count: 1 });
        assert_eq!(series[0].points[1], Point { p: 0.5, mean: 5.0, std: 1.0, count: 2 });
        assert_eq!(series[1].points, vec![Point { p: 0.5, mean: 7.0, std: 0.0, count: 1 }]);
    }

    #[test]
    fn accuracy_is_plotted_when_present() {
        let rows = [row(0.1, "KERNEL", 30, Some(0.75)), row(0.1, "KERNEL", 40, Some(1.0))];
        assert_eq!(metric_name(&rows), "accuracy");
        assert_eq!(aggregate(&rows).unwrap()[0].points[0].mean, 0.875);
    }

    #[test]
    fn one_polyline_per_method() {
        let rows =
            [row(0.1, "RD", 4, None), row(0.9, "RD", 5, None), row(0.1, "AIH", 5, None), row(0.9, "AIH", 6, None)];
        let svg = svg(&rows).unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("class=\"err\"").count(), 4);
    }

    #[test]
    fn empty_input_is_a_parameter_error() {
        assert!(matches!(svg(&[]), Err(CliError::Param(_))));
    }
}
