//! CSV, SVG, DOT and JSON renderings of analysis results.
//!
//! Every float written here is rounded to 7 significant digits so reports
//! are stable across platforms and easy to diff.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::complexity::BaselineSummary;
use crate::cycleclust::{RatioTable, TrimResult};
use crate::error::Result;
use crate::graph::{DirectedGraph, NodeId};
use crate::spectra::{angle, EigenClass, Spectrum, ToleranceConfig};

const SIG_DIGITS: usize = 7;

/// Rounds `x` to 7 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    // scientific formatting rounds half-to-even on the decimal expansion,
    // which is exact and platform independent
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap()
}

/// Shortest decimal form of `round_sig(x)`.
pub fn fmt_num(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        "0".into()
    } else {
        r.to_string()
    }
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap());
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

/// Serializes `value` to a JSON value with all floats rounded.
pub fn to_rounded_value<T: Serialize + ?Sized>(value: &T) -> Result<Value> {
    let v = serde_json::to_value(value).map_err(|e| crate::Error::validation(e.to_string()))?;
    Ok(round_value(v))
}

/// Pretty-printed JSON with all floats rounded and a trailing newline.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let v = to_rounded_value(value)?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| crate::Error::validation(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// `re,im,r,theta,class` per eigenvalue, in spectrum order.
pub fn eigenvalues_csv(s: &Spectrum, tol: &ToleranceConfig) -> String {
    let mut out = String::from("re,im,r,theta,class\n");
    for &z in s.eigenvalues() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_num(z.re),
            fmt_num(z.im),
            fmt_num(z.norm()),
            fmt_num(angle(z)),
            tol.classify(z).as_str()
        );
    }
    out
}

fn class_color(c: EigenClass) -> &'static str {
    match c {
        EigenClass::Zero => "#999999",
        EigenClass::One => "#1f77b4",
        EigenClass::ThetaZero => "#2ca02c",
        EigenClass::ThetaNonzero => "#d62728",
    }
}

/// Eigenvalues drawn over the unit circle.
pub fn spectrum_svg(s: &Spectrum, tol: &ToleranceConfig) -> String {
    const SIZE: f64 = 420.0;
    const RADIUS: f64 = 180.0;
    let c = SIZE / 2.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<circle cx="{c}" cy="{c}" r="{RADIUS}" fill="none" stroke="#444" stroke-width="1"/>"##
    );
    let _ = writeln!(
        out,
        r##"<line x1="10" y1="{c}" x2="{}" y2="{c}" stroke="#bbb"/><line x1="{c}" y1="10" x2="{c}" y2="{}" stroke="#bbb"/>"##,
        SIZE - 10.0,
        SIZE - 10.0
    );
    for &z in s.eigenvalues() {
        let x = c + RADIUS * z.re;
        let y = c - RADIUS * z.im;
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="2.5" fill="{}" fill-opacity="0.7"/>"#,
            fmt_num(x),
            fmt_num(y),
            class_color(tol.classify(z))
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="10" y="20" font-family="sans-serif" font-size="12">{} eigenvalues</text>"#,
        s.len()
    );
    out.push_str("</svg>\n");
    out
}

/// One row per source cluster: `cluster,size,C1,...,CK`.
pub fn ratio_csv(t: &RatioTable) -> String {
    let k = t.cells.len();
    let mut out = String::from("cluster,size");
    for y in 0..k {
        let _ = write!(out, ",C{}", y + 1);
    }
    out.push('\n');
    for (x, row) in t.cells.iter().enumerate() {
        let _ = write!(out, "C{},{}", x + 1, t.cluster_sizes[x]);
        for &v in row {
            let _ = write!(out, ",{}", fmt_num(v));
        }
        out.push('\n');
    }
    out
}

/// `fraction,objective,C1->C1,C1->C2,...` per grid point.
pub fn curve_csv(t: &TrimResult) -> String {
    let k = t.objective_curve.first().map_or(0, |p| p.ratios.len());
    let mut out = String::from("fraction,objective");
    for x in 0..k {
        for y in 0..k {
            let _ = write!(out, ",C{}->C{}", x + 1, y + 1);
        }
    }
    out.push('\n');
    for p in &t.objective_curve {
        let _ = write!(out, "{},{}", fmt_num(p.fraction), fmt_num(p.objective));
        for v in p.ratios.iter().flatten() {
            let _ = write!(out, ",{}", fmt_num(*v));
        }
        out.push('\n');
    }
    out
}

const PALETTE: [&str; 8] = [
    "#f4a6a6", "#a6e3a6", "#a6c8f4", "#f4dca6", "#d3a6f4", "#a6f0ec", "#f4a6dc", "#cfcfcf",
];
const EDGE_PALETTE: [&str; 8] = [
    "#d62728", "#2ca02c", "#1f77b4", "#ff7f0e", "#9467bd", "#17becf", "#e377c2", "#7f7f7f",
];

/// Graphviz rendering of the clustered nodes. Edges from cluster `X` to its
/// successor are drawn in `X`'s colour, edges inside a cluster in black and
/// all other cross edges in grey.
pub fn clusters_dot(g: &DirectedGraph, clusters: &[Vec<NodeId>]) -> String {
    let k = clusters.len();
    let label: BTreeMap<NodeId, usize> = clusters
        .iter()
        .enumerate()
        .flat_map(|(c, ns)| ns.iter().map(move |&n| (n, c)))
        .collect();
    let mut out = String::from("digraph clusters {\n  node [style=filled, shape=circle];\n");
    for (c, members) in clusters.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{c} {{");
        let _ = writeln!(out, "    label=\"C{}\";", c + 1);
        for n in members {
            let _ = writeln!(out, "    \"{n}\" [fillcolor=\"{}\"];", PALETTE[c % PALETTE.len()]);
        }
        out.push_str("  }\n");
    }
    for e in g.edges() {
        let (Some(&x), Some(&y)) = (label.get(&e.src), label.get(&e.dst)) else {
            continue;
        };
        let color = if x == y {
            "black"
        } else if y == (x + 1) % k {
            EDGE_PALETTE[x % EDGE_PALETTE.len()]
        } else {
            "#bbbbbb"
        };
        let _ = writeln!(out, "  \"{}\" -> \"{}\" [color=\"{color}\"];", e.src, e.dst);
    }
    out.push_str("}\n");
    out
}

/// `degree,mean_F,std_F,mean_radial,mean_angular` per swept degree.
pub fn baseline_csv(rows: &[BaselineSummary]) -> String {
    let mut out = String::from("degree,mean_F,std_F,mean_radial,mean_angular\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_num(r.avg_degree),
            fmt_num(r.mean_f),
            fmt_num(r.std_f),
            fmt_num(r.mean_radial),
            fmt_num(r.mean_angular)
        );
    }
    out
}

/// Line plot of `F` and its two terms against average degree.
pub fn baseline_svg(rows: &[BaselineSummary]) -> String {
    const W: f64 = 520.0;
    const H: f64 = 360.0;
    const M: f64 = 45.0;
    let max_d = rows.iter().map(|r| r.avg_degree).fold(1.0, f64::max);
    let px = |d: f64| M + (W - 2.0 * M) * d / max_d;
    // F never exceeds 2
    let py = |f: f64| H - M - (H - 2.0 * M) * f / 2.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<line x1="{M}" y1="{}" x2="{}" y2="{}" stroke="#444"/><line x1="{M}" y1="{M}" x2="{M}" y2="{}" stroke="#444"/>"##,
        H - M,
        W - M,
        H - M,
        H - M
    );
    for f in [0.0, 0.5, 1.0, 1.5, 2.0] {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="10" text-anchor="end">{f}</text>"#,
            M - 5.0,
            fmt_num(py(f) + 3.0)
        );
    }
    let series: [(&str, fn(&BaselineSummary) -> f64); 3] = [
        ("#000000", |r| r.mean_f),
        ("#1f77b4", |r| r.mean_radial),
        ("#d62728", |r| r.mean_angular),
    ];
    for (color, get) in series {
        let pts: Vec<String> = rows
            .iter()
            .map(|r| format!("{},{}", fmt_num(px(r.avg_degree)), fmt_num(py(get(r)))))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">average degree</text>"#,
        W / 2.0,
        H - 10.0
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn rounding_to_seven_digits() {
        assert_eq!(round_sig(-0.105457234), -0.1054572);
        assert_eq!(round_sig(1.04181234), 1.041812);
        assert_eq!(round_sig(123456789.0), 123456800.0);
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(fmt_num(0.75), "0.75");
        assert_eq!(fmt_num(-0.0), "0");
    }

    #[test]
    fn json_rounds_nested_floats_only() {
        #[derive(Serialize)]
        struct S {
            a: f64,
            b: Vec<f64>,
            n: usize,
        }
        let s = to_json_string(&S {
            a: 1.0 / 3.0,
            b: vec![2.0 / 3.0],
            n: 12345678,
        })
        .unwrap();
        assert!(s.contains("0.3333333"));
        assert!(s.contains("0.6666667"));
        assert!(s.contains("12345678"));
    }

    #[test]
    fn eigenvalue_csv_rows() {
        let s = Spectrum::from_eigenvalues(vec![Complex64::new(1.0, 0.0), Complex64::new(-0.5, 0.0)]);
        let csv = eigenvalues_csv(&s, &ToleranceConfig::default());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "re,im,r,theta,class");
        assert_eq!(lines[1], "1,0,1,0,one");
        assert!(lines[2].starts_with("-0.5,0,0.5,3.141593,"));
    }

    #[test]
    fn dot_colours_successor_edges() {
        let g = DirectedGraph::from_pairs([(0, 1), (1, 0), (0, 0)]);
        let dot = clusters_dot(&g, &[vec![NodeId(0)], vec![NodeId(1)]]);
        assert!(dot.contains("\"0\" -> \"1\" [color=\"#d62728\"]"));
        assert!(dot.contains("\"1\" -> \"0\" [color=\"#2ca02c\"]"));
        assert!(dot.contains("\"0\" -> \"0\" [color=\"black\"]"));
    }

    #[test]
    fn svg_is_well_formed_enough() {
        let s = Spectrum::from_eigenvalues(vec![Complex64::new(0.0, 1.0)]);
        let svg = spectrum_svg(&s, &ToleranceConfig::default());
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("r=\"2.5\"").count(), 1);
    }
}
