//! Plain-text plot data.
//!
//! ```text
//! # name <label>
//! # n 6
//! # planar false 4
//! # planes parallel
//! v 1 0 0 0 plane=1
//! e 1 2
//! ```
//!
//! One `v` line per vertex in f64, one `e` line per edge. Hexagons that split
//! into two parallel planes get `plane=1` on odd and `plane=2` on even vertices.

use std::fmt::Write;

use anyhow::Context;
use serde_json::Value;

use polyderive::pipeline::{run_analyze, Analysis, Exact, PolygonInput, Report};
use polyderive::Scalar;

pub fn render(text: &str) -> anyhow::Result<String> {
    let value: Value = serde_json::from_str(text).context("parsing JSON")?;
    if value.get("derived_analysis").is_some() {
        let report: Report = serde_json::from_value(value).context("reading derive report")?;
        let label = format!(
            "derived from {}",
            report.input.name.as_deref().unwrap_or("polygon")
        );
        return match report.derived_analysis {
            Some(Exact::Rational(a)) => Ok(lines(&label, &a)),
            Some(Exact::Quadratic(a)) => Ok(lines(&label, &a)),
            None => unreachable!("checked above"),
        };
    }
    let input = PolygonInput::from_json(text)?;
    let report = run_analyze(&input);
    let analysis = report.analysis.expect("analyze fills the analysis");
    Ok(lines(input.name.as_deref().unwrap_or("polygon"), &analysis))
}

fn lines<S: Scalar>(label: &str, a: &Analysis<S>) -> String {
    let mut out = String::new();
    let planes = a
        .hexagon
        .as_ref()
        .and_then(|h| h.planes.as_ref())
        .is_some_and(|p| p.parallel_planes);
    writeln!(out, "# name {label}").unwrap();
    writeln!(out, "# n {}", a.n).unwrap();
    match a.planarity.witness {
        Some(k) if !a.planarity.planar => writeln!(out, "# planar false {k}").unwrap(),
        _ => writeln!(out, "# planar {}", a.planarity.planar).unwrap(),
    }
    if planes {
        writeln!(out, "# planes parallel").unwrap();
    }
    for (i, v) in a.vertices.iter().enumerate() {
        let [x, y, z] = v.to_f64();
        write!(out, "v {} {x} {y} {z}", i + 1).unwrap();
        if planes {
            write!(out, " plane={}", if i % 2 == 0 { 1 } else { 2 }).unwrap();
        }
        out.push('\n');
    }
    for i in 0..a.n {
        writeln!(out, "e {} {}", i + 1, (i + 1) % a.n + 1).unwrap();
    }
    out
}
