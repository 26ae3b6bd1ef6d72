use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::output::write_atomic;

use super::correlation::CorrelationMatrix;

const CELL: usize = 44;
const MARGIN: usize = 170;

/// Diverging palette: red (-1), yellow and green around 0, blue (+1).
const STOPS: [(f64, [f64; 3]); 5] = [
    (-1.0, [215.0, 48.0, 39.0]),
    (-0.35, [253.0, 174.0, 97.0]),
    (0.0, [254.0, 240.0, 139.0]),
    (0.35, [145.0, 207.0, 96.0]),
    (1.0, [44.0, 123.0, 182.0]),
];

fn color(v: f64) -> String {
    let v = v.clamp(-1.0, 1.0);
    let i = STOPS.windows(2).position(|w| v <= w[1].0).unwrap_or(STOPS.len() - 2);
    let ((x0, c0), (x1, c1)) = (STOPS[i], STOPS[i + 1]);
    let t = (v - x0) / (x1 - x0);
    let ch = |k: usize| (c0[k] + t * (c1[k] - c0[k])).round() as u8;
    format!("#{:02x}{:02x}{:02x}", ch(0), ch(1), ch(2))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Self-contained SVG heatmap with 2-decimal cell annotations; undefined
/// cells are hatched and labeled `NA`.
pub fn heatmap_svg(m: &CorrelationMatrix) -> String {
    let n = m.labels.len();
    let size = MARGIN + n * CELL + 20;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="11">"#
    );
    s.push_str(
        r##"<defs><pattern id="na" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)"><rect width="6" height="6" fill="#ffffff"/><line x1="0" y1="0" x2="0" y2="6" stroke="#888888" stroke-width="2"/></pattern></defs>
"##,
    );
    let _ = writeln!(s, r#"<title>{} correlation</title>"#, m.coefficient.token());
    for (i, label) in m.labels.iter().enumerate() {
        let y = MARGIN + i * CELL + CELL / 2;
        let x = MARGIN + i * CELL + CELL / 2;
        let _ = writeln!(s, r#"<text x="{}" y="{y}" text-anchor="end" dominant-baseline="middle">{}</text>"#, MARGIN - 6, escape(label));
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{}" text-anchor="start" transform="rotate(-60 {x} {})">{}</text>"#,
            MARGIN - 6,
            MARGIN - 6,
            escape(label)
        );
    }
    for (i, row) in m.values.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let (x, y) = (MARGIN + j * CELL, MARGIN + i * CELL);
            let (fill, text) = match v {
                Some(v) => (color(*v), format!("{v:.2}")),
                None => ("url(#na)".to_string(), "NA".to_string()),
            };
            let _ = writeln!(
                s,
                r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#ffffff"/><text x="{}" y="{}" text-anchor="middle" dominant-baseline="middle">{text}</text>"##,
                x + CELL / 2,
                y + CELL / 2
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Writes `<stem>.csv` and `<stem>.svg` next to `path` (any extension on
/// `path` is replaced) and returns both paths.
pub fn export_heatmap(m: &CorrelationMatrix, path: impl AsRef<Path>) -> Result<(PathBuf, PathBuf)> {
    let path = path.as_ref();
    let csv = path.with_extension("csv");
    let svg = path.with_extension("svg");
    write_atomic(&csv, m.to_csv().as_bytes())?;
    write_atomic(&svg, heatmap_svg(m).as_bytes())?;
    Ok((csv, svg))
}
