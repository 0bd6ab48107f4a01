//! Static SVG barcode plots. Output depends only on the barcode, so
//! re-rendering gives identical bytes.

use std::fmt::Write;

use harmonia_core::complex::TimeValue;
use harmonia_core::exactla::{format_scalar, to_f64, Scalar};
use harmonia_core::persistence::Barcode;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 40.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
/// Horizontal room between the largest finite time and the right margin,
/// where bars that never die end.
const TAIL: f64 = 40.0;

pub fn render(barcode: &Barcode, title: &str) -> String {
    let bars = barcode.intervals();
    let finite: Vec<&Scalar> = bars.iter().flat_map(|(b, d)| std::iter::once(b).chain(d.finite())).collect();
    let lo = finite.iter().min().map_or(0.0, |t| to_f64(t));
    let hi = finite.iter().max().map_or(1.0, |t| to_f64(t));
    let (lo_label, hi_label) = match (finite.iter().min(), finite.iter().max()) {
        (Some(a), Some(b)) => (format_scalar(a), format_scalar(b)),
        _ => ("0".to_string(), "1".to_string()),
    };
    let span = if hi > lo { hi - lo } else { 1.0 };
    let plot_right = WIDTH - RIGHT - TAIL;
    let x = |t: f64| LEFT + (t - lo) / span * (plot_right - LEFT);
    let axis_y = HEIGHT - BOTTOM;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    out.push_str(concat!(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto">"#,
        r#"<path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>"#,
        "\n"
    ));
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ =
        writeln!(out, r#"<text x="{LEFT}" y="24" font-family="sans-serif" font-size="14">{}</text>"#, escape(title));
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{LEFT}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="black"/>"#,
        WIDTH - RIGHT
    );
    let _ = writeln!(out, r#"<line class="axis" x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{axis_y}" stroke="black"/>"#);
    for (t, label) in [(lo, &lo_label), (if hi > lo { hi } else { lo + 1.0 }, &hi_label)] {
        let _ = writeln!(
            out,
            r#"<text class="tick" x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            x(t),
            axis_y + 20.0,
            escape(label)
        );
    }

    let step = (axis_y - TOP) / (bars.len() as f64 + 1.0);
    for (k, (b, d)) in bars.iter().enumerate() {
        let y = TOP + step * (k as f64 + 1.0);
        let x1 = x(to_f64(b));
        match d {
            TimeValue::Finite(d) => {
                let _ = writeln!(
                    out,
                    r#"<line class="bar" x1="{x1:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="steelblue" stroke-width="3"/>"#,
                    x(to_f64(d))
                );
            }
            TimeValue::Infinite => {
                let _ = writeln!(
                    out,
                    r#"<line class="bar" x1="{x1:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="steelblue" stroke-width="3" marker-end="url(#arrow)"/>"#,
                    WIDTH - RIGHT
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
