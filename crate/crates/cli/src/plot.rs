//! Minimal SVG bar chart for histograms.

use std::collections::BTreeMap;
use std::io::{self, Write};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

pub fn write_bar_chart<W: Write>(
    mut out: W,
    title: &str,
    x_label: &str,
    hist: &BTreeMap<usize, u64>,
) -> io::Result<()> {
    let x_max = hist.keys().copied().max().unwrap_or(0).max(1);
    let y_max = hist.values().copied().max().unwrap_or(0).max(1) as f64;
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let bar_w = plot_w / (x_max + 1) as f64;

    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    )?;
    writeln!(out, r#"<text x="{}" y="20" text-anchor="middle">{title}</text>"#, WIDTH / 2.0)?;
    writeln!(
        out,
        r#"<line x1="{MARGIN}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#,
        HEIGHT - MARGIN,
        WIDTH - MARGIN
    )?;
    writeln!(
        out,
        r#"<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{}" stroke="black"/>"#,
        HEIGHT - MARGIN
    )?;
    for (&k, &c) in hist {
        let h = c as f64 / y_max * plot_h;
        let x = MARGIN + k as f64 * bar_w;
        let y = HEIGHT - MARGIN - h;
        writeln!(
            out,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{h:.2}" fill="steelblue"><title>{k}: {c}</title></rect>"#,
            (bar_w * 0.9).max(0.5)
        )?;
    }
    writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{x_label}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    )?;
    writeln!(out, r#"<text x="{MARGIN}" y="{}" text-anchor="end">{y_max}</text>"#, MARGIN - 5.0)?;
    writeln!(out, "</svg>")?;
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_rect_per_bucket() {
        let hist = BTreeMap::from([(1, 1), (2, 1), (3, 1)]);
        let mut buf = Vec::new();
        write_bar_chart(&mut buf, "n=3", "weight", &hist).unwrap();
        let svg = String::from_utf8(buf).unwrap();
        assert_eq!(svg.matches("<rect").count(), 3);
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
