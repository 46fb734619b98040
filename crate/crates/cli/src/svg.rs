//! Text-template SVG staircase plots of 2-variable slices.

use std::fmt::Write;

use frobkit_core::pbody::ScaledStaircase;
use num_traits::ToPrimitive;

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct SvgStyle {
    /// Side of one panel's plotting square, in pixels.
    pub panel: f64,
    pub margin: f64,
    pub fill: String,
    pub stroke: String,
    /// Fine lattice ticks are drawn only up to this many per axis.
    pub max_ticks: u64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            panel: 240.0,
            margin: 36.0,
            fill: "#c6dbef".into(),
            stroke: "#08519c".into(),
            max_ticks: 120,
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Scaled minimal generators `g / p^k`, sorted by first coordinate.
pub fn corners(s: &ScaledStaircase) -> Vec<(f64, f64)> {
    let den = (s.p as f64).powi(s.k as i32);
    let mut pts: Vec<(f64, f64)> = s
        .generators
        .iter()
        .map(|g| {
            let c = g.coords();
            (c[0].to_f64().unwrap_or(f64::MAX) / den, c[1].to_f64().unwrap_or(f64::MAX) / den)
        })
        .collect();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts
}

/// One panel per slice, each labelled by its resolution.
pub fn emit_staircase_svg(slices: &[ScaledStaircase], title: &str, style: &SvgStyle) -> Result<String, CliError> {
    if let Some(s) = slices.iter().find(|s| s.d != 2) {
        return Err(CliError::Usage(format!(
            "staircase plots need 2 variables, got {}; use --format csv",
            s.d
        )));
    }
    let all: Vec<Vec<(f64, f64)>> = slices.iter().map(corners).collect();
    // Common axis range: one unit past the largest corner coordinate.
    let top = all
        .iter()
        .flatten()
        .flat_map(|&(x, y)| [x, y])
        .fold(0.0f64, f64::max)
        .ceil()
        + 1.0;
    let cell = style.panel + 2.0 * style.margin;
    let width = cell * slices.len().max(1) as f64;
    let height = cell + 24.0;
    let unit = style.panel / top;
    let mut out = String::new();
    let w = &mut out;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(w, "  <title>{}</title>", escape(title)).unwrap();
    for (n, (s, pts)) in slices.iter().zip(&all).enumerate() {
        let ox = n as f64 * cell + style.margin;
        let oy = style.margin + 12.0;
        let sx = |x: f64| ox + x.min(top) * unit;
        let sy = |y: f64| oy + style.panel - y.min(top) * unit;
        writeln!(w, r#"  <g class="panel" data-k="{}">"#, s.k).unwrap();
        let label = format!("(1/{}^{}) log a_{}", s.p, s.k, s.k);
        writeln!(w, r#"    <text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, ox + style.panel / 2.0, oy - 8.0, escape(&label)).unwrap();
        if !pts.is_empty() {
            // Staircase boundary, then closed off through the far corner.
            let mut path = vec![(pts[0].0, top)];
            for (i, &(x, y)) in pts.iter().enumerate() {
                if i > 0 {
                    path.push((x, pts[i - 1].1));
                }
                path.push((x, y));
            }
            path.push((top, pts[pts.len() - 1].1));
            let fmt = |v: &[(f64, f64)]| {
                v.iter()
                    .map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y)))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let mut region = path.clone();
            region.push((top, top));
            writeln!(w, r#"    <polygon points="{}" fill="{}" stroke="none"/>"#, fmt(&region), style.fill).unwrap();
            writeln!(w, r#"    <polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#, fmt(&path), style.stroke).unwrap();
        }
        // Axes in units of 1.
        writeln!(w, r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black"/>"#, sx(0.0), sy(0.0), sx(top), sy(0.0)).unwrap();
        writeln!(w, r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black"/>"#, sx(0.0), sy(0.0), sx(0.0), sy(top)).unwrap();
        let fine = (s.p as u64).checked_pow(s.k).map(|q| q * top as u64);
        if let Some(count) = fine.filter(|&c| c <= style.max_ticks) {
            let step = top / count as f64;
            for i in 1..count {
                let t = i as f64 * step;
                writeln!(w, r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="gray" stroke-width="0.5"/>"#, sx(t), sy(0.0), sx(t), sy(0.0) + 3.0).unwrap();
                writeln!(w, r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="gray" stroke-width="0.5"/>"#, sx(0.0), sy(t), sx(0.0) - 3.0, sy(t)).unwrap();
            }
        }
        for i in 0..=top as u64 {
            let t = i as f64;
            writeln!(w, r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black"/>"#, sx(t), sy(0.0), sx(t), sy(0.0) + 6.0).unwrap();
            writeln!(w, r#"    <text x="{:.3}" y="{:.3}" text-anchor="middle">{i}</text>"#, sx(t), sy(0.0) + 18.0).unwrap();
            writeln!(w, r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black"/>"#, sx(0.0), sy(t), sx(0.0) - 6.0, sy(t)).unwrap();
            writeln!(w, r#"    <text x="{:.3}" y="{:.3}" text-anchor="end">{i}</text>"#, sx(0.0) - 9.0, sy(t) + 4.0).unwrap();
        }
        writeln!(w, "  </g>").unwrap();
    }
    writeln!(w, "</svg>").unwrap();
    Ok(out)
}
