//! SVG figures: images of concentric circles and radial rays under an extension.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use num_complex::Complex64;

use crate::error::Result;
use crate::extension::PlaneExtension;

pub const DEFAULT_FIGURE_RADII: [f64; 8] = [0.2, 0.4, 0.6, 0.8, 1.0, 1.25, 1.6, 2.0];
pub const DEFAULT_RAYS: usize = 12;
pub const DEFAULT_SAMPLES: usize = 512;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub radii: Vec<f64>,
    pub rays: usize,
    /// Polyline vertices per circle and per ray.
    pub samples: usize,
    pub timestamp: bool,
    pub label: Option<String>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            radii: DEFAULT_FIGURE_RADII.to_vec(),
            rays: DEFAULT_RAYS,
            samples: DEFAULT_SAMPLES,
            timestamp: true,
            label: None,
        }
    }
}

struct Curve {
    class: &'static str,
    attr: String,
    points: Vec<Complex64>,
}

fn circle_image(ext: &PlaneExtension<f64>, r: f64, samples: usize) -> Result<Vec<Complex64>> {
    (0..=samples)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / samples as f64;
            ext.evaluate(Complex64::from_polar(r, theta))
        })
        .collect()
}

fn ray_image(ext: &PlaneExtension<f64>, theta: f64, r_end: f64, samples: usize) -> Result<Vec<Complex64>> {
    (0..=samples)
        .map(|j| ext.evaluate(Complex64::from_polar(r_end * j as f64 / samples as f64, theta)))
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the figure; the unit-circle image is drawn with its own emphasis.
pub fn render_svg(ext: &PlaneExtension<f64>, opts: &RenderOptions) -> Result<String> {
    let samples = opts.samples.max(2);
    let r_end = opts.radii.iter().copied().fold(1.0f64, f64::max);

    let mut curves = Vec::with_capacity(opts.radii.len() + opts.rays);
    for &r in &opts.radii {
        curves.push(Curve {
            class: if r == 1.0 { "circle seam" } else { "circle" },
            attr: format!("data-radius=\"{r}\""),
            points: circle_image(ext, r, samples)?,
        });
    }
    for k in 0..opts.rays {
        let theta = std::f64::consts::TAU * k as f64 / opts.rays as f64;
        curves.push(Curve {
            class: "ray",
            attr: format!("data-angle=\"{theta:.6}\""),
            points: ray_image(ext, theta, r_end, samples)?,
        });
    }

    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in curves.iter().flat_map(|c| c.points.iter()) {
        // SVG y grows downwards
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(-p.im);
        y1 = y1.max(-p.im);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = 0.05 * span;
    let stroke = span / 400.0;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">",
        x0 - margin,
        y0 - margin,
        (x1 - x0) + 2.0 * margin,
        (y1 - y0) + 2.0 * margin
    );
    out.push_str("<metadata>");
    let _ = write!(out, "generator: harmonic-qc {}", env!("CARGO_PKG_VERSION"));
    if let Some(label) = &opts.label {
        let _ = write!(out, "; label: {}", escape(label));
    }
    if opts.timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let _ = write!(out, "; timestamp: {secs}");
    }
    out.push_str("</metadata>\n");
    let _ = writeln!(
        out,
        "<rect x=\"{:.6}\" y=\"{:.6}\" width=\"{:.6}\" height=\"{:.6}\" fill=\"white\"/>",
        x0 - margin,
        y0 - margin,
        (x1 - x0) + 2.0 * margin,
        (y1 - y0) + 2.0 * margin
    );

    for c in &curves {
        let (color, width) = match c.class {
            "circle seam" => ("#c0392b", 3.0 * stroke),
            "circle" => ("#1f4e79", stroke),
            _ => ("#6c7a89", stroke),
        };
        let _ = write!(
            out,
            "<polyline class=\"{}\" {} fill=\"none\" stroke=\"{color}\" stroke-width=\"{width:.6}\" points=\"",
            c.class, c.attr
        );
        for (i, p) in c.points.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{:.6},{:.6}", p.re, 0.0 - p.im);
        }
        out.push_str("\"/>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
