//! Deterministic SVG figures of point sets.
//!
//! The base polygon (copy 0) is drawn solid and every later copy dashed.
//! Optionally the witness pairs of the richest classes are drawn as colored
//! segments, one color per class.

use std::fmt::Write as _;

use richdist_core::oracle::approx_points;
use richdist_core::{distance_spectrum, DistanceClass, PointSet};

use crate::Error;

const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

#[derive(Clone, Copy, Debug)]
pub struct SvgOptions {
    /// Canvas width in pixels; the height follows the aspect ratio.
    pub width: f64,
    /// Number of richest classes to draw.
    pub highlight: usize,
    pub draw_edges: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { width: 480.0, highlight: 0, draw_edges: true }
    }
}

/// Classes sorted by multiplicity (descending), ties by class order.
/// The `k` richest classes with their spectrum indices.
pub fn richest_classes(ps: &PointSet, k: usize) -> Vec<(usize, DistanceClass)> {
    let spec = distance_spectrum(ps);
    let mut order: Vec<usize> = (0..spec.classes().len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(spec.classes()[i].multiplicity));
    order.into_iter().take(k).map(|i| (i, spec.classes()[i].clone())).collect()
}

pub fn render_svg(ps: &PointSet, options: &SvgOptions) -> Result<String, Error> {
    if ps.is_empty() {
        return Err(Error::EmptyFigure);
    }
    let coords = approx_points(ps, 64).coords;
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &coords {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let span = (max_x - min_x).max(max_y - min_y);
    let margin = if span > 0.0 { 0.1 * span } else { 1.0 };
    let (view_w, view_h) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin);
    let scale = options.width / view_w;
    let (width, height) = (options.width, view_h * scale);
    let px: Vec<(f64, f64)> =
        coords.iter().map(|&(x, y)| ((x - min_x + margin) * scale, (max_y + margin - y) * scale)).collect();
    let line = |out: &mut String, a: usize, b: usize, attrs: &str| {
        let _ = writeln!(
            out,
            r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" {attrs}/>"#,
            px[a].0, px[a].1, px[b].0, px[b].1
        );
    };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    if options.highlight > 0 {
        out.push_str("  <g id=\"classes\" stroke-width=\"1.5\" stroke-opacity=\"0.75\">\n");
        for (rank, (index, class)) in richest_classes(ps, options.highlight).iter().enumerate() {
            let color = PALETTE[rank % PALETTE.len()];
            let mult = class.multiplicity;
            let _ = writeln!(out, "   <g stroke=\"{color}\">\n    <title>class {index}, {mult} pairs</title>");
            for &(a, b) in &class.witnesses {
                line(&mut out, a, b, "");
            }
            out.push_str("   </g>\n");
        }
        out.push_str("  </g>\n");
    }

    if options.draw_edges && !ps.copies().is_empty() {
        out.push_str("  <g id=\"edges\" stroke=\"black\" stroke-width=\"1.2\" fill=\"none\">\n");
        // copies first so shared edges show the solid base on top
        for (k, cycle) in ps.copies().iter().enumerate().skip(1) {
            let _ = writeln!(out, "   <g stroke-dasharray=\"6 4\">\n    <title>copy {k}</title>");
            for (i, &a) in cycle.iter().enumerate() {
                line(&mut out, a, cycle[(i + 1) % cycle.len()], "");
            }
            out.push_str("   </g>\n");
        }
        let base = &ps.copies()[0];
        out.push_str("   <g>\n    <title>copy 0</title>\n");
        for (i, &a) in base.iter().enumerate() {
            line(&mut out, a, base[(i + 1) % base.len()], "");
        }
        out.push_str("   </g>\n");
        out.push_str("  </g>\n");
    }

    out.push_str("  <g id=\"points\" fill=\"black\">\n");
    for (i, &(x, y)) in px.iter().enumerate() {
        let _ = writeln!(out, r#"    <circle cx="{x:.3}" cy="{y:.3}" r="3.5"><title>p{i}</title></circle>"#);
    }
    out.push_str("  </g>\n</svg>\n");
    Ok(out)
}
