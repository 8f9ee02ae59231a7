//! SVG 1.1 output. The complex plane is drawn with the imaginary axis
//! pointing up.

use std::fmt::Write as _;

use num_complex::Complex64;
use polyshape::design::{LambdaRegion, RegionKind};

const MARGIN: f64 = 0.05;
const FIRST_OPACITY: f64 = 0.15;
const LAST_OPACITY: f64 = 1.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

fn header(out: &mut String, min: Complex64, max: Complex64) -> f64 {
    let width = (max.re - min.re).max(1e-12);
    let height = (max.im - min.im).max(1e-12);
    let pad = MARGIN * width.max(height);
    writeln!(
        out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"600\" height=\"600\">",
        min.re - pad,
        -max.im - pad,
        width + 2.0 * pad,
        height + 2.0 * pad,
    )
    .unwrap();
    // Stroke width that reads as about one pixel at the default size.
    (width.max(height) + 2.0 * pad) / 600.0
}

fn points(vertices: &[Complex64]) -> String {
    vertices
        .iter()
        .map(|z| format!("{},{}", z.re, -z.im))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One closed polyline per frame. Opacity ramps linearly from the first
/// frame to the last; the view box covers every frame plus a 5% margin.
pub fn trajectory(frames: &[Vec<Complex64>]) -> String {
    let all = frames.iter().flatten();
    let min = all
        .clone()
        .fold(Complex64::new(f64::INFINITY, f64::INFINITY), |m, z| {
            Complex64::new(m.re.min(z.re), m.im.min(z.im))
        });
    let max = all.fold(
        Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        |m, z| Complex64::new(m.re.max(z.re), m.im.max(z.im)),
    );
    let mut out = String::new();
    let stroke = header(&mut out, min, max);
    let last = frames.len().saturating_sub(1).max(1) as f64;
    for (k, frame) in frames.iter().enumerate() {
        let opacity = FIRST_OPACITY + (LAST_OPACITY - FIRST_OPACITY) * k as f64 / last;
        writeln!(
            out,
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{stroke}\" stroke-opacity=\"{opacity:.4}\"/>",
            points(frame),
            COLORS[0],
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

/// Path covering `region ∩ box`, or `None` when that is empty.
fn region_path(region: &LambdaRegion, extent: f64) -> Option<String> {
    let e = extent;
    let square = format!("M {} {} H {} V {} H {} Z", -e, -e, e, e, -e);
    let circle = |c: Complex64, r: f64| {
        let (x, y) = (c.re, -c.im);
        format!(
            "M {} {} A {r} {r} 0 1 0 {} {y} A {r} {r} 0 1 0 {} {y} Z",
            x - r,
            y,
            x + r,
            x - r
        )
    };
    match region.kind {
        RegionKind::Empty => None,
        RegionKind::CircleExterior => Some(format!(
            "{square} {}",
            circle(region.omega?, region.radius()?)
        )),
        RegionKind::CircleInterior => Some(circle(region.omega?, region.radius()?)),
        RegionKind::HalfPlane => {
            let d = region.direction?;
            let corners = [
                Complex64::new(-e, -e),
                Complex64::new(e, -e),
                Complex64::new(e, e),
                Complex64::new(-e, e),
            ];
            let clipped = clip_half_plane(&corners, d);
            if clipped.len() < 3 {
                return None;
            }
            let mut path = String::new();
            for (i, z) in clipped.iter().enumerate() {
                write!(
                    path,
                    "{} {} {} ",
                    if i == 0 { "M" } else { "L" },
                    z.re,
                    -z.im
                )
                .unwrap();
            }
            path.push('Z');
            Some(path)
        }
    }
}

/// Part of a convex polygon with `Re(z · conj(d)) ≥ 0`.
fn clip_half_plane(poly: &[Complex64], d: Complex64) -> Vec<Complex64> {
    let side = |z: Complex64| (z * d.conj()).re;
    let mut out = Vec::new();
    for (i, &a) in poly.iter().enumerate() {
        let b = poly[(i + 1) % poly.len()];
        let (sa, sb) = (side(a), side(b));
        if sa >= 0.0 {
            out.push(a);
        }
        if (sa >= 0.0) != (sb >= 0.0) {
            out.push(a + (b - a) * (sa / (sa - sb)));
        }
    }
    out
}

/// Each region lightly shaded in its own color over `[-extent, extent]²`,
/// and their intersection in black.
pub fn regions(regions: &[LambdaRegion], extent: f64) -> String {
    let mut out = String::new();
    let stroke = header(
        &mut out,
        Complex64::new(-extent, -extent),
        Complex64::new(extent, extent),
    );
    out.push_str("  <defs>\n");
    let paths: Vec<Option<String>> = regions.iter().map(|r| region_path(r, extent)).collect();
    for (i, path) in paths.iter().enumerate() {
        writeln!(
            out,
            "    <clipPath id=\"region{i}\"><path clip-rule=\"evenodd\" d=\"{}\"/></clipPath>",
            path.as_deref().unwrap_or("")
        )
        .unwrap();
    }
    out.push_str("  </defs>\n");
    for (i, path) in paths.iter().enumerate() {
        if let Some(path) = path {
            writeln!(
                out,
                "  <path d=\"{path}\" fill=\"{}\" fill-opacity=\"0.2\" fill-rule=\"evenodd\"/>",
                COLORS[i % COLORS.len()]
            )
            .unwrap();
        }
    }
    if !paths.is_empty() && paths.iter().all(Option::is_some) {
        let mut inner = format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"black\" fill-opacity=\"0.5\"/>",
            -extent,
            -extent,
            2.0 * extent,
            2.0 * extent
        );
        for i in (0..paths.len()).rev() {
            inner = format!("<g clip-path=\"url(#region{i})\">{inner}</g>");
        }
        writeln!(out, "  {inner}").unwrap();
    }
    writeln!(
        out,
        "  <path d=\"M {} 0 H {} M 0 {} V {}\" stroke=\"gray\" stroke-width=\"{stroke}\"/>",
        -extent, extent, -extent, extent
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}
