//! Static SVG pictures of a point set with its hull, fence and bin rays.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::binning::BinConfig;
use crate::error::{HullError, Result};
use crate::fence::FencePointList;
use crate::geometry::{compute_center, to_polar, Hull, Point};

/// Dots beyond this count are thinned by a fixed stride.
pub const MAX_DOTS: usize = 20_000;
const MAX_RAYS: usize = 720;
const CANVAS: f64 = 1000.0;

struct Viewport {
    min_x: f64,
    max_y: f64,
    scale: f64,
    width: f64,
    height: f64,
}

impl Viewport {
    fn fit(points: &[Point]) -> Viewport {
        let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for p in points {
            min_x = min_x.min(p.x);
            max_x = max_x.max(p.x);
            min_y = min_y.min(p.y);
            max_y = max_y.max(p.y);
        }
        if points.is_empty() {
            (min_x, max_x, min_y, max_y) = (0.0, 1.0, 0.0, 1.0);
        }
        let span = (max_x - min_x).max(max_y - min_y);
        let span = if span > 0.0 { span } else { 1.0 };
        let margin = 0.05 * span;
        let scale = CANVAS / (span + 2.0 * margin);
        Viewport {
            min_x: min_x - margin,
            max_y: max_y + margin,
            scale,
            width: ((max_x - min_x) + 2.0 * margin) * scale,
            height: ((max_y - min_y) + 2.0 * margin) * scale,
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.min_x) * self.scale, (self.max_y - y) * self.scale)
    }
}

/// The SVG document as a string. `fence` entries are positions into
/// `points`; hull vertices are `Point::index` values.
pub fn svg_document(points: &[Point], hull: &Hull, fence: Option<&FencePointList>, bins: Option<&BinConfig>) -> String {
    let view = Viewport::fit(points);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.2} {h:.2}">"#,
        w = view.width,
        h = view.height
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    if let Some(config) = bins {
        if let Some(rays) = bin_rays(points, config, &view) {
            out.push_str(&rays);
        }
    }

    let stride = points.len().div_ceil(MAX_DOTS).max(1);
    let _ = writeln!(out, r##"<g class="points" fill="#444">"##);
    for p in points.iter().step_by(stride) {
        let (x, y) = view.map(p.x, p.y);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="1.5"/>"#);
    }
    out.push_str("</g>\n");

    if let Some(fence) = fence.filter(|f| !f.is_empty()) {
        let mut pts: Vec<String> = fence
            .entries
            .iter()
            .map(|e| {
                let (x, y) = view.map(points[e.index].x, points[e.index].y);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        pts.push(pts[0].clone());
        let _ = writeln!(
            out,
            r##"<polyline class="fence" points="{}" fill="none" stroke="#1f77b4" stroke-width="1"/>"##,
            pts.join(" ")
        );
    }

    if !hull.is_empty() {
        let by_index: HashMap<usize, &Point> = points.iter().map(|p| (p.index, p)).collect();
        let mut d = String::new();
        for (k, v) in hull.vertices.iter().enumerate() {
            let Some(p) = by_index.get(v) else { continue };
            let (x, y) = view.map(p.x, p.y);
            let _ = write!(d, "{}{x:.2} {y:.2} ", if k == 0 { "M" } else { "L" });
        }
        d.push('Z');
        let _ = writeln!(
            out,
            r##"<path class="hull" d="{d}" fill="none" stroke="#d62728" stroke-width="3"/>"##
        );
    }
    out.push_str("</svg>\n");
    out
}

fn bin_rays(points: &[Point], config: &BinConfig, view: &Viewport) -> Option<String> {
    let center = compute_center(points).ok()?;
    let polar = to_polar(points, &center).ok()?;
    let reach = polar.iter().map(|v| v.r).fold(0.0, f64::max) * 1.05;
    let offset = polar[0].frame_offset;
    let step = config.bin_count.div_ceil(MAX_RAYS).max(1);
    let (cx, cy) = view.map(center.x, center.y);
    let mut out = String::from(r##"<g class="bins" stroke="#cccccc" stroke-width="0.5">"##);
    out.push('\n');
    for k in (0..config.bin_count).step_by(step) {
        let t = offset + k as f64 * config.interval;
        let (x, y) = view.map(center.x + reach * t.cos(), center.y + reach * t.sin());
        let _ = writeln!(out, r#"<line x1="{cx:.2}" y1="{cy:.2}" x2="{x:.2}" y2="{y:.2}"/>"#);
    }
    out.push_str("</g>\n");
    Some(out)
}

pub fn render_svg(
    points: &[Point],
    hull: &Hull,
    fence: Option<&FencePointList>,
    bins: Option<&BinConfig>,
    path: &Path,
) -> Result<()> {
    fs::write(path, svg_document(points, hull, fence, bins)).map_err(|e| HullError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fence::FenceSource;
    use crate::geometry::to_polar;
    use crate::hulls::graham_scan;

    fn square() -> Vec<Point> {
        Point::from_coords(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.), (0.5, 0.5)])
    }

    #[test]
    fn square_hull_is_one_closed_path() {
        let p = square();
        let svg = svg_document(&p, &graham_scan(&p), None, None);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<path").count(), 1);
        let d = svg.split(r#"d=""#).nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(d.matches('L').count() + 1, 4);
        assert!(d.ends_with('Z'));
        assert!(!svg.contains("<polyline"));
        assert_eq!(svg.matches("<circle").count(), 5);
    }

    #[test]
    fn fence_and_bins_drawn() {
        let p = square();
        let c = compute_center(&p).unwrap();
        let polar = to_polar(&p, &c).unwrap();
        let fence = FencePointList::from_positions(&[0, 1, 2, 3], FenceSource::MaximalBin, &polar).unwrap();
        let svg = svg_document(&p, &graham_scan(&p), Some(&fence), Some(&BinConfig::from_degrees(45.0).unwrap()));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<line ").count(), 8);
        let empty = FencePointList::default();
        assert!(!svg_document(&p, &graham_scan(&p), Some(&empty), None).contains("<polyline"));
    }

    #[test]
    fn large_inputs_are_thinned() {
        let coords: Vec<(f64, f64)> = (0..100_000).map(|i| ((i % 317) as f64, (i / 317) as f64)).collect();
        let p = Point::from_coords(&coords);
        let hull = graham_scan(&p);
        let svg = svg_document(&p, &hull, None, None);
        assert!(svg.matches("<circle").count() <= MAX_DOTS);
        let d = svg.split(r#"d=""#).nth(1).unwrap();
        assert_eq!(d.split('"').next().unwrap().matches('L').count() + 1, hull.len());
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let p = square();
        let bad = Path::new("/nonexistent-dir/out.svg");
        assert!(matches!(render_svg(&p, &graham_scan(&p), None, None, bad), Err(HullError::Io { .. })));
    }
}
