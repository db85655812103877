//! SVG rendering of a scene, its sample points and a realized path.

use std::fmt::Write;

use zos::engine::{Medium, StructureB, WeightedPath};
use zos::geom::{Bbox, Point};
use zos::scene::RegionKind;

pub fn render(b: &StructureB, path: Option<&WeightedPath>) -> String {
    let mut bb = b.scene.bbox();
    if let Some(p) = path {
        for seg in &p.segments {
            for &q in &seg.points {
                bb.add(q);
            }
        }
    }
    if bb.is_empty() {
        bb = Bbox::from_points([Point::ORIGIN, Point::new(1.0, 1.0)]);
    }
    let pad = 0.05 * bb.diagonal().max(1e-9);
    let bb = bb.inflate(pad);
    let (w, h) = (bb.max.x - bb.min.x, bb.max.y - bb.min.y);
    let stroke = 0.003 * bb.diagonal();
    // Flip y so the picture reads with y up.
    let tx = |p: Point| format!("{:.6},{:.6}", p.x, bb.max.y + bb.min.y - p.y);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="800" height="{:.0}">"#,
        bb.min.x,
        bb.min.y,
        w,
        h,
        800.0 * h / w
    );
    for r in &b.scene.regions {
        let pts: Vec<String> = r.shape.boundary().iter().map(|&p| tx(p)).collect();
        let (fill, line) = match r.kind {
            RegionKind::Zero => ("#cfe8cf", "#5a9a5a"),
            RegionKind::Obstacle => ("#444444", "#222222"),
        };
        let _ = writeln!(
            s,
            r#"  <polygon points="{}" fill="{fill}" stroke="{line}" stroke-width="{stroke:.6}"/>"#,
            pts.join(" ")
        );
    }
    for v in &b.vertices {
        let _ = writeln!(
            s,
            r##"  <circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="#3366cc"/>"##,
            v.location.x,
            bb.max.y + bb.min.y - v.location.y,
            1.5 * stroke
        );
    }
    if let Some(p) = path {
        for seg in &p.segments {
            let color = match seg.medium {
                Medium::Plane => "#d62728",
                Medium::ZeroRegion(_) => "#ff9f1c",
                Medium::ObstacleBoundary(_) => "#9467bd",
            };
            let pts: Vec<String> = seg.points.iter().map(|&q| tx(q)).collect();
            let _ = writeln!(
                s,
                r#"  <polyline points="{}" fill="none" stroke="{color}" stroke-width="{:.6}"/>"#,
                pts.join(" "),
                2.0 * stroke
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
