//! Figure emission for boundary packings: SVG for circle-dimensional
//! boundaries and a JSON listing for any dimension.

use serde::Serialize;
use serde_json::json;

use super::{PackingGeometry, SphereShape};
use crate::error::{Error, Result};

/// Output format of the render operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
    Json,
}

#[derive(Serialize)]
struct SphereRow<'a> {
    #[serde(flatten)]
    shape: &'a SphereShape,
    source_root: &'a crate::lattice::LatticeVector,
    #[serde(serialize_with = "crate::lattice::serialize_int")]
    height: crate::lattice::Int,
}

/// JSON listing of the packing: one row per wall in chamber order.
pub fn render_json(geometry: &PackingGeometry) -> Result<String> {
    let rows: Vec<SphereRow> = geometry
        .spheres
        .iter()
        .map(|s| SphereRow {
            shape: &s.shape,
            source_root: &s.source.vec,
            height: s.source.height.clone(),
        })
        .collect();
    let doc = json!({
        "scale": geometry.scale,
        "spheres": rows,
    });
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// SVG drawing: one element per wall in chamber order, view box fitted to
/// the finite circles with a 5% margin. Only for 2-dimensional boundaries.
pub fn render_svg(geometry: &PackingGeometry) -> Result<String> {
    if geometry.frame.boundary_dim() != 2 {
        return Err(Error::RenderDimension {
            got: geometry.frame.boundary_dim(),
        });
    }
    // bounding box over finite circles
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for s in &geometry.spheres {
        if let SphereShape::Sphere { center, radius, .. } = &s.shape {
            for k in 0..2 {
                lo[k] = lo[k].min(center[k] - radius);
                hi[k] = hi[k].max(center[k] + radius);
            }
        }
    }
    if !lo[0].is_finite() {
        lo = [-2.0, -2.0];
        hi = [2.0, 2.0];
    }
    let span = ((hi[0] - lo[0]).max(hi[1] - lo[1])).max(1e-6);
    let margin = 0.05 * span;
    let min_x = lo[0] - margin;
    let min_y = lo[1] - margin;
    let width = hi[0] - lo[0] + 2.0 * margin;
    let height = hi[1] - lo[1] + 2.0 * margin;
    let stroke = 0.004 * span;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{min_x} {min_y} {width} {height}\">\n"
    ));
    for s in &geometry.spheres {
        match &s.shape {
            SphereShape::Sphere { center, radius, .. } => {
                out.push_str(&format!(
                    "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\"/>\n",
                    center[0], center[1], radius
                ));
            }
            SphereShape::Plane { normal, offset } => {
                if let Some(((x1, y1), (x2, y2))) =
                    clip_line_to_box(normal, *offset, min_x, min_y, width, height)
                {
                    out.push_str(&format!(
                        "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"black\" stroke-width=\"{stroke}\"/>\n"
                    ));
                }
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Intersection segment of the line {u : n.u = offset} with a rectangle.
fn clip_line_to_box(
    normal: &[f64],
    offset: f64,
    min_x: f64,
    min_y: f64,
    width: f64,
    height: f64,
) -> Option<((f64, f64), (f64, f64))> {
    let max_x = min_x + width;
    let max_y = min_y + height;
    let mut hits: Vec<(f64, f64)> = Vec::new();
    let (nx, ny) = (normal[0], normal[1]);
    // intersect with the four edges
    if ny.abs() > 1e-12 {
        for x in [min_x, max_x] {
            let y = (offset - nx * x) / ny;
            if y >= min_y - 1e-9 && y <= max_y + 1e-9 {
                hits.push((x, y));
            }
        }
    }
    if nx.abs() > 1e-12 {
        for y in [min_y, max_y] {
            let x = (offset - ny * y) / nx;
            if x >= min_x - 1e-9 && x <= max_x + 1e-9 {
                hits.push((x, y));
            }
        }
    }
    hits.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
    if hits.len() >= 2 {
        Some((hits[0], hits[1]))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chamber::{find_interior_point, vinberg_walls};
    use crate::lattice::{GramLattice, LatticeVector};

    fn y2_geometry(height: u64) -> PackingGeometry {
        let l = GramLattice::from_i64(&[
            &[-2, 2, 2, 4],
            &[2, -2, 2, 4],
            &[2, 2, -2, 0],
            &[4, 4, 0, 0],
        ])
        .unwrap();
        let a = find_interior_point(&l).unwrap();
        let chamber = vinberg_walls(&l, &a, height).unwrap();
        PackingGeometry::new(&chamber, &LatticeVector::basis(4, 3)).unwrap()
    }

    #[test]
    fn svg_contains_all_walls() {
        let geom = y2_geometry(20);
        let svg = render_svg(&geom).unwrap();
        let circles = svg.matches("<circle").count();
        let lines = svg.matches("<line").count();
        assert!(circles >= 4);
        assert_eq!(circles + lines, geom.spheres.len());
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn empty_packing_renders_valid_svg() {
        let l = GramLattice::from_i64(&[
            &[2, 0, 0, 0],
            &[0, -8, 0, 0],
            &[0, 0, -8, 0],
            &[0, 0, 0, -8],
        ])
        .unwrap();
        let a = find_interior_point(&l).unwrap();
        let chamber = vinberg_walls(&l, &a, 10).unwrap();
        // this lattice has isotropic classes, so a frame exists
        let classes = crate::lattice::enumerate_isotropic(&l, &a, 10).unwrap();
        let geom = PackingGeometry::new(&chamber, &classes[0].vec).unwrap();
        let svg = render_svg(&geom).unwrap();
        assert!(svg.contains("<svg"));
        assert_eq!(svg.matches("<circle").count(), 0);
    }

    #[test]
    fn json_round_trips_bit_identically() {
        let geom = y2_geometry(12);
        let first = render_json(&geom).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
        let second = serde_json::to_string_pretty(&parsed).unwrap();
        assert_eq!(first, second);
        let spheres = parsed["spheres"].as_array().unwrap();
        assert_eq!(spheres.len(), geom.spheres.len());
    }

    #[test]
    fn svg_is_deterministic() {
        let a = render_svg(&y2_geometry(12)).unwrap();
        let b = render_svg(&y2_geometry(12)).unwrap();
        assert_eq!(a, b);
    }
}
