//! Static SVG rendering of a Newton polygon: lattice grid, support points,
//! the hull outline, and labeled outward edge normals.

use std::fmt::Write;

use tamedec_core::newton::{directions, hull, NewtonError};
use tamedec_core::poly::BiPoly;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 60.0;

/// Renders the Newton polygon of a nonzero polynomial as an SVG 1.1 figure.
pub fn polygon_svg(p: &BiPoly) -> Result<String, NewtonError> {
    let h = hull(p)?;
    let dirs = directions(p)?;
    let max_i = p.support().map(|m| m.i).max().unwrap() as f64;
    let max_j = p.support().map(|m| m.j).max().unwrap() as f64;
    let width = max_i * SCALE + 2.0 * MARGIN;
    let height = max_j * SCALE + 2.0 * MARGIN;
    let tx = |i: f64| MARGIN + i * SCALE;
    let ty = |j: f64| height - MARGIN - j * SCALE;

    let mut out = String::new();
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "  <g fill=\"#c8c8c8\">");
    for i in 0..=(max_i as u32) {
        for j in 0..=(max_j as u32) {
            let _ = writeln!(
                out,
                "    <circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"1.5\"/>",
                tx(i as f64),
                ty(j as f64)
            );
        }
    }
    let _ = writeln!(out, "  </g>");

    // hull outline: polygon, segment or single point
    let verts = &h.vertices;
    match verts.len() {
        1 => {
            let _ = writeln!(
                out,
                "  <circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"5\" fill=\"none\" stroke=\"black\"/>",
                tx(verts[0].i as f64),
                ty(verts[0].j as f64)
            );
        }
        2 => {
            let _ = writeln!(
                out,
                "  <line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\" stroke-width=\"1.5\"/>",
                tx(verts[0].i as f64),
                ty(verts[0].j as f64),
                tx(verts[1].i as f64),
                ty(verts[1].j as f64)
            );
        }
        _ => {
            let points: Vec<String> = verts
                .iter()
                .map(|v| format!("{:.1},{:.1}", tx(v.i as f64), ty(v.j as f64)))
                .collect();
            let _ = writeln!(
                out,
                "  <polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>",
                points.join(" ")
            );
        }
    }

    // support points
    let _ = writeln!(out, "  <g fill=\"#1f4e8c\">");
    for m in p.support() {
        let _ = writeln!(
            out,
            "    <circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3.5\"/>",
            tx(m.i as f64),
            ty(m.j as f64)
        );
    }
    let _ = writeln!(out, "  </g>");

    // outward normals at edge midpoints, with direction labels
    for (edge, d) in h.edges().iter().zip(&dirs) {
        let (a, b) = edge;
        let mx = (a.i as f64 + b.i as f64) / 2.0;
        let my = (a.j as f64 + b.j as f64) / 2.0;
        let len = ((d.rho * d.rho + d.sigma * d.sigma) as f64).sqrt();
        let ux = d.rho as f64 / len;
        let uy = d.sigma as f64 / len;
        let x1 = tx(mx);
        let y1 = ty(my);
        let x2 = tx(mx + 0.7 * ux);
        let y2 = ty(my + 0.7 * uy);
        let _ = writeln!(
            out,
            "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"#b03030\" stroke-width=\"1.2\"/>"
        );
        let _ = writeln!(
            out,
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" fill=\"#b03030\">({},{})</text>",
            tx(mx + 0.85 * ux),
            ty(my + 0.85 * uy),
            d.rho,
            d.sigma
        );
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn renders_hull_and_normals() {
        let p = parse_poly("(y+x^2)^2 + x").unwrap();
        let svg = polygon_svg(&p).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<polygon"));
        assert!(svg.contains("(1,2)"));
        assert!(svg.contains("(0,-1)"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn degenerate_hulls_render() {
        let point = parse_poly("x^3*y").unwrap();
        assert!(polygon_svg(&point).unwrap().contains("<circle"));
        let segment = parse_poly("y + x^2").unwrap();
        assert!(polygon_svg(&segment).unwrap().contains("<line"));
        assert!(polygon_svg(&BiPoly::zero()).is_err());
    }
}
