//! SVG rendering of a region grid with optional curve overlays.

use std::io::{self, Write};

use crate::hybrid::{format_sig, RegionGrid, RegionLabel};
use crate::model::Point;

/// Pixels per plane unit.
const SCALE: f64 = 200.0;
const MARGIN: f64 = 20.0;

fn fill(label: RegionLabel) -> &'static str {
    match label {
        RegionLabel::ZA0 => "#9ecae1",
        RegionLabel::ZA1 => "#fdae6b",
        RegionLabel::ZAd => "#a1d99b",
    }
}

/// Draws one square per grid node, coloured by region, and each overlay as a
/// black polyline. `y` grows upwards in the picture.
pub fn write_region_svg<W: Write>(grid: &RegionGrid, overlays: &[Vec<Point>], mut out: W) -> io::Result<()> {
    let b = grid.bounds;
    let w = (b.xmax - b.xmin + grid.step) * SCALE + 2.0 * MARGIN;
    let h = (b.ymax - b.ymin + grid.step) * SCALE + 2.0 * MARGIN;
    let px = |x: f64| MARGIN + (x - b.xmin + 0.5 * grid.step) * SCALE;
    let py = |y: f64| h - MARGIN - (y - b.ymin + 0.5 * grid.step) * SCALE;
    let cell = grid.step * SCALE;

    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        format_sig(w, 6),
        format_sig(h, 6),
        format_sig(w, 6),
        format_sig(h, 6)
    )?;
    writeln!(out, r#"<g shape-rendering="crispEdges">"#)?;
    for r in &grid.rows {
        writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"><title>{} {}</title></rect>"#,
            format_sig(px(r.x) - 0.5 * cell, 6),
            format_sig(py(r.y) - 0.5 * cell, 6),
            format_sig(cell, 6),
            format_sig(cell, 6),
            fill(r.label),
            r.label,
            format_sig(r.cr, 6)
        )?;
    }
    writeln!(out, "</g>")?;
    for line in overlays.iter().filter(|l| l.len() > 1) {
        let pts: Vec<String> =
            line.iter().map(|p| format!("{},{}", format_sig(px(p.x), 6), format_sig(py(p.y), 6))).collect();
        writeln!(out, r#"<polyline fill="none" stroke="black" stroke-width="1.5" points="{}"/>"#, pts.join(" "))?;
    }
    writeln!(out, "</svg>")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hybrid::{region_map, Bounds};

    #[test]
    fn one_rect_per_node_and_closed_document() {
        let grid = region_map(Bounds::new(0.0, 1.0, 0.0, 0.5).unwrap(), 0.25).unwrap();
        let mut buf = Vec::new();
        let overlay = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.5)];
        write_region_svg(&grid, &[overlay], &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.matches("<rect").count(), grid.rows.len());
        assert_eq!(s.matches("<polyline").count(), 1);
        assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    }
}
