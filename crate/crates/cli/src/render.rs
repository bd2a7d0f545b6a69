//! SVG output. Coordinates are converted to floating point here only.

use std::fmt::Write;

use ktx_core::covers::Transmitter;
use ktx_core::{Point, Polygon};

pub struct Scene<'a> {
    pub polygon: &'a Polygon,
    pub transmitters: &'a [Transmitter],
    pub witnesses: &'a [Point],
    pub uncovered: &'a [Point],
}

/// The y axis is flipped so that the picture reads with y up; the viewBox is
/// the bounding box grown by 5% of its width and height on each side.
pub fn svg(scene: &Scene, metadata: &str) -> String {
    let (lo, hi) = scene.polygon.bbox();
    let (x0, y0, x1, y1) = (lo.x.to_f64(), lo.y.to_f64(), hi.x.to_f64(), hi.y.to_f64());
    let (mx, my) = (0.05 * (x1 - x0), 0.05 * (y1 - y0));
    let (w, h) = (x1 - x0 + 2.0 * mx, y1 - y0 + 2.0 * my);
    let unit = w.max(h) / 400.0;
    let pt = |p: &Point| format!("{},{}", p.fx(), -p.fy());

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        x0 - mx,
        -(y1 + my),
        w,
        h,
        (800.0 * h / w).round().max(1.0)
    );
    let _ = writeln!(s, "<metadata>{}</metadata>", escape(metadata));
    let outline: Vec<String> = scene.polygon.vertices().iter().map(pt).collect();
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="#eef2f7" stroke="#222" stroke-width="{}"/>"##,
        outline.join(" "),
        unit
    );
    for t in scene.transmitters {
        match t {
            Transmitter::Edge(e) => {
                let (a, b) = scene.polygon.edge(*e);
                let _ = writeln!(
                    s,
                    r##"<line class="edge-tx" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c0392b" stroke-width="{}" stroke-linecap="round"/>"##,
                    a.fx(),
                    -a.fy(),
                    b.fx(),
                    -b.fy(),
                    4.0 * unit
                );
            }
            Transmitter::Point(p) => {
                let _ = writeln!(
                    s,
                    r##"<circle class="point-tx" cx="{}" cy="{}" r="{}" fill="#c0392b"/>"##,
                    p.fx(),
                    -p.fy(),
                    4.0 * unit
                );
            }
        }
    }
    for p in scene.witnesses {
        let _ = writeln!(
            s,
            r##"<circle class="witness" cx="{}" cy="{}" r="{}" fill="#2471a3"/>"##,
            p.fx(),
            -p.fy(),
            2.5 * unit
        );
    }
    for p in scene.uncovered {
        let (x, y, r) = (p.fx(), -p.fy(), 3.0 * unit);
        let _ = writeln!(
            s,
            r##"<path class="uncovered" d="M{} {}L{} {}M{} {}L{} {}" stroke="#e67e22" stroke-width="{}"/>"##,
            x - r,
            y - r,
            x + r,
            y + r,
            x - r,
            y + r,
            x + r,
            y - r,
            unit
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
