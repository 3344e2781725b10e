//! SVG rendering: the spine is the line y = 0, spine item `i` sits at x = `i`
//! and every half-arc is a semicircle over its span. Screen y grows
//! downwards, so the upper page has negative y.

use std::fmt::Write;

use biarc_core::diagram::{ArcDiagram, Item, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SvgOptions {
    /// Pixels per spine index; even, so that radii stay integral.
    pub unit: u32,
    pub labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { unit: 40, labels: true }
    }
}

/// Arc command from `(x0, 0)` to `(x1, 0)` with `x0 < x1` on the given page.
fn half(unit: i64, x0: i64, x1: i64, upper: bool) -> String {
    let r = (x1 - x0) * unit / 2;
    // sweep 1 runs clockwise on screen, i.e. over the top from left to right
    format!("A {r} {r} 0 0 {} {} 0", u8::from(upper), x1 * unit)
}

pub fn render_svg(d: &ArcDiagram, opts: &SvgOptions) -> String {
    let unit = i64::from(opts.unit.max(2) & !1);
    let len = d.len().max(1) as i64;
    let span_max = d
        .edges()
        .map(|(e, _)| (d.vpos(e.0) as i64 - d.vpos(e.1) as i64).abs())
        .max()
        .unwrap_or(1);
    let margin = unit;
    let width = (len - 1) * unit + 2 * margin;
    let half_h = span_max * unit / 2 + margin;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{}" viewBox="{} {} {width} {}">"#,
        2 * half_h,
        -margin,
        -half_h,
        2 * half_h
    );
    let _ = writeln!(s, r#"<line class="spine" x1="{}" y1="0" x2="{}" y2="0" stroke="gray"/>"#, -margin / 2, (len - 1) * unit + margin / 2);
    for (e, sh) in d.edges() {
        let (l, r) = d.ends(e);
        let (xl, xr) = (d.vpos(l) as i64, d.vpos(r) as i64);
        let mut path = format!("M {} 0 ", xl * unit);
        let class = match sh {
            Shape::Mountain => {
                path += &half(unit, xl, xr, true);
                "mountain"
            }
            Shape::Pocket => {
                path += &half(unit, xl, xr, false);
                "pocket"
            }
            Shape::Biarc | Shape::BiarcUpDown => {
                let xc = d.pos(Item::Crossing(e)).expect("biarc has a crossing") as i64;
                let first_upper = sh == Shape::BiarcUpDown;
                path += &half(unit, xl, xc, first_upper);
                path.push(' ');
                path += &half(unit, xc, xr, !first_upper);
                "biarc"
            }
        };
        let _ = writeln!(s, r#"<path class="edge {class}" data-edge="{}-{}" d="{path}" fill="none" stroke="black"/>"#, e.0, e.1);
    }
    for (i, it) in d.spine().iter().enumerate() {
        let x = i as i64 * unit;
        match *it {
            Item::Vertex(v) => {
                let _ = writeln!(s, r#"<circle class="vertex" cx="{x}" cy="0" r="{}" fill="black"/>"#, unit / 8);
                if opts.labels {
                    let _ = writeln!(s, r#"<text x="{x}" y="{}" font-size="{}" text-anchor="middle">{v}</text>"#, unit / 2, unit / 3);
                }
            }
            Item::Crossing(e) => {
                let _ = writeln!(s, r#"<circle class="crossing" data-edge="{}-{}" cx="{x}" cy="0" r="{}" fill="red"/>"#, e.0, e.1, unit / 16);
            }
        }
    }
    s.push_str("</svg>\n");
    s
}
