//! Static SVG figures of perfect matchings: the diamond's cell grid in
//! light gray, vertices as dots, dimers as thick segments.

use lamdet::aztec::{AztecGraph, PerfectMatching};

const SCALE: f64 = 28.0;
const MARGIN: f64 = 20.0;

pub fn render_matching(m: &PerfectMatching) -> String {
    let n = m.order() as i32;
    let g = AztecGraph::new(m.order());
    let size = 2.0 * (n as f64 + 1.0) * SCALE + 2.0 * MARGIN;
    let center = size / 2.0;
    // vertex (i, j) sits at (i + 1/2, j + 1/2); flip y for screen space
    let vx = |i: i32| center + (i as f64 + 0.5) * SCALE;
    let vy = |j: i32| center - (j as f64 + 0.5) * SCALE;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>\n"
    ));
    // face cells
    for f in g.faces() {
        let x = center + (f.0 as f64 - 0.5) * SCALE;
        let y = center - (f.1 as f64 + 0.5) * SCALE;
        let fill = if g.is_boundary_face(f) { "#eeeeee" } else { "none" };
        out.push_str(&format!(
            "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{SCALE}\" height=\"{SCALE}\" \
             fill=\"{fill}\" stroke=\"#cccccc\" stroke-width=\"0.7\"/>\n"
        ));
    }
    // dimers
    for e in m.dimers() {
        out.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" \
             stroke=\"#2255cc\" stroke-width=\"6\" stroke-linecap=\"round\"/>\n",
            vx(e.0 .0),
            vy(e.0 .1),
            vx(e.1 .0),
            vy(e.1 .1)
        ));
    }
    // vertices
    for v in g.vertices() {
        out.push_str(&format!(
            "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"2.6\" fill=\"black\"/>\n",
            vx(v.0),
            vy(v.1)
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svg_is_well_formed_and_complete() {
        let m = lamdet::aztec::enumerate_matchings(2).unwrap().remove(0);
        let svg = render_matching(&m);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        // 6 dimers and 12 vertices at order 2
        assert_eq!(svg.matches("<line").count(), 6);
        assert_eq!(svg.matches("<circle").count(), 12);
    }
}
