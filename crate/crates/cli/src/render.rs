//! SVG drawings of wiring diagrams, ropes and highlighted faces.
//!
//! Layout: one unit column per swap, one unit row per track. Crossing `k`
//! (0-based) sits at column `k + 1`, halfway between its two tracks; `s` is
//! column 0 and `t` column `N + 1`.

use std::fmt::Write;

use ropesweep::ArrangementGraph;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 20.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
];
const ROPE_COLOR: &str = "#ff7f0e";
const FACE_FILL: &str = "#fdd49e";
/// Horizontal offset of the bends around a crossing.
const BEND: f64 = 0.3;

#[derive(Clone, Debug, Default)]
pub struct RenderOptions {
    /// Rope to overlay, as edge ids.
    pub rope: Option<Vec<usize>>,
    /// Faces to shade, each with a label.
    pub faces: Vec<(usize, String)>,
}

struct Layout<'a> {
    g: &'a ArrangementGraph,
    /// Track of each line before each column, `track[line][col]`.
    track: Vec<Vec<usize>>,
    columns: usize,
}

impl<'a> Layout<'a> {
    fn new(g: &'a ArrangementGraph, swaps: &[usize]) -> Self {
        let n = g.n();
        let mut tracks: Vec<usize> = (1..=n).collect();
        let mut track = vec![Vec::with_capacity(swaps.len() + 2); n + 1];
        let record = |tracks: &[usize], track: &mut Vec<Vec<usize>>| {
            for (i, &l) in tracks.iter().enumerate() {
                track[l].push(i + 1);
            }
        };
        record(&tracks, &mut track);
        for &p in swaps {
            tracks.swap(p - 1, p);
            record(&tracks, &mut track);
        }
        Self {
            g,
            track,
            columns: swaps.len() + 1,
        }
    }

    fn x(col: f64) -> f64 {
        MARGIN + col * UNIT
    }

    fn y(row: f64) -> f64 {
        MARGIN + (row - 1.0) * UNIT
    }

    fn width(&self) -> f64 {
        2.0 * MARGIN + self.columns as f64 * UNIT
    }

    fn height(&self) -> f64 {
        2.0 * MARGIN + (self.g.n() - 1) as f64 * UNIT
    }

    /// Column of a vertex and the track it leaves on, per line.
    fn column(&self, v: usize) -> usize {
        if v == self.g.s() {
            0
        } else if v == self.g.t() {
            self.columns
        } else {
            v
        }
    }

    /// Points along edge `e` from its tail to its head.
    fn edge_points(&self, e: usize) -> Vec<(f64, f64)> {
        let edge = self.g.edge(e);
        let line = edge.index;
        let (c0, c1) = (self.column(edge.tail), self.column(edge.head));
        // the edge runs on the track the line holds after the tail crossing
        let row = self.track[line][c0] as f64;
        let mut pts = Vec::with_capacity(4);
        if edge.tail == self.g.s() {
            pts.push((c0 as f64, row));
        } else {
            let before = self.track[line][c0 - 1] as f64;
            pts.push((c0 as f64, (row + before) / 2.0));
            pts.push((c0 as f64 + BEND, row));
        }
        if edge.head == self.g.t() {
            pts.push((c1 as f64, row));
        } else {
            let after = self.track[line][c1] as f64;
            pts.push((c1 as f64 - BEND, row));
            pts.push((c1 as f64, (row + after) / 2.0));
        }
        pts.into_iter().map(|(c, r)| (Self::x(c), Self::y(r))).collect()
    }
}

fn points_attr(pts: &[(f64, f64)]) -> String {
    pts.iter()
        .map(|(x, y)| format!("{x:.1},{y:.1}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders the diagram; output bytes depend only on the inputs.
pub fn render_svg(g: &ArrangementGraph, swaps: &[usize], opts: &RenderOptions) -> String {
    let layout = Layout::new(g, swaps);
    let mut out = String::new();
    let (w, h) = (layout.width(), layout.height());
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    )
    .unwrap();
    for (face, label) in &opts.faces {
        let f = g.face(*face);
        let mut pts: Vec<(f64, f64)> = f.bottom_chain.iter().flat_map(|&e| layout.edge_points(e)).collect();
        let mut top: Vec<(f64, f64)> = f.top_chain.iter().flat_map(|&e| layout.edge_points(e)).collect();
        top.reverse();
        pts.extend(top);
        writeln!(
            out,
            r#"  <polygon class="face" data-face="{face}" data-label="{label}" fill="{FACE_FILL}" stroke="none" points="{}"/>"#,
            points_attr(&pts)
        )
        .unwrap();
    }
    for line in 1..=g.n() {
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for (e, _) in g.edges().iter().enumerate().filter(|(_, x)| x.index == line) {
            for p in layout.edge_points(e) {
                if pts.last() != Some(&p) {
                    pts.push(p);
                }
            }
        }
        writeln!(
            out,
            r#"  <polyline class="line" data-line="{line}" fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            PALETTE[(line - 1) % PALETTE.len()],
            points_attr(&pts)
        )
        .unwrap();
    }
    if let Some(rope) = &opts.rope {
        writeln!(out, r#"  <g class="rope" data-rope-len="{}">"#, rope.len()).unwrap();
        for &e in rope {
            writeln!(
                out,
                r#"    <polyline class="rope-edge" data-edge="{e}" fill="none" stroke="{ROPE_COLOR}" stroke-width="5" stroke-opacity="0.6" points="{}"/>"#,
                points_attr(&layout.edge_points(e))
            )
            .unwrap();
        }
        writeln!(out, "  </g>").unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}

/// Rope edges from the vertex list recorded in a sweep trace.
pub fn rope_edges_from_vertices(g: &ArrangementGraph, vertices: &[usize]) -> Option<Vec<usize>> {
    vertices
        .windows(2)
        .map(|w| {
            g.vertex(w[0])
                .out_edges
                .iter()
                .copied()
                .find(|&e| g.edge(e).head == w[1])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ropesweep::WiringDiagram;

    #[test]
    fn two_lines_cross_once() {
        let wd = WiringDiagram::new(2, &[1]).unwrap();
        let g = ArrangementGraph::build(&wd);
        let svg = render_svg(&g, &wd.swap_positions(), &RenderOptions::default());
        assert_eq!(svg.matches("<polyline class=\"line\"").count(), 2);
        // both lines pass through the single crossing point
        let mid = format!("{:.1},{:.1}", MARGIN + UNIT, MARGIN + UNIT / 2.0);
        assert_eq!(svg.matches(&mid).count(), 2);
    }

    #[test]
    fn deterministic_and_rope_overlay() {
        let wd = WiringDiagram::new(3, &[1, 2, 1]).unwrap();
        let g = ArrangementGraph::build(&wd);
        let opts = RenderOptions {
            rope: Some(g.upper_hull().to_vec()),
            faces: vec![(0, "F".into())],
        };
        let a = render_svg(&g, &wd.swap_positions(), &opts);
        let b = render_svg(&g, &wd.swap_positions(), &opts);
        assert_eq!(a, b);
        assert_eq!(a.matches("rope-edge").count(), g.upper_hull().len());
        assert!(a.contains(r#"data-label="F""#));
    }

    #[test]
    fn rope_from_vertices() {
        let wd = WiringDiagram::new(3, &[1, 2, 1]).unwrap();
        let g = ArrangementGraph::build(&wd);
        let (lower, _) = g.hulls();
        let verts = lower.vertices(&g);
        assert_eq!(rope_edges_from_vertices(&g, &verts), Some(lower.edges));
    }
}
