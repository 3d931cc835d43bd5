//! The bipolar arrangement graph of a wiring diagram and its dual.
//!
//! Ids are deterministic:
//! * vertices: `0` is `s`, crossing `k` (0-based swap index) is `k + 1`, and
//!   `N + 1` is `t` where `N = n(n-1)/2`;
//! * edges: the `n` edges leaving `s` top to bottom get `0..n`, then each
//!   crossing creates its upper outgoing edge followed by its lower one;
//! * faces: the inner faces touching `s` get `0..n-1` top to bottom and the
//!   face opened by crossing `k` gets `n - 1 + k`.
//!
//! Dual vertices are indexed by face id, with `s*` (above the upper hull) at
//! `face_count()` and `t*` (below the lower hull) at `face_count() + 1`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::arrangement::{crossing_count, WiringDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexKind {
    Source,
    Sink,
    /// `step` is the 0-based swap index; `upper` and `lower` are the lines
    /// entering from the upper and lower track.
    Crossing {
        step: usize,
        upper: usize,
        lower: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    #[serde(flatten)]
    pub kind: VertexKind,
    /// Incoming edges ordered top to bottom.
    pub in_edges: Vec<usize>,
    /// Outgoing edges ordered top to bottom.
    pub out_edges: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    /// Label of the supporting pseudoline.
    pub index: usize,
    /// Dual vertex above the edge.
    pub left_face: usize,
    /// Dual vertex below the edge.
    pub right_face: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub source: usize,
    pub sink: usize,
    pub bottom_chain: Vec<usize>,
    pub top_chain: Vec<usize>,
}

/// The graph `G_A` with its face structure.
#[derive(Clone, Debug, Serialize)]
pub struct ArrangementGraph {
    n: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    lower_hull: Vec<usize>,
    upper_hull: Vec<usize>,
}

/// An `s`–`t` path, stored as its edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rope {
    pub edges: Vec<usize>,
}

impl Rope {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self, g: &ArrangementGraph) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        out.push(g.s());
        out.extend(self.edges.iter().map(|&e| g.edge(e).head));
        out
    }

    /// Checks that the edges form a directed path from `s` to `t`.
    pub fn is_valid(&self, g: &ArrangementGraph) -> bool {
        let mut at = g.s();
        for &e in &self.edges {
            if e >= g.edge_count() || g.edge(e).tail != at {
                return false;
            }
            at = g.edge(e).head;
        }
        at == g.t()
    }
}

impl ArrangementGraph {
    pub fn build(wd: &WiringDiagram) -> Self {
        let n = wd.n();
        let crossings = crossing_count(n);
        let face_count = crossings + n - 1;
        let s_star = face_count;
        let t_star = face_count + 1;
        let t = crossings + 1;

        let mut vertices = Vec::with_capacity(crossings + 2);
        vertices.push(Vertex {
            kind: VertexKind::Source,
            in_edges: vec![],
            out_edges: (0..n).collect(),
        });
        let mut edges: Vec<Edge> = Vec::with_capacity(n * n);
        let mut faces: Vec<Face> = (0..n - 1)
            .map(|_| Face {
                source: 0,
                sink: usize::MAX,
                bottom_chain: vec![],
                top_chain: vec![],
            })
            .collect();

        // gap g lies between tracks g and g+1 (1-based); gap 0 is s*, gap n is t*
        let mut gap_node: Vec<usize> = (0..=n)
            .map(|g| match g {
                0 => s_star,
                g if g == n => t_star,
                g => g - 1,
            })
            .collect();
        // edge currently running along each track (index = track - 1)
        let mut on_track: Vec<usize> = Vec::with_capacity(n);
        let mut line_on_track: Vec<usize> = (1..=n).collect();

        let new_edge = |edges: &mut Vec<Edge>,
                        faces: &mut Vec<Face>,
                        gap_node: &[usize],
                        tail: usize,
                        track: usize,
                        line: usize|
         -> usize {
            let id = edges.len();
            let left_face = gap_node[track - 1];
            let right_face = gap_node[track];
            edges.push(Edge {
                tail,
                head: usize::MAX,
                index: line,
                left_face,
                right_face,
            });
            if left_face < face_count {
                faces[left_face].bottom_chain.push(id);
            }
            if right_face < face_count {
                faces[right_face].top_chain.push(id);
            }
            id
        };

        for track in 1..=n {
            let e = new_edge(&mut edges, &mut faces, &gap_node, 0, track, track);
            on_track.push(e);
        }

        for (k, &p) in wd.swaps().iter().enumerate() {
            let p = p as usize;
            let v = k + 1;
            let (upper_edge, lower_edge) = (on_track[p - 1], on_track[p]);
            edges[upper_edge].head = v;
            edges[lower_edge].head = v;
            let (upper, lower) = (line_on_track[p - 1], line_on_track[p]);
            faces[gap_node[p]].sink = v;
            let face = n - 1 + k;
            debug_assert_eq!(face, faces.len());
            faces.push(Face {
                source: v,
                sink: usize::MAX,
                bottom_chain: vec![],
                top_chain: vec![],
            });
            gap_node[p] = face;
            line_on_track.swap(p - 1, p);
            let up = new_edge(&mut edges, &mut faces, &gap_node, v, p, lower);
            let down = new_edge(&mut edges, &mut faces, &gap_node, v, p + 1, upper);
            on_track[p - 1] = up;
            on_track[p] = down;
            vertices.push(Vertex {
                kind: VertexKind::Crossing { step: k, upper, lower },
                in_edges: vec![upper_edge, lower_edge],
                out_edges: vec![up, down],
            });
        }

        for &e in &on_track {
            edges[e].head = t;
        }
        for g in 1..n {
            faces[gap_node[g]].sink = t;
        }
        vertices.push(Vertex {
            kind: VertexKind::Sink,
            in_edges: on_track.clone(),
            out_edges: vec![],
        });

        let lower_hull = (0..edges.len()).filter(|&e| edges[e].right_face == t_star).collect();
        let upper_hull = (0..edges.len()).filter(|&e| edges[e].left_face == s_star).collect();

        Self {
            n,
            vertices,
            edges,
            faces,
            lower_hull,
            upper_hull,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        0
    }

    pub fn t(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn s_star(&self) -> usize {
        self.faces.len()
    }

    pub fn t_star(&self) -> usize {
        self.faces.len() + 1
    }

    pub fn is_inner_face(&self, node: usize) -> bool {
        node < self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn top_incoming(&self, v: usize) -> Option<usize> {
        self.vertices[v].in_edges.first().copied()
    }

    pub fn bottom_outgoing(&self, v: usize) -> Option<usize> {
        self.vertices[v].out_edges.last().copied()
    }

    /// `(lower, upper)` hulls as ropes.
    pub fn hulls(&self) -> (Rope, Rope) {
        (
            Rope {
                edges: self.lower_hull.clone(),
            },
            Rope {
                edges: self.upper_hull.clone(),
            },
        )
    }

    pub fn lower_hull(&self) -> &[usize] {
        &self.lower_hull
    }

    pub fn upper_hull(&self) -> &[usize] {
        &self.upper_hull
    }

    /// Fewest edges on a directed path from `u` to `v`, or `None`.
    pub fn shortest_xmonotone_path(&self, u: usize, v: usize) -> Option<usize> {
        self.shortest_path(u, v).map(|p| p.len())
    }

    /// Edges of a shortest directed path from `u` to `v`.
    pub fn shortest_path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let mut via = vec![usize::MAX; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                let mut path = Vec::new();
                let mut at = v;
                while at != u {
                    let e = via[at];
                    path.push(e);
                    at = self.edges[e].tail;
                }
                path.reverse();
                return Some(path);
            }
            for &e in &self.vertices[x].out_edges {
                let h = self.edges[e].head;
                if !seen[h] {
                    seen[h] = true;
                    via[h] = e;
                    queue.push_back(h);
                }
            }
        }
        None
    }

    /// Vertices in a topological order, if the graph is acyclic.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = self.vertices.iter().map(|v| v.in_edges.len()).collect();
        let mut ready: Vec<usize> = (0..self.vertices.len()).filter(|&v| indeg[v] == 0).collect();
        let mut out = Vec::with_capacity(self.vertices.len());
        while let Some(v) = ready.pop() {
            out.push(v);
            for &e in &self.vertices[v].out_edges {
                let h = self.edges[e].head;
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    ready.push(h);
                }
            }
        }
        (out.len() == self.vertices.len()).then_some(out)
    }

    /// JSON debug dump with stable field names.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "s": self.s(),
            "t": self.t(),
            "s_star": self.s_star(),
            "t_star": self.t_star(),
            "vertices": self.vertices,
            "edges": self.edges,
            "faces": self.faces,
        })
    }
}

/// The dual bipolar orientation `G_A*`; dual edge `i` crosses primal edge `i`.
#[derive(Clone, Debug)]
pub struct DualGraph {
    node_count: usize,
    s_star: usize,
    t_star: usize,
    edges: Vec<(usize, usize)>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl DualGraph {
    pub fn build(g: &ArrangementGraph) -> Self {
        let node_count = g.face_count() + 2;
        let mut out_edges = vec![Vec::new(); node_count];
        let mut in_edges = vec![Vec::new(); node_count];
        let edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                out_edges[e.left_face].push(i);
                in_edges[e.right_face].push(i);
                (e.left_face, e.right_face)
            })
            .collect();
        Self {
            node_count,
            s_star: g.s_star(),
            t_star: g.t_star(),
            edges,
            out_edges,
            in_edges,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn s_star(&self) -> usize {
        self.s_star
    }

    pub fn t_star(&self) -> usize {
        self.t_star
    }

    /// `(tail, head)` of the dual of primal edge `e`.
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn out_edges(&self, node: usize) -> &[usize] {
        &self.out_edges[node]
    }

    pub fn in_edges(&self, node: usize) -> &[usize] {
        &self.in_edges[node]
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.node_count).filter(|&v| self.in_edges[v].is_empty()).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.node_count).filter(|&v| self.out_edges[v].is_empty()).collect()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = self.in_edges.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..self.node_count).filter(|&v| indeg[v] == 0).collect();
        let mut out = Vec::with_capacity(self.node_count);
        while let Some(v) = ready.pop() {
            out.push(v);
            for &e in &self.out_edges[v] {
                let h = self.edges[e].1;
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    ready.push(h);
                }
            }
        }
        (out.len() == self.node_count).then_some(out)
    }
}
