//! Ropes, dual ropes, flips and the coordinated primal-dual sweep.
//!
//! A dual rope is stored as the sequence of primal edges it crosses, from
//! `s*` to `t*`. It is kept alongside the rope rather than derived from it,
//! so the hugging check is a genuine cross-check of both structures.

use serde::Serialize;

use crate::error::SweepError;
use crate::graph::{ArrangementGraph, Rope};

/// An `s*`–`t*` path in the dual graph, as the primal edges it crosses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualRope {
    pub edges: Vec<usize>,
}

impl DualRope {
    /// The dual rope through all faces incident to `s`, top to bottom.
    pub fn initial(g: &ArrangementGraph) -> Self {
        Self {
            edges: g.vertex(g.s()).out_edges.clone(),
        }
    }

    /// Dual vertices visited, starting at `s*`.
    pub fn nodes(&self, g: &ArrangementGraph) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        out.push(g.s_star());
        out.extend(self.edges.iter().map(|&e| g.edge(e).right_face));
        out
    }

    pub fn is_valid(&self, g: &ArrangementGraph) -> bool {
        let mut at = g.s_star();
        for &e in &self.edges {
            if e >= g.edge_count() || g.edge(e).left_face != at {
                return false;
            }
            at = g.edge(e).right_face;
        }
        at == g.t_star()
    }
}

/// Replaces the bottom chain of inner face `face` on the rope by its top chain.
pub fn flip_face(g: &ArrangementGraph, rope: &Rope, face: usize) -> Result<Rope, SweepError> {
    if !g.is_inner_face(face) {
        return Err(SweepError::NotInnerFace(face));
    }
    let f = g.face(face);
    let start = rope
        .edges
        .iter()
        .position(|&e| e == f.bottom_chain[0])
        .ok_or(SweepError::BottomChainNotOnRope(face))?;
    let end = start + f.bottom_chain.len();
    if end > rope.edges.len() || rope.edges[start..end] != f.bottom_chain[..] {
        return Err(SweepError::BottomChainNotOnRope(face));
    }
    let mut edges = Vec::with_capacity(rope.edges.len() + f.top_chain.len() - f.bottom_chain.len());
    edges.extend_from_slice(&rope.edges[..start]);
    edges.extend_from_slice(&f.top_chain);
    edges.extend_from_slice(&rope.edges[end..]);
    Ok(Rope { edges })
}

/// Moves the dual rope from the incoming to the outgoing edges of `v`.
pub fn flip_vertex(g: &ArrangementGraph, dual: &DualRope, v: usize) -> Result<DualRope, SweepError> {
    if v == g.s() || v == g.t() {
        return Err(SweepError::TerminalVertex(v));
    }
    let vx = g.vertex(v);
    let start = dual
        .edges
        .iter()
        .position(|&e| e == vx.in_edges[0])
        .ok_or(SweepError::PreconditionNotMet(v))?;
    let end = start + vx.in_edges.len();
    if end > dual.edges.len() || dual.edges[start..end] != vx.in_edges[..] {
        return Err(SweepError::PreconditionNotMet(v));
    }
    let mut edges = dual.edges.clone();
    edges.splice(start..end, vx.out_edges.iter().copied());
    Ok(DualRope { edges })
}

/// Positions `(in rope, in dual rope)` of the unique edge crossed by both.
pub fn crossing(g: &ArrangementGraph, rope: &Rope, dual: &DualRope) -> Result<(usize, usize), SweepError> {
    let mut in_dual = vec![usize::MAX; g.edge_count()];
    for (j, &e) in dual.edges.iter().enumerate() {
        in_dual[e] = j;
    }
    let hits: Vec<(usize, usize)> = rope
        .edges
        .iter()
        .enumerate()
        .filter(|(_, &e)| in_dual[e] != usize::MAX)
        .map(|(i, &e)| (i, in_dual[e]))
        .collect();
    match hits.len() {
        0 => Err(SweepError::NoCrossing),
        1 => Ok(hits[0]),
        k => Err(SweepError::MultipleCrossings(k)),
    }
}

/// One violated hugging condition (numbered 1 to 4) at the given primal edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HuggingViolation {
    pub condition: u8,
    pub edge: usize,
}

/// Evaluates the four hugging conditions edge by edge.
///
/// Before the crossing point the face left of each rope edge must be on the
/// dual rope (1) and the tail of each crossed edge must be on the rope (3);
/// after it, the face right of each rope edge (2) and the head of each crossed
/// edge (4). The active edge belongs to both halves.
pub fn check_hugging(g: &ArrangementGraph, rope: &Rope, dual: &DualRope) -> Result<Vec<HuggingViolation>, SweepError> {
    let (a, j) = crossing(g, rope, dual)?;
    let mut on_dual = vec![false; g.face_count() + 2];
    for node in dual.nodes(g) {
        on_dual[node] = true;
    }
    let mut on_rope = vec![false; g.vertex_count()];
    for v in rope.vertices(g) {
        on_rope[v] = true;
    }
    let mut out = Vec::new();
    for (i, &e) in rope.edges.iter().enumerate() {
        let edge = g.edge(e);
        if i <= a && !on_dual[edge.left_face] {
            out.push(HuggingViolation { condition: 1, edge: e });
        }
        if i >= a && !on_dual[edge.right_face] {
            out.push(HuggingViolation { condition: 2, edge: e });
        }
    }
    for (i, &e) in dual.edges.iter().enumerate() {
        let edge = g.edge(e);
        if i <= j && !on_rope[edge.tail] {
            out.push(HuggingViolation { condition: 3, edge: e });
        }
        if i >= j && !on_rope[edge.head] {
            out.push(HuggingViolation { condition: 4, edge: e });
        }
    }
    Ok(out)
}

/// Structural claims that hold in every state of the primal-dual sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "claim", rename_all = "snake_case")]
pub enum ClaimViolation {
    /// A rope edge before the active edge is not the top incoming edge of its head.
    NotTopIncoming { edge: usize },
    /// A rope edge after the active edge is not the bottom outgoing edge of its tail.
    NotBottomOutgoing { edge: usize },
    /// Before the crossing point the dual rope enters a face off the first top edge.
    NotFirstTopEdge { edge: usize },
    /// After the crossing point the dual rope leaves a face off the last bottom edge.
    NotLastBottomEdge { edge: usize },
    /// Pseudoline index decreases along the rope before the crossing point.
    IndexDecreases { edge: usize },
    /// A pseudoline is encountered twice before the crossing point.
    RepeatedEncounter { line: usize },
}

pub fn check_claims(g: &ArrangementGraph, rope: &Rope, dual: &DualRope) -> Result<Vec<ClaimViolation>, SweepError> {
    let (a, j) = crossing(g, rope, dual)?;
    let mut out = Vec::new();
    for (i, &e) in rope.edges.iter().enumerate() {
        let edge = g.edge(e);
        if i < a && g.top_incoming(edge.head) != Some(e) {
            out.push(ClaimViolation::NotTopIncoming { edge: e });
        }
        if i > a && g.bottom_outgoing(edge.tail) != Some(e) {
            out.push(ClaimViolation::NotBottomOutgoing { edge: e });
        }
    }
    for (i, &e) in dual.edges.iter().enumerate() {
        let edge = g.edge(e);
        // before the crossing, e enters its right face through that face's top chain
        if i < j && g.is_inner_face(edge.right_face) && g.face(edge.right_face).top_chain[0] != e {
            out.push(ClaimViolation::NotFirstTopEdge { edge: e });
        }
        if i > j && g.is_inner_face(edge.left_face) && g.face(edge.left_face).bottom_chain.last() != Some(&e) {
            out.push(ClaimViolation::NotLastBottomEdge { edge: e });
        }
    }
    let mut seen = vec![false; g.n() + 1];
    let mut prev: Option<usize> = None;
    for &e in &rope.edges[..=a] {
        let line = g.edge(e).index;
        match prev {
            Some(p) if line < p => out.push(ClaimViolation::IndexDecreases { edge: e }),
            Some(p) if line == p => continue,
            _ => {}
        }
        if seen[line] {
            out.push(ClaimViolation::RepeatedEncounter { line });
        }
        seen[line] = true;
        prev = Some(line);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "snake_case")]
pub enum Move {
    Face(usize),
    Vertex(usize),
}

/// Rope, dual rope and the position of the active edge in both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepState {
    pub rope: Rope,
    pub dual: DualRope,
    /// Index of the active edge in `rope.edges`.
    pub active: usize,
    /// Index of the active edge in `dual.edges`.
    pub dual_active: usize,
}

impl SweepState {
    pub fn initial(g: &ArrangementGraph) -> Self {
        let (lower, _) = g.hulls();
        let dual = DualRope::initial(g);
        let active = 0;
        let dual_active = dual.edges.len() - 1;
        debug_assert_eq!(lower.edges[0], dual.edges[dual_active]);
        Self {
            rope: lower,
            dual,
            active,
            dual_active,
        }
    }

    pub fn active_edge(&self) -> usize {
        self.rope.edges[self.active]
    }

    /// The move the sweep makes next, or `None` once the rope is the upper hull.
    pub fn next_move(&self, g: &ArrangementGraph) -> Option<Move> {
        let e = self.active_edge();
        let edge = g.edge(e);
        if edge.left_face == g.s_star() && edge.head == g.t() {
            None
        } else if g.top_incoming(edge.head) != Some(e) {
            Some(Move::Face(edge.left_face))
        } else {
            Some(Move::Vertex(edge.head))
        }
    }

    /// Applies `mv` incrementally, checking only what the move itself needs.
    fn apply(&mut self, g: &ArrangementGraph, mv: Move, step: usize) -> Result<(), SweepError> {
        let fail = |message: String| SweepError::InvariantViolation { step, message };
        match mv {
            Move::Face(f) => {
                if !g.is_inner_face(f) {
                    return Err(fail(format!("face flip across outer face {f}")));
                }
                let face = g.face(f);
                let len = face.bottom_chain.len();
                let start = (self.active + 1)
                    .checked_sub(len)
                    .ok_or_else(|| fail(format!("bottom chain of face {f} not on rope")))?;
                if self.rope.edges[start..=self.active] != face.bottom_chain[..] {
                    return Err(fail(format!("bottom chain of face {f} not on rope")));
                }
                self.rope
                    .edges
                    .splice(start..=self.active, face.top_chain.iter().copied());
                self.active = start;
                if self.dual_active == 0 || self.dual.edges[self.dual_active - 1] != face.top_chain[0] {
                    return Err(fail(format!(
                        "dual rope does not enter face {f} through its first top edge"
                    )));
                }
                self.dual_active -= 1;
            }
            Move::Vertex(v) => {
                let vx = g.vertex(v);
                let j = self.dual_active;
                if v == g.t() || j + vx.in_edges.len() > self.dual.edges.len() {
                    return Err(fail(format!("cannot flip the dual rope across {v}")));
                }
                if self.dual.edges[j..j + vx.in_edges.len()] != vx.in_edges[..] {
                    return Err(fail(format!("dual rope misses an incoming edge of {v}")));
                }
                self.dual
                    .edges
                    .splice(j..j + vx.in_edges.len(), vx.out_edges.iter().copied());
                let bottom_out = *vx.out_edges.last().expect("crossings have outgoing edges");
                if self.rope.edges.get(self.active + 1) != Some(&bottom_out) {
                    return Err(fail(format!("rope leaves {v} off its bottom outgoing edge")));
                }
                self.active += 1;
                self.dual_active = j + vx.out_edges.len() - 1;
            }
        }
        Ok(())
    }

    /// Full re-verification through the generic flip and hugging routines.
    fn verify(&self, g: &ArrangementGraph, step: usize) -> Result<(), SweepError> {
        let fail = |message: String| SweepError::InvariantViolation { step, message };
        if !self.rope.is_valid(g) {
            return Err(fail("rope is not an s-t path".into()));
        }
        if !self.dual.is_valid(g) {
            return Err(fail("dual rope is not an s*-t* path".into()));
        }
        let (a, j) = crossing(g, &self.rope, &self.dual).map_err(|e| fail(e.to_string()))?;
        if (a, j) != (self.active, self.dual_active) {
            return Err(fail(format!(
                "active edge bookkeeping ({}, {}) disagrees with crossing ({a}, {j})",
                self.active, self.dual_active
            )));
        }
        let hug = check_hugging(g, &self.rope, &self.dual).map_err(|e| fail(e.to_string()))?;
        if let Some(v) = hug.first() {
            return Err(fail(format!(
                "hugging condition {} fails at edge {}",
                v.condition, v.edge
            )));
        }
        let claims = check_claims(g, &self.rope, &self.dual).map_err(|e| fail(e.to_string()))?;
        if let Some(c) = claims.first() {
            return Err(fail(format!("claim violated: {c:?}")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SweepOptions {
    /// Re-check hugging, the structural claims and both flips after every move.
    pub verify: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    #[serde(flatten)]
    pub mv: Move,
    pub rope: Vec<usize>,
    pub rope_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepTrace {
    pub initial_rope: Vec<usize>,
    pub moves: Vec<TraceStep>,
    pub max_rope_len: usize,
    pub final_rope: Rope,
}

impl SweepTrace {
    /// Faces in the order the rope flips across them.
    pub fn face_order(&self) -> Vec<usize> {
        self.moves
            .iter()
            .filter_map(|s| match s.mv {
                Move::Face(f) => Some(f),
                Move::Vertex(_) => None,
            })
            .collect()
    }

    /// JSON lines, the first one describing the initial rope.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        let init = serde_json::json!({
            "step": 0,
            "kind": "init",
            "id": null,
            "rope": self.initial_rope,
            "rope_len": self.initial_rope.len() - 1,
        });
        out.push_str(&init.to_string());
        out.push('\n');
        for (i, s) in self.moves.iter().enumerate() {
            let (kind, id) = match s.mv {
                Move::Face(f) => ("face", f),
                Move::Vertex(v) => ("vertex", v),
            };
            let line = serde_json::json!({
                "step": i + 1,
                "kind": kind,
                "id": id,
                "rope": s.rope,
                "rope_len": s.rope_len,
            });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }

    /// Replays the moves from scratch with the generic flip routines and
    /// checks every recorded rope and length.
    pub fn replay(&self, g: &ArrangementGraph) -> Result<(), SweepError> {
        let mut rope = g.hulls().0;
        let mut dual = DualRope::initial(g);
        for (i, s) in self.moves.iter().enumerate() {
            match s.mv {
                Move::Face(f) => rope = flip_face(g, &rope, f)?,
                Move::Vertex(v) => dual = flip_vertex(g, &dual, v)?,
            }
            if rope.len() != s.rope_len || rope.vertices(g) != s.rope {
                return Err(SweepError::InvariantViolation {
                    step: i + 1,
                    message: "replayed rope differs from the trace".into(),
                });
            }
        }
        Ok(())
    }
}

/// Runs the coordinated primal-dual sweep and records every move.
pub fn primal_dual_sweep(g: &ArrangementGraph) -> Result<SweepTrace, SweepError> {
    primal_dual_sweep_with(g, SweepOptions::default())
}

pub fn primal_dual_sweep_with(g: &ArrangementGraph, opts: SweepOptions) -> Result<SweepTrace, SweepError> {
    let mut state = SweepState::initial(g);
    if opts.verify {
        state.verify(g, 0)?;
    }
    let initial_rope = state.rope.vertices(g);
    let mut max_rope_len = state.rope.len();
    let mut moves = Vec::with_capacity(g.n() * g.n());
    let mut step = 0;
    while let Some(mv) = state.next_move(g) {
        step += 1;
        let before = opts.verify.then(|| state.clone());
        state.apply(g, mv, step)?;
        if let Some(before) = before {
            // the incremental update must agree with the generic flips
            let expected = match mv {
                Move::Face(f) => (flip_face(g, &before.rope, f), Ok(before.dual.clone())),
                Move::Vertex(v) => (Ok(before.rope.clone()), flip_vertex(g, &before.dual, v)),
            };
            let ok =
                matches!(&expected.0, Ok(r) if *r == state.rope) && matches!(&expected.1, Ok(d) if *d == state.dual);
            if !ok {
                return Err(SweepError::InvariantViolation {
                    step,
                    message: format!("{mv:?} disagrees with the generic flip"),
                });
            }
            state.verify(g, step)?;
        }
        max_rope_len = max_rope_len.max(state.rope.len());
        moves.push(TraceStep {
            mv,
            rope: state.rope.vertices(g),
            rope_len: state.rope.len(),
        });
    }
    if state.rope.edges != g.upper_hull() {
        return Err(SweepError::InvariantViolation {
            step,
            message: "sweep stopped before reaching the upper hull".into(),
        });
    }
    Ok(SweepTrace {
        initial_rope,
        moves,
        max_rope_len,
        final_rope: state.rope,
    })
}

/// Maximum rope length of the primal-dual sweep, without recording a trace.
pub fn primal_dual_max(g: &ArrangementGraph) -> Result<usize, SweepError> {
    let mut state = SweepState::initial(g);
    let mut max_len = state.rope.len();
    let mut step = 0;
    while let Some(mv) = state.next_move(g) {
        step += 1;
        state.apply(g, mv, step)?;
        max_len = max_len.max(state.rope.len());
    }
    Ok(max_len)
}
