//! Extremal arrangement families and verifiers for the structure their
//! rope-length bounds depend on.
//!
//! Lines are labeled by their track at the far left (1 = top). The
//! verifiers only query the built graph, so they apply equally to
//! instances read from files.

use serde::Serialize;

use crate::arrangement::WiringDiagram;
use crate::graph::ArrangementGraph;

/// Records swaps while tracking which line sits on which track, and which
/// face is currently open in each gap.
struct Builder {
    n: usize,
    tracks: Vec<usize>,
    word: Vec<usize>,
    /// `open[g]` is the face id open in the gap below track `g + 1`.
    open: Vec<usize>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Self {
            n,
            tracks: (1..=n).collect(),
            word: Vec::new(),
            open: (0..n - 1).collect(),
        }
    }

    /// Swaps tracks `p` and `p + 1` and returns the face the swap opens.
    fn swap(&mut self, p: usize) -> usize {
        let face = self.n - 1 + self.word.len();
        self.word.push(p);
        self.tracks.swap(p - 1, p);
        self.open[p - 1] = face;
        face
    }

    fn track_of(&self, line: usize) -> usize {
        self.tracks.iter().position(|&l| l == line).unwrap() + 1
    }

    /// Moves the line on track `from` up to track `to`.
    fn raise(&mut self, from: usize, to: usize) {
        for p in (to..from).rev() {
            self.swap(p);
        }
    }

    /// Moves the line on track `from` down to track `to`.
    fn lower(&mut self, from: usize, to: usize) {
        for p in from..to {
            self.swap(p);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundInstance {
    pub k: usize,
    #[serde(serialize_with = "word_as_string")]
    pub diagram: WiringDiagram,
    pub c: usize,
    pub c_prime: usize,
    pub reds: Vec<usize>,
    pub blues: Vec<usize>,
    pub f_left: usize,
    pub f_center: usize,
    pub f_right: usize,
}

fn word_as_string<S: serde::Serializer>(wd: &WiringDiagram, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&wd.word_string())
}

/// The five-section family on `n = 4k + 3` lines.
///
/// Left part: reds rise and blues sink until separated, `c` descends past
/// the upper `k` reds, and the block of `c` with the lower `k + 1` reds is
/// reversed by repeatedly raising its bottom line. Middle: the blue block
/// between `c` and `c'` is reversed by repeatedly lowering its top line, and
/// the upper `k` reds trade places with the lower `k` reds. The right part
/// mirrors the left.
pub fn lower_bound_family(k: usize) -> LowerBoundInstance {
    assert!(k >= 1, "the family starts at k = 1");
    let n = 4 * k + 3;
    let c = 1;
    let c_prime = n;
    let reds: Vec<usize> = (1..=2 * k + 1).map(|i| 2 * i).collect();
    let blues: Vec<usize> = (1..=2 * k).map(|j| 2 * j + 1).collect();
    let mut b = Builder::new(n);

    // section 1, reds top to bottom
    for (i, &r) in reds.iter().enumerate() {
        let from = b.track_of(r);
        b.raise(from, i + 2);
    }
    // section 2
    b.lower(1, k + 1);
    let block_bottom = 2 * k + 2;
    let mut f_center = None;
    let mut f_left = None;
    for top in k + 1..block_bottom {
        if b.tracks[block_bottom - 1] == reds[k] {
            // only c remains above r_{k+1}; the gap below is about to lose
            // its left face, and the crossing opens the center face
            f_left = Some(b.open[block_bottom - 1]);
            f_center = Some(b.swap(top));
        } else {
            b.raise(block_bottom, top);
        }
    }
    let left = b.word.clone();

    // middle, blue block tracks 2k + 2 ..= 4k + 3
    let mut f_right = None;
    for bottom in (block_bottom + 1..=n).rev() {
        if bottom == block_bottom + 1 {
            f_right = Some(b.swap(block_bottom));
        } else {
            b.lower(block_bottom, bottom);
        }
    }
    debug_assert_eq!(b.tracks[block_bottom - 1], c_prime);
    // middle, red block swap on tracks 1 ..= 2k; lowest track first
    for i in 0..k {
        b.raise(k + 1 + i, 1 + i);
    }
    // right part
    for &p in left.iter().rev() {
        b.swap(p);
    }
    let diagram = WiringDiagram::new(n, &b.word).expect("construction yields a simple arrangement");
    LowerBoundInstance {
        k,
        diagram,
        c,
        c_prime,
        reds,
        blues,
        f_left: f_left.expect("c crosses the middle red"),
        f_center: f_center.expect("c crosses the middle red"),
        f_right: f_right.expect("c' reaches the middle gap"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundCertificate {
    pub dist_s_to_left_source: usize,
    pub left_top_chain: usize,
    pub dist_left_sink_to_right_source: usize,
    pub dist_center_sink_to_t: usize,
    /// Length of the rope right after flipping `F_l` when `F_r` went first.
    pub rope_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum LowerBoundViolation {
    WrongLineCount {
        n: usize,
    },
    NotInnerFace {
        face: usize,
    },
    PathTooShort {
        property: &'static str,
        required: usize,
        found: usize,
        path: Vec<usize>,
    },
    Unreachable {
        property: &'static str,
    },
    TopChain {
        required: usize,
        found: usize,
    },
    MissingDualEdge {
        from: usize,
        to: usize,
    },
}

pub fn verify_lower_bound(inst: &LowerBoundInstance) -> Result<LowerBoundCertificate, LowerBoundViolation> {
    let k = inst.k;
    let n = inst.diagram.n();
    if n != 4 * k + 3 {
        return Err(LowerBoundViolation::WrongLineCount { n });
    }
    let g = ArrangementGraph::build(&inst.diagram);
    for face in [inst.f_left, inst.f_center, inst.f_right] {
        if !g.is_inner_face(face) {
            return Err(LowerBoundViolation::NotInnerFace { face });
        }
    }
    let (fl, fc, fr) = (g.face(inst.f_left), g.face(inst.f_center), g.face(inst.f_right));
    let path = |property: &'static str, u: usize, v: usize, required: usize| {
        let p = g
            .shortest_path(u, v)
            .ok_or(LowerBoundViolation::Unreachable { property })?;
        if p.len() < required {
            return Err(LowerBoundViolation::PathTooShort {
                property,
                required,
                found: p.len(),
                path: p,
            });
        }
        Ok(p.len())
    };
    let d1 = path("s to source of F_l", g.s(), fl.source, 2 * k)?;
    let d2 = path("sink of F_c to t", fc.sink, g.t(), 2 * k + 1)?;
    let d3 = path("sink of F_l to source of F_r", fl.sink, fr.source, 2 * k)?;
    if fl.top_chain.len() != k + 2 {
        return Err(LowerBoundViolation::TopChain {
            required: k + 2,
            found: fl.top_chain.len(),
        });
    }
    for to in [inst.f_left, inst.f_right] {
        let exists = g
            .edges()
            .iter()
            .any(|e| e.left_face == inst.f_center && e.right_face == to);
        if !exists {
            return Err(LowerBoundViolation::MissingDualEdge {
                from: inst.f_center,
                to,
            });
        }
    }
    Ok(LowerBoundCertificate {
        dist_s_to_left_source: d1,
        left_top_chain: fl.top_chain.len(),
        dist_left_sink_to_right_source: d3,
        dist_center_sink_to_t: d2,
        rope_bound: d1 + fl.top_chain.len() + d3 + 1 + d2,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WorstCaseInstance {
    #[serde(serialize_with = "word_as_string")]
    pub diagram: WiringDiagram,
    pub c1: usize,
    /// Face above the last edge of `c1`.
    pub face: usize,
}

/// `c1` first descends across every other line; the rest is reversed by
/// repeatedly raising the line on track `n - 1` to the top of the block
/// still out of order, so that track `n - 1` carries every line in turn.
pub fn worst_case_family(n: usize) -> WorstCaseInstance {
    assert!(n >= 3, "the family starts at n = 3");
    let mut b = Builder::new(n);
    b.lower(1, n);
    for top in 1..n - 1 {
        b.raise(n - 1, top);
    }
    let diagram = WiringDiagram::new(n, &b.word).expect("construction yields a simple arrangement");
    let g = ArrangementGraph::build(&diagram);
    let face = last_edge_face(&g, 1);
    WorstCaseInstance { diagram, c1: 1, face }
}

fn last_edge_face(g: &ArrangementGraph, line: usize) -> usize {
    g.edges()
        .iter()
        .find(|e| e.index == line && e.head == g.t())
        .map(|e| e.left_face)
        .expect("every line reaches t")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WorstCaseCertificate {
    pub face: usize,
    pub top_chain_lines: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum WorstCaseViolation {
    TooFewLines {
        n: usize,
    },
    BadLine {
        line: usize,
    },
    /// Condition (i): `line` first crosses `first` instead of `c1`.
    FirstCrossing {
        line: usize,
        first: usize,
    },
    /// Condition (ii): the top chain of the face misses `missing`.
    TopChainMisses {
        face: usize,
        missing: Vec<usize>,
    },
}

pub fn verify_worst_case(diagram: &WiringDiagram, c1: usize) -> Result<WorstCaseCertificate, WorstCaseViolation> {
    let n = diagram.n();
    if n < 3 {
        return Err(WorstCaseViolation::TooFewLines { n });
    }
    if !(1..=n).contains(&c1) {
        return Err(WorstCaseViolation::BadLine { line: c1 });
    }
    let g = ArrangementGraph::build(diagram);
    for &e in &g.vertex(g.s()).out_edges {
        let edge = g.edge(e);
        if edge.index == c1 {
            continue;
        }
        let head = g.vertex(edge.head);
        let other = head
            .in_edges
            .iter()
            .map(|&x| g.edge(x).index)
            .find(|&l| l != edge.index)
            .expect("a crossing has two incoming lines");
        if other != c1 {
            return Err(WorstCaseViolation::FirstCrossing {
                line: edge.index,
                first: other,
            });
        }
    }
    let face = last_edge_face(&g, c1);
    let mut lines: Vec<usize> = g.face(face).top_chain.iter().map(|&e| g.edge(e).index).collect();
    lines.sort_unstable();
    lines.dedup();
    let missing: Vec<usize> = (1..=n).filter(|&l| l != c1 && !lines.contains(&l)).collect();
    if !missing.is_empty() {
        return Err(WorstCaseViolation::TopChainMisses { face, missing });
    }
    Ok(WorstCaseCertificate {
        face,
        top_chain_lines: lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::primal_dual_max;

    #[test]
    fn worst_case_words() {
        assert_eq!(worst_case_family(3).diagram.swap_positions(), vec![1, 2, 1]);
        assert_eq!(worst_case_family(4).diagram.swap_positions(), vec![1, 2, 3, 2, 1, 2]);
        assert_eq!(
            worst_case_family(5).diagram.swap_positions(),
            vec![1, 2, 3, 4, 3, 2, 1, 3, 2, 3]
        );
    }

    #[test]
    fn worst_case_certified() {
        for n in 3..=10 {
            let inst = worst_case_family(n);
            let cert = verify_worst_case(&inst.diagram, inst.c1).unwrap();
            assert_eq!(cert.face, inst.face);
            assert_eq!(cert.top_chain_lines, (2..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn worst_case_violations() {
        let wd = WiringDiagram::new(3, &[2, 1, 2]).unwrap();
        assert_eq!(
            verify_worst_case(&wd, 1),
            Err(WorstCaseViolation::FirstCrossing { line: 2, first: 3 })
        );
        let two = WiringDiagram::new(2, &[1]).unwrap();
        assert_eq!(
            verify_worst_case(&two, 1),
            Err(WorstCaseViolation::TooFewLines { n: 2 })
        );
    }

    #[test]
    fn worst_case_sweep_lengths() {
        for n in 3..=10 {
            let inst = worst_case_family(n);
            let g = ArrangementGraph::build(&inst.diagram);
            assert_eq!(primal_dual_max(&g).unwrap(), 2 * n - 2, "n = {n}");
            let mirrored = ArrangementGraph::build(&inst.diagram.reflect_horizontal());
            assert_eq!(primal_dual_max(&mirrored).unwrap(), n + 1, "n = {n}");
        }
    }

    #[test]
    fn lower_bound_certified() {
        for k in 1..=4 {
            let inst = lower_bound_family(k);
            assert_eq!(inst.diagram.n(), 4 * k + 3);
            let cert = verify_lower_bound(&inst).unwrap_or_else(|v| panic!("k = {k}: {v:?}"));
            assert!(cert.rope_bound >= 7 * k + 4);
        }
    }

    #[test]
    fn lower_bound_landmarks_k1() {
        let inst = lower_bound_family(1);
        let g = ArrangementGraph::build(&inst.diagram);
        let cert = verify_lower_bound(&inst).unwrap();
        // dist(s, s(F_l)) computed directly by breadth-first search
        assert_eq!(
            cert.dist_s_to_left_source,
            g.shortest_xmonotone_path(g.s(), g.face(inst.f_left).source).unwrap()
        );
        assert!(cert.dist_s_to_left_source >= 2);
        assert_eq!(cert.left_top_chain, 3);
    }

    /// Replays `word`, skipping swaps that would cross a pair twice, then
    /// bubble-sorts whatever is still uncrossed.
    fn repair(n: usize, word: &[usize]) -> WiringDiagram {
        let mut tracks: Vec<usize> = (1..=n).collect();
        let mut out = Vec::new();
        let mut apply = |p: usize, tracks: &mut Vec<usize>| {
            if tracks[p - 1] < tracks[p] {
                tracks.swap(p - 1, p);
                out.push(p);
            }
        };
        for &p in word {
            apply(p, &mut tracks);
        }
        while let Some(p) = (1..n).find(|&p| tracks[p - 1] < tracks[p]) {
            apply(p, &mut tracks);
        }
        WiringDiagram::new(n, &out).unwrap()
    }

    #[test]
    fn mutated_middle_section_is_rejected() {
        for k in 1..=2 {
            let inst = lower_bound_family(k);
            let n = inst.diagram.n();
            let mut word = inst.diagram.swap_positions();
            // the second crossing of the blue-block reversal, where c moves
            // on below the first blue line
            let left = k * (2 * k + 1) + k + (k + 1) * (k + 2) / 2;
            let removed = left + 1;
            word.remove(removed);
            let shifted = |f: usize| if f > n - 1 + removed { f - 1 } else { f };
            let mutated = LowerBoundInstance {
                diagram: repair(n, &word),
                f_right: shifted(inst.f_right),
                ..inst.clone()
            };
            assert_ne!(mutated.diagram, inst.diagram);
            assert!(verify_lower_bound(&mutated).is_err(), "k = {k}");
        }
    }

    #[test]
    fn lower_bound_sweep_lengths() {
        for (k, expected) in [(1, 11), (2, 18), (3, 25)] {
            let g = ArrangementGraph::build(&lower_bound_family(k).diagram);
            assert_eq!(primal_dual_max(&g).unwrap(), expected, "k = {k}");
        }
    }
}
