//! Exact minimum rope-length over all sweeps.
//!
//! A monotone sweep flips every inner face once, and the set of faces swept
//! so far is always a down-set (ideal) of the precedence "the face below an
//! edge before the face above it". The rope belonging to an ideal is the set
//! of edges with exactly one side in the ideal together with `t*`, so its
//! length is the lower hull length plus the sum of `|top chain| - |bottom
//! chain|` over the swept faces. The optimum is therefore a bottleneck path
//! problem in the lattice of ideals.
//!
//! [`optimal_rope_length`] searches that lattice with a width bound that
//! starts at a cheap lower bound and grows by one until a sweep fits.
//! [`rope_flip_search`] is an independent oracle working on explicit ropes.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::error::OptimalError;
use crate::graph::{ArrangementGraph, Rope};
use crate::sweep::{flip_face, primal_dual_max};

/// Ideals are bitsets over face ids; larger arrangements are rejected.
pub const MAX_FACES: usize = 128;

/// A set of swept inner faces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealState(pub u128);

impl IdealState {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn full(faces: usize) -> Self {
        if faces == 128 {
            Self(u128::MAX)
        } else {
            Self((1u128 << faces) - 1)
        }
    }

    pub fn from_faces(faces: impl IntoIterator<Item = usize>) -> Self {
        Self(faces.into_iter().fold(0, |acc, f| acc | (1u128 << f)))
    }

    pub fn contains(self, face: usize) -> bool {
        self.0 >> face & 1 == 1
    }

    pub fn with(self, face: usize) -> Self {
        Self(self.0 | 1u128 << face)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn faces(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let f = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                f
            })
        })
    }
}

/// Precedence and length bookkeeping for the ideals of one arrangement.
#[derive(Clone, Debug)]
pub struct IdealSpace {
    /// Faces that must be swept before each face.
    pred: Vec<u128>,
    /// `|top chain| - |bottom chain|` per face.
    delta: Vec<i32>,
    lower_len: i32,
    full: u128,
}

impl IdealSpace {
    pub fn new(g: &ArrangementGraph) -> Result<Self, OptimalError> {
        let faces = g.face_count();
        if faces > MAX_FACES {
            return Err(OptimalError::ResourceLimit(format!(
                "{faces} faces exceed the {MAX_FACES}-face ideal representation"
            )));
        }
        let pred = g
            .faces()
            .iter()
            .map(|f| {
                f.bottom_chain
                    .iter()
                    .map(|&e| g.edge(e).right_face)
                    .filter(|&r| g.is_inner_face(r))
                    .fold(0u128, |acc, r| acc | 1u128 << r)
            })
            .collect();
        let delta = g
            .faces()
            .iter()
            .map(|f| f.top_chain.len() as i32 - f.bottom_chain.len() as i32)
            .collect();
        Ok(Self {
            pred,
            delta,
            lower_len: g.lower_hull().len() as i32,
            full: IdealState::full(faces).0,
        })
    }

    pub fn face_count(&self) -> usize {
        self.delta.len()
    }

    pub fn is_down_set(&self, ideal: IdealState) -> bool {
        ideal.faces().all(|f| self.pred[f] & !ideal.0 == 0)
    }

    /// First face of the ideal swept before one of its predecessors, if any.
    pub fn down_set_violation(&self, ideal: IdealState) -> Option<usize> {
        ideal.faces().find(|&f| self.pred[f] & !ideal.0 != 0)
    }

    pub fn can_add(&self, ideal: IdealState, face: usize) -> bool {
        !ideal.contains(face) && self.pred[face] & !ideal.0 == 0
    }

    /// Rope length of the boundary of a down-set.
    pub fn boundary_len(&self, ideal: IdealState) -> usize {
        (self.lower_len + ideal.faces().map(|f| self.delta[f]).sum::<i32>()) as usize
    }
}

/// The rope bounding a down-set of swept faces.
pub fn rope_of_ideal(g: &ArrangementGraph, ideal: IdealState) -> Result<Rope, OptimalError> {
    let space = IdealSpace::new(g)?;
    if let Some(f) = space.down_set_violation(ideal) {
        return Err(OptimalError::NotADownSet(f));
    }
    let swept = |node: usize| node == g.t_star() || (g.is_inner_face(node) && ideal.contains(node));
    let on_rope: Vec<bool> = g
        .edges()
        .iter()
        .map(|e| swept(e.right_face) && !swept(e.left_face))
        .collect();
    let mut edges = Vec::new();
    let mut at = g.s();
    while at != g.t() {
        let e = g
            .vertex(at)
            .out_edges
            .iter()
            .copied()
            .find(|&e| on_rope[e])
            .expect("the boundary of a down-set is an s-t path");
        edges.push(e);
        at = g.edge(e).head;
    }
    debug_assert_eq!(edges.len(), on_rope.iter().filter(|&&b| b).count());
    Ok(Rope { edges })
}

/// Search limits. `None` means unlimited.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_ideals: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_ideals: Some(DEFAULT_MAX_IDEALS),
            deadline: None,
        }
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self {
            max_ideals: None,
            deadline: None,
        }
    }
}

pub const DEFAULT_MAX_IDEALS: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimalSweep {
    /// Minimum over all sweeps of the maximum rope length.
    pub width: usize,
    /// Lexicographically smallest face order attaining `width`.
    pub order: Vec<usize>,
    /// Ideals expanded over all width rounds.
    pub ideals_explored: u64,
    /// Width bound the search started from.
    pub lower_bound: usize,
}

/// Width bound from shortest paths: right after a face is flipped the rope
/// runs from `s` to the face's source, along its top chain and on to `t`.
pub fn path_lower_bound(g: &ArrangementGraph) -> usize {
    let from_s = bfs_lengths(g, g.s(), true);
    let to_t = bfs_lengths(g, g.t(), false);
    let hulls = g.lower_hull().len().max(g.upper_hull().len());
    g.faces()
        .iter()
        .map(|f| from_s[f.source] + f.top_chain.len().max(f.bottom_chain.len()) + to_t[f.sink])
        .fold(hulls, usize::max)
}

fn bfs_lengths(g: &ArrangementGraph, root: usize, forward: bool) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let vx = g.vertex(v);
        let next = if forward { &vx.out_edges } else { &vx.in_edges };
        for &e in next {
            let u = if forward { g.edge(e).head } else { g.edge(e).tail };
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

struct Search<'a> {
    space: &'a IdealSpace,
    failed: FxHashSet<u128>,
    explored: u64,
    budget: SearchBudget,
    path: Vec<usize>,
}

impl Search<'_> {
    fn fits(&mut self, ideal: u128, len: i32, width: i32) -> Result<bool, OptimalError> {
        if ideal == self.space.full {
            return Ok(true);
        }
        if self.failed.contains(&ideal) {
            return Ok(false);
        }
        self.explored += 1;
        if let Some(max) = self.budget.max_ideals {
            if self.explored > max {
                return Err(OptimalError::ResourceLimit(format!("more than {max} ideals explored")));
            }
        }
        if self.explored.is_multiple_of(65_536) {
            if let Some(deadline) = self.budget.deadline {
                if Instant::now() > deadline {
                    return Err(OptimalError::ResourceLimit("deadline reached".into()));
                }
            }
        }
        let mut candidates = !ideal & self.space.full;
        while candidates != 0 {
            let f = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if self.space.pred[f] & !ideal != 0 {
                continue;
            }
            let next_len = len + self.space.delta[f];
            if next_len > width {
                continue;
            }
            self.path.push(f);
            if self.fits(ideal | 1u128 << f, next_len, width)? {
                return Ok(true);
            }
            self.path.pop();
        }
        self.failed.insert(ideal);
        Ok(false)
    }
}

pub fn optimal_rope_length(g: &ArrangementGraph) -> Result<OptimalSweep, OptimalError> {
    optimal_rope_length_with(g, SearchBudget::default())
}

pub fn optimal_rope_length_with(g: &ArrangementGraph, budget: SearchBudget) -> Result<OptimalSweep, OptimalError> {
    let space = IdealSpace::new(g)?;
    let lower_bound = path_lower_bound(g);
    let upper_bound = primal_dual_max(g).map_err(|e| OptimalError::ResourceLimit(e.to_string()))?;
    let mut search = Search {
        space: &space,
        failed: FxHashSet::default(),
        explored: 0,
        budget,
        path: Vec::with_capacity(space.face_count()),
    };
    for width in lower_bound..=upper_bound.max(lower_bound) {
        search.failed.clear();
        search.path.clear();
        if width < space.lower_len as usize {
            continue;
        }
        if search.fits(0, space.lower_len, width as i32)? {
            return Ok(OptimalSweep {
                width,
                order: std::mem::take(&mut search.path),
                ideals_explored: search.explored,
                lower_bound,
            });
        }
    }
    unreachable!("the primal-dual sweep attains its own width")
}

/// Bottleneck shortest path from the lower to the upper hull in the graph of
/// explicit ropes, where each arc flips one face.
pub fn rope_flip_search(g: &ArrangementGraph) -> Result<usize, OptimalError> {
    rope_flip_search_with(g, SearchBudget::default())
}

pub fn rope_flip_search_with(g: &ArrangementGraph, budget: SearchBudget) -> Result<usize, OptimalError> {
    let (lower, upper) = g.hulls();
    let mut ids: FxHashMap<Vec<usize>, usize> = FxHashMap::default();
    let mut ropes: Vec<Rope> = Vec::new();
    let mut best: Vec<usize> = Vec::new();
    let mut heap = BinaryHeap::new();
    ids.insert(lower.edges.clone(), 0);
    best.push(lower.len());
    heap.push(Reverse((lower.len(), 0usize)));
    ropes.push(lower);
    let mut settled = 0u64;
    while let Some(Reverse((cost, id))) = heap.pop() {
        if cost > best[id] {
            continue;
        }
        if ropes[id] == upper {
            return Ok(cost);
        }
        settled += 1;
        if budget.max_ideals.is_some_and(|max| settled > max) {
            return Err(OptimalError::ResourceLimit(format!(
                "more than {settled} ropes settled"
            )));
        }
        if budget
            .deadline
            .is_some_and(|d| settled.is_multiple_of(4096) && Instant::now() > d)
        {
            return Err(OptimalError::ResourceLimit("deadline reached".into()));
        }
        let current = ropes[id].clone();
        for f in 0..g.face_count() {
            let Ok(next) = flip_face(g, &current, f) else {
                continue;
            };
            let next_cost = cost.max(next.len());
            match ids.get(&next.edges) {
                Some(&nid) if best[nid] <= next_cost => {}
                Some(&nid) => {
                    best[nid] = next_cost;
                    heap.push(Reverse((next_cost, nid)));
                }
                None => {
                    let nid = ropes.len();
                    ids.insert(next.edges.clone(), nid);
                    ropes.push(next);
                    best.push(next_cost);
                    heap.push(Reverse((next_cost, nid)));
                }
            }
        }
    }
    Err(OptimalError::ResourceLimit("upper hull unreachable".into()))
}

/// Replays a face order from the lower hull and returns the widest rope.
pub fn replay_face_order(g: &ArrangementGraph, order: &[usize]) -> Result<usize, crate::error::SweepError> {
    let mut rope = g.hulls().0;
    let mut widest = rope.len();
    for &f in order {
        rope = flip_face(g, &rope, f)?;
        widest = widest.max(rope.len());
    }
    if rope.edges != g.upper_hull() {
        return Err(crate::error::SweepError::InvariantViolation {
            step: order.len(),
            message: "face order does not end at the upper hull".into(),
        });
    }
    Ok(widest)
}
