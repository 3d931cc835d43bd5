//! Exact cutwidth and directed cutwidth of small graphs, and the reduction
//! from cutwidth of subcubic graphs to directed cutwidth.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{CutwidthError, ParseError};
use crate::graph::DualGraph;

/// Default vertex bound for the undirected subset DP.
pub const DEFAULT_UNDIRECTED_LIMIT: usize = 16;
/// Vertex bound for the directed solver; down-sets are stored as `u128`.
pub const DIRECTED_LIMIT: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    directed: bool,
}

impl SmallGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, directed: bool) -> Result<Self, CutwidthError> {
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(CutwidthError::BadEdge(u, v));
            }
            if u == v {
                return Err(CutwidthError::SelfLoop(u));
            }
        }
        Ok(Self { n, edges, directed })
    }

    pub fn undirected(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, CutwidthError> {
        Self::new(n, edges, false)
    }

    pub fn directed(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, CutwidthError> {
        Self::new(n, edges, true)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Kahn's algorithm, smallest available vertex first.
    pub fn topological_order(&self) -> Result<Vec<usize>, CutwidthError> {
        let mut indeg = vec![0usize; self.n];
        let mut out = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            indeg[v] += 1;
            out[u].push(v);
        }
        let mut ready: std::collections::BTreeSet<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &u in &out[v] {
                indeg[u] -= 1;
                if indeg[u] == 0 {
                    ready.insert(u);
                }
            }
        }
        if order.len() == self.n {
            Ok(order)
        } else {
            Err(CutwidthError::NotAcyclic)
        }
    }

    /// Cut sizes of an order; `cuts[i]` counts edges between the first
    /// `i + 1` vertices and the rest. Directed graphs require a topological
    /// order.
    pub fn linear_order(&self, order: Vec<usize>) -> Result<LinearOrder, CutwidthError> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in order.iter().enumerate() {
            if v >= self.n || pos[v] != usize::MAX {
                return Err(CutwidthError::NotAPermutation(self.n));
            }
            pos[v] = i;
        }
        if order.len() != self.n {
            return Err(CutwidthError::NotAPermutation(self.n));
        }
        let mut diff = vec![0i64; self.n + 1];
        for &(u, v) in &self.edges {
            if self.directed && pos[u] > pos[v] {
                return Err(CutwidthError::NotTopological(u, v));
            }
            let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
            diff[a] += 1;
            diff[b] -= 1;
        }
        let mut cuts = Vec::with_capacity(self.n.saturating_sub(1));
        let mut running = 0i64;
        for d in diff.iter().take(self.n.saturating_sub(1)) {
            running += d;
            cuts.push(running as usize);
        }
        Ok(LinearOrder { order, cuts })
    }
}

impl fmt::Display for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.directed { "directed" } else { "undirected" };
        writeln!(f, "{kind} {}", self.n)?;
        for &(u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for SmallGraph {
    type Err = ParseError;

    /// `directed|undirected <n>` followed by one `u v` edge per line,
    /// 0-based. Blank lines and `#` comments are skipped.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(ParseError::UnexpectedEof { what: "graph header" })?;
        let syntax = |line: usize, message: String| ParseError::Syntax { line, message };
        let mut parts = header.split_whitespace();
        let directed = match parts.next() {
            Some("directed") => true,
            Some("undirected") => false,
            other => {
                return Err(syntax(
                    line,
                    format!("expected `directed` or `undirected`, found {other:?}"),
                ))
            }
        };
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| syntax(line, "missing vertex count".into()))?;
        if parts.next().is_some() {
            return Err(syntax(line, "trailing tokens after vertex count".into()));
        }
        let mut edges = Vec::new();
        for (line, text) in lines {
            let nums: Vec<usize> = text
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| syntax(line, format!("bad vertex `{t}`"))))
                .collect::<Result<_, _>>()?;
            match nums[..] {
                [u, v] => {
                    if u >= n || v >= n || u == v {
                        return Err(syntax(line, format!("invalid edge {u} {v}")));
                    }
                    edges.push((u, v));
                }
                _ => return Err(syntax(line, "expected two vertices".into())),
            }
        }
        Ok(Self { n, edges, directed })
    }
}

impl From<&DualGraph> for SmallGraph {
    fn from(d: &DualGraph) -> Self {
        Self {
            n: d.node_count(),
            edges: d.edges().to_vec(),
            directed: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearOrder {
    pub order: Vec<usize>,
    /// `cuts[i]` is the cut between positions `i` and `i + 1`.
    pub cuts: Vec<usize>,
}

impl LinearOrder {
    pub fn width(&self) -> usize {
        self.cuts.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(f, "{}", join(&self.order))?;
        writeln!(f, "{}", join(&self.cuts))
    }
}

pub fn cutwidth_exact(g: &SmallGraph) -> Result<(usize, LinearOrder), CutwidthError> {
    cutwidth_exact_with_limit(g, DEFAULT_UNDIRECTED_LIMIT)
}

/// Subset DP: `best[S]` is the least achievable maximum cut when the
/// vertices of `S` come first and the rest is ordered optimally.
pub fn cutwidth_exact_with_limit(g: &SmallGraph, limit: usize) -> Result<(usize, LinearOrder), CutwidthError> {
    if g.directed {
        return Err(CutwidthError::ExpectedUndirected);
    }
    let n = g.n;
    if n > limit.min(30) {
        return Err(CutwidthError::TooLarge {
            vertices: n,
            limit: limit.min(30),
        });
    }
    let full = (1usize << n) - 1;
    // adjacency with multiplicity
    let mut adj = vec![vec![0u32; n]; n];
    for &(u, v) in &g.edges {
        adj[u][v] += 1;
        adj[v][u] += 1;
    }
    let deg: Vec<u32> = adj.iter().map(|row| row.iter().sum()).collect();
    let mut cut = vec![0u32; full + 1];
    for s in 1..=full {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let inside: u32 = (0..n).filter(|&u| rest >> u & 1 == 1).map(|u| adj[v][u]).sum();
        cut[s] = cut[rest] + deg[v] - 2 * inside;
    }
    let mut best = vec![u32::MAX; full + 1];
    let mut choice = vec![u8::MAX; full + 1];
    best[full] = 0;
    for s in (0..full).rev() {
        for v in 0..n {
            if s >> v & 1 == 1 {
                continue;
            }
            let t = s | 1 << v;
            let c = if t == full { 0 } else { cut[t] };
            let val = c.max(best[t]);
            if val < best[s] {
                best[s] = val;
                choice[s] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = 0;
    while s != full {
        let v = choice[s] as usize;
        order.push(v);
        s |= 1 << v;
    }
    let lo = g.linear_order(order)?;
    debug_assert_eq!(lo.width(), best[0] as usize);
    Ok((best[0] as usize, lo))
}

pub fn directed_cutwidth_exact(d: &SmallGraph) -> Result<(usize, LinearOrder), CutwidthError> {
    directed_cutwidth_exact_with_limit(d, DIRECTED_LIMIT)
}

/// Memoized search over down-sets. A vertex whose predecessors are all
/// placed and whose out-degree does not exceed its in-degree is placed at
/// once: moving it forward never raises a cut.
pub fn directed_cutwidth_exact_with_limit(d: &SmallGraph, limit: usize) -> Result<(usize, LinearOrder), CutwidthError> {
    if !d.directed {
        return Err(CutwidthError::ExpectedDirected);
    }
    let limit = limit.min(DIRECTED_LIMIT);
    if d.n > limit {
        return Err(CutwidthError::TooLarge { vertices: d.n, limit });
    }
    d.topological_order()?;
    let n = d.n;
    let mut pred = vec![0u128; n];
    let mut delta = vec![0i32; n];
    for &(u, v) in &d.edges {
        pred[v] |= 1 << u;
        delta[u] += 1;
        delta[v] -= 1;
    }
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut solver = DownSetSolver {
        pred,
        delta,
        full,
        memo: FxHashMap::default(),
    };
    let (start, start_cut) = solver.closure(0, 0);
    let width = solver.solve(start, start_cut);
    // the closure steps and the recorded choices rebuild an optimal order
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u128;
    let mut cut = 0i32;
    loop {
        let (next, next_cut, forced) = solver.closure_steps(placed, cut);
        order.extend(forced);
        placed = next;
        cut = next_cut;
        if placed == full {
            break;
        }
        let v = solver.memo[&placed].1 as usize;
        order.push(v);
        placed |= 1 << v;
        cut += solver.delta[v];
    }
    let lo = d.linear_order(order)?;
    debug_assert_eq!(lo.width(), width as usize);
    Ok((width as usize, lo))
}

struct DownSetSolver {
    pred: Vec<u128>,
    delta: Vec<i32>,
    full: u128,
    /// closed down-set -> (best width of the remainder, chosen vertex)
    memo: FxHashMap<u128, (i32, u8)>,
}

impl DownSetSolver {
    fn closure(&self, placed: u128, cut: i32) -> (u128, i32) {
        let (s, c, _) = self.closure_steps(placed, cut);
        (s, c)
    }

    fn closure_steps(&self, mut placed: u128, mut cut: i32) -> (u128, i32, Vec<usize>) {
        let mut forced = Vec::new();
        'outer: loop {
            let mut rest = !placed & self.full;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.pred[v] & !placed == 0 && self.delta[v] <= 0 {
                    placed |= 1 << v;
                    cut += self.delta[v];
                    forced.push(v);
                    continue 'outer;
                }
            }
            return (placed, cut, forced);
        }
    }

    /// Widest cut still to come after the closed down-set `placed`, under
    /// the best continuation. Cuts are counted after every vertex but the
    /// last, and the cut after the final vertex is zero anyway.
    fn solve(&mut self, placed: u128, cut: i32) -> i32 {
        if placed == self.full {
            return 0;
        }
        if let Some(&(w, _)) = self.memo.get(&placed) {
            return w;
        }
        let mut best = i32::MAX;
        let mut choice = u8::MAX;
        let mut rest = !placed & self.full;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.pred[v] & !placed != 0 {
                continue;
            }
            let after = cut + self.delta[v];
            if after >= best {
                continue;
            }
            let (next, next_cut) = self.closure(placed | 1 << v, after);
            let val = after.max(self.solve(next, next_cut));
            if val < best {
                best = val;
                choice = v as u8;
            }
        }
        self.memo.insert(placed, (best, choice));
        best
    }
}

/// The directed graph H built from an undirected G, with the gadget
/// vertex ids. Vertices of G keep their ids; edge `i` of G becomes source
/// `n + 2i` and sink `n + 2i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub h: SmallGraph,
    pub original_vertices: usize,
}

impl Reduction {
    pub fn source_of(&self, edge: usize) -> usize {
        self.original_vertices + 2 * edge
    }

    pub fn sink_of(&self, edge: usize) -> usize {
        self.original_vertices + 2 * edge + 1
    }

    pub fn is_original(&self, v: usize) -> bool {
        v < self.original_vertices
    }
}

pub fn reduce_to_dcw(g: &SmallGraph) -> Result<Reduction, CutwidthError> {
    if g.directed {
        return Err(CutwidthError::ExpectedUndirected);
    }
    for v in 0..g.n {
        if g.degree(v) == 0 {
            return Err(CutwidthError::IsolatedVertex(v));
        }
    }
    for &(u, v) in &g.edges {
        if g.degree(u) == 1 && g.degree(v) == 1 {
            return Err(CutwidthError::IsolatedEdge(u, v));
        }
    }
    let n = g.n;
    let mut edges = Vec::with_capacity(4 * g.edges.len());
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        let (s, t) = (n + 2 * i, n + 2 * i + 1);
        edges.extend([(s, u), (s, v), (u, t), (v, t)]);
    }
    Ok(Reduction {
        h: SmallGraph::directed(n + 2 * g.edges.len(), edges)?,
        original_vertices: n,
    })
}

/// Per position `i` of an order of G: sources of edges to later vertices,
/// then `v_i`, then sinks of edges to earlier vertices.
pub fn order_g_to_h(g: &SmallGraph, red: &Reduction, sigma_g: &LinearOrder) -> Result<LinearOrder, CutwidthError> {
    let pos = positions(g.n, &sigma_g.order)?;
    let mut order = Vec::with_capacity(red.h.n);
    for &v in &sigma_g.order {
        let incident: Vec<(usize, usize)> = g
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, &(a, b))| {
                if a == v {
                    Some((i, b))
                } else if b == v {
                    Some((i, a))
                } else {
                    None
                }
            })
            .collect();
        order.extend(
            incident
                .iter()
                .filter(|&&(_, w)| pos[w] > pos[v])
                .map(|&(i, _)| red.source_of(i)),
        );
        order.push(v);
        order.extend(
            incident
                .iter()
                .filter(|&&(_, w)| pos[w] < pos[v])
                .map(|&(i, _)| red.sink_of(i)),
        );
    }
    red.h.linear_order(order)
}

/// One exchange of an improvable pair at positions `(position, position + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exchange {
    pub position: usize,
    pub cut_before: usize,
    pub cut_after: usize,
}

/// Induced order on G, then leftmost improvable pairs are exchanged until
/// none remain.
pub fn order_h_to_g(
    g: &SmallGraph,
    red: &Reduction,
    sigma_h: &LinearOrder,
) -> Result<(LinearOrder, Vec<Exchange>), CutwidthError> {
    positions(red.h.n, &sigma_h.order)?;
    let induced: Vec<usize> = sigma_h.order.iter().copied().filter(|&v| red.is_original(v)).collect();
    let mut current = g.linear_order(induced)?;
    let mut exchanges = Vec::new();
    while let Some(i) = first_improvable_pair(g, &current.order) {
        let cut_before = current.cuts[i];
        let mut order = current.order.clone();
        order.swap(i, i + 1);
        current = g.linear_order(order)?;
        exchanges.push(Exchange {
            position: i,
            cut_before,
            cut_after: current.cuts[i],
        });
    }
    Ok((current, exchanges))
}

/// Leftmost `i` with `L_i = ∅ = R_{i+1}` (0-based positions).
pub fn first_improvable_pair(g: &SmallGraph, order: &[usize]) -> Option<usize> {
    let mut pos = vec![0; g.n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let has_left = |v: usize| g.neighbors(v).iter().any(|&w| pos[w] < pos[v]);
    let has_right = |v: usize| g.neighbors(v).iter().any(|&w| pos[w] > pos[v]);
    (0..order.len().saturating_sub(1)).find(|&i| !has_left(order[i]) && !has_right(order[i + 1]))
}

/// Sizes `(|L_i|, |B_i|, |R_i|)` for every position of an order of G.
pub fn lbr_sizes(g: &SmallGraph, order: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut pos = vec![0; g.n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    (0..order.len())
        .map(|i| {
            let (mut l, mut b, mut r) = (0, 0, 0);
            for &(u, v) in &g.edges {
                let (a, c) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
                if c == i {
                    l += 1;
                } else if a == i {
                    r += 1;
                } else if a < i && i < c {
                    b += 1;
                }
            }
            (l, b, r)
        })
        .collect()
}

fn positions(n: usize, order: &[usize]) -> Result<Vec<usize>, CutwidthError> {
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(CutwidthError::NotAPermutation(n));
        }
        pos[v] = i;
    }
    if order.len() != n {
        return Err(CutwidthError::NotAPermutation(n));
    }
    Ok(pos)
}

/// Planarity by exhausting rotation systems; a connected graph is planar
/// iff some rotation system traces `E - V + 2` faces. Meant for the small
/// sparse graphs used in tests, where the product of `(deg - 1)!` is tiny.
pub fn is_planar_small(g: &SmallGraph) -> bool {
    let n = g.n;
    // darts 2i (u -> v) and 2i + 1 (v -> u) for edge i = (u, v)
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        around[u].push(2 * i);
        around[v].push(2 * i + 1);
    }
    let components = {
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for r in 0..n {
            if comp[r] != usize::MAX {
                continue;
            }
            comp[r] = count;
            let mut stack = vec![r];
            while let Some(v) = stack.pop() {
                for w in g.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        count
    };
    // all faces over all components: V - E + F = 1 + C
    let target = (g.edges.len() + 1 + components) as i64 - n as i64;
    let darts = 2 * g.edges.len();
    let mut next_around = vec![0usize; darts];
    fn rec(
        v: usize,
        around: &mut Vec<Vec<usize>>,
        next_around: &mut Vec<usize>,
        count_faces: &dyn Fn(&[usize]) -> i64,
        target: i64,
    ) -> bool {
        if v == around.len() {
            return count_faces(next_around) == target;
        }
        let k = around[v].len();
        if k <= 2 {
            for j in 0..k {
                next_around[around[v][j]] = around[v][(j + 1) % k];
            }
            return rec(v + 1, around, next_around, count_faces, target);
        }
        // fix the first dart, permute the others
        let tail = around[v][1..].to_vec();
        for perm in permutations(&tail) {
            let cyc: Vec<usize> = std::iter::once(around[v][0]).chain(perm).collect();
            for j in 0..k {
                next_around[cyc[j]] = cyc[(j + 1) % k];
            }
            if rec(v + 1, around, next_around, count_faces, target) {
                return true;
            }
        }
        false
    }
    let count_faces = |next: &[usize]| -> i64 {
        let mut seen = vec![false; darts];
        let mut faces = 0;
        for d in 0..darts {
            if seen[d] {
                continue;
            }
            faces += 1;
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                // face successor: reverse dart, then next around its tail
                x = next[x ^ 1];
            }
        }
        faces
    };
    rec(0, &mut around, &mut next_around, &count_faces, target)
}

fn permutations(xs: &[usize]) -> Vec<Vec<usize>> {
    if xs.len() <= 1 {
        return vec![xs.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Labeled connected graphs on `n` vertices with maximum degree at most
/// `max_degree`, in lexicographic order of their edge sets. No isomorphism
/// rejection.
pub fn connected_bounded_degree_graphs(n: usize, max_degree: usize) -> Vec<SmallGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut deg = vec![0usize; n];
    fn rec(
        i: usize,
        pairs: &[(usize, usize)],
        chosen: &mut Vec<(usize, usize)>,
        deg: &mut Vec<usize>,
        max_degree: usize,
        n: usize,
        out: &mut Vec<SmallGraph>,
    ) {
        if i == pairs.len() {
            if chosen.len() + 1 >= n {
                let g = SmallGraph {
                    n,
                    edges: chosen.clone(),
                    directed: false,
                };
                if g.is_connected() {
                    out.push(g);
                }
            }
            return;
        }
        let (u, v) = pairs[i];
        // vertex u sees no further pairs once past its last one; it must
        // already have an edge
        if deg[u] < max_degree && deg[v] < max_degree {
            deg[u] += 1;
            deg[v] += 1;
            chosen.push((u, v));
            rec(i + 1, pairs, chosen, deg, max_degree, n, out);
            chosen.pop();
            deg[u] -= 1;
            deg[v] -= 1;
        }
        let last_for_u = v == n - 1;
        if !(last_for_u && deg[u] == 0) {
            rec(i + 1, pairs, chosen, deg, max_degree, n, out);
        }
    }
    rec(0, &pairs, &mut chosen, &mut deg, max_degree, n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn undirected(n: usize, e: &[(usize, usize)]) -> SmallGraph {
        SmallGraph::undirected(n, e.to_vec()).unwrap()
    }

    fn all_orders(n: usize) -> Vec<Vec<usize>> {
        permutations(&(0..n).collect::<Vec<_>>())
    }

    fn brute_cw(g: &SmallGraph) -> usize {
        all_orders(g.n)
            .into_iter()
            .map(|o| g.linear_order(o).unwrap().width())
            .min()
            .unwrap()
    }

    fn brute_dcw(g: &SmallGraph) -> usize {
        all_orders(g.n)
            .into_iter()
            .filter_map(|o| g.linear_order(o).ok())
            .map(|o| o.width())
            .min()
            .unwrap()
    }

    #[test]
    fn basic_cutwidths() {
        assert_eq!(cutwidth_exact(&undirected(3, &[(0, 1), (1, 2)])).unwrap().0, 1);
        let c4 = undirected(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(cutwidth_exact(&c4).unwrap().0, 2);
        assert_eq!(brute_cw(&c4), 2);
        let k4 = undirected(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(cutwidth_exact(&k4).unwrap().0, 4);
    }

    #[test]
    fn basic_directed() {
        let e = SmallGraph::directed(2, vec![(0, 1)]).unwrap();
        assert_eq!(directed_cutwidth_exact(&e).unwrap().0, 1);
        for k in 2..8 {
            let p = SmallGraph::directed(k, (0..k - 1).map(|i| (i + 1, i)).collect()).unwrap();
            let (w, lo) = directed_cutwidth_exact(&p).unwrap();
            assert_eq!(w, 1);
            assert_eq!(lo.order, (0..k).rev().collect::<Vec<_>>());
        }
        let cyc = SmallGraph::directed(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(directed_cutwidth_exact(&cyc), Err(CutwidthError::NotAcyclic));
    }

    #[test]
    fn solvers_match_brute_force() {
        // every graph on 5 labeled vertices, and the orientations induced by
        // the vertex labels
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            if mask % 7 != 0 {
                continue;
            }
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = undirected(5, &edges);
            let (w, lo) = cutwidth_exact(&g).unwrap();
            assert_eq!(w, brute_cw(&g));
            assert_eq!(lo.width(), w);
            let d = SmallGraph::directed(5, edges.clone()).unwrap();
            let (dw, dlo) = directed_cutwidth_exact(&d).unwrap();
            assert_eq!(dw, brute_dcw(&d), "{edges:?}");
            assert_eq!(dlo.width(), dw);
        }
    }

    #[test]
    fn parallel_edges_count_twice() {
        let g = undirected(2, &[(0, 1), (0, 1)]);
        assert_eq!(cutwidth_exact(&g).unwrap().0, 2);
        let d = SmallGraph::directed(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(directed_cutwidth_exact(&d).unwrap().0, 2);
    }

    #[test]
    fn triangle_reduction() {
        let g = undirected(3, &[(0, 1), (1, 2), (2, 0)]);
        let red = reduce_to_dcw(&g).unwrap();
        assert_eq!(red.h.vertex_count(), 9);
        assert_eq!(red.h.edges().len(), 12);
        for perm in all_orders(3) {
            let sg = g.linear_order(perm).unwrap();
            let sh = order_g_to_h(&g, &red, &sg).unwrap();
            assert!(sh.width() <= 2 * sg.width() + 2);
        }
        assert_eq!(cutwidth_exact(&g).unwrap().0, 2);
        assert_eq!(directed_cutwidth_exact(&red.h).unwrap().0, 6);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            reduce_to_dcw(&undirected(3, &[(0, 1)])),
            Err(CutwidthError::IsolatedVertex(2))
        );
        assert_eq!(
            reduce_to_dcw(&undirected(5, &[(0, 1), (2, 3), (3, 4)])),
            Err(CutwidthError::IsolatedEdge(0, 1))
        );
    }

    #[test]
    fn vertex_cuts_in_h() {
        let g = undirected(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 3)]);
        let red = reduce_to_dcw(&g).unwrap();
        for perm in all_orders(5) {
            let sg = g.linear_order(perm.clone()).unwrap();
            let sh = order_g_to_h(&g, &red, &sg).unwrap();
            let sizes = lbr_sizes(&g, &perm);
            for (i, &v) in perm.iter().enumerate() {
                let at = sh.order.iter().position(|&x| x == v).unwrap();
                let before = if at == 0 { 0 } else { sh.cuts[at - 1] };
                let (l, b, r) = sizes[i];
                assert_eq!(before, 2 * (l + b + r));
                assert_eq!(sh.cuts.get(at).copied().unwrap_or(0), 2 * (l + b + r));
            }
        }
    }

    #[test]
    fn no_improvable_pair_is_fixed_point() {
        let g = undirected(3, &[(0, 1), (1, 2)]);
        let red = reduce_to_dcw(&g).unwrap();
        let sg = g.linear_order(vec![0, 1, 2]).unwrap();
        let sh = order_g_to_h(&g, &red, &sg).unwrap();
        let (back, ex) = order_h_to_g(&g, &red, &sh).unwrap();
        assert!(ex.is_empty());
        assert_eq!(back, sg);
    }

    #[test]
    fn planarity() {
        let k4 = undirected(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(is_planar_small(&k4));
        let k33 = undirected(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        );
        assert!(!is_planar_small(&k33));
        let prism = undirected(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        );
        assert!(is_planar_small(&prism));
    }

    #[test]
    fn generator_counts() {
        // labeled connected graphs on 4 vertices: 38; all have max degree 3
        assert_eq!(connected_bounded_degree_graphs(4, 3).len(), 38);
        // labeled trees on 4 vertices: 16; path-like trees (max degree 2): 12
        let paths = connected_bounded_degree_graphs(4, 2)
            .into_iter()
            .filter(|g| g.edges.len() == 3)
            .count();
        assert_eq!(paths, 12);
    }

    #[test]
    fn graph_text_round_trip() {
        let g = undirected(4, &[(0, 1), (2, 3), (1, 2)]);
        let text = g.to_string();
        assert_eq!(text, "undirected 4\n0 1\n2 3\n1 2\n");
        assert_eq!(text.parse::<SmallGraph>().unwrap(), g);
        assert!(matches!(
            "directed 2\n0 5\n".parse::<SmallGraph>(),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            "graph 2\n".parse::<SmallGraph>(),
            Err(ParseError::Syntax { line: 1, .. })
        ));
    }
}
