//! Digraph-to-cards gadgets and the even dicycle-factor oracle.
//!
//! A digraph has an *even dicycle-factor* when some edge subset covers every
//! vertex with in- and out-degree exactly one and every resulting cycle has
//! even length. The gadgets translate that question into swish questions:
//!
//! - [`reduce_row_grid`] places each vertex on its own row of an `n x 4`
//!   grid. An edge `(u, v)` becomes a card with hoop at `(u, 1)` and ball at
//!   `(v, 1)`; three chain cards per vertex tie columns 1 through 4 of its
//!   row together. A swish of size `4n` under the flip-only policy exists
//!   exactly when the digraph has an even dicycle-factor.
//! - [`reduce_column_grid`] folds the same construction onto a single-column
//!   grid of height `4n`, where the 180-degree rotation plays the mirror role
//!   the flip plays on the row grid.
//! - [`split_vertices_tripartite`] and [`build_restricted_cards`] produce the
//!   degree-restricted instance variant in which every grid point carries
//!   exactly one hoop and at most two balls, or exactly one ball and at most
//!   two hoops.
//! - [`swish_from_dicycle_factor`] turns an oracle witness into an explicit
//!   swish by 2-coloring each even cycle and mirroring the blue cards.

use crate::cards::{Card, CardSet, Placement, SwishSolution};
use crate::grid::{GridDims, Point, Transform, TransformPolicy};
use crate::matching::{perfect_matching_exists, WeightedBipartiteGraph};
use crate::search::{BudgetMeter, SearchBudget};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("self-loop at vertex {vertex} is not allowed")]
    SelfLoop { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("reduction requires at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} violates the degree bounds (in {in_degree}, out {out_degree})")]
    DegreeBoundViolated {
        vertex: usize,
        in_degree: usize,
        out_degree: usize,
    },
    #[error("point {point} violates the per-point restriction: {hoops} hoops, {balls} balls")]
    ConditionStarViolated {
        point: Point,
        hoops: usize,
        balls: usize,
    },
    #[error("edge subset is not an even dicycle-factor")]
    InvalidWitness,
}

/// A directed graph without self-loops; parallel edges are permitted.
/// Vertices are `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, DigraphError> {
        for &(u, v) in &edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(DigraphError::VertexOutOfRange {
                        vertex: x,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(DigraphError::SelfLoop { vertex: u });
            }
        }
        Ok(Digraph {
            vertex_count,
            edges,
        })
    }

    /// The directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Self {
        let edges = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Digraph::new(n, edges).expect("a cycle on n >= 2 vertices has no self-loops")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// A subset of edge indices of a [`Digraph`], used as a dicycle-factor
/// witness. Indices are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSubset {
    pub edges: Vec<usize>,
}

impl EdgeSubset {
    pub fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        EdgeSubset { edges }
    }

    /// Check the witness invariants: every vertex covered with in- and
    /// out-degree exactly one, and every cycle of even length.
    pub fn is_even_dicycle_factor(&self, g: &Digraph) -> bool {
        let n = g.vertex_count();
        let mut succ = vec![usize::MAX; n];
        let mut in_deg = vec![0usize; n];
        for &ei in &self.edges {
            let Some(&(u, v)) = g.edges().get(ei) else {
                return false;
            };
            if succ[u] != usize::MAX {
                return false;
            }
            succ[u] = v;
            in_deg[v] += 1;
        }
        if succ.contains(&usize::MAX) || in_deg.iter().any(|&d| d != 1) {
            return false;
        }
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len = 0usize;
            let mut v = start;
            loop {
                visited[v] = true;
                v = succ[v];
                len += 1;
                if v == start {
                    break;
                }
            }
            if !len.is_multiple_of(2) {
                return false;
            }
        }
        true
    }
}

/// Answer of the dicycle-factor oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes(EdgeSubset),
    No,
    Unknown,
}

impl OracleAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, OracleAnswer::Yes(_))
    }
}

/// Exhaustive search for an even dicycle-factor.
///
/// A dicycle-factor is a successor function realized by edges, so the search
/// assigns an outgoing edge to one vertex at a time, tracking the open paths
/// of the partial assignment and refusing to close any odd cycle. Parallel
/// edges toward the same target are interchangeable and only the first is
/// tried. `No` is only reported after exhausting the space; an exhausted
/// budget yields `Unknown`.
pub fn even_dicycle_factor_oracle(g: &Digraph, budget: SearchBudget) -> OracleAnswer {
    let n = g.vertex_count();
    if n == 0 {
        return OracleAnswer::Yes(EdgeSubset::new(Vec::new()));
    }
    let mut out_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (ei, &(u, v)) in g.edges().iter().enumerate() {
        if !out_edges[u].iter().any(|&(t, _)| t == v) {
            out_edges[u].push((v, ei));
        }
    }

    struct State {
        chosen: Vec<usize>,
        in_taken: Vec<bool>,
        /// For a path endpoint, the opposite endpoint (itself for singletons).
        other_end: Vec<usize>,
        /// Edge length of the path, valid at endpoints.
        path_len: Vec<usize>,
        meter: BudgetMeter,
    }

    fn assign(state: &mut State, out_edges: &[Vec<(usize, usize)>], u: usize, n: usize) -> Option<bool> {
        if u == n {
            return Some(true);
        }
        if state.meter.spend() {
            return None;
        }
        for &(v, ei) in &out_edges[u] {
            if state.in_taken[v] {
                continue;
            }
            if state.other_end[u] == v {
                // Closing the path into a cycle; only even lengths survive.
                if !(state.path_len[u] + 1).is_multiple_of(2) {
                    continue;
                }
                state.in_taken[v] = true;
                state.chosen.push(ei);
                match assign(state, out_edges, u + 1, n) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
                state.chosen.pop();
                state.in_taken[v] = false;
            } else {
                // Merge the path ending at u with the path starting at v.
                let s = state.other_end[u];
                let t = state.other_end[v];
                let merged = state.path_len[u] + state.path_len[v] + 1;
                let saved = (state.other_end[s], state.other_end[t], state.path_len[s], state.path_len[t]);
                state.other_end[s] = t;
                state.other_end[t] = s;
                state.path_len[s] = merged;
                state.path_len[t] = merged;
                state.in_taken[v] = true;
                state.chosen.push(ei);
                match assign(state, out_edges, u + 1, n) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
                state.chosen.pop();
                state.in_taken[v] = false;
                state.other_end[s] = saved.0;
                state.other_end[t] = saved.1;
                state.path_len[s] = saved.2;
                state.path_len[t] = saved.3;
            }
        }
        Some(false)
    }

    let mut state = State {
        chosen: Vec::with_capacity(n),
        in_taken: vec![false; n],
        other_end: (0..n).collect(),
        path_len: vec![0; n],
        meter: BudgetMeter::new(budget),
    };
    match assign(&mut state, &out_edges, 0, n) {
        Some(true) => {
            let witness = EdgeSubset::new(state.chosen);
            debug_assert!(witness.is_even_dicycle_factor(g));
            OracleAnswer::Yes(witness)
        }
        Some(false) => OracleAnswer::No,
        None => OracleAnswer::Unknown,
    }
}

/// What a gadget card stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CardRole {
    /// Card encoding the digraph edge with this index.
    Edge(usize),
    /// The `seg`-th chain card (1, 2, or 3) of this vertex's row segment.
    Chain { vertex: usize, seg: usize },
}

/// Bijection between (vertex, level) names and grid points.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PointNaming {
    points: Vec<[Point; 4]>,
}

impl PointNaming {
    fn new(points: Vec<[Point; 4]>, dims: GridDims) -> Self {
        let mut seen = vec![false; dims.point_count()];
        for levels in &points {
            for p in levels {
                let idx = dims.index_of(*p);
                assert!(!seen[idx], "point naming must be injective");
                seen[idx] = true;
            }
        }
        assert!(
            seen.iter().all(|&s| s),
            "point naming must cover the whole grid"
        );
        PointNaming { points }
    }
}

/// A card instance produced from a digraph, with enough bookkeeping to map
/// witnesses in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub cards: CardSet,
    /// The swish size that certifies an even dicycle-factor: `4 * |V|`.
    pub target_size: usize,
    pub policy: TransformPolicy,
    /// Parallel to `cards`.
    pub roles: Vec<CardRole>,
    /// The transform that maps level `j` of a vertex to level `5 - j`:
    /// the horizontal flip on the row grid, the rotation on the column grid.
    pub mirror: Transform,
    naming: PointNaming,
}

impl ReductionOutput {
    /// Grid point named `(vertex, level)`, with `level` in `1..=4`.
    pub fn point_of(&self, vertex: usize, level: usize) -> Point {
        self.naming.points[vertex][level - 1]
    }

    pub fn vertex_count(&self) -> usize {
        self.naming.points.len()
    }
}

/// Build the row-grid gadget: an `n x 4` grid, one card per edge, three
/// chain cards per vertex, target size `4n`, flip-only policy.
pub fn reduce_row_grid(g: &Digraph) -> Result<ReductionOutput, ReductionError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(ReductionError::EmptyGraph);
    }
    let dims = GridDims::new(n, 4).expect("n >= 1");
    let naming: Vec<[Point; 4]> = (0..n)
        .map(|v| [1, 2, 3, 4].map(|j| Point::new(v + 1, j)))
        .collect();
    Ok(assemble_gadget(g, dims, naming, TransformPolicy::FLIP_ONLY, Transform::FlipH))
}

/// Policy choice for the column gadget, where rotation is the meaningful
/// transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnPolicy {
    RotateOnly,
    Both,
}

/// Build the column-grid gadget: a `4n x 1` grid whose rows are named so
/// that row `i` carries level `j` of a vertex exactly when row `h - i + 1`
/// carries level `5 - j` of the same vertex. Levels 1 and 2 occupy the top
/// two blocks in vertex order; levels 3 and 4 mirror them from the bottom.
pub fn reduce_column_grid(
    g: &Digraph,
    policy: ColumnPolicy,
) -> Result<ReductionOutput, ReductionError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(ReductionError::EmptyGraph);
    }
    let dims = GridDims::new(4 * n, 1).expect("n >= 1");
    let naming: Vec<[Point; 4]> = (0..n)
        .map(|v| {
            [
                Point::new(v + 1, 1),
                Point::new(n + v + 1, 1),
                Point::new(3 * n - v, 1),
                Point::new(4 * n - v, 1),
            ]
        })
        .collect();
    let policy = match policy {
        ColumnPolicy::RotateOnly => TransformPolicy::ROTATE_ONLY,
        ColumnPolicy::Both => TransformPolicy::BOTH,
    };
    Ok(assemble_gadget(g, dims, naming, policy, Transform::Rotate180))
}

fn assemble_gadget(
    g: &Digraph,
    dims: GridDims,
    naming: Vec<[Point; 4]>,
    policy: TransformPolicy,
    mirror: Transform,
) -> ReductionOutput {
    let n = g.vertex_count();
    let naming = PointNaming::new(naming, dims);
    let mut cards = Vec::with_capacity(g.edge_count() + 3 * n);
    let mut roles = Vec::with_capacity(cards.capacity());
    for (ei, &(u, v)) in g.edges().iter().enumerate() {
        cards.push(Card::new(naming.points[u][0], naming.points[v][0]));
        roles.push(CardRole::Edge(ei));
    }
    for v in 0..n {
        for seg in 1..=3 {
            cards.push(Card::new(naming.points[v][seg - 1], naming.points[v][seg]));
            roles.push(CardRole::Chain { vertex: v, seg });
        }
    }
    ReductionOutput {
        cards: CardSet::new_unchecked(dims, cards),
        target_size: 4 * n,
        policy,
        roles,
        mirror,
        naming,
    }
}

/// Transport an even dicycle-factor into an explicit swish of the gadget.
///
/// Each even cycle of the factor is edge-2-colored alternately starting from
/// its lowest edge index; cards of one color are used as-is and cards of the
/// other color mirrored. Chain cards follow the orientation of the edge
/// entering their vertex. The result has exactly `4 * |V|` placements.
pub fn swish_from_dicycle_factor(
    output: &ReductionOutput,
    g: &Digraph,
    factor: &EdgeSubset,
) -> Result<SwishSolution, ReductionError> {
    if !factor.is_even_dicycle_factor(g) {
        return Err(ReductionError::InvalidWitness);
    }
    let n = g.vertex_count();
    let mut succ: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX); n];
    for &ei in &factor.edges {
        let (u, v) = g.edges()[ei];
        succ[u] = (v, ei);
    }

    // Alternately color each cycle, red first from its lowest edge index.
    let mut mirrored_edge = vec![false; g.edge_count()];
    let mut incoming_mirrored = vec![false; n];
    let mut visited = vec![false; n];
    for start in 0..n {
        if visited[start] {
            continue;
        }
        // Walk the cycle once to find its lowest edge index.
        let mut at = start;
        let mut cycle = Vec::new();
        loop {
            visited[at] = true;
            cycle.push(at);
            at = succ[at].0;
            if at == start {
                break;
            }
        }
        let anchor = cycle
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| succ[v].1)
            .map(|(pos, _)| pos)
            .expect("cycles are nonempty");
        for (offset, pos) in (0..cycle.len()).map(|o| (o, (anchor + o) % cycle.len())) {
            let v = cycle[pos];
            let (next, ei) = succ[v];
            let mirrored = offset % 2 == 1;
            mirrored_edge[ei] = mirrored;
            incoming_mirrored[next] = mirrored;
        }
    }

    let mut placements = Vec::with_capacity(4 * n);
    for (card_index, role) in output.roles.iter().enumerate() {
        let transform = match *role {
            CardRole::Edge(ei) => {
                if !factor.edges.contains(&ei) {
                    continue;
                }
                if mirrored_edge[ei] {
                    output.mirror
                } else {
                    Transform::Identity
                }
            }
            // An unmirrored incoming edge puts the ball on level 1, so the
            // chain must run upward from there; a mirrored one puts it on
            // level 4 and the chain mirrors too.
            CardRole::Chain { vertex, .. } => {
                if incoming_mirrored[vertex] {
                    output.mirror
                } else {
                    Transform::Identity
                }
            }
        };
        placements.push(Placement::new(card_index, transform));
    }
    SwishSolution::new(placements).map_err(|_| ReductionError::InvalidWitness)
}

/// Vertex class in a tripartite split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexClass {
    Minus,
    Circ,
    Plus,
}

/// The split of a digraph into entry, parity, and exit copies of each vertex.
///
/// Vertex `v` of the original graph becomes `v-` (index `v`), `v°` (index
/// `n + v`), and `v+` (index `2n + v`), joined by edges `(v-, v°)` and
/// `(v°, v+)`; each original edge `(u, v)` becomes `(u+, v-)`. Cycles triple
/// in length, so parities, and with them even dicycle-factors, are preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripartiteSplit {
    graph: Digraph,
    original_vertices: usize,
}

impl TripartiteSplit {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn original_vertices(&self) -> usize {
        self.original_vertices
    }

    pub fn minus(&self, v: usize) -> usize {
        v
    }

    pub fn circ(&self, v: usize) -> usize {
        self.original_vertices + v
    }

    pub fn plus(&self, v: usize) -> usize {
        2 * self.original_vertices + v
    }

    pub fn class_of(&self, vertex: usize) -> VertexClass {
        match vertex / self.original_vertices {
            0 => VertexClass::Minus,
            1 => VertexClass::Circ,
            _ => VertexClass::Plus,
        }
    }
}

/// Split every vertex into three copies; see [`TripartiteSplit`].
pub fn split_vertices_tripartite(g: &Digraph) -> TripartiteSplit {
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(2 * n + g.edge_count());
    for v in 0..n {
        edges.push((v, n + v));
        edges.push((n + v, 2 * n + v));
    }
    for &(u, v) in g.edges() {
        edges.push((2 * n + u, v));
    }
    TripartiteSplit {
        graph: Digraph::new(3 * n, edges).expect("split introduces no self-loops"),
        original_vertices: n,
    }
}

/// Result of the restricted-instance construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RestrictedCards {
    Instance(ReductionOutput),
    /// No perfect matching from the exit copies to the entry copies exists,
    /// so the graph has no cycle-factor at all, even ignoring parity.
    NoCycleFactor,
}

/// Build the degree-restricted row-grid instance from a tripartite split.
///
/// Exit-to-entry edges outside a fixed perfect matching are baked in
/// mirrored (their card lives on level 4), as are the chain cards of entry
/// and parity vertices. Afterwards every grid point carries exactly one hoop
/// and at most two balls, or exactly one ball and at most two hoops; that is
/// verified before returning and a violation is reported as an error since
/// it can only mean the construction itself is wrong.
///
/// Requires in-degree at most 3 on entry copies and out-degree at most 3 on
/// exit copies, which holds for splits of digraphs with degrees at most 3.
pub fn build_restricted_cards(
    split: &TripartiteSplit,
) -> Result<RestrictedCards, ReductionError> {
    let g = split.graph();
    let n = split.original_vertices();
    if n == 0 {
        return Err(ReductionError::EmptyGraph);
    }
    let total = g.vertex_count();
    let mut in_deg = vec![0usize; total];
    let mut out_deg = vec![0usize; total];
    for &(u, v) in g.edges() {
        out_deg[u] += 1;
        in_deg[v] += 1;
    }
    for v in 0..total {
        let bound_ok = match split.class_of(v) {
            VertexClass::Minus => out_deg[v] == 1 && in_deg[v] <= 3,
            VertexClass::Circ => out_deg[v] == 1 && in_deg[v] == 1,
            VertexClass::Plus => in_deg[v] == 1 && out_deg[v] <= 3,
        };
        if !bound_ok {
            return Err(ReductionError::DegreeBoundViolated {
                vertex: v,
                in_degree: in_deg[v],
                out_degree: out_deg[v],
            });
        }
    }

    // A cycle-factor must match exit copies to entry copies perfectly.
    let mut bipartite = WeightedBipartiteGraph::new(n, n);
    for &(u, v) in g.edges() {
        if split.class_of(u) == VertexClass::Plus {
            bipartite.add_edge(u - 2 * n, v, 1);
        }
    }
    let matching = match perfect_matching_exists(&bipartite).expect("indices in range") {
        Some(m) => m,
        None => return Ok(RestrictedCards::NoCycleFactor),
    };
    let matched: std::collections::HashSet<(usize, usize)> = matching
        .pairs
        .iter()
        .map(|&(u_plus, v_minus)| (2 * n + u_plus, v_minus))
        .collect();

    let dims = GridDims::new(total, 4).expect("split has vertices");
    let naming_points: Vec<[Point; 4]> = (0..total)
        .map(|v| [1, 2, 3, 4].map(|j| Point::new(v + 1, j)))
        .collect();
    let point = |v: usize, level: usize| naming_points[v][level - 1];

    let mut cards = Vec::with_capacity(g.edge_count() + 3 * total);
    let mut roles = Vec::with_capacity(cards.capacity());
    for (ei, &(u, v)) in g.edges().iter().enumerate() {
        let mirrored =
            split.class_of(u) == VertexClass::Plus && !matched.contains(&(u, v));
        let card = if mirrored {
            Card::new(point(u, 4), point(v, 4))
        } else {
            Card::new(point(u, 1), point(v, 1))
        };
        cards.push(card);
        roles.push(CardRole::Edge(ei));
    }
    for v in 0..total {
        let mirrored = matches!(
            split.class_of(v),
            VertexClass::Minus | VertexClass::Circ
        );
        for seg in 1..=3 {
            let card = if mirrored {
                Card::new(point(v, 5 - seg), point(v, 4 - seg))
            } else {
                Card::new(point(v, seg), point(v, seg + 1))
            };
            cards.push(card);
            roles.push(CardRole::Chain { vertex: v, seg });
        }
    }

    // Condition check: every point must be hoop-pinned or ball-pinned.
    let mut hoops = vec![0usize; dims.point_count()];
    let mut balls = vec![0usize; dims.point_count()];
    for card in &cards {
        hoops[dims.index_of(card.hoop)] += 1;
        balls[dims.index_of(card.ball)] += 1;
    }
    for idx in 0..dims.point_count() {
        let (h, b) = (hoops[idx], balls[idx]);
        if !((h == 1 && b <= 2) || (b == 1 && h <= 2)) {
            return Err(ReductionError::ConditionStarViolated {
                point: dims.point_at(idx),
                hoops: h,
                balls: b,
            });
        }
    }

    Ok(RestrictedCards::Instance(ReductionOutput {
        cards: CardSet::new_unchecked(dims, cards),
        target_size: 4 * total,
        policy: TransformPolicy::FLIP_ONLY,
        roles,
        mirror: Transform::FlipH,
        naming: PointNaming::new(naming_points, dims),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::verify_swish;
    use crate::search::{exists_swish_geq, SwishDecision};
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};

    /// Independent oracle: try every vertex permutation as a successor
    /// function and check edges, coverage, and parity directly.
    pub(crate) fn brute_force_even_dicycle_factor(g: &Digraph) -> bool {
        let n = g.vertex_count();
        if n == 0 {
            return true;
        }
        let has_edge: std::collections::HashSet<(usize, usize)> =
            g.edges().iter().copied().collect();
        (0..n).permutations(n).any(|succ| {
            if (0..n).any(|v| !has_edge.contains(&(v, succ[v]))) {
                return false;
            }
            let mut visited = vec![false; n];
            for start in 0..n {
                if visited[start] {
                    continue;
                }
                let mut len = 0;
                let mut v = start;
                loop {
                    visited[v] = true;
                    v = succ[v];
                    len += 1;
                    if v == start {
                        break;
                    }
                }
                if len % 2 != 0 {
                    return false;
                }
            }
            true
        })
    }

    fn two_cycle() -> Digraph {
        Digraph::cycle(2)
    }

    #[test]
    fn self_loops_are_rejected() {
        assert_eq!(
            Digraph::new(2, vec![(0, 0)]),
            Err(DigraphError::SelfLoop { vertex: 0 })
        );
        assert!(matches!(
            Digraph::new(2, vec![(0, 2)]),
            Err(DigraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn oracle_on_small_cycles() {
        match even_dicycle_factor_oracle(&two_cycle(), SearchBudget::UNLIMITED) {
            OracleAnswer::Yes(f) => assert_eq!(f.edges, vec![0, 1]),
            other => panic!("expected yes, got {other:?}"),
        }
        assert_eq!(
            even_dicycle_factor_oracle(&Digraph::cycle(3), SearchBudget::UNLIMITED),
            OracleAnswer::No
        );
    }

    #[test]
    fn oracle_on_disjoint_two_cycles() {
        let g = Digraph::new(4, vec![(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        match even_dicycle_factor_oracle(&g, SearchBudget::UNLIMITED) {
            OracleAnswer::Yes(f) => assert!(f.is_even_dicycle_factor(&g)),
            other => panic!("expected yes, got {other:?}"),
        }
    }

    #[test]
    fn oracle_on_four_cycle_with_chord() {
        let g = Digraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        match even_dicycle_factor_oracle(&g, SearchBudget::UNLIMITED) {
            OracleAnswer::Yes(f) => {
                assert!(f.is_even_dicycle_factor(&g));
                assert_eq!(f.edges, vec![0, 1, 2, 3]);
            }
            other => panic!("expected yes, got {other:?}"),
        }
        assert!(brute_force_even_dicycle_factor(&g));
    }

    #[test]
    fn oracle_matches_brute_force_on_random_digraphs() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(53);
        for _ in 0..120 {
            let n = rng.random_range(1..=5);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.random_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Digraph::new(n, edges).unwrap();
            let expected = brute_force_even_dicycle_factor(&g);
            match even_dicycle_factor_oracle(&g, SearchBudget::UNLIMITED) {
                OracleAnswer::Yes(f) => {
                    assert!(expected);
                    assert!(f.is_even_dicycle_factor(&g));
                }
                OracleAnswer::No => assert!(!expected),
                OracleAnswer::Unknown => panic!("unlimited budget cannot exhaust"),
            }
        }
    }

    #[test]
    fn oracle_respects_budget() {
        let g = Digraph::cycle(6);
        assert_eq!(
            even_dicycle_factor_oracle(&g, SearchBudget::default().with_node_limit(1)),
            OracleAnswer::Unknown
        );
    }

    #[test]
    fn row_gadget_counts() {
        let out = reduce_row_grid(&two_cycle()).unwrap();
        assert_eq!(out.cards.len(), 2 + 6);
        assert_eq!(out.target_size, 8);
        assert_eq!(out.cards.dims().rows(), 2);
        assert_eq!(out.cards.dims().cols(), 4);
        assert_eq!(out.policy, TransformPolicy::FLIP_ONLY);

        let c3 = reduce_row_grid(&Digraph::cycle(3)).unwrap();
        assert_eq!(c3.cards.len(), 3 + 9);
        assert_eq!(c3.target_size, 12);
    }

    #[test]
    fn row_gadget_card_shapes() {
        let g = Digraph::new(2, vec![(0, 1)]).unwrap();
        let out = reduce_row_grid(&g).unwrap();
        // Edge card: hoop on (1,1), ball on (2,1).
        assert_eq!(out.cards.cards()[0], Card::from_coords(1, 1, 2, 1));
        // First chain card of vertex 0: (1,1) -> (1,2).
        assert_eq!(out.cards.cards()[1], Card::from_coords(1, 1, 1, 2));
        assert_eq!(out.roles[1], CardRole::Chain { vertex: 0, seg: 1 });
    }

    #[test]
    fn reductions_reject_the_empty_graph() {
        let g = Digraph::new(0, vec![]).unwrap();
        assert_eq!(reduce_row_grid(&g), Err(ReductionError::EmptyGraph));
        assert_eq!(
            reduce_column_grid(&g, ColumnPolicy::RotateOnly),
            Err(ReductionError::EmptyGraph)
        );
    }

    #[test]
    fn column_gadget_single_vertex_naming() {
        let g = Digraph::new(1, vec![]).unwrap();
        let out = reduce_column_grid(&g, ColumnPolicy::RotateOnly).unwrap();
        for level in 1..=4 {
            assert_eq!(out.point_of(0, level), Point::new(level, 1));
        }
    }

    #[test]
    fn column_gadget_two_vertex_naming() {
        let out = reduce_column_grid(&two_cycle(), ColumnPolicy::RotateOnly).unwrap();
        let expect = [
            (0, 1, 1),
            (1, 1, 2),
            (0, 2, 3),
            (1, 2, 4),
            (1, 3, 5),
            (0, 3, 6),
            (1, 4, 7),
            (0, 4, 8),
        ];
        for (v, level, row) in expect {
            assert_eq!(out.point_of(v, level), Point::new(row, 1));
        }
    }

    #[test]
    fn column_gadget_mirror_constraint() {
        for n in 1..=12 {
            let g = Digraph::new(n, vec![]).unwrap();
            let out = reduce_column_grid(&g, ColumnPolicy::Both).unwrap();
            let h = 4 * n;
            for v in 0..n {
                for level in 1..=4 {
                    let p = out.point_of(v, level);
                    let mirrored = out.point_of(v, 5 - level);
                    assert_eq!(mirrored, Point::new(h - p.i + 1, 1));
                }
            }
        }
    }

    #[test]
    fn witness_transport_on_row_gadget() {
        let g = two_cycle();
        let out = reduce_row_grid(&g).unwrap();
        let OracleAnswer::Yes(factor) = even_dicycle_factor_oracle(&g, SearchBudget::UNLIMITED)
        else {
            panic!("two-cycle has a factor")
        };
        let swish = swish_from_dicycle_factor(&out, &g, &factor).unwrap();
        assert_eq!(swish.size(), 8);
        assert!(verify_swish(&out.cards, swish.placements(), out.policy)
            .unwrap()
            .is_valid());
    }

    #[test]
    fn witness_transport_on_column_gadget() {
        let g = Digraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        for policy in [ColumnPolicy::RotateOnly, ColumnPolicy::Both] {
            let out = reduce_column_grid(&g, policy).unwrap();
            let OracleAnswer::Yes(factor) =
                even_dicycle_factor_oracle(&g, SearchBudget::UNLIMITED)
            else {
                panic!("four-cycle has a factor")
            };
            let swish = swish_from_dicycle_factor(&out, &g, &factor).unwrap();
            assert_eq!(swish.size(), 16);
            assert!(verify_swish(&out.cards, swish.placements(), out.policy)
                .unwrap()
                .is_valid());
        }
    }

    #[test]
    fn transport_rejects_non_factors() {
        let g = two_cycle();
        let out = reduce_row_grid(&g).unwrap();
        let bogus = EdgeSubset::new(vec![0]);
        assert_eq!(
            swish_from_dicycle_factor(&out, &g, &bogus),
            Err(ReductionError::InvalidWitness)
        );
    }

    #[test]
    fn three_cycle_reduction_admits_no_target_swish() {
        let g = Digraph::cycle(3);
        let out = reduce_row_grid(&g).unwrap();
        assert_eq!(
            exists_swish_geq(&out.cards, out.policy, out.target_size, SearchBudget::UNLIMITED)
                .unwrap(),
            SwishDecision::No
        );
    }

    #[test]
    fn split_counts_and_classes() {
        let split = split_vertices_tripartite(&two_cycle());
        assert_eq!(split.graph().vertex_count(), 6);
        assert_eq!(split.graph().edge_count(), 6);
        assert_eq!(split.class_of(split.minus(1)), VertexClass::Minus);
        assert_eq!(split.class_of(split.circ(0)), VertexClass::Circ);
        assert_eq!(split.class_of(split.plus(1)), VertexClass::Plus);

        let edgeless = Digraph::new(3, vec![]).unwrap();
        let split = split_vertices_tripartite(&edgeless);
        assert_eq!(split.graph().vertex_count(), 9);
        assert_eq!(split.graph().edge_count(), 6);
    }

    #[test]
    fn split_preserves_the_oracle_answer() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(59);
        for _ in 0..60 {
            let n = rng.random_range(1..=5);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.random_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Digraph::new(n, edges).unwrap();
            let split = split_vertices_tripartite(&g);
            let original = even_dicycle_factor_oracle(&g, SearchBudget::UNLIMITED);
            let after = even_dicycle_factor_oracle(split.graph(), SearchBudget::UNLIMITED);
            assert_eq!(original.is_yes(), after.is_yes());
        }
    }

    #[test]
    fn restricted_cards_of_the_two_cycle_satisfy_the_point_condition() {
        let split = split_vertices_tripartite(&two_cycle());
        match build_restricted_cards(&split).unwrap() {
            RestrictedCards::Instance(out) => {
                assert_eq!(out.cards.len(), 6 + 3 * 6);
                assert_eq!(out.target_size, 24);
                // The condition is checked internally; spot-check one pinned
                // point: level 1 of vertex 0- carries one hoop and two balls
                // or fewer.
                let dims = out.cards.dims();
                let p = out.point_of(0, 1);
                let hoops = out
                    .cards
                    .cards()
                    .iter()
                    .filter(|c| dims.index_of(c.hoop) == dims.index_of(p))
                    .count();
                assert_eq!(hoops, 1);
            }
            RestrictedCards::NoCycleFactor => panic!("two-cycle has a cycle factor"),
        }
    }

    #[test]
    fn source_vertex_makes_the_split_a_no_instance() {
        // Vertex 1 has no incoming edge, so 1- has in-degree 0 in the split
        // and no perfect matching from exit to entry copies exists.
        let g = Digraph::new(2, vec![(1, 0)]).unwrap();
        let split = split_vertices_tripartite(&g);
        assert_eq!(
            build_restricted_cards(&split).unwrap(),
            RestrictedCards::NoCycleFactor
        );
    }

    #[test]
    fn restricted_instances_agree_with_the_oracle_on_small_graphs() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(61);
        for _ in 0..25 {
            let n = rng.random_range(1..=4);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Digraph::new(n, edges).unwrap();
            let split = split_vertices_tripartite(&g);
            let oracle_yes =
                even_dicycle_factor_oracle(&g, SearchBudget::UNLIMITED).is_yes();
            match build_restricted_cards(&split).unwrap() {
                RestrictedCards::Instance(out) => {
                    let decision = exists_swish_geq(
                        &out.cards,
                        out.policy,
                        out.target_size,
                        SearchBudget::UNLIMITED,
                    )
                    .unwrap();
                    assert_eq!(matches!(decision, SwishDecision::Yes(_)), oracle_yes);
                }
                RestrictedCards::NoCycleFactor => assert!(!oracle_yes),
            }
        }
    }

    #[test]
    fn degree_bounds_are_enforced() {
        // A vertex with in-degree 4 exceeds the entry-copy bound.
        let g = Digraph::new(5, vec![(1, 0), (2, 0), (3, 0), (4, 0), (0, 1)]).unwrap();
        let split = split_vertices_tripartite(&g);
        assert!(matches!(
            build_restricted_cards(&split),
            Err(ReductionError::DegreeBoundViolated { .. })
        ));
    }
}
