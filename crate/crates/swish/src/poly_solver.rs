//! Polynomial-time solver for the no-transform variant.
//!
//! Every grid point `p` is split into a hoop copy `p+` on the left and a
//! ball copy `p-` on the right of a bipartite graph. A card with hoop `p`
//! and ball `q` becomes a weight-1 edge from `p+` to `q-`; every point also
//! gets a weight-0 slack edge from `p+` to `p-` meaning "leave this point
//! untouched". Perfect matchings of weight `k` are exactly the swishes of
//! size `k`, so one maximum-weight perfect matching computation answers
//! every size threshold at once.

use crate::cards::{trim_grid, CardSet, Placement, SwishSolution};
use crate::grid::{GridDims, Point};
use crate::matching::{max_weight_perfect_matching, Matching, WeightedBipartiteGraph};
use std::collections::HashMap;

/// What a graph edge stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingEdgeKind {
    /// Weight-1 edge selecting the card with this index.
    Card(usize),
    /// Weight-0 edge leaving this grid point untouched.
    Slack(Point),
}

/// The bipartite graph of a card set together with edge provenance.
#[derive(Debug, Clone)]
pub struct MatchingGraphMap {
    pub graph: WeightedBipartiteGraph,
    /// Parallel to `graph.edges`.
    pub kinds: Vec<MatchingEdgeKind>,
    pub dims: GridDims,
}

impl MatchingGraphMap {
    /// Translate a perfect matching back into a swish: every matched pair is
    /// realized by its maximum-weight edge, and card edges become identity
    /// placements. With two identical cards only one can be matched; either
    /// index is a correct witness member and the lower one wins.
    pub fn swish_from_matching(&self, matching: &Matching) -> SwishSolution {
        let mut best_edge: HashMap<(usize, usize), usize> = HashMap::new();
        for (idx, &(l, r, w)) in self.graph.edges.iter().enumerate() {
            match best_edge.entry((l, r)) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    if w > self.graph.edges[*e.get()].2 {
                        e.insert(idx);
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(idx);
                }
            }
        }
        let placements = matching
            .pairs
            .iter()
            .filter_map(|pair| match self.kinds[best_edge[pair]] {
                MatchingEdgeKind::Card(index) => Some(Placement::identity(index)),
                MatchingEdgeKind::Slack(_) => None,
            })
            .collect();
        SwishSolution::new(placements).expect("matching covers each card edge at most once")
    }
}

/// Build the bipartite graph of a card set on its own grid: `h * w` vertices
/// on each side, one weight-1 edge per card, one weight-0 slack edge per
/// point. The grid is used as given; [`solve_no_transform`] trims it first.
pub fn build_matching_graph(cards: &CardSet) -> MatchingGraphMap {
    let dims = cards.dims();
    let n = dims.point_count();
    let mut graph = WeightedBipartiteGraph::new(n, n);
    let mut kinds = Vec::with_capacity(cards.len() + n);
    for (index, card) in cards.cards().iter().enumerate() {
        graph.add_edge(dims.index_of(card.hoop), dims.index_of(card.ball), 1);
        kinds.push(MatchingEdgeKind::Card(index));
    }
    for p in dims.points() {
        graph.add_edge(dims.index_of(p), dims.index_of(p), 0);
        kinds.push(MatchingEdgeKind::Slack(p));
    }
    MatchingGraphMap { graph, kinds, dims }
}

/// Maximum swish size without flips or rotations, with a witness.
///
/// The grid is trimmed first (rows and columns without symbols cannot affect
/// any identity placement), the bipartite graph is solved exactly, and the
/// matched card edges are read back as the witness. The all-slack matching
/// always exists, so the result is never smaller than zero and never fails.
pub fn solve_no_transform(cards: &CardSet) -> (usize, SwishSolution) {
    let trimmed = trim_grid(cards);
    let map = build_matching_graph(&trimmed.cards);
    let matching = max_weight_perfect_matching(&map.graph)
        .expect("graph indices are in range by construction")
        .expect("the all-slack matching is always perfect");
    let witness = map.swish_from_matching(&matching);
    let size = usize::try_from(matching.total_weight).expect("card-edge weights are nonnegative");
    debug_assert_eq!(size, witness.size());
    (size, witness)
}
