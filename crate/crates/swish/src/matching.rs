//! Maximum-weight perfect matching in bipartite graphs with integer weights.
//!
//! This is the Hungarian method with potentials, run row by row with a
//! Dijkstra-style search for the cheapest augmenting path. Weights are exact
//! integers; internally the solver works on negated weights (a minimum-cost
//! assignment) in 128-bit arithmetic so potential shifts cannot overflow.
//! Missing edges are simply absent rather than sentinel weights.

use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("edge ({left}, {right}) out of range for a {left_size}x{right_size} bipartite graph")]
    IndexOutOfRange {
        left: usize,
        right: usize,
        left_size: usize,
        right_size: usize,
    },
}

/// A bipartite graph with integer edge weights. Parallel edges are allowed;
/// only the maximum-weight edge between a pair of vertices can ever be
/// matched, so the solver reduces them up front.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedBipartiteGraph {
    pub left_size: usize,
    pub right_size: usize,
    /// `(left index, right index, weight)` triples.
    pub edges: Vec<(usize, usize, i64)>,
}

impl WeightedBipartiteGraph {
    pub fn new(left_size: usize, right_size: usize) -> Self {
        WeightedBipartiteGraph {
            left_size,
            right_size,
            edges: Vec::new(),
        }
    }

    pub fn add_edge(&mut self, left: usize, right: usize, weight: i64) {
        self.edges.push((left, right, weight));
    }

    fn validate(&self) -> Result<(), MatchingError> {
        for &(l, r, _) in &self.edges {
            if l >= self.left_size || r >= self.right_size {
                return Err(MatchingError::IndexOutOfRange {
                    left: l,
                    right: r,
                    left_size: self.left_size,
                    right_size: self.right_size,
                });
            }
        }
        Ok(())
    }
}

/// A perfect matching: one `(left, right)` pair per vertex, sorted by left
/// index, with its exact total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub total_weight: i64,
}

const UNMATCHED: usize = usize::MAX;
const INF: i128 = i128::MAX;

/// Compute a maximum-weight perfect matching, or `None` when the graph has
/// no perfect matching at all (including when the two sides have different
/// sizes). Ties between equal-weight optima are broken arbitrarily.
pub fn max_weight_perfect_matching(
    g: &WeightedBipartiteGraph,
) -> Result<Option<Matching>, MatchingError> {
    g.validate()?;
    if g.left_size != g.right_size {
        return Ok(None);
    }
    let n = g.left_size;
    if n == 0 {
        return Ok(Some(Matching {
            pairs: Vec::new(),
            total_weight: 0,
        }));
    }

    // Parallel edges: keep the best weight per vertex pair.
    let mut best: HashMap<(usize, usize), i64> = HashMap::new();
    for &(l, r, w) in &g.edges {
        best.entry((l, r))
            .and_modify(|cur| *cur = (*cur).max(w))
            .or_insert(w);
    }
    let mut adj: Vec<Vec<(usize, i128)>> = vec![Vec::new(); n];
    for (&(l, r), &w) in &best {
        adj[l].push((r, -(w as i128)));
    }

    // Row potentials u, column potentials v; column n is the virtual root of
    // each augmenting search. match_of[j] is the row matched to column j.
    let mut u = vec![0i128; n];
    let mut v = vec![0i128; n + 1];
    let mut match_of = vec![UNMATCHED; n + 1];
    let mut way = vec![n; n + 1];

    for row in 0..n {
        match_of[n] = row;
        let mut j0 = n;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = match_of[j0];
            for &(j, cost) in &adj[i0] {
                if !used[j] {
                    let cur = cost - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                }
            }
            let mut delta = INF;
            let mut j1 = UNMATCHED;
            for j in 0..n {
                if !used[j] && minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if j1 == UNMATCHED {
                // No column reachable from the alternating tree.
                return Ok(None);
            }
            for j in 0..=n {
                if used[j] {
                    u[match_of[j]] += delta;
                    v[j] -= delta;
                } else if minv[j] < INF {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if match_of[j0] == UNMATCHED {
                break;
            }
        }
        // Flip the alternating path back to the virtual root.
        loop {
            let j1 = way[j0];
            match_of[j0] = match_of[j1];
            j0 = j1;
            if j0 == n {
                break;
            }
        }
    }

    let mut pairs: Vec<(usize, usize)> = (0..n).map(|j| (match_of[j], j)).collect();
    pairs.sort_unstable();
    let total: i128 = pairs.iter().map(|&(l, r)| best[&(l, r)] as i128).sum();
    Ok(Some(Matching {
        pairs,
        total_weight: i64::try_from(total).expect("matching weight exceeds i64"),
    }))
}

/// Decide whether any perfect matching exists, returning one as a witness.
/// This is the weighted solver run with unit weights.
pub fn perfect_matching_exists(
    g: &WeightedBipartiteGraph,
) -> Result<Option<Matching>, MatchingError> {
    let unit = WeightedBipartiteGraph {
        left_size: g.left_size,
        right_size: g.right_size,
        edges: g.edges.iter().map(|&(l, r, _)| (l, r, 1)).collect(),
    };
    max_weight_perfect_matching(&unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};

    /// Brute force over all n! perfect matchings.
    fn brute_force_max(g: &WeightedBipartiteGraph) -> Option<i64> {
        let n = g.left_size;
        if n != g.right_size {
            return None;
        }
        let mut best: HashMap<(usize, usize), i64> = HashMap::new();
        for &(l, r, w) in &g.edges {
            best.entry((l, r))
                .and_modify(|cur| *cur = (*cur).max(w))
                .or_insert(w);
        }
        (0..n)
            .permutations(n)
            .filter_map(|perm| {
                perm.iter()
                    .enumerate()
                    .map(|(l, &r)| best.get(&(l, r)).copied())
                    .sum::<Option<i64>>()
            })
            .max()
    }

    fn assert_valid(g: &WeightedBipartiteGraph, m: &Matching) {
        let n = g.left_size;
        assert_eq!(m.pairs.len(), n);
        let mut left_seen = vec![false; n];
        let mut right_seen = vec![false; n];
        let mut weight = 0i64;
        for &(l, r) in &m.pairs {
            assert!(!left_seen[l] && !right_seen[r]);
            left_seen[l] = true;
            right_seen[r] = true;
            weight += g
                .edges
                .iter()
                .filter(|&&(el, er, _)| el == l && er == r)
                .map(|&(_, _, w)| w)
                .max()
                .expect("matched pair must be an edge");
        }
        assert_eq!(weight, m.total_weight);
    }

    #[test]
    fn single_edge_graph() {
        let mut g = WeightedBipartiteGraph::new(1, 1);
        g.add_edge(0, 0, 5);
        let m = max_weight_perfect_matching(&g).unwrap().unwrap();
        assert_eq!(m.pairs, vec![(0, 0)]);
        assert_eq!(m.total_weight, 5);
    }

    #[test]
    fn isolated_vertex_is_infeasible() {
        let mut g = WeightedBipartiteGraph::new(2, 2);
        g.add_edge(0, 0, 1);
        g.add_edge(1, 0, 1);
        assert_eq!(max_weight_perfect_matching(&g).unwrap(), None);
    }

    #[test]
    fn mismatched_sides_are_infeasible() {
        let mut g = WeightedBipartiteGraph::new(2, 3);
        g.add_edge(0, 0, 1);
        assert_eq!(max_weight_perfect_matching(&g).unwrap(), None);
    }

    #[test]
    fn empty_graph_has_empty_matching() {
        let g = WeightedBipartiteGraph::new(0, 0);
        let m = max_weight_perfect_matching(&g).unwrap().unwrap();
        assert!(m.pairs.is_empty());
        assert_eq!(m.total_weight, 0);
    }

    #[test]
    fn out_of_range_edge_is_an_error() {
        let mut g = WeightedBipartiteGraph::new(2, 2);
        g.add_edge(0, 2, 1);
        assert!(max_weight_perfect_matching(&g).is_err());
    }

    #[test]
    fn random_dense_graphs_match_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(1..=5);
            let mut g = WeightedBipartiteGraph::new(n, n);
            for l in 0..n {
                for r in 0..n {
                    g.add_edge(l, r, rng.random_range(-9..=9));
                }
            }
            let m = max_weight_perfect_matching(&g).unwrap().unwrap();
            assert_valid(&g, &m);
            assert_eq!(Some(m.total_weight), brute_force_max(&g));
        }
    }

    #[test]
    fn random_sparse_graphs_match_brute_force_existence() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.random_range(1..=6);
            let mut g = WeightedBipartiteGraph::new(n, n);
            for l in 0..n {
                for r in 0..n {
                    if rng.random_bool(0.4) {
                        g.add_edge(l, r, rng.random_range(-5..=5));
                    }
                }
            }
            let brute = brute_force_max(&g);
            match max_weight_perfect_matching(&g).unwrap() {
                Some(m) => {
                    assert_valid(&g, &m);
                    assert_eq!(Some(m.total_weight), brute);
                }
                None => assert_eq!(brute, None),
            }
            let exists = perfect_matching_exists(&g).unwrap();
            assert_eq!(exists.is_some(), brute.is_some());
            if let Some(w) = exists {
                assert_eq!(w.pairs.len(), n);
            }
        }
    }

    #[test]
    fn scaling_weights_scales_the_optimum() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(13);
        for _ in 0..50 {
            let n = rng.random_range(1..=5);
            let mut g = WeightedBipartiteGraph::new(n, n);
            for l in 0..n {
                for r in 0..n {
                    g.add_edge(l, r, rng.random_range(0..=9));
                }
            }
            let base = max_weight_perfect_matching(&g).unwrap().unwrap();
            let factor = rng.random_range(2..=5);
            let scaled = WeightedBipartiteGraph {
                left_size: n,
                right_size: n,
                edges: g.edges.iter().map(|&(l, r, w)| (l, r, w * factor)).collect(),
            };
            let m = max_weight_perfect_matching(&scaled).unwrap().unwrap();
            assert_eq!(m.total_weight, base.total_weight * factor);
        }
    }

    #[test]
    fn parallel_edges_reduce_to_the_best_representative() {
        let mut g = WeightedBipartiteGraph::new(2, 2);
        g.add_edge(0, 0, 1);
        g.add_edge(0, 0, 7);
        g.add_edge(0, 0, 3);
        g.add_edge(0, 1, 2);
        g.add_edge(1, 0, 2);
        g.add_edge(1, 1, 1);
        let m = max_weight_perfect_matching(&g).unwrap().unwrap();
        assert_eq!(m.total_weight, 8);
        assert_eq!(m.pairs, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn complete_unit_graph_has_perfect_matching() {
        let mut g = WeightedBipartiteGraph::new(3, 3);
        for l in 0..3 {
            for r in 0..3 {
                g.add_edge(l, r, 1);
            }
        }
        let m = perfect_matching_exists(&g).unwrap().unwrap();
        assert_eq!(m.pairs.len(), 3);
    }

    #[test]
    fn star_from_single_left_vertex_has_none() {
        let mut g = WeightedBipartiteGraph::new(2, 2);
        g.add_edge(0, 0, 1);
        g.add_edge(0, 1, 1);
        assert_eq!(perfect_matching_exists(&g).unwrap(), None);
    }
}
