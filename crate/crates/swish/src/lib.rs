//! Solver and verification toolkit for the Swish card game.
//!
//! A Swish card is a transparent card with one hoop and one ball on an
//! `h x w` grid. A *swish* is a set of cards, each optionally flipped or
//! rotated, such that after stacking them every grid point carries either
//! nothing or exactly one hoop together with exactly one ball.
//!
//! The crate provides:
//!
//! - the card/grid/transform model and the swish predicate ([`grid`], [`cards`]),
//! - a polynomial-time solver for the no-transform variant via maximum-weight
//!   bipartite perfect matching ([`matching`], [`poly_solver`]),
//! - an exact branch-and-bound search for all four transform policies
//!   ([`search`]),
//! - digraph-to-cards hardness gadgets with an even dicycle-factor oracle and
//!   witness transport ([`reductions`]),
//! - deck combinatorics: symmetry classes, Burnside counting, and no-swish
//!   subset search ([`deck`]),
//! - text formats for card sets and digraphs ([`formats`]).
//!
//! The accompanying guide under `book/` walks through each of these with
//! runnable examples; its code blocks are compiled as doctests of this crate.

pub mod cards;
pub mod deck;
pub mod formats;
pub mod grid;
pub mod matching;
pub mod poly_solver;
pub mod reductions;
pub mod search;

#[cfg(doctest)]
mod book;

pub use cards::{
    trim_grid, verify_swish, Card, CardSet, ModelError, Placement, PointCounts, SwishSolution,
    TrimmedCards, Verdict, ViolationReport,
};
pub use deck::{
    canonical_form, count_distinct_classes, count_distinct_classes_burnside, deck_of_classes,
    deck_with_multiplicities, enumerate_all_cards, fixed_card_count, search_no_swish_subset,
    NoSwishSubset, SymmetryClass,
};
pub use formats::{
    emit_card_file, emit_digraph_file, emit_placement_list, parse_card_file, parse_digraph_file,
    parse_placement_list, ParseError,
};
pub use grid::{transform_card, GridDims, Point, Transform, TransformPolicy};
pub use matching::{
    max_weight_perfect_matching, perfect_matching_exists, Matching, MatchingError,
    WeightedBipartiteGraph,
};
pub use poly_solver::{build_matching_graph, solve_no_transform, MatchingEdgeKind, MatchingGraphMap};
pub use reductions::{
    build_restricted_cards, even_dicycle_factor_oracle, reduce_column_grid, reduce_row_grid,
    split_vertices_tripartite, swish_from_dicycle_factor, CardRole, ColumnPolicy, Digraph,
    DigraphError, EdgeSubset, OracleAnswer, ReductionError, ReductionOutput, RestrictedCards,
    TripartiteSplit, VertexClass,
};
pub use search::{
    exists_swish_geq, find_max_swish, Completion, MaxSwishResult, SearchBudget, SearchError,
    SwishDecision,
};
