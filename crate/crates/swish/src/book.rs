//! Compiles the guide's code blocks as doctests so the book can never drift
//! from the library. Built only under `cargo test --doc`.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/cards-and-transforms.md")]
mod cards_and_transforms {}

#[doc = include_str!("../../../book/src/matching-solver.md")]
mod matching_solver {}

#[doc = include_str!("../../../book/src/exact-search.md")]
mod exact_search {}

#[doc = include_str!("../../../book/src/hardness-gadgets.md")]
mod hardness_gadgets {}

#[doc = include_str!("../../../book/src/deck-combinatorics.md")]
mod deck_combinatorics {}

#[doc = include_str!("../../../book/src/cli-and-formats.md")]
mod cli_and_formats {}
