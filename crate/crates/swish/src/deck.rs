//! Deck combinatorics: card enumeration, symmetry classes, and no-swish
//! subset search.
//!
//! Two cards are equivalent when one is the image of the other under a flip
//! or rotation; the orbits of the Klein four-group partition the cards into
//! symmetry classes. On the commercial 4x3 grid the 132 cards with distinct
//! hoop and ball fall into 36 classes. The class count is computed both by
//! orbit enumeration and by Burnside averaging of fixed-card counts, and the
//! two routes are kept independent so they can check each other.
//!
//! The physical 60-card deck duplicates some classes, but which ones is not
//! derivable from the class structure alone. Deck construction therefore
//! takes an explicit multiplicity table; [`deck_of_classes`] is the
//! documented default of one card per class.

use crate::cards::{Card, CardSet, ModelError};
use crate::grid::{transform_card, GridDims, Transform, TransformPolicy};
use crate::search::{exists_swish_containing, exists_swish_geq, SearchBudget, SwishDecision};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use std::time::{Duration, Instant};

/// All ordered (hoop, ball) cards on the grid.
pub fn enumerate_all_cards(dims: GridDims, allow_coincident: bool) -> Vec<Card> {
    let mut cards = Vec::new();
    for hoop in dims.points() {
        for ball in dims.points() {
            if allow_coincident || hoop != ball {
                cards.push(Card::new(hoop, ball));
            }
        }
    }
    cards
}

/// The orbit of a card under the four transforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryClass {
    /// Lexicographically least orbit member, by (hoop row, hoop column,
    /// ball row, ball column).
    pub canonical: Card,
    /// Distinct orbit members in increasing order; 1, 2, or 4 of them.
    pub orbit: Vec<Card>,
}

impl SymmetryClass {
    pub fn orbit_size(&self) -> usize {
        self.orbit.len()
    }
}

/// Compute the symmetry class of a card.
pub fn canonical_form(card: Card, dims: GridDims) -> Result<SymmetryClass, ModelError> {
    let mut orbit: Vec<Card> = Transform::ALL
        .iter()
        .map(|&t| transform_card(card, t, dims))
        .collect::<Result<_, _>>()?;
    orbit.sort_unstable();
    orbit.dedup();
    Ok(SymmetryClass {
        canonical: orbit[0],
        orbit,
    })
}

/// Number of symmetry classes among the non-coincident cards, by orbit
/// enumeration.
pub fn count_distinct_classes(dims: GridDims) -> usize {
    let mut canonicals: Vec<Card> = enumerate_all_cards(dims, false)
        .into_iter()
        .map(|card| {
            Transform::ALL
                .iter()
                .map(|&t| card.transformed(t, dims))
                .min()
                .expect("four transforms")
        })
        .collect();
    canonicals.sort_unstable();
    canonicals.dedup();
    canonicals.len()
}

/// Number of non-coincident cards fixed by a transform. A card is fixed
/// exactly when both of its points are, so this is `f * (f - 1)` for `f`
/// fixed grid points.
pub fn fixed_card_count(t: Transform, dims: GridDims) -> usize {
    let fixed_points = dims.points().filter(|&p| t.apply(p, dims) == p).count();
    fixed_points * fixed_points.saturating_sub(1)
}

/// Number of symmetry classes by Burnside's lemma: the average number of
/// cards fixed per group element. Independent of [`count_distinct_classes`].
pub fn count_distinct_classes_burnside(dims: GridDims) -> usize {
    let total: usize = Transform::ALL
        .iter()
        .map(|&t| fixed_card_count(t, dims))
        .sum();
    assert_eq!(total % Transform::ALL.len(), 0, "orbit counts must divide");
    total / Transform::ALL.len()
}

/// One card per symmetry class, canonical representatives in increasing
/// order. This is the default deck when no multiplicity table is given.
pub fn deck_of_classes(dims: GridDims) -> CardSet {
    deck_with_multiplicities(dims, |_| 1)
}

/// Build a deck with an explicit per-class multiplicity. The commercial
/// 60-card deck duplicates 24 of the 36 classes; which ones must be supplied
/// by the caller.
pub fn deck_with_multiplicities(
    dims: GridDims,
    multiplicity: impl Fn(&SymmetryClass) -> usize,
) -> CardSet {
    let mut canonicals: Vec<Card> = enumerate_all_cards(dims, false)
        .into_iter()
        .map(|card| {
            Transform::ALL
                .iter()
                .map(|&t| card.transformed(t, dims))
                .min()
                .expect("four transforms")
        })
        .collect();
    canonicals.sort_unstable();
    canonicals.dedup();
    let mut cards = Vec::new();
    for canonical in canonicals {
        let class = canonical_form(canonical, dims).expect("canonical card is on the grid");
        for _ in 0..multiplicity(&class) {
            cards.push(canonical);
        }
    }
    CardSet::new_unchecked(dims, cards)
}

/// A no-swish subset candidate: deck indices plus whether the final
/// emptiness check ran to completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoSwishSubset {
    /// Indices into the deck, increasing.
    pub cards: Vec<usize>,
    /// Set only when the subset was exhaustively confirmed to contain no
    /// nonempty swish under the policy.
    pub verified: bool,
}

struct BudgetTracker {
    /// When the restart phase must stop, leaving room for final verification.
    search_deadline: Option<Instant>,
    /// When everything, including the final check, must stop.
    final_deadline: Option<Instant>,
    nodes_left: Option<u64>,
}

impl BudgetTracker {
    fn new(budget: SearchBudget) -> Self {
        let (search_deadline, final_deadline) = match budget.time_limit() {
            Some(total) => {
                let reserve = (total / 10).max(Duration::from_millis(200)).min(total / 2);
                let now = Instant::now();
                (Some(now + (total - reserve)), Some(now + total))
            }
            None => (None, None),
        };
        BudgetTracker {
            search_deadline,
            final_deadline,
            nodes_left: budget.node_limit(),
        }
    }

    fn done(&self) -> bool {
        self.search_deadline.is_some_and(|d| Instant::now() >= d)
            || self.nodes_left.is_some_and(|n| n == 0)
    }

    fn unlimited(&self) -> bool {
        self.final_deadline.is_none() && self.nodes_left.is_none()
    }

    /// Budget slice for one incremental check.
    fn slice(&self, node_cap: u64) -> SearchBudget {
        let mut budget = SearchBudget::default()
            .with_node_limit(self.nodes_left.map_or(node_cap, |n| n.min(node_cap)));
        if let Some(deadline) = self.search_deadline {
            budget = budget.with_time_limit(deadline.saturating_duration_since(Instant::now()));
        }
        budget
    }

    /// Whatever remains of the full budget, for the final verification.
    fn final_budget(&self) -> SearchBudget {
        let mut budget = SearchBudget::default();
        if let Some(nodes) = self.nodes_left {
            budget = budget.with_node_limit(nodes.max(1));
        }
        if let Some(deadline) = self.final_deadline {
            budget = budget.with_time_limit(deadline.saturating_duration_since(Instant::now()));
        }
        budget
    }

    fn charge(&mut self, nodes: u64) {
        if let Some(left) = &mut self.nodes_left {
            *left = left.saturating_sub(nodes);
        }
    }
}

const PER_CHECK_NODE_CAP: u64 = 1 << 20;

/// Search for a large subset of the deck containing no nonempty swish.
///
/// Greedy insertion: a candidate card joins the subset only when an exact
/// search proves that no swish passes through it, which by induction keeps
/// the whole subset swish-free. Stalled subsets are perturbed by ejecting a
/// random member and re-extending, and fresh restarts run until the budget
/// is exhausted (with an unlimited budget, a fixed number of rounds).
///
/// A tenth of any time budget (at least 200 ms) is held back for a final
/// emptiness check of the whole subset; `verified` is set only when that
/// check completes with a no.
///
/// The restart order is seeded deterministically, so results are reproducible
/// up to budget timing.
pub fn search_no_swish_subset(
    deck: &CardSet,
    policy: TransformPolicy,
    budget: SearchBudget,
) -> NoSwishSubset {
    let mut tracker = BudgetTracker::new(budget);
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5157_1504);
    let restart_cap = if tracker.unlimited() { 8 } else { usize::MAX };

    let mut best: Vec<usize> = Vec::new();
    let mut order: Vec<usize> = (0..deck.len()).collect();
    let mut restarts = 0;
    while restarts < restart_cap && !tracker.done() {
        restarts += 1;
        let mut subset = greedy_extend(deck, policy, Vec::new(), &order, &mut tracker);
        // Perturb: eject one member, refill in a fresh order, keep improvements.
        let mut stall = 0;
        while stall < 40 && !subset.is_empty() && !tracker.done() {
            let eject = subset[rng.random_range(0..subset.len())];
            let seed: Vec<usize> = subset.iter().copied().filter(|&c| c != eject).collect();
            let mut refill_order: Vec<usize> =
                (0..deck.len()).filter(|&c| c != eject && !seed.contains(&c)).collect();
            refill_order.shuffle(&mut rng);
            let candidate = greedy_extend(deck, policy, seed, &refill_order, &mut tracker);
            if candidate.len() > subset.len() {
                subset = candidate;
                stall = 0;
            } else {
                stall += 1;
            }
        }
        if subset.len() > best.len() {
            best = subset;
        }
        if best.len() == deck.len() {
            // The whole deck is swish-free; nothing larger exists.
            break;
        }
        order.shuffle(&mut rng);
    }
    best.sort_unstable();

    // Final exhaustive emptiness check with the reserved budget.
    let subset_cards = CardSet::new_unchecked(
        deck.dims(),
        best.iter().map(|&i| deck.cards()[i]).collect(),
    );
    let verified = matches!(
        exists_swish_geq(&subset_cards, policy, 1, tracker.final_budget()),
        Ok(SwishDecision::No)
    );
    NoSwishSubset {
        cards: best,
        verified,
    }
}

/// Extend `seed` (already swish-free) by cards from `order`, keeping each
/// card only when the added-card check completes and proves no swish exists
/// through it.
fn greedy_extend(
    deck: &CardSet,
    policy: TransformPolicy,
    seed: Vec<usize>,
    order: &[usize],
    tracker: &mut BudgetTracker,
) -> Vec<usize> {
    let mut chosen = seed;
    let mut chosen_cards: Vec<Card> = chosen.iter().map(|&i| deck.cards()[i]).collect();
    for &candidate in order {
        if tracker.done() {
            break;
        }
        if chosen.contains(&candidate) {
            continue;
        }
        chosen_cards.push(deck.cards()[candidate]);
        let working = CardSet::new_unchecked(deck.dims(), chosen_cards.clone());
        let (decision, nodes) = exists_swish_containing(
            &working,
            policy,
            working.len() - 1,
            tracker.slice(PER_CHECK_NODE_CAP),
        );
        tracker.charge(nodes);
        if matches!(decision, SwishDecision::No) {
            chosen.push(candidate);
        } else {
            chosen_cards.pop();
        }
    }
    chosen
}
