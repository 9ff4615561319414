//! Exact solver for all four transform policies.
//!
//! The search is point-driven backtracking. A partial assignment keeps
//! per-point (hoop, ball) counts, which are only ever 0 or 1. A point with
//! exactly one of the two symbols is *open* and must be completed by some
//! further card, so the search branches over the cards that can supply the
//! missing symbol at the most constrained open point. When no point is open
//! the current selection is a swish; it is recorded and the search continues
//! by choosing the lowest-indexed card of any further extension, excluding
//! smaller indices inside that subtree so no card subset is visited twice.
//!
//! Branches are pruned when the used cards plus the cards still placeable
//! cannot beat the best size found (or reach the requested threshold).

use crate::cards::{CardSet, Placement, SwishSolution};
use crate::grid::{Transform, TransformPolicy};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("threshold k must be at least 1, got {k}")]
    InvalidThreshold { k: usize },
}

/// Limits on an exhaustive search. The default is unlimited; results obtained
/// under an exhausted budget are reported as lower bounds, never as optima.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchBudget {
    max_nodes: Option<u64>,
    max_time: Option<Duration>,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget {
        max_nodes: None,
        max_time: None,
    };

    pub fn unlimited() -> Self {
        Self::UNLIMITED
    }

    pub fn with_node_limit(self, max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes.max(1)),
            ..self
        }
    }

    pub fn with_time_limit(self, max_time: Duration) -> Self {
        SearchBudget {
            max_time: Some(max_time),
            ..self
        }
    }

    pub fn node_limit(&self) -> Option<u64> {
        self.max_nodes
    }

    pub fn time_limit(&self) -> Option<Duration> {
        self.max_time
    }
}

/// Tracks budget consumption across one search run.
pub(crate) struct BudgetMeter {
    budget: SearchBudget,
    started: Instant,
    pub(crate) nodes: u64,
    exhausted: bool,
}

impl BudgetMeter {
    pub(crate) fn new(budget: SearchBudget) -> Self {
        BudgetMeter {
            budget,
            started: Instant::now(),
            nodes: 0,
            exhausted: false,
        }
    }

    /// Charge one node; returns `true` once the budget is gone.
    pub(crate) fn spend(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        self.nodes += 1;
        if let Some(limit) = self.budget.max_nodes {
            if self.nodes > limit {
                self.exhausted = true;
                return true;
            }
        }
        if let Some(limit) = self.budget.max_time {
            // The clock read is amortized; limits are coarse by nature.
            if self.nodes.is_multiple_of(1024) && self.started.elapsed() > limit {
                self.exhausted = true;
                return true;
            }
        }
        false
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted
    }
}

/// Whether a search ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completion {
    /// The whole space was explored; the reported size is the true maximum.
    Exact,
    /// The budget ran out; the reported size is only a lower bound.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxSwishResult {
    pub size: usize,
    pub witness: SwishSolution,
    pub completion: Completion,
}

/// Answer to a size-threshold query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SwishDecision {
    Yes(SwishSolution),
    No,
    Unknown,
}

#[derive(Clone, Copy)]
struct CanonicalPlacement {
    hoop: u32,
    ball: u32,
    transform: Transform,
}

struct Searcher<'a> {
    cards: &'a CardSet,
    point_count: usize,
    /// Deduplicated placements per card: a card fixed by a permitted
    /// transform contributes that image only once.
    placements: Vec<Vec<CanonicalPlacement>>,
    hoop_suppliers: Vec<Vec<(u32, u8)>>,
    ball_suppliers: Vec<Vec<(u32, u8)>>,
    hoops: Vec<u8>,
    balls: Vec<u8>,
    used: Vec<bool>,
    stack: Vec<Placement>,
    /// Cards with smaller indices are excluded in the current subtree.
    threshold: usize,
    best: Vec<Placement>,
    /// Stop as soon as a swish of at least this size is found.
    target: Option<usize>,
    target_hit: bool,
    meter: BudgetMeter,
}

impl<'a> Searcher<'a> {
    fn new(cards: &'a CardSet, policy: TransformPolicy, budget: SearchBudget) -> Self {
        let dims = cards.dims();
        let point_count = dims.point_count();
        let mut placements = Vec::with_capacity(cards.len());
        let mut hoop_suppliers = vec![Vec::new(); point_count];
        let mut ball_suppliers = vec![Vec::new(); point_count];
        for (index, &card) in cards.cards().iter().enumerate() {
            let mut canonical: Vec<CanonicalPlacement> = Vec::new();
            for &t in policy.permitted() {
                let image = card.transformed(t, dims);
                let hoop = dims.index_of(image.hoop) as u32;
                let ball = dims.index_of(image.ball) as u32;
                if canonical.iter().any(|c| c.hoop == hoop && c.ball == ball) {
                    continue;
                }
                let slot = canonical.len() as u8;
                hoop_suppliers[hoop as usize].push((index as u32, slot));
                ball_suppliers[ball as usize].push((index as u32, slot));
                canonical.push(CanonicalPlacement {
                    hoop,
                    ball,
                    transform: t,
                });
            }
            placements.push(canonical);
        }
        Searcher {
            cards,
            point_count,
            placements,
            hoop_suppliers,
            ball_suppliers,
            hoops: vec![0; point_count],
            balls: vec![0; point_count],
            used: vec![false; cards.len()],
            stack: Vec::new(),
            threshold: 0,
            best: Vec::new(),
            target: None,
            target_hit: false,
            meter: BudgetMeter::new(budget),
        }
    }

    fn is_legal(&self, card: usize, slot: u8) -> bool {
        let p = self.placements[card][slot as usize];
        if p.hoop == p.ball {
            self.hoops[p.hoop as usize] == 0 && self.balls[p.hoop as usize] == 0
        } else {
            self.hoops[p.hoop as usize] == 0 && self.balls[p.ball as usize] == 0
        }
    }

    fn available(&self, card: usize) -> bool {
        card >= self.threshold && !self.used[card]
    }

    fn place(&mut self, card: usize, slot: u8) {
        let p = self.placements[card][slot as usize];
        self.hoops[p.hoop as usize] += 1;
        self.balls[p.ball as usize] += 1;
        self.used[card] = true;
        self.stack.push(Placement::new(card, p.transform));
    }

    fn unplace(&mut self, card: usize, slot: u8) {
        let p = self.placements[card][slot as usize];
        self.hoops[p.hoop as usize] -= 1;
        self.balls[p.ball as usize] -= 1;
        self.used[card] = false;
        self.stack.pop();
    }

    /// Upper bound on how many further cards could still join: available
    /// cards with at least one placement that is legal right now. Counts
    /// only shrink deeper in the tree, so this never undercounts.
    fn placeable_remaining(&self) -> usize {
        (self.threshold..self.cards.len())
            .filter(|&c| {
                !self.used[c]
                    && (0..self.placements[c].len()).any(|s| self.is_legal(c, s as u8))
            })
            .count()
    }

    fn worth_continuing(&self) -> bool {
        let potential = self.stack.len() + self.placeable_remaining();
        match self.target {
            Some(t) => potential >= t,
            None => potential > self.best.len(),
        }
    }

    /// The open point with the fewest viable suppliers, together with them.
    /// Returns `None` when the state is balanced.
    fn most_constrained_open(&self) -> Option<Vec<(u32, u8)>> {
        let mut best: Option<Vec<(u32, u8)>> = None;
        for p in 0..self.point_count {
            let (h, b) = (self.hoops[p], self.balls[p]);
            if h + b != 1 {
                continue;
            }
            let suppliers = if h == 1 {
                &self.ball_suppliers[p]
            } else {
                &self.hoop_suppliers[p]
            };
            let viable: Vec<(u32, u8)> = suppliers
                .iter()
                .copied()
                .filter(|&(c, s)| self.available(c as usize) && self.is_legal(c as usize, s))
                .collect();
            if viable.is_empty() {
                return Some(viable);
            }
            if best.as_ref().is_none_or(|b| viable.len() < b.len()) {
                best = Some(viable);
            }
        }
        best
    }

    /// Record the current balanced state. Returns `true` when the target
    /// threshold has been reached and the search should stop.
    fn record(&mut self) -> bool {
        if self.stack.len() > self.best.len() {
            self.best = self.stack.clone();
        }
        if let Some(t) = self.target {
            if self.stack.len() >= t {
                self.target_hit = true;
                return true;
            }
        }
        false
    }

    /// Depth-first exploration; returns `true` when the search should unwind
    /// (budget exhausted or target reached).
    fn explore(&mut self) -> bool {
        if self.meter.spend() {
            return true;
        }
        match self.most_constrained_open() {
            Some(supply) => {
                if supply.is_empty() || !self.worth_continuing() {
                    return false;
                }
                for (card, slot) in supply {
                    self.place(card as usize, slot);
                    let stop = self.explore();
                    self.unplace(card as usize, slot);
                    if stop {
                        return true;
                    }
                }
                false
            }
            None => {
                if self.record() {
                    return true;
                }
                let saved = self.threshold;
                for seed in saved..self.cards.len() {
                    if self.used[seed] {
                        continue;
                    }
                    self.threshold = seed;
                    if !self.worth_continuing() {
                        break;
                    }
                    for slot in 0..self.placements[seed].len() as u8 {
                        if !self.is_legal(seed, slot) {
                            continue;
                        }
                        self.place(seed, slot);
                        let stop = self.explore();
                        self.unplace(seed, slot);
                        if stop {
                            self.threshold = saved;
                            return true;
                        }
                    }
                }
                self.threshold = saved;
                false
            }
        }
    }

    /// Explore only completions that include the given card.
    fn explore_rooted(&mut self, card: usize) -> bool {
        for slot in 0..self.placements[card].len() as u8 {
            if !self.is_legal(card, slot) {
                continue;
            }
            self.place(card, slot);
            let stop = self.explore();
            self.unplace(card, slot);
            if stop {
                return true;
            }
        }
        false
    }

    fn best_solution(&self) -> SwishSolution {
        SwishSolution::new(self.best.clone()).expect("search never reuses a card index")
    }
}

/// Maximum swish size under `policy`, by exhaustive search.
///
/// With an exhausted budget the result is the best swish found so far and is
/// flagged accordingly; the witness verifies in either case.
pub fn find_max_swish(
    cards: &CardSet,
    policy: TransformPolicy,
    budget: SearchBudget,
) -> MaxSwishResult {
    let mut searcher = Searcher::new(cards, policy, budget);
    searcher.explore();
    MaxSwishResult {
        size: searcher.best.len(),
        witness: searcher.best_solution(),
        completion: if searcher.meter.exhausted() {
            Completion::BudgetExhausted
        } else {
            Completion::Exact
        },
    }
}

/// Decide whether a swish of size at least `k` exists, stopping at the first
/// witness. `No` is only reported after exhausting the search space.
pub fn exists_swish_geq(
    cards: &CardSet,
    policy: TransformPolicy,
    k: usize,
    budget: SearchBudget,
) -> Result<SwishDecision, SearchError> {
    if k < 1 {
        return Err(SearchError::InvalidThreshold { k });
    }
    let mut searcher = Searcher::new(cards, policy, budget);
    searcher.target = Some(k);
    searcher.explore();
    Ok(decision_from(searcher))
}

/// Decide whether some nonempty swish uses the card at `index`, reporting
/// the nodes spent. Used by the no-swish subset search, where a set already
/// known to be swish-free can only gain a swish through the newly added
/// card.
pub(crate) fn exists_swish_containing(
    cards: &CardSet,
    policy: TransformPolicy,
    index: usize,
    budget: SearchBudget,
) -> (SwishDecision, u64) {
    let mut searcher = Searcher::new(cards, policy, budget);
    searcher.target = Some(1);
    searcher.explore_rooted(index);
    let nodes = searcher.meter.nodes;
    (decision_from(searcher), nodes)
}

fn decision_from(searcher: Searcher<'_>) -> SwishDecision {
    if searcher.target_hit {
        SwishDecision::Yes(searcher.best_solution())
    } else if searcher.meter.exhausted() {
        SwishDecision::Unknown
    } else {
        SwishDecision::No
    }
}
