//! Cards, card sets, placements, and the swish predicate.
//!
//! A card is an ordered (hoop, ball) pair of grid points. A card set is an
//! indexed multiset: two cards with identical coordinates are still distinct
//! objects, identified by their index. A set of placements is a *swish* when,
//! after applying each placement's transform, every grid point carries either
//! no symbols at all or exactly one hoop and exactly one ball.

use crate::grid::{GridDims, Point, Transform, TransformPolicy};
use thiserror::Error;

/// Errors from constructing or validating the card model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("grid dimensions must be positive, got {h}x{w}")]
    EmptyGrid { h: usize, w: usize },
    #[error("point {point} lies outside the {h}x{w} grid")]
    PointOutOfBounds { point: Point, h: usize, w: usize },
    #[error("card index {index} out of range (card set has {len} cards)")]
    CardIndexOutOfRange { index: usize, len: usize },
    #[error("card index {index} used more than once")]
    DuplicateCardIndex { index: usize },
}

/// A card: one hoop and one ball on the grid. The two points may coincide,
/// in which case the card forms a swish of size one all by itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Card {
    pub hoop: Point,
    pub ball: Point,
}

impl Card {
    pub fn new(hoop: Point, ball: Point) -> Self {
        Card { hoop, ball }
    }

    /// Convenience constructor from raw 1-based coordinates.
    pub fn from_coords(hoop_i: usize, hoop_j: usize, ball_i: usize, ball_j: usize) -> Self {
        Card::new(Point::new(hoop_i, hoop_j), Point::new(ball_i, ball_j))
    }

    /// The card as used under transform `t`. Does not validate bounds; see
    /// [`crate::grid::transform_card`] for the checked variant.
    pub(crate) fn transformed(self, t: Transform, dims: GridDims) -> Card {
        Card::new(t.apply(self.hoop, dims), t.apply(self.ball, dims))
    }
}

impl std::fmt::Display for Card {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.hoop, self.ball)
    }
}

/// An indexed multiset of cards on a common grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardSet {
    dims: GridDims,
    cards: Vec<Card>,
}

impl CardSet {
    pub fn new(dims: GridDims, cards: Vec<Card>) -> Result<Self, ModelError> {
        for card in &cards {
            dims.check(card.hoop)?;
            dims.check(card.ball)?;
        }
        Ok(CardSet { dims, cards })
    }

    /// Internal constructor for card sets whose validity is established by
    /// construction (trimming, reductions).
    pub(crate) fn new_unchecked(dims: GridDims, cards: Vec<Card>) -> Self {
        debug_assert!(cards
            .iter()
            .all(|c| dims.contains(c.hoop) && dims.contains(c.ball)));
        CardSet { dims, cards }
    }

    pub fn dims(&self) -> GridDims {
        self.dims
    }

    pub fn cards(&self) -> &[Card] {
        &self.cards
    }

    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }

    pub fn get(&self, index: usize) -> Result<Card, ModelError> {
        self.cards
            .get(index)
            .copied()
            .ok_or(ModelError::CardIndexOutOfRange {
                index,
                len: self.cards.len(),
            })
    }
}

/// A card chosen from a [`CardSet`] together with the transform it is used under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Placement {
    /// 0-based index into the card set.
    pub card_index: usize,
    pub transform: Transform,
}

impl Placement {
    pub fn new(card_index: usize, transform: Transform) -> Self {
        Placement {
            card_index,
            transform,
        }
    }

    pub fn identity(card_index: usize) -> Self {
        Placement::new(card_index, Transform::Identity)
    }
}

/// A swish witness: placements with pairwise distinct card indices, kept
/// sorted by card index. Validity is checked by [`verify_swish`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SwishSolution {
    placements: Vec<Placement>,
}

impl SwishSolution {
    pub fn new(mut placements: Vec<Placement>) -> Result<Self, ModelError> {
        placements.sort_by_key(|p| p.card_index);
        for pair in placements.windows(2) {
            if pair[0].card_index == pair[1].card_index {
                return Err(ModelError::DuplicateCardIndex {
                    index: pair[0].card_index,
                });
            }
        }
        Ok(SwishSolution { placements })
    }

    pub fn empty() -> Self {
        SwishSolution::default()
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn size(&self) -> usize {
        self.placements.len()
    }

    pub fn card_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.placements.iter().map(|p| p.card_index)
    }
}

/// Per-point symbol counts reported for a violated point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointCounts {
    pub point: Point,
    pub hoops: usize,
    pub balls: usize,
}

/// Everything that is wrong with a placement set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ViolationReport {
    /// Points whose (hoop, ball) counts are neither (0, 0) nor (1, 1).
    pub points: Vec<PointCounts>,
    /// Placements whose transform the policy does not permit.
    pub disallowed: Vec<Placement>,
}

/// Outcome of [`verify_swish`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(ViolationReport),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Check the swish predicate: after applying each placement's transform,
/// every grid point must carry `(hoops, balls)` counts of `(0, 0)` or
/// `(1, 1)`, and every transform must be permitted by the policy.
///
/// Placements must reference distinct, in-range card indices; violating that
/// is an input error rather than an invalid verdict. The empty placement
/// sequence is a valid swish of size zero.
pub fn verify_swish(
    cards: &CardSet,
    placements: &[Placement],
    policy: TransformPolicy,
) -> Result<Verdict, ModelError> {
    let dims = cards.dims();
    let mut used = vec![false; cards.len()];
    let mut hoops = vec![0usize; dims.point_count()];
    let mut balls = vec![0usize; dims.point_count()];
    let mut report = ViolationReport::default();

    for placement in placements {
        let card = cards.get(placement.card_index)?;
        if used[placement.card_index] {
            return Err(ModelError::DuplicateCardIndex {
                index: placement.card_index,
            });
        }
        used[placement.card_index] = true;
        if !policy.allows(placement.transform) {
            report.disallowed.push(*placement);
        }
        let placed = card.transformed(placement.transform, dims);
        hoops[dims.index_of(placed.hoop)] += 1;
        balls[dims.index_of(placed.ball)] += 1;
    }

    for idx in 0..dims.point_count() {
        let (h, b) = (hoops[idx], balls[idx]);
        if !((h == 0 && b == 0) || (h == 1 && b == 1)) {
            report.points.push(PointCounts {
                point: dims.point_at(idx),
                hoops: h,
                balls: b,
            });
        }
    }

    if report.points.is_empty() && report.disallowed.is_empty() {
        Ok(Verdict::Valid)
    } else {
        Ok(Verdict::Invalid(report))
    }
}

/// A card set after removing empty rows and columns, together with the
/// surviving original indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrimmedCards {
    /// The same cards re-addressed on the trimmed grid. Card indices are
    /// unchanged.
    pub cards: CardSet,
    /// Original 1-based row indices that carry at least one symbol, in
    /// increasing order: trimmed row `r` (1-based) was row `rows[r - 1]`.
    pub rows: Vec<usize>,
    /// Original 1-based column indices that survive, in increasing order.
    pub cols: Vec<usize>,
}

/// Remove every row and column that carries neither a hoop nor a ball.
///
/// The trimmed grid has `h', w' <= 2 * (number of cards)`. Trimming preserves
/// swish structure only when no transforms are involved: removing a row
/// changes `h` and with it the rotation and vertical-flip formulas, so the
/// no-transform solver is the only caller inside this crate.
///
/// An empty card set trims to the degenerate 0x0 grid.
pub fn trim_grid(cards: &CardSet) -> TrimmedCards {
    let dims = cards.dims();
    let mut row_used = vec![false; dims.rows()];
    let mut col_used = vec![false; dims.cols()];
    for card in cards.cards() {
        for p in [card.hoop, card.ball] {
            row_used[p.i - 1] = true;
            col_used[p.j - 1] = true;
        }
    }
    let rows: Vec<usize> = (1..=dims.rows()).filter(|&i| row_used[i - 1]).collect();
    let cols: Vec<usize> = (1..=dims.cols()).filter(|&j| col_used[j - 1]).collect();

    let mut row_new = vec![0usize; dims.rows() + 1];
    for (new, &old) in rows.iter().enumerate() {
        row_new[old] = new + 1;
    }
    let mut col_new = vec![0usize; dims.cols() + 1];
    for (new, &old) in cols.iter().enumerate() {
        col_new[old] = new + 1;
    }

    let trimmed_dims = if rows.is_empty() || cols.is_empty() {
        GridDims::EMPTY
    } else {
        GridDims::new(rows.len(), cols.len()).expect("non-empty trim")
    };
    let remap = |p: Point| Point::new(row_new[p.i], col_new[p.j]);
    let trimmed: Vec<Card> = cards
        .cards()
        .iter()
        .map(|c| Card::new(remap(c.hoop), remap(c.ball)))
        .collect();

    TrimmedCards {
        cards: CardSet::new_unchecked(trimmed_dims, trimmed),
        rows,
        cols,
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::figure_one;
    use super::*;
    use proptest::prelude::*;

    fn dims(h: usize, w: usize) -> GridDims {
        GridDims::new(h, w).unwrap()
    }

    #[test]
    fn figure_one_first_three_cards_are_a_swish() {
        let cards = figure_one();
        let placements: Vec<_> = (0..3).map(Placement::identity).collect();
        let verdict = verify_swish(&cards, &placements, TransformPolicy::NONE).unwrap();
        assert!(verdict.is_valid());
    }

    #[test]
    fn empty_placement_sequence_is_valid() {
        let cards = figure_one();
        assert!(verify_swish(&cards, &[], TransformPolicy::NONE)
            .unwrap()
            .is_valid());
    }

    #[test]
    fn single_card_reports_both_endpoints() {
        let cards = figure_one();
        let verdict =
            verify_swish(&cards, &[Placement::identity(0)], TransformPolicy::NONE).unwrap();
        let Verdict::Invalid(report) = verdict else {
            panic!("expected invalid")
        };
        assert_eq!(
            report.points,
            vec![
                PointCounts {
                    point: Point::new(1, 1),
                    hoops: 1,
                    balls: 0
                },
                PointCounts {
                    point: Point::new(1, 3),
                    hoops: 0,
                    balls: 1
                },
            ]
        );
        assert!(report.disallowed.is_empty());
    }

    #[test]
    fn flip_and_rotate_swish_under_both_policy() {
        let cards = figure_one();
        let placements = [
            Placement::identity(1),
            Placement::new(2, Transform::FlipH),
            Placement::new(4, Transform::Rotate180),
        ];
        let verdict = verify_swish(&cards, &placements, TransformPolicy::BOTH).unwrap();
        assert!(verdict.is_valid());
    }

    #[test]
    fn transform_must_be_permitted() {
        let cards = figure_one();
        let placements = [
            Placement::identity(1),
            Placement::new(2, Transform::FlipH),
            Placement::new(4, Transform::Rotate180),
        ];
        let verdict = verify_swish(&cards, &placements, TransformPolicy::FLIP_ONLY).unwrap();
        let Verdict::Invalid(report) = verdict else {
            panic!("expected invalid")
        };
        assert_eq!(report.disallowed, vec![Placement::new(4, Transform::Rotate180)]);
    }

    #[test]
    fn duplicate_card_index_is_an_error() {
        let cards = figure_one();
        let placements = [Placement::identity(0), Placement::new(0, Transform::FlipH)];
        assert_eq!(
            verify_swish(&cards, &placements, TransformPolicy::BOTH),
            Err(ModelError::DuplicateCardIndex { index: 0 })
        );
    }

    #[test]
    fn out_of_range_index_is_an_error() {
        let cards = figure_one();
        assert!(matches!(
            verify_swish(&cards, &[Placement::identity(9)], TransformPolicy::NONE),
            Err(ModelError::CardIndexOutOfRange { index: 9, .. })
        ));
    }

    #[test]
    fn coincident_card_is_a_one_card_swish() {
        let cards = CardSet::new(dims(3, 3), vec![Card::from_coords(2, 2, 2, 2)]).unwrap();
        assert!(verify_swish(&cards, &[Placement::identity(0)], TransformPolicy::NONE)
            .unwrap()
            .is_valid());
    }

    #[test]
    fn trim_figure_one_drops_row_four_and_column_two() {
        let trimmed = trim_grid(&figure_one());
        assert_eq!(trimmed.rows, vec![1, 2, 3]);
        assert_eq!(trimmed.cols, vec![1, 3]);
        let d = trimmed.cards.dims();
        assert_eq!((d.rows(), d.cols()), (3, 2));
        // c1 = ((1,1),(1,3)) becomes ((1,1),(1,2)).
        assert_eq!(trimmed.cards.cards()[0], Card::from_coords(1, 1, 1, 2));
    }

    #[test]
    fn trim_keeps_fully_used_grid() {
        let cards = CardSet::new(
            dims(2, 2),
            vec![Card::from_coords(1, 1, 2, 2), Card::from_coords(2, 1, 1, 2)],
        )
        .unwrap();
        let trimmed = trim_grid(&cards);
        assert_eq!(trimmed.cards, cards);
        assert_eq!(trimmed.rows, vec![1, 2]);
        assert_eq!(trimmed.cols, vec![1, 2]);
    }

    #[test]
    fn trim_single_coincident_card() {
        let cards = CardSet::new(dims(9, 9), vec![Card::from_coords(5, 5, 5, 5)]).unwrap();
        let trimmed = trim_grid(&cards);
        let d = trimmed.cards.dims();
        assert_eq!((d.rows(), d.cols()), (1, 1));
        assert_eq!(trimmed.cards.cards()[0], Card::from_coords(1, 1, 1, 1));
    }

    #[test]
    fn trim_empty_card_set() {
        let cards = CardSet::new(dims(4, 3), vec![]).unwrap();
        let trimmed = trim_grid(&cards);
        assert_eq!(trimmed.cards.dims().point_count(), 0);
        assert!(trimmed.rows.is_empty());
        assert!(trimmed.cols.is_empty());
    }

    fn arb_card(h: usize, w: usize) -> impl Strategy<Value = Card> {
        (1..=h, 1..=w, 1..=h, 1..=w).prop_map(|(a, b, c, d)| Card::from_coords(a, b, c, d))
    }

    fn arb_cardset() -> impl Strategy<Value = CardSet> {
        (2usize..=5, 2usize..=5).prop_flat_map(|(h, w)| {
            proptest::collection::vec(arb_card(h, w), 0..8)
                .prop_map(move |cards| CardSet::new(dims(h, w), cards).unwrap())
        })
    }

    proptest! {
        #[test]
        fn transforms_are_involutions(card in arb_card(6, 5)) {
            let d = dims(6, 5);
            for t in [Transform::FlipH, Transform::Rotate180, Transform::FlipV] {
                let once = crate::grid::transform_card(card, t, d).unwrap();
                let twice = crate::grid::transform_card(once, t, d).unwrap();
                prop_assert_eq!(twice, card);
            }
        }

        #[test]
        fn flip_then_rotate_is_vertical_flip(card in arb_card(4, 3)) {
            let d = dims(4, 3);
            let via_flip_rotate = crate::grid::transform_card(
                crate::grid::transform_card(card, Transform::FlipH, d).unwrap(),
                Transform::Rotate180,
                d,
            )
            .unwrap();
            let via_rotate_flip = crate::grid::transform_card(
                crate::grid::transform_card(card, Transform::Rotate180, d).unwrap(),
                Transform::FlipH,
                d,
            )
            .unwrap();
            let direct = crate::grid::transform_card(card, Transform::FlipV, d).unwrap();
            prop_assert_eq!(via_flip_rotate, direct);
            prop_assert_eq!(via_rotate_flip, direct);
        }

        #[test]
        fn verdict_is_invariant_under_placement_order(
            cards in arb_cardset(),
            seed in 0u64..1000,
        ) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut placements: Vec<_> =
                (0..cards.len()).map(Placement::identity).collect();
            let before = verify_swish(&cards, &placements, TransformPolicy::NONE).unwrap();
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            placements.shuffle(&mut rng);
            let after = verify_swish(&cards, &placements, TransformPolicy::NONE).unwrap();
            prop_assert_eq!(before, after);
        }

        #[test]
        fn trimming_preserves_validity_without_transforms(cards in arb_cardset()) {
            let trimmed = trim_grid(&cards);
            let h = trimmed.cards.dims().rows();
            let w = trimmed.cards.dims().cols();
            prop_assert!(h <= 2 * cards.len() && w <= 2 * cards.len());
            // Every subset valid on the original grid is valid on the trimmed
            // grid and vice versa (identity placements only).
            for mask in 0u32..(1 << cards.len()) {
                let placements: Vec<_> = (0..cards.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(Placement::identity)
                    .collect();
                let orig = verify_swish(&cards, &placements, TransformPolicy::NONE).unwrap();
                let trim = verify_swish(&trimmed.cards, &placements, TransformPolicy::NONE).unwrap();
                prop_assert_eq!(orig.is_valid(), trim.is_valid());
            }
        }
    }
}
