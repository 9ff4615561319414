//! Grid geometry: dimensions, points, and the four card transforms.
//!
//! Coordinates are 1-based throughout, matching the usual way Swish grids
//! are drawn: `(i, j)` is the point in row `i` from the top and column `j`
//! from the left. Conversion to 0-based indices happens only at storage
//! boundaries (point indexing inside solvers, file parsing).

use crate::cards::ModelError;

/// Dimensions of the playing grid: `h` rows by `w` columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridDims {
    h: usize,
    w: usize,
}

impl GridDims {
    /// A degenerate 0x0 grid. Only produced by [`crate::cards::trim_grid`]
    /// when the card set is empty; `new` never accepts zero dimensions.
    pub(crate) const EMPTY: GridDims = GridDims { h: 0, w: 0 };

    pub fn new(h: usize, w: usize) -> Result<Self, ModelError> {
        if h == 0 || w == 0 {
            return Err(ModelError::EmptyGrid { h, w });
        }
        Ok(GridDims { h, w })
    }

    pub fn rows(&self) -> usize {
        self.h
    }

    pub fn cols(&self) -> usize {
        self.w
    }

    /// Number of grid points, `h * w`.
    pub fn point_count(&self) -> usize {
        self.h * self.w
    }

    pub fn contains(&self, p: Point) -> bool {
        (1..=self.h).contains(&p.i) && (1..=self.w).contains(&p.j)
    }

    pub(crate) fn check(&self, p: Point) -> Result<(), ModelError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(ModelError::PointOutOfBounds {
                point: p,
                h: self.h,
                w: self.w,
            })
        }
    }

    /// 0-based dense index of a point, row-major.
    pub(crate) fn index_of(&self, p: Point) -> usize {
        (p.i - 1) * self.w + (p.j - 1)
    }

    /// Inverse of [`GridDims::index_of`].
    pub(crate) fn point_at(&self, index: usize) -> Point {
        Point::new(index / self.w + 1, index % self.w + 1)
    }

    /// Iterate over all grid points in row-major order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let w = self.w;
        (1..=self.h).flat_map(move |i| (1..=w).map(move |j| Point::new(i, j)))
    }
}

impl std::fmt::Display for GridDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.h, self.w)
    }
}

/// A 1-based grid point `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    /// Row, `1..=h`.
    pub i: usize,
    /// Column, `1..=w`.
    pub j: usize,
}

impl Point {
    pub fn new(i: usize, j: usize) -> Self {
        Point { i, j }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// One of the four ways a card can be used.
///
/// Together with composition these form the Klein four-group: every
/// non-identity element is an involution and the composition of any two
/// distinct non-identity elements is the third.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Transform {
    Identity,
    /// Horizontal flip: column `j` maps to `w - j + 1`.
    FlipH,
    /// 180-degree rotation: `(i, j)` maps to `(h - i + 1, w - j + 1)`.
    Rotate180,
    /// Vertical flip: row `i` maps to `h - i + 1`. Equal to `FlipH`
    /// followed by `Rotate180`, so it is only available when both flipping
    /// and rotating are allowed.
    FlipV,
}

impl Transform {
    pub const ALL: [Transform; 4] = [
        Transform::Identity,
        Transform::FlipH,
        Transform::Rotate180,
        Transform::FlipV,
    ];

    /// Image of a grid point under this transform on a grid of the given size.
    pub fn apply(self, p: Point, dims: GridDims) -> Point {
        let (h, w) = (dims.rows(), dims.cols());
        match self {
            Transform::Identity => p,
            Transform::FlipH => Point::new(p.i, w - p.j + 1),
            Transform::Rotate180 => Point::new(h - p.i + 1, w - p.j + 1),
            Transform::FlipV => Point::new(h - p.i + 1, p.j),
        }
    }

    /// Group composition: the transform equal to applying `self` then `other`.
    pub fn compose(self, other: Transform) -> Transform {
        use Transform::*;
        match (self, other) {
            (Identity, t) | (t, Identity) => t,
            (a, b) if a == b => Identity,
            (FlipH, Rotate180) | (Rotate180, FlipH) => FlipV,
            (FlipH, FlipV) | (FlipV, FlipH) => Rotate180,
            (Rotate180, FlipV) | (FlipV, Rotate180) => FlipH,
            _ => unreachable!(),
        }
    }

    /// Single-letter token used in placement lists and witness output.
    pub fn token(self) -> char {
        match self {
            Transform::Identity => 'I',
            Transform::FlipH => 'F',
            Transform::Rotate180 => 'R',
            Transform::FlipV => 'V',
        }
    }

    pub fn from_token(c: char) -> Option<Transform> {
        match c {
            'I' => Some(Transform::Identity),
            'F' => Some(Transform::FlipH),
            'R' => Some(Transform::Rotate180),
            'V' => Some(Transform::FlipV),
            _ => None,
        }
    }
}

impl std::fmt::Display for Transform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.token())
    }
}

/// Which transforms a problem variant permits.
///
/// The four combinations select the four decision problems: no transforms,
/// flip only, rotation only, and the original game where all three
/// non-identity transforms are available. The vertical flip is the
/// composition of the horizontal flip and the rotation, so it is permitted
/// exactly when both of those are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransformPolicy {
    flip_allowed: bool,
    rotate_allowed: bool,
}

impl TransformPolicy {
    /// Neither flipping nor rotating: only `Identity`.
    pub const NONE: TransformPolicy = TransformPolicy {
        flip_allowed: false,
        rotate_allowed: false,
    };
    /// Horizontal flip only.
    pub const FLIP_ONLY: TransformPolicy = TransformPolicy {
        flip_allowed: true,
        rotate_allowed: false,
    };
    /// 180-degree rotation only.
    pub const ROTATE_ONLY: TransformPolicy = TransformPolicy {
        flip_allowed: false,
        rotate_allowed: true,
    };
    /// Flip and rotation (and therefore also the vertical flip).
    pub const BOTH: TransformPolicy = TransformPolicy {
        flip_allowed: true,
        rotate_allowed: true,
    };

    pub fn flip_allowed(&self) -> bool {
        self.flip_allowed
    }

    pub fn rotate_allowed(&self) -> bool {
        self.rotate_allowed
    }

    pub fn allows(&self, t: Transform) -> bool {
        match t {
            Transform::Identity => true,
            Transform::FlipH => self.flip_allowed,
            Transform::Rotate180 => self.rotate_allowed,
            Transform::FlipV => self.flip_allowed && self.rotate_allowed,
        }
    }

    /// The permitted transforms, identity first.
    pub fn permitted(&self) -> &'static [Transform] {
        use Transform::*;
        match (self.flip_allowed, self.rotate_allowed) {
            (false, false) => &[Identity],
            (true, false) => &[Identity, FlipH],
            (false, true) => &[Identity, Rotate180],
            (true, true) => &[Identity, FlipH, Rotate180, FlipV],
        }
    }

    /// `true` if every transform permitted by `self` is permitted by `other`.
    pub fn is_weaker_than(&self, other: TransformPolicy) -> bool {
        (!self.flip_allowed || other.flip_allowed)
            && (!self.rotate_allowed || other.rotate_allowed)
    }
}

impl std::fmt::Display for TransformPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match (self.flip_allowed, self.rotate_allowed) {
            (false, false) => "none",
            (true, false) => "flip",
            (false, true) => "rotate",
            (true, true) => "both",
        };
        write!(f, "{name}")
    }
}

/// Apply a transform to a card on the given grid.
///
/// Errors if the card does not lie on the grid.
pub fn transform_card(
    card: crate::cards::Card,
    t: Transform,
    dims: GridDims,
) -> Result<crate::cards::Card, ModelError> {
    dims.check(card.hoop)?;
    dims.check(card.ball)?;
    Ok(crate::cards::Card::new(
        t.apply(card.hoop, dims),
        t.apply(card.ball, dims),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::Card;

    fn dims(h: usize, w: usize) -> GridDims {
        GridDims::new(h, w).unwrap()
    }

    #[test]
    fn rejects_zero_dims() {
        assert!(GridDims::new(0, 3).is_err());
        assert!(GridDims::new(4, 0).is_err());
    }

    #[test]
    fn flip_h_matches_known_card() {
        // c3 flipped horizontally on the 4x3 grid.
        let c3 = Card::new(Point::new(2, 1), Point::new(1, 1));
        let flipped = transform_card(c3, Transform::FlipH, dims(4, 3)).unwrap();
        assert_eq!(flipped, Card::new(Point::new(2, 3), Point::new(1, 3)));
    }

    #[test]
    fn rotate_matches_known_card() {
        // c6 rotated by 180 degrees on the 4x3 grid.
        let c6 = Card::new(Point::new(3, 3), Point::new(3, 1));
        let rotated = transform_card(c6, Transform::Rotate180, dims(4, 3)).unwrap();
        assert_eq!(rotated, Card::new(Point::new(2, 1), Point::new(2, 3)));
    }

    #[test]
    fn identity_returns_input() {
        let c = Card::new(Point::new(4, 2), Point::new(1, 3));
        assert_eq!(transform_card(c, Transform::Identity, dims(4, 3)).unwrap(), c);
    }

    #[test]
    fn flip_v_substitution() {
        let c = Card::new(Point::new(1, 1), Point::new(4, 3));
        let flipped = transform_card(c, Transform::FlipV, dims(4, 3)).unwrap();
        assert_eq!(flipped, Card::new(Point::new(4, 1), Point::new(1, 3)));
    }

    #[test]
    fn out_of_bounds_card_is_rejected() {
        let c = Card::new(Point::new(5, 1), Point::new(1, 1));
        assert!(transform_card(c, Transform::FlipH, dims(4, 3)).is_err());
    }

    #[test]
    fn composition_table_is_klein_four_group() {
        use Transform::*;
        for t in Transform::ALL {
            assert_eq!(t.compose(Identity), t);
            assert_eq!(Identity.compose(t), t);
            assert_eq!(t.compose(t), Identity);
        }
        assert_eq!(FlipH.compose(Rotate180), FlipV);
        assert_eq!(Rotate180.compose(FlipH), FlipV);
        assert_eq!(FlipH.compose(FlipV), Rotate180);
        assert_eq!(Rotate180.compose(FlipV), FlipH);
    }

    #[test]
    fn apply_agrees_with_composition() {
        let d = dims(5, 4);
        for a in Transform::ALL {
            for b in Transform::ALL {
                for p in d.points() {
                    assert_eq!(b.apply(a.apply(p, d), d), a.compose(b).apply(p, d));
                }
            }
        }
    }

    #[test]
    fn transforms_permute_the_grid() {
        let d = dims(4, 3);
        for t in Transform::ALL {
            let mut seen = vec![false; d.point_count()];
            for p in d.points() {
                let q = t.apply(p, d);
                assert!(d.contains(q));
                let idx = d.index_of(q);
                assert!(!seen[idx]);
                seen[idx] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn policy_permitted_sets() {
        use Transform::*;
        assert_eq!(TransformPolicy::NONE.permitted(), &[Identity]);
        assert_eq!(TransformPolicy::FLIP_ONLY.permitted(), &[Identity, FlipH]);
        assert_eq!(TransformPolicy::ROTATE_ONLY.permitted(), &[Identity, Rotate180]);
        assert_eq!(
            TransformPolicy::BOTH.permitted(),
            &[Identity, FlipH, Rotate180, FlipV]
        );
        assert!(!TransformPolicy::FLIP_ONLY.allows(FlipV));
        assert!(!TransformPolicy::ROTATE_ONLY.allows(FlipV));
        assert!(TransformPolicy::BOTH.allows(FlipV));
    }

    #[test]
    fn point_index_round_trip() {
        let d = dims(4, 3);
        for (k, p) in d.points().enumerate() {
            assert_eq!(d.index_of(p), k);
            assert_eq!(d.point_at(k), p);
        }
    }
}
