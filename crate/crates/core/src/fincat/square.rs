use serde::{Deserialize, Serialize};

use super::functor::same;
use super::{FinFunctor, FinNatTrans};
use crate::error::{Error, Result};

/// Which way the 2-cell of a square points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `right ∘ top ⇒ bottom ∘ left`.
    DownLeft,
    /// `bottom ∘ left ⇒ right ∘ top`.
    UpRight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PasteDirection {
    Horizontal,
    Vertical,
}

/// ```text
///      top
///   A ----> B
///   |       |
/// left    right
///   v       v
///   C ----> D
///     bottom
/// ```
/// Traditional names: `v = top`, `p = left`, `w = bottom`, `q = right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedSquare {
    pub top: FinFunctor,
    pub left: FinFunctor,
    pub bottom: FinFunctor,
    pub right: FinFunctor,
    pub cell: FinNatTrans,
    pub orientation: Orientation,
}

impl OrientedSquare {
    pub fn new(
        top: FinFunctor,
        left: FinFunctor,
        bottom: FinFunctor,
        right: FinFunctor,
        cell: FinNatTrans,
        orientation: Orientation,
    ) -> Result<Self> {
        let edges_ok = same(top.source(), left.source())
            && same(top.target(), right.source())
            && same(left.target(), bottom.source())
            && same(bottom.target(), right.target());
        if !edges_ok {
            return Err(Error::Shape("square edges do not meet".into()));
        }
        let upper = right.after(&top)?;
        let lower = bottom.after(&left)?;
        let (from, to) = match orientation {
            Orientation::DownLeft => (&upper, &lower),
            Orientation::UpRight => (&lower, &upper),
        };
        if cell.source() != from || cell.target() != to {
            return Err(Error::Shape(format!(
                "cell does not have the {orientation:?} type"
            )));
        }
        let cell = cell.retype(from.clone(), to.clone());
        Ok(OrientedSquare {
            top,
            left,
            bottom,
            right,
            cell,
            orientation,
        })
    }

    /// A commutative square with identity cell.
    pub fn commutative(
        top: FinFunctor,
        left: FinFunctor,
        bottom: FinFunctor,
        right: FinFunctor,
        orientation: Orientation,
    ) -> Result<Self> {
        let upper = right.after(&top)?;
        let lower = bottom.after(&left)?;
        if upper != lower {
            return Err(Error::Shape("square does not commute".into()));
        }
        let cell = FinNatTrans::identity(&upper);
        Self::new(top, left, bottom, right, cell, orientation)
    }

    /// Identity square whose left and right edges are `q`.
    pub fn identity_horizontal(q: &FinFunctor, orientation: Orientation) -> Self {
        Self::commutative(
            FinFunctor::identity(q.source()),
            q.clone(),
            FinFunctor::identity(q.target()),
            q.clone(),
            orientation,
        )
        .expect("identity square")
    }

    /// Identity square whose top and bottom edges are `v`.
    pub fn identity_vertical(v: &FinFunctor, orientation: Orientation) -> Self {
        Self::commutative(
            v.clone(),
            FinFunctor::identity(v.source()),
            v.clone(),
            FinFunctor::identity(v.target()),
            orientation,
        )
        .expect("identity square")
    }

    /// Pastes `next` to the right of (horizontal) or below (vertical)
    /// `self`.
    pub fn paste(&self, next: &OrientedSquare, direction: PasteDirection) -> Result<Self> {
        if self.orientation != next.orientation {
            return Err(Error::Shape("cannot paste squares of different orientation".into()));
        }
        let o = self.orientation;
        match direction {
            PasteDirection::Horizontal => {
                if self.right != next.left {
                    return Err(Error::Shape("shared vertical edge differs".into()));
                }
                let (a1, a2) = (&self.cell, &next.cell);
                let cell = match o {
                    Orientation::DownLeft => a1
                        .whisker_left(&next.bottom)?
                        .vcompose(&a2.whisker_right(&self.top)?)?,
                    Orientation::UpRight => a2
                        .whisker_right(&self.top)?
                        .vcompose(&a1.whisker_left(&next.bottom)?)?,
                };
                Self::new(
                    next.top.after(&self.top)?,
                    self.left.clone(),
                    next.bottom.after(&self.bottom)?,
                    next.right.clone(),
                    cell,
                    o,
                )
            }
            PasteDirection::Vertical => {
                if self.bottom != next.top {
                    return Err(Error::Shape("shared horizontal edge differs".into()));
                }
                let (a1, a2) = (&self.cell, &next.cell);
                let cell = match o {
                    Orientation::DownLeft => a2
                        .whisker_right(&self.left)?
                        .vcompose(&a1.whisker_left(&next.right)?)?,
                    Orientation::UpRight => a1
                        .whisker_left(&next.right)?
                        .vcompose(&a2.whisker_right(&self.left)?)?,
                };
                Self::new(
                    self.top.clone(),
                    next.left.after(&self.left)?,
                    next.bottom.clone(),
                    next.right.after(&self.right)?,
                    cell,
                    o,
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{comma_category, construct_standard, ObjId, StandardShape};

    #[test]
    fn paste_with_identity_is_neutral() {
        let e = Arc::new(construct_standard(&StandardShape::Terminal).unwrap());
        let one = Arc::new(construct_standard(&StandardShape::Ordinal(1)).unwrap());
        let u = FinFunctor::identity(&one);
        let k = FinFunctor::classifier(&e, &one, ObjId(1));
        let c = comma_category(&u, &k).unwrap();
        let s = OrientedSquare::new(
            c.pr1.clone(),
            c.pr2.clone(),
            k.clone(),
            u.clone(),
            c.cell.clone(),
            Orientation::DownLeft,
        )
        .unwrap();
        let idr = OrientedSquare::identity_horizontal(&s.right, Orientation::DownLeft);
        assert_eq!(s.paste(&idr, PasteDirection::Horizontal).unwrap(), s);
        let idb = OrientedSquare::identity_vertical(&s.bottom, Orientation::DownLeft);
        assert_eq!(s.paste(&idb, PasteDirection::Vertical).unwrap(), s);
        let wrong = OrientedSquare::identity_horizontal(&s.left, Orientation::DownLeft);
        assert!(s.paste(&wrong, PasteDirection::Horizontal).is_err());
    }
}
