//! Finite unions of measurable rectangles `A × B`, generic over the side types.
//!
//! Nesting `RectUnion<RectUnion<A, B>, C>` gives the two bracketings of a
//! triple product.

use std::fmt;

use crate::error::Result;
use crate::sets::SetOps;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectUnion<A, B> {
    rects: Vec<(A, B)>,
}

impl<A: SetOps, B: SetOps> Default for RectUnion<A, B> {
    fn default() -> Self {
        RectUnion { rects: Vec::new() }
    }
}

/// Venn refinement of a family: disjoint nonempty pieces, each tagged with the
/// indices of the members containing it.
pub(crate) fn venn<S: SetOps>(family: &[S]) -> Result<Vec<(S, Vec<usize>)>> {
    let mut pieces: Vec<(S, Vec<usize>)> = Vec::new();
    for (i, s) in family.iter().enumerate() {
        let mut next = Vec::with_capacity(pieces.len() * 2 + 1);
        let mut rest = s.clone();
        for (p, idx) in pieces {
            let inside = p.intersect(s)?;
            if !inside.is_empty() {
                rest = rest.difference(&inside)?;
                let mut with = idx.clone();
                with.push(i);
                next.push((inside, with));
            }
            let outside = p.difference(s)?;
            if !outside.is_empty() {
                next.push((outside, idx));
            }
        }
        if !rest.is_empty() {
            next.push((rest, vec![i]));
        }
        pieces = next;
    }
    Ok(pieces)
}

fn share_index(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|i| b.contains(i))
}

impl<A: SetOps, B: SetOps> RectUnion<A, B> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn rect(a: A, b: B) -> Self {
        Self::from_rects_unchecked(vec![(a, b)])
    }

    /// Drops empty rectangles; overlap is allowed and resolved by [`Self::disjointify`].
    pub fn from_rects(rects: Vec<(A, B)>) -> Result<Self> {
        Self::from_rects_unchecked(rects).disjointify()
    }

    fn from_rects_unchecked(rects: Vec<(A, B)>) -> Self {
        let rects = rects
            .into_iter()
            .filter(|(a, b)| !a.is_empty() && !b.is_empty())
            .collect();
        RectUnion { rects }
    }

    pub fn rects(&self) -> &[(A, B)] {
        &self.rects
    }

    pub fn is_pairwise_disjoint(&self) -> Result<bool> {
        for (i, (a, b)) in self.rects.iter().enumerate() {
            for (c, d) in &self.rects[i + 1..] {
                if !a.intersect(c)?.is_empty() && !b.intersect(d)?.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Same point set, pairwise disjoint rectangles. Already disjoint input is
    /// returned as is; otherwise the result is [`Self::by_sections`].
    pub fn disjointify(&self) -> Result<Self> {
        if self.is_pairwise_disjoint()? {
            return Ok(self.clone());
        }
        self.by_sections()
    }

    /// Canonical disjoint form: the first sides are the level sets of
    /// `s ↦ section at s`, each paired with that section. Found by refining
    /// both sides into Venn pieces and regrouping the surviving grid cells.
    pub fn by_sections(&self) -> Result<Self> {
        let (lefts, rights): (Vec<A>, Vec<B>) = self.rects.iter().cloned().unzip();
        let left_pieces = venn(&lefts)?;
        let right_pieces = venn(&rights)?;

        let mut groups: Vec<(Vec<usize>, A)> = Vec::new();
        for (p, pidx) in left_pieces {
            let partners: Vec<usize> = right_pieces
                .iter()
                .enumerate()
                .filter(|(_, (_, qidx))| share_index(&pidx, qidx))
                .map(|(j, _)| j)
                .collect();
            if partners.is_empty() {
                continue;
            }
            match groups.iter_mut().find(|(k, _)| *k == partners) {
                Some((_, a)) => *a = a.union(&p)?,
                None => groups.push((partners, p)),
            }
        }

        let mut rects = Vec::with_capacity(groups.len());
        for (partners, a) in groups {
            let mut b = right_pieces[partners[0]].0.clone();
            for &j in &partners[1..] {
                b = b.union(&right_pieces[j].0)?;
            }
            rects.push((a, b));
        }
        Ok(RectUnion { rects })
    }

    /// The section `{ t : (s, t) ∈ self }` for a point set `piece` of the
    /// first factor lying either inside or outside each first side.
    pub(crate) fn section_over(&self, piece: &A) -> Result<Option<B>> {
        let mut acc: Option<B> = None;
        for (a, b) in &self.rects {
            if !a.intersect(piece)?.is_empty() {
                acc = Some(match acc {
                    Some(x) => x.union(b)?,
                    None => b.clone(),
                });
            }
        }
        Ok(acc)
    }

    /// Swaps the two factors.
    pub fn transpose(&self) -> RectUnion<B, A> {
        RectUnion {
            rects: self
                .rects
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        }
    }

    /// Point-set equality.
    pub fn same_points(&self, other: &Self) -> Result<bool> {
        Ok(self.difference(other)?.is_empty() && other.difference(self)?.is_empty())
    }
}

impl<A: SetOps, B: SetOps> SetOps for RectUnion<A, B> {
    fn union(&self, other: &Self) -> Result<Self> {
        let mut rects = self.rects.clone();
        rects.extend(other.rects.iter().cloned());
        RectUnion { rects }.disjointify()
    }

    fn intersect(&self, other: &Self) -> Result<Self> {
        let mut rects = Vec::new();
        for (a, b) in &self.rects {
            for (c, d) in &other.rects {
                rects.push((a.intersect(c)?, b.intersect(d)?));
            }
        }
        Self::from_rects_unchecked(rects).disjointify()
    }

    fn difference(&self, other: &Self) -> Result<Self> {
        let mut current = self.rects.clone();
        for (c, d) in &other.rects {
            let mut next = Vec::with_capacity(current.len() * 2);
            for (a, b) in current {
                let a_out = a.difference(c)?;
                let a_in = a.intersect(c)?;
                if a_in.is_empty() {
                    next.push((a, b));
                    continue;
                }
                if !a_out.is_empty() {
                    next.push((a_out, b.clone()));
                }
                let b_out = b.difference(d)?;
                if !b_out.is_empty() {
                    next.push((a_in, b_out));
                }
            }
            current = next;
        }
        Self::from_rects_unchecked(current).disjointify()
    }

    fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }
}

impl<A: fmt::Display, B: fmt::Display> fmt::Display for RectUnion<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rects.is_empty() {
            return f.write_str("({} x {})");
        }
        for (i, (a, b)) in self.rects.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({a} x {b})")?;
        }
        Ok(())
    }
}

/// Finite union of boxes `A × B × C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleRectUnion<A, B, C> {
    boxes: Vec<(A, B, C)>,
}

impl<A: SetOps, B: SetOps, C: SetOps> TripleRectUnion<A, B, C> {
    pub fn new(boxes: Vec<(A, B, C)>) -> Self {
        let boxes = boxes
            .into_iter()
            .filter(|(a, b, c)| !a.is_empty() && !b.is_empty() && !c.is_empty())
            .collect();
        TripleRectUnion { boxes }
    }

    pub fn boxes(&self) -> &[(A, B, C)] {
        &self.boxes
    }

    /// `(A × B) × C`.
    pub fn left_nested(&self) -> Result<RectUnion<RectUnion<A, B>, C>> {
        RectUnion::from_rects(
            self.boxes
                .iter()
                .map(|(a, b, c)| (RectUnion::rect(a.clone(), b.clone()), c.clone()))
                .collect(),
        )
    }

    /// `A × (B × C)`.
    pub fn right_nested(&self) -> Result<RectUnion<A, RectUnion<B, C>>> {
        RectUnion::from_rects(
            self.boxes
                .iter()
                .map(|(a, b, c)| (a.clone(), RectUnion::rect(b.clone(), c.clone())))
                .collect(),
        )
    }
}

impl<A: fmt::Display, B: fmt::Display, C: fmt::Display> fmt::Display for TripleRectUnion<A, B, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.boxes.is_empty() {
            return f.write_str("({} x {} x {})");
        }
        for (i, (a, b, c)) in self.boxes.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({a} x {b} x {c})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;
    use crate::sets::RealSet;
    use proptest::prelude::*;

    fn closed(a: i64, b: i64) -> RealSet {
        RealSet::closed(Rational::integer(a), Rational::integer(b))
    }

    fn pt(a: i64) -> RealSet {
        RealSet::points([Rational::integer(a)])
    }

    fn member(u: &RectUnion<RealSet, RealSet>, x: &Rational, y: &Rational) -> bool {
        u.rects()
            .iter()
            .any(|(a, b)| a.contains(x) && b.contains(y))
    }

    fn grid() -> Vec<Rational> {
        (0..50).map(|i| Rational::new(i * 4 - 10, 50)).collect()
    }

    #[test]
    fn overlapping_slabs() {
        let u = RectUnion::from_rects(vec![(closed(0, 2), pt(0)), (closed(1, 3), pt(0))]).unwrap();
        assert_eq!(u.rects(), &[(closed(0, 3), pt(0))]);
    }

    #[test]
    fn disjoint_input_is_kept() {
        let rects = vec![
            (closed(0, 1), pt(0)),
            (closed(2, 3), pt(1)),
            (closed(5, 6), pt(0)),
        ];
        let u = RectUnion::from_rects(rects.clone()).unwrap();
        assert_eq!(u.rects(), rects.as_slice());
    }

    #[test]
    fn l_shape_splits_into_three() {
        let raw = vec![(closed(0, 2), closed(0, 2)), (closed(1, 3), closed(1, 3))];
        let u = RectUnion::from_rects(raw.clone()).unwrap();
        assert_eq!(u.rects().len(), 3);
        assert!(u.is_pairwise_disjoint().unwrap());
        let before = RectUnion { rects: raw };
        let g = grid();
        for x in &g {
            for y in &g {
                assert_eq!(member(&u, x, y), member(&before, x, y), "at ({x}, {y})");
            }
        }
    }

    #[test]
    fn section_form_merges_equal_sections() {
        let u = RectUnion::from_rects(vec![(closed(0, 1), pt(0)), (closed(5, 6), pt(0))]).unwrap();
        assert_eq!(u.rects().len(), 2);
        let c = u.by_sections().unwrap();
        let both = closed(0, 1).union(&closed(5, 6)).unwrap();
        assert_eq!(c.rects(), &[(both, pt(0))]);
    }

    #[test]
    fn difference_and_transpose() {
        let big = RectUnion::rect(closed(0, 3), closed(0, 3));
        let hole = RectUnion::rect(closed(1, 2), closed(1, 2));
        let ring = big.difference(&hole).unwrap();
        assert!(ring.is_pairwise_disjoint().unwrap());
        assert!(ring.union(&hole).unwrap().same_points(&big).unwrap());
        assert!(ring.intersect(&hole).unwrap().is_empty());
        let t = ring.transpose().transpose();
        assert!(t.same_points(&ring).unwrap());
    }

    #[test]
    fn triple_nestings() {
        let t = TripleRectUnion::new(vec![
            (closed(0, 1), pt(0), closed(0, 3)),
            (closed(0, 1), pt(1), closed(0, 3)),
        ]);
        let l = t.left_nested().unwrap();
        let r = t.right_nested().unwrap();
        assert_eq!(l.rects().len(), 2);
        assert_eq!(r.rects().len(), 2);
        assert_eq!(
            t.to_string(),
            "([0,1] x {0} x [0,3]) + ([0,1] x {1} x [0,3])"
        );
    }

    fn arb_rect() -> impl Strategy<Value = (RealSet, RealSet)> {
        (-2i64..4, 0i64..3, -2i64..4, 0i64..3)
            .prop_map(|(a, w, b, h)| (closed(a, a + w), closed(b, b + h)))
    }

    proptest! {
        #[test]
        fn disjointify_preserves_points(rects in proptest::collection::vec(arb_rect(), 0..5)) {
            let before = RectUnion { rects: rects.clone() };
            let after = RectUnion::from_rects(rects).unwrap();
            prop_assert!(after.is_pairwise_disjoint().unwrap());
            let probes: Vec<Rational> = (-6..=16).map(|i| Rational::new(i, 2)).collect();
            for x in &probes {
                for y in &probes {
                    prop_assert_eq!(member(&after, x, y), member(&before, x, y));
                }
            }
        }
    }
}
