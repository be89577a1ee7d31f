//! Finite unions of convex cells with exact boolean operations.
//!
//! Cells of a `PolySet` are pairwise disjoint as real sets. Subtraction
//! decomposes the remainder by clipping against the subtrahend's own
//! halfplanes (complemented), so every interface keeps complementary
//! boundary ownership and no sliver is counted twice.

use crate::geom::{ConvexPoly, Halfplane, IVec2, RatPoint, RectQ};
use crate::scalar::{rat_ceil_i64, rat_floor_i64, real_interval_nonempty, EpsScalar, Rat};
use num::Zero;
use std::collections::BTreeSet;

#[derive(Clone, Debug, Default)]
pub struct PolySet {
    pub cells: Vec<ConvexPoly>,
}

impl PolySet {
    pub fn empty() -> Self {
        PolySet { cells: Vec::new() }
    }

    pub fn from_cell(cell: ConvexPoly) -> Self {
        PolySet { cells: vec![cell] }
    }

    pub fn from_cells(cells: Vec<ConvexPoly>) -> Self {
        PolySet { cells }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn area(&self) -> Rat {
        self.cells.iter().map(|c| c.area()).sum()
    }

    pub fn bbox(&self) -> Option<RectQ> {
        let mut it = self.cells.iter();
        let first = it.next()?.bbox();
        Some(it.fold(first, |acc, c| acc.hull(&c.bbox())))
    }

    pub fn translate(&self, by: &RatPoint) -> PolySet {
        PolySet {
            cells: self.cells.iter().map(|c| c.translate(by)).collect(),
        }
    }

    pub fn translate_lattice(&self, by: &IVec2) -> PolySet {
        self.translate(&by.to_point())
    }

    /// Appends the cells of `other`; caller guarantees disjointness.
    pub fn absorb(&mut self, other: PolySet) {
        self.cells.extend(other.cells);
    }

    pub fn clip(&self, h: &Halfplane) -> PolySet {
        PolySet {
            cells: self.cells.iter().filter_map(|c| c.clip(h)).collect(),
        }
    }

    pub fn clip_all(&self, hs: &[Halfplane]) -> PolySet {
        PolySet {
            cells: self.cells.iter().filter_map(|c| c.clip_all(hs)).collect(),
        }
    }

    pub fn clip_rect(&self, r: &RectQ) -> PolySet {
        PolySet {
            cells: self.cells.iter().filter_map(|c| c.clip_rect(r)).collect(),
        }
    }

    /// Exact intersection of two sets.
    pub fn intersect(&self, other: &PolySet) -> PolySet {
        let mut out = Vec::new();
        for a in &self.cells {
            let abox = a.bbox();
            for b in &other.cells {
                if !abox.intersects(&b.bbox()) {
                    continue;
                }
                if let Some(c) = a.clip_all(b.constraints()) {
                    out.push(c);
                }
            }
        }
        PolySet { cells: out }
    }

    fn subtract_cell(&self, b: &ConvexPoly) -> PolySet {
        let bbox = b.bbox();
        let mut out = Vec::new();
        for a in &self.cells {
            if !a.bbox().intersects(&bbox) {
                out.push(a.clone());
                continue;
            }
            // pieces: outside of b's i-th halfplane, inside the first i-1
            let mut rest = Some(a.clone());
            for h in b.constraints() {
                let Some(cur) = rest.take() else { break };
                if let Some(piece) = cur.clip(&h.complement()) {
                    out.push(piece);
                }
                rest = cur.clip(h);
            }
            // whatever survived all clips lies inside b and is dropped
        }
        PolySet { cells: out }
    }

    /// Exact set difference.
    pub fn subtract(&self, other: &PolySet) -> PolySet {
        let mut cur = self.clone();
        for b in &other.cells {
            if cur.is_empty() {
                break;
            }
            cur = cur.subtract_cell(b);
        }
        cur
    }

    /// Total 1-dimensional measure of the section along `p0 + t·dir`,
    /// in units of `dir`. Overlapping cell intervals are merged, so internal
    /// interfaces are never double counted.
    pub fn line_section(&self, p0: &RatPoint, dir: &IVec2) -> Rat {
        let mut spans: Vec<(Rat, Rat)> = Vec::new();
        for c in &self.cells {
            if let Some((lo, hi)) = c.line_interval(p0, dir) {
                if lo.value < hi.value {
                    spans.push((lo.value, hi.value));
                }
            }
        }
        spans.sort();
        let mut total = Rat::zero();
        let mut cur: Option<(Rat, Rat)> = None;
        for (lo, hi) in spans {
            match cur.take() {
                None => cur = Some((lo, hi)),
                Some((clo, chi)) => {
                    if lo <= chi {
                        cur = Some((clo, chi.max(hi)));
                    } else {
                        total += &chi - &clo;
                        cur = Some((lo, hi));
                    }
                }
            }
        }
        if let Some((clo, chi)) = cur {
            total += &chi - &clo;
        }
        total
    }

    /// Parameter intervals of the section along `p0 + t·dir`, with perturbed
    /// endpoints, one per cell the line actually meets.
    pub fn line_intervals(&self, p0: &RatPoint, dir: &IVec2) -> Vec<(EpsScalar, EpsScalar)> {
        let mut out = Vec::new();
        for c in &self.cells {
            if let Some((lo, hi)) = c.line_interval(p0, dir) {
                if real_interval_nonempty(&lo, &hi) {
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    /// Exhaustive, duplicate-free enumeration of lattice points in the set.
    pub fn lattice_points(&self) -> Vec<IVec2> {
        let mut found: BTreeSet<IVec2> = BTreeSet::new();
        for c in &self.cells {
            let bb = c.bbox();
            let x0 = rat_ceil_i64(&bb.x0);
            let x1 = rat_floor_i64(&bb.x1);
            let y0 = rat_ceil_i64(&bb.y0);
            let y1 = rat_floor_i64(&bb.y1);
            for x in x0..=x1 {
                for y in y0..=y1 {
                    let p = IVec2::new(x, y);
                    if c.contains_lattice(&p) {
                        found.insert(p);
                    }
                }
            }
        }
        found.into_iter().collect()
    }

    /// Do the two sets share a real point?
    pub fn meets(&self, other: &PolySet) -> bool {
        let (Some(ab), Some(bb)) = (self.bbox(), other.bbox()) else {
            return false;
        };
        if !ab.intersects(&bb) {
            return false;
        }
        for a in &self.cells {
            let abox = a.bbox();
            for b in &other.cells {
                if !abox.intersects(&b.bbox()) {
                    continue;
                }
                if a.meets(b) {
                    return true;
                }
            }
        }
        false
    }

    /// Area of the overlap with a single cell (cheaper than full intersect).
    pub fn overlap_area(&self, b: &ConvexPoly) -> Rat {
        let bbox = b.bbox();
        let mut total = Rat::zero();
        for a in &self.cells {
            if !a.bbox().intersects(&bbox) {
                continue;
            }
            if let Some(c) = a.clip_all(b.constraints()) {
                total += c.area();
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::primitive;
    use crate::scalar::{rat, rat_int};

    fn square(cx: i64, cy: i64, u: Option<&RatPoint>) -> ConvexPoly {
        let h = rat(1, 2);
        ConvexPoly::from_ccw_shifted(
            vec![
                RatPoint::new(rat_int(cx) - &h, rat_int(cy) - &h),
                RatPoint::new(rat_int(cx) + &h, rat_int(cy) - &h),
                RatPoint::new(rat_int(cx) + &h, rat_int(cy) + &h),
                RatPoint::new(rat_int(cx) - &h, rat_int(cy) + &h),
            ],
            u,
        )
        .unwrap()
    }

    fn triangle_s() -> ConvexPoly {
        ConvexPoly::from_ccw_closed(vec![
            RatPoint::new(rat_int(1), rat_int(0)),
            RatPoint::new(rat_int(2), rat_int(1)),
            RatPoint::new(rat_int(0), rat_int(2)),
        ])
        .unwrap()
    }

    #[test]
    fn intersect_is_idempotent_on_unit_square() {
        let sq = PolySet::from_cell(square(0, 0, None));
        let i = sq.intersect(&sq);
        assert_eq!(i.area(), rat_int(1));
    }

    #[test]
    fn touching_translates_intersect_in_zero_area() {
        let a = PolySet::from_cell(square(0, 0, None));
        let b = a.translate_lattice(&IVec2::new(1, 0));
        assert_eq!(a.intersect(&b).area(), Rat::zero());
    }

    #[test]
    fn triangle_meets_unit_box_in_quarter() {
        // independent oracle: clip the triangle by the box halfplanes
        let t = triangle_s();
        let oracle = t
            .clip_all(&[
                Halfplane::closed(IVec2::new(1, 0), rat_int(1)),
                Halfplane::closed(IVec2::new(-1, 0), rat_int(0)),
                Halfplane::closed(IVec2::new(0, 1), rat_int(1)),
                Halfplane::closed(IVec2::new(0, -1), rat_int(0)),
            ])
            .map(|c| c.area())
            .unwrap_or_else(Rat::zero);
        let box_set = PolySet::from_cell(RectQ::new(rat_int(0), rat_int(1), rat_int(0), rat_int(1)).to_poly());
        let got = PolySet::from_cell(t).intersect(&box_set).area();
        assert_eq!(got, oracle);
        assert_eq!(got, rat(1, 4));
    }

    #[test]
    fn subtract_identities() {
        let a = PolySet::from_cell(triangle_s());
        assert_eq!(a.subtract(&PolySet::empty()).area(), rat(3, 2));
        assert_eq!(a.subtract(&a).area(), Rat::zero());
    }

    #[test]
    fn strip_minus_two_interior_squares() {
        let strip = PolySet::from_cell(
            RectQ::new(rat_int(-5), rat_int(5), rat(-1, 2), rat(1, 2)).to_poly(),
        );
        let holes = PolySet::from_cells(vec![square(-2, 0, None), square(2, 0, None)]);
        let left = strip.subtract(&holes);
        assert_eq!(left.area(), rat_int(10) - rat_int(2));
        // re-adding the intersection restores the area exactly
        let inter = strip.intersect(&holes);
        assert_eq!(left.area() + inter.area(), strip.area());
    }

    #[test]
    fn line_sections_of_unit_square() {
        let sq = PolySet::from_cell(square(0, 0, None));
        assert_eq!(sq.line_section(&RatPoint::origin(), &IVec2::new(1, 0)), rat_int(1));
        let diag = primitive(IVec2::new(1, 1)).unwrap();
        assert_eq!(sq.line_section(&RatPoint::origin(), &diag), rat_int(1));
    }

    #[test]
    fn lattice_points_of_triangle() {
        let pts = PolySet::from_cell(triangle_s()).lattice_points();
        assert_eq!(
            pts,
            vec![
                IVec2::new(0, 2),
                IVec2::new(1, 0),
                IVec2::new(1, 1),
                IVec2::new(2, 1),
            ]
        );
    }

    #[test]
    fn half_open_subtraction_keeps_measure_and_ownership() {
        let u = RatPoint::new(rat_int(1), rat(1, 7));
        let strip = PolySet::from_cell(
            RectQ::new(rat_int(-3), rat_int(3), rat(-1, 2), rat(1, 2)).to_poly(),
        );
        let tile = PolySet::from_cell(square(0, 0, Some(&u)));
        let rest = strip.subtract(&tile);
        assert_eq!(rest.area(), rat_int(5));
        // the tile owns its right edge, so the remainder does not contain it
        let p = RatPoint::new(rat(1, 2), Rat::zero());
        assert!(tile.cells[0].contains(&p));
        assert!(rest.cells.iter().all(|c| !c.contains(&p)));
        // and the left edge of the tile stays with the remainder
        let q = RatPoint::new(rat(-1, 2), Rat::zero());
        assert!(!tile.cells[0].contains(&q));
        assert!(rest.cells.iter().any(|c| c.contains(&q)));
        assert!(!rest.meets(&tile));
    }
}
