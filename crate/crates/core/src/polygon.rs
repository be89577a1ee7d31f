//! Convex lattice polygons and their face data.

use crate::cone::Cone2;
use crate::error::Error;
use crate::geom::{primitive, ConvexPoly, Halfplane, IVec2, RatPoint, RectQ};
use crate::scalar::{rat_int, Rat};
use num::integer::gcd;
 

/// A strictly convex lattice polygon, vertices counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolygon {
    verts: Vec<IVec2>,
}

impl LatticePolygon {
    pub fn new(mut verts: Vec<IVec2>) -> Result<Self, Error> {
        verts.dedup();
        if verts.len() > 1 && verts.first() == verts.last() {
            verts.pop();
        }
        if verts.len() < 3 {
            return Err(Error::DegeneratePolygon(
                "need at least three distinct vertices".into(),
            ));
        }
        let mut area2: i64 = 0;
        let n = verts.len();
        for i in 0..n {
            let j = (i + 1) % n;
            area2 += verts[i].cross(&verts[j]);
        }
        if area2 < 0 {
            verts.reverse();
        } else if area2 == 0 {
            return Err(Error::DegeneratePolygon("zero area".into()));
        }
        let n = verts.len();
        for i in 0..n {
            let prev = verts[(i + n - 1) % n];
            let cur = verts[i];
            let next = verts[(i + 1) % n];
            let turn = cur.sub(&prev).cross(&next.sub(&cur));
            if turn <= 0 {
                return Err(Error::DegeneratePolygon(format!(
                    "vertex {:?} is not strictly convex",
                    cur
                )));
            }
        }
        Ok(LatticePolygon { verts })
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self, Error> {
        Self::new(pairs.iter().map(|&(x, y)| IVec2::new(x, y)).collect())
    }

    pub fn verts(&self) -> &[IVec2] {
        &self.verts
    }

    pub fn num_verts(&self) -> usize {
        self.verts.len()
    }

    /// Edge `i` runs from vertex `i` to vertex `i+1`.
    pub fn edge_dir(&self, i: usize) -> IVec2 {
        let n = self.verts.len();
        self.verts[(i + 1) % n].sub(&self.verts[i])
    }

    pub fn edge_primitive_dir(&self, i: usize) -> IVec2 {
        primitive(self.edge_dir(i)).expect("edges are nonzero")
    }

    /// Number of primitive lattice steps along edge `i` (its relative volume).
    pub fn edge_relvol(&self, i: usize) -> i64 {
        let d = self.edge_dir(i);
        gcd(d.x.abs(), d.y.abs())
    }

    /// Primitive outer normal of edge `i`.
    pub fn edge_normal(&self, i: usize) -> IVec2 {
        let d = self.edge_dir(i);
        primitive(IVec2::new(d.y, -d.x)).expect("edges are nonzero")
    }

    /// Offset of edge `i`: the polygon satisfies `⟨n_i, x⟩ ≤ offset`.
    pub fn edge_offset(&self, i: usize) -> i64 {
        self.edge_normal(i).dot(&self.verts[i])
    }

    pub fn area(&self) -> Rat {
        let mut s: i64 = 0;
        let n = self.verts.len();
        for i in 0..n {
            s += self.verts[i].cross(&self.verts[(i + 1) % n]);
        }
        rat_int(s) / rat_int(2)
    }

    /// Cone of feasible directions at (the relative interior of) edge `i`.
    pub fn fcone_edge(&self, i: usize) -> Cone2 {
        Cone2::Halfplane {
            normal: self.edge_normal(i),
        }
    }

    /// Cone of feasible directions at vertex `i` (shared by edges `i-1`, `i`).
    pub fn fcone_vertex(&self, i: usize) -> Cone2 {
        let n = self.verts.len();
        Cone2::wedge(self.edge_normal((i + n - 1) % n), self.edge_normal(i))
            .expect("strictly convex vertex")
    }

    /// Normal cone of a face, the polar of the feasible cone.
    pub fn normal_cone_edge(&self, i: usize) -> Cone2 {
        self.fcone_edge(i).polar()
    }

    pub fn normal_cone_vertex(&self, i: usize) -> Cone2 {
        self.fcone_vertex(i).polar()
    }

    /// Closed constraints of the `t`-th dilate.
    pub fn dilate_constraints(&self, t: i64) -> Vec<Halfplane> {
        (0..self.verts.len())
            .map(|i| Halfplane::closed(self.edge_normal(i), rat_int(t * self.edge_offset(i))))
            .collect()
    }

    pub fn dilate_cell(&self, t: i64) -> ConvexPoly {
        ConvexPoly::from_ccw_closed(
            self.verts
                .iter()
                .map(|v| RatPoint::new(rat_int(t * v.x), rat_int(t * v.y)))
                .collect(),
        )
        .expect("dilate of a valid polygon")
    }

    pub fn dilate_bbox(&self, t: i64) -> RectQ {
        let mut x0 = i64::MAX;
        let mut x1 = i64::MIN;
        let mut y0 = i64::MAX;
        let mut y1 = i64::MIN;
        for v in &self.verts {
            x0 = x0.min(t * v.x);
            x1 = x1.max(t * v.x);
            y0 = y0.min(t * v.y);
            y1 = y1.max(t * v.y);
        }
        RectQ::new(rat_int(x0), rat_int(x1), rat_int(y0), rat_int(y1))
    }

    /// Directions that the perturbation direction must avoid.
    pub fn dirs_in_play(&self) -> Vec<IVec2> {
        let mut dirs = Vec::new();
        for i in 0..self.verts.len() {
            dirs.push(self.edge_primitive_dir(i));
            dirs.push(self.edge_normal(i));
        }
        dirs
    }

    /// Does the closed `t`-dilate contain the lattice point?
    pub fn dilate_contains(&self, t: i64, p: &IVec2) -> bool {
        (0..self.verts.len()).all(|i| self.edge_normal(i).dot(p) <= t * self.edge_offset(i))
    }

    /// `|Λ ∩ tP|` by direct row scanning.
    pub fn dilate_count(&self, t: i64) -> u64 {
        assert!(t >= 0);
        if t == 0 {
            return 1;
        }
        let bb = self.dilate_bbox(t);
        let y0 = crate::scalar::rat_ceil_i64(&bb.y0);
        let y1 = crate::scalar::rat_floor_i64(&bb.y1);
        let mut count = 0u64;
        for y in y0..=y1 {
            let mut xlo = bb.x0.clone();
            let mut xhi = bb.x1.clone();
            let mut empty = false;
            for i in 0..self.verts.len() {
                let n = self.edge_normal(i);
                let c = rat_int(t * self.edge_offset(i)) - rat_int(n.y * y);
                if n.x == 0 {
                    if rat_int(0) > c {
                        empty = true;
                        break;
                    }
                } else if n.x > 0 {
                    xhi = xhi.min(&c / rat_int(n.x));
                } else {
                    xlo = xlo.max(&c / rat_int(n.x));
                }
            }
            if empty || xlo > xhi {
                continue;
            }
            let lo = crate::scalar::rat_ceil_i64(&xlo);
            let hi = crate::scalar::rat_floor_i64(&xhi);
            if hi >= lo {
                count += (hi - lo + 1) as u64;
            }
        }
        count
    }
}

pub fn triangle_s() -> LatticePolygon {
    LatticePolygon::from_pairs(&[(1, 0), (2, 1), (0, 2)]).expect("reference triangle")
}

pub fn unit_square() -> LatticePolygon {
    LatticePolygon::from_pairs(&[(0, 0), (1, 0), (1, 1), (0, 1)]).expect("unit square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn triangle_face_data() {
        let s = triangle_s();
        assert_eq!(s.area(), rat(3, 2));
        assert_eq!(s.edge_normal(0), IVec2::new(1, -1));
        assert_eq!(s.edge_normal(1), IVec2::new(1, 2));
        assert_eq!(s.edge_normal(2), IVec2::new(-2, -1));
        assert_eq!(s.edge_relvol(0), 1);
        assert_eq!(s.edge_offset(0), 1);
        assert_eq!(s.edge_offset(1), 4);
        assert_eq!(s.edge_offset(2), -2);
    }

    #[test]
    fn clockwise_input_is_reoriented_and_degenerate_rejected() {
        let p = LatticePolygon::from_pairs(&[(0, 0), (0, 1), (1, 1), (1, 0)]).unwrap();
        assert_eq!(p.area(), rat_int(1));
        assert!(LatticePolygon::from_pairs(&[(0, 0), (1, 1), (2, 2)]).is_err());
        assert!(LatticePolygon::from_pairs(&[(0, 0), (1, 0), (2, 0), (0, 1)]).is_err());
    }

    #[test]
    fn counts_of_reference_shapes() {
        let s = triangle_s();
        assert_eq!(s.dilate_count(0), 1);
        assert_eq!(s.dilate_count(1), 4);
        assert_eq!(s.dilate_count(2), 10);
        assert_eq!(s.dilate_count(8), 109);
        let q = unit_square();
        assert_eq!(q.dilate_count(5), 36);
    }

    #[test]
    fn fcones_and_normal_cones_are_polar_pairs() {
        let s = triangle_s();
        for i in 0..3 {
            assert_eq!(s.normal_cone_edge(i).polar(), s.fcone_edge(i));
            assert_eq!(s.normal_cone_vertex(i).polar(), s.fcone_vertex(i));
        }
        assert_eq!(
            s.fcone_edge(0),
            Cone2::Halfplane {
                normal: IVec2::new(1, -1)
            }
        );
    }
}
