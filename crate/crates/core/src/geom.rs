//! Exact plane geometry: integer vectors, rational points, half-open
//! halfplanes and convex polygons.
//!
//! A halfplane stores `⟨n, y⟩ ≤ c` with a perturbed offset `c`. As a set of
//! real points it is closed when `c.eps ≥ 0` and open when `c.eps < 0`; two
//! sets facing each other across the same line always carry complementary
//! offsets, so boundary ownership is never ambiguous.

use crate::error::Error;
use crate::scalar::{rat_int, EpsScalar, Rat};
use num::integer::gcd;
use num::{BigInt, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Integer vector, used for lattice points, normals and primitive directions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IVec2 {
    pub x: i64,
    pub y: i64,
}

pub type LatticePoint = IVec2;

impl IVec2 {
    pub const fn new(x: i64, y: i64) -> Self {
        IVec2 { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn dot(&self, o: &IVec2) -> i64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(&self, o: &IVec2) -> i64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(&self) -> i64 {
        self.dot(self)
    }

    /// Counterclockwise quarter turn.
    pub fn rot90(&self) -> IVec2 {
        IVec2::new(-self.y, self.x)
    }

    pub fn neg(&self) -> IVec2 {
        IVec2::new(-self.x, -self.y)
    }

    pub fn add(&self, o: &IVec2) -> IVec2 {
        IVec2::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(&self, o: &IVec2) -> IVec2 {
        IVec2::new(self.x - o.x, self.y - o.y)
    }

    pub fn scaled(&self, k: i64) -> IVec2 {
        IVec2::new(self.x * k, self.y * k)
    }

    pub fn to_point(&self) -> RatPoint {
        RatPoint::new(rat_int(self.x), rat_int(self.y))
    }

    pub fn dot_point(&self, p: &RatPoint) -> Rat {
        rat_int(self.x) * &p.x + rat_int(self.y) * &p.y
    }
}

impl fmt::Debug for IVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Divides out the gcd of the coordinates, preserving direction.
pub fn primitive(v: IVec2) -> Result<IVec2, Error> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = gcd(v.x.abs(), v.y.abs());
    Ok(IVec2::new(v.x / g, v.y / g))
}

/// Rational point (also used as a vector).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPoint {
    pub x: Rat,
    pub y: Rat,
}

pub type RatVector = RatPoint;

impl RatPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatPoint { x, y }
    }

    pub fn origin() -> Self {
        RatPoint::new(Rat::zero(), Rat::zero())
    }

    pub fn add(&self, o: &RatPoint) -> RatPoint {
        RatPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &RatPoint) -> RatPoint {
        RatPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, t: &Rat) -> RatPoint {
        RatPoint::new(&self.x * t, &self.y * t)
    }
}

impl fmt::Debug for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Primitive integer direction of a nonzero rational vector.
pub fn primitive_of_rat(v: &RatPoint) -> Result<IVec2, Error> {
    if v.x.is_zero() && v.y.is_zero() {
        return Err(Error::ZeroVector);
    }
    let den = v.x.denom() * v.y.denom();
    let nx: BigInt = v.x.numer() * v.y.denom();
    let ny: BigInt = v.y.numer() * v.x.denom();
    let _ = den;
    let g = num::Integer::gcd(&nx.abs(), &ny.abs());
    let px = i64::try_from(nx / &g).map_err(|_| Error::MagnitudeOverflow)?;
    let py = i64::try_from(ny / &g).map_err(|_| Error::MagnitudeOverflow)?;
    Ok(IVec2::new(px, py))
}

/// `{ y : ⟨normal, y⟩ ≤ offset }` with ε-resolved boundary ownership.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Halfplane {
    pub normal: IVec2,
    pub offset: EpsScalar,
}

impl Halfplane {
    pub fn new(normal: IVec2, offset: EpsScalar) -> Self {
        debug_assert!(!normal.is_zero());
        Halfplane { normal, offset }
    }

    /// Closed halfplane through rational offset, no perturbation.
    pub fn closed(normal: IVec2, offset: Rat) -> Self {
        Halfplane::new(normal, EpsScalar::from_rat(offset))
    }

    /// Strictly open halfplane. The eps magnitude is irrelevant; only its
    /// sign enters any predicate.
    pub fn open(normal: IVec2, offset: Rat) -> Self {
        Halfplane::new(normal, EpsScalar::new(offset, rat_int(-1)))
    }

    /// Membership of an ordinary (unperturbed) rational point.
    pub fn admits(&self, p: &RatPoint) -> bool {
        let s = self.normal.dot_point(p);
        match s.cmp(&self.offset.value) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => !self.offset.eps.is_negative(),
        }
    }

    pub fn admits_lattice(&self, p: &IVec2) -> bool {
        self.admits(&p.to_point())
    }

    /// The exact set complement (boundary ownership flips).
    pub fn complement(&self) -> Halfplane {
        Halfplane::new(self.normal.neg(), -&self.offset)
    }

    pub fn translated(&self, by: &RatPoint) -> Halfplane {
        let mut off = self.offset.clone();
        off.value += self.normal.dot_point(by);
        Halfplane::new(self.normal, off)
    }

    pub fn translated_lattice(&self, by: &IVec2) -> Halfplane {
        self.translated(&by.to_point())
    }

    fn value_slack(&self, p: &RatPoint) -> Rat {
        &self.offset.value - self.normal.dot_point(p)
    }
}

impl fmt::Debug for Halfplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{:?},y⟩ ≤ {:?}", self.normal, self.offset)
    }
}

/// Axis-aligned rational rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectQ {
    pub x0: Rat,
    pub x1: Rat,
    pub y0: Rat,
    pub y1: Rat,
}

impl RectQ {
    pub fn new(x0: Rat, x1: Rat, y0: Rat, y1: Rat) -> Self {
        RectQ { x0, x1, y0, y1 }
    }

    pub fn from_center_halfwidth(c: &RatPoint, r: &Rat) -> Self {
        RectQ::new(&c.x - r, &c.x + r, &c.y - r, &c.y + r)
    }

    pub fn inflate(&self, by: &Rat) -> RectQ {
        RectQ::new(&self.x0 - by, &self.x1 + by, &self.y0 - by, &self.y1 + by)
    }

    pub fn translate(&self, by: &RatPoint) -> RectQ {
        RectQ::new(&self.x0 + &by.x, &self.x1 + &by.x, &self.y0 + &by.y, &self.y1 + &by.y)
    }

    pub fn is_empty(&self) -> bool {
        self.x0 > self.x1 || self.y0 > self.y1
    }

    pub fn intersects(&self, o: &RectQ) -> bool {
        self.x0 <= o.x1 && o.x0 <= self.x1 && self.y0 <= o.y1 && o.y0 <= self.y1
    }

    pub fn hull(&self, o: &RectQ) -> RectQ {
        RectQ::new(
            self.x0.clone().min(o.x0.clone()),
            self.x1.clone().max(o.x1.clone()),
            self.y0.clone().min(o.y0.clone()),
            self.y1.clone().max(o.y1.clone()),
        )
    }

    pub fn area(&self) -> Rat {
        if self.is_empty() {
            Rat::zero()
        } else {
            (&self.x1 - &self.x0) * (&self.y1 - &self.y0)
        }
    }

    pub fn to_poly(&self) -> ConvexPoly {
        ConvexPoly::from_ccw_closed(vec![
            RatPoint::new(self.x0.clone(), self.y0.clone()),
            RatPoint::new(self.x1.clone(), self.y0.clone()),
            RatPoint::new(self.x1.clone(), self.y1.clone()),
            RatPoint::new(self.x0.clone(), self.y1.clone()),
        ])
        .expect("rectangle is convex")
    }
}

/// Convex polygon with exact vertices and the half-open constraint list that
/// carves it. Vertices are counterclockwise; the constraints are the source
/// of truth for membership and boundary ownership, the vertices for measure.
#[derive(Clone, PartialEq, Eq)]
pub struct ConvexPoly {
    verts: Vec<RatPoint>,
    cons: Vec<Halfplane>,
}

impl fmt::Debug for ConvexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConvexPoly{:?}", self.verts)
    }
}

fn shoelace2(verts: &[RatPoint]) -> Rat {
    let n = verts.len();
    let mut s = Rat::zero();
    for i in 0..n {
        let j = (i + 1) % n;
        s += &verts[i].x * &verts[j].y - &verts[j].x * &verts[i].y;
    }
    s
}

fn dedupe_ccw(mut verts: Vec<RatPoint>) -> Vec<RatPoint> {
    verts.dedup();
    if verts.len() > 1 && verts.first() == verts.last() {
        verts.pop();
    }
    // drop collinear middle vertices
    let mut out: Vec<RatPoint> = Vec::with_capacity(verts.len());
    let n = verts.len();
    for i in 0..n {
        let prev = &verts[(i + n - 1) % n];
        let cur = &verts[i];
        let next = &verts[(i + 1) % n];
        let ax = &cur.x - &prev.x;
        let ay = &cur.y - &prev.y;
        let bx = &next.x - &cur.x;
        let by = &next.y - &cur.y;
        if &ax * &by - &ay * &bx != Rat::zero() {
            out.push(cur.clone());
        }
    }
    out
}

impl ConvexPoly {
    /// Builds a closed polygon from ccw vertices (no perturbation).
    pub fn from_ccw_closed(verts: Vec<RatPoint>) -> Result<ConvexPoly, Error> {
        Self::from_ccw_shifted(verts, None)
    }

    /// Builds a polygon from ccw vertices whose closure is shifted by `ε·u`:
    /// each edge constraint gets eps part `⟨n, u⟩`.
    pub fn from_ccw_shifted(verts: Vec<RatPoint>, eps_dir: Option<&RatPoint>) -> Result<ConvexPoly, Error> {
        let verts = dedupe_ccw(verts);
        if verts.len() < 3 {
            return Err(Error::DegeneratePolygon("fewer than 3 distinct vertices".into()));
        }
        if !shoelace2(&verts).is_positive() {
            return Err(Error::DegeneratePolygon("vertices not in ccw order".into()));
        }
        let n = verts.len();
        let mut cons = Vec::with_capacity(n);
        for i in 0..n {
            let j = (i + 1) % n;
            let d = verts[j].sub(&verts[i]);
            // outward normal of a ccw edge
            let nrm = primitive_of_rat(&RatPoint::new(d.y.clone(), -&d.x))?;
            let c = nrm.dot_point(&verts[i]);
            let eps = match eps_dir {
                Some(u) => nrm.dot_point(u),
                None => Rat::zero(),
            };
            cons.push(Halfplane::new(nrm, EpsScalar::new(c, eps)));
        }
        Ok(ConvexPoly { verts, cons })
    }

    pub fn verts(&self) -> &[RatPoint] {
        &self.verts
    }

    pub fn constraints(&self) -> &[Halfplane] {
        &self.cons
    }

    pub fn area(&self) -> Rat {
        shoelace2(&self.verts) / rat_int(2)
    }

    pub fn bbox(&self) -> RectQ {
        let mut x0 = self.verts[0].x.clone();
        let mut x1 = x0.clone();
        let mut y0 = self.verts[0].y.clone();
        let mut y1 = y0.clone();
        for v in &self.verts[1..] {
            if v.x < x0 {
                x0 = v.x.clone();
            }
            if v.x > x1 {
                x1 = v.x.clone();
            }
            if v.y < y0 {
                y0 = v.y.clone();
            }
            if v.y > y1 {
                y1 = v.y.clone();
            }
        }
        RectQ::new(x0, x1, y0, y1)
    }

    pub fn translate(&self, by: &RatPoint) -> ConvexPoly {
        ConvexPoly {
            verts: self.verts.iter().map(|v| v.add(by)).collect(),
            cons: self.cons.iter().map(|c| c.translated(by)).collect(),
        }
    }

    pub fn translate_lattice(&self, by: &IVec2) -> ConvexPoly {
        self.translate(&by.to_point())
    }

    /// Real-point membership, boundary ownership included.
    pub fn contains(&self, p: &RatPoint) -> bool {
        self.cons.iter().all(|c| c.admits(p))
    }

    pub fn contains_lattice(&self, p: &IVec2) -> bool {
        self.contains(&p.to_point())
    }

    /// Support value `max ⟨n, y⟩` over the closure (value parts only).
    pub fn support(&self, n: &IVec2) -> Rat {
        self.verts
            .iter()
            .map(|v| n.dot_point(v))
            .max()
            .expect("polygon has vertices")
    }

    /// Exact intersection with a halfplane. Returns `None` when the cut
    /// leaves no area; the constraint list is pruned to the carrying set.
    pub fn clip(&self, h: &Halfplane) -> Option<ConvexPoly> {
        let n = self.verts.len();
        let slacks: Vec<Rat> = self.verts.iter().map(|v| h.value_slack(v)).collect();
        if slacks.iter().all(|s| !s.is_negative()) {
            // fully inside; keep the constraint only when it touches
            if slacks.iter().any(|s| s.is_zero()) {
                let mut out = self.clone();
                if !out.cons.contains(h) {
                    out.cons.push(h.clone());
                }
                return Some(out);
            }
            return Some(self.clone());
        }
        let mut verts: Vec<RatPoint> = Vec::with_capacity(n + 2);
        for i in 0..n {
            let j = (i + 1) % n;
            let si = &slacks[i];
            let sj = &slacks[j];
            if !si.is_negative() {
                verts.push(self.verts[i].clone());
            }
            if (si.is_positive() && sj.is_negative()) || (si.is_negative() && sj.is_positive()) {
                let t = si.clone() / (si - sj);
                let d = self.verts[j].sub(&self.verts[i]);
                verts.push(self.verts[i].add(&d.scale(&t)));
            }
        }
        let verts = dedupe_ccw(verts);
        if verts.len() < 3 || !shoelace2(&verts).is_positive() {
            return None;
        }
        let mut cons: Vec<Halfplane> = Vec::with_capacity(self.cons.len() + 1);
        for c in &self.cons {
            if verts.iter().any(|v| !c.value_slack(v).is_positive()) {
                cons.push(c.clone());
            }
        }
        if !cons.contains(h) {
            cons.push(h.clone());
        }
        Some(ConvexPoly { verts, cons })
    }

    pub fn clip_all(&self, hs: &[Halfplane]) -> Option<ConvexPoly> {
        let mut cur = self.clone();
        for h in hs {
            cur = cur.clip(h)?;
        }
        Some(cur)
    }

    pub fn clip_rect(&self, r: &RectQ) -> Option<ConvexPoly> {
        self.clip_all(&[
            Halfplane::closed(IVec2::new(1, 0), r.x1.clone()),
            Halfplane::closed(IVec2::new(-1, 0), -r.x0.clone()),
            Halfplane::closed(IVec2::new(0, 1), r.y1.clone()),
            Halfplane::closed(IVec2::new(0, -1), -r.y0.clone()),
        ])
    }

    /// Value-level closed intersection kept even when degenerate; returns the
    /// surviving corner points (deduped, unordered dimension witness).
    fn closed_value_intersection(&self, other: &ConvexPoly) -> Vec<RatPoint> {
        let mut verts = self.verts.clone();
        for h in &other.cons {
            if verts.is_empty() {
                break;
            }
            let slacks: Vec<Rat> = verts.iter().map(|v| h.value_slack(v)).collect();
            let n = verts.len();
            let mut out: Vec<RatPoint> = Vec::new();
            for i in 0..n {
                let j = (i + 1) % n;
                let si = &slacks[i];
                let sj = &slacks[j];
                if !si.is_negative() {
                    out.push(verts[i].clone());
                }
                if n > 1
                    && ((si.is_positive() && sj.is_negative())
                        || (si.is_negative() && sj.is_positive()))
                {
                    let t = si.clone() / (si - sj);
                    let d = verts[j].sub(&verts[i]);
                    out.push(verts[i].add(&d.scale(&t)));
                }
            }
            out.dedup();
            if out.len() > 1 && out.first() == out.last() {
                out.pop();
            }
            verts = out;
        }
        verts
    }

    /// Largest `⟨n, y⟩` over the perturbed cell, as a perturbed scalar.
    ///
    /// The value part is the support over the closure. The eps part comes
    /// from solving the pairs of active constraints at the maximizing
    /// vertices, which is exact whenever the maximizer is simple.
    pub fn max_functional(&self, n: &IVec2) -> EpsScalar {
        let vmax = self.support(n);
        let m = self.cons.len();
        let mut emax: Option<Rat> = None;
        for i in 0..m {
            for j in (i + 1)..m {
                let a = &self.cons[i];
                let b = &self.cons[j];
                let det = a.normal.cross(&b.normal);
                if det == 0 {
                    continue;
                }
                let det = rat_int(det);
                // value and eps parts of the corner defined by (a, b)
                let px = (&a.offset.value * rat_int(b.normal.y)
                    - &b.offset.value * rat_int(a.normal.y))
                    / &det;
                let py = (rat_int(a.normal.x) * &b.offset.value
                    - rat_int(b.normal.x) * &a.offset.value)
                    / &det;
                let p = RatPoint::new(px, py);
                if n.dot_point(&p) != vmax {
                    continue;
                }
                if !self.cons.iter().all(|c| !c.value_slack(&p).is_negative()) {
                    continue;
                }
                let ex = (&a.offset.eps * rat_int(b.normal.y)
                    - &b.offset.eps * rat_int(a.normal.y))
                    / &det;
                let ey = (rat_int(a.normal.x) * &b.offset.eps
                    - rat_int(b.normal.x) * &a.offset.eps)
                    / &det;
                let e = rat_int(n.x) * ex + rat_int(n.y) * ey;
                emax = Some(match emax {
                    None => e,
                    Some(cur) => cur.max(e),
                });
            }
        }
        EpsScalar::new(vmax, emax.unwrap_or_else(Rat::zero))
    }

    /// Parameter interval of `{ t : p0 + t·dir ∈ cell }` along a rational
    /// line, honoring boundary ownership. `None` when the line misses the
    /// cell entirely (as a real set).
    pub fn line_interval(&self, p0: &RatPoint, dir: &IVec2) -> Option<(EpsScalar, EpsScalar)> {
        let mut lo: Option<EpsScalar> = None;
        let mut hi: Option<EpsScalar> = None;
        for c in &self.cons {
            let a = c.normal.dot(dir);
            let s0 = c.normal.dot_point(p0);
            if a == 0 {
                match s0.cmp(&c.offset.value) {
                    Ordering::Less => {}
                    Ordering::Greater => return None,
                    Ordering::Equal => {
                        if c.offset.eps.is_negative() {
                            return None;
                        }
                    }
                }
            } else {
                let mut t = c.offset.clone();
                t.value -= s0;
                let t = t.div_rat(&rat_int(a));
                if a > 0 {
                    hi = Some(match hi {
                        None => t,
                        Some(cur) => cur.min(t),
                    });
                } else {
                    lo = Some(match lo {
                        None => t,
                        Some(cur) => cur.max(t),
                    });
                }
            }
        }
        let lo = lo.expect("bounded cell yields a lower bound");
        let hi = hi.expect("bounded cell yields an upper bound");
        Some((lo, hi))
    }

    /// Do the two perturbed cells share a real point?
    pub fn meets(&self, other: &ConvexPoly) -> bool {
        if !self.bbox().intersects(&other.bbox()) {
            return false;
        }
        let contact = self.closed_value_intersection(other);
        match contact.len() {
            0 => false,
            1 => self.contains(&contact[0]) && other.contains(&contact[0]),
            _ => {
                let pts = contact;
                if shoelace2(&pts).is_positive() {
                    return true;
                }
                // collinear contact: take the extreme pair
                let (mut p, mut q) = (pts[0].clone(), pts[0].clone());
                for v in &pts {
                    if *v < p {
                        p = v.clone();
                    }
                    if *v > q {
                        q = v.clone();
                    }
                }
                if p == q {
                    return self.contains(&p) && other.contains(&p);
                }
                let dir = match primitive_of_rat(&q.sub(&p)) {
                    Ok(d) => d,
                    Err(_) => return false,
                };
                let (lo_a, hi_a) = match self.line_interval(&p, &dir) {
                    Some(iv) => iv,
                    None => return false,
                };
                let (lo_b, hi_b) = match other.line_interval(&p, &dir) {
                    Some(iv) => iv,
                    None => return false,
                };
                let lo = lo_a.max(lo_b);
                let hi = hi_a.min(hi_b);
                crate::scalar::real_interval_nonempty(&lo, &hi)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn unit_square_at(cx: i64, cy: i64, u: Option<&RatPoint>) -> ConvexPoly {
        let h = rat(1, 2);
        let verts = vec![
            RatPoint::new(rat_int(cx) - &h, rat_int(cy) - &h),
            RatPoint::new(rat_int(cx) + &h, rat_int(cy) - &h),
            RatPoint::new(rat_int(cx) + &h, rat_int(cy) + &h),
            RatPoint::new(rat_int(cx) - &h, rat_int(cy) + &h),
        ];
        ConvexPoly::from_ccw_shifted(verts, u).unwrap()
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(IVec2::new(4, 6)).unwrap(), IVec2::new(2, 3));
        assert_eq!(primitive(IVec2::new(1, 1)).unwrap(), IVec2::new(1, 1));
        assert_eq!(primitive(IVec2::new(0, -8)).unwrap(), IVec2::new(0, -1));
        assert!(primitive(IVec2::new(0, 0)).is_err());
    }

    #[test]
    fn shoelace_area_is_rotation_invariant() {
        let tri = vec![
            RatPoint::new(rat_int(1), rat_int(0)),
            RatPoint::new(rat_int(2), rat_int(1)),
            RatPoint::new(rat_int(0), rat_int(2)),
        ];
        let a = ConvexPoly::from_ccw_closed(tri.clone()).unwrap().area();
        let mut rot = tri;
        rot.rotate_left(1);
        let b = ConvexPoly::from_ccw_closed(rot).unwrap().area();
        assert_eq!(a, rat(3, 2));
        assert_eq!(a, b);
    }

    #[test]
    fn clip_keeps_exact_vertices() {
        let sq = unit_square_at(0, 0, None);
        let cut = Halfplane::closed(IVec2::new(1, 1), Rat::zero());
        let half = sq.clip(&cut).unwrap();
        assert_eq!(half.area(), rat(1, 2));
        let gone = sq.clip(&Halfplane::closed(IVec2::new(1, 0), rat_int(-1)));
        assert!(gone.is_none());
    }

    #[test]
    fn shifted_translates_are_disjoint_but_closed_ones_meet() {
        let u = RatPoint::new(rat_int(1), rat(1, 7));
        let a = unit_square_at(0, 0, Some(&u));
        let b = unit_square_at(1, 0, Some(&u));
        assert!(!a.meets(&b));
        let ac = unit_square_at(0, 0, None);
        let bc = unit_square_at(1, 0, None);
        assert!(ac.meets(&bc));
    }

    #[test]
    fn ownership_of_shared_edge_is_one_sided() {
        let u = RatPoint::new(rat_int(1), rat(1, 7));
        let a = unit_square_at(0, 0, Some(&u));
        let b = unit_square_at(1, 0, Some(&u));
        let p = RatPoint::new(rat(1, 2), Rat::zero());
        assert!(a.contains(&p) ^ b.contains(&p));
    }

    #[test]
    fn line_interval_with_ownership() {
        let u = RatPoint::new(rat_int(1), rat(1, 7));
        let a = unit_square_at(0, 0, Some(&u));
        let (lo, hi) = a
            .line_interval(&RatPoint::origin(), &IVec2::new(1, 0))
            .unwrap();
        assert_eq!(&hi.value - &lo.value, rat_int(1));
        // along the owned right edge the square still has full vertical extent
        let p0 = RatPoint::new(rat(1, 2), Rat::zero());
        let iv = a.line_interval(&p0, &IVec2::new(0, 1));
        assert!(iv.is_some());
        let (lo, hi) = iv.unwrap();
        assert!(crate::scalar::real_interval_nonempty(&lo, &hi));
        // the unowned left edge is not part of the set
        let p1 = RatPoint::new(rat(-1, 2), Rat::zero());
        assert!(a.line_interval(&p1, &IVec2::new(0, 1)).is_none());
    }

    #[test]
    fn max_functional_sees_eps_shift() {
        let u = RatPoint::new(rat_int(1), rat(1, 7));
        let a = unit_square_at(0, 0, Some(&u));
        let m = a.max_functional(&IVec2::new(1, 0));
        assert_eq!(m.value, rat(1, 2));
        assert_eq!(m.eps, rat_int(1));
        let m2 = a.max_functional(&IVec2::new(0, -1));
        assert_eq!(m2.value, rat(1, 2));
        assert_eq!(m2.eps, rat(-1, 7));
    }
}
