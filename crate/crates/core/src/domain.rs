//! Fundamental domains: the centered unit cube and Dirichlet–Voronoi cells
//! for a chosen inner product, plus the one-dimensional domains on rational
//! lines. All domains are half-open through the global perturbation
//! direction, normalized to relative volume 1.

use crate::error::Error;
use crate::geom::{primitive_of_rat, ConvexPoly, Halfplane, IVec2, RatPoint, RectQ};
use crate::scalar::{rat, rat_ceil_i64, rat_int, EpsScalar, Rat};
use num::{One, Signed, Zero};

/// Symmetric positive definite 2×2 matrix `[[a, b], [b, d]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub a: Rat,
    pub b: Rat,
    pub d: Rat,
}

impl GramMatrix {
    pub fn new(a: Rat, b: Rat, d: Rat) -> Result<Self, Error> {
        let g = GramMatrix { a, b, d };
        if !g.is_positive_definite() {
            return Err(Error::DegenerateGram);
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        GramMatrix {
            a: Rat::one(),
            b: Rat::zero(),
            d: Rat::one(),
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && (&self.a * &self.d - &self.b * &self.b).is_positive()
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.b
    }

    /// `xᵀ G y` for integer vectors.
    pub fn pair(&self, x: &IVec2, y: &IVec2) -> Rat {
        &self.a * rat_int(x.x * y.x)
            + &self.b * rat_int(x.x * y.y + x.y * y.x)
            + &self.d * rat_int(x.y * y.y)
    }

    pub fn quad(&self, x: &IVec2) -> Rat {
        self.pair(x, x)
    }

    /// `G·x` as a rational vector.
    pub fn apply(&self, x: &IVec2) -> RatPoint {
        RatPoint::new(
            &self.a * rat_int(x.x) + &self.b * rat_int(x.y),
            &self.b * rat_int(x.x) + &self.d * rat_int(x.y),
        )
    }
}

/// Integer 2×2 matrix acting on the lattice.
pub type IMat2 = [[i64; 2]; 2];

fn mat_mul(a: &IMat2, b: &IMat2) -> IMat2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn mat_det(a: &IMat2) -> i64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn mat_apply(a: &IMat2, v: &IVec2) -> IVec2 {
    IVec2::new(a[0][0] * v.x + a[0][1] * v.y, a[1][0] * v.x + a[1][1] * v.y)
}

/// Finite group of lattice symmetries (integer matrices of determinant ±1,
/// closed under product and inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    elements: Vec<IMat2>,
}

impl SymmetryGroup {
    pub fn new(elements: Vec<IMat2>) -> Result<Self, Error> {
        if elements.is_empty() {
            return Err(Error::GroupNotClosed);
        }
        for m in &elements {
            if mat_det(m).abs() != 1 {
                return Err(Error::NotUnimodular);
            }
        }
        for x in &elements {
            for y in &elements {
                let p = mat_mul(x, y);
                if !elements.contains(&p) {
                    return Err(Error::GroupNotClosed);
                }
            }
            // inverse of a unimodular integer matrix, via the adjugate
            let det = mat_det(x);
            let inv = [
                [x[1][1] * det, -x[0][1] * det],
                [-x[1][0] * det, x[0][0] * det],
            ];
            if !elements.contains(&inv) {
                return Err(Error::GroupNotClosed);
            }
        }
        Ok(SymmetryGroup { elements })
    }

    pub fn trivial() -> Self {
        SymmetryGroup {
            elements: vec![[[1, 0], [0, 1]]],
        }
    }

    pub fn elements(&self) -> &[IMat2] {
        &self.elements
    }
}

/// `G = (1/|𝒢|) Σ AᵀA`, the invariant inner product of the group.
pub fn invariant_gram(group: &SymmetryGroup) -> GramMatrix {
    let mut a = Rat::zero();
    let mut b = Rat::zero();
    let mut d = Rat::zero();
    for m in group.elements() {
        // AᵀA entries
        a += rat_int(m[0][0] * m[0][0] + m[1][0] * m[1][0]);
        b += rat_int(m[0][0] * m[0][1] + m[1][0] * m[1][1]);
        d += rat_int(m[0][1] * m[0][1] + m[1][1] * m[1][1]);
    }
    let n = rat_int(group.elements().len() as i64);
    GramMatrix {
        a: a / &n,
        b: b / &n,
        d: d / &n,
    }
}

/// What a fundamental domain tiles.
#[derive(Clone, Debug)]
pub enum Carrier {
    /// Two-dimensional tile for the full lattice.
    Cell(ConvexPoly),
    /// Centered primitive segment on the line spanned by `dir`.
    Segment { dir: IVec2 },
    /// The origin, for the trivial subspace.
    Point,
}

#[derive(Clone, Debug)]
pub struct FundamentalDomain {
    pub carrier: Carrier,
}

impl FundamentalDomain {
    pub fn cell(&self) -> Option<&ConvexPoly> {
        match &self.carrier {
            Carrier::Cell(c) => Some(c),
            _ => None,
        }
    }
}

/// The centered unit cube `[-1/2, 1/2]²`, half-open along `u`.
pub fn centered_cube(u: &RatPoint) -> FundamentalDomain {
    let h = rat(1, 2);
    let verts = vec![
        RatPoint::new(-h.clone(), -h.clone()),
        RatPoint::new(h.clone(), -h.clone()),
        RatPoint::new(h.clone(), h.clone()),
        RatPoint::new(-h.clone(), h.clone()),
    ];
    FundamentalDomain {
        carrier: Carrier::Cell(
            ConvexPoly::from_ccw_shifted(verts, Some(u)).expect("cube is convex"),
        ),
    }
}

/// The Dirichlet–Voronoi cell of the full lattice under the inner product
/// `G`, as a half-open tile.
///
/// Bisectors are collected for all lattice vectors within a radius obtained
/// from the reduced basis; the result is certified by comparing its area to
/// the lattice determinant and the radius is doubled on a mismatch.
pub fn dv_cell(gram: &GramMatrix, u: &RatPoint) -> Result<FundamentalDomain, Error> {
    if !gram.is_positive_definite() {
        return Err(Error::DegenerateGram);
    }
    let (b1, b2) = gauss_reduce(gram);
    let mut radius = rat_int(4) * gram.quad(&b1).max(gram.quad(&b2));
    for _ in 0..8 {
        let cell = dv_cell_with_radius(gram, u, &radius)?;
        if cell.area() == Rat::one() {
            return Ok(FundamentalDomain {
                carrier: Carrier::Cell(cell),
            });
        }
        radius = radius * rat_int(2);
    }
    Err(Error::WindowCap("certifying the Dirichlet-Voronoi cell".into()))
}

fn dv_cell_with_radius(gram: &GramMatrix, u: &RatPoint, radius: &Rat) -> Result<ConvexPoly, Error> {
    // ‖a‖²_G ≥ det(G)/tr(G)·|a|², so |a|² ≤ radius·tr/det bounds the scan
    let tr = &gram.a + &gram.d;
    let bound2 = radius * tr / gram.det();
    let mut m = 1i64;
    while rat_int(m * m) < bound2 {
        m += 1;
    }
    // the cell is contained in the scan box once the radius is certified
    let box_half = rat_int(m) + Rat::one();
    let mut cell = RectQ::new(
        -box_half.clone(),
        box_half.clone(),
        -box_half.clone(),
        box_half,
    )
    .to_poly();
    for ax in -m..=m {
        for ay in -m..=m {
            let a = IVec2::new(ax, ay);
            if a.is_zero() || gram.quad(&a) > *radius {
                continue;
            }
            // bisector: ⟨G a, y⟩ ≤ q(a)/2, scaled to a primitive normal
            let ga = gram.apply(&a);
            let n = primitive_of_rat(&ga)?;
            let scale = if n.x != 0 {
                rat_int(n.x) / &ga.x
            } else {
                rat_int(n.y) / &ga.y
            };
            let offset = gram.quad(&a) / rat_int(2) * scale;
            let h = Halfplane::new(n, EpsScalar::new(offset, n.dot_point(u)));
            cell = match cell.clip(&h) {
                Some(c) => c,
                None => return Err(Error::DegenerateGram),
            };
        }
    }
    Ok(cell)
}

/// Gauss-reduced basis of the integer lattice under `G`.
fn gauss_reduce(gram: &GramMatrix) -> (IVec2, IVec2) {
    let mut b1 = IVec2::new(1, 0);
    let mut b2 = IVec2::new(0, 1);
    loop {
        if gram.quad(&b2) < gram.quad(&b1) {
            std::mem::swap(&mut b1, &mut b2);
        }
        // t = round(⟨b1,b2⟩/⟨b1,b1⟩)
        let num = gram.pair(&b1, &b2);
        let den = gram.quad(&b1);
        let t_rat = num / den;
        let t = {
            let twice = &t_rat * rat_int(2);
            let fl = rat_ceil_i64(&(twice - Rat::one())) as f64;
            let _ = fl;
            // round half toward zero is fine for reduction purposes
            let fl2 = (&t_rat + rat(1, 2)).floor();
            i64::try_from(fl2.numer().clone()).expect("reduction coefficient fits i64")
        };
        if t == 0 {
            break;
        }
        b2 = b2.sub(&b1.scaled(t));
    }
    if gram.quad(&b2) < gram.quad(&b1) {
        std::mem::swap(&mut b1, &mut b2);
    }
    (b1, b2)
}

/// Which subspace a domain is requested for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subspace {
    Origin,
    Line(IVec2),
    Plane,
}

/// Global per-run choice of the two-dimensional tile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainPolicy {
    Cube,
    Dv(GramMatrix),
}

impl DomainPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            DomainPolicy::Cube => "cube",
            DomainPolicy::Dv(_) => "dv",
        }
    }

    pub fn plane_tile(&self, u: &RatPoint) -> Result<ConvexPoly, Error> {
        let fd = match self {
            DomainPolicy::Cube => centered_cube(u),
            DomainPolicy::Dv(g) => dv_cell(g, u)?,
        };
        match fd.carrier {
            Carrier::Cell(c) => Ok(c),
            _ => unreachable!("plane domain is a cell"),
        }
    }
}

/// Chooses the fundamental domain of a subspace: the origin for the trivial
/// one, the centered primitive segment for a line, the policy tile for the
/// plane.
pub fn domain_for_subspace(
    sub: Subspace,
    policy: &DomainPolicy,
    u: &RatPoint,
) -> Result<FundamentalDomain, Error> {
    match sub {
        Subspace::Origin => Ok(FundamentalDomain {
            carrier: Carrier::Point,
        }),
        Subspace::Line(dir) => {
            let dir = crate::geom::primitive(dir)?;
            Ok(FundamentalDomain {
                carrier: Carrier::Segment { dir },
            })
        }
        Subspace::Plane => policy.plane_tile(u).map(|c| FundamentalDomain {
            carrier: Carrier::Cell(c),
        }),
    }
}

/// Constraints of the strip `T(line) + line^⊥` for a primitive direction,
/// i.e. the band `|⟨dir, y⟩| ≤ |dir|²/2` with half-open sides.
pub fn strip_constraints(dir: &IVec2, u: &RatPoint) -> [Halfplane; 2] {
    let half = rat_int(dir.norm2()) / rat_int(2);
    [
        Halfplane::new(*dir, EpsScalar::new(half.clone(), dir.dot_point(u))),
        Halfplane::new(dir.neg(), EpsScalar::new(half, dir.neg().dot_point(u))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyset::PolySet;

    fn u() -> RatPoint {
        RatPoint::new(rat_int(1), rat(1, 7))
    }

    #[test]
    fn cube_has_volume_one_and_tiles() {
        let cube = centered_cube(&u());
        let cell = cube.cell().unwrap();
        assert_eq!(cell.area(), Rat::one());
        let a = PolySet::from_cell(cell.clone());
        let b = a.translate_lattice(&IVec2::new(1, 0));
        assert!(!a.meets(&b));
        // translates over [-2,2]² cover [-1,1]²
        let mut covered = PolySet::from_cell(
            RectQ::new(rat_int(-1), rat_int(1), rat_int(-1), rat_int(1)).to_poly(),
        );
        for x in -2..=2 {
            for y in -2..=2 {
                covered = covered.subtract(&a.translate_lattice(&IVec2::new(x, y)));
            }
        }
        assert!(covered.area().is_zero());
    }

    #[test]
    fn invariant_gram_examples() {
        let id = SymmetryGroup::trivial();
        assert_eq!(invariant_gram(&id), GramMatrix::identity());

        let rot4 = SymmetryGroup::new(vec![
            [[1, 0], [0, 1]],
            [[0, -1], [1, 0]],
            [[-1, 0], [0, -1]],
            [[0, 1], [-1, 0]],
        ])
        .unwrap();
        assert_eq!(invariant_gram(&rot4), GramMatrix::identity());

        let swap = SymmetryGroup::new(vec![[[1, 0], [0, 1]], [[0, 1], [1, 0]]]).unwrap();
        assert_eq!(invariant_gram(&swap), GramMatrix::identity());
    }

    #[test]
    fn group_validation_rejects_open_sets() {
        assert!(SymmetryGroup::new(vec![[[0, -1], [1, 0]]]).is_err());
        assert!(SymmetryGroup::new(vec![[[1, 0], [0, 1]], [[2, 0], [0, 1]]]).is_err());
    }

    #[test]
    fn dv_cell_for_identity_is_the_centered_square() {
        let fd = dv_cell(&GramMatrix::identity(), &u()).unwrap();
        let cell = fd.cell().unwrap();
        assert_eq!(cell.area(), Rat::one());
        let bb = cell.bbox();
        assert_eq!(bb.x0, rat(-1, 2));
        assert_eq!(bb.x1, rat(1, 2));
        assert_eq!(bb.y0, rat(-1, 2));
        assert_eq!(bb.y1, rat(1, 2));
        assert_eq!(cell.verts().len(), 4);
    }

    #[test]
    fn dv_cell_for_skew_gram_is_a_symmetric_hexagon() {
        let g = GramMatrix::new(rat_int(2), rat_int(1), rat_int(2)).unwrap();
        let fd = dv_cell(&g, &u()).unwrap();
        let cell = fd.cell().unwrap();
        assert_eq!(cell.area(), Rat::one());
        assert_eq!(cell.verts().len(), 6);
        // central symmetry of the closure: vertex set equals its reflection
        let mut vs: Vec<RatPoint> = cell.verts().to_vec();
        let mut refl: Vec<RatPoint> = cell
            .verts()
            .iter()
            .map(|p| RatPoint::new(-&p.x, -&p.y))
            .collect();
        vs.sort();
        refl.sort();
        assert_eq!(vs, refl);
    }

    #[test]
    fn dv_cell_is_group_invariant() {
        let swap = SymmetryGroup::new(vec![[[1, 0], [0, 1]], [[0, 1], [1, 0]]]).unwrap();
        let g = invariant_gram(&swap);
        let fd = dv_cell(&g, &u()).unwrap();
        let cell = fd.cell().unwrap();
        for m in swap.elements() {
            let mut mapped: Vec<RatPoint> = cell
                .verts()
                .iter()
                .map(|p| {
                    RatPoint::new(
                        rat_int(m[0][0]) * &p.x + rat_int(m[0][1]) * &p.y,
                        rat_int(m[1][0]) * &p.x + rat_int(m[1][1]) * &p.y,
                    )
                })
                .collect();
            let mut vs: Vec<RatPoint> = cell.verts().to_vec();
            mapped.sort();
            vs.sort();
            assert_eq!(vs, mapped);
        }
    }

    #[test]
    fn line_domain_is_centered_primitive_segment() {
        let fd = domain_for_subspace(Subspace::Line(IVec2::new(2, 2)), &DomainPolicy::Cube, &u())
            .unwrap();
        match fd.carrier {
            Carrier::Segment { dir } => assert_eq!(dir, IVec2::new(1, 1)),
            other => panic!("expected segment, got {:?}", other),
        }
        // the strip of that line has width |dir|² in the dir functional
        let [top, bot] = strip_constraints(&IVec2::new(1, 1), &u());
        assert_eq!(top.offset.value, rat_int(1));
        assert_eq!(bot.offset.value, rat_int(1));
        assert_eq!(top.offset.eps, rat_int(1) + rat(1, 7));
        assert_eq!(bot.offset.eps, -(rat_int(1) + rat(1, 7)));
    }
}
