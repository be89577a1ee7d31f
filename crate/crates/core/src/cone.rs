//! Rational cones in the plane, classified by lineality, and polar duality.

use crate::error::Error;
use crate::geom::{primitive, Halfplane, IVec2};
use crate::scalar::Rat;
use num::Zero;

/// A rational cone with apex at the origin. Full-dimensional kinds carry the
/// primitive outer normals of their defining halfplanes `⟨n, x⟩ ≤ 0`;
/// lower-dimensional kinds carry generators instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cone2 {
    /// The whole plane (no constraints).
    Plane,
    /// `{ x : ⟨normal, x⟩ ≤ 0 }`.
    Halfplane { normal: IVec2 },
    /// Intersection of two independent halfplanes.
    Wedge { n1: IVec2, n2: IVec2 },
    /// Nonnegative multiples of a primitive direction.
    Ray { dir: IVec2 },
    /// The origin alone.
    Point,
}

impl Cone2 {
    pub fn halfplane(normal: IVec2) -> Result<Cone2, Error> {
        Ok(Cone2::Halfplane {
            normal: primitive(normal)?,
        })
    }

    pub fn wedge(n1: IVec2, n2: IVec2) -> Result<Cone2, Error> {
        let n1 = primitive(n1)?;
        let n2 = primitive(n2)?;
        if n1.cross(&n2) == 0 {
            return Err(Error::UnsupportedCone("wedge with dependent normals"));
        }
        Ok(canonical_wedge(n1, n2))
    }

    pub fn ray(dir: IVec2) -> Result<Cone2, Error> {
        Ok(Cone2::Ray {
            dir: primitive(dir)?,
        })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Cone2::Plane => "plane",
            Cone2::Halfplane { .. } => "halfplane",
            Cone2::Wedge { .. } => "wedge",
            Cone2::Ray { .. } => "ray",
            Cone2::Point => "point",
        }
    }

    /// Primitive direction of the lineality space when it is a line.
    pub fn lineal_dir(&self) -> Option<IVec2> {
        match self {
            Cone2::Halfplane { normal } => Some(normal.rot90()),
            _ => None,
        }
    }

    /// Defining halfplanes of the closed cone (empty for the plane).
    pub fn constraints(&self) -> Vec<Halfplane> {
        match self {
            Cone2::Plane => vec![],
            Cone2::Halfplane { normal } => vec![Halfplane::closed(*normal, Rat::zero())],
            Cone2::Wedge { n1, n2 } => vec![
                Halfplane::closed(*n1, Rat::zero()),
                Halfplane::closed(*n2, Rat::zero()),
            ],
            Cone2::Ray { dir } => {
                let p = dir.rot90();
                vec![
                    Halfplane::closed(p, Rat::zero()),
                    Halfplane::closed(p.neg(), Rat::zero()),
                    Halfplane::closed(dir.neg(), Rat::zero()),
                ]
            }
            Cone2::Point => {
                vec![
                    Halfplane::closed(IVec2::new(1, 0), Rat::zero()),
                    Halfplane::closed(IVec2::new(-1, 0), Rat::zero()),
                    Halfplane::closed(IVec2::new(0, 1), Rat::zero()),
                    Halfplane::closed(IVec2::new(0, -1), Rat::zero()),
                ]
            }
        }
    }

    /// The polar cone `{ x : ⟨v, x⟩ ≤ 0 for all v in self }`.
    ///
    /// On the classes produced by polygon faces this is an involution:
    /// ray ↔ halfplane, two-dimensional cone ↔ wedge, point ↔ plane.
    pub fn polar(&self) -> Cone2 {
        match self {
            Cone2::Plane => Cone2::Point,
            Cone2::Point => Cone2::Plane,
            Cone2::Halfplane { normal } => Cone2::Ray { dir: *normal },
            Cone2::Ray { dir } => Cone2::Halfplane { normal: *dir },
            // the polar of a constraint-form cone is spanned by its normals
            Cone2::Wedge { n1, n2 } => cone_spanned_by(n1, n2),
        }
    }

    /// Membership of a lattice point in the closed cone.
    pub fn contains_lattice(&self, p: &IVec2) -> bool {
        match self {
            Cone2::Plane => true,
            Cone2::Halfplane { normal } => normal.dot(p) <= 0,
            Cone2::Wedge { n1, n2 } => n1.dot(p) <= 0 && n2.dot(p) <= 0,
            Cone2::Ray { dir } => dir.rot90().dot(p) == 0 && dir.dot(p) >= 0,
            Cone2::Point => p.is_zero(),
        }
    }
}

/// Boundary ray directions of a wedge given by outer normals.
pub fn wedge_generators(n1: &IVec2, n2: &IVec2) -> (IVec2, IVec2) {
    // the ray on the boundary of halfplane i is ±rot90(n_i), picked to
    // satisfy the other constraint
    let g1 = {
        let r = n1.rot90();
        if n2.dot(&r) <= 0 {
            r
        } else {
            r.neg()
        }
    };
    let g2 = {
        let r = n2.rot90();
        if n1.dot(&r) <= 0 {
            r
        } else {
            r.neg()
        }
    };
    (g1, g2)
}

/// Normals stored with positive cross product, so equal cones compare equal.
fn canonical_wedge(n1: IVec2, n2: IVec2) -> Cone2 {
    if n1.cross(&n2) > 0 {
        Cone2::Wedge { n1, n2 }
    } else {
        Cone2::Wedge { n1: n2, n2: n1 }
    }
}

/// Full-dimensional cone spanned by two independent generators.
pub fn cone_spanned_by(g1: &IVec2, g2: &IVec2) -> Cone2 {
    debug_assert!(g1.cross(g2) != 0);
    let (a, b) = if g1.cross(g2) > 0 { (g1, g2) } else { (g2, g1) };
    // ccw pair (a, b): cone = { x : ⟨rot90(a), x⟩ ≥ 0, ⟨rot90(b), x⟩ ≤ 0 }
    let n1 = primitive(a.rot90().neg()).expect("generator is nonzero");
    let n2 = primitive(b.rot90()).expect("generator is nonzero");
    canonical_wedge(n1, n2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polar_of_normal_ray_is_feasible_halfplane() {
        // outer normal ray of an edge maps to the feasible-side halfplane
        let ray = Cone2::ray(IVec2::new(1, -1)).unwrap();
        assert_eq!(
            ray.polar(),
            Cone2::Halfplane {
                normal: IVec2::new(1, -1)
            }
        );
    }

    #[test]
    fn polar_swaps_point_and_plane() {
        assert_eq!(Cone2::Point.polar(), Cone2::Plane);
        assert_eq!(Cone2::Plane.polar(), Cone2::Point);
    }

    #[test]
    fn polar_of_vertex_normal_cone() {
        // normal cone spanned by (1,-1) and (1,2); its polar is cut out by
        // those vectors as outer normals
        let nc = cone_spanned_by(&IVec2::new(1, -1), &IVec2::new(1, 2));
        let w = nc.polar();
        match w {
            Cone2::Wedge { n1, n2 } => {
                let mut ns = [n1, n2];
                ns.sort();
                assert_eq!(ns, [IVec2::new(1, -1), IVec2::new(1, 2)]);
            }
            other => panic!("expected wedge, got {:?}", other),
        }
    }

    #[test]
    fn polarity_is_an_involution_on_face_cones() {
        let cones = [
            Cone2::Plane,
            Cone2::Point,
            Cone2::ray(IVec2::new(3, -2)).unwrap(),
            Cone2::halfplane(IVec2::new(-2, -1)).unwrap(),
            Cone2::wedge(IVec2::new(1, -1), IVec2::new(1, 2)).unwrap(),
            Cone2::wedge(IVec2::new(0, -1), IVec2::new(-1, 0)).unwrap(),
        ];
        for c in cones {
            assert_eq!(c.polar().polar(), c, "double polar of {:?}", c);
        }
    }

    #[test]
    fn wedge_generator_orientation() {
        let (g1, g2) = wedge_generators(&IVec2::new(-1, 0), &IVec2::new(0, -1));
        assert_eq!(g1, IVec2::new(0, 1));
        assert_eq!(g2, IVec2::new(1, 0));
    }
}
