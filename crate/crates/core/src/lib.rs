//! Exact computation of local Ehrhart coefficient formulas for lattice
//! polygons, built from lattice tiles.
//!
//! The crate provides an exact rational geometry kernel with symbolically
//! half-open sets, fundamental domains (centered cube and Dirichlet–Voronoi
//! cells), the recursive region construction that produces the per-cone
//! weights, and verification of the resulting coefficient formulas against
//! brute-force lattice point counting.

pub mod cone;
pub mod corpus;
pub mod domain;
pub mod ehrhart;
pub mod error;
pub mod geom;
pub mod job;
pub mod mu;
pub mod polygon;
pub mod polyset;
pub mod region;
pub mod scalar;
pub mod svg;

pub use cone::Cone2;
pub use domain::{DomainPolicy, FundamentalDomain, GramMatrix, SymmetryGroup};
pub use error::Error;
pub use geom::{ConvexPoly, Halfplane, IVec2, LatticePoint, RatPoint, RatVector, RectQ};
pub use mu::{FaceId, MuTable};
pub use polygon::LatticePolygon;
pub use polyset::PolySet;
pub use scalar::{EpsScalar, Rat};
