//! Assembly of the per-face weight table of a lattice polygon.
//!
//! Faces are processed along the face poset: the polygon itself, then the
//! edges, then the vertices, each getting its region, the relative domain
//! volume `v`, the correction volumes `w` toward larger faces, and the
//! recursively defined value `mu = v - Σ w·mu`.

use crate::domain::DomainPolicy;
use crate::error::Error;
use crate::polygon::LatticePolygon;
use crate::region::{
    region_halfplane, region_plane, region_wedge, Construction, Diagnostics, Region,
};
use crate::scalar::{rat_int, Rat};
use num::{One, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceId {
    Polygon,
    Edge(usize),
    Vertex(usize),
}

impl FaceId {
    pub fn dim(&self) -> usize {
        match self {
            FaceId::Polygon => 2,
            FaceId::Edge(_) => 1,
            FaceId::Vertex(_) => 0,
        }
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceId::Polygon => write!(f, "P"),
            FaceId::Edge(i) => write!(f, "e{}", i),
            FaceId::Vertex(i) => write!(f, "v{}", i),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FaceEntry {
    pub face: FaceId,
    pub region: Region,
    pub v: Rat,
    /// Correction volumes toward strictly larger faces.
    pub w: Vec<(FaceId, Rat)>,
    pub mu: Rat,
}

/// Complete table for one polygon under one domain policy.
pub struct MuTable {
    pub polygon: LatticePolygon,
    pub cx: Construction,
    pub plane: FaceEntry,
    pub edges: Vec<FaceEntry>,
    pub verts: Vec<FaceEntry>,
}

impl MuTable {
    pub fn build(polygon: LatticePolygon, policy: DomainPolicy, seed: u64) -> Result<Self, Error> {
        let cx = Construction::new(policy, &polygon.dirs_in_play(), seed)?;
        Self::build_with(polygon, cx)
    }

    /// Builds with a caller-chosen perturbation direction.
    pub fn build_with_delta(
        polygon: LatticePolygon,
        policy: DomainPolicy,
        delta: Rat,
    ) -> Result<Self, Error> {
        let cx = Construction::with_delta(policy, delta)?;
        Self::build_with(polygon, cx)
    }

    fn build_with(polygon: LatticePolygon, mut cx: Construction) -> Result<Self, Error> {
        let n = polygon.num_verts();

        let plane_region = region_plane(&cx);
        let plane = FaceEntry {
            face: FaceId::Polygon,
            region: plane_region,
            v: Rat::one(),
            w: Vec::new(),
            mu: Rat::one(),
        };

        let mut edges = Vec::with_capacity(n);
        for i in 0..n {
            let region = region_halfplane(&mut cx, polygon.edge_normal(i))?;
            let Region::Halfplane(data) = &region else {
                unreachable!()
            };
            let v = data.v.clone();
            let w_plane = data.w_plane.clone();
            let mu = &v - &w_plane * &plane.mu;
            edges.push(FaceEntry {
                face: FaceId::Edge(i),
                v,
                w: vec![(FaceId::Polygon, w_plane)],
                mu,
                region,
            });
        }

        let mut verts = Vec::with_capacity(n);
        for i in 0..n {
            let prev = (i + n - 1) % n;
            let (Region::Halfplane(h_prev), Region::Halfplane(h_cur)) =
                (&edges[prev].region, &edges[i].region)
            else {
                unreachable!()
            };
            let region = region_wedge(
                &mut cx,
                polygon.edge_normal(prev),
                polygon.edge_normal(i),
                h_prev,
                h_cur,
            )?;
            let Region::Wedge(data) = &region else {
                unreachable!()
            };
            let v = data.v.clone();
            let w = vec![
                (FaceId::Edge(prev), data.w_ray1.clone()),
                (FaceId::Edge(i), data.w_ray2.clone()),
                (FaceId::Polygon, data.w_plane.clone()),
            ];
            let mu = &v
                - &data.w_ray1 * &edges[prev].mu
                - &data.w_ray2 * &edges[i].mu
                - &data.w_plane * &plane.mu;
            verts.push(FaceEntry {
                face: FaceId::Vertex(i),
                v,
                w,
                mu,
                region,
            });
        }

        Ok(MuTable {
            polygon,
            cx,
            plane,
            edges,
            verts,
        })
    }

    pub fn entry(&self, face: FaceId) -> Result<&FaceEntry, Error> {
        match face {
            FaceId::Polygon => Ok(&self.plane),
            FaceId::Edge(i) => self
                .edges
                .get(i)
                .ok_or_else(|| Error::MissingFace(face.to_string())),
            FaceId::Vertex(i) => self
                .verts
                .get(i)
                .ok_or_else(|| Error::MissingFace(face.to_string())),
        }
    }

    pub fn mu(&self, face: FaceId) -> Result<&Rat, Error> {
        Ok(&self.entry(face)?.mu)
    }

    /// Correction volume from a smaller face's region toward a larger face;
    /// `1` for the face itself, `0` for non-incident pairs.
    pub fn w_between(&self, small: FaceId, large: FaceId) -> Result<Rat, Error> {
        if small == large {
            return Ok(Rat::one());
        }
        let entry = self.entry(small)?;
        Ok(entry
            .w
            .iter()
            .find(|(f, _)| *f == large)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(Rat::zero))
    }

    pub fn faces(&self) -> Vec<FaceId> {
        let mut out = vec![FaceId::Polygon];
        out.extend((0..self.edges.len()).map(FaceId::Edge));
        out.extend((0..self.verts.len()).map(FaceId::Vertex));
        out
    }

    pub fn entries(&self) -> Vec<&FaceEntry> {
        let mut out = vec![&self.plane];
        out.extend(self.edges.iter());
        out.extend(self.verts.iter());
        out
    }

    /// Exact recomputation of the recursion from the stored parts.
    pub fn recursion_consistent(&self) -> bool {
        for entry in self.entries() {
            let mut acc = entry.v.clone();
            for (g, w) in &entry.w {
                let mu_g = match self.entry(*g) {
                    Ok(e) => &e.mu,
                    Err(_) => return false,
                };
                acc -= w * mu_g;
            }
            if acc != entry.mu {
                return false;
            }
        }
        true
    }

    /// Sum of the vertex values, which the coefficient identity pins to 1.
    pub fn vertex_sum(&self) -> Rat {
        self.verts.iter().map(|e| e.mu.clone()).sum()
    }

    pub fn diagnostics(&self) -> &Diagnostics {
        &self.cx.diag
    }

    pub fn policy_name(&self) -> &'static str {
        self.cx.policy.name()
    }

    pub fn eps_direction(&self) -> (Rat, Rat) {
        (rat_int(1), self.cx.u.y.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{triangle_s, unit_square};
    use crate::scalar::rat;

    #[test]
    fn square_table_under_cube_policy() {
        let table = MuTable::build(unit_square(), DomainPolicy::Cube, 0).unwrap();
        assert_eq!(table.plane.mu, rat_int(1));
        for e in &table.edges {
            assert_eq!(e.mu, rat(1, 2), "edge {:?}", e.face);
            assert_eq!(e.v, rat_int(1));
        }
        for v in &table.verts {
            assert_eq!(v.mu, rat(1, 4), "vertex {:?}", v.face);
        }
        assert!(table.recursion_consistent());
        assert_eq!(table.vertex_sum(), rat_int(1));
    }

    #[test]
    fn triangle_table_matches_the_reference_values() {
        let table = MuTable::build(triangle_s(), DomainPolicy::Cube, 0).unwrap();
        assert_eq!(table.plane.mu, rat_int(1));
        for e in &table.edges {
            assert_eq!(e.mu, rat(1, 2), "edge {:?}", e.face);
        }
        // vertices: (1,0), (2,1), (0,2)
        assert_eq!(table.verts[0].mu, rat(3, 8));
        assert_eq!(table.verts[1].mu, rat(3, 8));
        assert_eq!(table.verts[2].mu, rat(1, 4));
        assert_eq!(table.verts[1].v, rat(7, 4));
        assert_eq!(table.vertex_sum(), rat_int(1));
        assert!(table.recursion_consistent());
    }

    #[test]
    fn triangle_table_under_dv_policy() {
        let table = MuTable::build(
            triangle_s(),
            DomainPolicy::Dv(crate::domain::GramMatrix::identity()),
            0,
        )
        .unwrap();
        assert_eq!(table.vertex_sum(), rat_int(1));
        for e in &table.edges {
            assert_eq!(e.mu, rat(1, 2));
        }
    }
}
