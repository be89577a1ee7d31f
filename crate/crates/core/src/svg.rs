//! Standalone SVG figures: region pictures, tilings and domain complexes.
//! Coordinates are exact until serialization, where they are rounded to
//! twelve decimal digits.

use crate::ehrhart::feasible_points;
use crate::geom::{ConvexPoly, IVec2, RatPoint, RectQ};
use crate::mu::{FaceId, MuTable};
use crate::polyset::PolySet;
use crate::scalar::{rat, rat_ceil_i64, rat_floor_i64, rat_int, rat_to_decimal, Rat};

const DIGITS: u32 = 12;

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2", "#edc948", "#9c755f",
];

fn face_color(face: FaceId) -> &'static str {
    match face {
        FaceId::Polygon => "#d3d3d3",
        FaceId::Edge(i) => PALETTE[i % 4],
        FaceId::Vertex(i) => PALETTE[4 + i % 4],
    }
}

fn fmt(r: &Rat) -> String {
    rat_to_decimal(r, DIGITS)
}

struct Doc {
    view: RectQ,
    body: String,
}

impl Doc {
    fn new(view: RectQ) -> Self {
        Doc {
            view,
            body: String::new(),
        }
    }

    fn poly(&mut self, cell: &ConvexPoly, fill: &str, opacity: &str) {
        let pts: Vec<String> = cell
            .verts()
            .iter()
            .map(|p| format!("{},{}", fmt(&p.x), fmt(&-&p.y)))
            .collect();
        self.body.push_str(&format!(
            "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"{}\" stroke=\"#333333\" stroke-width=\"0.02\"/>\n",
            pts.join(" "),
            fill,
            opacity
        ));
    }

    fn polyset(&mut self, set: &PolySet, fill: &str, opacity: &str) {
        for c in &set.cells {
            self.poly(c, fill, opacity);
        }
    }

    fn dot(&mut self, p: &RatPoint, r: &str, fill: &str) {
        self.body.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
            fmt(&p.x),
            fmt(&-&p.y),
            r,
            fill
        ));
    }

    fn lattice_dots(&mut self) {
        let x0 = rat_ceil_i64(&self.view.x0);
        let x1 = rat_floor_i64(&self.view.x1);
        let y0 = rat_ceil_i64(&self.view.y0);
        let y1 = rat_floor_i64(&self.view.y1);
        for x in x0..=x1 {
            for y in y0..=y1 {
                self.dot(&IVec2::new(x, y).to_point(), "0.05", "#00000066");
            }
        }
    }

    fn finish(self) -> String {
        let w = &self.view.x1 - &self.view.x0;
        let h = &self.view.y1 - &self.view.y0;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n{}</svg>\n",
            fmt(&self.view.x0),
            fmt(&-&self.view.y1),
            fmt(&w),
            fmt(&h),
            self.body
        )
    }
}

/// A valid SVG document with nothing in it.
pub fn empty_scene() -> String {
    Doc::new(RectQ::new(rat_int(0), rat_int(1), rat_int(0), rat_int(1))).finish()
}

/// The region of one face inside its certified window.
pub fn region_scene(table: &mut MuTable, face: FaceId) -> String {
    let Ok(entry) = table.entry(face) else {
        return empty_scene();
    };
    let region = entry.region.clone();
    let window = match &region {
        crate::region::Region::Plane { tile } => tile.bbox().inflate(&rat_int(1)),
        crate::region::Region::Halfplane(h) => h.window.clone(),
        crate::region::Region::Wedge(w) => w.window.inflate(&rat_int(1)),
    };
    let content = region.clipped_to(&mut table.cx, &window);
    let mut doc = Doc::new(window.inflate(&rat(1, 2)));
    doc.polyset(&content, face_color(face), "0.75");
    doc.lattice_dots();
    doc.dot(&RatPoint::origin(), "0.09", "#000000");
    doc.finish()
}

/// Translated regions tiling the window at dilation `t`, anchors marked.
pub fn tiling_scene(table: &mut MuTable, t: i64, window: &RectQ) -> String {
    let mut doc = Doc::new(window.inflate(&rat(1, 2)));
    for face in table.faces() {
        for x in feasible_points(table, face, t) {
            let shifted = window.translate(&RatPoint::new(rat_int(-x.x), rat_int(-x.y)));
            let entry = table.entry(face).expect("face exists");
            let region = entry.region.clone();
            let part = region
                .clipped_to(&mut table.cx, &shifted)
                .translate_lattice(&x);
            doc.polyset(&part, face_color(face), "0.6");
            doc.dot(&x.to_point(), "0.1", "#000000");
        }
    }
    let outline = table.polygon.dilate_cell(t);
    doc.body.push_str(&format!(
        "<polygon points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.06\"/>\n",
        outline
            .verts()
            .iter()
            .map(|p| format!("{},{}", fmt(&p.x), fmt(&-&p.y)))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    doc.finish()
}

/// Tiles anchored at the lattice points of the dilate: the domain complex.
pub fn domain_complex_scene(table: &mut MuTable, t: i64) -> String {
    let window = table.polygon.dilate_bbox(t).inflate(&rat_int(1));
    let mut doc = Doc::new(window.inflate(&rat(1, 2)));
    let bb = table.polygon.dilate_bbox(t);
    let x0 = rat_ceil_i64(&bb.x0);
    let x1 = rat_floor_i64(&bb.x1);
    let y0 = rat_ceil_i64(&bb.y0);
    let y1 = rat_floor_i64(&bb.y1);
    for x in x0..=x1 {
        for y in y0..=y1 {
            let p = IVec2::new(x, y);
            if table.polygon.dilate_contains(t, &p) {
                doc.poly(&table.cx.tile_at(&p), "#8cb4d2", "0.8");
                doc.dot(&p.to_point(), "0.07", "#000000");
            }
        }
    }
    let outline = table.polygon.dilate_cell(t);
    doc.body.push_str(&format!(
        "<polygon points=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"0.06\"/>\n",
        outline
            .verts()
            .iter()
            .map(|p| format!("{},{}", fmt(&p.x), fmt(&-&p.y)))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    doc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DomainPolicy;
    use crate::polygon::triangle_s;

    #[test]
    fn empty_scene_is_valid_svg() {
        let s = empty_scene();
        assert!(s.starts_with("<svg"));
        assert!(s.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn scenes_are_deterministic() {
        let mut t1 = MuTable::build(triangle_s(), DomainPolicy::Cube, 0).unwrap();
        let mut t2 = MuTable::build(triangle_s(), DomainPolicy::Cube, 0).unwrap();
        assert_eq!(
            region_scene(&mut t1, FaceId::Edge(0)),
            region_scene(&mut t2, FaceId::Edge(0))
        );
        let w = t1.polygon.dilate_bbox(3).inflate(&rat_int(1));
        assert_eq!(tiling_scene(&mut t1, 3, &w), tiling_scene(&mut t2, 3, &w));
    }
}
