//! Deterministic random corpora for verification runs and tests.

use crate::geom::IVec2;
use crate::polygon::LatticePolygon;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Strict convex hull (no collinear vertices), counterclockwise.
pub fn convex_hull(mut pts: Vec<IVec2>) -> Vec<IVec2> {
    pts.sort();
    pts.dedup();
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let mut lower: Vec<IVec2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 {
            let a = lower[lower.len() - 2];
            let b = lower[lower.len() - 1];
            if b.sub(&a).cross(&p.sub(&b)) <= 0 {
                lower.pop();
            } else {
                break;
            }
        }
        lower.push(*p);
    }
    let mut upper: Vec<IVec2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 {
            let a = upper[upper.len() - 2];
            let b = upper[upper.len() - 1];
            if b.sub(&a).cross(&p.sub(&b)) <= 0 {
                upper.pop();
            } else {
                break;
            }
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn random_polygon(rng: &mut ChaCha8Rng, max_coord: i64, max_verts: usize) -> LatticePolygon {
    loop {
        let count = rng.gen_range(4..=3 + 2 * max_verts);
        let pts: Vec<IVec2> = (0..count)
            .map(|_| {
                IVec2::new(
                    rng.gen_range(-max_coord..=max_coord),
                    rng.gen_range(-max_coord..=max_coord),
                )
            })
            .collect();
        let hull = convex_hull(pts);
        if hull.len() >= 3 && hull.len() <= max_verts {
            if let Ok(p) = LatticePolygon::new(hull) {
                return p;
            }
        }
    }
}

pub fn polygon_corpus(seed: u64, n: usize, max_coord: i64, max_verts: usize) -> Vec<LatticePolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| random_polygon(&mut rng, max_coord, max_verts))
        .collect()
}

/// Primitive outer normals of random rational halfplanes through the origin.
pub fn halfplane_normals(seed: u64, n: usize, max_coord: i64) -> Vec<IVec2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = IVec2::new(
            rng.gen_range(-max_coord..=max_coord),
            rng.gen_range(-max_coord..=max_coord),
        );
        if let Ok(p) = crate::geom::primitive(v) {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_valid() {
        let a = polygon_corpus(7, 10, 10, 8);
        let b = polygon_corpus(7, 10, 10, 8);
        assert_eq!(a.len(), 10);
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.verts(), y.verts());
            assert!(x.num_verts() >= 3 && x.num_verts() <= 8);
        }
    }

    #[test]
    fn hull_of_collinear_points_is_degenerate() {
        let pts = vec![IVec2::new(0, 0), IVec2::new(1, 1), IVec2::new(2, 2)];
        assert!(convex_hull(pts).len() < 3);
    }
}
