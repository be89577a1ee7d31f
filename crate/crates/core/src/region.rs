//! Region construction for the cones that occur at polygon faces.
//!
//! The plane cone gets the tile itself. A halfplane cone gets its strip
//! minus every tile that fits strictly inside; a wedge gets the plane minus
//! tiles deep inside it and minus selected translates of the two bounding
//! halfplane regions along their boundary line lattices. All removals are
//! driven by exact lattice thresholds and certified window bounds, so the
//! measured quantities are exact rationals.

use crate::cone::Cone2;
use crate::domain::{strip_constraints, DomainPolicy};
use crate::error::Error;
use crate::geom::{primitive, ConvexPoly, Halfplane, IVec2, RatPoint, RectQ};
use crate::polyset::PolySet;
use crate::scalar::{rat_ceil_i64, rat_floor_i64, rat_int, EpsScalar, Rat};
use num::{Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, Default)]
pub struct Diagnostics {
    /// Membership predicates whose value parts tied and ε decided.
    pub eps_decided: u64,
    /// Window enlargements during stabilization.
    pub window_doublings: u64,
    /// Exact translate-pair disjointness tests performed.
    pub pair_tests: u64,
}

/// Shared state of one construction run: the tile, the perturbation
/// direction and diagnostics.
pub struct Construction {
    pub policy: DomainPolicy,
    pub u: RatPoint,
    pub delta_index: u64,
    pub tile: ConvexPoly,
    pub diag: Diagnostics,
}

impl Construction {
    /// Picks the perturbation direction `u = (1, δ)` from a deterministic
    /// sequence, skipping any δ that makes `u` parallel or perpendicular to
    /// a direction in play, then builds the tile for the chosen policy.
    pub fn new(policy: DomainPolicy, dirs_in_play: &[IVec2], seed: u64) -> Result<Self, Error> {
        'outer: for i in 0..512u64 {
            let delta = rat_int((2 + seed + i) as i64);
            let u = RatPoint::new(rat_int(1), delta);
            let tile = policy.plane_tile(&u)?;
            let mut dirs: Vec<IVec2> = dirs_in_play.to_vec();
            for c in tile.constraints() {
                dirs.push(c.normal);
                dirs.push(c.normal.rot90());
            }
            for d in &dirs {
                let cross = rat_int(d.y) - &u.y * rat_int(d.x);
                let dot = rat_int(d.x) + &u.y * rat_int(d.y);
                if cross.is_zero() || dot.is_zero() {
                    continue 'outer;
                }
            }
            return Ok(Construction {
                policy,
                u,
                delta_index: seed + i,
                tile,
                diag: Diagnostics::default(),
            });
        }
        Err(Error::NoGenericDirection)
    }

    /// Builds with an explicit `δ`, for pinning the half-open convention.
    /// The caller is responsible for genericity against its directions.
    pub fn with_delta(policy: DomainPolicy, delta: Rat) -> Result<Self, Error> {
        let u = RatPoint::new(rat_int(1), delta);
        let tile = policy.plane_tile(&u)?;
        Ok(Construction {
            policy,
            u,
            delta_index: 0,
            tile,
            diag: Diagnostics::default(),
        })
    }

    pub fn tile_at(&self, x: &IVec2) -> ConvexPoly {
        self.tile.translate_lattice(x)
    }

    pub fn support(&self, n: &IVec2) -> Rat {
        self.tile.support(n)
    }
}

/// Lattice membership condition `s + bound + ε·eps < 0` on a functional
/// value `s`, with ties decided by the eps coefficient.
#[derive(Clone, Debug)]
pub struct LexThreshold {
    pub bound: Rat,
    pub eps: Rat,
}

impl LexThreshold {
    pub fn admits(&self, s: &Rat, diag: &mut Diagnostics) -> bool {
        let v = s + &self.bound;
        match v.cmp(&Rat::zero()) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => {
                diag.eps_decided += 1;
                self.eps.is_negative()
            }
        }
    }
}

/// Solves `⟨n, x⟩ = 1` over the lattice for a primitive `n`.
fn lattice_line_base(n: &IVec2) -> IVec2 {
    fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
        if b == 0 {
            (a, 1, 0)
        } else {
            let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
            (g, y, x - a.div_euclid(b) * y)
        }
    }
    let sa = n.x.signum().max(0) * 2 - 1; // ±1
    let (g, x, y) = ext_gcd(n.x.abs(), n.y.abs());
    debug_assert_eq!(g, 1, "normals are primitive");
    let sb = n.y.signum().max(0) * 2 - 1;
    let base = IVec2::new(x * sa.signum().max(-1), y * sb);
    // fix signs explicitly; recompute to be safe
    let mut cand = base;
    if n.dot(&cand) != 1 {
        cand = IVec2::new(x * n.x.signum(), y * n.y.signum());
    }
    debug_assert_eq!(n.dot(&cand), 1);
    cand
}

/// Summary of a halfplane region that later stages consume: the strip, the
/// tile-removal threshold and the certified inner depth.
#[derive(Clone, Debug)]
pub struct HalfplaneCore {
    pub normal: IVec2,
    pub line_dir: IVec2,
    pub strip: [Halfplane; 2],
    pub removal: LexThreshold,
    pub support_n: Rat,
    /// The region is empty where `⟨normal, y⟩ < -depth`.
    pub depth: Rat,
}

impl HalfplaneCore {
    /// The exact region content inside an arbitrary box: strip ∩ box minus
    /// every removed tile that reaches it.
    pub fn clipped_portion(&self, cx: &mut Construction, window: &RectQ) -> PolySet {
        let Some(base_cell) = window
            .to_poly()
            .clip_all(&self.strip)
        else {
            return PolySet::empty();
        };
        let mut out = PolySet::from_cell(base_cell);
        let (h_n, h_w) = (
            self.support_n.clone(),
            cx.support(&self.line_dir).max(cx.support(&self.line_dir.neg())),
        );
        let corners = [
            RatPoint::new(window.x0.clone(), window.y0.clone()),
            RatPoint::new(window.x1.clone(), window.y0.clone()),
            RatPoint::new(window.x1.clone(), window.y1.clone()),
            RatPoint::new(window.x0.clone(), window.y1.clone()),
        ];
        let n_vals: Vec<Rat> = corners.iter().map(|p| self.normal.dot_point(p)).collect();
        let w_vals: Vec<Rat> = corners.iter().map(|p| self.line_dir.dot_point(p)).collect();
        let n_lo = n_vals.iter().min().unwrap() - &h_n;
        let n_hi = n_vals.iter().max().unwrap() + &h_n;
        let w_lo = w_vals.iter().min().unwrap() - &h_w;
        let w_hi = w_vals.iter().max().unwrap() + &h_w;
        let base = lattice_line_base(&self.normal);
        let q = rat_int(self.line_dir.norm2());
        for s in rat_ceil_i64(&n_lo)..=rat_floor_i64(&n_hi) {
            let srat = rat_int(s);
            if !self.removal.admits(&srat, &mut cx.diag) {
                continue;
            }
            let b = base.scaled(s);
            let wb = rat_int(self.line_dir.dot(&b));
            let k_lo = rat_ceil_i64(&((&w_lo - &wb) / &q));
            let k_hi = rat_floor_i64(&((&w_hi - &wb) / &q));
            for k in k_lo..=k_hi {
                let x = b.add(&self.line_dir.scaled(k));
                out = out.subtract(&PolySet::from_cell(cx.tile_at(&x)));
                if out.is_empty() {
                    return out;
                }
            }
        }
        out
    }
}

/// Fully built halfplane region with its certified collar window.
#[derive(Clone, Debug)]
pub struct HalfplaneRegionData {
    pub core: HalfplaneCore,
    /// Strip ∖ removed tiles inside the collar window.
    pub collar: PolySet,
    /// `R ∩ int(H⁺)`, the bounded inner part.
    pub inner: PolySet,
    pub window: RectQ,
    pub v: Rat,
    pub w_plane: Rat,
}

/// Selected translate anchors `k·step` of a halfplane region inside a wedge.
#[derive(Clone, Debug)]
pub struct EdgeXSet {
    pub step: IVec2,
    /// Containment condition holds exactly for `k ≥ first_candidate`.
    pub first_candidate: i64,
    /// Members within `[first_candidate, all_from)`.
    pub members: BTreeSet<i64>,
    /// Every `k ≥ all_from` is a member (linear escape certificate).
    pub all_from: i64,
}

impl EdgeXSet {
    pub fn is_member(&self, k: i64) -> bool {
        k >= self.all_from || (k >= self.first_candidate && self.members.contains(&k))
    }

    pub fn member_count_in(&self, lo: i64, hi: i64) -> u64 {
        (lo..=hi).filter(|k| self.is_member(*k)).count() as u64
    }
}

#[derive(Clone, Debug)]
pub struct WedgeRegionData {
    pub n1: IVec2,
    pub n2: IVec2,
    /// Primitive boundary-ray directions, pointing into the wedge.
    pub w1: IVec2,
    pub w2: IVec2,
    pub core1: HalfplaneCore,
    pub core2: HalfplaneCore,
    pub xv1: LexThreshold,
    pub xv2: LexThreshold,
    pub x1: EdgeXSet,
    pub x2: EdgeXSet,
    pub window: RectQ,
    pub v: Rat,
    pub w_plane: Rat,
    pub w_ray1: Rat,
    pub w_ray2: Rat,
}

/// A region together with everything needed to reproduce its content in any
/// bounded window.
#[derive(Clone, Debug)]
pub enum Region {
    Plane { tile: ConvexPoly },
    Halfplane(HalfplaneRegionData),
    Wedge(Box<WedgeRegionData>),
}

impl Region {
    pub fn cone(&self) -> Cone2 {
        match self {
            Region::Plane { .. } => Cone2::Plane,
            Region::Halfplane(h) => Cone2::Halfplane {
                normal: h.core.normal,
            },
            Region::Wedge(w) => Cone2::wedge(w.n1, w.n2).expect("stored normals independent"),
        }
    }

    /// Exact region content clipped to a box.
    pub fn clipped_to(&self, cx: &mut Construction, window: &RectQ) -> PolySet {
        match self {
            Region::Plane { tile } => match tile.clip_rect(window) {
                Some(c) => PolySet::from_cell(c),
                None => PolySet::empty(),
            },
            Region::Halfplane(h) => h.core.clipped_portion(cx, window),
            Region::Wedge(w) => wedge_clipped_portion(cx, w, window),
        }
    }
}

fn tile_anchor_levels(cx: &Construction, n: &IVec2) -> (Rat, Rat) {
    (cx.support(n), cx.support(&n.neg()))
}

/// Builds the plane region: the tile itself, relative volume 1.
pub fn region_plane(cx: &Construction) -> Region {
    Region::Plane {
        tile: cx.tile.clone(),
    }
}

/// Builds a halfplane region with the adaptive collar window.
pub fn region_halfplane(cx: &mut Construction, normal: IVec2) -> Result<Region, Error> {
    let n = primitive(normal)?;
    let w = n.rot90();
    let strip = strip_constraints(&w, &cx.u);
    let h_n = cx.support(&n);
    let removal = LexThreshold {
        bound: h_n.clone(),
        eps: n.dot_point(&cx.u),
    };
    let core = HalfplaneCore {
        normal: n,
        line_dir: w,
        strip,
        removal,
        support_n: h_n.clone(),
        depth: Rat::zero(), // set below
    };
    let diam = &h_n + &h_n;
    let mut depth = rat_int(4) * &diam;
    let cap = rat_int(64) * &diam;
    let mut current = halfplane_content(cx, &core, &depth);
    loop {
        let doubled_depth = &depth * rat_int(2);
        let next = halfplane_content(cx, &core, &doubled_depth);
        if current.2 == next.2 && current.3 == next.3 {
            let (collar, inner, v, w_plane, window) = current;
            let mut core = core;
            core.depth = depth;
            return Ok(Region::Halfplane(HalfplaneRegionData {
                core,
                collar,
                inner,
                window,
                v,
                w_plane,
            }));
        }
        cx.diag.window_doublings += 1;
        depth = doubled_depth;
        current = next;
        if depth > cap {
            return Err(Error::WindowCap(format!(
                "stabilizing halfplane region with normal {:?}",
                n
            )));
        }
    }
}

type HalfplaneContent = (PolySet, PolySet, Rat, Rat, RectQ);

fn halfplane_content(cx: &mut Construction, core: &HalfplaneCore, depth: &Rat) -> HalfplaneContent {
    let n = &core.normal;
    let w = &core.line_dir;
    let (h_w_pos, h_w_neg) = tile_anchor_levels(cx, w);
    let h_w = h_w_pos.max(h_w_neg);
    let half_w = rat_int(w.norm2()) / rat_int(2);
    // bounding box of the collar parallelogram
    let b = &half_w + depth + rat_int(1) + cx.support(&IVec2::new(1, 0)) + cx.support(&IVec2::new(0, 1));
    let window = RectQ::from_center_halfwidth(&RatPoint::origin(), &b);
    let base_cell = window
        .to_poly()
        .clip_all(&core.strip)
        .and_then(|c| c.clip(&Halfplane::closed(*n, depth.clone())))
        .and_then(|c| c.clip(&Halfplane::closed(n.neg(), depth.clone())))
        .expect("collar window is nonempty");
    let collar_window = base_cell.bbox();
    let mut collar = PolySet::from_cell(base_cell);
    // subtract removed tiles that reach the collar
    let base = lattice_line_base(n);
    let q = rat_int(w.norm2());
    let s_lo = rat_ceil_i64(&(-(depth.clone()) - &core.support_n));
    for s in s_lo..=0 {
        let srat = rat_int(s);
        if !core.removal.admits(&srat, &mut cx.diag) {
            continue;
        }
        let bpt = base.scaled(s);
        let wb = rat_int(w.dot(&bpt));
        let lim = &half_w + &h_w;
        let k_lo = rat_ceil_i64(&((-&lim - &wb) / &q));
        let k_hi = rat_floor_i64(&((&lim - &wb) / &q));
        for k in k_lo..=k_hi {
            let x = bpt.add(&w.scaled(k));
            collar = collar.subtract(&PolySet::from_cell(cx.tile_at(&x)));
        }
    }
    let inner = collar.clip(&Halfplane::open(*n, Rat::zero()));
    // v: tiles anchored at cone lattice points, clipped to the strip
    let mut v = Rat::zero();
    let s_keep_lo = rat_floor_i64(&-&core.support_n) - 1;
    for s in s_keep_lo..=0 {
        let srat = rat_int(s);
        if core.removal.admits(&srat, &mut cx.diag) {
            continue;
        }
        let bpt = base.scaled(s);
        let wb = rat_int(w.dot(&bpt));
        let lim = &half_w + &h_w;
        let k_lo = rat_ceil_i64(&((-&lim - &wb) / &q));
        let k_hi = rat_floor_i64(&((&lim - &wb) / &q));
        for k in k_lo..=k_hi {
            let x = bpt.add(&w.scaled(k));
            if let Some(c) = cx.tile_at(&x).clip_all(&core.strip) {
                v += c.area();
            }
        }
    }
    let w_plane = collar.clip(&Halfplane::closed(*n, Rat::zero())).area();
    (collar, inner, v, w_plane, collar_window)
}

/// Orients `rot90(n)` to point into the wedge (negative against the other
/// normal).
fn into_wedge_dir(n: &IVec2, other: &IVec2) -> IVec2 {
    let r = n.rot90();
    if other.dot(&r) < 0 {
        r
    } else {
        r.neg()
    }
}

/// Smallest `k` for which the translated inner part sits strictly inside the
/// open wedge.
fn candidate_threshold(
    cx: &mut Construction,
    inner: &PolySet,
    n_other: &IVec2,
    step_coeff: i64,
) -> i64 {
    debug_assert!(step_coeff < 0);
    let mut m: Option<EpsScalar> = None;
    for cell in &inner.cells {
        let f = cell.max_functional(n_other);
        m = Some(match m {
            None => f,
            Some(cur) => cur.max(f),
        });
    }
    let m = m.expect("halfplane inner part is nonempty");
    // (m.value + k·a, m.eps) < 0 with a < 0
    let a = rat_int(step_coeff);
    let tie = &m.value / -&a;
    if tie.denom() == &num::BigInt::from(1) {
        let k = rat_floor_i64(&tie);
        cx.diag.eps_decided += 1;
        if m.eps.is_negative() {
            k
        } else {
            k + 1
        }
    } else {
        rat_floor_i64(&tie) + 1
    }
}

struct PairGeometry {
    alpha: RatPoint,
    beta: RatPoint,
    // f1: a1·k + b1·m ≥ c1  ⇔ band pair can reach the first region
    a1: Rat,
    b1: Rat,
    c1: Rat,
    a2: Rat,
    b2: Rat,
    c2: Rat,
}

fn pair_geometry(
    n1: &IVec2,
    n2: &IVec2,
    w1: &IVec2,
    w2: &IVec2,
    g1: &Rat,
    g2: &Rat,
) -> PairGeometry {
    let s = rat_int(w1.norm2()) / rat_int(w1.dot(n2));
    let t = rat_int(w2.norm2()) / rat_int(w2.dot(n1));
    debug_assert!(s.is_negative() && t.is_negative());
    let alpha = RatPoint::new(&s * rat_int(n2.x), &s * rat_int(n2.y));
    let beta = RatPoint::new(&t * rat_int(n1.x), &t * rat_int(n1.y));
    let a1 = n1.dot_point(&alpha);
    let b1 = n1.dot_point(&beta);
    let a2 = n2.dot_point(&alpha);
    let b2 = n2.dot_point(&beta);
    let r1 = (a1.abs() + b1.abs()) / rat_int(2);
    let r2 = (a2.abs() + b2.abs()) / rat_int(2);
    let c1 = -(g1.clone()) - r1;
    let c2 = -(g2.clone()) - r2;
    debug_assert!(b1.is_negative(), "escape in m must be monotone");
    debug_assert!(a2.is_negative(), "escape in k must be monotone");
    PairGeometry {
        alpha,
        beta,
        a1,
        b1,
        c1,
        a2,
        b2,
        c2,
    }
}

/// Largest value of the objective over `{f1 ≥ c1, f2 ≥ c2, k ≥ k0, m ≥ m0}`,
/// evaluated at constraint-pair corners (the region is bounded in the
/// objective direction by the monotone escape coefficients).
fn corner_max(
    geo: &PairGeometry,
    k0: i64,
    m0: i64,
    objective_is_k: bool,
) -> Option<Rat> {
    // constraints as a·k + b·m ≥ c
    let cons: Vec<(Rat, Rat, Rat)> = vec![
        (geo.a1.clone(), geo.b1.clone(), geo.c1.clone()),
        (geo.a2.clone(), geo.b2.clone(), geo.c2.clone()),
        (rat_int(1), Rat::zero(), rat_int(k0)),
        (Rat::zero(), rat_int(1), rat_int(m0)),
    ];
    let mut best: Option<Rat> = None;
    for i in 0..cons.len() {
        for j in (i + 1)..cons.len() {
            let (a1, b1, c1) = &cons[i];
            let (a2, b2, c2) = &cons[j];
            let det = a1 * b2 - a2 * b1;
            if det.is_zero() {
                continue;
            }
            let k = (c1 * b2 - c2 * b1) / &det;
            let m = (a1 * c2 - a2 * c1) / &det;
            let feasible = cons
                .iter()
                .all(|(a, b, c)| &(a * &k + b * &m) - c >= -Rat::zero());
            if !feasible {
                continue;
            }
            let obj = if objective_is_k { k.clone() } else { m.clone() };
            best = Some(match best {
                None => obj,
                Some(cur) => cur.max(obj),
            });
        }
    }
    best
}

/// Integer range of `m` for which the band pair `(k, m)` can meet both
/// regions, intersected with `m ≥ m0`. Empty if no such `m`.
fn m_range_for_k(geo: &PairGeometry, k: i64, m0: i64) -> Option<(i64, i64)> {
    let kq = rat_int(k);
    // f1: b1 < 0 ⇒ upper bound
    let hi1 = (&geo.c1 - &geo.a1 * &kq) / &geo.b1;
    let mut hi = rat_floor_i64(&hi1);
    let mut lo = m0;
    // f2 bound depends on the sign of b2
    match geo.b2.cmp(&Rat::zero()) {
        Ordering::Equal => {
            if &geo.a2 * &kq < geo.c2 {
                return None;
            }
        }
        Ordering::Greater => {
            let lo2 = (&geo.c2 - &geo.a2 * &kq) / &geo.b2;
            lo = lo.max(rat_ceil_i64(&lo2));
        }
        Ordering::Less => {
            let hi2 = (&geo.c2 - &geo.a2 * &kq) / &geo.b2;
            hi = hi.min(rat_floor_i64(&hi2));
        }
    }
    if lo > hi {
        None
    } else {
        Some((lo, hi))
    }
}

fn pair_box(geo: &PairGeometry, k: i64, m: i64) -> RectQ {
    let c = geo
        .alpha
        .scale(&rat_int(k))
        .add(&geo.beta.scale(&rat_int(m)));
    let hx = (geo.alpha.x.abs() + geo.beta.x.abs()) / rat_int(2) + rat_int(1);
    let hy = (geo.alpha.y.abs() + geo.beta.y.abs()) / rat_int(2) + rat_int(1);
    RectQ::new(&c.x - &hx, &c.x + &hx, &c.y - &hy, &c.y + &hy)
}

/// Builds the wedge region for outer normals `n1, n2`, given the two
/// bounding halfplane regions.
pub fn region_wedge(
    cx: &mut Construction,
    n1: IVec2,
    n2: IVec2,
    r1: &HalfplaneRegionData,
    r2: &HalfplaneRegionData,
) -> Result<Region, Error> {
    let n1 = primitive(n1)?;
    let n2 = primitive(n2)?;
    if n1.cross(&n2) == 0 {
        return Err(Error::UnsupportedCone("wedge with dependent normals"));
    }
    debug_assert_eq!(r1.core.normal, n1);
    debug_assert_eq!(r2.core.normal, n2);
    let w1 = into_wedge_dir(&n1, &n2);
    let w2 = into_wedge_dir(&n2, &n1);
    let h1 = cx.support(&n1);
    let h2 = cx.support(&n2);
    let xv1 = LexThreshold {
        bound: h1.clone(),
        eps: n1.dot_point(&cx.u),
    };
    let xv2 = LexThreshold {
        bound: h2.clone(),
        eps: n2.dot_point(&cx.u),
    };
    let k0 = candidate_threshold(cx, &r1.inner, &n2, n2.dot(&w1));
    let m0 = candidate_threshold(cx, &r2.inner, &n1, n1.dot(&w2));
    let geo = pair_geometry(&n1, &n2, &w1, &w2, &r1.core.depth, &r2.core.depth);

    let mut meets_cache: BTreeMap<(i64, i64), bool> = BTreeMap::new();
    let mut pair_meets = |cx: &mut Construction, k: i64, m: i64| -> bool {
        if let Some(v) = meets_cache.get(&(k, m)) {
            return *v;
        }
        cx.diag.pair_tests += 1;
        let bx = pair_box(&geo, k, m);
        let kw = w1.scaled(k);
        let mw = w2.scaled(m);
        let a = r1
            .core
            .clipped_portion(cx, &bx.translate(&RatPoint::new(rat_int(-kw.x), rat_int(-kw.y))))
            .translate_lattice(&kw);
        let b = r2
            .core
            .clipped_portion(cx, &bx.translate(&RatPoint::new(rat_int(-mw.x), rat_int(-mw.y))))
            .translate_lattice(&mw);
        let ans = a.meets(&b);
        meets_cache.insert((k, m), ans);
        ans
    };

    // family 1 members
    let kstar = corner_max(&geo, k0, m0, true)
        .map(|r| rat_floor_i64(&r))
        .unwrap_or(k0 - 1);
    let mut members1 = BTreeSet::new();
    for k in k0..=kstar {
        let ok = match m_range_for_k(&geo, k, m0) {
            None => true,
            Some((lo, hi)) => {
                let mut ok = true;
                for m in lo..=hi {
                    if pair_meets(cx, k, m) {
                        ok = false;
                        break;
                    }
                }
                ok
            }
        };
        if ok {
            members1.insert(k);
        }
    }
    let all_from1 = (kstar + 1).max(k0);

    // family 2 members (same pair tests, roles swapped)
    let mstar = corner_max(&geo, k0, m0, false)
        .map(|r| rat_floor_i64(&r))
        .unwrap_or(m0 - 1);
    let mut members2 = BTreeSet::new();
    for m in m0..=mstar {
        // k-range for this m, mirrored bounds
        let mq = rat_int(m);
        let hi2 = (&geo.c2 - &geo.b2 * &mq) / &geo.a2; // a2 < 0 ⇒ upper bound
        let mut hi = rat_floor_i64(&hi2);
        let mut lo = k0;
        match geo.a1.cmp(&Rat::zero()) {
            Ordering::Equal => {
                if &geo.b1 * &mq < geo.c1 {
                    members2.insert(m);
                    continue;
                }
            }
            Ordering::Greater => {
                let lo1 = (&geo.c1 - &geo.b1 * &mq) / &geo.a1;
                lo = lo.max(rat_ceil_i64(&lo1));
            }
            Ordering::Less => {
                let hi1 = (&geo.c1 - &geo.b1 * &mq) / &geo.a1;
                hi = hi.min(rat_floor_i64(&hi1));
            }
        }
        let mut ok = true;
        for k in lo..=hi {
            if pair_meets(cx, k, m) {
                ok = false;
                break;
            }
        }
        if ok {
            members2.insert(m);
        }
    }
    let all_from2 = (mstar + 1).max(m0);

    let x1 = EdgeXSet {
        step: w1,
        first_candidate: k0,
        members: members1,
        all_from: all_from1,
    };
    let x2 = EdgeXSet {
        step: w2,
        first_candidate: m0,
        members: members2,
        all_from: all_from2,
    };

    let mut data = WedgeRegionData {
        n1,
        n2,
        w1,
        w2,
        core1: r1.core.clone(),
        core2: r2.core.clone(),
        xv1,
        xv2,
        x1,
        x2,
        window: RectQ::from_center_halfwidth(&RatPoint::origin(), &rat_int(1)),
        v: Rat::zero(),
        w_plane: Rat::zero(),
        w_ray1: Rat::zero(),
        w_ray2: Rat::zero(),
    };
    wedge_measures(cx, &mut data)?;
    Ok(Region::Wedge(Box::new(data)))
}

/// Anchors whose tiles can carry region content near one boundary ray.
fn zone_anchors(
    cx: &mut Construction,
    data: &WedgeRegionData,
    first: bool,
    out: &mut BTreeSet<(i64, i64)>,
) {
    let (n_self, w_self, n_other, xset) = if first {
        (&data.n1, &data.w1, &data.n2, &data.x1)
    } else {
        (&data.n2, &data.w2, &data.n1, &data.x2)
    };
    let h_self = cx.support(n_self);
    let h_other = cx.support(n_other);
    let d_self = rat_floor_i64(&h_self) + 1;
    let s_hi = rat_ceil_i64(&h_self);
    let q = rat_int(w_self.norm2());
    let w_hi = rat_int((xset.all_from + 2) * w_self.norm2());
    // lower bound on ⟨w_self, x⟩ within the zone, from the other constraint
    let c_neg = rat_int(n_other.dot(w_self));
    debug_assert!(c_neg.is_negative());
    let nn = rat_int(n_other.dot(n_self));
    let n2_self = rat_int(n_self.norm2());
    let h_oth_ceil = rat_int(rat_ceil_i64(&h_other));
    let mut p_min: Option<Rat> = None;
    for qv in [rat_int(-d_self) / &n2_self, rat_int(s_hi) / &n2_self] {
        let p = (&h_oth_ceil - &qv * &nn) / &c_neg;
        p_min = Some(match p_min {
            None => p,
            Some(cur) => cur.min(p),
        });
    }
    let w_lo = p_min.unwrap() * &q - &q - rat_int(1);
    let base = lattice_line_base(n_self);
    for s in -d_self..=s_hi {
        let b = base.scaled(s);
        let wb = rat_int(w_self.dot(&b));
        let k_lo = rat_ceil_i64(&((&w_lo - &wb) / &q));
        let k_hi = rat_floor_i64(&((&w_hi - &wb) / &q));
        for k in k_lo..=k_hi {
            let x = b.add(&w_self.scaled(k));
            if rat_int(n_other.dot(&x)) <= h_oth_ceil {
                out.insert((x.x, x.y));
            }
        }
    }
}

/// The remainder of one tile after subtracting every selected halfplane
/// translate that reaches it.
fn wedge_frag(cx: &mut Construction, data: &WedgeRegionData, x: &IVec2) -> PolySet {
    let tile = cx.tile_at(x);
    let bbox = tile.bbox();
    let mut frag = PolySet::from_cell(tile);
    for first in [true, false] {
        let (w_self, core, xset) = if first {
            (&data.w1, &data.core1, &data.x1)
        } else {
            (&data.w2, &data.core2, &data.x2)
        };
        let q = w_self.norm2();
        let h_w = cx.support(w_self).max(cx.support(&w_self.neg()));
        let span = rat_int(w_self.dot(x));
        let lo = (&span - &h_w) / rat_int(q) - crate::scalar::rat(1, 2);
        let hi = (&span + &h_w) / rat_int(q) + crate::scalar::rat(1, 2);
        for k in rat_ceil_i64(&lo)..=rat_floor_i64(&hi) {
            if !xset.is_member(k) {
                continue;
            }
            let kw = w_self.scaled(k);
            let portion = core
                .clipped_portion(
                    cx,
                    &bbox.translate(&RatPoint::new(rat_int(-kw.x), rat_int(-kw.y))),
                )
                .translate_lattice(&kw);
            frag = frag.subtract(&portion);
            if frag.is_empty() {
                return frag;
            }
        }
    }
    frag
}

fn wedge_measures(cx: &mut Construction, data: &mut WedgeRegionData) -> Result<(), Error> {
    let mut anchors = BTreeSet::new();
    zone_anchors(cx, data, true, &mut anchors);
    zone_anchors(cx, data, false, &mut anchors);
    let h1 = cx.support(&data.n1);
    let h2 = cx.support(&data.n2);
    let ring1 = rat_int((data.x1.all_from + 1) * data.w1.norm2());
    let ring2 = rat_int((data.x2.all_from + 1) * data.w2.norm2());
    let cone_clip = [
        Halfplane::closed(data.n1, Rat::zero()),
        Halfplane::closed(data.n2, Rat::zero()),
    ];
    let mut v = Rat::zero();
    let mut w_plane = Rat::zero();
    let mut w_ray1 = Rat::zero();
    let mut w_ray2 = Rat::zero();
    let mut window: Option<RectQ> = None;
    for (ax, ay) in &anchors {
        let x = IVec2::new(*ax, *ay);
        let s1 = rat_int(data.n1.dot(&x));
        let s2 = rat_int(data.n2.dot(&x));
        if data.xv1.admits(&s1, &mut cx.diag) && data.xv2.admits(&s2, &mut cx.diag) {
            continue; // removed tile
        }
        let frag = wedge_frag(cx, data, &x);
        if frag.is_empty() {
            continue;
        }
        // certificate: content may not appear in the outermost enumerated band
        if rat_int(data.w1.dot(&x)) > ring1 || rat_int(data.w2.dot(&x)) > ring2 {
            return Err(Error::WindowCap(format!(
                "wedge region content reached the window boundary at {:?}",
                x
            )));
        }
        if let Some(bb) = frag.bbox() {
            window = Some(match window {
                None => bb,
                Some(cur) => cur.hull(&bb),
            });
        }
        if !s1.is_positive() && !s2.is_positive() {
            v += frag.area();
        }
        w_plane += frag.clip_all(&cone_clip).area();
        if s1.abs() <= h1 {
            w_ray1 += ray_section(&frag, &data.w1);
        }
        if s2.abs() <= h2 {
            w_ray2 += ray_section(&frag, &data.w2);
        }
    }
    data.v = v;
    data.w_plane = w_plane;
    data.w_ray1 = w_ray1;
    data.w_ray2 = w_ray2;
    data.window = window.unwrap_or_else(|| {
        RectQ::from_center_halfwidth(&RatPoint::origin(), &rat_int(1))
    });
    Ok(())
}

/// Length of the fragment's section along `{t·dir : t ≥ 0}`, in primitive
/// units of `dir`.
fn ray_section(frag: &PolySet, dir: &IVec2) -> Rat {
    let mut total = Rat::zero();
    for (lo, hi) in frag.line_intervals(&RatPoint::origin(), dir) {
        let lo = lo.max(EpsScalar::zero());
        if hi.value > lo.value {
            total += &hi.value - &lo.value;
        }
    }
    total
}

/// Wedge region content in a box: box minus deep tiles minus selected
/// halfplane translates.
fn wedge_clipped_portion(cx: &mut Construction, data: &WedgeRegionData, window: &RectQ) -> PolySet {
    let Some(base) = window.to_poly().clip_rect(window) else {
        return PolySet::empty();
    };
    let mut out = PolySet::from_cell(base);
    // deep tiles: both thresholds admit
    let corners = [
        RatPoint::new(window.x0.clone(), window.y0.clone()),
        RatPoint::new(window.x1.clone(), window.y0.clone()),
        RatPoint::new(window.x1.clone(), window.y1.clone()),
        RatPoint::new(window.x0.clone(), window.y1.clone()),
    ];
    let h1 = cx.support(&data.n1).max(cx.support(&data.n1.neg()));
    let n1_vals: Vec<Rat> = corners.iter().map(|p| data.n1.dot_point(p)).collect();
    let s_lo = rat_ceil_i64(&(n1_vals.iter().min().unwrap() - &h1));
    let s_hi = rat_floor_i64(&(n1_vals.iter().max().unwrap() + &h1));
    let base1 = lattice_line_base(&data.n1);
    let w1r = data.n1.rot90();
    let w_vals: Vec<Rat> = corners.iter().map(|p| w1r.dot_point(p)).collect();
    let h_w = cx.support(&w1r).max(cx.support(&w1r.neg()));
    let w_lo = w_vals.iter().min().unwrap() - &h_w;
    let w_hi = w_vals.iter().max().unwrap() + &h_w;
    let q = rat_int(w1r.norm2());
    for s in s_lo..=s_hi {
        let srat = rat_int(s);
        if !data.xv1.admits(&srat, &mut cx.diag) {
            continue;
        }
        let b = base1.scaled(s);
        let wb = rat_int(w1r.dot(&b));
        let k_lo = rat_ceil_i64(&((&w_lo - &wb) / &q));
        let k_hi = rat_floor_i64(&((&w_hi - &wb) / &q));
        for k in k_lo..=k_hi {
            let x = b.add(&w1r.scaled(k));
            let s2 = rat_int(data.n2.dot(&x));
            if !data.xv2.admits(&s2, &mut cx.diag) {
                continue;
            }
            out = out.subtract(&PolySet::from_cell(cx.tile_at(&x)));
            if out.is_empty() {
                return out;
            }
        }
    }
    // selected halfplane translates crossing the box
    for first in [true, false] {
        let (w_self, core, xset) = if first {
            (&data.w1, &data.core1, &data.x1)
        } else {
            (&data.w2, &data.core2, &data.x2)
        };
        let q = rat_int(w_self.norm2());
        let w_vals: Vec<Rat> = corners.iter().map(|p| w_self.dot_point(p)).collect();
        let half = &q / rat_int(2);
        let k_lo = rat_ceil_i64(&((w_vals.iter().min().unwrap() - &half) / &q));
        let k_hi = rat_floor_i64(&((w_vals.iter().max().unwrap() + &half) / &q));
        for k in k_lo..=k_hi {
            if !xset.is_member(k) {
                continue;
            }
            if out.is_empty() {
                return out;
            }
            let kw = w_self.scaled(k);
            let portion = core
                .clipped_portion(
                    cx,
                    &window.translate(&RatPoint::new(rat_int(-kw.x), rat_int(-kw.y))),
                )
                .translate_lattice(&kw);
            out = out.subtract(&portion);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn cube_cx(seed: u64) -> Construction {
        Construction::new(DomainPolicy::Cube, &[], seed).unwrap()
    }

    #[test]
    fn perturbation_direction_avoids_given_directions() {
        // δ = 2 collides with an edge of direction (1, 2)
        let cx = Construction::new(DomainPolicy::Cube, &[IVec2::new(1, 2)], 0).unwrap();
        assert!(cx.delta_index > 0);
    }

    #[test]
    fn plane_region_is_the_tile() {
        let cx = cube_cx(0);
        let r = region_plane(&cx);
        match r {
            Region::Plane { tile } => assert_eq!(tile.area(), rat_int(1)),
            _ => panic!("expected plane region"),
        }
    }

    #[test]
    fn axis_halfplane_region_values() {
        // fcone {x₂ ≥ 0} has outer constraint normal (0, -1)
        let mut cx = cube_cx(0);
        let r = region_halfplane(&mut cx, IVec2::new(0, -1)).unwrap();
        let Region::Halfplane(h) = r else { panic!() };
        assert_eq!(h.v, rat_int(1));
        assert_eq!(h.w_plane, rat(1, 2));
    }

    #[test]
    fn diagonal_halfplane_values_depend_on_the_half_open_side() {
        // normal (1,-1): the boundary-touching tile row ties and ε decides
        let mut cx = cube_cx(0); // u = (1, 2): ⟨n, u⟩ = -1 < 0, row removed
        let r = region_halfplane(&mut cx, IVec2::new(1, -1)).unwrap();
        let Region::Halfplane(h) = r else { panic!() };
        assert_eq!(h.v, rat_int(1));
        assert_eq!(h.w_plane, rat(1, 2));

        let mut cx = Construction::new(DomainPolicy::Cube, &[], 1).unwrap(); // δ = 3
        assert_eq!(cx.u.y, rat_int(3));
        let r = region_halfplane(&mut cx, IVec2::new(1, -1)).unwrap();
        let Region::Halfplane(h) = r else { panic!() };
        assert_eq!(h.v, rat_int(1));
        // μ = v - w stays 1/2 on both sides of the convention
        assert_eq!(&h.v - &h.w_plane, rat(1, 2));
    }

    #[test]
    fn first_quadrant_wedge_measures() {
        let mut cx = cube_cx(0);
        let r1 = region_halfplane(&mut cx, IVec2::new(-1, 0)).unwrap();
        let r2 = region_halfplane(&mut cx, IVec2::new(0, -1)).unwrap();
        let (Region::Halfplane(h1), Region::Halfplane(h2)) = (r1, r2) else {
            panic!()
        };
        let w = region_wedge(&mut cx, IVec2::new(-1, 0), IVec2::new(0, -1), &h1, &h2).unwrap();
        let Region::Wedge(d) = w else { panic!() };
        assert_eq!(d.v, rat_int(1));
        assert_eq!(d.w_plane, rat(1, 4));
        assert_eq!(d.w_ray1, rat(1, 2));
        assert_eq!(d.w_ray2, rat(1, 2));
        // μ(wedge) = v - ½·μ(edge1) - ½·μ(edge2) - w_plane·1 = 1/4
        let mu = &d.v - &d.w_ray1 * rat(1, 2) - &d.w_ray2 * rat(1, 2) - &d.w_plane;
        assert_eq!(mu, rat(1, 4));
    }
}
