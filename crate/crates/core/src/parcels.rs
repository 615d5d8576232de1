//! Recursive subdivision of city blocks into land parcels along oriented
//! bounding boxes, street-access validation with configurable fallback
//! strategies, setback application, and building-footprint placement.
//!
//! Blocks are independent: each derives its generator from the scenario
//! seed and its block id, so subdivision may run concurrently across
//! blocks with order-independent results.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{
    compute_obb, largest_inscribed_rectangle, planar_faces, split_polygon, GeometryError,
    InscribedRectParams, Point2, PointLocation, Polygon, Segment, EPS, WELD_EPS,
};
use crate::roads::{BlockId, CityBlock};
use crate::rng::{derive_rng, STREAM_PARCELS};

/// Pieces below one square meter stop the recursion (sliver guard).
pub const MIN_PARCEL_AREA: f64 = 1.0;
/// Footprints below this are not worth a building.
pub const MIN_FOOTPRINT_AREA: f64 = 9.0;
/// Height of one floor, meters.
pub const FLOOR_HEIGHT: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParcelError {
    #[error("area threshold must be positive")]
    BadThreshold,
    #[error("offset range must lie in [0, 0.45]")]
    BadOffsetRange,
    #[error("street width must be positive")]
    BadStreetWidth,
}

/// Identifier of a parcel, scoped to its block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParcelId {
    pub block: BlockId,
    pub index: u32,
}

impl core::fmt::Display for ParcelId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "B{}-P{}", self.block, self.index)
    }
}

/// Whether a parcel may carry a building.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParcelFlag {
    Buildable,
    /// Parks, playgrounds, empty lots.
    NonBuilding,
}

/// How a parcel reaches the street.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParcelAccess {
    /// A boundary edge lies on street frontage.
    Street,
    /// Reached through an alleyway easement; geometry unchanged.
    Easement,
    Landlocked,
}

/// A land parcel produced by subdividing a city block.
#[derive(Clone, Debug)]
pub struct Parcel {
    pub id: ParcelId,
    pub polygon: Polygon,
    pub access: ParcelAccess,
    pub flag: ParcelFlag,
    pub block: BlockId,
    /// Indices of polygon edges lying on street frontage.
    pub street_edges: Vec<usize>,
}

impl Parcel {
    pub fn has_street_access(&self) -> bool {
        self.access != ParcelAccess::Landlocked
    }
}

/// Resolution strategy for parcels that end up without street access.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoAccessPolicy {
    /// Keep the parcel, flagged non-building (parks, empty lots).
    FlagNonBuilding,
    /// Revert the offending cut and accept the pre-cut parcel, ending the
    /// recursion there.
    RevertValidate,
    /// Revert and re-cut across the smaller axis, giving narrower lots.
    RevertSplitMinor,
    /// Carve a secondary street from the landlocked lot to frontage.
    CreateSecondaryStreet,
    /// Grant access through an alleyway without altering geometry.
    CreateAlleyway,
}

/// Tuning for [`subdivide_block`].
#[derive(Clone, Copy, Debug)]
pub struct SubdivisionConfig {
    /// Recursion stops when a piece's area drops to this or below, m².
    pub area_threshold: f64,
    /// Cut stations jitter uniformly within ±this fraction of the major
    /// axis length around its midpoint. Zero makes subdivision fully
    /// deterministic and seed-independent.
    pub offset_range: f64,
    pub no_access_policy: NoAccessPolicy,
    /// Width of streets carved by [`NoAccessPolicy::CreateSecondaryStreet`].
    pub street_width: f64,
    pub rng_seed: u64,
}

impl SubdivisionConfig {
    pub fn new(area_threshold: f64) -> SubdivisionConfig {
        SubdivisionConfig {
            area_threshold,
            offset_range: 0.0,
            no_access_policy: NoAccessPolicy::FlagNonBuilding,
            street_width: 6.0,
            rng_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), ParcelError> {
        if !(self.area_threshold > 0.0) {
            return Err(ParcelError::BadThreshold);
        }
        if !(0.0..=0.45).contains(&self.offset_range) {
            return Err(ParcelError::BadOffsetRange);
        }
        if !(self.street_width > 0.0) {
            return Err(ParcelError::BadStreetWidth);
        }
        Ok(())
    }
}

/// The set of segments a parcel edge may front onto.
#[derive(Clone, Debug, Default)]
pub struct Frontage {
    segments: Vec<Segment>,
}

impl Frontage {
    pub fn new(segments: Vec<Segment>) -> Frontage {
        Frontage { segments }
    }

    /// Every edge of a polygon counts as frontage (open blocks).
    pub fn full_boundary(polygon: &Polygon) -> Frontage {
        Frontage {
            segments: polygon.edges().collect(),
        }
    }

    /// Frontage of one block: boundary edges lying on a road segment, plus
    /// (optionally) edges on the subregion outline.
    pub fn for_block(
        block: &Polygon,
        road_segments: &[Segment],
        subregion_outline: Option<&Polygon>,
        outline_is_frontage: bool,
    ) -> Frontage {
        let mut segments = Vec::new();
        for edge in block.edges() {
            let on_road = road_segments.iter().any(|s| edge_on_segment(&edge, s));
            let on_outline = outline_is_frontage
                && subregion_outline
                    .map(|o| o.edges().any(|s| edge_on_segment(&edge, &s)))
                    .unwrap_or(false);
            if on_road || on_outline {
                segments.push(edge);
            }
        }
        Frontage { segments }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    fn push(&mut self, s: Segment) {
        self.segments.push(s);
    }

    /// True when `edge` lies along any frontage segment with positive
    /// overlap: collinear within the welding tolerance, overlapping along
    /// the shared line.
    pub fn covers(&self, edge: &Segment) -> bool {
        self.segments.iter().any(|s| edge_on_segment(edge, s))
    }
}

/// `edge` lies (at least partly) on `seg`: collinear within [`WELD_EPS`]
/// and the 1-D projections overlap by more than [`WELD_EPS`].
fn edge_on_segment(edge: &Segment, seg: &Segment) -> bool {
    let Some(dir) = seg.direction() else {
        return false;
    };
    let off_a = (edge.a - seg.a).cross(dir).abs();
    let off_b = (edge.b - seg.a).cross(dir).abs();
    if off_a > WELD_EPS || off_b > WELD_EPS {
        return false;
    }
    let len = seg.length();
    let t0 = (edge.a - seg.a).dot(dir);
    let t1 = (edge.b - seg.a).dot(dir);
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    hi.min(len) - lo.max(0.0) > WELD_EPS
}

/// Conditions the subdivision had to work around.
#[derive(Clone, Debug, PartialEq)]
pub enum SubdivisionWarning {
    /// A cut produced a piece below [`MIN_PARCEL_AREA`]; the uncut parcel
    /// was kept as-is.
    SliverKept { parcel: ParcelId },
    /// A cut line failed to cross the piece; kept uncut.
    CutMissed { parcel: ParcelId },
    /// The policy could not restore access; parcel kept non-building.
    LandlockedFallback { parcel: ParcelId },
    /// No frontage reachable for a carved street.
    NoFrontageReachable { parcel: ParcelId },
}

/// Result of subdividing one block.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub parcels: Vec<Parcel>,
    /// Street strips carved by `CreateSecondaryStreet`, for export.
    pub streets: Vec<Polygon>,
    /// Block area consumed by carved streets, m².
    pub street_area: f64,
    pub warnings: Vec<SubdivisionWarning>,
}

impl Subdivision {
    /// Total parcel area plus carved street area; equals the block area.
    pub fn accounted_area(&self) -> f64 {
        self.parcels.iter().map(|p| p.polygon.area()).sum::<f64>() + self.street_area
    }
}

struct Ctx<'a> {
    cfg: &'a SubdivisionConfig,
    rng: ChaCha8Rng,
    frontage: Frontage,
    block: BlockId,
    next_index: u32,
    out: Subdivision,
}

impl Ctx<'_> {
    fn piece_has_access(&self, poly: &Polygon) -> bool {
        poly.edges().any(|e| self.frontage.covers(&e))
    }

    fn finalize(&mut self, poly: Polygon, alley: bool, force_non_building: bool) -> ParcelId {
        let street_edges: Vec<usize> = poly
            .edges()
            .enumerate()
            .filter(|(_, e)| self.frontage.covers(e))
            .map(|(i, _)| i)
            .collect();
        let access = if !street_edges.is_empty() {
            ParcelAccess::Street
        } else if alley {
            ParcelAccess::Easement
        } else {
            ParcelAccess::Landlocked
        };
        let flag = if force_non_building || access == ParcelAccess::Landlocked {
            ParcelFlag::NonBuilding
        } else {
            ParcelFlag::Buildable
        };
        let id = ParcelId {
            block: self.block,
            index: self.next_index,
        };
        self.next_index += 1;
        self.out.parcels.push(Parcel {
            id,
            polygon: poly,
            access,
            flag,
            block: self.block,
            street_edges,
        });
        id
    }
}

/// Subdivide a block into parcels.
///
/// Recursively: find the oriented bounding box, cut perpendicular to its
/// major axis at the midpoint (plus the seeded random offset), and recurse
/// on the pieces until they fall at or below the area threshold. Street
/// access is then evaluated per parcel; parcels without access are resolved
/// by the configured policy. Except for carved streets, parcel areas sum
/// exactly to the block area.
pub fn subdivide_block(
    block: &CityBlock,
    frontage: &Frontage,
    cfg: &SubdivisionConfig,
) -> Result<Subdivision, ParcelError> {
    cfg.validate()?;
    let mut ctx = Ctx {
        cfg,
        rng: derive_rng(cfg.rng_seed, &[STREAM_PARCELS, block.id.0]),
        frontage: frontage.clone(),
        block: block.id,
        next_index: 0,
        out: Subdivision {
            parcels: Vec::new(),
            streets: Vec::new(),
            street_area: 0.0,
            warnings: Vec::new(),
        },
    };
    recurse(block.polygon.clone(), &mut ctx, false);
    Ok(ctx.out)
}

fn draw_offset(ctx: &mut Ctx<'_>) -> f64 {
    if ctx.cfg.offset_range > 0.0 {
        ctx.rng.gen_range(-ctx.cfg.offset_range..=ctx.cfg.offset_range)
    } else {
        0.0
    }
}

fn recurse(poly: Polygon, ctx: &mut Ctx<'_>, alley: bool) {
    let area = poly.area();
    if area <= ctx.cfg.area_threshold {
        let id = ctx.finalize(poly, alley, false);
        let parcel = ctx.out.parcels.last().unwrap();
        if parcel.access == ParcelAccess::Landlocked
            && ctx.cfg.no_access_policy != NoAccessPolicy::FlagNonBuilding
        {
            ctx.out
                .warnings
                .push(SubdivisionWarning::LandlockedFallback { parcel: id });
        }
        return;
    }

    let obb = compute_obb(&poly);
    let offset = draw_offset(ctx);
    let station = offset * 2.0 * obb.half_major;
    let cut_point = obb.center + obb.axis_major * station;

    let pieces = match split_polygon(&poly, cut_point, obb.axis_minor()) {
        Ok(p) => p,
        Err(GeometryError::NoIntersection) => {
            let id = ctx.finalize(poly, alley, false);
            ctx.out.warnings.push(SubdivisionWarning::CutMissed { parcel: id });
            return;
        }
        Err(_) => {
            let id = ctx.finalize(poly, alley, false);
            ctx.out.warnings.push(SubdivisionWarning::CutMissed { parcel: id });
            return;
        }
    };

    if sliver(&pieces, area) {
        let id = ctx.finalize(poly, alley, false);
        ctx.out.warnings.push(SubdivisionWarning::SliverKept { parcel: id });
        return;
    }

    // Alleyway-granted subtrees and the plain flag policy recurse straight
    // through; the remaining policies react to pieces losing access.
    match ctx.cfg.no_access_policy {
        NoAccessPolicy::FlagNonBuilding | NoAccessPolicy::CreateAlleyway if alley => {
            for piece in pieces {
                recurse(piece, ctx, alley);
            }
        }
        NoAccessPolicy::FlagNonBuilding => {
            for piece in pieces {
                recurse(piece, ctx, false);
            }
        }
        NoAccessPolicy::RevertValidate => {
            if pieces.iter().any(|p| !ctx.piece_has_access(p)) {
                // Revert the cut; the pre-cut parcel is validated as final.
                ctx.finalize(poly, alley, false);
                return;
            }
            for piece in pieces {
                recurse(piece, ctx, false);
            }
        }
        NoAccessPolicy::RevertSplitMinor => {
            if pieces.iter().all(|p| ctx.piece_has_access(p)) {
                for piece in pieces {
                    recurse(piece, ctx, false);
                }
                return;
            }
            // Re-cut across the smaller axis: narrower lots, both keeping
            // the frontage the major-axis cut would have severed.
            let offset = draw_offset(ctx);
            let station = offset * 2.0 * obb.half_minor;
            let cut_point = obb.center + obb.axis_minor() * station;
            match split_polygon(&poly, cut_point, obb.axis_major) {
                Ok(retry) if !sliver(&retry, area) => {
                    for piece in retry {
                        if ctx.piece_has_access(&piece) {
                            recurse(piece, ctx, false);
                        } else {
                            // Retry did not help; keep it as green space.
                            let id = ctx.finalize(piece, false, true);
                            ctx.out
                                .warnings
                                .push(SubdivisionWarning::LandlockedFallback { parcel: id });
                        }
                    }
                }
                _ => {
                    let id = ctx.finalize(poly, alley, false);
                    ctx.out.warnings.push(SubdivisionWarning::SliverKept { parcel: id });
                }
            }
        }
        NoAccessPolicy::CreateSecondaryStreet => {
            let mut remaining: Vec<Polygon> = Vec::new();
            let mut landlocked: Vec<Polygon> = Vec::new();
            for piece in pieces {
                if ctx.piece_has_access(&piece) {
                    remaining.push(piece);
                } else {
                    landlocked.push(piece);
                }
            }
            for lot in landlocked {
                match carve_street(&poly, &lot, &remaining, ctx) {
                    Some(trimmed) => {
                        remaining = trimmed;
                    }
                    None => {
                        let id = ctx.finalize(lot, false, true);
                        ctx.out
                            .warnings
                            .push(SubdivisionWarning::NoFrontageReachable { parcel: id });
                    }
                }
            }
            remaining.sort_by(|a, b| {
                let ka = (a.vertices()[0].x, a.vertices()[0].y, a.area());
                let kb = (b.vertices()[0].x, b.vertices()[0].y, b.area());
                ka.partial_cmp(&kb).unwrap()
            });
            for piece in remaining {
                recurse(piece, ctx, false);
            }
        }
        NoAccessPolicy::CreateAlleyway => {
            for piece in pieces {
                let granted = !ctx.piece_has_access(&piece);
                recurse(piece, ctx, granted);
            }
        }
    }
}

fn sliver(pieces: &[Polygon], parent_area: f64) -> bool {
    pieces.iter().any(|p| p.area() < MIN_PARCEL_AREA)
        || pieces.iter().any(|p| p.area() >= parent_area - EPS)
}

/// Overlap of a carved street into the lot it serves, guaranteeing a shared
/// boundary edge regardless of how the lot's outline is slanted.
const STREET_INSET: f64 = 0.05;

/// Carve a street strip from the landlocked `lot` to the nearest frontage
/// reachable along one of its OBB axes without leaving the parent polygon.
/// Returns all pieces (siblings and the lot) with the strip subtracted, or
/// `None` when no frontage is reachable. The strip's edges join the
/// frontage set for the rest of this block's subdivision.
fn carve_street(
    parent: &Polygon,
    lot: &Polygon,
    siblings: &[Polygon],
    ctx: &mut Ctx<'_>,
) -> Option<Vec<Polygon>> {
    let obb = compute_obb(lot);
    let origin = lot.interior_point();
    let dirs = [
        obb.axis_major,
        -obb.axis_major,
        obb.axis_minor(),
        -obb.axis_minor(),
    ];

    // Nearest frontage hit along a ray that stays inside the parent.
    let mut best: Option<(f64, Point2)> = None;
    for dir in dirs {
        let mut hit: Option<f64> = None;
        for seg in ctx.frontage.segments() {
            if let Some(t) = ray_segment_hit(origin, dir, seg) {
                hit = Some(hit.map_or(t, |h: f64| h.min(t)));
            }
        }
        let Some(t) = hit else { continue };
        let mid = origin + dir * (t * 0.5);
        if parent.locate(mid) == PointLocation::Outside {
            continue;
        }
        if best.as_ref().map_or(true, |(bt, _)| t < *bt) {
            best = Some((t, dir));
        }
    }
    let (t_hit, dir) = best?;

    // Where the ray leaves the lot: the strip runs from just inside that
    // boundary out past the frontage.
    let t_exit = lot
        .edges()
        .filter_map(|e| ray_segment_hit(origin, dir, &e))
        .fold(0.0_f64, f64::max);
    let half_w = ctx.cfg.street_width * 0.5;
    let side = dir.perp();
    let a0 = origin + dir * (t_exit - STREET_INSET).max(0.0);
    let a1 = origin + dir * (t_hit + STREET_INSET);
    let strip = Polygon::new(alloc::vec![
        a0 + side * half_w,
        a0 - side * half_w,
        a1 - side * half_w,
        a1 + side * half_w,
    ])
    .ok()?;

    // Subtract the strip from every piece it crosses, the lot included
    // (it loses only the inset notch, gaining a shared street edge).
    let mut trimmed: Vec<Polygon> = Vec::new();
    for piece in siblings.iter().chain(core::iter::once(lot)) {
        let (parts, consumed) = subtract(piece, &strip);
        ctx.out.street_area += consumed;
        trimmed.extend(parts);
    }

    for edge in strip.edges() {
        ctx.frontage.push(edge);
    }
    ctx.out.streets.push(strip);
    Some(trimmed)
}

/// First positive ray parameter hitting `seg`, if any.
fn ray_segment_hit(origin: Point2, dir: Point2, seg: &Segment) -> Option<f64> {
    let d2 = seg.b - seg.a;
    let denom = dir.cross(d2);
    if denom.abs() <= 1e-12 {
        return None;
    }
    let rel = seg.a - origin;
    let t = rel.cross(d2) / denom;
    let u = rel.cross(dir) / denom;
    if t > EPS && (-EPS..=1.0 + EPS).contains(&u) {
        Some(t)
    } else {
        None
    }
}

/// `piece` minus `strip` via the face arrangement; returns the remaining
/// parts and the overlap area consumed.
fn subtract(piece: &Polygon, strip: &Polygon) -> (Vec<Polygon>, f64) {
    let consumed = crate::geometry::polygon_intersection_area(piece, strip);
    if consumed <= EPS {
        return (alloc::vec![piece.clone()], 0.0);
    }
    let segs: Vec<Segment> = strip.edges().collect();
    let fs = planar_faces(piece, &segs);
    let mut parts = Vec::new();
    for face in fs.faces {
        let rep = face.interior_point();
        if strip.locate(rep) == PointLocation::Outside {
            parts.push(face);
        }
    }
    (parts, consumed)
}

/// Building placement parameters.
#[derive(Clone, Copy, Debug)]
pub struct BuildingParams {
    pub floor_range: (u32, u32),
    pub setback_front: f64,
    pub setback_side: f64,
    pub rect_params: InscribedRectParams,
}

impl Default for BuildingParams {
    fn default() -> Self {
        BuildingParams {
            floor_range: (1, 1),
            setback_front: 0.0,
            setback_side: 0.0,
            rect_params: InscribedRectParams {
                resolution: 128,
                min_area: MIN_FOOTPRINT_AREA,
            },
        }
    }
}

/// A building assigned to a parcel.
#[derive(Clone, Debug)]
pub struct BuildingSpec {
    pub parcel: ParcelId,
    pub footprint: Polygon,
    pub floors: u32,
    pub setback_front: f64,
    pub setback_side: f64,
}

impl BuildingSpec {
    /// Extruded height: floors at 3 m each.
    pub fn height(&self) -> f64 {
        self.floors as f64 * FLOOR_HEIGHT
    }
}

/// Shrink a parcel to its usable building area: street-facing edges move
/// inward by `front`, all others by `side`. `None` when the offsets swallow
/// the parcel entirely.
pub fn apply_setbacks(parcel: &Parcel, front: f64, side: f64) -> Option<Polygon> {
    if front == 0.0 && side == 0.0 {
        return Some(parcel.polygon.clone());
    }
    let mut ring: Vec<Point2> = parcel.polygon.vertices().to_vec();
    for (i, edge) in parcel.polygon.edges().enumerate() {
        let setback = if parcel.street_edges.contains(&i) {
            front
        } else {
            side
        };
        let Some(dir) = edge.direction() else {
            continue;
        };
        // CCW polygon: interior is left of the edge; shift the clip line
        // inward and keep the left side.
        let inward = dir.perp();
        let point = edge.a + inward * setback;
        ring = clip_half_plane(&ring, point, dir);
        if ring.len() < 3 {
            return None;
        }
    }
    Polygon::new(ring).ok().filter(|p| p.area() > EPS)
}

/// Keep the part of `ring` on the left of the line through `point` along `dir`.
fn clip_half_plane(ring: &[Point2], point: Point2, dir: Point2) -> Vec<Point2> {
    let inside = |p: Point2| dir.cross(p - point) >= -EPS;
    let mut out = Vec::with_capacity(ring.len() + 2);
    let n = ring.len();
    for i in 0..n {
        let cur = ring[i];
        let next = ring[(i + 1) % n];
        let cin = inside(cur);
        let nin = inside(next);
        if cin {
            out.push(cur);
        }
        if cin != nin {
            let da = dir.cross(cur - point);
            let db = dir.cross(next - point);
            let s = da / (da - db);
            out.push(cur + (next - cur) * s);
        }
    }
    out
}

/// Place a building on a buildable parcel: the footprint is the largest
/// inscribed rectangle of the usable area, aligned to the street edge when
/// the parcel fronts exactly one; floors drawn uniformly from the range.
/// `None` (reported by the caller) when no footprint of at least
/// [`MIN_FOOTPRINT_AREA`] fits.
pub fn place_building(
    parcel: &Parcel,
    usable: &Polygon,
    params: &BuildingParams,
    rng: &mut impl Rng,
) -> Option<BuildingSpec> {
    let required_edge = if parcel.street_edges.len() == 1 {
        let street = parcel.polygon.edges().nth(parcel.street_edges[0]).unwrap();
        let sdir = street.direction()?;
        // The usable polygon's edge parallel to and nearest the street.
        let mut best: Option<(f64, Segment)> = None;
        for e in usable.edges() {
            let Some(d) = e.direction() else { continue };
            if d.cross(sdir).abs() > 1e-6 {
                continue;
            }
            let gap = (e.midpoint() - street.a).cross(sdir).abs();
            if best.map_or(true, |(g, _)| gap < g) {
                best = Some((gap, e));
            }
        }
        best.map(|(_, e)| e)
    } else {
        None
    };

    let mut rect_params = params.rect_params;
    rect_params.min_area = rect_params.min_area.max(MIN_FOOTPRINT_AREA);
    let footprint = largest_inscribed_rectangle(usable, required_edge, &rect_params)?;
    let (lo, hi) = params.floor_range;
    let floors = if hi > lo { rng.gen_range(lo..=hi) } else { lo };
    Some(BuildingSpec {
        parcel: parcel.id,
        footprint,
        floors,
        setback_front: params.setback_front,
        setback_side: params.setback_side,
    })
}
