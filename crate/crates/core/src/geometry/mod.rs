//! Planar geometric primitives shared by every stage of the pipeline:
//! points, segments, simple polygons, oriented bounding boxes, polygon
//! splitting, inscribed rectangles, and the WGS84 elliptical Mercator
//! projection.
//!
//! Conventions: coordinates are meters on the projected plane; polygons are
//! canonicalized to counter-clockwise winding on construction; geometric
//! predicates use an absolute epsilon of [`EPS`] meters and area comparisons
//! a relative tolerance of [`AREA_REL_EPS`].

mod arrangement;
mod inscribed;
mod projection;

pub use arrangement::{
    planar_faces, planar_graph_stats, polygon_intersection_area, FaceSet, PlanarGraphStats,
};
pub(crate) use arrangement::{interior_point_of_ring, locate_in_ring};
pub use inscribed::{largest_inscribed_rectangle, InscribedRectParams};
pub use projection::{inverse_elliptical_mercator, project_elliptical_mercator, GeoCoordinate};

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::math;

/// Absolute tolerance for geometric predicates, in meters.
pub const EPS: f64 = 1e-9;
/// Relative tolerance for area comparisons.
pub const AREA_REL_EPS: f64 = 1e-6;
/// Snapping tolerance for welding nearly-coincident points, in meters.
/// Real map data carries sub-millimeter slivers; anything closer than this
/// is treated as the same junction.
pub const WELD_EPS: f64 = 1e-6;

/// Errors produced by geometric constructions and operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 distinct vertices, got {0}")]
    TooFewVertices(usize),
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("degenerate geometry: {0}")]
    Degenerate(&'static str),
    #[error("polygon boundary self-intersects")]
    SelfIntersecting,
    #[error("cut line does not cross the polygon interior")]
    NoIntersection,
    #[error("latitude {0} outside projection domain (|lat| <= 89.5)")]
    LatitudeOutOfDomain(f64),
    #[error("coordinate out of range: {0}")]
    CoordinateOutOfRange(&'static str),
}

/// A point (or free vector) on the projected plane, in meters.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// 2-D cross product (signed parallelogram area).
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        math::hypot(self.x, self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn dist_sq(self, o: Point2) -> f64 {
        let d = self - o;
        d.x * d.x + d.y * d.y
    }

    /// Unit vector, or `None` when shorter than [`EPS`].
    pub fn normalized(self) -> Option<Point2> {
        let n = self.norm();
        if n <= EPS {
            None
        } else {
            Some(Point2::new(self.x / n, self.y / n))
        }
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    fn lex_le(self, o: Point2) -> bool {
        (self.x, self.y) <= (o.x, o.y)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point2 {
    fn add_assign(&mut self, o: Point2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Signed area of the triangle (a, b, c); positive when counter-clockwise.
pub fn cross3(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn dist_point_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = b - a;
    let len_sq = d.dot(d);
    if len_sq <= EPS * EPS {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len_sq).clamp(0.0, 1.0);
    p.dist(a + d * t)
}

/// A directed line segment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub const fn new(a: Point2, b: Point2) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn midpoint(&self) -> Point2 {
        (self.a + self.b) * 0.5
    }

    pub fn direction(&self) -> Option<Point2> {
        (self.b - self.a).normalized()
    }

    fn bbox(&self) -> (Point2, Point2) {
        (
            Point2::new(self.a.x.min(self.b.x), self.a.y.min(self.b.y)),
            Point2::new(self.a.x.max(self.b.x), self.a.y.max(self.b.y)),
        )
    }

    pub(crate) fn bbox_overlaps(&self, other: &Segment, slack: f64) -> bool {
        let (lo1, hi1) = self.bbox();
        let (lo2, hi2) = other.bbox();
        lo1.x <= hi2.x + slack
            && lo2.x <= hi1.x + slack
            && lo1.y <= hi2.y + slack
            && lo2.y <= hi1.y + slack
    }
}

/// Outcome of intersecting two segments. Total over all inputs: every
/// configuration maps to exactly one variant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SegmentIntersection {
    /// No shared point.
    Disjoint,
    /// Interiors cross at a single point.
    Proper(Point2),
    /// Single shared point involving at least one endpoint.
    Touching(Point2),
    /// Collinear segments sharing a sub-segment of positive length.
    CollinearOverlap(Point2, Point2),
}

/// Intersect two segments, classifying the contact.
///
/// Points within [`EPS`] meters are considered coincident; touch points are
/// snapped to an exact input endpoint when one is within tolerance, which
/// keeps downstream welding exact.
pub fn segment_intersection(s1: Segment, s2: Segment) -> SegmentIntersection {
    let d1 = s1.b - s1.a;
    let d2 = s2.b - s2.a;
    let len1 = d1.norm();
    let len2 = d2.norm();
    if len1 <= EPS || len2 <= EPS {
        return SegmentIntersection::Disjoint;
    }

    // Perpendicular distances of each endpoint from the other line.
    let da = (s2.a - s1.a).cross(d1) / len1;
    let db = (s2.b - s1.a).cross(d1) / len1;
    let dc = (s1.a - s2.a).cross(d2) / len2;
    let dd = (s1.b - s2.a).cross(d2) / len2;

    if da.abs() <= EPS && db.abs() <= EPS && dc.abs() <= EPS && dd.abs() <= EPS {
        // Collinear: project s2 onto s1's axis (meters from s1.a).
        let u = d1 * (1.0 / len1);
        let t0 = (s2.a - s1.a).dot(u);
        let t1 = (s2.b - s1.a).dot(u);
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let olo = lo.max(0.0);
        let ohi = hi.min(len1);
        if ohi - olo > EPS {
            let p = snap_to_endpoint(s1.a + u * olo, s1, s2);
            let q = snap_to_endpoint(s1.a + u * ohi, s1, s2);
            SegmentIntersection::CollinearOverlap(p, q)
        } else if ohi - olo >= -EPS {
            let p = snap_to_endpoint(s1.a + u * ((olo + ohi) * 0.5), s1, s2);
            SegmentIntersection::Touching(p)
        } else {
            SegmentIntersection::Disjoint
        }
    } else {
        let denom = d1.cross(d2);
        // Parallel but not collinear.
        if denom.abs() <= EPS * len1 * len2 * 1e-3 {
            return SegmentIntersection::Disjoint;
        }
        let t = (s2.a - s1.a).cross(d2) / denom;
        let u = (s2.a - s1.a).cross(d1) / denom;
        let et1 = EPS / len1;
        let et2 = EPS / len2;
        if t < -et1 || t > 1.0 + et1 || u < -et2 || u > 1.0 + et2 {
            return SegmentIntersection::Disjoint;
        }
        let p = s1.a + d1 * t;
        let interior1 = t > et1 && t < 1.0 - et1;
        let interior2 = u > et2 && u < 1.0 - et2;
        if interior1 && interior2 {
            SegmentIntersection::Proper(p)
        } else {
            SegmentIntersection::Touching(snap_to_endpoint(p, s1, s2))
        }
    }
}

fn snap_to_endpoint(p: Point2, s1: Segment, s2: Segment) -> Point2 {
    for cand in [s1.a, s1.b, s2.a, s2.b] {
        if p.dist(cand) <= EPS {
            return cand;
        }
    }
    p
}

/// Location of a point relative to a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointLocation {
    Inside,
    Boundary,
    Outside,
}

/// A simple polygon with counter-clockwise winding and positive area.
///
/// Construction canonicalizes the vertex list: consecutive duplicates are
/// dropped, winding is flipped to counter-clockwise, and the ring is rotated
/// to start at its lexicographically smallest vertex, so equal regions
/// compare equal regardless of input order.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    pub fn new(mut vertices: Vec<Point2>) -> Result<Polygon, GeometryError> {
        // Drop the closing duplicate GeoJSON-style rings carry, then any
        // consecutive duplicates.
        if vertices.len() >= 2 && vertices[0].dist(vertices[vertices.len() - 1]) <= EPS {
            vertices.pop();
        }
        vertices.dedup_by(|a, b| a.dist(*b) <= EPS);
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let signed = signed_ring_area(&vertices);
        if signed.abs() <= EPS {
            return Err(GeometryError::Degenerate("polygon area is zero"));
        }
        if signed < 0.0 {
            vertices.reverse();
        }
        check_simple(&vertices)?;
        rotate_to_min(&mut vertices);
        Ok(Polygon { vertices })
    }

    /// Axis-aligned rectangle helper.
    pub fn rectangle(min: Point2, max: Point2) -> Result<Polygon, GeometryError> {
        Polygon::new(alloc::vec![
            min,
            Point2::new(max.x, min.y),
            max,
            Point2::new(min.x, max.y),
        ])
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Enclosed area in square meters (always positive).
    pub fn area(&self) -> f64 {
        signed_ring_area(&self.vertices)
    }

    /// Area centroid. May fall outside a concave polygon.
    pub fn centroid(&self) -> Point2 {
        let n = self.vertices.len();
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a = 0.0;
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let w = p.cross(q);
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
            a += w;
        }
        Point2::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    /// A point strictly inside the polygon, robust for concave shapes.
    pub fn interior_point(&self) -> Point2 {
        interior_point_of_ring(&self.vertices)
    }

    pub fn bbox(&self) -> (Point2, Point2) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices[1..] {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    /// Classify a point as inside, on the boundary (within [`EPS`]), or outside.
    pub fn locate(&self, p: Point2) -> PointLocation {
        locate_in_ring(p, &self.vertices)
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.locate(p) != PointLocation::Outside
    }
}

pub(crate) fn signed_ring_area(ring: &[Point2]) -> f64 {
    let n = ring.len();
    let mut acc = 0.0;
    for i in 0..n {
        let p = ring[i];
        let q = ring[(i + 1) % n];
        acc += p.cross(q);
    }
    acc * 0.5
}

fn rotate_to_min(vertices: &mut [Point2]) {
    let mut best = 0;
    for i in 1..vertices.len() {
        if !vertices[best].lex_le(vertices[i]) {
            best = i;
        }
    }
    vertices.rotate_left(best);
}

fn check_simple(ring: &[Point2]) -> Result<(), GeometryError> {
    let n = ring.len();
    for i in 0..n {
        let si = Segment::new(ring[i], ring[(i + 1) % n]);
        for j in (i + 1)..n {
            let sj = Segment::new(ring[j], ring[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            match segment_intersection(si, sj) {
                SegmentIntersection::Disjoint => {}
                SegmentIntersection::Touching(p) if adjacent => {
                    // Must touch exactly at the shared vertex.
                    let shared = if j == i + 1 { ring[j] } else { ring[0] };
                    if p.dist(shared) > EPS {
                        return Err(GeometryError::SelfIntersecting);
                    }
                }
                _ => return Err(GeometryError::SelfIntersecting),
            }
        }
    }
    Ok(())
}

/// An oriented bounding box: the minimum-area enclosing rectangle.
///
/// `axis_major` is the direction of the longer side, canonicalized to point
/// into the `x > 0` half-plane (`y > 0` when vertical); on an exact extent
/// tie the axis closer to +x wins.
#[derive(Clone, Copy, Debug)]
pub struct Obb {
    pub center: Point2,
    pub axis_major: Point2,
    pub half_major: f64,
    pub half_minor: f64,
}

impl Obb {
    pub fn axis_minor(&self) -> Point2 {
        self.axis_major.perp()
    }

    pub fn area(&self) -> f64 {
        4.0 * self.half_major * self.half_minor
    }

    /// True when `p` lies inside the box, allowing `slack` meters.
    pub fn contains(&self, p: Point2, slack: f64) -> bool {
        let d = p - self.center;
        d.dot(self.axis_major).abs() <= self.half_major + slack
            && d.dot(self.axis_minor()).abs() <= self.half_minor + slack
    }

    pub fn corners(&self) -> [Point2; 4] {
        let u = self.axis_major * self.half_major;
        let v = self.axis_minor() * self.half_minor;
        [
            self.center + u + v,
            self.center - u + v,
            self.center - u - v,
            self.center + u - v,
        ]
    }
}

fn canonical_axis(a: Point2) -> Point2 {
    if a.x < -EPS || (a.x.abs() <= EPS && a.y < 0.0) {
        -a
    } else {
        a
    }
}

/// Minimum-area enclosing rectangle via rotating calipers over the convex hull.
pub fn compute_obb(p: &Polygon) -> Obb {
    let hull = convex_hull(p.vertices());
    debug_assert!(hull.len() >= 3);

    let mut best: Option<(f64, Point2, f64, f64, f64, f64)> = None;
    for i in 0..hull.len() {
        let a = hull[i];
        let b = hull[(i + 1) % hull.len()];
        let Some(u) = (b - a).normalized() else {
            continue;
        };
        let v = u.perp();
        let (mut ulo, mut uhi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut vlo, mut vhi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &q in &hull {
            let du = q.dot(u);
            let dv = q.dot(v);
            ulo = ulo.min(du);
            uhi = uhi.max(du);
            vlo = vlo.min(dv);
            vhi = vhi.max(dv);
        }
        let area = (uhi - ulo) * (vhi - vlo);
        if best.map_or(true, |(ba, ..)| area < ba) {
            best = Some((area, u, ulo, uhi, vlo, vhi));
        }
    }
    let (_, u, ulo, uhi, vlo, vhi) = best.expect("hull has at least one edge");
    let v = u.perp();
    let cu = (ulo + uhi) * 0.5;
    let cv = (vlo + vhi) * 0.5;
    let center = Point2::new(u.x * cu + v.x * cv, u.y * cu + v.y * cv);
    let hu = (uhi - ulo) * 0.5;
    let hv = (vhi - vlo) * 0.5;

    let (axis_major, half_major, half_minor) = if hu > hv + EPS {
        (canonical_axis(u), hu, hv)
    } else if hv > hu + EPS {
        (canonical_axis(v), hv, hu)
    } else {
        // Exact tie: prefer the axis closer to +x (larger x, then larger y).
        let cu2 = canonical_axis(u);
        let cv2 = canonical_axis(v);
        let pick = if (cu2.x, cu2.y) >= (cv2.x, cv2.y) { cu2 } else { cv2 };
        (pick, hu.max(hv), hu.min(hv))
    };
    Obb {
        center,
        axis_major,
        half_major,
        half_minor,
    }
}

/// Convex hull (Andrew's monotone chain), counter-clockwise, collinear
/// points dropped.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.dist(*b) <= EPS);
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross3(lower[lower.len() - 2], lower[lower.len() - 1], p) <= EPS
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross3(upper[upper.len() - 2], upper[upper.len() - 1], p) <= EPS
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Split a simple polygon by the infinite line through `line_point` with
/// direction `line_dir`.
///
/// Returns at least two pieces whose areas sum to the input area; the cut
/// chord appears as an edge of each adjacent piece. Concave polygons may
/// split into more than two pieces. Fails with
/// [`GeometryError::NoIntersection`] when the line misses the interior
/// (including a cut exactly along an existing edge).
pub fn split_polygon(
    p: &Polygon,
    line_point: Point2,
    line_dir: Point2,
) -> Result<Vec<Polygon>, GeometryError> {
    let dir = line_dir
        .normalized()
        .ok_or(GeometryError::Degenerate("zero-length cut direction"))?;

    // Stations along the line where it meets the boundary.
    let mut ts: Vec<f64> = Vec::new();
    for edge in p.edges() {
        let da = (edge.a - line_point).cross(dir);
        let db = (edge.b - line_point).cross(dir);
        if da.abs() <= EPS {
            ts.push((edge.a - line_point).dot(dir));
        }
        if (da > EPS && db < -EPS) || (da < -EPS && db > EPS) {
            let s = da / (da - db);
            let q = edge.a + (edge.b - edge.a) * s;
            ts.push((q - line_point).dot(dir));
        }
    }
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ts.dedup_by(|a, b| (*a - *b).abs() <= EPS);

    // Chords: spans between consecutive stations whose midpoint is interior.
    let mut chords: Vec<Segment> = Vec::new();
    for w in ts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        if t1 - t0 <= 2.0 * EPS {
            continue;
        }
        let mid = line_point + dir * ((t0 + t1) * 0.5);
        if p.locate(mid) == PointLocation::Inside {
            chords.push(Segment::new(line_point + dir * t0, line_point + dir * t1));
        }
    }
    if chords.is_empty() {
        return Err(GeometryError::NoIntersection);
    }

    let faces = planar_faces(p, &chords);
    debug_assert!(faces.faces.len() >= 2);
    Ok(faces.faces)
}

#[cfg(test)]
mod tests;
