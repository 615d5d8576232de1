//! Planar arrangements: segment planarization with vertex welding, face
//! extraction by half-edge traversal (most-clockwise turn), and polygon
//! intersection area derived from arrangement faces.

use alloc::vec::Vec;

use super::{
    dist_point_segment, segment_intersection, signed_ring_area, Point2, PointLocation, Polygon,
    Segment, SegmentIntersection, EPS, WELD_EPS,
};
use crate::math;

/// Faces of a bounded planar subdivision.
#[derive(Clone, Debug)]
pub struct FaceSet {
    /// Bounded faces inside the boundary, canonically ordered.
    pub faces: Vec<Polygon>,
    /// Sub-segments that could not participate in any face (dead ends),
    /// removed before traversal and reported.
    pub dangling: Vec<Segment>,
}

/// Extract all bounded faces of the subdivision formed by `segments` plus the
/// `boundary` ring.
///
/// Segments are planarized first (crossings split, endpoints welded within
/// [`WELD_EPS`]); dangling chains are pruned and reported rather than
/// breaking face formation. Faces outside the boundary are discarded.
/// Interior cycles disconnected from the rest of the subdivision would form
/// holes and are not supported; road networks always anchor to the boundary.
pub fn planar_faces(boundary: &Polygon, segments: &[Segment]) -> FaceSet {
    let mut segs: Vec<Segment> = boundary.edges().collect();
    segs.extend_from_slice(segments);
    let (loops, dangling) = arrangement_loops(&segs);

    let mut faces: Vec<Polygon> = Vec::new();
    for lp in loops {
        if lp.area <= EPS {
            continue;
        }
        let rep = interior_point_of_ring(&lp.points);
        if boundary.locate(rep) != PointLocation::Inside {
            continue;
        }
        match Polygon::new(lp.points) {
            Ok(poly) => faces.push(poly),
            Err(_) => debug_assert!(false, "face loop failed polygon validation"),
        }
    }
    faces.sort_by(|a, b| {
        let ka = (a.vertices()[0].x, a.vertices()[0].y, a.area());
        let kb = (b.vertices()[0].x, b.vertices()[0].y, b.area());
        ka.partial_cmp(&kb).unwrap()
    });
    FaceSet { faces, dangling }
}

/// Area of the intersection of two simple polygons.
///
/// When the boundaries do not meet this reduces to containment tests;
/// otherwise the combined edge arrangement is traversed and faces interior
/// to both polygons are summed.
pub fn polygon_intersection_area(a: &Polygon, b: &Polygon) -> f64 {
    let (alo, ahi) = a.bbox();
    let (blo, bhi) = b.bbox();
    if alo.x > bhi.x + EPS || blo.x > ahi.x + EPS || alo.y > bhi.y + EPS || blo.y > ahi.y + EPS {
        return 0.0;
    }

    let mut touched = false;
    'outer: for ea in a.edges() {
        for eb in b.edges() {
            if !ea.bbox_overlaps(&eb, EPS) {
                continue;
            }
            if segment_intersection(ea, eb) != SegmentIntersection::Disjoint {
                touched = true;
                break 'outer;
            }
        }
    }
    if !touched {
        // Disjoint rings: either separate or one inside the other.
        if a.locate(b.vertices()[0]) == PointLocation::Inside {
            return b.area();
        }
        if b.locate(a.vertices()[0]) == PointLocation::Inside {
            return a.area();
        }
        return 0.0;
    }

    let mut segs: Vec<Segment> = a.edges().collect();
    segs.extend(b.edges());
    let (loops, _) = arrangement_loops(&segs);
    let mut total = 0.0;
    for lp in loops {
        if lp.area <= EPS {
            continue;
        }
        let rep = interior_point_of_ring(&lp.points);
        if a.locate(rep) == PointLocation::Inside && b.locate(rep) == PointLocation::Inside {
            total += lp.area;
        }
    }
    total
}

/// Vertex/edge/component counts of a planarized segment set after dangling
/// chains are pruned. By Euler's formula a connected planar graph encloses
/// `E - V + 1` bounded faces; with `C` components, `E - V + C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanarGraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
}

impl PlanarGraphStats {
    pub fn bounded_faces(&self) -> usize {
        (self.edges + self.components).saturating_sub(self.vertices)
    }
}

/// Planarize and prune `segments`, returning the graph counts used by the
/// Euler face-count check. Independent of the face traversal itself.
pub fn planar_graph_stats(segments: &[Segment]) -> PlanarGraphStats {
    let (verts, edges) = planarize(segments);
    let (kept, _) = prune_dangling(verts.len(), &edges);
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut used = alloc::vec![false; verts.len()];
    for &(u, v) in &kept {
        used[u] = true;
        used[v] = true;
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let vertices = used.iter().filter(|&&b| b).count();
    let mut roots: Vec<usize> = (0..verts.len())
        .filter(|&v| used[v])
        .map(|v| find(&mut parent, v))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    PlanarGraphStats {
        vertices,
        edges: kept.len(),
        components: roots.len(),
    }
}

/// A traced face loop before polygon validation.
pub(crate) struct Loop {
    pub points: Vec<Point2>,
    /// Positive (counter-clockwise) signed area.
    pub area: f64,
}

/// Planarize segments, prune dangling chains, and trace the positive
/// (bounded-face) loops of the resulting planar graph.
pub(crate) fn arrangement_loops(segments: &[Segment]) -> (Vec<Loop>, Vec<Segment>) {
    let (verts, edges) = planarize(segments);
    let (kept, removed) = prune_dangling(verts.len(), &edges);
    let loops = trace_positive_loops(&verts, &kept);
    let dangling = removed
        .into_iter()
        .map(|(u, v)| Segment::new(verts[u], verts[v]))
        .collect();
    (loops, dangling)
}

/// Split all segments at mutual crossings and weld endpoints into a vertex
/// set; returns welded vertices and deduplicated undirected edges.
fn planarize(segments: &[Segment]) -> (Vec<Point2>, Vec<(usize, usize)>) {
    let segs: Vec<Segment> = segments
        .iter()
        .copied()
        .filter(|s| s.length() > WELD_EPS)
        .collect();

    // Collect cut points per segment (endpoints included).
    let mut cuts: Vec<Vec<Point2>> = segs.iter().map(|s| alloc::vec![s.a, s.b]).collect();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            if !segs[i].bbox_overlaps(&segs[j], WELD_EPS) {
                continue;
            }
            match segment_intersection(segs[i], segs[j]) {
                SegmentIntersection::Disjoint => {}
                SegmentIntersection::Proper(p) | SegmentIntersection::Touching(p) => {
                    cuts[i].push(p);
                    cuts[j].push(p);
                }
                SegmentIntersection::CollinearOverlap(p, q) => {
                    cuts[i].push(p);
                    cuts[i].push(q);
                    cuts[j].push(p);
                    cuts[j].push(q);
                }
            }
        }
    }

    let mut welder = Welder::default();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (k, seg) in segs.iter().enumerate() {
        let dir = seg.direction().expect("zero-length segments filtered");
        let mut pts = core::mem::take(&mut cuts[k]);
        pts.sort_by(|p, q| {
            let tp = (*p - seg.a).dot(dir);
            let tq = (*q - seg.a).dot(dir);
            tp.partial_cmp(&tq).unwrap()
        });
        pts.dedup_by(|p, q| p.dist(*q) <= WELD_EPS);
        for w in pts.windows(2) {
            let u = welder.id(w[0]);
            let v = welder.id(w[1]);
            if u != v {
                edges.push((u.min(v), u.max(v)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    (welder.points, edges)
}

#[derive(Default)]
struct Welder {
    points: Vec<Point2>,
}

impl Welder {
    fn id(&mut self, p: Point2) -> usize {
        for (i, q) in self.points.iter().enumerate() {
            if q.dist(p) <= WELD_EPS {
                return i;
            }
        }
        self.points.push(p);
        self.points.len() - 1
    }
}

/// Iteratively remove edges hanging off degree-1 vertices.
fn prune_dangling(
    nverts: usize,
    edges: &[(usize, usize)],
) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let mut alive: Vec<bool> = alloc::vec![true; edges.len()];
    let mut degree: Vec<usize> = alloc::vec![0; nverts];
    let mut incident: Vec<Vec<usize>> = alloc::vec![Vec::new(); nverts];
    for (e, &(u, v)) in edges.iter().enumerate() {
        degree[u] += 1;
        degree[v] += 1;
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut queue: Vec<usize> = (0..nverts).filter(|&v| degree[v] == 1).collect();
    while let Some(v) = queue.pop() {
        if degree[v] != 1 {
            continue;
        }
        let Some(&e) = incident[v].iter().find(|&&e| alive[e]) else {
            continue;
        };
        alive[e] = false;
        let (a, b) = edges[e];
        degree[a] -= 1;
        degree[b] -= 1;
        let other = if a == v { b } else { a };
        if degree[other] == 1 {
            queue.push(other);
        }
    }
    let mut kept = Vec::new();
    let mut removed = Vec::new();
    for (e, &pair) in edges.iter().enumerate() {
        if alive[e] {
            kept.push(pair);
        } else {
            removed.push(pair);
        }
    }
    (kept, removed)
}

/// Walk every directed edge once, turning most-clockwise at each vertex;
/// counter-clockwise loops are the bounded faces.
fn trace_positive_loops(verts: &[Point2], edges: &[(usize, usize)]) -> Vec<Loop> {
    let nh = edges.len() * 2;
    // Half-edge h: edge h/2; even = u->v, odd = v->u.
    let src = |h: usize| if h % 2 == 0 { edges[h / 2].0 } else { edges[h / 2].1 };
    let dst = |h: usize| if h % 2 == 0 { edges[h / 2].1 } else { edges[h / 2].0 };

    let mut outgoing: Vec<Vec<usize>> = alloc::vec![Vec::new(); verts.len()];
    for h in 0..nh {
        outgoing[src(h)].push(h);
    }
    for (v, out) in outgoing.iter_mut().enumerate() {
        out.sort_by(|&h1, &h2| {
            let d1 = verts[dst(h1)] - verts[v];
            let d2 = verts[dst(h2)] - verts[v];
            let a1 = math::atan2(d1.y, d1.x);
            let a2 = math::atan2(d2.y, d2.x);
            (a1, dst(h1)).partial_cmp(&(a2, dst(h2))).unwrap()
        });
    }
    let mut slot: Vec<usize> = alloc::vec![0; nh];
    for out in &outgoing {
        for (i, &h) in out.iter().enumerate() {
            slot[h] = i;
        }
    }

    let next = |h: usize| -> usize {
        let twin = h ^ 1;
        let v = src(twin);
        let out = &outgoing[v];
        let i = slot[twin];
        out[(i + out.len() - 1) % out.len()]
    };

    let mut visited = alloc::vec![false; nh];
    let mut loops = Vec::new();
    for h0 in 0..nh {
        if visited[h0] {
            continue;
        }
        let mut points = Vec::new();
        let mut h = h0;
        loop {
            visited[h] = true;
            points.push(verts[src(h)]);
            h = next(h);
            if h == h0 {
                break;
            }
        }
        let area = signed_ring_area(&points);
        if area > 0.0 {
            loops.push(Loop { points, area });
        }
    }
    loops
}

/// A point strictly inside a simple (or weakly simple) ring.
///
/// Scans a horizontal line placed in the widest vertical gap between
/// distinct vertex heights, which guarantees clean edge crossings, and
/// returns the midpoint of the widest interior span.
pub(crate) fn interior_point_of_ring(ring: &[Point2]) -> Point2 {
    let mut ys: Vec<f64> = ring.iter().map(|p| p.y).collect();
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.dedup_by(|a, b| (*a - *b).abs() <= EPS);

    let mut best_gap = (0.0, ys[0]);
    for w in ys.windows(2) {
        let gap = w[1] - w[0];
        if gap > best_gap.0 {
            best_gap = (gap, (w[0] + w[1]) * 0.5);
        }
    }
    let y = best_gap.1;

    let n = ring.len();
    let mut xs: Vec<f64> = Vec::new();
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if (a.y > y) != (b.y > y) {
            xs.push(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    debug_assert!(xs.len() >= 2 && xs.len() % 2 == 0);

    let mut best = (f64::NEG_INFINITY, ring[0]);
    let mut k = 0;
    while k + 1 < xs.len() {
        let width = xs[k + 1] - xs[k];
        if width > best.0 {
            best = (width, Point2::new((xs[k] + xs[k + 1]) * 0.5, y));
        }
        k += 2;
    }
    best.1
}

/// Classify a point against an arbitrary ring (boundary within [`EPS`]).
pub(crate) fn locate_in_ring(p: Point2, ring: &[Point2]) -> PointLocation {
    let n = ring.len();
    for i in 0..n {
        if dist_point_segment(p, ring[i], ring[(i + 1) % n]) <= EPS {
            return PointLocation::Boundary;
        }
    }
    let mut inside = false;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    if inside {
        PointLocation::Inside
    } else {
        PointLocation::Outside
    }
}
