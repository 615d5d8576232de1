//! The multi-level region graph: regions as nodes with polygon outlines,
//! planar adjacency edges weighted by centroid distance, and directional
//! waypoint connections for movement between regions.
//!
//! Graphs are mutable while being assembled by a single writer; once built
//! they are read-only inputs to simulation and safe to share.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::geometry::{
    polygon_intersection_area, segment_intersection, Point2, PointLocation, Polygon, Segment,
    SegmentIntersection, EPS,
};

/// Interior overlap between two outlines below this (m²) is tolerated.
pub const OVERLAP_AREA_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("region `{0}` does not exist")]
    UnknownRegion(RegionId),
    #[error("region `{0}` already exists")]
    DuplicateRegion(RegionId),
    #[error("edge endpoints must be distinct regions")]
    SelfEdge,
    #[error("edge {a}-{b} would cross edge {c}-{d}")]
    EmbeddingViolation {
        a: RegionId,
        b: RegionId,
        c: RegionId,
        d: RegionId,
    },
    #[error("no route from `{0}` to `{1}`")]
    Unreachable(RegionId, RegionId),
    #[error("connection needs at least 2 waypoints")]
    TooFewWaypoints,
    #[error("connection waypoint {0} lies outside both region outlines")]
    WaypointOutside(usize),
    #[error("region centroid must lie inside the outline")]
    CentroidOutside,
}

/// Identifier of a region at some abstraction level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegionId(pub String);

impl RegionId {
    pub fn new(id: impl Into<String>) -> Self {
        RegionId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl core::fmt::Display for RegionId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for RegionId {
    fn from(s: &str) -> Self {
        RegionId(String::from(s))
    }
}

impl From<String> for RegionId {
    fn from(s: String) -> Self {
        RegionId(s)
    }
}

/// A node of the environment graph: a representative point, a polygon
/// outline, its population, and optionally a nested lower-level graph.
#[derive(Clone, Debug)]
pub struct Region {
    pub id: RegionId,
    pub centroid: Point2,
    pub outline: Polygon,
    pub population: u64,
    pub nested: Option<RegionGraph>,
}

impl Region {
    /// Build a region with an automatically chosen representative point:
    /// the area centroid when it falls inside the outline (concave outlines
    /// can push it outside), otherwise a guaranteed interior point.
    pub fn new(id: impl Into<RegionId>, outline: Polygon, population: u64) -> Region {
        let centroid = outline.centroid();
        let centroid = if outline.locate(centroid) == PointLocation::Inside {
            centroid
        } else {
            outline.interior_point()
        };
        Region {
            id: id.into(),
            centroid,
            outline,
            population,
            nested: None,
        }
    }

    /// Build a region with an explicit representative point.
    pub fn with_centroid(
        id: impl Into<RegionId>,
        centroid: Point2,
        outline: Polygon,
        population: u64,
    ) -> Result<Region, GraphError> {
        if outline.locate(centroid) == PointLocation::Outside {
            return Err(GraphError::CentroidOutside);
        }
        Ok(Region {
            id: id.into(),
            centroid,
            outline,
            population,
            nested: None,
        })
    }
}

/// A directional waypoint route from one region to another. May be walked
/// in reverse when `two_way_allowed` and the caller permits it.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    pub from: RegionId,
    pub to: RegionId,
    pub waypoints: Vec<Point2>,
    pub two_way_allowed: bool,
}

impl Connection {
    pub fn new(
        from: RegionId,
        to: RegionId,
        waypoints: Vec<Point2>,
        two_way_allowed: bool,
    ) -> Result<Connection, GraphError> {
        if waypoints.len() < 2 {
            return Err(GraphError::TooFewWaypoints);
        }
        Ok(Connection {
            from,
            to,
            waypoints,
            two_way_allowed,
        })
    }

    /// Polyline length of the route.
    pub fn length(&self) -> f64 {
        self.waypoints.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    /// The same route traversed backwards.
    pub fn reversed(&self) -> Connection {
        let mut waypoints = self.waypoints.clone();
        waypoints.reverse();
        Connection {
            from: self.to.clone(),
            to: self.from.clone(),
            waypoints,
            two_way_allowed: self.two_way_allowed,
        }
    }
}

/// One entry of an outline validation report.
#[derive(Clone, Debug, PartialEq)]
pub struct OutlineOverlap {
    pub a: RegionId,
    pub b: RegionId,
    pub area: f64,
}

/// Report returned by [`RegionGraph::validate_outlines`]; empty means all
/// outlines are interior-disjoint and inside the environment bounds.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OutlineReport {
    pub overlaps: Vec<OutlineOverlap>,
    pub out_of_bounds: Vec<RegionId>,
}

impl OutlineReport {
    pub fn is_empty(&self) -> bool {
        self.overlaps.is_empty() && self.out_of_bounds.is_empty()
    }
}

/// Undirected planar graph of regions plus directional connections.
#[derive(Clone, Debug, Default)]
pub struct RegionGraph {
    regions: BTreeMap<RegionId, Region>,
    edges: BTreeSet<(RegionId, RegionId)>,
    connections: Vec<Connection>,
    bounds: Option<Polygon>,
}

impl RegionGraph {
    pub fn new(bounds: Polygon) -> RegionGraph {
        RegionGraph {
            regions: BTreeMap::new(),
            edges: BTreeSet::new(),
            connections: Vec::new(),
            bounds: Some(bounds),
        }
    }

    /// Graph without explicit environment bounds (nested graphs inherit the
    /// parent outline instead).
    pub fn unbounded() -> RegionGraph {
        RegionGraph::default()
    }

    pub fn bounds(&self) -> Option<&Polygon> {
        self.bounds.as_ref()
    }

    pub fn add_region(&mut self, region: Region) -> Result<(), GraphError> {
        if self.regions.contains_key(&region.id) {
            return Err(GraphError::DuplicateRegion(region.id.clone()));
        }
        self.regions.insert(region.id.clone(), region);
        Ok(())
    }

    pub fn region(&self, id: &RegionId) -> Option<&Region> {
        self.regions.get(id)
    }

    pub fn regions(&self) -> impl Iterator<Item = &Region> {
        self.regions.values()
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    fn canonical_pair(a: &RegionId, b: &RegionId) -> (RegionId, RegionId) {
        if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    }

    /// Add an adjacency edge between two regions.
    ///
    /// The edge is the straight segment between centroids, weighted by its
    /// euclidean length. Rejected when it would cross an existing edge
    /// anywhere but a shared endpoint: the embedding must stay planar.
    /// Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, a: &RegionId, b: &RegionId) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfEdge);
        }
        let ca = self
            .regions
            .get(a)
            .ok_or_else(|| GraphError::UnknownRegion(a.clone()))?
            .centroid;
        let cb = self
            .regions
            .get(b)
            .ok_or_else(|| GraphError::UnknownRegion(b.clone()))?
            .centroid;
        let key = Self::canonical_pair(a, b);
        if self.edges.contains(&key) {
            return Ok(());
        }
        let new_seg = Segment::new(ca, cb);
        for (ea, eb) in &self.edges {
            let sa = self.regions[ea].centroid;
            let sb = self.regions[eb].centroid;
            let shares_endpoint = ea == a || ea == b || eb == a || eb == b;
            let conflict = match segment_intersection(new_seg, Segment::new(sa, sb)) {
                SegmentIntersection::Disjoint => false,
                SegmentIntersection::Proper(_) => true,
                SegmentIntersection::CollinearOverlap(_, _) => true,
                SegmentIntersection::Touching(p) => {
                    // Touching is fine only at a mutual centroid endpoint.
                    !(shares_endpoint
                        && (p.dist(ca) <= EPS
                            || p.dist(cb) <= EPS
                            || p.dist(sa) <= EPS
                            || p.dist(sb) <= EPS))
                }
            };
            if conflict {
                return Err(GraphError::EmbeddingViolation {
                    a: a.clone(),
                    b: b.clone(),
                    c: ea.clone(),
                    d: eb.clone(),
                });
            }
        }
        self.edges.insert(key);
        Ok(())
    }

    pub fn has_edge(&self, a: &RegionId, b: &RegionId) -> bool {
        self.edges.contains(&Self::canonical_pair(a, b))
    }

    /// Euclidean centroid distance, the edge weight.
    pub fn edge_weight(&self, a: &RegionId, b: &RegionId) -> Option<f64> {
        if !self.has_edge(a, b) {
            return None;
        }
        Some(self.regions[a].centroid.dist(self.regions[b].centroid))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&RegionId, &RegionId)> {
        self.edges.iter().map(|(a, b)| (a, b))
    }

    pub fn add_connection(&mut self, connection: Connection) -> Result<(), GraphError> {
        let from = self
            .regions
            .get(&connection.from)
            .ok_or_else(|| GraphError::UnknownRegion(connection.from.clone()))?;
        let to = self
            .regions
            .get(&connection.to)
            .ok_or_else(|| GraphError::UnknownRegion(connection.to.clone()))?;
        if connection.waypoints.len() < 2 {
            return Err(GraphError::TooFewWaypoints);
        }
        for (i, &w) in connection.waypoints.iter().enumerate() {
            if from.outline.locate(w) == PointLocation::Outside
                && to.outline.locate(w) == PointLocation::Outside
            {
                return Err(GraphError::WaypointOutside(i));
            }
        }
        self.connections.push(connection);
        Ok(())
    }

    pub fn connections(&self) -> &[Connection] {
        &self.connections
    }

    /// Check that outlines are pairwise interior-disjoint (shared boundary
    /// vertices are fine) and contained in the environment bounds.
    pub fn validate_outlines(&self) -> OutlineReport {
        let mut report = OutlineReport::default();
        let regions: Vec<&Region> = self.regions.values().collect();
        for i in 0..regions.len() {
            for j in (i + 1)..regions.len() {
                let area = polygon_intersection_area(&regions[i].outline, &regions[j].outline);
                if area >= OVERLAP_AREA_EPS {
                    report.overlaps.push(OutlineOverlap {
                        a: regions[i].id.clone(),
                        b: regions[j].id.clone(),
                        area,
                    });
                }
            }
        }
        if let Some(bounds) = &self.bounds {
            for region in &regions {
                let outside = region
                    .outline
                    .vertices()
                    .iter()
                    .any(|&v| bounds.locate(v) == PointLocation::Outside);
                let crosses = region.outline.edges().any(|e| {
                    bounds
                        .edges()
                        .any(|b| matches!(segment_intersection(e, b), SegmentIntersection::Proper(_)))
                });
                if outside || crosses {
                    report.out_of_bounds.push(region.id.clone());
                }
            }
        }
        report
    }

    /// Shortest sequence of connections from `a` to `b` by summed polyline
    /// length (uniform-cost search). Connections are traversed in reverse
    /// only when marked `two_way_allowed` and `allow_reverse` is set;
    /// reversed legs are returned with their waypoints already flipped.
    pub fn route_between(
        &self,
        a: &RegionId,
        b: &RegionId,
        allow_reverse: bool,
    ) -> Result<Vec<Connection>, GraphError> {
        if !self.regions.contains_key(a) {
            return Err(GraphError::UnknownRegion(a.clone()));
        }
        if !self.regions.contains_key(b) {
            return Err(GraphError::UnknownRegion(b.clone()));
        }
        if a == b {
            return Ok(Vec::new());
        }

        // Arcs: target, connection index, reversed flag.
        let mut arcs: BTreeMap<&RegionId, Vec<(&RegionId, usize, bool)>> = BTreeMap::new();
        for (i, c) in self.connections.iter().enumerate() {
            arcs.entry(&c.from).or_default().push((&c.to, i, false));
            if allow_reverse && c.two_way_allowed {
                arcs.entry(&c.to).or_default().push((&c.from, i, true));
            }
        }

        let mut dist: BTreeMap<&RegionId, f64> = BTreeMap::new();
        let mut prev: BTreeMap<&RegionId, (&RegionId, usize, bool)> = BTreeMap::new();
        let mut frontier: BTreeSet<(OrderedCost, &RegionId)> = BTreeSet::new();
        dist.insert(a, 0.0);
        frontier.insert((OrderedCost(0.0), a));

        while let Some((OrderedCost(d), node)) = frontier.pop_first() {
            if node == b {
                break;
            }
            if d > dist[node] {
                continue;
            }
            for &(next, ci, reversed) in arcs.get(node).into_iter().flatten() {
                let nd = d + self.connections[ci].length();
                if dist.get(next).map_or(true, |&cur| nd < cur) {
                    if let Some(&old) = dist.get(next) {
                        frontier.remove(&(OrderedCost(old), next));
                    }
                    dist.insert(next, nd);
                    prev.insert(next, (node, ci, reversed));
                    frontier.insert((OrderedCost(nd), next));
                }
            }
        }

        if !prev.contains_key(b) {
            return Err(GraphError::Unreachable(a.clone(), b.clone()));
        }
        let mut legs: Vec<Connection> = Vec::new();
        let mut cur = b;
        while cur != a {
            let (p, ci, reversed) = prev[cur];
            let c = &self.connections[ci];
            legs.push(if reversed { c.reversed() } else { c.clone() });
            cur = p;
        }
        legs.reverse();
        Ok(legs)
    }
}

/// Total order for non-NaN path costs.
#[derive(Clone, Copy, Debug, PartialEq)]
struct OrderedCost(f64);

impl Eq for OrderedCost {}

impl PartialOrd for OrderedCost {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedCost {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::Rng;

    use crate::rng::derive_rng;

    fn pt(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn square(x: f64, y: f64, side: f64) -> Polygon {
        Polygon::rectangle(pt(x, y), pt(x + side, y + side)).unwrap()
    }

    fn graph_with_unit_squares(centers: &[(&str, f64, f64)]) -> RegionGraph {
        let bounds = Polygon::rectangle(pt(-100.0, -100.0), pt(100.0, 100.0)).unwrap();
        let mut g = RegionGraph::new(bounds);
        for &(id, x, y) in centers {
            g.add_region(Region::new(id, square(x - 0.5, y - 0.5, 1.0), 0))
                .unwrap();
        }
        g
    }

    #[test]
    fn edge_weight_is_centroid_distance() {
        let mut g = graph_with_unit_squares(&[("a", 0.0, 0.0), ("b", 3.0, 4.0)]);
        g.add_edge(&"a".into(), &"b".into()).unwrap();
        assert!((g.edge_weight(&"a".into(), &"b".into()).unwrap() - 5.0).abs() < 1e-9);
        // Duplicate insert is a no-op.
        g.add_edge(&"b".into(), &"a".into()).unwrap();
        assert_eq!(g.edges().count(), 1);
    }

    #[test]
    fn crossing_edge_rejected() {
        let mut g = graph_with_unit_squares(&[
            ("a", 0.0, 0.0),
            ("b", 10.0, 10.0),
            ("c", 0.0, 10.0),
            ("d", 10.0, 0.0),
        ]);
        g.add_edge(&"a".into(), &"b".into()).unwrap();
        let err = g.add_edge(&"c".into(), &"d".into()).unwrap_err();
        assert!(matches!(err, GraphError::EmbeddingViolation { .. }));
    }

    #[test]
    fn unit_square_corners_allow_one_diagonal() {
        let mut g = graph_with_unit_squares(&[
            ("a", 0.0, 0.0),
            ("b", 10.0, 0.0),
            ("c", 10.0, 10.0),
            ("d", 0.0, 10.0),
        ]);
        for (x, y) in [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")] {
            g.add_edge(&x.into(), &y.into()).unwrap();
        }
        g.add_edge(&"a".into(), &"c".into()).unwrap();
        assert!(matches!(
            g.add_edge(&"b".into(), &"d".into()),
            Err(GraphError::EmbeddingViolation { .. })
        ));
        // Brute-force: no two edges properly cross.
        let segs: Vec<Segment> = g
            .edges()
            .map(|(a, b)| {
                Segment::new(g.region(a).unwrap().centroid, g.region(b).unwrap().centroid)
            })
            .collect();
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                assert!(!matches!(
                    segment_intersection(segs[i], segs[j]),
                    SegmentIntersection::Proper(_)
                ));
            }
        }
    }

    #[test]
    fn random_edge_insertions_stay_planar() {
        let mut rng = derive_rng(0xadd, &[1]);
        for _ in 0..50 {
            let n = rng.gen_range(4..10);
            let mut centers = vec![];
            for i in 0..n {
                centers.push((
                    alloc::format!("r{}", i),
                    rng.gen_range(-40.0..40.0_f64).round() * 2.0,
                    rng.gen_range(-40.0..40.0_f64).round() * 2.0,
                ));
            }
            centers.sort_by(|a, b| a.0.cmp(&b.0));
            centers.dedup_by(|a, b| (a.1, a.2) == (b.1, b.2));
            let bounds = Polygon::rectangle(pt(-200.0, -200.0), pt(200.0, 200.0)).unwrap();
            let mut g = RegionGraph::new(bounds);
            for (id, x, y) in &centers {
                g.add_region(Region::new(id.as_str(), square(x - 0.4, y - 0.4, 0.8), 0))
                    .unwrap();
            }
            for _ in 0..(2 * n) {
                let i = rng.gen_range(0..centers.len());
                let j = rng.gen_range(0..centers.len());
                if i != j {
                    let _ = g.add_edge(
                        &RegionId::new(centers[i].0.clone()),
                        &RegionId::new(centers[j].0.clone()),
                    );
                }
            }
            let segs: Vec<Segment> = g
                .edges()
                .map(|(a, b)| {
                    Segment::new(g.region(a).unwrap().centroid, g.region(b).unwrap().centroid)
                })
                .collect();
            for i in 0..segs.len() {
                for j in (i + 1)..segs.len() {
                    assert!(!matches!(
                        segment_intersection(segs[i], segs[j]),
                        SegmentIntersection::Proper(_)
                    ));
                }
            }
        }
    }

    #[test]
    fn outline_validation_reports() {
        let bounds = Polygon::rectangle(pt(0.0, 0.0), pt(20.0, 20.0)).unwrap();
        let mut g = RegionGraph::new(bounds);
        // Two squares sharing an edge: clean.
        g.add_region(Region::new("a", square(1.0, 1.0, 4.0), 0)).unwrap();
        g.add_region(Region::new("b", square(5.0, 1.0, 4.0), 0)).unwrap();
        assert!(g.validate_outlines().is_empty());

        // A square overlapping `b`.
        g.add_region(Region::new("c", square(8.0, 1.0, 4.0), 0)).unwrap();
        let report = g.validate_outlines();
        assert_eq!(report.overlaps.len(), 1);
        assert_eq!(report.overlaps[0].a, RegionId::from("b"));
        assert_eq!(report.overlaps[0].b, RegionId::from("c"));
        assert!((report.overlaps[0].area - 4.0).abs() < 1e-9);

        // A square poking outside the bounds.
        g.add_region(Region::new("d", square(18.0, 18.0, 4.0), 0)).unwrap();
        let report = g.validate_outlines();
        assert_eq!(report.out_of_bounds, vec![RegionId::from("d")]);
    }

    fn straight(a: (f64, f64), b: (f64, f64)) -> Vec<Point2> {
        vec![pt(a.0, a.1), pt(b.0, b.1)]
    }

    #[test]
    fn route_direct_connection() {
        let mut g = graph_with_unit_squares(&[("a", 0.0, 0.0), ("b", 5.0, 0.0)]);
        g.add_connection(
            Connection::new("a".into(), "b".into(), straight((0.0, 0.0), (5.0, 0.0)), true)
                .unwrap(),
        )
        .unwrap();
        let legs = g.route_between(&"a".into(), &"b".into(), false).unwrap();
        assert_eq!(legs.len(), 1);
        assert_eq!(legs[0].from, RegionId::from("a"));
    }

    #[test]
    fn one_way_connection_blocks_reverse() {
        let mut g = graph_with_unit_squares(&[("a", 0.0, 0.0), ("b", 5.0, 0.0)]);
        g.add_connection(
            Connection::new("a".into(), "b".into(), straight((0.0, 0.0), (5.0, 0.0)), false)
                .unwrap(),
        )
        .unwrap();
        assert!(matches!(
            g.route_between(&"b".into(), &"a".into(), false),
            Err(GraphError::Unreachable(_, _))
        ));
        // Even with allow_reverse, a one-way connection may not be reversed.
        assert!(matches!(
            g.route_between(&"b".into(), &"a".into(), true),
            Err(GraphError::Unreachable(_, _))
        ));
    }

    #[test]
    fn two_way_connection_reversible_when_allowed() {
        let mut g = graph_with_unit_squares(&[("a", 0.0, 0.0), ("b", 5.0, 0.0)]);
        g.add_connection(
            Connection::new("a".into(), "b".into(), straight((0.0, 0.0), (5.0, 0.0)), true)
                .unwrap(),
        )
        .unwrap();
        assert!(g.route_between(&"b".into(), &"a".into(), false).is_err());
        let legs = g.route_between(&"b".into(), &"a".into(), true).unwrap();
        assert_eq!(legs.len(), 1);
        assert_eq!(legs[0].from, RegionId::from("b"));
        assert_eq!(legs[0].waypoints[0], pt(5.0, 0.0));
    }

    #[test]
    fn route_prefers_shorter_multi_hop_path() {
        let mut g = graph_with_unit_squares(&[("a", 0.0, 0.0), ("b", 5.0, 0.0), ("c", 10.0, 0.0)]);
        g.add_connection(
            Connection::new("a".into(), "b".into(), straight((0.0, 0.0), (5.0, 0.0)), false)
                .unwrap(),
        )
        .unwrap();
        g.add_connection(
            Connection::new("b".into(), "c".into(), straight((5.0, 0.0), (10.0, 0.0)), false)
                .unwrap(),
        )
        .unwrap();
        // Direct a->c exists but detours far below the row of outlines, so
        // enumerate-all-paths says two-hop (10 m) beats direct (> 22 m).
        g.add_connection(
            Connection::new(
                "a".into(),
                "c".into(),
                vec![pt(0.0, 0.0), pt(0.4, -0.4), pt(10.0, 0.0)],
                false,
            )
            .unwrap(),
        )
        .unwrap();
        let legs = g.route_between(&"a".into(), &"c".into(), false).unwrap();
        assert_eq!(legs.len(), 2);
        let total: f64 = legs.iter().map(|c| c.length()).sum();
        assert!((total - 10.0).abs() < 1e-9);
    }

    #[test]
    fn connection_waypoints_must_stay_in_outlines() {
        let mut g = graph_with_unit_squares(&[("a", 0.0, 0.0), ("b", 5.0, 0.0)]);
        let err = g
            .add_connection(
                Connection::new(
                    "a".into(),
                    "b".into(),
                    vec![pt(0.0, 0.0), pt(2.5, 50.0), pt(5.0, 0.0)],
                    true,
                )
                .unwrap(),
            )
            .unwrap_err();
        assert_eq!(err, GraphError::WaypointOutside(1));
    }

    #[test]
    fn nested_regions_stay_inside_parent() {
        let parent_outline = square(0.0, 0.0, 100.0);
        let mut nested = RegionGraph::unbounded();
        let mut rng = derive_rng(0xe57, &[2]);
        for i in 0..8 {
            let x = rng.gen_range(5.0..90.0);
            let y = rng.gen_range(5.0..90.0);
            nested
                .add_region(Region::new(
                    alloc::format!("n{}", i).as_str(),
                    square(x, y, 4.0),
                    100,
                ))
                .unwrap();
        }
        let mut parent = Region::new("city", parent_outline, 800);
        parent.nested = Some(nested);
        for sub in parent.nested.as_ref().unwrap().regions() {
            assert_eq!(parent.outline.locate(sub.centroid), PointLocation::Inside);
        }
    }
}
