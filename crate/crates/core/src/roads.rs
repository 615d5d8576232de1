//! Road networks within a region: polylines with traffic attributes,
//! planarity-preserving intersection splitting, and extraction of
//! subregions and city blocks as faces of the planar subdivision.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::geometry::{
    dist_point_segment, planar_faces, segment_intersection, FaceSet, Point2, Polygon, Segment,
    SegmentIntersection, WELD_EPS,
};
use crate::regions::RegionId;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RoadError {
    #[error("road {0}: needs at least 2 points")]
    TooFewPoints(RoadId),
    #[error("road {0}: zero-length segment at index {1}")]
    ZeroLengthSegment(RoadId, usize),
    #[error("road {0}: width must be positive and lanes >= 1")]
    BadAttributes(RoadId),
    #[error("road {0} already exists in the network")]
    DuplicateRoad(RoadId),
    #[error(
        "primary road {0}: endpoint {1} must lie on the region outline or another primary road"
    )]
    PrimaryEndpoint(RoadId, Point2),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoadId(pub u64);

impl core::fmt::Display for RoadId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arterial roads partition a region into subregions; local streets form
/// city blocks within a subregion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoadKind {
    Primary,
    Secondary,
}

/// Default speed limit when the source data has none: 50 km/h.
pub const DEFAULT_MAX_SPEED: f64 = 50.0 / 3.6;
/// Width of one traffic lane, meters.
pub const LANE_WIDTH: f64 = 3.7;

/// A road polyline; consecutive point pairs are its segments. When
/// `is_one_way`, ascending point order is the traffic direction.
/// `max_height`/`max_weight` are unrestricted when absent.
#[derive(Clone, Debug, PartialEq)]
pub struct Road {
    pub id: RoadId,
    pub points: Vec<Point2>,
    pub kind: RoadKind,
    pub width: f64,
    pub lanes: u32,
    pub is_one_way: bool,
    pub max_speed: f64,
    pub max_height: Option<f64>,
    pub max_weight: Option<f64>,
}

impl Road {
    /// Road with default attributes: one two-way lane at the default limit.
    pub fn new(id: RoadId, points: Vec<Point2>, kind: RoadKind) -> Road {
        Road {
            id,
            points,
            kind,
            width: LANE_WIDTH,
            lanes: 1,
            is_one_way: false,
            max_speed: DEFAULT_MAX_SPEED,
            max_height: None,
            max_weight: None,
        }
    }

    pub fn validate(&self) -> Result<(), RoadError> {
        if self.points.len() < 2 {
            return Err(RoadError::TooFewPoints(self.id));
        }
        for (i, w) in self.points.windows(2).enumerate() {
            if w[0].dist(w[1]) <= WELD_EPS {
                return Err(RoadError::ZeroLengthSegment(self.id, i));
            }
        }
        if self.width <= 0.0 || self.lanes == 0 {
            return Err(RoadError::BadAttributes(self.id));
        }
        Ok(())
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.points.windows(2).map(|w| Segment::new(w[0], w[1]))
    }

    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].dist(w[1])).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubregionId(pub u64);

impl core::fmt::Display for SubregionId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A face of the primary-road subdivision of a region.
#[derive(Clone, Debug)]
pub struct Subregion {
    pub id: SubregionId,
    pub polygon: Polygon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockId(pub u64);

impl core::fmt::Display for BlockId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A face of the secondary-road subdivision: every boundary vertex lies on
/// a road segment or the subregion outline.
#[derive(Clone, Debug)]
pub struct CityBlock {
    pub id: BlockId,
    pub polygon: Polygon,
    pub subregion: SubregionId,
}

/// The road network of one region. Insertions keep the segment set planar:
/// crossings become junction points spliced into both polylines. Networks
/// of distinct regions are independent and may be built concurrently;
/// within one region construction is single-writer.
#[derive(Clone, Debug)]
pub struct RoadNetwork {
    region: RegionId,
    outline: Polygon,
    roads: BTreeMap<RoadId, Road>,
    junctions: Vec<Point2>,
}

impl RoadNetwork {
    pub fn new(region: RegionId, outline: Polygon) -> RoadNetwork {
        RoadNetwork {
            region,
            outline,
            roads: BTreeMap::new(),
            junctions: Vec::new(),
        }
    }

    pub fn region(&self) -> &RegionId {
        &self.region
    }

    pub fn outline(&self) -> &Polygon {
        &self.outline
    }

    pub fn roads(&self) -> impl Iterator<Item = &Road> {
        self.roads.values()
    }

    pub fn road(&self, id: RoadId) -> Option<&Road> {
        self.roads.get(&id)
    }

    pub fn len(&self) -> usize {
        self.roads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roads.is_empty()
    }

    pub fn junctions(&self) -> &[Point2] {
        &self.junctions
    }

    pub fn segments(&self) -> Vec<Segment> {
        self.roads.values().flat_map(|r| r.segments()).collect()
    }

    pub fn segments_of_kind(&self, kind: RoadKind) -> Vec<Segment> {
        self.roads
            .values()
            .filter(|r| r.kind == kind)
            .flat_map(|r| r.segments())
            .collect()
    }

    /// Insert a road, splitting every crossing (against existing roads and
    /// within the new road itself) into junction points spliced into the
    /// affected polylines in path order. Primary roads must end on the
    /// region outline or on another primary road already present.
    pub fn insert_road(&mut self, road: Road) -> Result<(), RoadError> {
        self.insert_road_inner(road, false)
    }

    /// Insert a batch of roads. The primary-endpoint rule is checked against
    /// the whole batch plus the existing network before anything is
    /// inserted, so insertion order cannot produce spurious topology errors
    /// for mutually-terminating primaries.
    pub fn insert_roads(&mut self, roads: Vec<Road>) -> Result<(), RoadError> {
        for road in &roads {
            road.validate()?;
            if self.roads.contains_key(&road.id) {
                return Err(RoadError::DuplicateRoad(road.id));
            }
            if road.kind == RoadKind::Primary {
                for &endpoint in &[road.points[0], road.points[road.points.len() - 1]] {
                    let in_batch = roads
                        .iter()
                        .filter(|r| r.kind == RoadKind::Primary && r.id != road.id)
                        .any(|r| {
                            r.segments()
                                .any(|s| dist_point_segment(endpoint, s.a, s.b) <= WELD_EPS)
                        });
                    if !self.on_outline(endpoint)
                        && !self.on_any_primary(endpoint, road.id)
                        && !in_batch
                    {
                        return Err(RoadError::PrimaryEndpoint(road.id, endpoint));
                    }
                }
            }
        }
        for road in roads {
            self.insert_road_inner(road, true)?;
        }
        Ok(())
    }

    fn on_outline(&self, p: Point2) -> bool {
        self.outline
            .edges()
            .any(|e| dist_point_segment(p, e.a, e.b) <= WELD_EPS)
    }

    fn on_any_primary(&self, p: Point2, except: RoadId) -> bool {
        self.roads
            .values()
            .filter(|r| r.kind == RoadKind::Primary && r.id != except)
            .any(|r| r.segments().any(|s| dist_point_segment(p, s.a, s.b) <= WELD_EPS))
    }

    fn insert_road_inner(
        &mut self,
        mut road: Road,
        endpoint_checked: bool,
    ) -> Result<(), RoadError> {
        road.validate()?;
        if self.roads.contains_key(&road.id) {
            return Err(RoadError::DuplicateRoad(road.id));
        }

        // Weld new points onto existing road vertices within tolerance.
        let existing: Vec<Point2> = self
            .roads
            .values()
            .flat_map(|r| r.points.iter().copied())
            .collect();
        for p in &mut road.points {
            if let Some(q) = existing.iter().find(|q| q.dist(*p) <= WELD_EPS) {
                *p = *q;
            }
        }
        road.validate()?;

        if road.kind == RoadKind::Primary && !endpoint_checked {
            for &endpoint in &[road.points[0], road.points[road.points.len() - 1]] {
                if !self.on_outline(endpoint) && !self.on_any_primary(endpoint, road.id) {
                    return Err(RoadError::PrimaryEndpoint(road.id, endpoint));
                }
            }
        }

        // Crossings with existing roads.
        let mut new_cuts: Vec<Point2> = Vec::new();
        let mut existing_cuts: BTreeMap<RoadId, Vec<Point2>> = BTreeMap::new();
        for other in self.roads.values() {
            for sn in road.segments() {
                for so in other.segments() {
                    if !sn.bbox_overlaps(&so, WELD_EPS) {
                        continue;
                    }
                    match segment_intersection(sn, so) {
                        SegmentIntersection::Disjoint => {}
                        SegmentIntersection::Proper(p) | SegmentIntersection::Touching(p) => {
                            new_cuts.push(p);
                            existing_cuts.entry(other.id).or_default().push(p);
                        }
                        SegmentIntersection::CollinearOverlap(p, q) => {
                            new_cuts.extend([p, q]);
                            existing_cuts.entry(other.id).or_default().extend([p, q]);
                        }
                    }
                }
            }
        }
        // Self-crossings of the new road (non-adjacent segment pairs).
        let own: Vec<Segment> = road.segments().collect();
        for i in 0..own.len() {
            for j in (i + 2)..own.len() {
                if let SegmentIntersection::Proper(p) = segment_intersection(own[i], own[j]) {
                    new_cuts.push(p);
                }
            }
        }

        for (id, cuts) in existing_cuts {
            let r = self.roads.get_mut(&id).expect("cut target exists");
            splice_points(&mut r.points, &cuts);
            for p in cuts {
                push_junction(&mut self.junctions, p);
            }
        }
        splice_points(&mut road.points, &new_cuts);
        for p in new_cuts {
            push_junction(&mut self.junctions, p);
        }

        self.roads.insert(road.id, road);
        Ok(())
    }

    /// Count of proper interior crossings left in the network; zero after
    /// any sequence of successful insertions.
    pub fn interior_crossings(&self) -> usize {
        let segs = self.segments();
        let mut count = 0;
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                if let SegmentIntersection::Proper(_) = segment_intersection(segs[i], segs[j]) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Faces of the planar subdivision formed by this network's segments
    /// within `boundary`.
    pub fn extract_faces(&self, boundary: &Polygon) -> FaceSet {
        planar_faces(boundary, &self.segments())
    }

    /// Subregions: faces formed by the primary roads within the outline.
    pub fn subregions(&self, next_id: &mut u64) -> (Vec<Subregion>, Vec<Segment>) {
        let fs = planar_faces(&self.outline, &self.segments_of_kind(RoadKind::Primary));
        let subs = fs
            .faces
            .into_iter()
            .map(|polygon| {
                let id = SubregionId(*next_id);
                *next_id += 1;
                Subregion { id, polygon }
            })
            .collect();
        (subs, fs.dangling)
    }
}

fn push_junction(junctions: &mut Vec<Point2>, p: Point2) {
    if !junctions.iter().any(|q| q.dist(p) <= WELD_EPS) {
        junctions.push(p);
    }
}

/// Splice cut points into a polyline in path order, skipping points that
/// already sit on a vertex.
fn splice_points(points: &mut Vec<Point2>, cuts: &[Point2]) {
    for &cut in cuts {
        if points.iter().any(|q| q.dist(cut) <= WELD_EPS) {
            continue;
        }
        let mut at = None;
        for i in 0..points.len() - 1 {
            if dist_point_segment(cut, points[i], points[i + 1]) <= WELD_EPS {
                at = Some(i + 1);
                break;
            }
        }
        if let Some(i) = at {
            points.insert(i, cut);
        }
    }
}

/// City blocks: faces of the secondary-road subdivision of a subregion.
/// Dead-end segments are reported, not faced.
pub fn classify_blocks(
    subregion: &Subregion,
    secondary: &[Road],
    next_block_id: &mut u64,
) -> (Vec<CityBlock>, Vec<Segment>) {
    let segs: Vec<Segment> = secondary.iter().flat_map(|r| r.segments()).collect();
    let fs = planar_faces(&subregion.polygon, &segs);
    let blocks = fs
        .faces
        .into_iter()
        .map(|polygon| {
            let id = BlockId(*next_block_id);
            *next_block_id += 1;
            CityBlock {
                id,
                polygon,
                subregion: subregion.id,
            }
        })
        .collect();
    (blocks, fs.dangling)
}
