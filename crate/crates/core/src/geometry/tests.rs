use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::*;
use crate::rng::derive_rng;

fn pt(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

fn poly(pts: &[(f64, f64)]) -> Polygon {
    Polygon::new(pts.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
}

fn approx(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Random convex polygon: convex hull of seeded points in a box.
fn random_convex(rng: &mut impl Rng) -> Polygon {
    loop {
        let n = rng.gen_range(5..16);
        let cx = rng.gen_range(-500.0..500.0);
        let cy = rng.gen_range(-500.0..500.0);
        let scale = rng.gen_range(10.0..200.0);
        let pts: Vec<Point2> = (0..n)
            .map(|_| pt(cx + rng.gen_range(-scale..scale), cy + rng.gen_range(-scale..scale)))
            .collect();
        let hull = convex_hull(&pts);
        if hull.len() >= 3 {
            if let Ok(p) = Polygon::new(hull) {
                return p;
            }
        }
    }
}

// ---- polygon construction & area ----

#[test]
fn area_unit_square() {
    let p = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
    assert_eq!(p.area(), 1.0);
}

#[test]
fn area_right_triangle() {
    // Shoelace by hand: |(4*3)| / 2 = 6.
    let p = poly(&[(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)]);
    assert_eq!(p.area(), 6.0);
}

#[test]
fn area_calibration_room() {
    let p = poly(&[(0.0, 0.0), (22.0, 0.0), (22.0, 16.0), (0.0, 16.0)]);
    assert_eq!(p.area(), 352.0);
}

#[test]
fn winding_canonicalized_and_rotation_invariant() {
    let ccw = poly(&[(0.0, 0.0), (4.0, 0.0), (4.0, 2.0), (0.0, 2.0)]);
    let cw = poly(&[(0.0, 2.0), (4.0, 2.0), (4.0, 0.0), (0.0, 0.0)]);
    let rotated = poly(&[(4.0, 2.0), (0.0, 2.0), (0.0, 0.0), (4.0, 0.0)]);
    assert_eq!(ccw, cw);
    assert_eq!(ccw, rotated);
    assert_eq!(ccw.area(), cw.area());
}

#[test]
fn degenerate_polygons_rejected() {
    assert!(matches!(
        Polygon::new(vec![pt(0.0, 0.0), pt(1.0, 0.0)]),
        Err(GeometryError::TooFewVertices(_))
    ));
    assert!(matches!(
        Polygon::new(vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0)]),
        Err(GeometryError::Degenerate(_))
    ));
    assert!(matches!(
        Polygon::new(vec![pt(0.0, 0.0), pt(f64::NAN, 0.0), pt(1.0, 1.0)]),
        Err(GeometryError::TooFewVertices(_)) | Err(GeometryError::NonFinite)
    ));
    // Bowtie (asymmetric so the signed area is nonzero).
    assert!(matches!(
        Polygon::new(vec![pt(0.0, 0.0), pt(4.0, 4.0), pt(4.0, 0.0), pt(0.0, 3.0)]),
        Err(GeometryError::SelfIntersecting)
    ));
}

#[test]
fn locate_classifies_points() {
    let p = poly(&[(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)]);
    assert_eq!(p.locate(pt(2.0, 2.0)), PointLocation::Inside);
    assert_eq!(p.locate(pt(4.0, 2.0)), PointLocation::Boundary);
    assert_eq!(p.locate(pt(5.0, 2.0)), PointLocation::Outside);
}

#[test]
fn interior_point_inside_concave() {
    let u = poly(&[
        (0.0, 0.0),
        (10.0, 0.0),
        (10.0, 8.0),
        (7.0, 8.0),
        (7.0, 3.0),
        (3.0, 3.0),
        (3.0, 8.0),
        (0.0, 8.0),
    ]);
    assert_eq!(u.locate(u.interior_point()), PointLocation::Inside);
}

// ---- segment intersection ----

#[test]
fn segments_cross_at_center() {
    let a = Segment::new(pt(0.0, 0.0), pt(2.0, 2.0));
    let b = Segment::new(pt(0.0, 2.0), pt(2.0, 0.0));
    assert_eq!(segment_intersection(a, b), SegmentIntersection::Proper(pt(1.0, 1.0)));
}

#[test]
fn parallel_segments_disjoint() {
    let a = Segment::new(pt(0.0, 0.0), pt(2.0, 0.0));
    let b = Segment::new(pt(0.0, 1.0), pt(2.0, 1.0));
    assert_eq!(segment_intersection(a, b), SegmentIntersection::Disjoint);
}

#[test]
fn collinear_overlap_reported() {
    let a = Segment::new(pt(0.0, 0.0), pt(2.0, 0.0));
    let b = Segment::new(pt(1.0, 0.0), pt(3.0, 0.0));
    match segment_intersection(a, b) {
        SegmentIntersection::CollinearOverlap(p, q) => {
            assert_eq!(p, pt(1.0, 0.0));
            assert_eq!(q, pt(2.0, 0.0));
        }
        other => panic!("expected overlap, got {:?}", other),
    }
}

#[test]
fn endpoint_touch_reported() {
    let a = Segment::new(pt(0.0, 0.0), pt(2.0, 0.0));
    let b = Segment::new(pt(2.0, 0.0), pt(3.0, 5.0));
    assert_eq!(segment_intersection(a, b), SegmentIntersection::Touching(pt(2.0, 0.0)));
    // T-junction: endpoint on interior.
    let c = Segment::new(pt(1.0, 0.0), pt(1.0, 3.0));
    assert_eq!(segment_intersection(a, c), SegmentIntersection::Touching(pt(1.0, 0.0)));
}

// ---- oriented bounding boxes ----

#[test]
fn obb_of_axis_aligned_rect() {
    let p = poly(&[(0.0, 0.0), (200.0, 0.0), (200.0, 100.0), (0.0, 100.0)]);
    let obb = compute_obb(&p);
    assert!(obb.center.dist(pt(100.0, 50.0)) < 1e-9);
    assert!(obb.axis_major.dist(pt(1.0, 0.0)) < 1e-9);
    assert!(approx(obb.half_major, 100.0, 1e-9));
    assert!(approx(obb.half_minor, 50.0, 1e-9));
}

#[test]
fn obb_rotation_equivariant() {
    let (s, c) = (30f64.to_radians().sin(), 30f64.to_radians().cos());
    let rot = |p: Point2| pt(c * p.x - s * p.y, s * p.x + c * p.y);
    let base = [pt(0.0, 0.0), pt(200.0, 0.0), pt(200.0, 100.0), pt(0.0, 100.0)];
    let p = Polygon::new(base.iter().map(|&q| rot(q)).collect()).unwrap();
    let obb = compute_obb(&p);
    assert!(approx(obb.half_major, 100.0, 1e-6));
    assert!(approx(obb.half_minor, 50.0, 1e-6));
    assert!(obb.axis_major.dist(pt(c, s)) < 1e-6);
}

#[test]
fn obb_square_tie_breaks_to_x_axis() {
    let p = poly(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]);
    let obb = compute_obb(&p);
    assert!(approx(obb.half_major, 5.0, 1e-9));
    assert!(approx(obb.half_minor, 5.0, 1e-9));
    assert!(obb.axis_major.dist(pt(1.0, 0.0)) < 1e-9);
}

#[test]
fn obb_contains_all_vertices_randomized() {
    let mut rng = derive_rng(0xb0b, &[1]);
    for _ in 0..500 {
        let p = random_convex(&mut rng);
        let obb = compute_obb(&p);
        for &v in p.vertices() {
            assert!(obb.contains(v, 1e-9), "vertex {} outside obb {:?}", v, obb);
        }
        assert!(obb.half_major >= obb.half_minor);
        assert!(approx(obb.axis_major.norm(), 1.0, 1e-9));
    }
}

// ---- polygon splitting ----

#[test]
fn split_rect_at_midpoint() {
    let p = poly(&[(0.0, 0.0), (200.0, 0.0), (200.0, 100.0), (0.0, 100.0)]);
    let parts = split_polygon(&p, pt(100.0, 50.0), pt(0.0, 1.0)).unwrap();
    assert_eq!(parts.len(), 2);
    for part in &parts {
        assert!(approx(part.area(), 100.0 * 100.0, 1e-6));
    }
    let total: f64 = parts.iter().map(|q| q.area()).sum();
    assert!(approx(total, p.area(), p.area() * AREA_REL_EPS));
}

#[test]
fn split_l_shape_across_notch_gives_three_parts() {
    // L-shape occupying everything but the top-right quadrant.
    let p = poly(&[
        (0.0, 0.0),
        (20.0, 0.0),
        (20.0, 5.0),
        (12.0, 5.0),
        (12.0, 10.0),
        (0.0, 10.0),
    ]);
    // Horizontal cut at y = 7 passes through the notch: the right arm is
    // below, so the line only crosses the left column -> 2 parts. Cut at
    // y = 3 crosses both arms -> 2 parts. A vertical cut at x = 6 -> 2.
    // A horizontal line at y=5 along the notch edge: the span over the right
    // arm lies on the boundary; only the left chord is interior.
    let parts = split_polygon(&p, pt(0.0, 5.0), pt(1.0, 0.0)).unwrap();
    let total: f64 = parts.iter().map(|q| q.area()).sum();
    assert!(approx(total, p.area(), p.area() * AREA_REL_EPS));
    assert_eq!(parts.len(), 2);

    // A U-shape cut across the notch yields three parts.
    let u = poly(&[
        (0.0, 0.0),
        (30.0, 0.0),
        (30.0, 20.0),
        (20.0, 20.0),
        (20.0, 8.0),
        (10.0, 8.0),
        (10.0, 20.0),
        (0.0, 20.0),
    ]);
    let parts = split_polygon(&u, pt(0.0, 14.0), pt(1.0, 0.0)).unwrap();
    assert_eq!(parts.len(), 3);
    let total: f64 = parts.iter().map(|q| q.area()).sum();
    assert!(approx(total, u.area(), u.area() * AREA_REL_EPS));
}

#[test]
fn split_along_existing_edge_fails() {
    let p = poly(&[(0.0, 0.0), (200.0, 0.0), (200.0, 100.0), (0.0, 100.0)]);
    assert_eq!(
        split_polygon(&p, pt(0.0, 0.0), pt(1.0, 0.0)),
        Err(GeometryError::NoIntersection)
    );
    assert_eq!(
        split_polygon(&p, pt(300.0, 300.0), pt(0.0, 1.0)),
        Err(GeometryError::NoIntersection)
    );
}

#[test]
fn split_shares_cut_edge_between_parts() {
    let p = poly(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]);
    let parts = split_polygon(&p, pt(5.0, 0.0), pt(0.0, 1.0)).unwrap();
    assert_eq!(parts.len(), 2);
    let on_cut = |q: &Polygon| {
        q.vertices()
            .iter()
            .filter(|v| (v.x - 5.0).abs() <= EPS)
            .count()
    };
    assert!(parts.iter().all(|q| on_cut(q) == 2));
}

#[test]
fn split_conserves_area_on_random_convex_polygons() {
    let mut rng = derive_rng(0x5eed, &[2]);
    for trial in 0..1000 {
        let p = random_convex(&mut rng);
        let (lo, hi) = p.bbox();
        // Cut through a random interior point at a random angle.
        let cx = rng.gen_range(lo.x..hi.x);
        let cy = rng.gen_range(lo.y..hi.y);
        let ang: f64 = rng.gen_range(0.0..core::f64::consts::PI);
        let dir = pt(ang.cos(), ang.sin());
        match split_polygon(&p, pt(cx, cy), dir) {
            Ok(parts) => {
                assert!(parts.len() >= 2);
                let total: f64 = parts.iter().map(|q| q.area()).sum();
                assert!(
                    approx(total, p.area(), p.area() * AREA_REL_EPS),
                    "trial {}: {} vs {}",
                    trial,
                    total,
                    p.area()
                );
            }
            Err(GeometryError::NoIntersection) => {
                // Random point can fall outside the polygon; legitimate.
            }
            Err(e) => panic!("trial {}: {:?}", trial, e),
        }
    }
}

// ---- faces / arrangement ----

#[test]
fn faces_of_empty_boundary() {
    let square = poly(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]);
    let fs = planar_faces(&square, &[]);
    assert_eq!(fs.faces.len(), 1);
    assert_eq!(fs.faces[0], square);
    assert!(fs.dangling.is_empty());
}

#[test]
fn faces_of_crossing_roads() {
    let square = poly(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]);
    let segs = [
        Segment::new(pt(5.0, -1.0), pt(5.0, 11.0)),
        Segment::new(pt(-1.0, 5.0), pt(11.0, 5.0)),
    ];
    let fs = planar_faces(&square, &segs);
    assert_eq!(fs.faces.len(), 4);
    let total: f64 = fs.faces.iter().map(|f| f.area()).sum();
    assert!(approx(total, 100.0, 100.0 * AREA_REL_EPS));
}

#[test]
fn dangling_segments_reported_not_faced() {
    let square = poly(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]);
    let segs = [Segment::new(pt(5.0, 5.0), pt(7.0, 7.0))];
    let fs = planar_faces(&square, &segs);
    assert_eq!(fs.faces.len(), 1);
    assert_eq!(fs.dangling.len(), 1);
}

#[test]
fn intersection_area_of_shared_edge_squares_is_zero() {
    let a = poly(&[(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)]);
    let b = poly(&[(4.0, 0.0), (8.0, 0.0), (8.0, 4.0), (4.0, 4.0)]);
    assert!(polygon_intersection_area(&a, &b).abs() < 1e-9);
}

#[test]
fn intersection_area_of_overlapping_squares() {
    let a = poly(&[(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)]);
    let b = poly(&[(3.0, 3.0), (7.0, 3.0), (7.0, 7.0), (3.0, 7.0)]);
    assert!(approx(polygon_intersection_area(&a, &b), 1.0, 1e-9));
}

#[test]
fn intersection_area_handles_containment() {
    let a = poly(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]);
    let b = poly(&[(2.0, 2.0), (4.0, 2.0), (4.0, 4.0), (2.0, 4.0)]);
    assert!(approx(polygon_intersection_area(&a, &b), 4.0, 1e-9));
    assert!(approx(polygon_intersection_area(&b, &a), 4.0, 1e-9));
    let c = poly(&[(20.0, 20.0), (24.0, 20.0), (24.0, 24.0), (20.0, 24.0)]);
    assert_eq!(polygon_intersection_area(&a, &c), 0.0);
}

// ---- inscribed rectangle ----

#[test]
fn inscribed_rect_of_rectangle_is_itself() {
    let p = poly(&[(0.0, 0.0), (12.0, 0.0), (12.0, 7.0), (0.0, 7.0)]);
    let r = largest_inscribed_rectangle(&p, None, &InscribedRectParams::default()).unwrap();
    assert_eq!(r, p);
    // With a required edge on one of its sides it is still itself.
    let edge = Segment::new(pt(0.0, 0.0), pt(12.0, 0.0));
    let r = largest_inscribed_rectangle(&p, Some(edge), &InscribedRectParams::default()).unwrap();
    assert_eq!(r, p);
}

#[test]
fn inscribed_rect_in_right_triangle_near_optimum() {
    // Analytic optimum for a right triangle is half its area: 3.0.
    let p = poly(&[(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)]);
    let params = InscribedRectParams {
        resolution: 256,
        min_area: 1e-6,
    };
    let r = largest_inscribed_rectangle(&p, None, &params).unwrap();
    assert!(
        r.area() >= 0.95 * 3.0,
        "grid search reached only {}",
        r.area()
    );
    for &v in r.vertices() {
        assert_ne!(p.locate(v), PointLocation::Outside);
    }
}

#[test]
fn inscribed_rect_empty_for_sliver() {
    let p = poly(&[(0.0, 0.0), (10.0, 0.0), (10.0, 1e-4), (0.0, 1e-4)]);
    let params = InscribedRectParams {
        resolution: 64,
        min_area: 9.0,
    };
    assert!(largest_inscribed_rectangle(&p, None, &params).is_none());
}

#[test]
fn inscribed_rect_respects_required_edge() {
    // Pentagon with a flat base; base-aligned rectangle must sit on it.
    let p = poly(&[(0.0, 0.0), (10.0, 0.0), (10.0, 4.0), (5.0, 7.0), (0.0, 4.0)]);
    let base = Segment::new(pt(0.0, 0.0), pt(10.0, 0.0));
    let params = InscribedRectParams {
        resolution: 128,
        min_area: 1e-6,
    };
    let r = largest_inscribed_rectangle(&p, Some(base), &params).unwrap();
    let touching_base = r.vertices().iter().filter(|v| v.y.abs() <= 1e-9).count();
    assert_eq!(touching_base, 2, "base side must lie on the required edge");
    for &v in r.vertices() {
        assert_ne!(p.locate(v), PointLocation::Outside);
    }
    assert!(r.area() >= 20.0, "area {} too small", r.area());
}

// ---- projection ----

#[test]
fn projection_origin_maps_to_origin() {
    let g = GeoCoordinate::new(0.0, 0.0).unwrap();
    let p = project_elliptical_mercator(&g).unwrap();
    assert!(p.norm() < 1e-9);
}

#[test]
fn projection_antimeridian_x() {
    let g = GeoCoordinate::new(0.0, 180.0).unwrap();
    let p = project_elliptical_mercator(&g).unwrap();
    assert!(approx(p.x, 20_037_508.342_789_244, 1e-3));
    assert!(p.y.abs() < 1e-9);
}

#[test]
fn projection_roundtrip_porto_alegre() {
    let g = GeoCoordinate::new(-30.03, -51.23).unwrap();
    let p = project_elliptical_mercator(&g).unwrap();
    let back = inverse_elliptical_mercator(p);
    assert!(approx(back.latitude(), g.latitude(), 1e-9));
    assert!(approx(back.longitude(), g.longitude(), 1e-9));
}

#[test]
fn projection_rejects_near_poles() {
    let g = GeoCoordinate::new(89.9, 0.0).unwrap();
    assert!(matches!(
        project_elliptical_mercator(&g),
        Err(GeometryError::LatitudeOutOfDomain(_))
    ));
}

#[test]
fn projection_monotone_in_both_axes() {
    let mut rng = derive_rng(0x9e0, &[3]);
    for _ in 0..500 {
        let lat1 = rng.gen_range(-85.0..85.0);
        let lat2 = rng.gen_range(-85.0..85.0);
        let lon1 = rng.gen_range(-180.0..180.0);
        let lon2 = rng.gen_range(-180.0..180.0);
        let p = |lat: f64, lon: f64| {
            project_elliptical_mercator(&GeoCoordinate::new(lat, lon).unwrap()).unwrap()
        };
        if lon1 < lon2 {
            assert!(p(0.0, lon1).x < p(0.0, lon2).x);
        }
        if lat1 < lat2 {
            assert!(p(lat1, 0.0).y < p(lat2, 0.0).y);
        }
    }
}

#[test]
fn geocoordinate_validates_ranges() {
    assert!(GeoCoordinate::new(91.0, 0.0).is_err());
    assert!(GeoCoordinate::new(0.0, 181.0).is_err());
    assert!(GeoCoordinate::new(f64::NAN, 0.0).is_err());
    assert!(GeoCoordinate::new(-90.0, 180.0).is_ok());
}
