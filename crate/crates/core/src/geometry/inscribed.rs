//! Largest inscribed rectangle by grid search.
//!
//! Exact inscribed-rectangle algorithms are intricate; a building footprint
//! only needs a good approximation, so the polygon is rasterized onto a grid
//! per candidate orientation and the largest all-free cell rectangle is
//! taken. Quality improves with `resolution`; exact rectangles short-circuit
//! to themselves.

use alloc::vec::Vec;

use super::{Point2, PointLocation, Polygon, Segment, EPS, WELD_EPS};

/// Tuning for [`largest_inscribed_rectangle`].
#[derive(Clone, Copy, Debug)]
pub struct InscribedRectParams {
    /// Grid cells along the longer bounding-box side.
    pub resolution: usize,
    /// Rectangles below this area are rejected (empty-footprint signal).
    pub min_area: f64,
}

impl Default for InscribedRectParams {
    fn default() -> Self {
        InscribedRectParams {
            resolution: 128,
            min_area: 1e-6,
        }
    }
}

/// Find a large axis- or edge-aligned rectangle inside `p`.
///
/// With `required_edge`, the rectangle's base side lies along that edge
/// (which must be collinear with part of the boundary), aligning a building
/// to face its street. Returns `None` when nothing at or above
/// `params.min_area` fits.
pub fn largest_inscribed_rectangle(
    p: &Polygon,
    required_edge: Option<Segment>,
    params: &InscribedRectParams,
) -> Option<Polygon> {
    // An exact rectangle is its own answer.
    if let Some(rect) = as_rectangle(p) {
        let aligned = match required_edge {
            None => true,
            Some(e) => p.edges().any(|edge| collinear_with(&edge, &e)),
        };
        if aligned {
            return if rect.area() >= params.min_area {
                Some(rect)
            } else {
                None
            };
        }
    }

    let resolution = params.resolution.max(8);
    let mut best: Option<(f64, Polygon)> = None;

    let orientations: Vec<Point2> = match required_edge {
        Some(e) => alloc::vec![e.direction()?],
        None => {
            let mut dirs: Vec<Point2> = alloc::vec![Point2::new(1.0, 0.0)];
            for edge in p.edges() {
                if let Some(d) = edge.direction() {
                    let d = if d.x < -EPS || (d.x.abs() <= EPS && d.y < 0.0) {
                        -d
                    } else {
                        d
                    };
                    if !dirs.iter().any(|q| q.dist(d) < 1e-9) {
                        dirs.push(d);
                    }
                }
                if dirs.len() >= 16 {
                    break;
                }
            }
            dirs
        }
    };

    for u in orientations {
        if let Some((area, rect)) = grid_search(p, u, required_edge, resolution) {
            if best.as_ref().map_or(true, |(ba, _)| area > *ba) {
                best = Some((area, rect));
            }
        }
    }
    best.and_then(|(area, rect)| (area >= params.min_area).then_some(rect))
}

fn as_rectangle(p: &Polygon) -> Option<Polygon> {
    let vs = p.vertices();
    if vs.len() != 4 {
        return None;
    }
    for i in 0..4 {
        let e1 = vs[(i + 1) % 4] - vs[i];
        let e2 = vs[(i + 2) % 4] - vs[(i + 1) % 4];
        if e1.dot(e2).abs() > 1e-7 * e1.norm() * e2.norm() {
            return None;
        }
    }
    Some(p.clone())
}

fn collinear_with(edge: &Segment, line: &Segment) -> bool {
    let Some(d) = line.direction() else {
        return false;
    };
    let off_a = (edge.a - line.a).cross(d).abs();
    let off_b = (edge.b - line.a).cross(d).abs();
    off_a <= WELD_EPS && off_b <= WELD_EPS
}

fn grid_search(
    p: &Polygon,
    u: Point2,
    required_edge: Option<Segment>,
    resolution: usize,
) -> Option<(f64, Polygon)> {
    let v = u.perp();
    let vs = p.vertices();
    let fx = |pt: Point2| pt.dot(u);
    let fy = |pt: Point2| pt.dot(v);

    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for &q in vs {
        xmin = xmin.min(fx(q));
        xmax = xmax.max(fx(q));
        ymin = ymin.min(fy(q));
        ymax = ymax.max(fy(q));
    }
    let w = xmax - xmin;
    let h = ymax - ymin;
    if w <= EPS || h <= EPS {
        return None;
    }
    let cell = w.max(h) / resolution as f64;
    let nx = (w / cell).ceil() as usize;
    let ny = (h / cell).ceil() as usize;

    // In required-edge mode the base sits on the edge: pin row 0 to the edge
    // line and restrict base columns to the edge's span.
    let (base_y, col_lo, col_hi) = match required_edge {
        Some(e) => {
            let ey = fy(e.a);
            let (lo, hi) = {
                let a = fx(e.a);
                let b = fx(e.b);
                (a.min(b), a.max(b))
            };
            (Some(ey), lo, hi)
        }
        None => (None, xmin, xmax),
    };
    let y0 = base_y.unwrap_or(ymin);
    let ny = if base_y.is_some() {
        ((ymax - y0) / cell).ceil().max(1.0) as usize
    } else {
        ny
    };

    // Corner insideness on the (nx+1) x (ny+1) lattice.
    let world = |x: f64, y: f64| Point2::new(u.x * x + v.x * y, u.y * x + v.y * y);
    let mut corner_ok = alloc::vec![false; (nx + 1) * (ny + 1)];
    for j in 0..=ny {
        for i in 0..=nx {
            let pt = world(xmin + i as f64 * cell, y0 + j as f64 * cell);
            corner_ok[j * (nx + 1) + i] = p.locate(pt) != PointLocation::Outside;
        }
    }

    // Cells crossed by a polygon edge are blocked (conservative: touching
    // counts). The required edge itself, and anything collinear with it,
    // must not block its own base row.
    let mut blocked = alloc::vec![false; nx * ny];
    for edge in p.edges() {
        if let Some(req) = required_edge {
            if collinear_with(&edge, &req) {
                continue;
            }
        }
        let ea = Point2::new(fx(edge.a) - xmin, fy(edge.a) - y0);
        let eb = Point2::new(fx(edge.b) - xmin, fy(edge.b) - y0);
        let ilo = ((ea.x.min(eb.x) / cell).floor().max(0.0) as usize).min(nx.saturating_sub(1));
        let ihi = ((ea.x.max(eb.x) / cell).ceil() as usize).min(nx);
        let jlo = ((ea.y.min(eb.y) / cell).floor().max(0.0) as usize).min(ny.saturating_sub(1));
        let jhi = ((ea.y.max(eb.y) / cell).ceil() as usize).min(ny);
        for j in jlo..jhi {
            for i in ilo..ihi {
                if blocked[j * nx + i] {
                    continue;
                }
                let rx0 = i as f64 * cell;
                let ry0 = j as f64 * cell;
                if segment_hits_rect(ea, eb, rx0, ry0, rx0 + cell, ry0 + cell) {
                    blocked[j * nx + i] = true;
                }
            }
        }
    }

    let free = |i: usize, j: usize| -> bool {
        !blocked[j * nx + i]
            && corner_ok[j * (nx + 1) + i]
            && corner_ok[j * (nx + 1) + i + 1]
            && corner_ok[(j + 1) * (nx + 1) + i]
            && corner_ok[(j + 1) * (nx + 1) + i + 1]
    };

    let cells = match base_y {
        Some(_) => {
            // Histogram rooted at the base row, columns within the edge span.
            let mut heights = alloc::vec![0usize; nx];
            for i in 0..nx {
                let cx0 = xmin + i as f64 * cell;
                let cx1 = cx0 + cell;
                if cx0 < col_lo - WELD_EPS || cx1 > col_hi + WELD_EPS {
                    continue;
                }
                let mut hgt = 0;
                for j in 0..ny {
                    if free(i, hgt) && hgt == j {
                        hgt += 1;
                    } else {
                        break;
                    }
                }
                heights[i] = hgt;
            }
            largest_under_histogram(&heights).map(|(i0, i1, hgt)| (i0, i1, 0, hgt))
        }
        None => largest_free_rect(nx, ny, &free),
    };

    cells.and_then(|(i0, i1, j0, j1)| {
        let x0 = xmin + i0 as f64 * cell;
        let x1 = xmin + i1 as f64 * cell;
        let yy0 = y0 + j0 as f64 * cell;
        let yy1 = y0 + j1 as f64 * cell;
        let area = (x1 - x0) * (yy1 - yy0);
        Polygon::new(alloc::vec![
            world(x0, yy0),
            world(x1, yy0),
            world(x1, yy1),
            world(x0, yy1),
        ])
        .ok()
        .map(|poly| (area, poly))
    })
}

/// Largest rectangle of `true` cells, as half-open cell ranges
/// `(i0, i1, j0, j1)`; classic histogram-stack sweep, O(nx·ny).
fn largest_free_rect(
    nx: usize,
    ny: usize,
    free: &dyn Fn(usize, usize) -> bool,
) -> Option<(usize, usize, usize, usize)> {
    let mut heights = alloc::vec![0usize; nx];
    let mut best: Option<(usize, (usize, usize, usize, usize))> = None;
    for j in 0..ny {
        for i in 0..nx {
            heights[i] = if free(i, j) { heights[i] + 1 } else { 0 };
        }
        if let Some((i0, i1, hgt)) = largest_under_histogram(&heights) {
            let area = (i1 - i0) * hgt;
            if best.map_or(true, |(ba, _)| area > ba) {
                best = Some((area, (i0, i1, j + 1 - hgt, j + 1)));
            }
        }
    }
    best.map(|(_, r)| r)
}

/// Largest rectangle under a histogram: returns `(i0, i1, height)`.
fn largest_under_histogram(heights: &[usize]) -> Option<(usize, usize, usize)> {
    let mut stack: Vec<usize> = Vec::new();
    let mut best: Option<(usize, (usize, usize, usize))> = None;
    let n = heights.len();
    for i in 0..=n {
        let cur = if i < n { heights[i] } else { 0 };
        while let Some(&top) = stack.last() {
            if heights[top] <= cur {
                break;
            }
            stack.pop();
            let h = heights[top];
            let left = stack.last().map_or(0, |&l| l + 1);
            let area = h * (i - left);
            if h > 0 && best.map_or(true, |(ba, _)| area > ba) {
                best = Some((area, (left, i, h)));
            }
        }
        stack.push(i);
    }
    best.map(|(_, r)| r)
}

/// Closed-rectangle vs segment overlap (Liang–Barsky slab clip).
fn segment_hits_rect(a: Point2, b: Point2, x0: f64, y0: f64, x1: f64, y1: f64) -> bool {
    let d = b - a;
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    for (p, q) in [
        (-d.x, a.x - x0),
        (d.x, x1 - a.x),
        (-d.y, a.y - y0),
        (d.y, y1 - a.y),
    ] {
        if p.abs() < 1e-300 {
            if q < 0.0 {
                return false;
            }
            continue;
        }
        let r = q / p;
        if p < 0.0 {
            if r > t1 {
                return false;
            }
            t0 = t0.max(r);
        } else {
            if r < t0 {
                return false;
            }
            t1 = t1.min(r);
        }
    }
    t0 <= t1
}
