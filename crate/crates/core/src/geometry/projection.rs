//! WGS84 elliptical Mercator projection, forward and inverse.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::{GeometryError, Point2};
use crate::math;

/// WGS84 semi-major axis, meters.
pub const WGS84_A: f64 = 6_378_137.0;
/// WGS84 flattening.
pub const WGS84_F: f64 = 1.0 / 298.257_223_563;

fn eccentricity() -> f64 {
    math::sqrt(WGS84_F * (2.0 - WGS84_F))
}

/// Latitudes beyond this diverge too close to the poles to project.
pub const MAX_PROJECTED_LATITUDE: f64 = 89.5;

/// A WGS84 geographic coordinate in decimal degrees.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeoCoordinate {
    latitude: f64,
    longitude: f64,
}

impl GeoCoordinate {
    pub fn new(latitude: f64, longitude: f64) -> Result<Self, GeometryError> {
        if !latitude.is_finite() || !longitude.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if !(-90.0..=90.0).contains(&latitude) {
            return Err(GeometryError::CoordinateOutOfRange("latitude outside [-90, 90]"));
        }
        if !(-180.0..=180.0).contains(&longitude) {
            return Err(GeometryError::CoordinateOutOfRange(
                "longitude outside [-180, 180]",
            ));
        }
        Ok(GeoCoordinate { latitude, longitude })
    }

    pub fn latitude(&self) -> f64 {
        self.latitude
    }

    pub fn longitude(&self) -> f64 {
        self.longitude
    }
}

/// Forward elliptical (ellipsoidal) Mercator projection to plane meters.
///
/// `x = a·λ`; `y = a·ln(tan(π/4 + φ/2)·((1 − e·sinφ)/(1 + e·sinφ))^(e/2))`.
/// Fails for latitudes beyond [`MAX_PROJECTED_LATITUDE`].
pub fn project_elliptical_mercator(g: &GeoCoordinate) -> Result<Point2, GeometryError> {
    if g.latitude.abs() > MAX_PROJECTED_LATITUDE {
        return Err(GeometryError::LatitudeOutOfDomain(g.latitude));
    }
    let e = eccentricity();
    let lam = g.longitude.to_radians();
    let phi = g.latitude.to_radians();
    let con = e * math::sin(phi);
    let ts = math::tan(FRAC_PI_4 + phi / 2.0) * math::powf((1.0 - con) / (1.0 + con), e / 2.0);
    Ok(Point2::new(WGS84_A * lam, WGS84_A * math::ln(ts)))
}

/// Inverse elliptical Mercator: plane meters back to geographic degrees.
///
/// The latitude is recovered by fixed-point iteration, which converges in a
/// handful of steps everywhere in the projectable domain.
pub fn inverse_elliptical_mercator(p: Point2) -> GeoCoordinate {
    let e = eccentricity();
    let lon = (p.x / WGS84_A).to_degrees();
    let ts = math::exp(-p.y / WGS84_A);
    let mut phi = FRAC_PI_2 - 2.0 * math::atan(ts);
    for _ in 0..16 {
        let con = e * math::sin(phi);
        let next =
            FRAC_PI_2 - 2.0 * math::atan(ts * math::powf((1.0 - con) / (1.0 + con), e / 2.0));
        let delta = (next - phi).abs();
        phi = next;
        if delta < 1e-15 {
            break;
        }
    }
    GeoCoordinate {
        latitude: phi.to_degrees(),
        longitude: lon,
    }
}
