//! Seeded random shape generators for property checks.

use std::f64::consts::TAU;

use rand::Rng;

use super::convex::ConvexPolygon;
use super::planar::PlanarSet;
use super::point::Point;
use super::polygon::Polygon;
use super::GeometryError;

/// Convex hull of `points` uniform samples in the unit disk, centred at the origin.
pub fn random_convex_polygon<R: Rng>(rng: &mut R, points: usize) -> ConvexPolygon {
    loop {
        let cloud: Vec<Point> = (0..points.max(3))
            .map(|_| Point::polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU)))
            .collect();
        if let Ok(h) = ConvexPolygon::hull_of(&cloud) {
            if h.area() > 0.05 {
                return h.translate(-h.centroid());
            }
        }
    }
}

/// Star-shaped polygon with `n` vertices at jittered angles and radii in
/// `[1 - amplitude, 1 + amplitude]`.
pub fn random_star_polygon<R: Rng>(rng: &mut R, n: usize, amplitude: f64) -> Polygon {
    let n = n.max(3);
    let v = (0..n)
        .map(|k| {
            let t = (k as f64 + rng.gen_range(-0.3..0.3)) * TAU / n as f64;
            Point::polar(1.0 + amplitude * rng.gen_range(-1.0..1.0), t)
        })
        .collect();
    Polygon::new(v).expect("angularly ordered loop around the origin is simple")
}

/// Smooth random perturbation of the unit disk, rescaled to `area`.
///
/// The radius is `1 + sum_k (a_k cos k t + b_k sin k t)` over modes
/// `2..=modes`, normalised so the largest deviation equals `amplitude`.
pub fn perturbed_disk<R: Rng>(
    rng: &mut R,
    vertices: usize,
    amplitude: f64,
    modes: usize,
    area: f64,
) -> Result<PlanarSet, GeometryError> {
    if !(0.0..1.0).contains(&amplitude) {
        return Err(GeometryError::InvalidParameter { name: "amplitude", value: amplitude });
    }
    let coeffs: Vec<(f64, f64)> =
        (2..=modes.max(2)).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let angles: Vec<f64> = (0..vertices).map(|k| TAU * k as f64 / vertices as f64).collect();
    let bumps: Vec<f64> = angles
        .iter()
        .map(|&t| {
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| {
                    let k = (i + 2) as f64;
                    a * (k * t).cos() + b * (k * t).sin()
                })
                .sum()
        })
        .collect();
    let peak = bumps.iter().fold(0.0f64, |m, b| m.max(b.abs()));
    let norm = if peak > 0.0 { amplitude / peak } else { 0.0 };
    let v = angles
        .iter()
        .zip(&bumps)
        .map(|(&t, &b)| Point::polar(1.0 + norm * b, t))
        .collect();
    let poly = Polygon::new(v)?;
    let t = (area / poly.area()).sqrt();
    Ok(PlanarSet::from_polygon(poly.scale(t)?))
}

/// Two random polygons placed side by side with a gap in `[0.2, 1.0]`.
pub fn random_disjoint_pair<R: Rng>(rng: &mut R) -> (PlanarSet, PlanarSet) {
    let star_vertices = rng.gen_range(6..12);
    let first = random_star_polygon(rng, star_vertices, 0.3);
    let hull_points = rng.gen_range(6..14);
    let second = random_convex_polygon(rng, hull_points)
        .scale(rng.gen_range(0.6..1.2))
        .expect("positive factor")
        .to_polygon();
    let gap = rng.gen_range(0.2..1.0);
    let shift = first.bbox().max.x - second.bbox().min.x + gap;
    let second = second.translate(Point::new(shift, rng.gen_range(-0.3..0.3)));
    (PlanarSet::from_polygon(first), PlanarSet::from_polygon(second))
}
