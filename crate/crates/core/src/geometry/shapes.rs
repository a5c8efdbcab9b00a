use std::f64::consts::TAU;

use super::planar::PlanarSet;
use super::point::Point;
use super::polygon::Polygon;
use super::GeometryError;

pub const MIN_ROUND_VERTICES: usize = 16;

/// Ellipse with major semi-axis `a` along x and eccentricity `e`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseSpec {
    a: f64,
    e: f64,
}

impl EllipseSpec {
    pub fn new(a: f64, e: f64) -> Result<Self, GeometryError> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(GeometryError::InvalidParameter { name: "semi-axis", value: a });
        }
        if !(0.0..1.0).contains(&e) {
            return Err(GeometryError::InvalidParameter { name: "eccentricity", value: e });
        }
        Ok(Self { a, e })
    }

    pub fn major(&self) -> f64 {
        self.a
    }

    pub fn minor(&self) -> f64 {
        self.a * (1.0 - self.e * self.e).sqrt()
    }

    pub fn eccentricity(&self) -> f64 {
        self.e
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.a * self.minor()
    }
}

fn check_vertex_count(n: usize) -> Result<(), GeometryError> {
    if n < MIN_ROUND_VERTICES {
        return Err(GeometryError::InvalidParameter { name: "vertex count", value: n as f64 });
    }
    Ok(())
}

/// Inscribed polygon with vertices at equally spaced eccentric anomalies.
pub fn make_ellipse(spec: EllipseSpec, center: Point, n: usize) -> Result<PlanarSet, GeometryError> {
    check_vertex_count(n)?;
    let (a, b) = (spec.major(), spec.minor());
    let v = (0..n)
        .map(|k| {
            let t = TAU * k as f64 / n as f64;
            center + Point::new(a * t.cos(), b * t.sin())
        })
        .collect();
    Ok(PlanarSet::from_polygon(Polygon::from_ccw_unchecked(v)))
}

pub fn make_disk(radius: f64, center: Point, n: usize) -> Result<PlanarSet, GeometryError> {
    make_ellipse(EllipseSpec::new(radius, 0.0)?, center, n)
}

/// Regular `n`-gon inscribed in the circle of the given radius, any `n >= 3`.
pub fn make_regular_polygon(radius: f64, n: usize) -> Result<Polygon, GeometryError> {
    if !(radius > 0.0) {
        return Err(GeometryError::InvalidParameter { name: "radius", value: radius });
    }
    Polygon::new((0..n).map(|k| Point::polar(radius, TAU * k as f64 / n as f64)).collect())
}

/// Axis-aligned rectangle centred at the origin.
pub fn make_rectangle(width: f64, height: f64) -> Result<Polygon, GeometryError> {
    let (w, h) = (width / 2.0, height / 2.0);
    Polygon::new(vec![Point::new(-w, -h), Point::new(w, -h), Point::new(w, h), Point::new(-w, h)])
}
