use super::point::{point_segment_distance, segment_segment_distance, segments_intersect, Point};
use super::GeometryError;

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundingBox {
    pub min: Point,
    pub max: Point,
}

impl BoundingBox {
    pub fn of(points: &[Point]) -> Self {
        let mut min = Point::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        Self { min, max }
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            min: Point::new(self.min.x.min(other.min.x), self.min.y.min(other.min.y)),
            max: Point::new(self.max.x.max(other.max.x), self.max.y.max(other.max.y)),
        }
    }

    pub fn center(&self) -> Point {
        (self.min + self.max) * 0.5
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn gap_to(&self, other: &Self) -> f64 {
        let dx = (other.min.x - self.max.x).max(self.min.x - other.max.x).max(0.0);
        let dy = (other.min.y - self.max.y).max(self.min.y - other.max.y).max(0.0);
        dx.hypot(dy)
    }
}

/// A simple polygon stored counterclockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>()
}

fn has_self_intersection(v: &[Point]) -> bool {
    let n = v.len();
    let mut edges: Vec<(f64, f64, usize)> = (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            (a.x.min(b.x), a.x.max(b.x), i)
        })
        .collect();
    edges.sort_by(|p, q| p.0.total_cmp(&q.0));
    for (k, &(_, hi, i)) in edges.iter().enumerate() {
        for &(lo2, _, j) in &edges[k + 1..] {
            if lo2 > hi {
                break;
            }
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            let (a, b) = (v[i], v[(i + 1) % n]);
            let (c, d) = (v[j], v[(j + 1) % n]);
            if adjacent {
                // neighbours share one vertex; they may not fold back onto each other
                let (shared, p, q) = if (i + 1) % n == j { (b, a, d) } else { (a, b, c) };
                let u = p - shared;
                let w = q - shared;
                if u.cross(w) == 0.0 && u.dot(w) > 0.0 {
                    return true;
                }
            } else if segments_intersect(a, b, c, d) {
                return true;
            }
        }
    }
    false
}

impl Polygon {
    /// Validates a vertex loop and orients it counterclockwise.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self, GeometryError> {
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let n = vertices.len();
        if (0..n).any(|i| vertices[i] == vertices[(i + 1) % n]) {
            return Err(GeometryError::RepeatedVertex);
        }
        let a = signed_area(&vertices);
        if a == 0.0 || !a.is_finite() {
            return Err(GeometryError::ZeroArea);
        }
        if a < 0.0 {
            vertices.reverse();
        }
        if has_self_intersection(&vertices) {
            return Err(GeometryError::SelfIntersecting);
        }
        Ok(Self { vertices })
    }

    /// Caller guarantees a simple counterclockwise loop.
    pub(crate) fn from_ccw_unchecked(vertices: Vec<Point>) -> Self {
        debug_assert!(signed_area(&vertices) > 0.0);
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as `(start, end)` pairs in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.distance(b)).sum()
    }

    pub fn centroid(&self) -> Point {
        let mut c = Point::ORIGIN;
        let mut twice_area = 0.0;
        for (a, b) in self.edges() {
            let w = a.cross(b);
            twice_area += w;
            c += (a + b) * w;
        }
        c * (1.0 / (3.0 * twice_area))
    }

    pub fn bbox(&self) -> BoundingBox {
        BoundingBox::of(&self.vertices)
    }

    /// Even-odd point containment; boundary points count as inside.
    pub fn contains(&self, p: Point) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if point_segment_distance(p, a, b) == 0.0 {
                return true;
            }
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Euclidean distance from `p` to the boundary loop.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.edges()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance between the two boundary loops.
    pub fn boundary_gap(&self, other: &Polygon) -> f64 {
        let mut best = f64::INFINITY;
        for (a, b) in self.edges() {
            for (c, d) in other.edges() {
                best = best.min(segment_segment_distance(a, b, c, d));
            }
        }
        best
    }

    /// Distance between the two closed regions; zero when they meet.
    pub fn distance_to(&self, other: &Polygon) -> f64 {
        if self.contains(other.vertices[0]) || other.contains(self.vertices[0]) {
            return 0.0;
        }
        self.boundary_gap(other)
    }

    pub fn translate(&self, v: Point) -> Self {
        Self { vertices: self.vertices.iter().map(|&p| p + v).collect() }
    }

    /// Dilation about the origin; `t` must be positive.
    pub fn scale(&self, t: f64) -> Result<Self, GeometryError> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(GeometryError::InvalidParameter { name: "scale factor", value: t });
        }
        Ok(Self { vertices: self.vertices.iter().map(|&p| p * t).collect() })
    }

    pub fn rotate(&self, angle: f64) -> Self {
        Self { vertices: self.vertices.iter().map(|p| p.rotate(angle)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(c: &[(f64, f64)]) -> Vec<Point> {
        c.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn orientation_is_normalised() {
        let p = Polygon::new(pts(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)])).unwrap();
        assert_eq!(p.area(), 1.0);
        assert_eq!(p.perimeter(), 4.0);
        let c = p.centroid();
        assert!((c.x - 0.5).abs() < 1e-15 && (c.y - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bow_tie() {
        let r = Polygon::new(pts(&[(0.0, 0.0), (2.0, 1.0), (2.0, 0.0), (0.0, 2.0)]));
        assert_eq!(r, Err(GeometryError::SelfIntersecting));
    }

    #[test]
    fn rejects_degenerate() {
        assert!(matches!(
            Polygon::new(pts(&[(0.0, 0.0), (1.0, 0.0)])),
            Err(GeometryError::TooFewVertices(2))
        ));
        assert_eq!(
            Polygon::new(pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])),
            Err(GeometryError::ZeroArea)
        );
    }

    #[test]
    fn containment_and_distance() {
        let p = Polygon::new(pts(&[(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)])).unwrap();
        assert!(p.contains(Point::new(1.0, 1.0)));
        assert!(p.contains(Point::new(0.0, 1.0)));
        assert!(!p.contains(Point::new(3.0, 1.0)));
        assert_eq!(p.boundary_distance(Point::new(1.0, 0.5)), 0.5);
        let q = p.translate(Point::new(5.0, 0.0));
        assert_eq!(p.distance_to(&q), 3.0);
        let inner = Polygon::new(pts(&[(0.5, 0.5), (1.0, 0.5), (1.0, 1.0)])).unwrap();
        assert_eq!(p.distance_to(&inner), 0.0);
    }
}
