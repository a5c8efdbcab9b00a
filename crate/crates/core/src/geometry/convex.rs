use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::planar::PlanarSet;
use super::point::Point;
use super::polygon::Polygon;
use super::GeometryError;

/// Relative cross-product tolerance below which consecutive edges merge.
const COLLINEAR_TOL: f64 = 1e-13;

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

fn strictly_convex(v: &[Point]) -> bool {
    let n = v.len();
    (0..n).all(|i| {
        let a = v[i];
        let b = v[(i + 1) % n];
        let c = v[(i + 2) % n];
        (b - a).cross(c - b) > 0.0
    })
}

/// Drops zero-length edges and vertices whose turn is negligible.
fn clean_loop(mut v: Vec<Point>) -> Vec<Point> {
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let mut keep = Vec::with_capacity(n);
        let mut changed = false;
        for i in 0..n {
            let a = v[(i + n - 1) % n];
            let b = v[i];
            let c = v[(i + 1) % n];
            let u = b - a;
            let w = c - b;
            let scale = u.norm() * w.norm();
            if scale == 0.0 || u.cross(w) <= COLLINEAR_TOL * scale {
                changed = true;
                continue;
            }
            keep.push(b);
        }
        if !changed {
            return keep;
        }
        v = keep;
    }
}

fn lowest_index(v: &[Point]) -> usize {
    (0..v.len())
        .min_by(|&i, &j| v[i].y.total_cmp(&v[j].y).then(v[i].x.total_cmp(&v[j].x)))
        .expect("nonempty")
}

/// Rotation schedule for [`hadwiger_round`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationRule {
    /// Angle `(k - 1) * pi * (3 - sqrt 5)` for the `k`-th copy.
    GoldenAngle,
    /// Independent uniform angles drawn from a seeded stream; the first copy is unrotated.
    RandomSeeded(u64),
}

impl ConvexPolygon {
    pub fn new(mut vertices: Vec<Point>) -> Result<Self, GeometryError> {
        let poly = Polygon::new(std::mem::take(&mut vertices))?;
        let v = poly.vertices().to_vec();
        if !strictly_convex(&v) {
            return Err(GeometryError::NotConvex);
        }
        Ok(Self { vertices: v })
    }

    fn from_raw(v: Vec<Point>) -> Result<Self, GeometryError> {
        let v = clean_loop(v);
        if v.len() < 3 {
            return Err(GeometryError::Degenerate);
        }
        Ok(Self { vertices: v })
    }

    /// Convex hull of a point cloud (monotone chain); collinear points are dropped.
    pub fn hull_of(points: &[Point]) -> Result<Self, GeometryError> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup();
        if pts.len() < 3 {
            return Err(GeometryError::Degenerate);
        }
        let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &Point>> =
                if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
            for &p in iter {
                while hull.len() >= start + 2 {
                    let a = hull[hull.len() - 2];
                    let b = hull[hull.len() - 1];
                    if (b - a).cross(p - b) <= 0.0 {
                        hull.pop();
                    } else {
                        break;
                    }
                }
                hull.push(p);
            }
            hull.pop();
        }
        if hull.len() < 3 {
            return Err(GeometryError::Degenerate);
        }
        Ok(Self { vertices: hull })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn to_polygon(&self) -> Polygon {
        Polygon::from_ccw_unchecked(self.vertices.clone())
    }

    pub fn to_planar_set(&self) -> PlanarSet {
        PlanarSet::from_polygon(self.to_polygon())
    }

    pub fn perimeter(&self) -> f64 {
        self.to_polygon().perimeter()
    }

    pub fn area(&self) -> f64 {
        self.to_polygon().area()
    }

    pub fn centroid(&self) -> Point {
        self.to_polygon().centroid()
    }

    /// Dilation about the origin. `t = 0` collapses the set and is rejected.
    pub fn scale(&self, t: f64) -> Result<Self, GeometryError> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(GeometryError::InvalidParameter { name: "scale factor", value: t });
        }
        Ok(Self { vertices: self.vertices.iter().map(|&p| p * t).collect() })
    }

    /// Rotation about the origin.
    pub fn rotate(&self, angle: f64) -> Self {
        Self { vertices: self.vertices.iter().map(|p| p.rotate(angle)).collect() }
    }

    pub fn translate(&self, v: Point) -> Self {
        Self { vertices: self.vertices.iter().map(|&p| p + v).collect() }
    }

    /// `{x + y : x in self, y in other}` by merging edge sequences in angular order.
    pub fn minkowski_sum(&self, other: &ConvexPolygon) -> ConvexPolygon {
        let (p, q) = (&self.vertices, &other.vertices);
        let (n, m) = (p.len(), q.len());
        let (ip, iq) = (lowest_index(p), lowest_index(q));
        let pv = |k: usize| p[(ip + k) % n];
        let qv = |k: usize| q[(iq + k) % m];
        let mut out = Vec::with_capacity(n + m);
        let (mut i, mut j) = (0, 0);
        while i < n || j < m {
            out.push(pv(i) + qv(j));
            let ep = pv(i + 1) - pv(i);
            let eq = qv(j + 1) - qv(j);
            let c = if i == n {
                -1.0
            } else if j == m {
                1.0
            } else {
                ep.cross(eq)
            };
            if c >= 0.0 && i < n {
                i += 1;
            }
            if c <= 0.0 && j < m {
                j += 1;
            }
        }
        Self::from_raw(out).expect("sum of two convex polygons has interior")
    }

    /// Ratio of the largest vertex distance from the centroid to the smallest
    /// distance from the centroid to an edge line. Equals 1 only for a disk.
    pub fn roundness(&self) -> f64 {
        let c = self.centroid();
        let n = self.vertices.len();
        let outer = self.vertices.iter().map(|v| v.distance(c)).fold(0.0, f64::max);
        let inner = (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                (b - a).cross(c - a) / a.distance(b)
            })
            .fold(f64::INFINITY, f64::min);
        outer / inner
    }
}

/// Convex hull of every vertex of `s`.
pub fn convex_hull(s: &PlanarSet) -> Result<ConvexPolygon, GeometryError> {
    ConvexPolygon::hull_of(&s.vertices().collect::<Vec<_>>())
}

/// The sequence of normalised Minkowski rotation means
/// `(T_1 p + ... + T_n p) / n` for `n = 1..=steps`.
pub fn hadwiger_round(
    p: &ConvexPolygon,
    steps: usize,
    rule: RotationRule,
) -> Result<Vec<ConvexPolygon>, GeometryError> {
    if steps == 0 {
        return Err(GeometryError::InvalidParameter { name: "steps", value: 0.0 });
    }
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut rng = match rule {
        RotationRule::RandomSeeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        RotationRule::GoldenAngle => None,
    };
    let mut sum = p.clone();
    let mut out = vec![p.clone()];
    for k in 2..=steps {
        let angle = match rng.as_mut() {
            Some(r) => r.gen_range(0.0..std::f64::consts::TAU),
            None => (k - 1) as f64 * golden,
        };
        sum = sum.minkowski_sum(&p.rotate(angle));
        out.push(sum.scale(1.0 / k as f64)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(w: f64, h: f64) -> ConvexPolygon {
        ConvexPolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(w, 0.0),
            Point::new(w, h),
            Point::new(0.0, h),
        ])
        .unwrap()
    }

    #[test]
    fn square_plus_square() {
        let s = rect(1.0, 1.0).minkowski_sum(&rect(1.0, 1.0));
        assert_eq!(s.vertices().len(), 4);
        assert!((s.area() - 4.0).abs() < 1e-12);
        assert!((s.perimeter() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn square_plus_thin_rectangle() {
        let s = rect(1.0, 1.0).minkowski_sum(&rect(1.0, 0.01));
        let bb = s.to_polygon().bbox();
        assert!((bb.width() - 2.0).abs() < 1e-12);
        assert!((bb.height() - 1.01).abs() < 1e-12);
        assert_eq!(s.vertices().len(), 4);
    }

    #[test]
    fn rejects_nonconvex_and_zero_scale() {
        let l = vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 2.0),
            Point::new(0.0, 2.0),
        ];
        assert_eq!(ConvexPolygon::new(l), Err(GeometryError::NotConvex));
        assert!(rect(1.0, 1.0).scale(0.0).is_err());
        assert!((rect(1.0, 1.0).scale(2.0).unwrap().perimeter() - 8.0).abs() < 1e-15);
    }

    #[test]
    fn quarter_turn_is_same_square() {
        let s = rect(2.0, 2.0).translate(Point::new(-1.0, -1.0));
        let r = s.rotate(std::f64::consts::FRAC_PI_2);
        for v in r.vertices() {
            assert!(s.vertices().iter().any(|w| w.distance(*v) < 1e-12));
        }
    }

    #[test]
    fn hull_rejects_collinear() {
        let pts: Vec<Point> = (0..5).map(|i| Point::new(i as f64, 2.0 * i as f64)).collect();
        assert_eq!(ConvexPolygon::hull_of(&pts), Err(GeometryError::Degenerate));
    }

    #[test]
    fn hadwiger_rectangle_rounds() {
        let r = rect(3.0, 1.0);
        let seq = hadwiger_round(&r, 64, RotationRule::GoldenAngle).unwrap();
        assert_eq!(seq.len(), 64);
        for s in &seq {
            assert!((s.perimeter() - 8.0).abs() < 1e-9);
        }
        assert!(seq.last().unwrap().roundness() <= 1.05);
        assert!(seq.last().unwrap().roundness() <= seq[0].roundness());
    }

    #[test]
    fn hadwiger_random_rule_is_deterministic() {
        let r = rect(3.0, 1.0);
        let a = hadwiger_round(&r, 8, RotationRule::RandomSeeded(7)).unwrap();
        let b = hadwiger_round(&r, 8, RotationRule::RandomSeeded(7)).unwrap();
        assert_eq!(a, b);
    }
}
