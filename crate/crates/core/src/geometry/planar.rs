use super::point::Point;
use super::polygon::{BoundingBox, Polygon};
use super::GeometryError;

/// A finite union of pairwise separated simple polygons.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarSet {
    components: Vec<Polygon>,
}

impl PlanarSet {
    pub fn new(components: Vec<Polygon>) -> Result<Self, GeometryError> {
        if components.is_empty() {
            return Err(GeometryError::Empty);
        }
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                if components[i].distance_to(&components[j]) <= 0.0 {
                    return Err(GeometryError::Overlapping(i, j));
                }
            }
        }
        Ok(Self { components })
    }

    pub fn from_polygon(p: Polygon) -> Self {
        Self { components: vec![p] }
    }

    pub fn components(&self) -> &[Polygon] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn perimeter(&self) -> f64 {
        self.components.iter().map(Polygon::perimeter).sum()
    }

    pub fn area(&self) -> f64 {
        self.components.iter().map(Polygon::area).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        self.components.iter().flat_map(|c| c.vertices().iter().copied())
    }

    /// Largest vertex separation.
    pub fn diameter(&self) -> f64 {
        let v: Vec<Point> = self.vertices().collect();
        let mut best: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max(v[i].distance(v[j]));
            }
        }
        best
    }

    pub fn bbox(&self) -> BoundingBox {
        self.components.iter().map(Polygon::bbox).reduce(BoundingBox::merge).expect("nonempty")
    }

    pub fn centroid(&self) -> Point {
        let mut c = Point::ORIGIN;
        for p in &self.components {
            c += p.centroid() * p.area();
        }
        c * (1.0 / self.area())
    }

    pub fn contains(&self, p: Point) -> bool {
        self.components.iter().any(|c| c.contains(p))
    }

    /// Index of the component containing `p`, if any.
    pub fn component_of(&self, p: Point) -> Option<usize> {
        self.components.iter().position(|c| c.contains(p))
    }

    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.components.iter().map(|c| c.boundary_distance(p)).fold(f64::INFINITY, f64::min)
    }

    /// Gap between two sets; touching or overlapping sets are rejected.
    pub fn set_distance(&self, other: &PlanarSet) -> Result<f64, GeometryError> {
        let mut best = f64::INFINITY;
        for (i, a) in self.components.iter().enumerate() {
            for (j, b) in other.components.iter().enumerate() {
                let d = a.distance_to(b);
                if d <= 0.0 {
                    return Err(GeometryError::Overlapping(i, j));
                }
                best = best.min(d);
            }
        }
        Ok(best)
    }

    pub fn union(&self, other: &PlanarSet) -> Result<PlanarSet, GeometryError> {
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().cloned());
        PlanarSet::new(comps)
    }

    pub fn translate(&self, v: Point) -> Self {
        Self { components: self.components.iter().map(|c| c.translate(v)).collect() }
    }

    pub fn scale(&self, t: f64) -> Result<Self, GeometryError> {
        Ok(Self {
            components: self.components.iter().map(|c| c.scale(t)).collect::<Result<_, _>>()?,
        })
    }

    pub fn rotate(&self, angle: f64) -> Self {
        Self { components: self.components.iter().map(|c| c.rotate(angle)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square_at(x: f64, y: f64) -> Polygon {
        Polygon::new(vec![
            Point::new(x, y),
            Point::new(x + 1.0, y),
            Point::new(x + 1.0, y + 1.0),
            Point::new(x, y + 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn square_basics() {
        let s = PlanarSet::from_polygon(unit_square_at(0.0, 0.0));
        assert_eq!(s.perimeter(), 4.0);
        assert_eq!(s.area(), 1.0);
        assert!((s.diameter() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn two_squares_add() {
        let s = PlanarSet::new(vec![unit_square_at(0.0, 0.0), unit_square_at(3.0, 0.0)]).unwrap();
        assert_eq!(s.perimeter(), 8.0);
        assert_eq!(s.area(), 2.0);
    }

    #[test]
    fn distance_and_overlap() {
        let a = PlanarSet::from_polygon(unit_square_at(0.0, 0.0));
        let b = a.translate(Point::new(3.0, 0.0));
        assert_eq!(a.set_distance(&b).unwrap(), 2.0);
        let touching = a.translate(Point::new(1.0, 0.0));
        assert!(a.set_distance(&touching).is_err());
        assert!(a.union(&touching).is_err());
        let overlapping = a.translate(Point::new(0.5, 0.5));
        assert!(PlanarSet::new(vec![unit_square_at(0.0, 0.0), unit_square_at(0.5, 0.5)]).is_err());
        assert!(a.set_distance(&overlapping).is_err());
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(PlanarSet::new(vec![]), Err(GeometryError::Empty));
    }
}
