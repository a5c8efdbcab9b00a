//! Polygonal planar sets and convex geometry.

mod convex;
mod planar;
mod point;
mod polygon;
pub mod random;
mod shapes;

pub use convex::{convex_hull, hadwiger_round, ConvexPolygon, RotationRule};
pub use planar::PlanarSet;
pub use point::{point_segment_distance, segment_segment_distance, segments_intersect, Point};
pub use polygon::{BoundingBox, Polygon};
pub use shapes::{make_disk, make_ellipse, make_regular_polygon, make_rectangle, EllipseSpec};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex coordinates must be finite")]
    NonFinite,
    #[error("consecutive vertices coincide")]
    RepeatedVertex,
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("polygon boundary intersects itself")]
    SelfIntersecting,
    #[error("polygon is not strictly convex")]
    NotConvex,
    #[error("points are collinear or coincident")]
    Degenerate,
    #[error("components {0} and {1} touch or overlap")]
    Overlapping(usize, usize),
    #[error("a planar set needs at least one component")]
    Empty,
    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
}
