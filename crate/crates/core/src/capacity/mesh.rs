use std::sync::Arc;

use crate::geometry::{PlanarSet, Point, Polygon};

use super::CapacityError;

/// Fewest cells a mesh may have.
pub const MIN_CELLS: usize = 16;
/// Boundary band, in coarse cell sizes, refined by [`Grading::BoundaryGraded`].
const GRADING_BAND: f64 = 4.0;
const SLIVER_FRACTION: f64 = 1e-10;
const MAX_SUBDIVISION: u8 = 3;
/// Lattice coordinates are stored in units of `h / 2^LATTICE_BITS`.
pub(crate) const LATTICE_BITS: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Grading {
    Uniform,
    #[default]
    BoundaryGraded,
}

/// One piece of the discretisation: a lattice square clipped to a component.
#[derive(Clone, Debug)]
pub struct Cell {
    pub centroid: Point,
    pub area: f64,
    /// Side of the lattice square the cell was cut from.
    pub size: f64,
    /// Counterclockwise outline.
    pub outline: Vec<Point>,
    pub component: usize,
    pub boundary_distance: f64,
    /// `(level, ix, iy)` of the lower-left corner for uncut squares.
    pub square: Option<LatticeSquare>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSquare {
    pub level: u8,
    pub ix: i64,
    pub iy: i64,
}

#[derive(Clone, Debug)]
pub struct Mesh {
    cells: Vec<Cell>,
    parent: Arc<PlanarSet>,
    resolution: f64,
}

fn clip_half_plane(subject: &[Point], keep: impl Fn(Point) -> f64) -> Vec<Point> {
    let n = subject.len();
    let mut out = Vec::with_capacity(n + 4);
    for k in 0..n {
        let cur = subject[k];
        let next = subject[(k + 1) % n];
        let (fc, fnx) = (keep(cur), keep(next));
        if fc >= 0.0 {
            out.push(cur);
        }
        if (fc >= 0.0) != (fnx >= 0.0) {
            let t = fc / (fc - fnx);
            out.push(cur + (next - cur) * t);
        }
    }
    out
}

/// Sutherland-Hodgman clip of `polygon` to the axis-aligned square.
fn clip_to_square(polygon: &[Point], lo: Point, side: f64) -> Vec<Point> {
    let hi = Point::new(lo.x + side, lo.y + side);
    let mut v = clip_half_plane(polygon, |p| p.x - lo.x);
    v = clip_half_plane(&v, |p| hi.x - p.x);
    v = clip_half_plane(&v, |p| p.y - lo.y);
    clip_half_plane(&v, |p| hi.y - p.y)
}

fn loop_area_centroid(v: &[Point]) -> (f64, Point) {
    let n = v.len();
    let mut twice = 0.0;
    let mut c = Point::ORIGIN;
    for k in 0..n {
        let (a, b) = (v[k], v[(k + 1) % n]);
        let w = a.cross(b);
        twice += w;
        c += (a + b) * w;
    }
    if twice == 0.0 {
        return (0.0, Point::ORIGIN);
    }
    (0.5 * twice, c * (1.0 / (3.0 * twice)))
}

fn square_outline(lo: Point, side: f64) -> Vec<Point> {
    vec![
        lo,
        Point::new(lo.x + side, lo.y),
        Point::new(lo.x + side, lo.y + side),
        Point::new(lo.x, lo.y + side),
    ]
}

struct Builder<'a> {
    set: &'a PlanarSet,
    anchor: Point,
    h: f64,
    cells: Vec<Cell>,
}

impl Builder<'_> {
    fn corner(&self, sq: LatticeSquare) -> Point {
        let unit = self.h / f64::from(1u32 << LATTICE_BITS);
        Point::new(self.anchor.x + sq.ix as f64 * unit, self.anchor.y + sq.iy as f64 * unit)
    }

    fn side(&self, level: u8) -> f64 {
        self.h / f64::from(1u32 << level)
    }

    fn children(sq: LatticeSquare) -> [LatticeSquare; 4] {
        let step = 1i64 << (LATTICE_BITS - sq.level - 1);
        let level = sq.level + 1;
        [(0, 0), (1, 0), (0, 1), (1, 1)].map(|(a, b)| LatticeSquare {
            level,
            ix: sq.ix + a * step,
            iy: sq.iy + b * step,
        })
    }

    /// Cuts one lattice square against one component.
    fn emit(&mut self, sq: LatticeSquare, component: usize, poly: &Polygon) -> Result<(), CapacityError> {
        let lo = self.corner(sq);
        let side = self.side(sq.level);
        let centre = Point::new(lo.x + 0.5 * side, lo.y + 0.5 * side);
        let bdist = poly.boundary_distance(centre);
        if bdist > side * std::f64::consts::FRAC_1_SQRT_2 {
            if poly.contains(centre) {
                self.cells.push(Cell {
                    centroid: centre,
                    area: side * side,
                    size: side,
                    outline: square_outline(lo, side),
                    component,
                    boundary_distance: self.set.boundary_distance(centre),
                    square: Some(sq),
                });
            }
            return Ok(());
        }
        let outline = clip_to_square(poly.vertices(), lo, side);
        if outline.len() < 3 {
            return Ok(());
        }
        let (area, centroid) = loop_area_centroid(&outline);
        if area < SLIVER_FRACTION * self.h * self.h {
            return Ok(());
        }
        let mut centroid = centroid;
        if !poly.contains(centroid) {
            if sq.level < MAX_SUBDIVISION {
                for child in Self::children(sq) {
                    self.emit(child, component, poly)?;
                }
                return Ok(());
            }
            centroid = interior_point(&outline, poly)
                .ok_or(CapacityError::CentroidOutside { x: centroid.x, y: centroid.y })?;
        }
        self.cells.push(Cell {
            centroid,
            area,
            size: side,
            outline,
            component,
            boundary_distance: self.set.boundary_distance(centroid),
            square: None,
        });
        Ok(())
    }
}

/// Centroid of the largest fan triangle of `outline` that lies in `poly`,
/// for clipped pieces whose own centroid falls outside.
fn interior_point(outline: &[Point], poly: &Polygon) -> Option<Point> {
    let o = outline[0];
    outline
        .windows(2)
        .skip(1)
        .map(|w| ((w[0] - o).cross(w[1] - o).abs(), Point::new((o.x + w[0].x + w[1].x) / 3.0, (o.y + w[0].y + w[1].y) / 3.0)))
        .filter(|(a, c)| *a > 0.0 && poly.contains(*c))
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, c)| c)
}

impl Mesh {
    /// Lattice mesh of squares of side `h`, anchored at the centre of the
    /// bounding box, clipped to each component.
    pub fn build(set: Arc<PlanarSet>, h: f64, grading: Grading) -> Result<Self, CapacityError> {
        let diameter = set.diameter();
        if !(h > 0.0 && h < diameter) {
            return Err(CapacityError::Resolution { h, diameter });
        }
        let bb = set.bbox();
        let anchor = bb.center();
        let nx = (0.5 * bb.width() / h).ceil() as i64 + 1;
        let ny = (0.5 * bb.height() / h).ceil() as i64 + 1;
        let mut b = Builder { set: &set, anchor, h, cells: Vec::new() };
        let coarse = 1i64 << LATTICE_BITS;
        for (component, poly) in set.components().iter().enumerate() {
            let pb = poly.bbox();
            for i in -nx..nx {
                for j in -ny..ny {
                    let sq = LatticeSquare { level: 0, ix: i * coarse, iy: j * coarse };
                    let lo = b.corner(sq);
                    if lo.x > pb.max.x || lo.y > pb.max.y || lo.x + h < pb.min.x || lo.y + h < pb.min.y {
                        continue;
                    }
                    let centre = Point::new(lo.x + 0.5 * h, lo.y + 0.5 * h);
                    let near_boundary = poly.boundary_distance(centre) < GRADING_BAND * h;
                    if grading == Grading::BoundaryGraded && near_boundary {
                        for child in Builder::children(sq) {
                            b.emit(child, component, poly)?;
                        }
                    } else {
                        b.emit(sq, component, poly)?;
                    }
                }
            }
        }
        let cells = b.cells;
        if cells.len() < MIN_CELLS {
            return Err(CapacityError::TooFewCells { cells: cells.len(), minimum: MIN_CELLS });
        }
        Ok(Self { cells, parent: set, resolution: h })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn parent(&self) -> &PlanarSet {
        &self.parent
    }

    pub fn parent_arc(&self) -> &Arc<PlanarSet> {
        &self.parent
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn total_area(&self) -> f64 {
        self.cells.iter().map(|c| c.area).sum()
    }

    /// Cells of one component, re-parented to that component alone.
    pub fn restrict(&self, component: usize) -> Result<Self, CapacityError> {
        let poly = self
            .parent
            .components()
            .get(component)
            .ok_or(CapacityError::NoSuchComponent(component))?;
        let cells: Vec<Cell> = self
            .cells
            .iter()
            .filter(|c| c.component == component)
            .cloned()
            .map(|mut c| {
                c.component = 0;
                c
            })
            .collect();
        if cells.len() < MIN_CELLS {
            return Err(CapacityError::TooFewCells { cells: cells.len(), minimum: MIN_CELLS });
        }
        Ok(Self {
            cells,
            parent: Arc::new(PlanarSet::from_polygon(poly.clone())),
            resolution: self.resolution,
        })
    }

    /// Indices of the cells belonging to `component`.
    pub fn component_cells(&self, component: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].component == component).collect()
    }

    /// The same mesh dilated about the origin.
    pub fn scaled(&self, t: f64) -> Result<Self, CapacityError> {
        let parent = Arc::new(self.parent.scale(t)?);
        let cells = self
            .cells
            .iter()
            .map(|c| Cell {
                centroid: c.centroid * t,
                area: c.area * t * t,
                size: c.size * t,
                outline: c.outline.iter().map(|&p| p * t).collect(),
                component: c.component,
                boundary_distance: c.boundary_distance * t,
                square: c.square,
            })
            .collect();
        Ok(Self { cells, parent, resolution: self.resolution * t })
    }
}
