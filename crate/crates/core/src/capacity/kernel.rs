use std::collections::HashMap;

use super::mesh::{Cell, LatticeSquare, Mesh, LATTICE_BITS};
use super::potential::{pair_integral, SQUARE_SELF_ENERGY};
use super::CapacityError;
use crate::geometry::Point;

/// Pairs closer than this many cell sizes use cell-averaged interactions.
pub const NEAR_FIELD_RADIUS: f64 = 2.5;
/// Largest mesh stored as a dense matrix.
pub const DENSE_LIMIT: usize = 6000;
const QUADRATURE_ORDER: usize = 8;

#[derive(Clone, Debug)]
enum Storage {
    Dense(Vec<f64>),
    Implicit {
        /// Per row: `(column, averaged value - 1/distance)`.
        corrections: Vec<Vec<(usize, f64)>>,
    },
}

/// Symmetric interaction matrix `K_ij = (1/(a_i a_j)) int_i int_j 1/|x-y|`,
/// evaluated exactly in the near field and by centroid distance elsewhere.
#[derive(Clone, Debug)]
pub struct KernelMatrix {
    centroids: Vec<Point>,
    diagonal: Vec<f64>,
    storage: Storage,
}

impl KernelMatrix {
    pub fn len(&self) -> usize {
        self.centroids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centroids.is_empty()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let n = self.len();
        match &self.storage {
            Storage::Dense(a) => a[i * n + j],
            Storage::Implicit { corrections } => {
                if i == j {
                    return self.diagonal[i];
                }
                let base = 1.0 / self.centroids[i].distance(self.centroids[j]);
                base + corrections[i].iter().find(|(c, _)| *c == j).map_or(0.0, |(_, v)| *v)
            }
        }
    }

    /// `y = K x`.
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.len();
        match &self.storage {
            Storage::Dense(a) => {
                for (i, yi) in y.iter_mut().enumerate() {
                    let row = &a[i * n..(i + 1) * n];
                    *yi = row.iter().zip(x).map(|(k, v)| k * v).sum();
                }
            }
            Storage::Implicit { corrections } => {
                for i in 0..n {
                    let ci = self.centroids[i];
                    let mut s = self.diagonal[i] * x[i];
                    for j in 0..n {
                        if j != i {
                            s += x[j] / ci.distance(self.centroids[j]);
                        }
                    }
                    for &(j, v) in &corrections[i] {
                        s += v * x[j];
                    }
                    y[i] = s;
                }
            }
        }
    }

    pub fn quadratic_form(&self, w: &[f64]) -> f64 {
        let mut kw = vec![0.0; self.len()];
        self.apply(w, &mut kw);
        w.iter().zip(&kw).map(|(a, b)| a * b).sum()
    }
}

type PairKey = (u8, u8, i64, i64);

struct NearField<'a> {
    cells: &'a [Cell],
    resolution: f64,
    lattice_unit: f64,
    cache: HashMap<PairKey, f64>,
}

impl NearField<'_> {
    fn canonical_square(&self, sq: LatticeSquare, origin: LatticeSquare) -> Vec<Point> {
        let lo = Point::new(
            (sq.ix - origin.ix) as f64 * self.lattice_unit,
            (sq.iy - origin.iy) as f64 * self.lattice_unit,
        );
        let side = 1.0 / f64::from(1u32 << sq.level);
        vec![
            lo,
            Point::new(lo.x + side, lo.y),
            Point::new(lo.x + side, lo.y + side),
            Point::new(lo.x, lo.y + side),
        ]
    }

    fn self_term(&self, c: &Cell) -> f64 {
        if c.square.is_some() {
            SQUARE_SELF_ENERGY / c.size
        } else {
            pair_integral(&c.outline, c.centroid, &c.outline, QUADRATURE_ORDER) / (c.area * c.area)
        }
    }

    fn pair(&mut self, i: usize, j: usize) -> f64 {
        let (a, b) = (&self.cells[i], &self.cells[j]);
        if let (Some(sa), Some(sb)) = (a.square, b.square) {
            let key = (sa.level, sb.level, sb.ix - sa.ix, sb.iy - sa.iy);
            if let Some(v) = self.cache.get(&key) {
                return v / self.resolution;
            }
            let pa = self.canonical_square(sa, sa);
            let pb = self.canonical_square(sb, sa);
            let side_a = 1.0 / f64::from(1u32 << sa.level);
            let side_b = 1.0 / f64::from(1u32 << sb.level);
            let apex = Point::new(0.5 * side_a, 0.5 * side_a);
            let v = pair_integral(&pa, apex, &pb, QUADRATURE_ORDER) / (side_a * side_a * side_b * side_b);
            self.cache.insert(key, v);
            return v / self.resolution;
        }
        pair_integral(&a.outline, a.centroid, &b.outline, QUADRATURE_ORDER) / (a.area * b.area)
    }
}

/// Candidate near pairs `(i, j)` with `i < j`, via bucketing on a grid.
fn near_pairs(cells: &[Cell]) -> Result<Vec<(usize, usize)>, CapacityError> {
    let reach = NEAR_FIELD_RADIUS * cells.iter().map(|c| c.size).fold(0.0, f64::max);
    let key = |p: Point| ((p.x / reach).floor() as i64, (p.y / reach).floor() as i64);
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, c) in cells.iter().enumerate() {
        buckets.entry(key(c.centroid)).or_default().push(i);
    }
    let mut out = Vec::new();
    for (i, c) in cells.iter().enumerate() {
        let (bx, by) = key(c.centroid);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(list) = buckets.get(&(bx + dx, by + dy)) else { continue };
                for &j in list {
                    if j <= i {
                        continue;
                    }
                    let d = c.centroid.distance(cells[j].centroid);
                    if d == 0.0 {
                        return Err(CapacityError::CoincidentCentroids(i, j));
                    }
                    if d < NEAR_FIELD_RADIUS * c.size.max(cells[j].size) {
                        out.push((i, j));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn assemble_kernel(mesh: &Mesh) -> Result<KernelMatrix, CapacityError> {
    let cells = mesh.cells();
    let n = cells.len();
    let mut near = NearField {
        cells,
        resolution: mesh.resolution(),
        lattice_unit: 1.0 / f64::from(1u32 << LATTICE_BITS),
        cache: HashMap::new(),
    };
    let diagonal: Vec<f64> = cells.iter().map(|c| near.self_term(c)).collect();
    let pairs = near_pairs(cells)?;
    let centroids: Vec<Point> = cells.iter().map(|c| c.centroid).collect();
    let storage = if n <= DENSE_LIMIT {
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = diagonal[i];
            for j in i + 1..n {
                let d = centroids[i].distance(centroids[j]);
                if d == 0.0 {
                    return Err(CapacityError::CoincidentCentroids(i, j));
                }
                a[i * n + j] = 1.0 / d;
                a[j * n + i] = 1.0 / d;
            }
        }
        for &(i, j) in &pairs {
            let v = near.pair(i, j);
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
        Storage::Dense(a)
    } else {
        let mut corrections = vec![Vec::new(); n];
        for &(i, j) in &pairs {
            let v = near.pair(i, j) - 1.0 / centroids[i].distance(centroids[j]);
            corrections[i].push((j, v));
            corrections[j].push((i, v));
        }
        Storage::Implicit { corrections }
    };
    Ok(KernelMatrix { centroids, diagonal, storage })
}

/// Kernel built directly from point charges, for tests and point clouds:
/// `1/|c_i - c_j|` off the diagonal and the given self terms on it.
pub fn point_kernel(centroids: Vec<Point>, diagonal: Vec<f64>) -> Result<KernelMatrix, CapacityError> {
    let n = centroids.len();
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        a[i * n + i] = diagonal[i];
        for j in i + 1..n {
            let d = centroids[i].distance(centroids[j]);
            if d == 0.0 {
                return Err(CapacityError::CoincidentCentroids(i, j));
            }
            a[i * n + j] = 1.0 / d;
            a[j * n + i] = 1.0 / d;
        }
    }
    Ok(KernelMatrix { centroids, diagonal, storage: Storage::Dense(a) })
}
