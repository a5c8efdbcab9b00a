use std::sync::Arc;

use super::kernel::{assemble_kernel, KernelMatrix};
use super::mesh::Mesh;
use super::CapacityError;

const CG_TOLERANCE: f64 = 1e-12;
const NEGATIVE_WEIGHT: f64 = -1e-10;
const KKT_TOLERANCE: f64 = 1e-8;
const MAX_ACTIVE_SET_STEPS: usize = 2000;

/// Cell weights of a probability measure on a mesh.
#[derive(Clone, Debug)]
pub struct DiscreteMeasure {
    mesh: Arc<Mesh>,
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    pub fn new(mesh: Arc<Mesh>, weights: Vec<f64>) -> Result<Self, CapacityError> {
        if weights.len() != mesh.len() {
            return Err(CapacityError::WeightCount { weights: weights.len(), cells: mesh.len() });
        }
        if weights.iter().any(|&w| !(w >= 0.0)) {
            return Err(CapacityError::InvalidWeights("weights must be nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(CapacityError::InvalidWeights("weights must sum to one"));
        }
        Ok(Self { mesh, weights })
    }

    pub fn uniform(mesh: Arc<Mesh>) -> Self {
        let total = mesh.total_area();
        let weights = mesh.cells().iter().map(|c| c.area / total).collect();
        Self::normalised(mesh, weights)
    }

    /// Clamps roundoff-level negatives and rescales to unit mass.
    fn normalised(mesh: Arc<Mesh>, mut weights: Vec<f64>) -> Self {
        for w in &mut weights {
            *w = w.max(0.0);
        }
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        Self { mesh, weights }
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn mesh_arc(&self) -> &Arc<Mesh> {
        &self.mesh
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weight per unit area on each cell.
    pub fn densities(&self) -> Vec<f64> {
        self.weights.iter().zip(self.mesh.cells()).map(|(w, c)| w / c.area).collect()
    }

    /// Mass carried by one component.
    pub fn component_mass(&self, component: usize) -> f64 {
        self.mesh
            .cells()
            .iter()
            .zip(&self.weights)
            .filter(|(c, _)| c.component == component)
            .map(|(_, w)| w)
            .sum()
    }

    /// The measure restricted to one component and renormalised, on the
    /// restricted mesh.
    pub fn restrict(&self, component: usize) -> Result<DiscreteMeasure, CapacityError> {
        let mesh = Arc::new(self.mesh.restrict(component)?);
        let weights: Vec<f64> = self
            .mesh
            .cells()
            .iter()
            .zip(&self.weights)
            .filter(|(c, _)| c.component == component)
            .map(|(_, &w)| w)
            .collect();
        if weights.iter().sum::<f64>() <= 0.0 {
            return Err(CapacityError::InvalidWeights("component carries no mass"));
        }
        Ok(Self::normalised(mesh, weights))
    }
}

/// Outcome of the discrete equilibrium problem on one mesh.
#[derive(Clone, Debug)]
pub struct MeshSolution {
    pub measure: DiscreteMeasure,
    /// `w^T K w`.
    pub energy: f64,
    /// `K w`.
    pub potential: Vec<f64>,
    /// Largest `|(K w)_i - energy|` over cells farther than their size from the boundary.
    pub residual: f64,
    pub active_set_steps: usize,
}

/// Jacobi-preconditioned conjugate gradients for `A x = b`.
fn pcg(
    apply: &dyn Fn(&[f64], &mut [f64]),
    diag: &[f64],
    b: &[f64],
) -> Result<Vec<f64>, CapacityError> {
    let n = b.len();
    let max_iter = (10 * n).max(500);
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(diag).map(|(ri, d)| ri / d).collect();
    let mut p = z.clone();
    let mut ap = vec![0.0; n];
    let bnorm = b.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
    let mut rnorm = bnorm;
    for iteration in 0..max_iter {
        if rnorm <= CG_TOLERANCE * bnorm {
            return Ok(x);
        }
        apply(&p, &mut ap);
        let pap: f64 = p.iter().zip(&ap).map(|(a, b)| a * b).sum();
        if !(pap > 0.0) {
            return Err(CapacityError::NotConverged { iterations: iteration, residual: rnorm / bnorm });
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        rnorm = r.iter().map(|v| v * v).sum::<f64>().sqrt();
        for i in 0..n {
            z[i] = r[i] / diag[i];
        }
        let rz_new: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    if rnorm <= CG_TOLERANCE * bnorm {
        return Ok(x);
    }
    Err(CapacityError::NotConverged { iterations: max_iter, residual: rnorm / bnorm })
}

/// Minimiser of `w^T K w` over `{w >= 0, sum w = 1}` restricted to `free`,
/// ignoring the sign constraint.
fn free_minimiser(kernel: &KernelMatrix, free: &[usize]) -> Result<Vec<f64>, CapacityError> {
    let n = kernel.len();
    let diag: Vec<f64> = free.iter().map(|&i| kernel.diagonal()[i]).collect();
    let apply = |x: &[f64], y: &mut [f64]| {
        let mut full = vec![0.0; n];
        for (k, &i) in free.iter().enumerate() {
            full[i] = x[k];
        }
        let mut out = vec![0.0; n];
        kernel.apply(&full, &mut out);
        for (k, &i) in free.iter().enumerate() {
            y[k] = out[i];
        }
    };
    let z = if free.len() == n {
        pcg(&|x, y| kernel.apply(x, y), &diag, &vec![1.0; n])?
    } else {
        pcg(&apply, &diag, &vec![1.0; free.len()])?
    };
    let total: f64 = z.iter().sum();
    let mut w = vec![0.0; n];
    for (k, &i) in free.iter().enumerate() {
        w[i] = z[k] / total;
    }
    Ok(w)
}

fn kkt_residual(kernel: &KernelMatrix, w: &[f64], active: &[bool]) -> (f64, Vec<f64>, f64) {
    let mut kw = vec![0.0; w.len()];
    kernel.apply(w, &mut kw);
    let energy: f64 = w.iter().zip(&kw).map(|(a, b)| a * b).sum();
    let mut worst: f64 = 0.0;
    for i in 0..w.len() {
        let gap = (kw[i] - energy) / energy;
        worst = worst.max(if active[i] { (-gap).max(0.0) } else { gap.abs() });
    }
    (worst, kw, energy)
}

/// Primal active-set iterations started from the feasible point `w`.
fn active_set(kernel: &KernelMatrix, mut w: Vec<f64>) -> Result<(Vec<f64>, usize), CapacityError> {
    let n = w.len();
    let mut active: Vec<bool> = w.iter().map(|&v| v <= 0.0).collect();
    let mut last = f64::INFINITY;
    for step in 1..=MAX_ACTIVE_SET_STEPS {
        let free: Vec<usize> = (0..n).filter(|&i| !active[i]).collect();
        let target = free_minimiser(kernel, &free)?;
        let blocking = free
            .iter()
            .filter(|&&i| target[i] < 0.0)
            .map(|&i| (w[i] / (w[i] - target[i]), i))
            .min_by(|a, b| a.0.total_cmp(&b.0));
        if let Some((alpha, i)) = blocking {
            for k in 0..n {
                w[k] += alpha * (target[k] - w[k]);
            }
            w[i] = 0.0;
            active[i] = true;
            for k in 0..n {
                if !active[k] && w[k] <= 0.0 {
                    w[k] = 0.0;
                    active[k] = true;
                }
            }
            continue;
        }
        w = target;
        let (res, kw, energy) = kkt_residual(kernel, &w, &active);
        last = res;
        if res < KKT_TOLERANCE {
            return Ok((w, step));
        }
        // release the constraint with the most negative multiplier
        let release = (0..n)
            .filter(|&i| active[i])
            .min_by(|&a, &b| kw[a].total_cmp(&kw[b]))
            .filter(|&i| kw[i] < energy);
        match release {
            Some(i) => active[i] = false,
            None => return Ok((w, step)),
        }
    }
    Err(CapacityError::NotConverged { iterations: MAX_ACTIVE_SET_STEPS, residual: last })
}

/// Solves the discrete equilibrium problem with an already assembled kernel.
pub fn solve_with_kernel(mesh: Arc<Mesh>, kernel: &KernelMatrix) -> Result<MeshSolution, CapacityError> {
    let n = mesh.len();
    let all: Vec<usize> = (0..n).collect();
    let mut w = free_minimiser(kernel, &all)?;
    let mut steps = 0;
    if w.iter().any(|&v| v < NEGATIVE_WEIGHT) {
        let start = DiscreteMeasure::uniform(mesh.clone()).weights;
        let (sol, s) = active_set(kernel, start)?;
        w = sol;
        steps = s;
    }
    let measure = DiscreteMeasure::normalised(mesh, w);
    let mut kw = vec![0.0; n];
    kernel.apply(measure.weights(), &mut kw);
    let energy: f64 = measure.weights().iter().zip(&kw).map(|(a, b)| a * b).sum();
    let cells = measure.mesh().cells();
    let interior: Vec<usize> = (0..n).filter(|&i| cells[i].boundary_distance > cells[i].size).collect();
    let pool = if interior.is_empty() { (0..n).collect() } else { interior };
    let residual = pool.iter().map(|&i| (kw[i] - energy).abs()).fold(0.0, f64::max);
    Ok(MeshSolution { measure, energy, potential: kw, residual, active_set_steps: steps })
}

pub fn solve_mesh(mesh: Arc<Mesh>) -> Result<MeshSolution, CapacityError> {
    let kernel = assemble_kernel(&mesh)?;
    solve_with_kernel(mesh, &kernel)
}

/// The discrete equilibrium measure: the minimiser of `w^T K w` over the simplex.
pub fn equilibrium_measure(mesh: Arc<Mesh>) -> Result<DiscreteMeasure, CapacityError> {
    Ok(solve_mesh(mesh)?.measure)
}
