//! Discrete 1-Riesz capacitary energy: lattice meshes, cell-averaged
//! interaction matrices, the simplex-constrained equilibrium problem and
//! mesh extrapolation.

mod extrapolate;
mod kernel;
mod mesh;
mod potential;
mod solver;

use std::sync::Arc;

use rayon::prelude::*;

pub use extrapolate::{richardson, Extrapolation};
pub use kernel::{assemble_kernel, point_kernel, KernelMatrix, DENSE_LIMIT, NEAR_FIELD_RADIUS};
pub use mesh::{Cell, Grading, LatticeSquare, Mesh, MIN_CELLS};
pub use potential::{pair_integral, polygon_potential, polygon_quadrature, GaussRule, SQUARE_SELF_ENERGY};
pub use solver::{equilibrium_measure, solve_mesh, solve_with_kernel, DiscreteMeasure, MeshSolution};

use crate::geometry::{GeometryError, PlanarSet};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CapacityError {
    #[error("cell size {h} must be positive and below the diameter {diameter}")]
    Resolution { h: f64, diameter: f64 },
    #[error("mesh has {cells} cells, at least {minimum} are needed")]
    TooFewCells { cells: usize, minimum: usize },
    #[error("cell centroid ({x}, {y}) stays outside the set after subdivision")]
    CentroidOutside { x: f64, y: f64 },
    #[error("no component with index {0}")]
    NoSuchComponent(usize),
    #[error("cells {0} and {1} have coincident centroids")]
    CoincidentCentroids(usize, usize),
    #[error("solver stopped after {iterations} iterations with residual {residual:e}")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("{weights} weights for {cells} cells")]
    WeightCount { weights: usize, cells: usize },
    #[error("invalid measure: {0}")]
    InvalidWeights(&'static str),
    #[error("at least one resolution is required")]
    NoResolutions,
    #[error("extrapolation needs at least three resolutions, got {0}")]
    TooFewResolutions(usize),
    #[error("extrapolation needs resolutions in geometric progression")]
    NotGeometric,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// How cell sizes are chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum Resolutions {
    /// Explicit cell sizes.
    Absolute(Vec<f64>),
    /// Cell sizes `diameter / k` for each listed `k`.
    DiameterFractions(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CapacityOptions {
    pub resolutions: Resolutions,
    pub grading: Grading,
    pub extrapolate: bool,
}

impl Default for CapacityOptions {
    fn default() -> Self {
        Self::standard()
    }
}

impl CapacityOptions {
    /// Three graded meshes down to `diameter / 32`.
    pub fn standard() -> Self {
        Self {
            resolutions: Resolutions::DiameterFractions(vec![8.0, 16.0, 32.0]),
            grading: Grading::BoundaryGraded,
            extrapolate: true,
        }
    }

    /// Cheap meshes for inequality checks over many shapes.
    pub fn coarse() -> Self {
        Self {
            resolutions: Resolutions::DiameterFractions(vec![8.0, 12.0, 18.0]),
            grading: Grading::BoundaryGraded,
            extrapolate: true,
        }
    }

    /// Finer meshes, a few thousand cells for round sets.
    pub fn fine() -> Self {
        Self {
            resolutions: Resolutions::DiameterFractions(vec![12.0, 24.0, 48.0]),
            grading: Grading::BoundaryGraded,
            extrapolate: true,
        }
    }

    pub fn with_grading(mut self, grading: Grading) -> Self {
        self.grading = grading;
        self
    }

    pub fn with_resolutions(mut self, resolutions: Resolutions) -> Self {
        self.resolutions = resolutions;
        self
    }

    pub fn with_extrapolation(mut self, extrapolate: bool) -> Self {
        self.extrapolate = extrapolate;
        self
    }

    /// Concrete cell sizes for a set of the given diameter, coarsest first.
    pub fn cell_sizes(&self, diameter: f64) -> Result<Vec<f64>, CapacityError> {
        let mut hs: Vec<f64> = match &self.resolutions {
            Resolutions::Absolute(v) => v.clone(),
            Resolutions::DiameterFractions(v) => v.iter().map(|k| diameter / k).collect(),
        };
        if hs.is_empty() {
            return Err(CapacityError::NoResolutions);
        }
        hs.sort_by(|a, b| b.total_cmp(a));
        if self.extrapolate && hs.len() < 3 {
            return Err(CapacityError::TooFewResolutions(hs.len()));
        }
        Ok(hs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResolutionSample {
    pub h: f64,
    pub cells: usize,
    pub energy: f64,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct CapacityResult {
    /// Discrete energy on the finest mesh.
    pub energy: f64,
    pub extrapolated: f64,
    pub order: Option<f64>,
    pub samples: Vec<ResolutionSample>,
    /// Potential flatness on the finest mesh.
    pub residual: f64,
    /// Equilibrium measure on the finest mesh.
    pub measure: DiscreteMeasure,
}

impl CapacityResult {
    pub fn capacity(&self) -> f64 {
        1.0 / self.extrapolated
    }
}

/// Solves on each mesh (concurrently) and extrapolates over the three finest.
pub fn riesz_energy_on_meshes(meshes: Vec<Arc<Mesh>>, extrapolate: bool) -> Result<CapacityResult, CapacityError> {
    if meshes.is_empty() {
        return Err(CapacityError::NoResolutions);
    }
    let solutions: Vec<MeshSolution> =
        meshes.into_par_iter().map(solve_mesh).collect::<Result<Vec<_>, _>>()?;
    combine(solutions, extrapolate)
}

fn combine(solutions: Vec<MeshSolution>, extrapolate: bool) -> Result<CapacityResult, CapacityError> {
    let samples: Vec<ResolutionSample> = solutions
        .iter()
        .map(|s| ResolutionSample {
            h: s.measure.mesh().resolution(),
            cells: s.measure.mesh().len(),
            energy: s.energy,
            residual: s.residual,
        })
        .collect();
    let finest = solutions.into_iter().last().expect("nonempty");
    let (extrapolated, order) = if extrapolate {
        let k = samples.len();
        if k < 3 {
            return Err(CapacityError::TooFewResolutions(k));
        }
        let t = &samples[k - 3..];
        let x = richardson([t[0].h, t[1].h, t[2].h], [t[0].energy, t[1].energy, t[2].energy])?;
        (x.limit, x.order)
    } else {
        (finest.energy, None)
    };
    Ok(CapacityResult {
        energy: finest.energy,
        extrapolated,
        order,
        samples,
        residual: finest.residual,
        measure: finest.measure,
    })
}

/// Builds one mesh per resolution of `options`.
pub fn build_meshes(set: &PlanarSet, options: &CapacityOptions) -> Result<Vec<Arc<Mesh>>, CapacityError> {
    let parent = Arc::new(set.clone());
    options
        .cell_sizes(set.diameter())?
        .into_iter()
        .map(|h| Mesh::build(parent.clone(), h, options.grading).map(Arc::new))
        .collect()
}

/// The capacitary energy `I_1` of `set`.
pub fn riesz_energy(set: &PlanarSet, options: &CapacityOptions) -> Result<CapacityResult, CapacityError> {
    riesz_energy_on_meshes(build_meshes(set, options)?, options.extrapolate)
}

/// `C_1 = 1 / I_1`.
pub fn capacity_c1(set: &PlanarSet, options: &CapacityOptions) -> Result<f64, CapacityError> {
    Ok(riesz_energy(set, options)?.capacity())
}

/// Mutual energy `sum_ij w1_i w2_j / |c1_i - c2_j|` of measures on separated sets.
pub fn interaction_energy(a: &DiscreteMeasure, b: &DiscreteMeasure) -> Result<f64, CapacityError> {
    a.mesh().parent().set_distance(b.mesh().parent())?;
    let mut total = 0.0;
    for (ca, wa) in a.mesh().cells().iter().zip(a.weights()) {
        let mut row = 0.0;
        for (cb, wb) in b.mesh().cells().iter().zip(b.weights()) {
            row += wb / ca.centroid.distance(cb.centroid);
        }
        total += wa * row;
    }
    Ok(total)
}
