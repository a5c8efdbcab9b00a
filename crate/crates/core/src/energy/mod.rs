//! Fixed-charge and fixed-voltage drop energies, closed forms for disks and
//! ellipses, and the multi-disk competitor constructions.

mod balls;
mod config;
mod merge;
mod units;

pub use balls::{
    ball_energy_q, ball_energy_u, capacitary_upper_bound, charged_infimum, critical_thresholds,
    disk_riesz_energy, elongation_crossover, elongation_optimal_perimeter, energy_upper_bound,
    energy_upper_bound_slope, eu_divergence_closed_form, eu_divergence_sequence, optimal_ball_radius,
    radius_for_area, split_crossover, two_ball_split_energy, voltage_ball_infimum, voltage_slope,
    CriticalThresholds, Regime, VoltageBallInfimum,
};
pub use config::{
    infimum_gap, minimal_witness_count, mist_configuration, multiball_energy, multiball_energy_upper,
    nonexistence_witness, Ball, BallConfiguration, MultiballEnergy, Witness,
};
pub use merge::{merge_equality_split, merge_excess, merge_excess_factored};
pub use units::{nondimensionalize_q, nondimensionalize_u, Medium};

use crate::capacity::{riesz_energy, CapacityError, CapacityOptions};
use crate::geometry::PlanarSet;
use crate::specfun::{elliptic_e, elliptic_k, SpecfunError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EnergyError {
    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("invalid {0}: must be a positive rational")]
    InvalidRational(&'static str),
    #[error("charge fractions sum to {0}, not 1")]
    ChargeSum(f64),
    #[error("balls {0} and {1} overlap")]
    OverlappingBalls(usize, usize),
    #[error("lambda {lambda} is below the threshold {threshold}")]
    BelowThreshold { lambda: f64, threshold: f64 },
    #[error("no admissible charge split; at least {minimal_count} satellite balls are needed")]
    Infeasible { minimal_count: usize },
    #[error("no sign change of the crossover function on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyReport {
    pub perimeter: f64,
    pub area: f64,
    /// Capacitary energy estimate.
    pub riesz: f64,
    pub lambda: f64,
    /// `perimeter + lambda * riesz`.
    pub energy_q: f64,
    /// `perimeter - lambda / riesz`.
    pub energy_u: f64,
}

impl EnergyReport {
    pub fn from_parts(perimeter: f64, area: f64, riesz: f64, lambda: f64) -> Self {
        Self {
            perimeter,
            area,
            riesz,
            lambda,
            energy_q: perimeter + lambda * riesz,
            energy_u: perimeter - lambda / riesz,
        }
    }
}

pub fn energy_report(set: &PlanarSet, lambda: f64, options: &CapacityOptions) -> Result<EnergyReport, EnergyError> {
    balls::positive("lambda", lambda)?;
    let riesz = riesz_energy(set, options)?.extrapolated;
    Ok(EnergyReport::from_parts(set.perimeter(), set.area(), riesz, lambda))
}

/// `P + lambda (pi^5 / (4 m P))^{1/3}` for a set with exact perimeter and area.
pub fn dudko_energy_bound(set: &PlanarSet, lambda: f64) -> f64 {
    energy_upper_bound(set.area(), set.perimeter(), lambda)
}

/// Relative excess of the capacitary upper bound over the exact energy
/// `K(e^2)/a` of an ellipse, using closed forms for its area and perimeter.
pub fn ellipse_bound_relative_error(eccentricity: f64) -> Result<f64, EnergyError> {
    let m = eccentricity * eccentricity;
    let area = std::f64::consts::PI * (1.0 - m).sqrt();
    let perimeter = 4.0 * elliptic_e(m)?;
    Ok(capacitary_upper_bound(area, perimeter) / elliptic_k(m)? - 1.0)
}
