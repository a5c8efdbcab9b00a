//! Conversion of physical parameters to the dimensionless charge parameter.

use std::f64::consts::PI;

use super::balls::positive;
use super::EnergyError;

/// Physical parameters shared by both conversions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Medium {
    /// Relative permittivity.
    pub epsilon: f64,
    /// Vacuum permittivity.
    pub epsilon0: f64,
    /// Surface tension.
    pub sigma: f64,
    /// Plate gap.
    pub ell: f64,
}

impl Medium {
    fn checked(&self) -> Result<(), EnergyError> {
        positive("epsilon", self.epsilon)?;
        positive("epsilon0", self.epsilon0)?;
        positive("sigma", self.sigma)?;
        positive("ell", self.ell)?;
        Ok(())
    }
}

/// `Q^2 / (8 pi epsilon epsilon0 sigma ell L^2)` for charge `Q` and length scale `L`.
pub fn nondimensionalize_q(charge: f64, medium: Medium, length: f64) -> Result<f64, EnergyError> {
    positive("charge", charge)?;
    positive("length", length)?;
    medium.checked()?;
    Ok(charge * charge / (8.0 * PI * medium.epsilon * medium.epsilon0 * medium.sigma * medium.ell * length * length))
}

/// `2 pi epsilon epsilon0 U^2 / (sigma ell)` for voltage `U`.
pub fn nondimensionalize_u(voltage: f64, medium: Medium) -> Result<f64, EnergyError> {
    positive("voltage", voltage)?;
    medium.checked()?;
    Ok(2.0 * PI * medium.epsilon * medium.epsilon0 * voltage * voltage / (medium.sigma * medium.ell))
}

#[cfg(test)]
mod tests {
    use super::*;

    const WATER: Medium = Medium { epsilon: 80.0, epsilon0: 8.854e-12, sigma: 0.072, ell: 1e-4 };

    #[test]
    fn scaling_rules() {
        let base = nondimensionalize_q(1e-9, WATER, 1e-3).unwrap();
        assert!((nondimensionalize_q(2e-9, WATER, 1e-3).unwrap() / base - 4.0).abs() < 1e-12);
        assert!((nondimensionalize_q(1e-9, WATER, 2e-3).unwrap() / base - 0.25).abs() < 1e-12);
        let u = nondimensionalize_u(100.0, WATER).unwrap();
        assert!((nondimensionalize_u(200.0, WATER).unwrap() / u - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(nondimensionalize_q(0.0, WATER, 1.0).is_err());
        assert!(nondimensionalize_u(1.0, Medium { sigma: -1.0, ..WATER }).is_err());
    }
}
