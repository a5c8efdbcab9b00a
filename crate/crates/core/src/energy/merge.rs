//! Exact arithmetic for merging two charged disks into one.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::EnergyError;

fn positive(name: &'static str, v: &BigRational) -> Result<(), EnergyError> {
    if *v > BigRational::zero() {
        Ok(())
    } else {
        Err(EnergyError::InvalidRational(name))
    }
}

/// `theta^2/r1 + (1-theta)^2/r2 - 1/(r1 + r2)`: how much larger the
/// capacitary part of two disks is than that of one disk with radius `r1 + r2`.
pub fn merge_excess(r1: &BigRational, r2: &BigRational, theta: &BigRational) -> Result<BigRational, EnergyError> {
    positive("radius", r1)?;
    positive("radius", r2)?;
    let one = BigRational::one();
    let rest = &one - theta;
    Ok(theta * theta / r1 + &rest * &rest / r2 - one / (r1 + r2))
}

/// The same quantity as the perfect square `(theta (r1 + r2) - r1)^2 / (r1 r2 (r1 + r2))`.
pub fn merge_excess_factored(r1: &BigRational, r2: &BigRational, theta: &BigRational) -> Result<BigRational, EnergyError> {
    positive("radius", r1)?;
    positive("radius", r2)?;
    let s = r1 + r2;
    let t = theta * &s - r1;
    Ok(&t * &t / (r1 * r2 * s))
}

/// The charge split `r1 / (r1 + r2)` at which the excess vanishes.
pub fn merge_equality_split(r1: &BigRational, r2: &BigRational) -> BigRational {
    r1 / (r1 + r2)
}
