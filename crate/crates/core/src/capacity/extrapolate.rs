use super::CapacityError;

pub const MIN_ORDER: f64 = 0.25;
pub const MAX_ORDER: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extrapolation {
    pub limit: f64,
    /// Fitted convergence order; `None` when the sequence is not monotone.
    pub order: Option<f64>,
}

/// Richardson extrapolation of `E(h) = E_0 + c h^p` through three samples at
/// geometrically decreasing `h`. The order is fitted and clamped; a
/// non-monotone sequence falls back to the finest value.
pub fn richardson(h: [f64; 3], e: [f64; 3]) -> Result<Extrapolation, CapacityError> {
    let r1 = h[0] / h[1];
    let r2 = h[1] / h[2];
    if !(r1 > 1.0) || ((r1 - r2) / r1).abs() > 1e-6 {
        return Err(CapacityError::NotGeometric);
    }
    let d1 = e[0] - e[1];
    let d2 = e[1] - e[2];
    if d1 == 0.0 || d2 == 0.0 || d1.signum() != d2.signum() || d2.abs() >= d1.abs() {
        return Ok(Extrapolation { limit: e[2], order: None });
    }
    let p = ((d1 / d2).ln() / r1.ln()).clamp(MIN_ORDER, MAX_ORDER);
    Ok(Extrapolation { limit: e[2] - d2 / (r1.powf(p) - 1.0), order: Some(p) })
}
