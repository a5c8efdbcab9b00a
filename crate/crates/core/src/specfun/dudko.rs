//! The ratio functions `f` and `g` built from complete elliptic integrals.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_traits::ToPrimitive;

use super::certificate::{g_numerator, taylor_e, taylor_k};
use super::{elliptic_e, elliptic_k, SpecfunError};

const SERIES_ORDER: usize = 90;
const SERIES_SWITCH: f64 = 0.5;

fn check_open_unit(function: &'static str, x: f64) -> Result<(), SpecfunError> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(SpecfunError::Domain { function, value: x })
    }
}

/// `f(x) = 16 sqrt(1 - x) K^3 E / pi^4`.
pub fn dudko_f(x: f64) -> Result<f64, SpecfunError> {
    check_open_unit("dudko_f", x)?;
    let k = elliptic_k(x)?;
    let e = elliptic_e(x)?;
    Ok(16.0 * (1.0 - x).sqrt() * k.powi(3) * e / PI.powi(4))
}

struct SeriesTables {
    /// Coefficients of `N(x) / x^4`.
    reduced_numerator: Vec<f64>,
    /// Coefficients of `E(x) / pi`.
    e_rational: Vec<f64>,
}

fn series_tables() -> &'static SeriesTables {
    static TABLES: OnceLock<SeriesTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let k = taylor_k(SERIES_ORDER);
        let e = taylor_e(SERIES_ORDER);
        let n = g_numerator(&k, &e);
        let to_f = |c: &num_rational::BigRational| c.to_f64().unwrap_or(0.0);
        SeriesTables {
            reduced_numerator: (4..=SERIES_ORDER).map(|j| to_f(&n.coeff(j))).collect(),
            e_rational: (0..=SERIES_ORDER).map(|j| to_f(&e.coeff(j))).collect(),
        }
    })
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// `g(x) = 3E - (2 - x)K - (1 - x)K^2 / E`.
///
/// Near zero the direct formula loses every digit to cancellation since
/// `g = O(x^4)`; there the low orders are cancelled exactly in rational
/// arithmetic first.
pub fn dudko_g(x: f64) -> Result<f64, SpecfunError> {
    check_open_unit("dudko_g", x)?;
    if x < SERIES_SWITCH {
        let t = series_tables();
        let s = horner(&t.reduced_numerator, x);
        let e = horner(&t.e_rational, x);
        return Ok(PI * x.powi(4) * s / e);
    }
    let k = elliptic_k(x)?;
    let e = elliptic_e(x)?;
    Ok(3.0 * e - (2.0 - x) * k - (1.0 - x) * k * k / e)
}

/// Closed-form upper bound on `K(x)` obtained from the capacity estimate
/// `I_1 <= (pi^5 / (4 |A| P))^{1/3}` applied to the ellipse with `a = 1`.
pub fn dudko_k_bound(x: f64) -> Result<f64, SpecfunError> {
    check_open_unit("dudko_k_bound", x)?;
    let e = elliptic_e(x)?;
    // f <= 1 rearranges to K^3 <= pi^4 / (16 sqrt(1 - x) E)
    Ok((PI.powi(4) / (16.0 * (1.0 - x).sqrt() * e)).cbrt())
}
