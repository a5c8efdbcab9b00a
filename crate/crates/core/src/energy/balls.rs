//! Closed-form energies of disks and the thresholds derived from them.

use std::f64::consts::{PI, SQRT_2};

use super::EnergyError;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64, EnergyError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(EnergyError::InvalidParameter { name, value })
    }
}

/// Capacitary energy of a disk of radius `r`.
pub fn disk_riesz_energy(r: f64) -> f64 {
    PI / (2.0 * r)
}

/// Fixed-charge energy of a disk: `2 pi R + lambda pi / (2R)`.
pub fn ball_energy_q(r: f64, lambda: f64) -> f64 {
    2.0 * PI * r + lambda * PI / (2.0 * r)
}

/// Fixed-voltage energy of a disk: `2 pi R - 2 lambda R / pi`.
pub fn ball_energy_u(r: f64, lambda: f64) -> f64 {
    2.0 * PI * r - 2.0 * lambda * r / PI
}

/// The radius minimising [`ball_energy_q`], `sqrt(lambda) / 2`.
pub fn optimal_ball_radius(lambda: f64) -> f64 {
    0.5 * lambda.sqrt()
}

/// `2 pi sqrt(lambda)`, the infimum of the fixed-charge energy.
pub fn charged_infimum(lambda: f64) -> f64 {
    2.0 * PI * lambda.sqrt()
}

/// Radius of the disk with area `m`.
pub fn radius_for_area(m: f64) -> f64 {
    (m / PI).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalThresholds {
    pub m: f64,
    /// Largest charge for which the disk is the minimiser at fixed area.
    pub lambda0_q: f64,
    /// Splitting into two equal far-apart disks becomes favourable.
    pub lambda_c1_q: f64,
    /// Elongation becomes favourable.
    pub lambda_c2_q: f64,
    /// Voltage threshold, independent of area.
    pub lambda0_u: f64,
}

/// Where a fixed-charge parameter sits relative to the thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    StableBall,
    PastLambda0,
    PastLambdaC1,
    PastLambdaC2,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::StableBall => "stable-ball",
            Regime::PastLambda0 => "past-lambda0",
            Regime::PastLambdaC1 => "past-lambdac1",
            Regime::PastLambdaC2 => "past-lambdac2",
        }
    }
}

impl CriticalThresholds {
    pub fn regime(&self, lambda: f64) -> Regime {
        if lambda > self.lambda_c2_q {
            Regime::PastLambdaC2
        } else if lambda > self.lambda_c1_q {
            Regime::PastLambdaC1
        } else if lambda > self.lambda0_q {
            Regime::PastLambda0
        } else {
            Regime::StableBall
        }
    }
}

pub fn critical_thresholds(m: f64) -> Result<CriticalThresholds, EnergyError> {
    positive("area", m)?;
    Ok(CriticalThresholds {
        m,
        lambda0_q: 4.0 * m / PI,
        lambda_c1_q: 4.0 * SQRT_2 * m / PI,
        lambda_c2_q: 12.0 * m / PI,
        lambda0_u: PI * PI,
    })
}

/// Energy of the disk of area `m` split into two equal disks at infinite separation.
pub fn two_ball_split_energy(m: f64, lambda: f64) -> f64 {
    let r = radius_for_area(m / 2.0);
    2.0 * (2.0 * PI * r + lambda * 0.25 * PI / (2.0 * r))
}

fn bisect(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> Result<f64, EnergyError> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(EnergyError::NoBracket { lo, hi });
    }
    while hi - lo > tol * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The charge at which splitting into two far-separated equal disks starts
/// to lower the energy, found by bisection on the closed forms.
pub fn split_crossover(m: f64) -> Result<f64, EnergyError> {
    positive("area", m)?;
    let r = radius_for_area(m);
    bisect(1e-12 * m, 100.0 * m, 1e-15, |l| two_ball_split_energy(m, l) - ball_energy_q(r, l))
}

/// `(pi^5 / (4 m P))^{1/3}`, an upper bound on the capacitary energy of any
/// set of area `m` and perimeter `P`; exact for disks.
pub fn capacitary_upper_bound(area: f64, perimeter: f64) -> f64 {
    (PI.powi(5) / (4.0 * area * perimeter)).cbrt()
}

/// `P + lambda (pi^5 / (4 m P))^{1/3}` as a function of the perimeter.
pub fn energy_upper_bound(area: f64, perimeter: f64, lambda: f64) -> f64 {
    perimeter + lambda * capacitary_upper_bound(area, perimeter)
}

/// Derivative of [`energy_upper_bound`] in the perimeter.
pub fn energy_upper_bound_slope(area: f64, perimeter: f64, lambda: f64) -> f64 {
    1.0 - lambda * capacitary_upper_bound(area, perimeter) / (3.0 * perimeter)
}

/// The perimeter `P >= 2 pi R` minimising [`energy_upper_bound`] at area `m`.
pub fn elongation_optimal_perimeter(m: f64, lambda: f64) -> f64 {
    let p_disk = 2.0 * PI * radius_for_area(m);
    // slope vanishes at P^{4/3} = (lambda/3)(pi^5/(4m))^{1/3}
    let p_star = (lambda / 3.0 * (PI.powi(5) / (4.0 * m)).cbrt()).powf(0.75);
    p_star.max(p_disk)
}

/// The charge above which the bound is lowered by increasing the perimeter
/// past that of the disk, i.e. elongation pays off.
pub fn elongation_crossover(m: f64) -> Result<f64, EnergyError> {
    positive("area", m)?;
    let p = 2.0 * PI * radius_for_area(m);
    bisect(1e-12 * m, 100.0 * m, 1e-15, |l| energy_upper_bound_slope(m, p, l))
}

/// Behaviour of `inf_R ball_energy_u(R, lambda)`, read off the slope of this
/// linear function of `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VoltageBallInfimum {
    /// Infimum 0 approached as `R -> 0`, never attained.
    ZeroNotAttained,
    /// Every disk has energy 0.
    ZeroAttainedEverywhere,
    /// Energy tends to minus infinity as `R -> infinity`.
    Unbounded,
}

/// Coefficient `c` with `ball_energy_u(R, lambda) = c R`.
pub fn voltage_slope(lambda: f64) -> f64 {
    2.0 * PI - 2.0 * lambda / PI
}

pub fn voltage_ball_infimum(lambda: f64) -> VoltageBallInfimum {
    // 2 pi - 2 lambda / pi = (2 / pi)(pi^2 - lambda)
    let c = PI * PI - lambda;
    if c > 0.0 {
        VoltageBallInfimum::ZeroNotAttained
    } else if c == 0.0 {
        VoltageBallInfimum::ZeroAttainedEverywhere
    } else {
        VoltageBallInfimum::Unbounded
    }
}

/// Total fixed-voltage energy of `n` equal disks of total area `m` at
/// infinite separation.
pub fn eu_divergence_sequence(m: f64, lambda: f64, n: u64) -> Result<f64, EnergyError> {
    positive("area", m)?;
    positive("lambda", lambda)?;
    if n == 0 {
        return Err(EnergyError::InvalidParameter { name: "ball count", value: 0.0 });
    }
    let nf = n as f64;
    Ok(nf * ball_energy_u((m / (PI * nf)).sqrt(), lambda))
}

/// `2 sqrt(pi m) (1 - lambda / pi^2) sqrt(n)`.
pub fn eu_divergence_closed_form(m: f64, lambda: f64, n: u64) -> f64 {
    2.0 * (PI * m).sqrt() * (1.0 - lambda / (PI * PI)) * (n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimal_radius_gives_infimum() {
        for lambda in [1.0, 4.0, 10.0] {
            let r = optimal_ball_radius(lambda);
            assert!((ball_energy_q(r, lambda) - charged_infimum(lambda)).abs() < 1e-12);
            assert!(ball_energy_q(r + 1e-4, lambda) > ball_energy_q(r, lambda));
            assert!(ball_energy_q(r - 1e-4, lambda) > ball_energy_q(r, lambda));
        }
        assert_eq!(optimal_ball_radius(4.0), 1.0);
        assert_eq!(optimal_ball_radius(1.0), 0.5);
        assert!((ball_energy_q(1.0, 4.0) - 4.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn thresholds_at_area_pi() {
        let t = critical_thresholds(PI).unwrap();
        assert!((t.lambda0_q - 4.0).abs() < 1e-12);
        assert!((t.lambda_c1_q - 4.0 * SQRT_2).abs() < 1e-12);
        assert!((t.lambda_c2_q - 12.0).abs() < 1e-12);
        assert!((t.lambda0_u - PI * PI).abs() < 1e-12);
        assert!((critical_thresholds(1.0).unwrap().lambda0_q - 4.0 / PI).abs() < 1e-15);
        assert!(critical_thresholds(0.0).is_err());
    }

    #[test]
    fn regime_labels() {
        let t = critical_thresholds(PI).unwrap();
        assert_eq!(t.regime(3.0), Regime::StableBall);
        assert_eq!(t.regime(4.0), Regime::StableBall);
        assert_eq!(t.regime(5.0), Regime::PastLambda0);
        assert_eq!(t.regime(6.0), Regime::PastLambdaC1);
        assert_eq!(t.regime(13.0).label(), "past-lambdac2");
    }

    #[test]
    fn crossovers_match_thresholds() {
        for m in [1.0, PI, 7.5] {
            let t = critical_thresholds(m).unwrap();
            assert!((split_crossover(m).unwrap() - t.lambda_c1_q).abs() < 1e-9 * t.lambda_c1_q);
            assert!((elongation_crossover(m).unwrap() - t.lambda_c2_q).abs() < 1e-9 * t.lambda_c2_q);
        }
    }

    #[test]
    fn bound_is_exact_for_disks() {
        let (m, p) = (PI, 2.0 * PI);
        assert!((capacitary_upper_bound(m, p) - PI / 2.0).abs() < 1e-15);
        for lambda in [0.5, 3.0, 11.0] {
            assert!((energy_upper_bound(m, p, lambda) - ball_energy_q(1.0, lambda)).abs() < 1e-12);
        }
        assert_eq!(elongation_optimal_perimeter(PI, 11.0), 2.0 * PI);
        assert!(elongation_optimal_perimeter(PI, 13.0) > 2.0 * PI);
    }

    #[test]
    fn voltage_energy() {
        for r in [0.1, 1.0, 5.0] {
            assert!(ball_energy_u(r, PI * PI).abs() < 1e-14);
            assert!((ball_energy_u(3.0 * r, 2.0) - 3.0 * ball_energy_u(r, 2.0)).abs() < 1e-12);
        }
        assert_eq!(voltage_ball_infimum(5.0), VoltageBallInfimum::ZeroNotAttained);
        assert_eq!(voltage_ball_infimum(PI * PI), VoltageBallInfimum::ZeroAttainedEverywhere);
        assert_eq!(voltage_ball_infimum(10.0), VoltageBallInfimum::Unbounded);
    }

    #[test]
    fn divergence_sequence() {
        let lambda = 2.0 * PI * PI;
        assert!((eu_divergence_sequence(PI, lambda, 1).unwrap() + 2.0 * PI).abs() < 1e-12);
        let r = eu_divergence_sequence(PI, lambda, 4).unwrap() / eu_divergence_sequence(PI, lambda, 1).unwrap();
        assert!((r - 2.0).abs() < 1e-12);
        assert!(eu_divergence_sequence(PI, PI * PI, 9).unwrap().abs() < 1e-12);
        for n in [1, 10, 1000] {
            let a = eu_divergence_sequence(2.0, 12.0, n).unwrap();
            assert!((a - eu_divergence_closed_form(2.0, 12.0, n)).abs() < 1e-12 * a.abs().max(1.0));
        }
    }
}
