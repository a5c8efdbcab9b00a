//! Multi-disk competitors: charge splits, mists and the nonexistence witness.

use std::f64::consts::PI;

use super::balls::{charged_infimum, optimal_ball_radius, positive};
use super::EnergyError;
use crate::geometry::Point;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
    /// Fraction of the total charge carried by this disk.
    pub charge: f64,
}

/// Pairwise disjoint disks whose charges sum to one.
#[derive(Clone, Debug, PartialEq)]
pub struct BallConfiguration {
    balls: Vec<Ball>,
}

impl BallConfiguration {
    pub fn new(balls: Vec<Ball>) -> Result<Self, EnergyError> {
        if balls.is_empty() {
            return Err(EnergyError::InvalidParameter { name: "ball count", value: 0.0 });
        }
        for b in &balls {
            positive("radius", b.radius)?;
            if !(b.charge >= 0.0) {
                return Err(EnergyError::InvalidParameter { name: "charge fraction", value: b.charge });
            }
        }
        let total: f64 = balls.iter().map(|b| b.charge).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(EnergyError::ChargeSum(total));
        }
        for i in 0..balls.len() {
            for j in i + 1..balls.len() {
                if gap(&balls[i], &balls[j]) <= 0.0 {
                    return Err(EnergyError::OverlappingBalls(i, j));
                }
            }
        }
        Ok(Self { balls })
    }

    pub fn single(center: Point, radius: f64) -> Result<Self, EnergyError> {
        Self::new(vec![Ball { center, radius, charge: 1.0 }])
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn total_area(&self) -> f64 {
        self.balls.iter().map(|b| PI * b.radius * b.radius).sum()
    }

    pub fn total_perimeter(&self) -> f64 {
        self.balls.iter().map(|b| 2.0 * PI * b.radius).sum()
    }

    /// Dilation of centres and radii about the origin.
    pub fn scaled(&self, t: f64) -> Result<Self, EnergyError> {
        positive("scale factor", t)?;
        Self::new(
            self.balls
                .iter()
                .map(|b| Ball { center: b.center * t, radius: b.radius * t, charge: b.charge })
                .collect(),
        )
    }
}

fn gap(a: &Ball, b: &Ball) -> f64 {
    a.center.distance(b.center) - a.radius - b.radius
}

/// The two parts of [`multiball_energy_upper`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultiballEnergy {
    /// `sum_i 2 pi r_i + lambda theta_i^2 pi / (2 r_i)`.
    pub isolated: f64,
    /// `lambda sum_{i<j} 2 theta_i theta_j / gap_ij`.
    pub interaction: f64,
}

impl MultiballEnergy {
    pub fn total(&self) -> f64 {
        self.isolated + self.interaction
    }
}

/// Upper bound on the fixed-charge energy of a union of disks with the
/// given charge split. Each pair interacts through the gap between the
/// disks, which bounds `1/|x - y|` for every pair of points they contain.
pub fn multiball_energy(cfg: &BallConfiguration, lambda: f64) -> MultiballEnergy {
    let b = cfg.balls();
    let isolated = b
        .iter()
        .map(|x| 2.0 * PI * x.radius + lambda * x.charge * x.charge * PI / (2.0 * x.radius))
        .sum();
    let mut pairs = 0.0;
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            pairs += 2.0 * b[i].charge * b[j].charge / gap(&b[i], &b[j]);
        }
    }
    MultiballEnergy { isolated, interaction: lambda * pairs }
}

pub fn multiball_energy_upper(cfg: &BallConfiguration, lambda: f64) -> f64 {
    multiball_energy(cfg, lambda).total()
}

/// Centres along the positive x-axis, consecutive ones `separation` apart,
/// starting at `start`.
fn row(start: f64, separation: f64, count: usize) -> impl Iterator<Item = Point> {
    (0..count).map(move |k| Point::new(start + k as f64 * separation, 0.0))
}

/// `n` disks of radius `R_lambda / n`, each with charge `1/n`.
pub fn mist_configuration(lambda: f64, n: usize, separation: f64) -> Result<BallConfiguration, EnergyError> {
    positive("lambda", lambda)?;
    positive("separation", separation)?;
    if n == 0 {
        return Err(EnergyError::InvalidParameter { name: "ball count", value: 0.0 });
    }
    let r = optimal_ball_radius(lambda) / n as f64;
    if n > 1 && separation <= 2.0 * r {
        return Err(EnergyError::InvalidParameter { name: "separation", value: separation });
    }
    BallConfiguration::new(
        row(0.0, separation, n).map(|c| Ball { center: c, radius: r, charge: 1.0 / n as f64 }).collect(),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub configuration: BallConfiguration,
    /// Charge fraction moved onto the small disks.
    pub theta: f64,
}

/// Smallest number of satellite disks for which [`nonexistence_witness`] is feasible.
pub fn minimal_witness_count(m: f64, lambda: f64) -> usize {
    let l0 = 4.0 * m / PI;
    (((lambda - l0) / l0).ceil() as usize).max(1)
}

/// Competitor of area `m` whose energy approaches the infimum `2 pi sqrt(lambda)`.
///
/// A disk of charge `1 - theta` keeps its optimal radius for that charge
/// while `n` small disks of radius `r/n`, `r = theta sqrt(lambda)/2`, carry
/// `theta/n` each. Area conservation gives `lambda (1 - theta)^2 =
/// lambda_0 - theta^2 lambda / n`, solved for its smaller root.
pub fn nonexistence_witness(m: f64, lambda: f64, n: usize, separation: f64) -> Result<Witness, EnergyError> {
    positive("area", m)?;
    positive("lambda", lambda)?;
    positive("separation", separation)?;
    let l0 = 4.0 * m / PI;
    if lambda < l0 {
        return Err(EnergyError::BelowThreshold { lambda, threshold: l0 });
    }
    if lambda == l0 {
        let cfg = BallConfiguration::single(Point::ORIGIN, (m / PI).sqrt())?;
        return Ok(Witness { configuration: cfg, theta: 0.0 });
    }
    if n == 0 {
        return Err(EnergyError::Infeasible { minimal_count: minimal_witness_count(m, lambda) });
    }
    let k = 1.0 + 1.0 / n as f64;
    let mut disc = 1.0 - k * (1.0 - l0 / lambda);
    if disc < 0.0 && disc > -1e-12 {
        disc = 0.0;
    }
    if disc < 0.0 {
        return Err(EnergyError::Infeasible { minimal_count: minimal_witness_count(m, lambda) });
    }
    let theta = (1.0 - disc.sqrt()) / k;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(EnergyError::Infeasible { minimal_count: minimal_witness_count(m, lambda) });
    }
    let r = 0.5 * theta * lambda.sqrt();
    let big = (m / PI - r * r / n as f64).sqrt();
    let small = r / n as f64;
    if separation <= big + small || separation <= 2.0 * small {
        return Err(EnergyError::InvalidParameter { name: "separation", value: separation });
    }
    let mut balls = vec![Ball { center: Point::ORIGIN, radius: big, charge: 1.0 - theta }];
    balls.extend(row(separation, separation, n).map(|c| Ball { center: c, radius: small, charge: theta / n as f64 }));
    Ok(Witness { configuration: BallConfiguration::new(balls)?, theta })
}

/// Gap between a configuration's energy bound and `2 pi sqrt(lambda)`.
pub fn infimum_gap(cfg: &BallConfiguration, lambda: f64) -> f64 {
    multiball_energy_upper(cfg, lambda) - charged_infimum(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::balls::{ball_energy_q, critical_thresholds, two_ball_split_energy};

    #[test]
    fn single_ball_has_no_interaction() {
        let c = BallConfiguration::single(Point::new(1.0, 2.0), 0.7).unwrap();
        assert!((multiball_energy_upper(&c, 3.0) - ball_energy_q(0.7, 3.0)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_configurations() {
        let b = |x: f64, q: f64| Ball { center: Point::new(x, 0.0), radius: 1.0, charge: q };
        assert_eq!(BallConfiguration::new(vec![b(0.0, 0.5), b(1.5, 0.5)]), Err(EnergyError::OverlappingBalls(0, 1)));
        assert!(matches!(BallConfiguration::new(vec![b(0.0, 0.5), b(3.0, 0.4)]), Err(EnergyError::ChargeSum(_))));
    }

    #[test]
    fn two_ball_split_at_crossover() {
        let r = 1.0;
        let m = PI;
        let lc1 = critical_thresholds(m).unwrap().lambda_c1_q;
        let rs = r / 2f64.sqrt();
        let far = 1e12;
        let cfg = BallConfiguration::new(vec![
            Ball { center: Point::ORIGIN, radius: rs, charge: 0.5 },
            Ball { center: Point::new(far, 0.0), radius: rs, charge: 0.5 },
        ])
        .unwrap();
        let split = multiball_energy(&cfg, lc1);
        assert!((split.isolated - two_ball_split_energy(m, lc1)).abs() < 1e-12);
        assert!((split.isolated - ball_energy_q(r, lc1)).abs() < 1e-12);
        assert!(split.interaction < 1e-11);
    }

    #[test]
    fn interaction_halves_under_doubling() {
        let cfg = mist_configuration(2.0, 5, 3.0).unwrap();
        let e1 = multiball_energy(&cfg, 2.0).interaction;
        let e2 = multiball_energy(&cfg.scaled(2.0).unwrap(), 2.0).interaction;
        assert!((e2 - e1 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn mist_approaches_infimum() {
        let one = mist_configuration(4.0, 1, 1.0).unwrap();
        assert_eq!(multiball_energy_upper(&one, 4.0), 4.0 * PI);
        let cfg = mist_configuration(4.0, 100, 1e6).unwrap();
        assert!(infimum_gap(&cfg, 4.0) / (4.0 * PI) < 0.01);
        assert!((cfg.total_area() - PI / 100.0).abs() < 1e-12);
    }

    #[test]
    fn witness_properties() {
        let w = nonexistence_witness(PI, 8.0, 100, 1e6).unwrap();
        assert!((w.configuration.total_area() - PI).abs() < 1e-12);
        let e = multiball_energy_upper(&w.configuration, 8.0);
        assert!((e / charged_infimum(8.0) - 1.0).abs() < 0.01);
        let theta = w.theta;
        let lhs = 8.0 * (1.0 - theta).powi(2);
        let rhs = 4.0 - theta * theta * 8.0 / 100.0;
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn witness_degenerates_at_threshold() {
        let w = nonexistence_witness(PI, 4.0, 10, 100.0).unwrap();
        assert_eq!(w.theta, 0.0);
        assert_eq!(w.configuration.len(), 1);
        assert!((w.configuration.total_area() - PI).abs() < 1e-12);
    }

    #[test]
    fn witness_needs_enough_satellites() {
        // (lambda - lambda_0)/lambda_0 = 2 at lambda = 12, m = pi
        assert_eq!(minimal_witness_count(PI, 12.0), 2);
        assert_eq!(nonexistence_witness(PI, 12.0, 1, 1e3), Err(EnergyError::Infeasible { minimal_count: 2 }));
        assert!(nonexistence_witness(PI, 12.0, 2, 1e3).is_ok());
        assert!(matches!(nonexistence_witness(PI, 3.0, 5, 1e3), Err(EnergyError::BelowThreshold { .. })));
    }
}
