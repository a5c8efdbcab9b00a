//! Newtonian-type potentials of uniformly charged polygons and the
//! quadrature used for cell interaction integrals.

use std::sync::OnceLock;

use crate::geometry::Point;

/// Mean of `1/|x - y|` for independent uniform points in the unit square,
/// `4 ln(1 + sqrt 2) - (4/3)(sqrt 2 - 1)`.
pub const SQUARE_SELF_ENERGY: f64 = 2.973_209_598_247_378_5;

/// `int_P dy / |x - y|` for a counterclockwise polygon `P` with unit density.
///
/// Closed form: each edge contributes `d (asinh(t_b/|d|) - asinh(t_a/|d|))`
/// where `d` is the signed distance of `x` to the edge line (positive on the
/// interior side) and `t_a`, `t_b` are the edge endpoints measured along the
/// line from the foot of `x`.
pub fn polygon_potential(vertices: &[Point], x: Point) -> f64 {
    let n = vertices.len();
    let mut total = 0.0;
    for k in 0..n {
        let a = vertices[k];
        let b = vertices[(k + 1) % n];
        let edge = b - a;
        let len = edge.norm();
        if len == 0.0 {
            continue;
        }
        let u = edge * (1.0 / len);
        let rel = x - a;
        let d = u.cross(rel);
        if d == 0.0 {
            continue;
        }
        let ta = -rel.dot(u);
        let tb = ta + len;
        let ad = d.abs();
        total += d * ((tb / ad).asinh() - (ta / ad).asinh());
    }
    total
}

/// Gauss-Legendre rule mapped to `[0, 1]`.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(order: usize) -> Self {
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        for i in 0..order {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=order {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                if order == 1 {
                    p1 = x;
                    p0 = 1.0;
                }
                dp = order as f64 * (x * p1 - p0) / (x * x - 1.0);
                let step = p1 / dp;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            nodes.push(0.5 * (1.0 - x));
            weights.push(1.0 / ((1.0 - x * x) * dp * dp));
        }
        Self { nodes, weights }
    }
}

fn rule(order: usize) -> &'static GaussRule {
    static R8: OnceLock<GaussRule> = OnceLock::new();
    static R4: OnceLock<GaussRule> = OnceLock::new();
    match order {
        8 => R8.get_or_init(|| GaussRule::new(8)),
        4 => R4.get_or_init(|| GaussRule::new(4)),
        _ => panic!("unsupported quadrature order {order}"),
    }
}

/// Weighted points integrating over a polygon: a fan of triangles from
/// `apex`, each with a collapsed tensor Gauss rule. Orientation signs make
/// the rule valid for nonconvex loops as well.
pub fn polygon_quadrature(vertices: &[Point], apex: Point, order: usize) -> Vec<(Point, f64)> {
    let g = rule(order);
    let n = vertices.len();
    let mut out = Vec::with_capacity(n * order * order);
    for k in 0..n {
        let p1 = vertices[k];
        let p2 = vertices[(k + 1) % n];
        let e1 = p1 - apex;
        let e2 = p2 - apex;
        let jac = e1.cross(e2);
        if jac == 0.0 {
            continue;
        }
        for (&a, &wa) in g.nodes.iter().zip(&g.weights) {
            for (&b, &wb) in g.nodes.iter().zip(&g.weights) {
                let v = b * (1.0 - a);
                out.push((apex + e1 * a + e2 * v, wa * wb * (1.0 - a) * jac));
            }
        }
    }
    out
}

/// `int_P int_Q dx dy / |x - y|` with the inner integral in closed form.
pub fn pair_integral(p: &[Point], p_apex: Point, q: &[Point], order: usize) -> f64 {
    polygon_quadrature(p, p_apex, order)
        .into_iter()
        .map(|(x, w)| w * polygon_potential(q, x))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Vec<Point> {
        vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)]
    }

    #[test]
    fn constant_matches_closed_form() {
        let exact = 4.0 * (1.0 + 2f64.sqrt()).ln() - 4.0 / 3.0 * (2f64.sqrt() - 1.0);
        assert!((SQUARE_SELF_ENERGY - exact).abs() < 1e-14);
    }

    #[test]
    fn square_self_energy_by_quasi_monte_carlo() {
        // Kronecker sequence in four dimensions, 1.6e7 points
        let phi4 = {
            let mut x: f64 = 1.5;
            for _ in 0..60 {
                x = (1.0 + x).powf(0.2);
            }
            x
        };
        let alpha = [1.0 / phi4, 1.0 / phi4.powi(2), 1.0 / phi4.powi(3), 1.0 / phi4.powi(4)];
        let samples = 16_000_000u64;
        let mut sum = 0.0;
        let mut s = [0.5f64; 4];
        for _ in 0..samples {
            for d in 0..4 {
                s[d] += alpha[d];
                if s[d] >= 1.0 {
                    s[d] -= 1.0;
                }
            }
            sum += 1.0 / (s[0] - s[2]).hypot(s[1] - s[3]);
        }
        let mean = sum / samples as f64;
        assert!((mean / SQUARE_SELF_ENERGY - 1.0).abs() < 1e-4, "qmc mean {mean}");
    }

    #[test]
    fn quadrature_reproduces_square_constant() {
        let sq = unit_square();
        let v = pair_integral(&sq, Point::new(0.5, 0.5), &sq, 8);
        assert!((v - SQUARE_SELF_ENERGY).abs() < 5e-5, "{v}");
    }

    #[test]
    fn gauss_rule_integrates_polynomials() {
        let g = GaussRule::new(8);
        let integral: f64 = g.nodes.iter().zip(&g.weights).map(|(x, w)| w * x.powi(15)).sum();
        assert!((integral - 1.0 / 16.0).abs() < 1e-14);
        let g1 = GaussRule::new(4);
        assert!((g1.weights.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn far_field_is_point_charge() {
        let sq = unit_square();
        let x = Point::new(100.5, 0.5);
        assert!((polygon_potential(&sq, x) - 0.01).abs() < 1e-7);
    }

    #[test]
    fn disk_centre_potential() {
        // the potential of a unit-density disk at its centre is 2 pi R
        let n = 4096;
        let v: Vec<Point> = (0..n)
            .map(|k| Point::polar(1.0, std::f64::consts::TAU * k as f64 / n as f64))
            .collect();
        let phi = polygon_potential(&v, Point::ORIGIN);
        assert!((phi - std::f64::consts::TAU).abs() < 1e-5);
    }
}
