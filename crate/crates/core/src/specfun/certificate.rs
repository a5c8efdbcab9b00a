//! Exact Taylor truncations of `K`, `E` and the sign certificate for
//! `g(x) = 3E - (2 - x)K - (1 - x)K^2/E` on `[0, 1]`.
//!
//! Every polynomial here carries the common factor `pi` implicitly:
//! `K_15(x) = pi * taylor_k15()(x)` and likewise for `E_15`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::RationalPolynomial;
use super::sturm::sturm_constant_sign;
use super::SpecfunError;

/// Order of the truncations used by the certificate.
pub const TAYLOR_ORDER: usize = 15;

/// `[(2k)! / (2^{2k} (k!)^2)]^2` for `k = 0..=order`, exactly.
fn squared_central_ratios(order: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut c = BigRational::one();
    out.push(c.clone());
    for k in 1..=order {
        c *= BigRational::new(BigInt::from(2 * k - 1), BigInt::from(2 * k));
        out.push(&c * &c);
    }
    out
}

/// Rational part of the degree-`order` truncation of `K(x) / pi`.
pub fn taylor_k(order: usize) -> RationalPolynomial {
    let half = BigRational::new(1.into(), 2.into());
    RationalPolynomial::new(squared_central_ratios(order).into_iter().map(|c| c * &half).collect())
}

/// Rational part of the degree-`order` truncation of `E(x) / pi`.
pub fn taylor_e(order: usize) -> RationalPolynomial {
    RationalPolynomial::new(
        squared_central_ratios(order)
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                // -c / (2 (2k - 1)); at k = 0 this is +1/2
                -c / BigRational::from_integer(BigInt::from(2 * (2 * k as i64 - 1)))
            })
            .collect(),
    )
}

pub fn taylor_k15() -> RationalPolynomial {
    taylor_k(TAYLOR_ORDER)
}

pub fn taylor_e15() -> RationalPolynomial {
    taylor_e(TAYLOR_ORDER)
}

/// `3e^2 - (2 - x)ke - (1 - x)k^2` for rational parts `k`, `e` of `K`, `E`.
///
/// With `K = pi k` and `E = pi e` this is `(E g(x)) / pi^2`.
pub fn g_numerator(k: &RationalPolynomial, e: &RationalPolynomial) -> RationalPolynomial {
    let x = RationalPolynomial::x();
    let one = RationalPolynomial::one();
    let two = RationalPolynomial::from_integers(&[2]);
    let three = RationalPolynomial::from_integers(&[3]);
    let ke = k * e;
    let kk = k * k;
    &(&(&three * &(e * e)) - &(&(&two - &x) * &ke)) - &(&(&one - &x) * &kk)
}

/// The pair of polynomials bounding `g` from above:
/// `g(x) <= pi * x^4 * numerator(x) / denominator(x)` on `(0, 1)`.
#[derive(Clone, Debug)]
pub struct SignCertificate {
    /// Degree-27 numerator, positive at 0.
    pub numerator: RationalPolynomial,
    /// Degree-15 denominator, negative at 0 (it is `-E_15 / pi`).
    pub denominator: RationalPolynomial,
}

impl SignCertificate {
    /// Evaluates the bound `pi x^4 P(x)/Q(x)` exactly up to the factor `pi`.
    pub fn rational_bound(&self, x: &BigRational) -> BigRational {
        let x4 = x * x * x * x;
        x4 * self.numerator.eval(x) / self.denominator.eval(x)
    }

    /// Exact verification that neither polynomial vanishes on `[0, 1]` and
    /// that the signs at 0 are as required.
    pub fn verify(&self) -> CertificateReport {
        let zero = BigRational::zero();
        let one = BigRational::one();
        CertificateReport {
            numerator_degree: self.numerator.degree(),
            denominator_degree: self.denominator.degree(),
            numerator_positive_at_zero: self.numerator.coeff(0).is_positive(),
            denominator_negative_at_zero: self.denominator.coeff(0).is_negative(),
            numerator_root_free: sturm_constant_sign(&self.numerator, &zero, &one),
            denominator_root_free: sturm_constant_sign(&self.denominator, &zero, &one),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub numerator_degree: Option<usize>,
    pub denominator_degree: Option<usize>,
    pub numerator_positive_at_zero: bool,
    pub denominator_negative_at_zero: bool,
    pub numerator_root_free: bool,
    pub denominator_root_free: bool,
}

impl CertificateReport {
    pub fn holds(&self) -> bool {
        self.numerator_degree == Some(27)
            && self.denominator_degree == Some(15)
            && self.numerator_positive_at_zero
            && self.denominator_negative_at_zero
            && self.numerator_root_free
            && self.denominator_root_free
    }
}

/// Substitutes `K >= K_15` and `E <= E_15` into `g`, clears the `E_15`
/// denominator and factors out `x^4`.
///
/// Each substitution can only increase `g`, so the resulting rational
/// function is an upper bound. A nonzero coefficient below `x^4` means the
/// truncations disagree with the true low-order behaviour of `g`.
pub fn derive_certificate() -> Result<SignCertificate, SpecfunError> {
    let k = taylor_k15();
    let e = taylor_e15();
    let numerator = g_numerator(&k, &e);
    let reduced = numerator
        .divide_by_x_power(4)
        .ok_or(SpecfunError::Certificate("x^4 does not divide the bound numerator"))?;
    Ok(SignCertificate { numerator: -&reduced, denominator: -&e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{dudko_g, elliptic_e, elliptic_k};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn taylor_low_coefficients() {
        let k = taylor_k15();
        let e = taylor_e15();
        assert_eq!(k.degree(), Some(15));
        assert_eq!(e.degree(), Some(15));
        assert_eq!(k.coeff(0), q(1, 2));
        assert_eq!(e.coeff(0), q(1, 2));
        assert_eq!(k.coeff(1), q(1, 8));
        assert_eq!(e.coeff(1), q(-1, 8));
        // (3/8)^2 / 2 and -(3/8)^2 / 6
        assert_eq!(k.coeff(2), q(9, 128));
        assert_eq!(e.coeff(2), q(-3, 128));
    }

    #[test]
    fn truncations_bracket_the_functions() {
        let (k15, e15) = (taylor_k15(), taylor_e15());
        for i in 1..1000 {
            let x = i as f64 / 1000.0;
            let pi = std::f64::consts::PI;
            assert!(pi * k15.eval_f64(x) <= elliptic_k(x).unwrap() + 1e-14);
            assert!(pi * e15.eval_f64(x) >= elliptic_e(x).unwrap() - 1e-14);
        }
    }

    #[test]
    fn certificate_shape() {
        let cert = derive_certificate().unwrap();
        let report = cert.verify();
        assert_eq!(report.numerator_degree, Some(27));
        assert_eq!(report.denominator_degree, Some(15));
        assert_eq!(cert.numerator.coeff(0), q(3, 2048));
        assert_eq!(cert.denominator.coeff(0), q(-1, 2));
        assert!(report.holds(), "{report:?}");
    }

    #[test]
    fn bound_dominates_g_at_sample_points() {
        let cert = derive_certificate().unwrap();
        for (n, d) in [(1, 10), (1, 2), (9, 10), (99, 100)] {
            let x = n as f64 / d as f64;
            let bound = std::f64::consts::PI * num_traits::ToPrimitive::to_f64(&cert.rational_bound(&q(n, d))).unwrap();
            let g = dudko_g(x).unwrap();
            assert!(bound < 0.0);
            assert!(g <= bound, "x = {x}: g = {g}, bound = {bound}");
        }
    }
}
