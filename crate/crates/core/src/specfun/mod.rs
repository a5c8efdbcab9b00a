//! Special functions: complete elliptic integrals, the ratio functions used
//! for ellipse capacity bounds, and exact polynomial sign certificates.

mod certificate;
mod dudko;
mod elliptic;
mod poly;
mod sturm;

pub use certificate::{
    derive_certificate, g_numerator, taylor_e, taylor_e15, taylor_k, taylor_k15,
    CertificateReport, SignCertificate, TAYLOR_ORDER,
};
pub use dudko::{dudko_f, dudko_g, dudko_k_bound};
pub use elliptic::{elliptic_e, elliptic_k};
pub use poly::RationalPolynomial;
pub use sturm::{count_distinct_roots, sturm_constant_sign, sturm_sequence};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecfunError {
    #[error("{function} is undefined at {value}")]
    Domain { function: &'static str, value: f64 },
    #[error("certificate derivation failed: {0}")]
    Certificate(&'static str),
}
