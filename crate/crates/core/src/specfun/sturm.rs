//! Exact real-root counting with Sturm sequences.

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::RationalPolynomial;

/// Sturm chain `p, p', -rem(p, p'), ...`, each member rescaled to a
/// primitive integer polynomial (positive factors do not affect signs).
pub fn sturm_sequence(p: &RationalPolynomial) -> Vec<RationalPolynomial> {
    let mut seq = vec![p.primitive_part()];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d.primitive_part());
    loop {
        let n = seq.len();
        let (_, rem) = seq[n - 2].div_rem(&seq[n - 1]);
        if rem.is_zero() {
            break;
        }
        seq.push((-&rem).primitive_part());
    }
    seq
}

fn sign_variations(seq: &[RationalPolynomial], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots in the half-open interval `(lo, hi]`.
pub fn count_distinct_roots(p: &RationalPolynomial, lo: &BigRational, hi: &BigRational) -> usize {
    assert!(!p.is_zero(), "zero polynomial has infinitely many roots");
    let seq = sturm_sequence(p);
    // Variation counts are only meaningful at non-roots; nudging an endpoint
    // root is avoided by the caller, which evaluates endpoints directly.
    sign_variations(&seq, lo).saturating_sub(sign_variations(&seq, hi))
}

/// True iff `p` has no real root in the closed interval `[lo, hi]`.
///
/// Endpoints are checked by exact evaluation, the interior by a Sturm
/// root count; no floating point is involved.
pub fn sturm_constant_sign(p: &RationalPolynomial, lo: &BigRational, hi: &BigRational) -> bool {
    assert!(!p.is_zero(), "sturm_constant_sign needs a nonzero polynomial");
    assert!(lo < hi, "empty interval");
    if p.eval(lo).is_zero() || p.eval(hi).is_zero() {
        return false;
    }
    count_distinct_roots(p, lo, hi) == 0
}
