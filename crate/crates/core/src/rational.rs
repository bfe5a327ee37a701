//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which already maintains the
//! invariants this crate relies on: values are stored fully reduced, the
//! denominator is positive, and zero is 0/1.

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`; use the parser for
/// untrusted input.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Lossy conversion to f64 that stays finite for ratios of huge integers.
///
/// `Ratio::to_f64` divides the f64 images of numerator and denominator, so a
/// ratio of two 2000-bit integers becomes `inf/inf = NaN`. Here both parts are
/// shifted into f64 range first and the exponent is reapplied at the end.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let numer = r.numer();
    let denom = r.denom();
    let nbits = numer.bits() as i64;
    let dbits = denom.bits() as i64;

    let shift = |v: &BigInt, bits: i64| -> (f64, i64) {
        // Keep ~63 significant bits so the BigInt -> f64 conversion is exact
        // up to rounding of the discarded low bits.
        let excess = (bits - 63).max(0);
        let shifted = v >> excess as usize;
        (shifted.to_f64().unwrap_or(f64::INFINITY), excess)
    };

    let (nf, nshift) = shift(numer, nbits);
    let (df, dshift) = shift(denom, dbits);
    let mut value = nf / df;
    let exp = nshift - dshift;
    // exp can exceed f64's exponent range; split the scaling in two.
    let half = (exp / 2) as i32;
    value *= 2f64.powi(half);
    value *= 2f64.powi((exp - half as i64) as i32);
    value
}

/// Canonical text form: `n` when the denominator is 1, else `n/d`.
pub fn rational_to_string(r: &Rational) -> String {
    r.to_string()
}

pub fn is_negative(r: &Rational) -> bool {
    r.numer().sign() == Sign::Minus
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_sign_invariants() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(rat(0, 5), rat_int(0));
    }

    #[test]
    fn big_ratio_to_f64_is_finite() {
        // 3 * 10^400 / 10^400 = 3, far outside f64 range for each part.
        let big = BigInt::from(10).pow(400);
        let r = Rational::new(BigInt::from(3) * &big, big);
        let f = rational_to_f64(&r);
        assert!((f - 3.0).abs() < 1e-12);

        let tiny = Rational::new(BigInt::from(1), BigInt::from(10).pow(400));
        assert_eq!(rational_to_f64(&tiny), 0.0);
    }

    #[test]
    fn ordinary_values_convert_exactly() {
        assert_eq!(rational_to_f64(&rat(-3, 4)), -0.75);
        assert_eq!(rational_to_f64(&rat_int(42)), 42.0);
    }
}
