//! Small arbitrary-precision helpers shared across the crate.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// `r^e` for a reduced rational; powers of a reduced fraction stay reduced.
pub(crate) fn ratio_pow(r: &BigRational, e: u32) -> BigRational {
    BigRational::new_raw(r.numer().pow(e), r.denom().pow(e))
}

/// Exact `x^(1/n)` when `x` is a perfect n-th power.
pub(crate) fn perfect_nth_root(x: &BigUint, n: u32) -> Option<BigUint> {
    debug_assert!(n >= 1);
    let root = x.nth_root(n);
    (root.pow(n) == *x).then_some(root)
}

/// Exact n-th root of a nonnegative reduced rational, if it is rational.
pub(crate) fn perfect_nth_root_ratio(x: &BigRational, n: u32) -> Option<BigRational> {
    debug_assert!(!x.is_negative());
    let num = perfect_nth_root(x.numer().magnitude(), n)?;
    let den = perfect_nth_root(x.denom().magnitude(), n)?;
    Some(BigRational::new_raw(num.into(), den.into()))
}

fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().unwrap().log2();
    }
    let top: BigUint = x >> (bits - 53);
    top.to_f64().unwrap().log2() + (bits - 53) as f64
}

/// `r^(1/k)` as a double for nonnegative `r`, falling back to log-space
/// evaluation when the rational itself over/underflows f64 range.
pub(crate) fn ratio_root_f64(r: &BigRational, k: u32) -> f64 {
    debug_assert!(!r.is_negative() && k >= 1);
    if r.is_zero() {
        return 0.0;
    }
    if let Some(f) = r.to_f64() {
        if f.is_finite() && f > 0.0 {
            return f.powf(1.0 / f64::from(k));
        }
    }
    let l2 = log2_biguint(r.numer().magnitude()) - log2_biguint(r.denom().magnitude());
    (l2 / f64::from(k)).exp2()
}

/// Rational to double; desk-scale values round-trip within 0.5 ulp, extreme
/// magnitudes go through log space instead of saturating.
pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let Some(f) = r.to_f64() {
        if f.is_finite() && f != 0.0 {
            return f;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let l2 = log2_biguint(r.numer().magnitude()) - log2_biguint(r.denom().magnitude());
    sign * l2.exp2()
}

/// Ceiling of `w / 2` for a nonnegative width.
pub(crate) fn half_up(w: u64) -> u64 {
    w / 2 + w % 2
}

pub(crate) fn big_int_to_ratio(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}
