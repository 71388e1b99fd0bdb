//! Log-domain helpers and the NaN-free extended real type.

use std::cmp::Ordering;
use std::fmt;

/// `ln Σ exp(x_i)`, returning `-inf` for an empty input or all `-inf` terms.
///
/// A `+inf` term makes the result `+inf`.
pub fn log_sum_exp<I>(terms: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let terms: Vec<f64> = terms.into_iter().collect();
    log_sum_exp_slice(&terms)
}

pub fn log_sum_exp_slice(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    let sum: f64 = terms.iter().map(|&t| (t - max).exp()).sum();
    max + sum.ln()
}

/// A divergence value in `[-inf, +inf]`, measured in nats.
///
/// NaN is never representable: constructors reject it and every operation
/// exposed here maps onto a well-defined extended real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedReal(f64);

impl ExtendedReal {
    pub const ZERO: ExtendedReal = ExtendedReal(0.0);
    pub const INFINITY: ExtendedReal = ExtendedReal(f64::INFINITY);
    pub const NEG_INFINITY: ExtendedReal = ExtendedReal(f64::NEG_INFINITY);

    /// Wraps `value`, or returns `None` for NaN.
    pub fn new(value: f64) -> Option<Self> {
        if value.is_nan() {
            None
        } else {
            Some(ExtendedReal(value))
        }
    }

    /// Internal constructor for values the caller knows are not NaN.
    pub(crate) fn from_f64(value: f64) -> Self {
        debug_assert!(!value.is_nan(), "NaN divergence");
        ExtendedReal(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_pos_infinite(self) -> bool {
        self.0 == f64::INFINITY
    }

    pub fn is_neg_infinite(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// Sum of two values with the same sign convention; an infinite term absorbs.
    ///
    /// Opposite infinities have no meaningful sum; the result is `None`.
    pub fn checked_add(self, other: ExtendedReal) -> Option<ExtendedReal> {
        ExtendedReal::new(self.0 + other.0)
    }

    /// Multiplies by a finite scale, with `0 * inf = 0`.
    pub fn scale(self, factor: f64) -> ExtendedReal {
        if factor == 0.0 {
            ExtendedReal(0.0)
        } else {
            ExtendedReal(self.0 * factor)
        }
    }
}

impl Eq for ExtendedReal {}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).expect("ExtendedReal is never NaN")
    }
}

impl From<ExtendedReal> for f64 {
    fn from(x: ExtendedReal) -> f64 {
        x.0
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            write!(f, "inf")
        } else if self.0 == f64::NEG_INFINITY {
            write!(f, "-inf")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lse_handles_empty_and_infinite_terms() {
        assert_eq!(log_sum_exp(Vec::<f64>::new()), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp([f64::NEG_INFINITY, f64::NEG_INFINITY]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp([0.0, f64::INFINITY]), f64::INFINITY);
        let v = log_sum_exp([(0.25f64).ln(), (0.75f64).ln()]);
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn lse_is_stable_for_extreme_magnitudes() {
        let v = log_sum_exp([-1000.0, -1000.0]);
        assert!((v - (-1000.0 + 2f64.ln())).abs() < 1e-12);
        let v = log_sum_exp([800.0, 800.0]);
        assert!((v - (800.0 + 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn extended_real_rejects_nan_and_orders_totally() {
        assert!(ExtendedReal::new(f64::NAN).is_none());
        let mut v = [ExtendedReal::INFINITY, ExtendedReal::ZERO, ExtendedReal::NEG_INFINITY];
        v.sort();
        assert_eq!(v[0], ExtendedReal::NEG_INFINITY);
        assert_eq!(v[2], ExtendedReal::INFINITY);
        assert!(ExtendedReal::INFINITY.checked_add(ExtendedReal::NEG_INFINITY).is_none());
        assert_eq!(ExtendedReal::INFINITY.scale(0.0), ExtendedReal::ZERO);
        assert_eq!(ExtendedReal::INFINITY.to_string(), "inf");
    }
}
