//! Numeric types usable for approximation ratios.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::Num;

/// A field-like scalar that can represent the quotient of two integers.
///
/// `Ratio<i64>` gives exact comparisons; `f64`/`f32` are for display and
/// plotting.
pub trait Scalar: Num + Copy + PartialOrd + Debug {
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn to_f64(self) -> f64;
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }

    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for Ratio<i64> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }

    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_reduced() {
        let r = <Ratio<i64> as Scalar>::from_ratio(2, 8);
        assert_eq!(r, Ratio::new(1, 4));
        assert_eq!(r.to_f64(), 0.25);
        assert_eq!(<f64 as Scalar>::from_int(3), 3.0);
    }
}
