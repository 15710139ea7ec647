//! Round guarantees of the greedy procedure, upper bounds on the optimum, and
//! the resulting approximation ratios.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{FactorShape, ShapeKind};
use crate::scalar::Scalar;

/// A bound that holds only if El-Zahar's conjecture holds for cycles of
/// length `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionalBound {
    pub rounds: usize,
    pub conditional: bool,
    /// The conjecture is a theorem for `k <= 5`.
    pub conjecture_proven: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub n: usize,
    pub shape: FactorShape,
    pub guarantee: usize,
    pub conditional_guarantee: Option<ConditionalBound>,
    pub opt_upper: usize,
    /// `guarantee / opt_upper` for this instance.
    #[serde(skip)]
    pub approx_ratio: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioReport<T> {
    pub instance: T,
    pub worst_case: T,
    /// Whether `n` lies in the range where the worst-case ratio is claimed.
    pub in_regime: bool,
}

impl<T: Scalar> RatioReport<T> {
    pub fn holds(&self) -> bool {
        !self.in_regime || self.instance >= self.worst_case
    }
}

fn floor_div(num: i64, den: i64) -> i64 {
    num.div_euclid(den)
}

/// Clique-factor guarantee `floor(n / (k(k-1)))`, or `n/2 (+1 if 4 | n)` for matchings.
fn clique_guarantee(n: usize, k: usize) -> usize {
    if k == 2 {
        n / 2 + usize::from(n.is_multiple_of(4))
    } else {
        n / (k * (k - 1))
    }
}

fn cycle_guarantee(n: usize) -> usize {
    (n + 4) / 6
}

/// `floor((n+2)/4)` for even `k`, `floor((n+2)/4 - n/(4k))` for odd `k`.
fn cycle_conditional(n: usize, k: usize) -> usize {
    if k.is_multiple_of(2) {
        (n + 2) / 4
    } else {
        floor_div(((n + 2) * k - n) as i64, (4 * k) as i64) as usize
    }
}

pub fn guarantee_rounds(n: usize, shape: FactorShape) -> Result<usize> {
    shape.check_divides(n)?;
    let g = match shape.kind {
        ShapeKind::Clique => clique_guarantee(n, shape.k),
        ShapeKind::Cycle => cycle_guarantee(n),
    };
    // Triangle factors are both clique- and cycle-factors.
    Ok(if shape.is_triangle() {
        g.max(clique_guarantee(n, 3)).max(cycle_guarantee(n))
    } else {
        g
    })
}

pub fn opt_upper(n: usize, shape: FactorShape) -> usize {
    match shape.kind {
        ShapeKind::Clique => (n - 1) / (shape.k - 1),
        ShapeKind::Cycle => (n - 1) / 2,
    }
}

pub fn guarantee_bound<T: Scalar>(n: usize, shape: FactorShape) -> Result<BoundReport<T>> {
    let guarantee = guarantee_rounds(n, shape)?;
    let conditional_guarantee = (shape.kind == ShapeKind::Cycle).then(|| ConditionalBound {
        rounds: cycle_conditional(n, shape.k),
        conditional: true,
        conjecture_proven: shape.k <= 5,
    });
    let opt = opt_upper(n, shape);
    Ok(BoundReport {
        n,
        shape,
        guarantee,
        conditional_guarantee,
        opt_upper: opt,
        approx_ratio: T::from_ratio(guarantee as i64, opt.max(1) as i64),
    })
}

/// Worst-case approximation ratio of the greedy procedure.
///
/// Cliques: `(k-1)/(2k^2-3k-1)` for `k >= 3`, `1/2` for matchings.
/// Cycles: `1/(3+eps)`.
pub fn worst_case_ratio<T: Scalar>(shape: FactorShape, epsilon: T) -> T {
    match shape.kind {
        ShapeKind::Clique if shape.k == 2 => T::from_ratio(1, 2),
        ShapeKind::Clique => {
            let k = shape.k as i64;
            T::from_ratio(k - 1, 2 * k * k - 3 * k - 1)
        }
        ShapeKind::Cycle => T::one() / (T::from_int(3) + epsilon),
    }
}

/// Instance ratio with `eps = 1` for cycles.
pub fn approx_ratio<T: Scalar>(n: usize, shape: FactorShape) -> Result<RatioReport<T>> {
    approx_ratio_eps(n, shape, T::one())
}

pub fn approx_ratio_eps<T: Scalar>(
    n: usize,
    shape: FactorShape,
    epsilon: T,
) -> Result<RatioReport<T>> {
    if epsilon <= T::zero() {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    let b = guarantee_bound::<T>(n, shape)?;
    let in_regime = match shape.kind {
        ShapeKind::Clique if shape.k == 2 => true,
        ShapeKind::Clique => {
            let k = shape.k;
            n >= 2 * k * (k - 1) - k
        }
        // n >= 12/eps + 6
        ShapeKind::Cycle => T::from_int(n as i64) >= T::from_int(12) / epsilon + T::from_int(6),
    };
    Ok(RatioReport {
        instance: b.approx_ratio,
        worst_case: worst_case_ratio(shape, epsilon),
        in_regime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn clique(k: usize) -> FactorShape {
        FactorShape::clique(k).unwrap()
    }

    fn cycle(k: usize) -> FactorShape {
        FactorShape::cycle(k).unwrap()
    }

    #[test]
    fn guarantee_examples() {
        assert_eq!(guarantee_bound::<f64>(6, clique(2)).unwrap().guarantee, 3);
        assert_eq!(guarantee_bound::<f64>(8, clique(2)).unwrap().guarantee, 5);
        let b = guarantee_bound::<f64>(24, cycle(3)).unwrap();
        assert_eq!(b.guarantee, 4);
        assert_eq!(b.conditional_guarantee.unwrap().rounds, 4);
        assert!(b.conditional_guarantee.unwrap().conditional);
        assert!(guarantee_bound::<f64>(7, clique(2)).is_err());
        assert!(guarantee_bound::<f64>(12, clique(4))
            .unwrap()
            .conditional_guarantee
            .is_none());
    }

    #[test]
    fn conditional_values() {
        assert_eq!(cycle_conditional(12, 4), 3);
        assert_eq!(cycle_conditional(24, 3), 4);
        assert_eq!(cycle_conditional(54, 6), 14);
        assert_eq!(cycle_conditional(15, 5), 3);
    }

    #[test]
    fn ratio_examples() {
        let w = worst_case_ratio::<Rational64>(clique(3), Rational64::from_integer(1));
        assert_eq!(w, Rational64::new(1, 4));
        let r = approx_ratio::<Rational64>(30, clique(3)).unwrap();
        assert_eq!(r.instance, Rational64::new(5, 14));
        assert!(r.holds());
        let m = approx_ratio::<f64>(102, clique(2)).unwrap();
        assert!((m.instance - 51.0 / 101.0).abs() < 1e-12);
        assert!(approx_ratio::<f64>(30, cycle(3)).unwrap().holds());
    }

    #[test]
    fn triangle_shapes_share_a_guarantee() {
        for n in (3..=60).step_by(3) {
            assert_eq!(
                guarantee_rounds(n, clique(3)).unwrap(),
                guarantee_rounds(n, cycle(3)).unwrap()
            );
        }
    }
}
