//! Closed-form Wiener indices, second moments and element counts, in exact
//! arithmetic, plus exact scaled means for asymptotic trend checks.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::real::Real;

/// Exact rational number in canonical reduced form.
pub type ExactRational = BigRational;

/// `C(n, k)` by the multiplicative formula; every intermediate division is exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        let (q, r) = acc.div_rem(&BigUint::from(i + 1));
        debug_assert!(r.is_zero());
        acc = q;
    }
    acc
}

fn exact_div(num: BigUint, den: BigUint, what: &str) -> BigUint {
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "{what}: formula value is not an integer");
    q
}

fn rational_to_integer(q: BigRational, what: &str) -> BigUint {
    assert!(q.is_integer(), "{what}: formula value is not an integer");
    q.to_integer()
        .to_biguint()
        .unwrap_or_else(|| panic!("{what}: formula value is negative"))
}

/// `mk/(4m+4k+2) · C(2m+2k+2, 2k+1)`.
pub fn wiener_rectangle(m: u64, k: u64) -> Result<BigUint> {
    if m == 0 || k == 0 {
        return invalid("rectangle dimensions must be positive");
    }
    let num = BigUint::from(m) * k * binomial(2 * m + 2 * k + 2, 2 * k + 1);
    Ok(exact_div(num, BigUint::from(4 * m + 4 * k + 2), "wiener_rectangle"))
}

/// `2n(2n+1)/3 · C(2n−1, n)`.
pub fn wiener_staircase(n: u64) -> Result<BigUint> {
    if n == 0 {
        return invalid("staircase size must be positive");
    }
    let num = BigUint::from(2 * n) * (2 * n + 1) * binomial(2 * n - 1, n);
    Ok(exact_div(num, BigUint::from(3u32), "wiener_staircase"))
}

/// `2/3 · (t+3)(4t² + 9t + 8)` for the double-tailed diamond with tail `t`.
pub fn wiener_diamond(t: u64) -> BigUint {
    let num = BigUint::from(2u32) * (t + 3) * (4 * t * t + 9 * t + 8);
    exact_div(num, BigUint::from(3u32), "wiener_diamond")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Exceptional {
    E6,
    E7,
}

pub fn wiener_exceptional(kind: Exceptional) -> BigUint {
    match kind {
        Exceptional::E6 => 3584u32.into(),
        Exceptional::E7 => 24048u32.into(),
    }
}

/// `(1/30)·((m+k+1)/(m+k))·C(m+k, m−1)·C(m+k, k−1)·P(m, k)`.
pub fn second_moment_rectangle(m: u64, k: u64) -> Result<BigUint> {
    if m == 0 || k == 0 {
        return invalid("rectangle dimensions must be positive");
    }
    let poly = 7 * m * k * k + 7 * m * m * k + 3 * m * m + 10 * m * k + 3 * k * k + 3 * m + 3 * k + 4;
    let num = BigUint::from(m + k + 1)
        * binomial(m + k, m - 1)
        * binomial(m + k, k - 1)
        * poly;
    Ok(exact_div(num, BigUint::from(30 * (m + k)), "second_moment_rectangle"))
}

/// `2^(2n−4) · n · (20 + 15(n−2) + 3(n−2)²)`.
pub fn second_moment_staircase(n: u64) -> Result<BigUint> {
    if n == 0 {
        return invalid("staircase size must be positive");
    }
    let s = n as i64 - 2;
    let poly = BigInt::from(20 + 15 * s + 3 * s * s) * BigInt::from(n);
    let exp = 2 * n as i64 - 4;
    let q = if exp >= 0 {
        BigRational::from_integer(poly << exp as usize)
    } else {
        BigRational::new(poly, BigInt::one() << (-exp) as usize)
    };
    Ok(rational_to_integer(q, "second_moment_staircase"))
}

/// A parametrized family of minuscule lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum Family {
    Rect { m: u64, k: u64 },
    Stair { n: u64 },
    Diamond { t: u64 },
}

/// Number of elements of the lattice.
pub fn count(family: Family) -> BigUint {
    match family {
        Family::Rect { m, k } => binomial(m + k, k),
        Family::Stair { n } => BigUint::one() << n as usize,
        Family::Diamond { t } => BigUint::from(2 * t + 4),
    }
}

pub fn wiener(family: Family) -> Result<BigUint> {
    match family {
        Family::Rect { m, k } => wiener_rectangle(m, k),
        Family::Stair { n } => wiener_staircase(n),
        Family::Diamond { t } => Ok(wiener_diamond(t)),
    }
}

/// Exact mean distance between two independent uniform elements.
pub fn mean_distance_exact(family: Family) -> Result<ExactRational> {
    let c = BigInt::from(count(family));
    Ok(BigRational::new(BigInt::from(wiener(family)?), &c * &c))
}

/// Mean distance divided by `n^(3/2)`.
///
/// For `Rect { m, k }` the scale parameter is `n = k` (the lattice is read
/// as `P_{αn, n}` with `α = m/k`); for staircases it is the staircase size.
pub fn scaled_mean(family: Family) -> Result<Real> {
    let n = match family {
        Family::Rect { k, .. } => k,
        Family::Stair { n } => n,
        Family::Diamond { .. } => return invalid("scaled mean is defined for rect and stair"),
    };
    let mean = mean_distance_exact(family)?;
    // mean / n^(3/2) = sqrt(mean² / n³)
    let squared = &mean * &mean / BigRational::from_integer(BigInt::from(n).pow(3));
    Ok(Real::from_rational(&squared).sqrt())
}

/// Limit of the scaled mean for `P_{αn, n}`: `√(πα(1+α))/4`.
pub fn rect_mean_limit(alpha: &BigRational) -> Real {
    let a = alpha * (alpha + BigRational::one());
    Real::pi().mul(&Real::from_rational(&a)).sqrt().div(&Real::from_integer(4))
}

/// Limit of the scaled mean for shifted staircases: `2/(3√π)`.
pub fn stair_mean_limit() -> Real {
    Real::from_integer(2).div(&Real::from_integer(3).mul(&Real::pi().sqrt()))
}

/// Left side of the three-term recurrence satisfied by the staircase Wiener
/// indices, scaled by `2^(2n+5)`:
/// `16(2n+3)a_n − 4(4n+5)a_{n+1} + (2n+2)a_{n+2}`.
pub fn staircase_recurrence_residual(n: u64, a: &[BigRational]) -> BigRational {
    let n_ = n as usize;
    let c = |v: u64| BigRational::from_integer(BigInt::from(v));
    c(16 * (2 * n + 3)) * &a[n_] - c(4 * (4 * n + 5)) * &a[n_ + 1] + c(2 * n + 2) * &a[n_ + 2]
}

/// The same recurrence with the original power-of-two weights
/// `(2n+3)2^(−2n−1)a_n − (4n+5)2^(−2n−3)a_{n+1} + (2+2n)2^(−2n−5)a_{n+2}`.
pub fn staircase_recurrence_weighted(n: u64, a: &[BigRational]) -> BigRational {
    let n_ = n as usize;
    let w = |num: u64, exp: u64| {
        BigRational::new(BigInt::from(num), BigInt::one() << exp as usize)
    };
    w(2 * n + 3, 2 * n + 1) * &a[n_] - w(4 * n + 5, 2 * n + 3) * &a[n_ + 1]
        + w(2 + 2 * n, 2 * n + 5) * &a[n_ + 2]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        v.into()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), big(252));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(3, 5), big(0));
        // Pascal's rule as an independent oracle
        for n in 1..40 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn rectangle_values() {
        assert_eq!(wiener_rectangle(2, 2).unwrap(), big(56));
        assert_eq!(wiener_rectangle(1, 1).unwrap(), big(2));
        assert_eq!(wiener_rectangle(1, 2).unwrap(), big(8));
        assert!(wiener_rectangle(0, 2).is_err());
    }

    #[test]
    fn staircase_values() {
        assert_eq!(wiener_staircase(3).unwrap(), big(140));
        assert_eq!(wiener_staircase(1).unwrap(), big(2));
        assert_eq!(wiener_staircase(2).unwrap(), big(20));
        assert!(wiener_staircase(0).is_err());
    }

    #[test]
    fn diamond_and_exceptional_values() {
        assert_eq!(wiener_diamond(0), big(16));
        assert_eq!(wiener_diamond(1), big(56));
        assert_eq!(wiener_diamond(2), big(140));
        assert_eq!(wiener_exceptional(Exceptional::E6), big(3584));
        assert_eq!(wiener_exceptional(Exceptional::E7), big(24048));
    }

    #[test]
    fn second_moments() {
        assert_eq!(second_moment_rectangle(1, 1).unwrap(), big(2));
        assert_eq!(second_moment_rectangle(1, 2).unwrap(), big(12));
        assert_eq!(second_moment_staircase(1).unwrap(), big(2));
        assert_eq!(second_moment_staircase(2).unwrap(), big(40));
        assert_eq!(second_moment_staircase(3).unwrap(), big(456));
    }

    #[test]
    fn counts() {
        assert_eq!(count(Family::Rect { m: 2, k: 2 }), big(6));
        assert_eq!(count(Family::Stair { n: 3 }), big(8));
        assert_eq!(count(Family::Diamond { t: 0 }), big(4));
    }

    #[test]
    fn exact_means() {
        let q = mean_distance_exact(Family::Rect { m: 1, k: 1 }).unwrap();
        assert_eq!(q, BigRational::new(1.into(), 2.into()));
        assert!(scaled_mean(Family::Diamond { t: 1 }).is_err());
    }

    #[test]
    fn limits() {
        let one = BigRational::one();
        assert!(rect_mean_limit(&one).to_significant(7).starts_with("0.6266570"));
        assert!(stair_mean_limit().to_significant(7).starts_with("0.3761263"));
    }

    #[test]
    fn recurrence_holds() {
        let a: Vec<BigRational> = std::iter::once(BigRational::zero())
            .chain((1..=32).map(|n| BigRational::from_integer(wiener_staircase(n).unwrap().into())))
            .collect();
        assert_eq!(a[1], BigRational::from_integer(2.into()));
        for n in 0..=30 {
            assert!(staircase_recurrence_residual(n, &a).is_zero(), "n = {n}");
            assert!(staircase_recurrence_weighted(n, &a).is_zero(), "n = {n}");
        }
    }
}
