//! Fixed-point decimal reals backed by big integers.
//!
//! Used only at the reporting boundary (scaled means, limit constants); all
//! exact computations stay in integers and rationals.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serializer;

/// Number of decimal digits carried after the point.
pub const DIGITS: u32 = 60;

/// A real number `scaled / 10^DIGITS`, truncated toward negative infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Real {
    scaled: BigInt,
}

fn ten_pow(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

impl Real {
    pub fn zero() -> Self {
        Real { scaled: BigInt::zero() }
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Real {
            scaled: v.into() * ten_pow(DIGITS),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Real {
            scaled: (q.numer() * ten_pow(DIGITS)).div_floor(q.denom()),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(num.into(), den.into()))
    }

    /// π by Machin's formula `16 atan(1/5) − 4 atan(1/239)`.
    pub fn pi() -> Self {
        let guard = 10;
        let scale = ten_pow(DIGITS + guard);
        let atan_inv = |x: u32| -> BigInt {
            let x2 = BigInt::from(x * x);
            let mut power = &scale / BigInt::from(x);
            let mut sum = BigInt::zero();
            let mut k = 0u32;
            while !power.is_zero() {
                let term = &power / BigInt::from(2 * k + 1);
                if k.is_multiple_of(2) {
                    sum += term;
                } else {
                    sum -= term;
                }
                power /= &x2;
                k += 1;
            }
            sum
        };
        let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
        Real {
            scaled: pi / ten_pow(guard),
        }
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.scaled.is_negative(), "square root of a negative real");
        let wide = self.scaled.magnitude() * BigUint::from(10u32).pow(DIGITS);
        Real {
            scaled: BigInt::from_biguint(Sign::Plus, wide.sqrt()),
        }
    }

    pub fn mul(&self, other: &Real) -> Self {
        Real {
            scaled: (&self.scaled * &other.scaled).div_floor(&ten_pow(DIGITS)),
        }
    }

    pub fn div(&self, other: &Real) -> Self {
        assert!(!other.scaled.is_zero(), "division by zero");
        Real {
            scaled: (&self.scaled * ten_pow(DIGITS)).div_floor(&other.scaled),
        }
    }

    pub fn add(&self, other: &Real) -> Self {
        Real {
            scaled: &self.scaled + &other.scaled,
        }
    }

    pub fn sub(&self, other: &Real) -> Self {
        Real {
            scaled: &self.scaled - &other.scaled,
        }
    }

    pub fn abs(&self) -> Self {
        Real {
            scaled: self.scaled.abs(),
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        Real {
            scaled: (&self.scaled * q.numer()).div_floor(q.denom()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        // keep 17 significant digits worth of integer part
        let shift = DIGITS.saturating_sub(20);
        let reduced = &self.scaled / ten_pow(shift);
        reduced.to_f64().unwrap_or(f64::NAN) / 10f64.powi((DIGITS - shift) as i32)
    }

    /// Decimal rendering with `sig` significant digits (truncated).
    pub fn to_significant(&self, sig: usize) -> String {
        let negative = self.scaled.is_negative();
        let digits = self.scaled.magnitude().to_string();
        let point = digits.len() as i64 - DIGITS as i64;
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        if point <= 0 {
            let lead = (-point) as usize;
            let body: String = digits.chars().take(sig).collect();
            out.push_str("0.");
            out.push_str(&"0".repeat(lead));
            out.push_str(&body);
        } else {
            let point = point as usize;
            let take = sig.max(point).min(digits.len());
            let body = &digits[..take];
            out.push_str(&body[..point]);
            if take > point {
                out.push('.');
                out.push_str(&body[point..]);
            }
        }
        out
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_significant(50))
    }
}

/// `q^(1/2)` for a nonnegative rational.
pub fn sqrt_rational(q: &BigRational) -> Real {
    Real::from_rational(q).sqrt()
}

pub fn one() -> Real {
    Real::from_rational(&BigRational::one())
}

/// Serializes any `Display` value as a JSON string (used for big integers).
pub fn serialize_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
