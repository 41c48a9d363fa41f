//! Exact rational arithmetic and the combinatorial coefficients used by the
//! counting formulas.
//!
//! [`Rational`] wraps `num::BigRational`, kept in lowest terms with a positive
//! denominator, and serializes canonically as `"p/q"` (or `"p"` when the
//! denominator is 1). [`binomial`] returns 0 for any out-of-range lower index;
//! several recursion terms rely on that convention to drop boundary splits
//! silently instead of erroring.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::BigRational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// Builds `num/den` and reduces. Panics if `den` is zero.
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(num, den))
    }

    /// Convenience constructor from machine integers: `ratio(9, 2)` is 9/2.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Canonical string form: `"p"` for integers, `"p/q"` otherwise, with the
    /// sign on the numerator. Round-trips through [`Rational::from_str`].
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Error from parsing a rational string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational string {:?}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `"p"` and `"p/q"` with an optional leading minus on `p` and a
    /// positive `q`; anything else (including `"12//5"`, whitespace, or an
    /// empty part) is rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        let num_ok = match num_str.strip_prefix('-') {
            Some(rest) => digits(rest),
            None => digits(num_str),
        };
        if !num_ok {
            return Err(err());
        }
        let num: BigInt = num_str.parse().map_err(|_| err())?;
        let den: BigInt = match den_str {
            Some(d) if digits(d) => d.parse().map_err(|_| err())?,
            Some(_) => return Err(err()),
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(err());
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division of rationals by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division of rationals by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient with the out-of-range-to-zero convention:
/// `C(n,k) = 0` unless `0 ≤ k ≤ n`. In particular `binomial(1, 2) == 0` and
/// `binomial(-1, 0) == 0`; the recursion terms that reach the boundary of a
/// degree splitting rely on those zeros.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Multinomial coefficient `n! / (parts[0]! · parts[1]! · …)`, or 0 when the
/// parts do not sum to `n`. Panics on a negative part: the callers build parts
/// from counts that are nonnegative by construction, so a negative part is a
/// bug, not an input condition.
pub fn multinomial(n: i64, parts: &[i64]) -> BigInt {
    assert!(
        parts.iter().all(|&p| p >= 0),
        "multinomial part must be nonnegative, got {:?}",
        parts
    );
    if n < 0 || parts.iter().sum::<i64>() != n {
        return BigInt::zero();
    }
    let mut acc = factorial(n as u64);
    for &p in parts {
        acc /= factorial(p as u64);
    }
    acc
}

/// `r^e` for machine-sized inputs, with `0^0 = 1`.
pub fn int_pow(base: i64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

/// True if the rational is a nonnegative integer.
pub fn is_counting_number(x: &Rational) -> bool {
    x.is_integer() && !x.numer().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(7, 7), BigInt::from(1));
    }

    #[test]
    fn binomial_out_of_range_is_zero() {
        assert_eq!(binomial(1, 2), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(-2, -2), BigInt::zero());
    }

    #[test]
    fn binomial_pascal_rule() {
        for n in 1..=12i64 {
            for k in 1..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(5, &[5]), BigInt::from(1));
        assert_eq!(multinomial(5, &[1, 4]), BigInt::from(5));
        assert_eq!(multinomial(4, &[2, 2]), BigInt::from(6));
        assert_eq!(multinomial(6, &[1, 2, 3]), BigInt::from(60));
    }

    #[test]
    fn multinomial_sum_mismatch_is_zero() {
        assert_eq!(multinomial(5, &[2, 2]), BigInt::zero());
        assert_eq!(multinomial(3, &[2, 2]), BigInt::zero());
    }

    #[test]
    fn multinomial_reduces_to_binomial() {
        for n in 0..=10i64 {
            for k in 0..=n {
                assert_eq!(multinomial(n, &[k, n - k]), binomial(n, k));
            }
        }
    }

    #[test]
    #[should_panic(expected = "nonnegative")]
    fn multinomial_negative_part_panics() {
        multinomial(3, &[4, -1]);
    }

    #[test]
    fn display_integer_and_fraction() {
        assert_eq!(Rational::from(12).to_string(), "12");
        assert_eq!(Rational::ratio(9, 2).to_string(), "9/2");
        assert_eq!(Rational::ratio(-9, 2).to_string(), "-9/2");
        assert_eq!(Rational::ratio(4, 2).to_string(), "2");
        assert_eq!(Rational::ratio(0, 5).to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "12", "-7", "9/2", "-9/2", "1/3"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
    }

    #[test]
    fn parse_rejects_malformed() {
        for s in ["", "12//5", "1/0", "1/-2", "a", "1.5", " 2", "2 ", "+3", "3/", "/3"] {
            assert!(s.parse::<Rational>().is_err(), "accepted {:?}", s);
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = Rational::ratio(1, 3);
        let sixth = Rational::ratio(1, 6);
        assert_eq!(&third + &sixth, Rational::ratio(1, 2));
        assert_eq!(&third - &sixth, sixth);
        assert_eq!(&third * &sixth, Rational::ratio(1, 18));
        assert_eq!(&third / &sixth, Rational::from(2));
        assert_eq!(-&third, Rational::ratio(-1, 3));
    }

    #[test]
    fn counting_number_predicate() {
        assert!(is_counting_number(&Rational::from(0)));
        assert!(is_counting_number(&Rational::from(36)));
        assert!(!is_counting_number(&Rational::ratio(9, 2)));
        assert!(!is_counting_number(&Rational::from(-1)));
    }
}
