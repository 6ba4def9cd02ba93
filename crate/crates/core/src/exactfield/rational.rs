use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AlgebraError, Ring};

/// An exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, AlgebraError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn floor(&self) -> Rational {
        Rational(self.0.floor())
    }

    /// The representative of `self` modulo Z lying in `[0, 1)`.
    pub fn fract_positive(&self) -> Rational {
        Rational(&self.0 - self.0.floor())
    }

    pub fn recip(&self) -> Option<Rational> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    /// p-adic valuation of a nonzero rational; `None` for zero.
    pub fn valuation(&self, p: &BigInt) -> Option<i64> {
        if self.0.is_zero() {
            return None;
        }
        let count = |mut n: BigInt| {
            let mut v = 0i64;
            loop {
                let (q, r) = n.div_rem(p);
                if !r.is_zero() {
                    return v;
                }
                n = q;
                v += 1;
            }
        };
        Some(count(self.numer().clone()) - count(self.denom().clone()))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::from_bigint(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl Ring for Rational {
    type Parent = ();

    fn parent(&self) -> Self::Parent {}

    fn zero(_: &()) -> Self {
        Rational::zero()
    }

    fn one(_: &()) -> Self {
        Rational::one()
    }

    fn from_rational(_: &(), q: &Rational) -> Self {
        q.clone()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn scale(&self, q: &Rational) -> Self {
        Ring::mul(self, q)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn try_inverse(&self) -> Option<Self> {
        self.recip()
    }
}

impl Rational {
    pub fn div(&self, rhs: &Rational) -> Option<Rational> {
        rhs.recip().map(|r| Ring::mul(self, &r))
    }

    pub fn cmp_abs(&self, other: &Rational) -> Ordering {
        self.0.abs().cmp(&other.0.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_on_construction() {
        let q = Rational::new(6, -4).unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Rational::new(0, 5).unwrap().to_string(), "0/1");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(Rational::new(1, 0), Err(AlgebraError::ZeroDenominator)));
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!("3/4".parse::<Rational>().unwrap(), Rational::new(3, 4).unwrap());
        assert_eq!("-7".parse::<Rational>().unwrap(), Rational::from_integer(-7));
        assert!("x/2".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn fract_and_valuation() {
        let q = Rational::new(-1, 3).unwrap();
        assert_eq!(q.fract_positive(), Rational::new(2, 3).unwrap());
        let w = Rational::new(3, 4).unwrap();
        assert_eq!(w.valuation(&BigInt::from(2)), Some(-2));
        assert_eq!(Rational::zero().valuation(&BigInt::from(2)), None);
    }
}
