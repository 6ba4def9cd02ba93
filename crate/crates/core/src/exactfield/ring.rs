use std::fmt;

use super::Rational;

/// A commutative Q-algebra with exact arithmetic.
///
/// Elements know their parent (the ambient algebra), so generic code can
/// build zeros and ones without extra context. Every algebra in this crate
/// contains Q, which is what makes `scale` and `from_rational` available.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Parent: Clone + PartialEq + fmt::Debug;

    fn parent(&self) -> Self::Parent;
    fn zero(parent: &Self::Parent) -> Self;
    fn one(parent: &Self::Parent) -> Self;
    fn from_rational(parent: &Self::Parent, q: &Rational) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse, or `None` for non-units (zero divisors
    /// included).
    fn try_inverse(&self) -> Option<Self>;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.parent())
    }

    fn is_unit(&self) -> bool {
        self.try_inverse().is_some()
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.parent());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn from_integer(parent: &Self::Parent, n: i64) -> Self {
        Self::from_rational(parent, &Rational::from_integer(n))
    }
}
