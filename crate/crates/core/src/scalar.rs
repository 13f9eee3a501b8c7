//! The coefficient-field abstraction the series layer is generic over.
//! Exact scalars only: the rationals and the cyclotomic fields.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::cyclo::CycloElem;
use crate::error::Result;
use crate::rational::Rational;

/// An exact field of characteristic zero usable as series coefficients.
pub trait CoeffField:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Multiplicative inverse; errors on zero (or incompatible operands).
    fn inv(&self) -> Result<Self>;

    /// Canonical embedding of Q.
    fn from_rational(r: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n))
    }

    /// Divide by a rational scalar; errors on zero.
    fn div_rational(&self, r: &Rational) -> Result<Self> {
        Ok(self.clone() * Self::from_rational(&r.inv()?))
    }

    /// Minimum p-adic order over the coordinates; `None` for zero.
    fn min_ord_p(&self, p: u64) -> Option<i64>;

    /// True when the element lies in Z_(p) (coordinatewise for cyclotomics).
    fn is_p_integral(&self, p: u64) -> bool {
        self.min_ord_p(p).map_or(true, |v| v >= 0)
    }
}

impl CoeffField for Rational {
    fn inv(&self) -> Result<Self> {
        Rational::inv(self)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn min_ord_p(&self, p: u64) -> Option<i64> {
        self.ord_p(p)
    }
}

impl CoeffField for CycloElem {
    fn inv(&self) -> Result<Self> {
        self.try_inv()
    }

    fn from_rational(r: &Rational) -> Self {
        CycloElem::from_rational(r.clone())
    }

    fn min_ord_p(&self, p: u64) -> Option<i64> {
        self.coeffs().iter().filter_map(|c| c.ord_p(p)).min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_scalar_ops() {
        let r: Rational = "4/9".parse().unwrap();
        assert_eq!(CoeffField::inv(&r).unwrap(), "9/4".parse().unwrap());
        assert_eq!(r.min_ord_p(3), Some(-2));
        assert!(!r.is_p_integral(3));
        assert!(r.is_p_integral(5));
    }

    #[test]
    fn cyclo_scalar_ops() {
        let e = CycloElem::new(3, vec!["5/2".parse().unwrap(), "1/4".parse().unwrap()]).unwrap();
        assert_eq!(e.min_ord_p(2), Some(-2));
        assert!(!e.is_p_integral(2));
        assert!(e.is_p_integral(7));
        let prod = CoeffField::inv(&e).unwrap() * e;
        assert!(num_traits::One::is_one(&prod));
    }
}
