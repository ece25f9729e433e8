//! Canonical quotients of polynomials.

use std::fmt;

use num_traits::{One, Zero};

use super::gcd::{gcd_with, GcdAlgorithm};
use super::poly::{Poly, Var};
use super::ExactError;

/// `num / den` in lowest terms. The denominator is primitive integral with a
/// positive leading coefficient, so two equal rational functions are
/// structurally equal. Zero is stored as `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExactError> {
        Self::new_with(num, den, GcdAlgorithm::default())
    }

    pub fn new_with(num: Poly, den: Poly, alg: GcdAlgorithm) -> Result<Self, ExactError> {
        if num.var() != den.var() {
            return Err(ExactError::VarMismatch {
                left: num.var(),
                right: den.var(),
            });
        }
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalize_parts(num, den, alg))
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.var());
        RatFun { num: p, den }
    }

    pub fn zero(var: Var) -> Self {
        Self::from_poly(Poly::zero(var))
    }

    fn normalize_parts(num: Poly, den: Poly, alg: GcdAlgorithm) -> Self {
        let var = num.var();
        if num.is_zero() {
            return RatFun {
                num,
                den: Poly::one(var),
            };
        }
        let g = gcd_with(&num, &den, alg).expect("denominator is nonzero");
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let (c, den) = den.primitive_part();
        let num = num.scale(&c.recip());
        RatFun { num, den }
    }

    /// Re-run normalization. Idempotent on values built by this type.
    pub fn renormalized(&self, alg: GcdAlgorithm) -> Self {
        Self::normalize_parts(self.num.clone(), self.den.clone(), alg)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.num.var()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn checked_add(&self, other: &RatFun) -> Result<RatFun, ExactError> {
        self.add_with(other, GcdAlgorithm::default())
    }

    pub fn add_with(&self, other: &RatFun, alg: GcdAlgorithm) -> Result<RatFun, ExactError> {
        if self.var() != other.var() {
            return Err(ExactError::VarMismatch {
                left: self.var(),
                right: other.var(),
            });
        }
        if self.den == other.den {
            return RatFun::new_with(self.num.checked_add(&other.num)?, self.den.clone(), alg);
        }
        let g = gcd_with(&self.den, &other.den, alg)?;
        let a = other.den.exact_div(&g)?;
        let b = self.den.exact_div(&g)?;
        let num = &(&self.num * &a) + &(&other.num * &b);
        let den = &self.den * &a;
        RatFun::new_with(num, den, alg)
    }

    pub fn checked_sub(&self, other: &RatFun) -> Result<RatFun, ExactError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &RatFun) -> Result<RatFun, ExactError> {
        RatFun::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn mul_poly(&self, p: &Poly) -> Result<RatFun, ExactError> {
        RatFun::new(self.num.checked_mul(p)?, self.den.clone())
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// A normalized rational function is a polynomial iff its denominator is
    /// constant; in that case return the polynomial.
    pub fn polynomial_part(&self) -> Option<Poly> {
        if self.den.is_constant() {
            let c = self.den.coeff(0);
            debug_assert!(!c.is_zero());
            Some(if c.is_one() {
                self.num.clone()
            } else {
                self.num.scale(&c.recip())
            })
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> Poly {
        Poly::from_ints(Var::Z, c)
    }

    #[test]
    fn polynomial_sums_stay_polynomial() {
        let a = RatFun::from_poly(z(&[1, 2]));
        let b = RatFun::from_poly(z(&[0, -2, 5]));
        let s = a.checked_add(&b).unwrap();
        assert_eq!(s.polynomial_part(), Some(z(&[1, 0, 5])));
    }

    #[test]
    fn cancellation_to_zero() {
        let den = z(&[1, -1]);
        let a = RatFun::new(z(&[0, 1]), den.clone()).unwrap();
        let b = RatFun::new(z(&[0, -1]), den).unwrap();
        let s = a.checked_add(&b).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.den(), &z(&[1]));
    }

    #[test]
    fn polynomial_part_examples() {
        let a = RatFun::new(Poly::one_minus_power(4, Var::Z), Poly::one_minus_power(2, Var::Z)).unwrap();
        assert_eq!(a.polynomial_part(), Some(z(&[1, 0, 1])));
        let b = RatFun::new(z(&[0, 1]), Poly::one_minus_power(2, Var::Z)).unwrap();
        assert_eq!(b.polynomial_part(), None);
    }

    #[test]
    fn canonical_denominator() {
        let a = RatFun::new(z(&[2]), z(&[4, -6])).unwrap();
        assert_eq!(a.den(), &z(&[-2, 3]));
        assert_eq!(a.num(), &z(&[-1]));
        assert_eq!(a.renormalized(GcdAlgorithm::PrimitivePrs), a);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFun::new(z(&[1]), Poly::zero(Var::Z)).unwrap_err(),
            ExactError::DivisionByZero
        );
    }

    #[test]
    fn sum_with_gcd_cancellation() {
        // (1-z)/(1-z^3) + (1-z) z^3/(1-z^3) = (1-z)(1+z^3)/(1-z^3) = (1+z^3)/(1+z+z^2)
        let den = Poly::one_minus_power(3, Var::Z);
        let a = RatFun::new(z(&[1, -1]), den.clone()).unwrap();
        let b = RatFun::new(z(&[0, 0, 0, 1, -1]), den).unwrap();
        let s = a.checked_add(&b).unwrap();
        assert_eq!(s.num(), &z(&[1, 0, 0, 1]));
        assert_eq!(s.den(), &z(&[1, 1, 1]));
    }
}
