//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ExactError;

/// Variable tag. `T` stands for `z^2`; the two are never mixed implicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "z")]
    Z,
    #[serde(rename = "t")]
    T,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::Z => 'z',
            Var::T => 't',
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A dense polynomial `c0 + c1*x + c2*x^2 + ...` with exact rational
/// coefficients. Trailing zeros are always stripped, so the zero polynomial
/// has an empty coefficient vector and `degree() == None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    var: Var,
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero(var: Var) -> Self {
        Poly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(BigRational::one(), var)
    }

    pub fn constant(c: BigRational, var: Var) -> Self {
        Self::from_coeffs(var, vec![c])
    }

    /// `c * x^exp`
    pub fn monomial(c: BigRational, exp: usize, var: Var) -> Self {
        let mut coeffs = vec![BigRational::zero(); exp + 1];
        coeffs[exp] = c;
        Self::from_coeffs(var, coeffs)
    }

    /// The variable itself.
    pub fn x(var: Var) -> Self {
        Self::monomial(BigRational::one(), 1, var)
    }

    /// `1 - x^m`, the building block of every denominator in this crate.
    pub fn one_minus_power(m: usize, var: Var) -> Self {
        let mut coeffs = vec![BigRational::zero(); m + 1];
        coeffs[0] += BigRational::one();
        coeffs[m] -= BigRational::one();
        Self::from_coeffs(var, coeffs)
    }

    /// `1 + x + ... + x^(m-1)`, i.e. `(1 - x^m)/(1 - x)`.
    pub fn geometric(m: usize, var: Var) -> Self {
        Self::from_coeffs(var, vec![BigRational::one(); m])
    }

    pub fn from_coeffs(var: Var, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { var, coeffs }
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Self::from_coeffs(var, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(var: Var, coeffs: Vec<BigInt>) -> Self {
        Self::from_coeffs(var, coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for nonzero constants and for zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.coeffs.iter().map(|c| c.numer().clone()).collect())
    }

    /// `a_i == a_{deg-i}` for all `i`. The zero polynomial counts as palindromic.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rat(x))
    }

    fn check_var(&self, other: &Poly) -> Result<(), ExactError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(ExactError::VarMismatch {
                left: self.var,
                right: other.var,
            })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, ExactError> {
        self.check_var(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Poly::from_coeffs(self.var, coeffs))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, ExactError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, ExactError> {
        self.check_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.var));
        }
        // Convolve over the integers after pulling out common denominators.
        let (a, da) = self.integer_form();
        let (b, db) = other.integer_form();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let denom = da * db;
        Ok(Poly::from_integer_form(self.var, out, &denom))
    }

    /// `(numerators, d)` with `self = numerators / d` and `d > 0` the lcm of
    /// coefficient denominators.
    pub(crate) fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let d = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&d / c.denom()))
            .collect();
        (nums, d)
    }

    pub(crate) fn from_integer_form(var: Var, nums: Vec<BigInt>, d: &BigInt) -> Poly {
        if d.is_one() {
            return Poly::from_bigints(var, nums);
        }
        Poly::from_coeffs(
            var,
            nums.into_iter()
                .map(|n| BigRational::new(n, d.clone()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.var);
        }
        Poly::from_coeffs(self.var, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_int(&self, c: i64) -> Poly {
        self.scale(&rat(c))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.var);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::from_coeffs(self.var, coeffs)
    }

    /// Euclidean division: `self = q*d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), ExactError> {
        self.check_var(d)?;
        let dd = d.degree().ok_or(ExactError::DivisionByZero)?;
        let Some(pd) = self.degree() else {
            return Ok((Poly::zero(self.var), Poly::zero(self.var)));
        };
        if pd < dd {
            return Ok((Poly::zero(self.var), self.clone()));
        }
        let lead = d.coeffs[dd].clone();
        // Integer fast path: unit leading coefficient, integral operands.
        if lead.is_integer() && lead.numer().abs().is_one() && self.is_integral() && d.is_integral() {
            let (q, r) = divrem_unit_lead(
                &self.to_bigints().unwrap(),
                &d.to_bigints().unwrap(),
            );
            return Ok((Poly::from_bigints(self.var, q), Poly::from_bigints(self.var, r)));
        }
        let inv = lead.recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); pd - dd + 1];
        for k in (0..=pd - dd).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(self.var, q), Poly::from_coeffs(self.var, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly, ExactError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly, ExactError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ExactError::NotDivisible)
        }
    }

    /// Whether `d` divides `self` (every polynomial divides zero).
    pub fn is_divisible_by(&self, d: &Poly) -> Result<bool, ExactError> {
        Ok(self.rem(d)?.is_zero())
    }

    /// Factor `self = c * p` with `p` integral, primitive and with positive
    /// leading coefficient. Returns `(c, p)`; for zero returns `(0, 0)`.
    pub fn primitive_part(&self) -> (BigRational, Poly) {
        if self.is_zero() {
            return (BigRational::zero(), self.clone());
        }
        let (nums, d) = self.integer_form();
        let mut content = nums
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if nums.last().unwrap().is_negative() {
            content = -content;
        }
        let prim: Vec<BigInt> = nums.into_iter().map(|c| c / &content).collect();
        (
            BigRational::new(content, d),
            Poly::from_bigints(self.var, prim),
        )
    }

    /// Canonical associate: primitive integral with positive leading coefficient.
    pub fn normalized(&self) -> Poly {
        self.primitive_part().1
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Substitute `x -> x^k`, keeping the tag.
    pub fn inflate(&self, k: usize) -> Poly {
        assert!(k >= 1, "inflate by zero");
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly::from_coeffs(self.var, coeffs)
    }

    /// Re-express a polynomial in `t = z^2` as a polynomial in `z`.
    pub fn t_to_z(&self) -> Result<Poly, ExactError> {
        if self.var != Var::T {
            return Err(ExactError::VarMismatch {
                left: Var::T,
                right: self.var,
            });
        }
        let mut p = self.inflate(2);
        p.var = Var::Z;
        Ok(p)
    }

    /// Inverse of [`Poly::t_to_z`]; fails if an odd power of `z` is present.
    pub fn z_to_t(&self) -> Result<Poly, ExactError> {
        if self.var != Var::Z {
            return Err(ExactError::VarMismatch {
                left: Var::Z,
                right: self.var,
            });
        }
        if let Some(exp) = (1..self.coeffs.len())
            .step_by(2)
            .find(|&i| !self.coeffs[i].is_zero())
        {
            return Err(ExactError::OddPower { exp });
        }
        let coeffs = self.coeffs.iter().step_by(2).cloned().collect();
        Ok(Poly::from_coeffs(Var::T, coeffs))
    }

    /// Same coefficients, different tag. Only for callers that know what they
    /// are doing (e.g. viewing a cyclotomic polynomial in either variable).
    pub fn retag(&self, var: Var) -> Poly {
        Poly {
            var,
            coeffs: self.coeffs.clone(),
        }
    }
}

/// Division by an integer polynomial with leading coefficient ±1.
fn divrem_unit_lead(p: &[BigInt], d: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = d.len() - 1;
    let neg = d[dd].is_negative();
    let mut r = p.to_vec();
    let mut q = vec![BigInt::zero(); p.len() - dd];
    for k in (0..q.len()).rev() {
        let mut c = std::mem::take(&mut r[k + dd]);
        if c.is_zero() {
            continue;
        }
        if neg {
            c = -c;
        }
        for (j, dc) in d[..dd].iter().enumerate() {
            if !dc.is_zero() {
                r[k + j] -= &c * dc;
            }
        }
        q[k] = c;
    }
    r.truncate(dd);
    (q, r)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics if the variable tags differ; use the `checked_` form to
            /// handle that case.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial variable mismatch")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
