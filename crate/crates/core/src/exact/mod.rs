//! Exact arithmetic: rational-coefficient polynomials in a tagged variable,
//! canonical rational functions, and cyclotomic machinery.

mod cyclo;
mod gcd;
mod poly;
mod ratfun;
mod text;

pub use cyclo::{
    cyclo_factor, cyclotomic, divisors, euler_phi, eval_mod_cyclotomic, invert_mod_cyclotomic,
    mobius, CycloFactorization, CycloQuotient,
};
pub use gcd::{ext_gcd, gcd, gcd_with, GcdAlgorithm};
pub use poly::{Poly, Var};
pub use ratfun::RatFun;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("variable mismatch: {left} vs {right}")]
    VarMismatch { left: Var, right: Var },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("gcd of two zero polynomials")]
    ZeroGcd,
    #[error("element is not invertible modulo Phi_{d}")]
    NotInvertible { d: usize },
    #[error("invalid cyclotomic index {0}")]
    InvalidCyclotomicIndex(usize),
    #[error("odd power z^{exp} in a polynomial expected to be even")]
    OddPower { exp: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
