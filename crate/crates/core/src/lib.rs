//! Exact computation of the singular-locus contribution to the stringy
//! E-function of the moduli space `M_{2n}` of rank-2 sheaves on an abelian
//! surface, and a polynomiality test for it.
//!
//! Everything is specialized to `u = v = z`, and Poincaré polynomials use the
//! signed convention `P(V; z) = sum (-1)^i b_i(V) z^i`. Polynomials in
//! `t = z^2` carry the [`exact::Var::T`] tag.

pub mod cli;
pub mod error;
pub mod exact;
pub mod goettsche;
pub mod strata;
pub mod stringy;

pub use error::{Error, Result};
