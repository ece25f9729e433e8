//! Poincaré polynomials of Hilbert schemes of points on a surface, from the
//! infinite product
//!
//! ```text
//! sum_n P(S^[n]; z) t^n = prod_{k>=1} prod_{i=0}^{4} (1 - z^{2k-2+i} t^k)^{(-1)^{i+1} b_i(S)}
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{require_n, Error, Result};
use crate::exact::{Poly, Var};

/// Betti numbers `b_0..b_4` of a smooth projective surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceBetti {
    b: [u32; 5],
}

impl SurfaceBetti {
    pub const ABELIAN: SurfaceBetti = SurfaceBetti { b: [1, 4, 6, 4, 1] };
    pub const K3: SurfaceBetti = SurfaceBetti { b: [1, 0, 22, 0, 1] };

    pub fn new(b: [u32; 5]) -> Result<Self> {
        if b[0] != 1 || b[4] != 1 || b[1] != b[3] {
            return Err(Error::InvalidArgument(format!(
                "Betti numbers {b:?} violate b0 = b4 = 1, b1 = b3"
            )));
        }
        Ok(SurfaceBetti { b })
    }

    pub fn betti(&self) -> [u32; 5] {
        self.b
    }

    /// Signed Poincaré polynomial of the surface itself.
    pub fn poincare(&self) -> Poly {
        let c: Vec<i64> = self
            .b
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .collect();
        Poly::from_ints(Var::Z, &c)
    }
}

/// Power series in `t` truncated after `t^order`, with coefficients in `Q[z]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Poly>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![Poly::zero(Var::Z); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Poly::one(Var::Z);
        s
    }

    /// Build from the first coefficients; missing ones are zero, extra ones
    /// beyond `order` are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Poly>, order: usize) -> Result<Self> {
        if coeffs.iter().any(|c| c.var() != Var::Z) {
            return Err(Error::InvalidArgument(
                "series coefficients must be polynomials in z".into(),
            ));
        }
        coeffs.resize(order + 1, Poly::zero(Var::Z));
        Ok(TruncSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let order = self.order().min(other.order());
        TruncSeries {
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        out
    }

    /// Multiplicative inverse; requires a nonzero constant term in `Q`.
    pub fn inverse(&self) -> Result<TruncSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() || !c0.is_constant() {
            return Err(Error::InvalidArgument(
                "series constant term is not a nonzero constant".into(),
            ));
        }
        let inv0 = c0.coeff(0).recip();
        let order = self.order();
        let mut out = Self::zero(order);
        out.coeffs[0] = Poly::constant(inv0.clone(), Var::Z);
        for k in 1..=order {
            let mut acc = Poly::zero(Var::Z);
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &out.coeffs[k - j]);
            }
            out.coeffs[k] = acc.scale(&-inv0.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> TruncSeries {
        let mut result = Self::one(self.order());
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }
}

/// `(1 - z^a t^k)^e` as a truncated series; negative `e` goes through the
/// geometric series `1/(1 - x)` raised to `|e|`.
fn factor_series(a: usize, k: usize, e: i64, order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    if e >= 0 {
        // Binomial theorem.
        let mut binom = BigInt::one();
        for j in 0..=(e as usize).min(order / k) {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let c = BigRational::from_integer(&binom * sign);
            s.coeffs[j * k] = Poly::monomial(c, a * j, Var::Z);
            binom = binom * BigInt::from(e - j as i64) / BigInt::from(j as i64 + 1);
        }
        s
    } else {
        for j in 0..=order / k {
            s.coeffs[j * k] = Poly::monomial(BigRational::one(), a * j, Var::Z);
        }
        s.pow((-e) as u32)
    }
}

/// The generating function truncated after `t^order`. Only factors with
/// `k <= order` contribute.
pub fn goettsche_series(surface: SurfaceBetti, order: usize) -> Result<TruncSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("truncation order must be >= 1".into()));
    }
    let mut acc = TruncSeries::one(order);
    for k in 1..=order {
        for (i, &b) in surface.b.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let e = if i % 2 == 0 { -(b as i64) } else { b as i64 };
            acc = acc.mul(&factor_series(2 * k - 2 + i, k, e, order));
        }
    }
    Ok(acc)
}

/// `P(S^[n]; z)` for an arbitrary surface.
pub fn hilb_poincare_of(surface: SurfaceBetti, n: usize) -> Result<Poly> {
    require_n(n, 1)?;
    Ok(goettsche_series(surface, n)?.coeff(n).clone())
}

/// `P(J^[n]; z)` for the abelian surface `J`: palindromic of degree `4n`
/// with `a_i = (-1)^i b_i(J^[n])`.
pub fn hilb_poincare(n: usize) -> Result<Poly> {
    hilb_poincare_of(SurfaceBetti::ABELIAN, n)
}

/// `P(J^[n] x J^; z) = (1 - z)^4 P(J^[n]; z)`.
pub fn jn_times_dual(n: usize) -> Result<Poly> {
    Ok(&hilb_poincare(n)? * &SurfaceBetti::ABELIAN.poincare())
}
