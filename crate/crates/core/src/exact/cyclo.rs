//! Cyclotomic polynomials, trial-division factorization into them, and
//! arithmetic in `Q[x]/(Phi_d)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::gcd::ext_gcd;
use super::poly::{Poly, Var};
use super::ExactError;

/// Positive divisors of `m` in increasing order.
pub fn divisors(m: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn prime_factors(mut m: usize) -> Vec<usize> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            ps.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        ps.push(m);
    }
    ps
}

pub fn euler_phi(m: usize) -> usize {
    prime_factors(m)
        .into_iter()
        .fold(m, |acc, p| acc / p * (p - 1))
}

/// Moebius function.
pub fn mobius(m: usize) -> i8 {
    let mut m = m;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// The `d`-th cyclotomic polynomial. For `d > 1`,
/// `Phi_d = prod_{e | d} (1 - x^e)^{mu(d/e)}`, expanded as a power series
/// truncated at degree `phi(d)`; `Phi_1 = x - 1`.
pub fn cyclotomic(d: usize, var: Var) -> Result<Poly, ExactError> {
    if d == 0 {
        return Err(ExactError::InvalidCyclotomicIndex(d));
    }
    if d == 1 {
        return Ok(Poly::from_ints(var, &[-1, 1]));
    }
    let deg = euler_phi(d);
    let mut c = vec![BigInt::zero(); deg + 1];
    c[0] = BigInt::one();
    let divs = divisors(d);
    // Multiply by the (1 - x^e) factors first, then divide by the rest.
    for &e in &divs {
        if mobius(d / e) == 1 && e <= deg {
            for i in (e..=deg).rev() {
                let v = c[i - e].clone();
                c[i] -= v;
            }
        }
    }
    for &e in &divs {
        if mobius(d / e) == -1 && e <= deg {
            for i in e..=deg {
                let v = c[i - e].clone();
                c[i] += v;
            }
        }
    }
    Ok(Poly::from_bigints(var, c))
}

/// `p = remainder * prod Phi_d^{k_d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloFactorization {
    pub var: Var,
    /// `d -> multiplicity`, only nonzero multiplicities.
    pub factors: BTreeMap<usize, u32>,
    /// Cofactor free of cyclotomic factors (a constant for a product of
    /// cyclotomics, possibly a negative one).
    pub remainder: Poly,
}

impl CycloFactorization {
    pub fn multiplicity(&self, d: usize) -> u32 {
        self.factors.get(&d).copied().unwrap_or(0)
    }

    /// Multiply everything back together.
    pub fn expand(&self) -> Poly {
        self.factors.iter().fold(self.remainder.clone(), |acc, (&d, &k)| {
            &acc * &cyclotomic(d, self.var).expect("d >= 1").pow(k)
        })
    }

    pub fn is_pure(&self) -> bool {
        self.remainder.is_constant()
    }
}

/// Peel off every cyclotomic factor by trial division. Only indices with
/// `phi(d) <= deg` can divide, and `phi(d) >= sqrt(d)` for `d > 6` bounds the
/// search. Candidates are screened by evaluating at an element of order `d`
/// in a prime field before any exact division.
pub fn cyclo_factor(p: &Poly) -> Result<CycloFactorization, ExactError> {
    let var = p.var();
    let deg = p.degree().ok_or(ExactError::DivisionByZero)?;
    let mut rest = p.clone();
    let mut factors = BTreeMap::new();
    let bound = (deg * deg).max(6);
    let phis = phi_table(bound);
    for (d, &phi_d) in phis.iter().enumerate().skip(1) {
        let rd = rest.degree().unwrap_or(0);
        if rd == 0 || d > rd.max(6) * rd.max(6) {
            break;
        }
        if phi_d > rd || !may_have_root_of_order(&rest, d) {
            continue;
        }
        let phi = cyclotomic(d, var)?;
        let mut k = 0;
        loop {
            let (q, r) = rest.div_rem(&phi)?;
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += 1;
        }
        if k > 0 {
            factors.insert(d, k);
        }
    }
    Ok(CycloFactorization {
        var,
        factors,
        remainder: rest,
    })
}

fn phi_table(n: usize) -> Vec<usize> {
    let mut phi: Vec<usize> = (0..=n).collect();
    for i in 2..=n {
        if phi[i] == i {
            for j in (i..=n).step_by(i) {
                phi[j] -= phi[j] / i;
            }
        }
    }
    phi
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= q {
        if q.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

/// Prime `q = k*d + 1` together with an element of exact order `d` mod `q`.
fn root_of_order(d: usize) -> (u64, u64) {
    let d = d as u64;
    let ps = prime_factors(d as usize);
    let mut q = d + 1;
    loop {
        if is_prime(q) && q > 2 {
            for g in 2..q {
                let w = pow_mod(g, (q - 1) / d, q);
                if ps.iter().all(|&p| pow_mod(w, d / p as u64, q) != 1) {
                    return (q, w);
                }
            }
        }
        q += d;
    }
}

/// Necessary condition for `Phi_d | p`: the integer form of `p` vanishes at
/// an element of order `d` modulo a prime `q ≡ 1 (mod d)`.
fn may_have_root_of_order(p: &Poly, d: usize) -> bool {
    if d <= 2 {
        return true;
    }
    let (q, w) = root_of_order(d);
    let qb = BigInt::from(q);
    let (nums, _) = p.integer_form();
    let mut acc: u64 = 0;
    for c in nums.iter().rev() {
        let c = c.mod_floor(&qb).to_u64().expect("reduced below q");
        acc = (acc * w + c) % q;
    }
    acc == 0
}

/// The quotient ring `Q[x]/(Phi_d)`; elements are polynomials of degree
/// below `phi(d)`.
#[derive(Clone, Debug)]
pub struct CycloQuotient {
    d: usize,
    modulus: Poly,
}

impl CycloQuotient {
    pub fn new(d: usize, var: Var) -> Result<Self, ExactError> {
        Ok(CycloQuotient {
            d,
            modulus: cyclotomic(d, var)?,
        })
    }

    pub fn index(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn reduce(&self, p: &Poly) -> Result<Poly, ExactError> {
        p.rem(&self.modulus)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly, ExactError> {
        self.reduce(&a.checked_mul(b)?)
    }

    /// Image of the generator `alpha` raised to `e` (negative allowed).
    pub fn alpha_pow(&self, e: i64) -> Result<Poly, ExactError> {
        let var = self.modulus.var();
        let e = e.rem_euclid(self.d as i64) as usize;
        self.reduce(&Poly::monomial(num_rational::BigRational::one(), e, var))
    }

    pub fn inverse(&self, a: &Poly) -> Result<Poly, ExactError> {
        let a = self.reduce(a)?;
        if a.is_zero() {
            return Err(ExactError::NotInvertible { d: self.d });
        }
        let (g, s, _) = ext_gcd(&a, &self.modulus)?;
        if !g.is_constant() {
            return Err(ExactError::NotInvertible { d: self.d });
        }
        self.reduce(&s)
    }

    pub fn div(&self, a: &Poly, b: &Poly) -> Result<Poly, ExactError> {
        self.mul(a, &self.inverse(b)?)
    }
}

/// Canonical representative of `p` modulo `Phi_d`.
pub fn eval_mod_cyclotomic(p: &Poly, d: usize) -> Result<Poly, ExactError> {
    if d < 2 {
        return Err(ExactError::InvalidCyclotomicIndex(d));
    }
    CycloQuotient::new(d, p.var())?.reduce(p)
}

/// Inverse of `p` modulo `Phi_d`.
pub fn invert_mod_cyclotomic(p: &Poly, d: usize) -> Result<Poly, ExactError> {
    if d < 2 {
        return Err(ExactError::InvalidCyclotomicIndex(d));
    }
    CycloQuotient::new(d, p.var())?.inverse(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: &[i64]) -> Poly {
        Poly::from_ints(Var::T, c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1, Var::T).unwrap(), t(&[-1, 1]));
        assert_eq!(cyclotomic(2, Var::T).unwrap(), t(&[1, 1]));
        assert_eq!(cyclotomic(3, Var::T).unwrap(), t(&[1, 1, 1]));
        assert_eq!(cyclotomic(12, Var::T).unwrap(), t(&[1, 0, -1, 0, 1]));
        assert!(cyclotomic(0, Var::T).is_err());
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        let p = cyclotomic(105, Var::T).unwrap();
        assert_eq!(p.coeff(7), num_rational::BigRational::from_integer((-2).into()));
        assert_eq!(p.degree(), Some(48));
    }

    #[test]
    fn product_over_divisors_of_twelve() {
        let prod = divisors(12)
            .into_iter()
            .fold(Poly::one(Var::T), |acc, d| &acc * &cyclotomic(d, Var::T).unwrap());
        assert_eq!(prod, -Poly::one_minus_power(12, Var::T));
    }

    #[test]
    fn factor_one_minus_t5() {
        let f = cyclo_factor(&Poly::one_minus_power(5, Var::T)).unwrap();
        assert_eq!(f.factors, BTreeMap::from([(1, 1), (5, 1)]));
        assert_eq!(f.remainder, t(&[-1]));
        assert_eq!(f.expand(), Poly::one_minus_power(5, Var::T));
    }

    #[test]
    fn factor_phi3() {
        let f = cyclo_factor(&t(&[1, 1, 1])).unwrap();
        assert_eq!(f.factors, BTreeMap::from([(3, 1)]));
        assert_eq!(f.remainder, t(&[1]));
    }

    #[test]
    fn factor_finds_index_above_degree() {
        // Phi_12 has degree 4 < 12.
        let f = cyclo_factor(&t(&[1, 0, -1, 0, 1])).unwrap();
        assert_eq!(f.factors, BTreeMap::from([(12, 1)]));
    }

    #[test]
    fn non_cyclotomic_cofactor() {
        let p = &t(&[2, 1]) * &t(&[1, 1]);
        let f = cyclo_factor(&p).unwrap();
        assert_eq!(f.factors, BTreeMap::from([(2, 1)]));
        assert_eq!(f.remainder, t(&[2, 1]));
    }

    #[test]
    fn reduction_mod_phi3() {
        assert_eq!(eval_mod_cyclotomic(&t(&[0, 0, 0, 1]), 3).unwrap(), t(&[1]));
        assert!(eval_mod_cyclotomic(&t(&[1, 1, 1]), 3).unwrap().is_zero());
        assert!(eval_mod_cyclotomic(&t(&[1]), 1).is_err());
    }

    #[test]
    fn inverse_of_one_plus_alpha_mod_phi5() {
        let q = CycloQuotient::new(5, Var::T).unwrap();
        let a = t(&[1, 1]);
        let inv = q.inverse(&a).unwrap();
        assert_eq!(q.mul(&a, &inv).unwrap(), t(&[1]));
    }

    #[test]
    fn non_invertible_rejected() {
        // 1 + alpha vanishes mod Phi_2.
        assert_eq!(
            invert_mod_cyclotomic(&t(&[1, 1]), 2).unwrap_err(),
            ExactError::NotInvertible { d: 2 }
        );
    }

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(1), 1);
    }
}
