//! Polynomial greatest common divisors over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::poly::Poly;
use super::ExactError;

/// Which gcd algorithm to run. All return the same canonical gcd.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GcdAlgorithm {
    /// Evaluate at a large integer, take the integer gcd and read the
    /// polynomial back from its balanced digits; verified by trial division,
    /// falling back to `PrimitivePrs` when the guess fails.
    #[default]
    Heuristic,
    /// Euclid over the rationals, making every remainder monic.
    MonicEuclid,
    /// Pseudo-remainders over the integers, stripping content at each step.
    PrimitivePrs,
}

/// Canonical gcd (primitive, integral, positive leading coefficient).
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly, ExactError> {
    gcd_with(a, b, GcdAlgorithm::default())
}

pub fn gcd_with(a: &Poly, b: &Poly, alg: GcdAlgorithm) -> Result<Poly, ExactError> {
    if a.var() != b.var() {
        return Err(ExactError::VarMismatch {
            left: a.var(),
            right: b.var(),
        });
    }
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::ZeroGcd);
    }
    let g = match alg {
        GcdAlgorithm::MonicEuclid => monic_euclid(a, b)?,
        GcdAlgorithm::PrimitivePrs => primitive_prs(a, b),
        GcdAlgorithm::Heuristic => heuristic(a, b).unwrap_or_else(|| primitive_prs(a, b)),
    };
    Ok(g.normalized())
}

fn monic_euclid(a: &Poly, b: &Poly) -> Result<Poly, ExactError> {
    let (mut r0, mut r1) = if a.degree() >= b.degree() {
        (a.monic(), b.monic())
    } else {
        (b.monic(), a.monic())
    };
    while !r1.is_zero() {
        let r = r0.rem(&r1)?.monic();
        r0 = r1;
        r1 = r;
    }
    Ok(r0)
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let c = content(&p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<BigInt> = p.into_iter().map(|x| x / &c).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, over the integers.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &lr * bc;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn primitive_prs(a: &Poly, b: &Poly) -> Poly {
    let var = a.var();
    let to_prim = |p: &Poly| primitive(p.integer_form().0);
    let (mut r0, mut r1) = if a.degree() >= b.degree() {
        (to_prim(a), to_prim(b))
    } else {
        (to_prim(b), to_prim(a))
    };
    while !r1.is_empty() {
        let r = primitive(pseudo_rem(&r0, &r1));
        r0 = r1;
        r1 = r;
    }
    if r0.last().is_some_and(Signed::is_negative) {
        r0 = r0.into_iter().map(|c| -c).collect();
    }
    Poly::from_bigints(var, r0)
}

/// Exact quotient `a / b` over the integers, or `None` if `b` does not
/// divide `a` in `Z[x]`.
fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            if !bc.is_zero() {
                r[k + j] -= &c * bc;
            }
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

fn eval_at(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Balanced base-`x` digits of `v`, lowest first.
fn balanced_digits(mut v: BigInt, x: &BigInt) -> Vec<BigInt> {
    let half = x >> 1;
    let mut out = Vec::new();
    while !v.is_zero() {
        let mut d = v.mod_floor(x);
        if d > half {
            d -= x;
        }
        v = (v - &d) / x;
        out.push(d);
    }
    out
}

fn heuristic(a: &Poly, b: &Poly) -> Option<Poly> {
    let var = a.var();
    let pa = primitive(a.integer_form().0);
    let pb = primitive(b.integer_form().0);
    if pa.is_empty() || pb.is_empty() {
        return None;
    }
    let norm = |p: &[BigInt]| p.iter().map(|c| c.abs()).max().unwrap_or_default();
    let mut x = BigInt::from(2) * norm(&pa).min(norm(&pb)) + 29;
    for _ in 0..6 {
        let gamma = eval_at(&pa, &x).gcd(&eval_at(&pb, &x));
        if !gamma.is_zero() {
            let mut g = primitive(balanced_digits(gamma, &x));
            if g.last().is_some_and(Signed::is_negative) {
                g = g.into_iter().map(|c| -c).collect();
            }
            if !g.is_empty() && int_exact_div(&pa, &g).is_some() && int_exact_div(&pb, &g).is_some() {
                return Some(Poly::from_bigints(var, g));
            }
        }
        x = x * 73794 / 27011;
    }
    None
}

/// Extended Euclid: returns `(g, s, u)` with `s*a + u*b = g` and `g` monic.
pub fn ext_gcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly), ExactError> {
    if a.var() != b.var() {
        return Err(ExactError::VarMismatch {
            left: a.var(),
            right: b.var(),
        });
    }
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::ZeroGcd);
    }
    let var = a.var();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(var), Poly::zero(var));
    let (mut u0, mut u1) = (Poly::zero(var), Poly::one(var));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let u = &u0 - &(&q * &u1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        u0 = std::mem::replace(&mut u1, u);
    }
    let l = r0.leading().unwrap().recip();
    Ok((r0.scale(&l), s0.scale(&l), u0.scale(&l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Var;

    fn t(c: &[i64]) -> Poly {
        Poly::from_ints(Var::T, c)
    }

    #[test]
    fn coprime_exponents() {
        let g = gcd(&Poly::one_minus_power(3, Var::T), &Poly::one_minus_power(5, Var::T)).unwrap();
        assert_eq!(g, t(&[-1, 1]));
    }

    #[test]
    fn gcd_with_zero_is_normalized_input() {
        let p = t(&[2, 0, -6]);
        assert_eq!(gcd(&p, &Poly::zero(Var::T)).unwrap(), t(&[-1, 0, 3]));
        assert_eq!(gcd(&Poly::zero(Var::T), &p).unwrap(), t(&[-1, 0, 3]));
    }

    #[test]
    fn both_zero_is_an_error() {
        let zero = Poly::zero(Var::T);
        assert_eq!(gcd(&zero, &zero).unwrap_err(), ExactError::ZeroGcd);
    }

    #[test]
    fn algorithms_agree() {
        let a = &Poly::one_minus_power(12, Var::T) * &t(&[3, 1, 4, 1, 5]);
        let b = &Poly::one_minus_power(18, Var::T) * &t(&[2, 7, 1, 8]);
        let g1 = gcd_with(&a, &b, GcdAlgorithm::MonicEuclid).unwrap();
        let g2 = gcd_with(&a, &b, GcdAlgorithm::PrimitivePrs).unwrap();
        let g3 = gcd_with(&a, &b, GcdAlgorithm::Heuristic).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(g1, g3);
        assert_eq!(g1, Poly::one_minus_power(6, Var::T).normalized());
    }

    #[test]
    fn heuristic_handles_large_coefficients() {
        let big = Poly::from_bigints(Var::T, vec![BigInt::from(10).pow(40) + 7u32, BigInt::from(3)]);
        let a = &big * &t(&[1, -2, 1]);
        let b = &big * &t(&[-1, 0, 1]);
        let want = (&big * &t(&[-1, 1])).normalized();
        assert_eq!(gcd_with(&a, &b, GcdAlgorithm::Heuristic).unwrap(), want);
        assert_eq!(gcd_with(&a, &b, GcdAlgorithm::PrimitivePrs).unwrap(), want);
    }

    #[test]
    fn balanced_digits_round_trip() {
        let x = BigInt::from(1000);
        let p = vec![BigInt::from(-499), BigInt::from(3), BigInt::from(0), BigInt::from(-1)];
        assert_eq!(balanced_digits(eval_at(&p, &x), &x), p);
    }

    #[test]
    fn bezout_identity() {
        let a = Poly::one_minus_power(6, Var::T);
        let b = t(&[1, 1, 1, 1]);
        let (g, s, u) = ext_gcd(&a, &b).unwrap();
        assert_eq!(&(&s * &a) + &(&u * &b), g);
        assert_eq!(g, t(&[1, 1]));
    }
}
