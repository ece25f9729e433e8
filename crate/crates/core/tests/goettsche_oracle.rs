//! The product formula expanded directly as a two-variable array with
//! generalized binomial coefficients, independent of the library's series
//! arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use stringy_core::exact::{Poly, Var};
use stringy_core::goettsche::{hilb_poincare, hilb_poincare_of, SurfaceBetti};

/// `c[k][j]` is the coefficient of `t^k z^j`.
type Grid = Vec<Vec<BigInt>>;

/// `binom(e, j)` for any integer `e`.
fn gen_binom(e: i64, j: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j as i64 {
        num *= e - i;
        den *= i + 1;
    }
    num / den
}

fn product_grid(b: [i64; 5], order: usize) -> Grid {
    let zmax = 4 * order + 1;
    let mut acc: Grid = vec![vec![BigInt::zero(); zmax]; order + 1];
    acc[0][0] = BigInt::one();
    for k in 1..=order {
        for (i, &bi) in b.iter().enumerate() {
            let e = if i % 2 == 0 { -bi } else { bi };
            let a = 2 * k - 2 + i;
            let mut next: Grid = vec![vec![BigInt::zero(); zmax]; order + 1];
            for j in 0..=order / k {
                // (1 - z^a t^k)^e = sum_j binom(e, j) (-1)^j z^{aj} t^{kj}
                let mut c = gen_binom(e, j);
                if j % 2 == 1 {
                    c = -c;
                }
                if c.is_zero() {
                    continue;
                }
                for tk in 0..=order - k * j {
                    for zj in 0..zmax {
                        if zj + a * j >= zmax || acc[tk][zj].is_zero() {
                            continue;
                        }
                        next[tk + k * j][zj + a * j] += &c * &acc[tk][zj];
                    }
                }
            }
            acc = next;
        }
    }
    acc
}

fn row(grid: &Grid, n: usize) -> Poly {
    Poly::from_bigints(Var::Z, grid[n].clone())
}

#[test]
fn abelian_surface_matches_brute_force() {
    let grid = product_grid([1, 4, 6, 4, 1], 4);
    for n in 1..=4 {
        assert_eq!(hilb_poincare(n).unwrap(), row(&grid, n), "n = {n}");
    }
}

#[test]
fn k3_matches_brute_force() {
    let grid = product_grid([1, 0, 22, 0, 1], 3);
    for n in 1..=3 {
        assert_eq!(hilb_poincare_of(SurfaceBetti::K3, n).unwrap(), row(&grid, n));
    }
}

#[test]
fn betti_numbers_of_third_hilbert_power() {
    let p = hilb_poincare(3).unwrap();
    let b = |i: usize| {
        let c = p.coeff(i);
        if i.is_multiple_of(2) { c } else { -c }
    };
    let int = |v: i64| num_rational::BigRational::from_integer(v.into());
    assert_eq!(b(1), int(4));
    assert_eq!(b(3), int(40));
    assert_eq!(b(7), int(196));
    assert_eq!(p.degree(), Some(12));
    assert!(p.is_palindromic());
}
