//! Acceptance criteria. Each prints one PASS/FAIL line with its measured
//! runtime against a fixed limit; the test fails if any criterion fails.
//! Run with `--nocapture` to see the lines.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use stringy_core::exact::{cyclotomic, divisors, CycloQuotient, Poly, Var};
use stringy_core::goettsche::hilb_poincare;
use stringy_core::strata::{e_d2_open, gr_omega, sym2_split};
use stringy_core::stringy::{
    modular_reduction, modular_s, numerator_n, s_closed_form_check, verdict, verdict_with,
    VerdictOptions,
};

/// Exact comparisons throughout; only runtimes carry a tolerance.
const LIMIT_GOETTSCHE: Duration = Duration::from_millis(100);
const LIMIT_COEFFS: Duration = Duration::from_secs(1);
const LIMIT_N2_NUMERATOR: Duration = Duration::from_secs(1);
const LIMIT_VERDICTS: Duration = Duration::from_secs(30);
const LIMIT_D2: Duration = Duration::from_secs(30);
const LIMIT_MODULAR: Duration = Duration::from_secs(30);
const LIMIT_CLOSED_FORM: Duration = Duration::from_secs(30);
const LIMIT_PROPERTIES: Duration = Duration::from_secs(60);

type Check = Result<(), String>;

fn z(c: &[i64]) -> Poly {
    Poly::from_ints(Var::Z, c)
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok { Ok(()) } else { Err(msg()) }
}

fn criterion(id: u8, name: &str, limit: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let result = result.and_then(|()| {
        ensure(elapsed < limit, || format!("took {elapsed:.3?}, limit {limit:?}"))
    });
    match &result {
        Ok(()) => println!("PASS {id}. {name} ({elapsed:.3?} < {limit:?})"),
        Err(e) => println!("FAIL {id}. {name} ({elapsed:.3?}): {e}"),
    }
    result.is_ok()
}

fn goettsche_golden() -> Check {
    let p1 = hilb_poincare(1).map_err(|e| e.to_string())?;
    ensure(p1 == z(&[1, -4, 6, -4, 1]), || format!("P(J^[1]) = {p1}"))?;
    let p2 = hilb_poincare(2).map_err(|e| e.to_string())?;
    ensure(p2 == z(&[1, -4, 13, -32, 44, -32, 13, -4, 1]), || format!("P(J^[2]) = {p2}"))
}

fn coefficient_facts() -> Check {
    for n in 3..=5 {
        let p = hilb_poincare(n).map_err(|e| e.to_string())?;
        ensure(p.coeff(1) == int(-4), || format!("a_1 = {} at n = {n}", p.coeff(1)))?;
        ensure(p.coeff(3) == int(-40), || format!("a_3 = {} at n = {n}", p.coeff(3)))?;
    }
    let b7 = -hilb_poincare(3).map_err(|e| e.to_string())?.coeff(7);
    ensure(b7 >= int(196), || format!("b_7(J^[3]) = {b7}"))
}

/// The explicit factored form printed for `N(z)` at `n = 2`.
fn printed_n2_numerator() -> Poly {
    let t = |c: &[i64]| Poly::from_ints(Var::T, c);
    let inner = t(&[1, 0, 1, 1, 0, 1, 3, 3, 2, 2, 3, 3, 1]);
    let t_part = [t(&[1, -1]), t(&[1, 1]), t(&[1, 0, 1]), t(&[1, -1, 1]), t(&[1, 1, 1]), inner]
        .iter()
        .fold(Poly::one(Var::T), |acc, f| &acc * f);
    let pj = &z(&[1, -4, 13, -32, 44, -32, 13, -4, 1]) * &z(&[1, -1]).pow(4);
    &t_part.t_to_z().unwrap() * &pj
}

fn n2_numerator() -> Check {
    let ours = numerator_n(2).map_err(|e| e.to_string())?;
    let printed = printed_n2_numerator();
    if ours == printed {
        return Ok(());
    }
    let twelve = Poly::one_minus_power(24, Var::Z);
    Err(format!(
        "computed N(z) has degree {:?}, printed form degree {:?}; computed is {}divisible by 1 - t^12, printed is {}divisible",
        ours.degree(),
        printed.degree(),
        if ours.is_divisible_by(&twelve).unwrap() { "" } else { "not " },
        if printed.is_divisible_by(&twelve).unwrap() { "" } else { "not " },
    ))
}

fn verdicts() -> Check {
    let mut failures = Vec::new();
    for n in 2..=12 {
        let v = verdict(n).map_err(|e| format!("n = {n}: {e}"))?;
        if v.is_polynomial {
            failures.push(format!("n = {n}: Polynomial (methods {:?})", v.methods_agreed));
            continue;
        }
        if v.methods_agreed.len() != 3 {
            failures.push(format!("n = {n}: only {:?} conclusive", v.methods_agreed));
        }
        if n == 2 {
            let f = v.witness.as_ref().map(|w| w.factor.as_str());
            if f != Some("1 - t^12") {
                failures.push(format!("n = 2: witness {f:?}"));
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn d2_divisibility() -> Check {
    for n in 2..=8 {
        let d = Poly::geometric(2 * n - 1, Var::T).t_to_z().unwrap();
        let e = e_d2_open(n).map_err(|e| e.to_string())?;
        ensure(e.is_divisible_by(&d).unwrap(), || format!("n = {n}"))?;
    }
    Ok(())
}

fn modular_congruence() -> Check {
    for n in 2..=8 {
        let m = Poly::one_minus_power(2 * (2 * n - 1), Var::Z);
        let lhs = numerator_n(n).map_err(|e| e.to_string())?.rem(&m).unwrap();
        let rhs = modular_reduction(n).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("n = {n}: N mod (1 - t^{}) differs", 2 * n - 1))?;
    }
    Ok(())
}

fn closed_form() -> Check {
    for n in 2..=10 {
        let s = modular_s(n).map_err(|e| e.to_string())?;
        for d in divisors(2 * n - 1).into_iter().filter(|&d| d > 1) {
            // Independent evaluation of s(a)(1 + a) + a(1 - a^{-1})(1 - a^3)^2.
            let ring = CycloQuotient::new(d, Var::T).unwrap();
            let a = |e: i64| ring.alpha_pow(e).unwrap();
            let one = Poly::one(Var::T);
            let sa = ring.reduce(&s).unwrap();
            let c = &one - &a(3);
            let total = &(&sa * &(&one + &a(1))) + &(&(&a(1) * &(&one - &a(-1))) * &(&c * &c));
            ensure(ring.reduce(&total).unwrap().is_zero(), || format!("identity fails, n = {n}, d = {d}"))?;
            let check = s_closed_form_check(n, d).map_err(|e| e.to_string())?;
            ensure(check.identity_holds, || format!("library identity check, n = {n}, d = {d}"))?;
            ensure(sa.is_zero() == (d == 3), || format!("s(alpha) zero = {}, n = {n}, d = {d}", sa.is_zero()))?;
            ensure(check.vanishes == (d == 3), || format!("library vanishing, n = {n}, d = {d}"))?;
        }
    }
    Ok(())
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-9i64..=9, 0..7).prop_map(|c| Poly::from_ints(Var::Z, &c))
}

fn properties() -> Check {
    let mut runner = TestRunner::new(Config { cases: 128, ..Config::default() });
    runner
        .run(&(small_poly(), small_poly(), small_poly()), |(a, b, c)| {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !b.is_zero() {
                let (q, r) = a.div_rem(&b).unwrap();
                prop_assert_eq!(&(&q * &b) + &r, a.clone());
                prop_assert!(r.is_zero() || r.degree() < b.degree());
            }
            let (plus, minus) = sym2_split(&a).unwrap();
            prop_assert_eq!(&plus + &minus, &a * &a);
            prop_assert_eq!(&plus - &minus, a.inflate(2));
            Ok(())
        })
        .map_err(|e| format!("ring/divrem/sym2: {e}"))?;
    for m in 1..=64 {
        let prod = divisors(m)
            .into_iter()
            .fold(Poly::one(Var::T), |acc, d| &acc * &cyclotomic(d, Var::T).unwrap());
        ensure(prod == -&Poly::one_minus_power(m, Var::T), || format!("cyclotomic product, m = {m}"))?;
    }
    for m in 1..=10 {
        for k in 1..=m {
            let g = gr_omega(k, m).unwrap();
            ensure(
                g.is_palindromic() && g.degree() == Some(k * (2 * m - 2 * k) + k * (k + 1) / 2),
                || format!("Gr^w({k}, {})", 2 * m),
            )?;
        }
    }
    for n in 1..=8 {
        let p = hilb_poincare(n).unwrap();
        ensure(p.is_palindromic() && p.eval_int(1).is_zero(), || format!("P(J^[{n}])"))?;
    }
    for n in 2..=8 {
        let a = verdict_with(n, VerdictOptions::default()).map_err(|e| e.to_string())?;
        let b = verdict_with(n, VerdictOptions { include_d2: true, ..Default::default() })
            .map_err(|e| e.to_string())?;
        ensure(a.is_polynomial == b.is_polynomial && a.witness == b.witness, || {
            format!("include_d2 changes the verdict at n = {n}")
        })?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let results = [
        criterion(1, "Goettsche golden values", LIMIT_GOETTSCHE, goettsche_golden),
        criterion(2, "coefficient facts a_1, a_3, b_7", LIMIT_COEFFS, coefficient_facts),
        criterion(3, "n = 2 numerator equals the printed factorization", LIMIT_N2_NUMERATOR, n2_numerator),
        criterion(4, "NotPolynomial for n = 2..12, methods agree, n = 2 witness 1 - t^12", LIMIT_VERDICTS, verdicts),
        criterion(5, "D2 open stratum divisibility, n = 2..8", LIMIT_D2, d2_divisibility),
        criterion(6, "numerator congruence modulo 1 - t^(2n-1), n = 2..8", LIMIT_MODULAR, modular_congruence),
        criterion(7, "closed form of s(alpha), n = 2..10", LIMIT_CLOSED_FORM, closed_form),
        criterion(8, "property suites", LIMIT_PROPERTIES, properties),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    assert_eq!(passed, results.len(), "some acceptance criteria failed");
}
