//! E-polynomials (at `u = v = z`) of the exceptional divisors `D1, D2, D3`
//! of the Kirwan desingularization of `M_{2n}`, their intersections, and the
//! locally closed strata `D_J^0`.
//!
//! Fiber factors are polynomials in `q = uv = t = z^2`; every closed stratum
//! is `fiber(t) * P(J^[n] x J^; z)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{require_n, Error, Result};
use crate::exact::{Poly, Var};
use crate::goettsche::jn_times_dual;

/// A nonempty subset of `{1, 2, 3}`, in the fixed report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DivisorSet {
    D1,
    D2,
    D3,
    D12,
    D13,
    D23,
    D123,
}

impl DivisorSet {
    pub const ALL: [DivisorSet; 7] = [
        DivisorSet::D1,
        DivisorSet::D2,
        DivisorSet::D3,
        DivisorSet::D12,
        DivisorSet::D13,
        DivisorSet::D23,
        DivisorSet::D123,
    ];

    pub fn members(self) -> &'static [u8] {
        match self {
            DivisorSet::D1 => &[1],
            DivisorSet::D2 => &[2],
            DivisorSet::D3 => &[3],
            DivisorSet::D12 => &[1, 2],
            DivisorSet::D13 => &[1, 3],
            DivisorSet::D23 => &[2, 3],
            DivisorSet::D123 => &[1, 2, 3],
        }
    }

    pub fn contains(self, j: u8) -> bool {
        self.members().contains(&j)
    }

    pub fn codim(self) -> usize {
        self.members().len()
    }

    pub fn name(self) -> &'static str {
        match self {
            DivisorSet::D1 => "D1",
            DivisorSet::D2 => "D2",
            DivisorSet::D3 => "D3",
            DivisorSet::D12 => "D12",
            DivisorSet::D13 => "D13",
            DivisorSet::D23 => "D23",
            DivisorSet::D123 => "D123",
        }
    }

    fn from_digits(s: &str) -> Option<Self> {
        DivisorSet::ALL.into_iter().find(|d| &d.name()[1..] == s)
    }
}

/// Closed intersection `D_J`, locally closed stratum `D_J^0`, or the smooth
/// locus `D_empty^0 = M^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StratumId {
    Closed(DivisorSet),
    Open(DivisorSet),
    Smooth,
}

impl fmt::Display for StratumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumId::Closed(d) => write!(f, "{}", d.name()),
            StratumId::Open(d) => write!(f, "{}o", d.name()),
            StratumId::Smooth => write!(f, "SMOOTH"),
        }
    }
}

impl FromStr for StratumId {
    type Err = Error;

    /// `D12` is closed; `D12o`, `D12^0` and `D12°` are open; `SMOOTH` is the
    /// smooth locus.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown stratum `{s}`"));
        let s = s.trim();
        if s.eq_ignore_ascii_case("smooth") {
            return Ok(StratumId::Smooth);
        }
        let rest = s
            .strip_prefix('D')
            .or_else(|| s.strip_prefix('d'))
            .ok_or_else(bad)?;
        let (digits, open) = if let Some(r) = rest.strip_suffix("^0") {
            (r, true)
        } else if let Some(r) = rest.strip_suffix('°') {
            (r, true)
        } else if let Some(r) = rest.strip_suffix('o') {
            (r, true)
        } else {
            (rest, false)
        };
        let set = DivisorSet::from_digits(digits).ok_or_else(bad)?;
        Ok(if open {
            StratumId::Open(set)
        } else {
            StratumId::Closed(set)
        })
    }
}

impl Serialize for StratumId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StratumId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An E-polynomial in `z` attached to a stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumPoly {
    pub id: StratumId,
    pub value: Poly,
}

/// Stand-in for `E(M^s; z, z)`. The smooth locus is unknown but smooth and
/// projective-like enough that its E-polynomial is a polynomial; it never
/// enters any arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothLocus;

impl fmt::Display for SmoothLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E(M^s)")
    }
}

/// `E(Gr^w(k, 2m))` in `q`:
/// `prod_{1<=i<=k} (1 - q^{2m-2k+2i}) / (1 - q^i)`.
pub fn gr_omega(k: usize, m: usize) -> Result<Poly> {
    if k == 0 || k > m {
        return Err(Error::InvalidArgument(format!(
            "isotropic Grassmannian needs 1 <= k <= m, got k = {k}, m = {m}"
        )));
    }
    let mut num = Poly::one(Var::T);
    let mut den = Poly::one(Var::T);
    for i in 1..=k {
        num = &num * &Poly::one_minus_power(2 * m - 2 * k + 2 * i, Var::T);
        den = &den * &Poly::one_minus_power(i, Var::T);
    }
    Ok(num.exact_div(&den)?)
}

/// Signed Poincaré polynomial of the incidence variety
/// `I_{2n-1} ⊂ P^{2n-1} x P^{2n-1}` and its split under the swap action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidencePoincare {
    pub total: Poly,
    pub plus: Poly,
    pub minus: Poly,
}

/// `P = [(1-t^{2n})/(1-t)] [(1-t^{2n-1})/(1-t)]`, `P+ = P/(1+z^2)`,
/// `P- = z^2 P+`, all in `z`.
pub fn incidence_poincare(n: usize) -> Result<IncidencePoincare> {
    require_n(n, 1)?;
    let total = (&Poly::geometric(2 * n, Var::T) * &Poly::geometric(2 * n - 1, Var::T)).t_to_z()?;
    let plus = total.exact_div(&Poly::from_ints(Var::Z, &[1, 0, 1]))?;
    let minus = plus.shift(2);
    Ok(IncidencePoincare { total, plus, minus })
}

/// Fiber factors of the closed strata, in `t`, before multiplying by
/// `P(J^[n] x J^; z)`.
pub fn closed_fiber(set: DivisorSet, n: usize) -> Result<Poly> {
    require_n(n, 2)?;
    let q = |m: usize| Poly::geometric(m, Var::T);
    // Gr^w(3, 2n+2) and Gr^w(2, 2n+2).
    let g3 = || gr_omega(3, n + 1);
    let g2 = || gr_omega(2, n + 1);
    Ok(match set {
        DivisorSet::D1 => &(&(&q(6) - &q(3)) + &q(3).pow(2)) * &g3()?,
        DivisorSet::D2 => {
            return Err(Error::InvalidArgument(
                "no closed formula for E(D2); use the open stratum D2o".into(),
            ))
        }
        DivisorSet::D3 => &(&q(2 * n - 1) * &q(3)) * &g2()?,
        DivisorSet::D12 => &q(3).pow(2) * &g3()?,
        DivisorSet::D23 => &(&q(2 * n - 1) * &q(2)) * &g2()?,
        DivisorSet::D13 => &(&q(3) * &q(2 * n - 2)) * &g2()?,
        DivisorSet::D123 => &(&q(2) * &q(2 * n - 2)) * &g2()?,
    })
}

/// Fiber factor of `D_J^0` for `J != {2}`, by inclusion-exclusion over the
/// normal-crossing divisors.
pub fn open_fiber(set: DivisorSet, n: usize) -> Result<Poly> {
    let c = |s| closed_fiber(s, n);
    use DivisorSet::*;
    Ok(match set {
        D1 => &(&(&c(D1)? - &c(D12)?) - &c(D13)?) + &c(D123)?,
        D3 => &(&(&c(D3)? - &c(D13)?) - &c(D23)?) + &c(D123)?,
        D12 => &c(D12)? - &c(D123)?,
        D13 => &c(D13)? - &c(D123)?,
        D23 => &c(D23)? - &c(D123)?,
        D123 => c(D123)?,
        D2 => {
            return Err(Error::InvalidArgument(
                "D2o has no fiber factor; use e_d2_open".into(),
            ))
        }
    })
}

/// `E(D_J; z, z)` for a closed intersection other than `D2`.
pub fn e_closed_stratum(set: DivisorSet, n: usize) -> Result<Poly> {
    let fiber = closed_fiber(set, n)?;
    Ok(&fiber.t_to_z()? * &jn_times_dual(n)?)
}

/// Swap-action split of `E(X x X)`: `((x^2 + x(z^2))/2, (x^2 - x(z^2))/2)`.
pub fn sym2_split(x: &Poly) -> Result<(Poly, Poly)> {
    if x.var() != Var::Z {
        return Err(Error::InvalidArgument("sym2_split expects a polynomial in z".into()));
    }
    let sq = x * x;
    let twisted = x.inflate(2);
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    Ok(((&sq + &twisted).scale(&half), (&sq - &twisted).scale(&half)))
}

/// `E(D2^0; z, z) = E+(J0) P+(I) + E-(J0) P-(I)` where
/// `J0 = X x X - diagonal`, `X = J^[n] x J^`. The diagonal is fixed
/// pointwise, so it is removed from the invariant part only.
pub fn e_d2_open(n: usize) -> Result<Poly> {
    require_n(n, 2)?;
    let x = jn_times_dual(n)?;
    let (plus, minus) = sym2_split(&x)?;
    let plus_open = &plus - &x;
    let inc = incidence_poincare(n)?;
    Ok(&(&plus_open * &inc.plus) + &(&minus * &inc.minus))
}

/// `E(D_J^0; z, z)` for any locally closed exceptional stratum.
pub fn e_open_stratum(set: DivisorSet, n: usize) -> Result<Poly> {
    if set == DivisorSet::D2 {
        return e_d2_open(n);
    }
    Ok(&open_fiber(set, n)?.t_to_z()? * &jn_times_dual(n)?)
}

/// Any stratum by id. The smooth locus has no computable value.
pub fn stratum_poly(id: StratumId, n: usize) -> Result<Poly> {
    match id {
        StratumId::Closed(set) => e_closed_stratum(set, n),
        StratumId::Open(set) => e_open_stratum(set, n),
        StratumId::Smooth => Err(Error::InvalidArgument(
            "E(M^s) is not computed; it is known only to be a polynomial".into(),
        )),
    }
}

/// All locally closed strata. `M^s` is carried symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenStrata {
    pub n: usize,
    pub values: BTreeMap<DivisorSet, Poly>,
    pub smooth: SmoothLocus,
}

impl OpenStrata {
    pub fn get(&self, set: DivisorSet) -> &Poly {
        &self.values[&set]
    }

    pub fn to_stratum_polys(&self) -> Vec<StratumPoly> {
        self.values
            .iter()
            .map(|(&set, value)| StratumPoly {
                id: StratumId::Open(set),
                value: value.clone(),
            })
            .collect()
    }
}

pub fn open_strata(n: usize) -> Result<OpenStrata> {
    require_n(n, 2)?;
    let pj = jn_times_dual(n)?;
    let mut values = BTreeMap::new();
    for set in DivisorSet::ALL {
        let v = if set == DivisorSet::D2 {
            e_d2_open(n)?
        } else {
            &open_fiber(set, n)?.t_to_z()? * &pj
        };
        values.insert(set, v);
    }
    Ok(OpenStrata {
        n,
        values,
        smooth: SmoothLocus,
    })
}

/// One level of a bundle tower, with its complex dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    pub name: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleRow {
    pub id: StratumId,
    /// Fiber first, base last.
    pub tower: Vec<Fiber>,
    pub total_dim: usize,
    pub expected_dim: usize,
    /// `deg_z E(stratum)`, which for a compact stratum is twice its dimension.
    pub e_degree: usize,
    pub dims_consistent: bool,
    pub degree_consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleReport {
    pub n: usize,
    /// `dim M_{2n} = 8n + 2`.
    pub moduli_dim: usize,
    pub rows: Vec<BundleRow>,
}

impl BundleReport {
    pub fn all_dims_consistent(&self) -> bool {
        self.rows.iter().all(|r| r.dims_consistent)
    }
}

impl fmt::Display for BundleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, dim M = {}", self.n, self.moduli_dim)?;
        writeln!(f, "{:<6} {:>5} {:>8} {:>6}  tower", "id", "dim", "expected", "deg E")?;
        for r in &self.rows {
            let tower: Vec<String> = r
                .tower
                .iter()
                .map(|x| format!("{} ({})", x.name, x.dim))
                .collect();
            writeln!(
                f,
                "{:<6} {:>5} {:>8} {:>6}  {}{}",
                r.id.to_string(),
                r.total_dim,
                r.expected_dim,
                r.e_degree,
                tower.join(" -> "),
                if r.dims_consistent && r.degree_consistent {
                    ""
                } else if r.dims_consistent {
                    "  [deg E != 2 dim]"
                } else {
                    "  [DIMENSION MISMATCH]"
                }
            )?;
        }
        Ok(())
    }
}

/// Fiber towers of the exceptional strata with dimension bookkeeping. Every
/// divisor must have dimension `dim M - 1 = 8n + 1`, every double
/// intersection `8n`, the triple intersection `8n - 1`.
pub fn bundle_structure_report(n: usize) -> Result<BundleReport> {
    require_n(n, 2)?;
    let fib = |name: &str, dim: usize| Fiber {
        name: name.to_string(),
        dim,
    };
    let base = || fib("J^[n] x J^", 2 * n + 2);
    let gr3 = || fib("Gr^w(3,2n+2)", 6 * n - 6);
    let gr2 = || fib("Gr^w(2,2n+2)", 4 * n - 1);
    let p = |k: usize| fib(&format!("P^{k}"), k);
    let mut rows = Vec::new();
    for set in DivisorSet::ALL {
        let (id, tower) = match set {
            DivisorSet::D1 => (
                StratumId::Closed(set),
                vec![fib("P^5 blown up along P^2", 5), gr3(), base()],
            ),
            DivisorSet::D2 => (
                StratumId::Open(set),
                vec![
                    fib("I_{2n-1} (free Z/2 quotient)", 4 * n - 3),
                    fib("(J^[n] x J^)^2 - diagonal", 4 * n + 4),
                ],
            ),
            DivisorSet::D3 => (StratumId::Closed(set), vec![p(2 * n - 2), p(2), gr2(), base()]),
            DivisorSet::D12 => (
                StratumId::Closed(set),
                vec![fib("P^2 x P^2", 4), gr3(), base()],
            ),
            DivisorSet::D13 => (
                StratumId::Closed(set),
                vec![fib("P^2 x P^2", 4), gr3(), base()],
            ),
            DivisorSet::D23 => (StratumId::Closed(set), vec![p(2 * n - 2), p(1), gr2(), base()]),
            DivisorSet::D123 => (StratumId::Closed(set), vec![p(1), p(2 * n - 3), gr2(), base()]),
        };
        let total_dim: usize = tower.iter().map(|f| f.dim).sum();
        let expected_dim = 8 * n + 2 - set.codim();
        let e = stratum_poly(id, n)?;
        let e_degree = e.degree().unwrap_or(0);
        rows.push(BundleRow {
            id,
            tower,
            total_dim,
            expected_dim,
            e_degree,
            dims_consistent: total_dim == expected_dim,
            degree_consistent: e_degree == 2 * total_dim,
        });
    }
    Ok(BundleReport {
        n,
        moduli_dim: 8 * n + 2,
        rows,
    })
}

/// Coefficient-wise check that a polynomial vanishes at `z = 1`.
pub fn vanishes_at_one(p: &Poly) -> bool {
    p.eval_int(1).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(c: &[i64]) -> Poly {
        Poly::from_ints(Var::T, c)
    }

    #[test]
    fn gr_omega_k1_is_projective_space() {
        for m in 1..6 {
            assert_eq!(gr_omega(1, m).unwrap(), Poly::geometric(2 * m, Var::T));
        }
    }

    #[test]
    fn lagrangian_grassmannian_of_four_space() {
        assert_eq!(gr_omega(2, 2).unwrap(), t(&[1, 1, 1, 1]));
    }

    #[test]
    fn gr_omega_rejects_k_above_m() {
        assert!(gr_omega(3, 2).is_err());
        assert!(gr_omega(0, 2).is_err());
    }

    #[test]
    fn gr_omega_euler_characteristic() {
        // prod_{i<=k} (2m-2k+2i)/i
        for m in 1..7 {
            for k in 1..=m {
                let mut num = BigInt::from(1);
                let mut den = BigInt::from(1);
                for i in 1..=k {
                    num *= 2 * m - 2 * k + 2 * i;
                    den *= i;
                }
                let chi = BigRational::new(num, den);
                assert!(chi.is_integer());
                assert_eq!(gr_omega(k, m).unwrap().eval_int(1), chi);
            }
        }
    }

    #[test]
    fn incidence_small_cases() {
        let i1 = incidence_poincare(1).unwrap();
        assert_eq!(i1.total, Poly::from_ints(Var::Z, &[1, 0, 1]));
        assert_eq!(i1.plus, Poly::one(Var::Z));
        assert_eq!(i1.minus, Poly::from_ints(Var::Z, &[0, 0, 1]));
        let i2 = incidence_poincare(2).unwrap();
        let want = (&t(&[1, 1, 1, 1]) * &t(&[1, 1, 1])).t_to_z().unwrap();
        assert_eq!(i2.total, want);
        for n in 1..=10 {
            let i = incidence_poincare(n).unwrap();
            assert_eq!(&i.plus + &i.minus, i.total);
        }
    }

    #[test]
    fn d2_closed_is_rejected() {
        assert!(e_closed_stratum(DivisorSet::D2, 3).is_err());
        assert!(e_closed_stratum(DivisorSet::D1, 1).is_err());
    }

    #[test]
    fn d1_fiber_is_blown_up_p5() {
        let q = |m| Poly::geometric(m, Var::T);
        let fiber = &(&q(6) - &q(3)) + &(&q(3) * &q(3));
        for n in 2..5 {
            let want = &fiber * &gr_omega(3, n + 1).unwrap();
            assert_eq!(closed_fiber(DivisorSet::D1, n).unwrap(), want);
        }
    }

    #[test]
    fn d123_n2_transcription() {
        // (1+q)(1+q) * (1-q^4)(1-q^6)/((1-q)(1-q^2)) at n = 2.
        let g2 = (&Poly::one_minus_power(4, Var::T) * &Poly::one_minus_power(6, Var::T))
            .exact_div(&(&Poly::one_minus_power(1, Var::T) * &Poly::one_minus_power(2, Var::T)))
            .unwrap();
        let want = &t(&[1, 1]).pow(2) * &g2;
        assert_eq!(closed_fiber(DivisorSet::D123, 2).unwrap(), want);
    }

    #[test]
    fn strata_vanish_at_one() {
        for n in 2..5 {
            for set in DivisorSet::ALL {
                if set != DivisorSet::D2 {
                    assert!(vanishes_at_one(&e_closed_stratum(set, n).unwrap()));
                }
                assert!(vanishes_at_one(&e_open_stratum(set, n).unwrap()));
            }
        }
    }

    #[test]
    fn deepest_stratum_is_closed() {
        let open = open_strata(3).unwrap();
        assert_eq!(
            open.get(DivisorSet::D123),
            &e_closed_stratum(DivisorSet::D123, 3).unwrap()
        );
    }

    #[test]
    fn sym2_point_and_line() {
        let (p, m) = sym2_split(&Poly::one(Var::Z)).unwrap();
        assert_eq!(p, Poly::one(Var::Z));
        assert!(m.is_zero());
        let (p, m) = sym2_split(&Poly::from_ints(Var::Z, &[1, 0, 1])).unwrap();
        assert_eq!(p, Poly::from_ints(Var::Z, &[1, 0, 1, 0, 1]));
        assert_eq!(m, Poly::from_ints(Var::Z, &[0, 0, 1]));
        assert!(sym2_split(&t(&[1])).is_err());
    }

    #[test]
    fn d2_open_divisibility_n2() {
        let e = e_d2_open(2).unwrap();
        assert!(vanishes_at_one(&e));
        let d = Poly::geometric(3, Var::T).t_to_z().unwrap();
        assert!(e.is_divisible_by(&d).unwrap());
    }

    #[test]
    fn stratum_ids_parse() {
        assert_eq!("D123".parse::<StratumId>().unwrap(), StratumId::Closed(DivisorSet::D123));
        assert_eq!("D2o".parse::<StratumId>().unwrap(), StratumId::Open(DivisorSet::D2));
        assert_eq!("D13^0".parse::<StratumId>().unwrap(), StratumId::Open(DivisorSet::D13));
        assert_eq!("D1°".parse::<StratumId>().unwrap(), StratumId::Open(DivisorSet::D1));
        assert_eq!("smooth".parse::<StratumId>().unwrap(), StratumId::Smooth);
        assert!("D4".parse::<StratumId>().is_err());
        assert!("D21".parse::<StratumId>().is_err());
        for set in DivisorSet::ALL {
            for id in [StratumId::Closed(set), StratumId::Open(set)] {
                assert_eq!(id.to_string().parse::<StratumId>().unwrap(), id);
            }
        }
        assert!(stratum_poly(StratumId::Smooth, 2).is_err());
    }

    #[test]
    fn bundle_dimensions() {
        for n in 2..7 {
            let r = bundle_structure_report(n).unwrap();
            assert!(r.all_dims_consistent(), "{r}");
            let d1 = &r.rows[0];
            assert_eq!(d1.total_dim, 8 * n + 1);
            let d123 = r.rows.iter().find(|x| x.id == StratumId::Closed(DivisorSet::D123)).unwrap();
            assert_eq!(d123.total_dim, 8 * n - 1);
            for row in &r.rows {
                if let StratumId::Closed(_) = row.id {
                    assert!(row.degree_consistent, "{:?}", row);
                }
            }
        }
    }
}
