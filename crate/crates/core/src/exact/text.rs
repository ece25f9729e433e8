//! Canonical text and JSON forms for [`Poly`].
//!
//! Text: `1 - 4*z + 13*z^2 - 3/2*z^5`, increasing exponent, zero terms
//! omitted, unit coefficients dropped on non-constant terms, `0` for the
//! zero polynomial. JSON: `{"var": "z", "coeffs": ["1", "-4", "13"]}` with
//! exponent-indexed exact coefficient strings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{Poly, Var};
use super::ExactError;

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let x = self.var().symbol();
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{x}")?,
                (1, false) => write!(f, "{mag}*{x}")?,
                (_, true) => write!(f, "{x}^{i}")?,
                (_, false) => write!(f, "{mag}*{x}^{i}")?,
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let bad = || ExactError::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s.trim()).map_err(|_| bad())?,
        )),
    }
}

impl Poly {
    /// Parse the text form. Accepts the canonical output of `Display` plus
    /// arbitrary spacing, repeated exponents and explicit `1*` coefficients.
    pub fn parse(s: &str, var: Var) -> Result<Poly, ExactError> {
        let x = var.symbol();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ExactError::Parse("empty polynomial".into()));
        }
        // Split into signed terms.
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.chars().enumerate() {
            if ch != '+' && ch != '-' {
                cur.push(ch);
            } else if i == 0 {
                neg = ch == '-';
            } else if cur.is_empty() {
                return Err(ExactError::Parse(format!("dangling sign in `{s}`")));
            } else {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            }
        }
        if cur.is_empty() {
            return Err(ExactError::Parse(format!("dangling sign in `{s}`")));
        }
        terms.push((neg, cur));

        let mut coeffs: Vec<BigRational> = Vec::new();
        for (neg, term) in terms {
            let (coef, exp) = match term.find(x) {
                None => (parse_rational(&term)?, 0usize),
                Some(pos) => {
                    let head = &term[..pos];
                    let tail = &term[pos + x.len_utf8()..];
                    let coef = if head.is_empty() {
                        BigRational::one()
                    } else {
                        let head = head.strip_suffix('*').ok_or_else(|| {
                            ExactError::Parse(format!("expected `*` before `{x}` in `{term}`"))
                        })?;
                        parse_rational(head)?
                    };
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        let e = tail.strip_prefix('^').ok_or_else(|| {
                            ExactError::Parse(format!("unexpected `{tail}` in `{term}`"))
                        })?;
                        e.parse::<usize>()
                            .map_err(|_| ExactError::Parse(format!("bad exponent `{e}`")))?
                    };
                    (coef, exp)
                }
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigRational::zero());
            }
            if neg {
                coeffs[exp] -= coef;
            } else {
                coeffs[exp] += coef;
            }
        }
        Ok(Poly::from_coeffs(var, coeffs))
    }

    /// Exponent-indexed coefficient strings (`"-4"`, `"3/2"`).
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(|c| c.to_string()).collect()
    }

    pub fn from_coeff_strings<S: AsRef<str>>(var: Var, coeffs: &[S]) -> Result<Poly, ExactError> {
        let coeffs = coeffs
            .iter()
            .map(|c| parse_rational(c.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let p = Poly::from_coeffs(var, coeffs.clone());
        // Canonical form never carries trailing zeros.
        if p.coeffs().len() != coeffs.len() {
            return Err(ExactError::Parse("trailing zero coefficient".into()));
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    var: Var,
    coeffs: Vec<String>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            var: self.var(),
            coeffs: self.to_coeff_strings(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        Poly::from_coeff_strings(raw.var, &raw.coeffs).map_err(D::Error::custom)
    }
}
