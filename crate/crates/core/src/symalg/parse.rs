use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{LaurentPolynomial, Monomial, SymalgError, Var};

fn err(msg: impl Into<String>) -> SymalgError {
    SymalgError::Parse(msg.into())
}

fn parse_int(s: &str) -> Result<BigInt, SymalgError> {
    s.trim().parse().map_err(|_| err(format!("bad integer `{s}`")))
}

fn parse_coeff(s: &str) -> Result<BigRational, SymalgError> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d == BigInt::from(0) {
                return Err(err("zero denominator in coefficient"));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Parses an exponent into its doubled form: `3`, `-1`, `{5/2}`, `{-1/2}`.
fn parse_exponent(s: &str) -> Result<i32, SymalgError> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        let (n, d) = inner
            .split_once('/')
            .ok_or_else(|| err(format!("bad exponent `{s}`")))?;
        let n: i32 = n.trim().parse().map_err(|_| err(format!("bad exponent `{s}`")))?;
        return match d.trim() {
            "1" => Ok(2 * n),
            "2" => Ok(n),
            _ => Err(err(format!("exponent `{s}` is not a half-integer"))),
        };
    }
    let e: i32 = s.parse().map_err(|_| err(format!("bad exponent `{s}`")))?;
    Ok(2 * e)
}

fn parse_factor(s: &str) -> Result<Monomial, SymalgError> {
    let (name, exp) = match s.split_once('^') {
        Some((n, e)) => (n, parse_exponent(e)?),
        None => (s, 2),
    };
    let v: Var = name.trim().parse()?;
    Ok(Monomial::from_doubled(v, exp))
}

fn parse_term(s: &str) -> Result<(BigRational, Monomial), SymalgError> {
    let mut coeff = BigRational::one();
    let mut mono = Monomial::one();
    for part in s.split('*') {
        let part = part.trim();
        if part.is_empty() {
            return Err(err(format!("empty factor in `{s}`")));
        }
        if part.starts_with(|c: char| c.is_ascii_digit()) {
            coeff *= parse_coeff(part)?;
        } else {
            mono = mono.mul(&parse_factor(part)?);
        }
    }
    Ok((coeff, mono))
}

/// Splits at top-level `+`/`-`, ignoring signs inside `{...}` and after `^`.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>, SymalgError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for c in s.chars() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            _ => {}
        }
        let sign = (c == '+' || c == '-') && depth == 0 && prev != Some('^');
        if sign {
            if !cur.trim().is_empty() {
                out.push((neg, cur.trim().to_string()));
            } else if !out.is_empty() || prev.is_some_and(|p| p == '+' || p == '-') {
                return Err(err(format!("dangling sign in `{s}`")));
            }
            cur.clear();
            neg = c == '-';
        } else {
            cur.push(c);
        }
        if !c.is_whitespace() {
            prev = Some(c);
        }
    }
    if depth != 0 {
        return Err(err(format!("unbalanced braces in `{s}`")));
    }
    if cur.trim().is_empty() {
        return Err(err(format!("empty term in `{s}`")));
    }
    out.push((neg, cur.trim().to_string()));
    Ok(out)
}

impl FromStr for LaurentPolynomial {
    type Err = SymalgError;

    /// Parses the canonical rendering, e.g. `x1^2 - 1/2*p*u^{1/2} + 3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "0" {
            return Ok(LaurentPolynomial::zero());
        }
        let mut p = LaurentPolynomial::zero();
        for (neg, t) in split_terms(s)? {
            let (c, m) = parse_term(&t)?;
            p.add_term(if neg { -c } else { c }, m);
        }
        Ok(p)
    }
}

impl FromStr for Monomial {
    type Err = SymalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (c, m) = parse_term(s)?;
        if !c.is_one() {
            return Err(err(format!("`{s}` has a coefficient")));
        }
        Ok(m)
    }
}
