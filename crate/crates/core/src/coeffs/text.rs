//! Text form of coefficients.
//!
//! ```text
//! coeff    := "0" | term (" + " term)*
//! term     := rational | [rational "*"] factor ("*" factor)*
//! rational := ["-"] digits ["/" digits]
//! factor   := "(ipi)" ["^" n] | "leps" ["^" n] | "z(" n ("," n)* ")" ["^" n]
//! ```
//!
//! Example: `-1/6*(ipi)^2 + 2*z(2,1)*leps^3`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::coeff::{Coeff, CoeffMonomial, MzvIndex};
use super::Rational;
use crate::error::{Dk2Error, Result};

fn pow_suffix(e: u32) -> String {
    if e == 1 {
        String::new()
    } else {
        format!("^{e}")
    }
}

pub(crate) fn rational_to_text(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn monomial_factors(m: &CoeffMonomial) -> Vec<String> {
    let mut out = Vec::new();
    if m.ipi_pow > 0 {
        out.push(format!("(ipi){}", pow_suffix(m.ipi_pow)));
    }
    let mut counts: BTreeMap<&MzvIndex, u32> = BTreeMap::new();
    for z in &m.mzv_factors {
        *counts.entry(z).or_insert(0) += 1;
    }
    for (z, c) in counts {
        let entries: Vec<String> = z.entries().iter().map(|e| e.to_string()).collect();
        out.push(format!("z({}){}", entries.join(","), pow_suffix(c)));
    }
    if m.lneps_pow > 0 {
        out.push(format!("leps{}", pow_suffix(m.lneps_pow)));
    }
    out
}

pub(crate) fn coeff_to_text(c: &Coeff) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = c
        .terms()
        .map(|(m, r)| {
            let factors = monomial_factors(m);
            if factors.is_empty() {
                rational_to_text(r)
            } else if r.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", rational_to_text(r), factors.join("*"))
            }
        })
        .collect();
    terms.join(" + ")
}

pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_u32(s: &str) -> Result<u32> {
    s.trim().parse::<u32>().map_err(|_| Dk2Error::Parse(format!("expected a natural number, got `{s}`")))
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Dk2Error::Parse(format!("expected a rational, got `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn split_pow(s: &str) -> Result<(&str, u32)> {
    match s.rfind('^') {
        Some(pos) if !s[pos..].contains(')') => Ok((&s[..pos], parse_u32(&s[pos + 1..])?)),
        _ => Ok((s, 1)),
    }
}

fn parse_factor(s: &str, m: &mut CoeffMonomial) -> Result<()> {
    let (base, e) = split_pow(s.trim())?;
    if base == "(ipi)" {
        m.ipi_pow += e;
    } else if base == "leps" {
        m.lneps_pow += e;
    } else if let Some(inner) = base.strip_prefix("z(").and_then(|r| r.strip_suffix(')')) {
        let entries = inner.split(',').map(parse_u32).collect::<Result<Vec<u32>>>()?;
        let idx = MzvIndex::new(entries)?;
        for _ in 0..e {
            m.mzv_factors.push(idx.clone());
        }
    } else {
        return Err(Dk2Error::Parse(format!("unknown coefficient factor `{s}`")));
    }
    Ok(())
}

fn parse_term(s: &str) -> Result<Coeff> {
    let pieces = split_top(s.trim(), '*');
    let mut r = BigRational::one();
    let mut m = CoeffMonomial::unit();
    for (i, p) in pieces.iter().enumerate() {
        let p = p.trim();
        let starts_numeric = p.starts_with(|c: char| c.is_ascii_digit() || c == '-');
        if i == 0 && starts_numeric {
            r = parse_rational(p)?;
        } else {
            parse_factor(p, &mut m)?;
        }
    }
    m.mzv_factors.sort();
    Ok(Coeff::monomial(m, r))
}

pub(crate) fn coeff_from_text(s: &str) -> Result<Coeff> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Dk2Error::Parse("empty coefficient".into()));
    }
    let mut acc = Coeff::zero();
    for t in split_top(s, '+') {
        acc.add_assign(&parse_term(t)?);
    }
    Ok(acc)
}
