//! Parser for the element text form.
//!
//! ```text
//! element := "0" | term (" + " term)*
//! term    := [coeff "*"] body | coeff
//! coeff   := positive-rational | "(" coefficient-text ")"
//! body    := "1" | letter ("." letter)* | "[" word "|" gen "|" word "]"
//! ```

use crate::coeffs::{coeff_from_text, parse_rational, split_top, Coeff};
use crate::error::{Dk2Error, Result};

use super::element::Element;
use super::gens::{AGen, AWord, BGen, BKind, BMon};

fn digit(c: char) -> Result<u8> {
    c.to_digit(10)
        .filter(|d| *d >= 1)
        .map(|d| d as u8)
        .ok_or_else(|| Dk2Error::Parse(format!("bad strand index `{c}`")))
}

fn parse_letter(s: &str) -> Result<AGen> {
    let chars: Vec<char> = s.trim().chars().collect();
    if chars.len() != 3 || chars[0] != 'a' {
        return Err(Dk2Error::Parse(format!("bad letter `{s}`")));
    }
    AGen::new(digit(chars[1])?, digit(chars[2])?)
}

fn parse_word(s: &str) -> Result<Vec<AGen>> {
    let s = s.trim();
    if s.is_empty() || s == "1" {
        return Ok(Vec::new());
    }
    s.split('.').map(parse_letter).collect()
}

fn parse_gen(s: &str) -> Result<BGen> {
    let chars: Vec<char> = s.trim().chars().collect();
    if chars.len() != 4 {
        return Err(Dk2Error::Parse(format!("bad generator `{s}`")));
    }
    let kind = match chars[0] {
        'l' => BKind::L,
        'r' => BKind::R,
        _ => return Err(Dk2Error::Parse(format!("bad generator `{s}`"))),
    };
    BGen::new(kind, digit(chars[1])?, digit(chars[2])?, digit(chars[3])?)
}

enum Body {
    Word(Vec<AGen>),
    Mon(Vec<AGen>, BGen, Vec<AGen>),
}

fn parse_body(s: &str) -> Result<Body> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let parts: Vec<&str> = inner.split('|').collect();
        if parts.len() != 3 {
            return Err(Dk2Error::Parse(format!("bad monomial `{s}`")));
        }
        return Ok(Body::Mon(parse_word(parts[0])?, parse_gen(parts[1])?, parse_word(parts[2])?));
    }
    Ok(Body::Word(parse_word(s)?))
}

fn parse_term(s: &str) -> Result<(Coeff, Body)> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('(') {
        let mut depth = 1;
        let close = rest
            .char_indices()
            .find(|&(_, c)| {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                depth == 0
            })
            .map(|(i, _)| i)
            .ok_or_else(|| Dk2Error::Parse(format!("unbalanced `{s}`")))?;
        let c = coeff_from_text(&rest[..close])?;
        let after = rest[close + 1..].trim();
        return match after.strip_prefix('*') {
            Some(body) => Ok((c, parse_body(body)?)),
            None if after.is_empty() => Ok((c, Body::Word(Vec::new()))),
            None => Err(Dk2Error::Parse(format!("unexpected `{after}`"))),
        };
    }
    let pieces = split_top(s, '*');
    if pieces.len() == 2 {
        let c = Coeff::from_rational(parse_rational(pieces[0])?);
        return Ok((c, parse_body(pieces[1])?));
    }
    if let Ok(r) = parse_rational(s) {
        return Ok((Coeff::from_rational(r), Body::Word(Vec::new())));
    }
    Ok((Coeff::one(), parse_body(s)?))
}

pub(crate) fn parse_element(n: u8, s: &str) -> Result<Element> {
    let s = s.trim();
    let mut out = Element::zero(n);
    if s == "0" {
        return Ok(out);
    }
    for term in split_top(s, '+') {
        let (c, body) = parse_term(term)?;
        let max = match &body {
            Body::Word(w) => w.iter().map(|g| g.j).max().unwrap_or(0),
            Body::Mon(l, g, r) => l.iter().chain(r).map(|a| a.j).max().unwrap_or(0).max(g.k),
        };
        if max > n + 1 {
            return Err(Dk2Error::InvalidIndex(format!("strand {max} outside ambient {n}")));
        }
        match body {
            Body::Word(w) => out.add_term_word(AWord::from_letters(w), c),
            Body::Mon(l, g, r) => out.add_term_bmon(BMon::normalize(l, g, r), c),
        }
    }
    Ok(out)
}
