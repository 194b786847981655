//! Polynomial input grammar shared by the library and the CLI.
//!
//! Two forms are accepted, whitespace-insensitive:
//! - a coefficient list, lowest degree first: `[c0,c1,...,1]`
//! - a symbolic sum of terms in `x` with integer coefficients, e.g.
//!   `x^8-3`, `x^2 - x + 1`, `2*x^3+x`, `3x`. No parentheses.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::IntPoly;

pub fn parse_poly(input: &str) -> Result<IntPoly> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse("unterminated coefficient list".into()))?;
        return parse_list(inner);
    }
    parse_symbolic(&s)
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad integer '{s}'")))
}

fn parse_list(inner: &str) -> Result<IntPoly> {
    if inner.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    let coeffs = inner
        .split(',')
        .map(parse_int)
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

fn parse_symbolic(s: &str) -> Result<IntPoly> {
    if s.contains('(') || s.contains(')') {
        return Err(Error::Parse("parentheses are not supported".into()));
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut current = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
            terms.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    terms.push(current);

    let mut by_degree: BTreeMap<usize, BigInt> = BTreeMap::new();
    for term in terms {
        let (negative, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term.strip_prefix('+').unwrap_or(&term)),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("dangling sign in '{s}'")));
        }
        let (coeff, degree) = parse_term(body)?;
        let coeff = if negative { -coeff } else { coeff };
        *by_degree.entry(degree).or_insert_with(BigInt::zero) += coeff;
    }
    let top = by_degree.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); top + 1];
    for (d, c) in by_degree {
        coeffs[d] = c;
    }
    Ok(IntPoly::new(coeffs))
}

fn parse_term(body: &str) -> Result<(BigInt, usize)> {
    let Some(xpos) = body.find('x') else {
        return Ok((parse_int(body)?, 0));
    };
    let coeff_part = body[..xpos].trim_end_matches('*');
    let coeff = if coeff_part.is_empty() {
        BigInt::one()
    } else {
        parse_int(coeff_part)?
    };
    let rest = &body[xpos + 1..];
    let degree = if rest.is_empty() {
        1
    } else {
        let exp = rest
            .strip_prefix('^')
            .ok_or_else(|| Error::Parse(format!("unexpected '{rest}' after x")))?;
        exp.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad exponent '{exp}'")))?
    };
    Ok((coeff, degree))
}
