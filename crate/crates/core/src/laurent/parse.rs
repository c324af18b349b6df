//! Text grammar for Laurent polynomials and matrices.
//!
//! A polynomial is a sum of terms such as `3*t^-2 + 1 - 1/2*t^3`. Each term
//! is an optional coefficient (`n` or `n/d`), optionally followed by `*`
//! and `t`, and `t` may carry `^e` with a signed integer `e`. A bare `t` is
//! `1*t^1`. Whitespace is ignored. A matrix lists rows separated by `;` and
//! entries separated by `,`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{FieldCtx, Scalar};
use crate::laurent::matrix::LaurentMatrix;
use crate::laurent::poly::LaurentPoly;

pub fn parse_laurent(ctx: FieldCtx, text: &str) -> Result<LaurentPoly> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    for (negative, body) in split_terms(&s)? {
        let (e, mut c) = parse_term(ctx, body)?;
        if negative {
            c = -c;
        }
        terms.push((e, c));
    }
    LaurentPoly::from_terms(ctx, terms)
}

/// Splits on `+`/`-` signs that start a term, keeping the sign of each.
/// A `-` directly after `^` belongs to the exponent.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    let mut negative = false;
    let mut i = 0;
    if let Some(&c) = bytes.first() {
        if c == b'+' || c == b'-' {
            negative = c == b'-';
            start = 1;
            i = 1;
        }
    }
    while i < bytes.len() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && i > 0 && bytes[i - 1] != b'^' {
            if i == start {
                return Err(Error::Parse(format!("missing term before '{}' in '{s}'", c as char)));
            }
            out.push((negative, &s[start..i]));
            negative = c == b'-';
            start = i + 1;
        }
        i += 1;
    }
    if start >= s.len() {
        return Err(Error::Parse(format!("dangling sign in '{s}'")));
    }
    out.push((negative, &s[start..]));
    Ok(out)
}

fn parse_term(ctx: FieldCtx, term: &str) -> Result<(i64, Scalar)> {
    let bad = || Error::Parse(format!("cannot parse term '{term}'"));
    let (coeff_part, t_part) = match term.find('t') {
        Some(pos) => (&term[..pos], Some(&term[pos + 1..])),
        None => (term, None),
    };
    let coeff_part = match t_part {
        Some(_) => coeff_part.strip_suffix('*').unwrap_or(coeff_part),
        None => coeff_part,
    };
    let coeff = if coeff_part.is_empty() {
        if t_part.is_none() {
            return Err(bad());
        }
        ctx.one()
    } else {
        parse_coefficient(ctx, coeff_part).ok_or_else(bad)??
    };
    let exp = match t_part {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let e = rest.strip_prefix('^').ok_or_else(bad)?;
            let e = e.strip_prefix('+').unwrap_or(e);
            e.parse::<i64>().map_err(|_| bad())?
        }
    };
    Ok((exp, coeff))
}

fn parse_coefficient(ctx: FieldCtx, s: &str) -> Option<Result<Scalar>> {
    let digits = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if !digits(num) || !digits(den) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    Some(ctx.from_fraction(&num, &den))
}

pub fn parse_matrix(ctx: FieldCtx, text: &str) -> Result<LaurentMatrix> {
    let rows = text
        .split(';')
        .map(|row| row.split(',').map(|e| parse_laurent(ctx, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    LaurentMatrix::from_rows(ctx, rows).map_err(|e| Error::Parse(e.to_string()))
}
