//! Polynomial text input: `"x^3+1/2x^2-11/2x-5"`, `"2*x^2 - x + 3"`.

use std::collections::BTreeMap;

use descartes_core::rational::{self, Rational};
use descartes_core::{Error, Polynomial, Result};
use num::{One, Zero};

/// Parses a sum of terms `c x^k` with `p/q` or integer coefficients.
/// A missing coefficient is 1 and a missing exponent after `x` is 1; like
/// terms are combined.
pub fn parse_polynomial(text: &str) -> Result<Polynomial> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace('−', "-");
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = BTreeMap::<usize, Rational>::new();
    for (negative, body) in split_terms(&s)? {
        let (k, mut c) = term(body).map_err(|e| Error::Parse(format!("{e} in `{text}`")))?;
        if negative {
            c = -c;
        }
        *terms.entry(k).or_insert_with(Rational::zero) += c;
    }
    let degree = *terms.keys().last().expect("at least one term");
    let mut coeffs = vec![Rational::zero(); degree + 1];
    for (k, c) in terms {
        coeffs[k] = c;
    }
    let p = Polynomial::new(coeffs);
    if p.is_zero() {
        return Err(Error::Parse(format!("`{text}` is the zero polynomial")));
    }
    Ok(p)
}

fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut negative = false;
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b != b'+' && b != b'-' {
            continue;
        }
        // a sign right after `^` belongs to the exponent and is rejected later
        if i > 0 && bytes[i - 1] == b'^' {
            continue;
        }
        if i > start {
            out.push((negative, &s[start..i]));
        } else if i > 0 {
            return Err(Error::Parse(format!("doubled sign at position {i} in `{s}`")));
        }
        negative = b == b'-';
        start = i + 1;
    }
    if start >= s.len() {
        return Err(Error::Parse(format!("`{s}` ends with a sign")));
    }
    out.push((negative, &s[start..]));
    Ok(out)
}

fn term(body: &str) -> std::result::Result<(usize, Rational), String> {
    let Some(at) = body.find('x') else {
        return coefficient(body).map(|c| (0, c));
    };
    let coeff = body[..at].strip_suffix('*').unwrap_or(&body[..at]);
    let c = if coeff.is_empty() {
        Rational::one()
    } else {
        coefficient(coeff)?
    };
    let rest = &body[at + 1..];
    let k = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .and_then(|e| e.parse::<usize>().ok())
            .ok_or_else(|| format!("bad exponent `{rest}`"))?
    };
    Ok((k, c))
}

fn coefficient(s: &str) -> std::result::Result<Rational, String> {
    rational::parse_pq(s).map_err(|_| format!("bad coefficient `{s}`"))
}
