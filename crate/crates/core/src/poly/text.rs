//! Text form of polynomials: `X^2+3*X+2`, `(1+t)*X+t`, `X^2-X+5`.

use super::{Poly, ResiduePoly};
use crate::error::{Error, Result};
use crate::rings::RingSpec;

/// Renders constant-first coefficient strings, highest degree first.
pub(crate) fn join_terms(coeffs: &[String]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let (negative, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, c.as_str()),
        };
        let compound = !mag.starts_with('(') && (mag.contains('+') || mag.contains('-'));
        let mag = if compound { format!("({mag})") } else { mag.to_string() };
        let body = match i {
            0 => mag,
            _ => {
                let mono = if i == 1 { "X".to_string() } else { format!("X^{i}") };
                if mag == "1" {
                    mono
                } else {
                    format!("{mag}*{mono}")
                }
            }
        };
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn format_poly(f: &Poly) -> String {
    join_terms(&f.to_json_coeffs())
}

struct Term<'a> {
    negative: bool,
    coeff: Option<&'a str>,
    power: usize,
}

fn split_terms(s: &str) -> Result<Vec<Term<'_>>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let mut negative = false;
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if bytes[i] == b'+' || bytes[i] == b'-' {
            negative = bytes[i] == b'-';
            i += 1;
        } else if !terms.is_empty() {
            return Err(Error::parse(i, "expected '+' or '-'"));
        }
        let start = i;
        let mut depth = 0i32;
        while i < bytes.len() {
            match bytes[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > start => break,
                _ => {}
            }
            if depth < 0 {
                return Err(Error::parse(i, "unbalanced ')'"));
            }
            i += 1;
        }
        if depth != 0 {
            return Err(Error::parse(start, "unbalanced '('"));
        }
        let raw = s[start..i].trim();
        if raw.is_empty() {
            return Err(Error::parse(start, "empty term"));
        }
        // the indeterminate is the last top-level 'X'
        let x_pos = {
            let mut depth = 0i32;
            let mut found = None;
            for (j, ch) in raw.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    'X' if depth == 0 => found = Some(j),
                    _ => {}
                }
            }
            found
        };
        let term = match x_pos {
            None => Term {
                negative,
                coeff: Some(raw),
                power: 0,
            },
            Some(j) => {
                let coeff = match raw[..j].trim() {
                    "" => None,
                    c => Some(
                        c.strip_suffix('*')
                            .ok_or_else(|| Error::parse(start + j, "expected '*' before X"))?
                            .trim(),
                    ),
                };
                let power = match raw[j + 1..].trim() {
                    "" => 1,
                    e => e
                        .strip_prefix('^')
                        .and_then(|e| e.trim().parse().ok())
                        .ok_or_else(|| Error::parse(start + j + 1, "expected '^<exponent>'"))?,
                };
                Term { negative, coeff, power }
            }
        };
        terms.push(term);
    }
    Ok(terms)
}

pub(crate) fn parse_poly(spec: &RingSpec, s: &str) -> Result<Poly> {
    let mut acc = Poly::zero(spec);
    for t in split_terms(s)? {
        let c = match t.coeff {
            Some(c) => spec.parse_elem(c)?,
            None => spec.one(),
        };
        let c = if t.negative { spec.neg(&c) } else { c };
        acc = acc.add_unchecked(&Poly::monomial(spec, c, t.power));
    }
    Ok(acc)
}

pub(crate) fn parse_residue_poly(p: u64, s: &str) -> Result<ResiduePoly> {
    let mut coeffs: Vec<u64> = Vec::new();
    for t in split_terms(s)? {
        let c = match t.coeff {
            Some(c) => {
                c.trim_matches(|ch| ch == '(' || ch == ')')
                    .parse::<u64>()
                    .map_err(|_| Error::parse(0, format!("bad coefficient '{c}'")))?
                    % p
            }
            None => 1,
        };
        let c = if t.negative { (p - c) % p } else { c };
        if coeffs.len() <= t.power {
            coeffs.resize(t.power + 1, 0);
        }
        coeffs[t.power] = (coeffs[t.power] + c) % p;
    }
    Ok(ResiduePoly::new(p, coeffs))
}
