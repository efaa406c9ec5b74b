//! Ring-spec grammar and element syntax.
//!
//! Ring specs: `Z/N`, `Fp[t]/t^k` (also `Fp[t]/(t^k)`), `Zloc(p)`.
//! Elements: decimal integers for `Z/N`, `c0+c1*t+c2*t^2` for truncated
//! polynomials, `a/b` for `Z_(p)`, `(x;y;...)` for mixed products.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::crt::{from_integer, integer_value};
use super::{Elem, Family, RingSpec};
use crate::error::{Error, Result};

pub(crate) fn parse_ring_spec(input: &str) -> Result<RingSpec> {
    let s = input.trim();
    let offset = input.len() - input.trim_start().len();
    if let Some(rest) = s.strip_prefix("Z/") {
        let n = parse_u64(rest, offset + 2)?;
        return RingSpec::integers_mod(n);
    }
    if let Some(rest) = s.strip_prefix("Zloc(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(offset + s.len(), "expected ')'"))?;
        return RingSpec::localized(parse_u64(inner, offset + 5)?);
    }
    if let Some(rest) = s.strip_prefix('F') {
        let bracket = rest
            .find("[t]/")
            .ok_or_else(|| Error::parse(offset + 1, "expected 'Fp[t]/t^k'"))?;
        let p = parse_u64(&rest[..bracket], offset + 1)?;
        let tail_pos = offset + 1 + bracket + 4;
        let mut tail = &rest[bracket + 4..];
        if let Some(inner) = tail.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            tail = inner;
        }
        let k = tail
            .strip_prefix("t^")
            .ok_or_else(|| Error::parse(tail_pos, "expected 't^k'"))?;
        let k = parse_u64(k, tail_pos + 2)?;
        let k = u32::try_from(k).map_err(|_| Error::parse(tail_pos + 2, "k too large"))?;
        return RingSpec::truncated(p, k);
    }
    Err(Error::parse(
        offset,
        format!("unrecognized ring '{s}'; expected Z/N, Fp[t]/t^k or Zloc(p)"),
    ))
}

fn parse_u64(s: &str, pos: usize) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(pos, format!("expected a decimal integer, found '{s}'")));
    }
    s.parse()
        .map_err(|_| Error::parse(pos, format!("integer '{s}' out of range")))
}

pub(crate) fn format_elem(spec: &RingSpec, x: &Elem) -> String {
    match (spec.family(), x) {
        (Family::Truncated { .. }, Elem::Trunc(c)) => {
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(|(i, v)| match (i, v) {
                    (0, v) => v.to_string(),
                    (1, 1) => "t".into(),
                    (1, v) => format!("{v}*t"),
                    (i, 1) => format!("t^{i}"),
                    (i, v) => format!("{v}*t^{i}"),
                })
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join("+")
            }
        }
        (Family::Localized { .. }, Elem::Frac(q)) => {
            if q.is_integer() {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            }
        }
        (Family::Product(cs), Elem::Tuple(parts)) if !spec.is_integer_product() => {
            let inner: Vec<String> = cs.iter().zip(parts).map(|(c, e)| format_elem(c, e)).collect();
            format!("({})", inner.join(";"))
        }
        _ => integer_value(spec, x)
            .unwrap_or_else(|| panic!("payload does not belong to {spec}"))
            .to_string(),
    }
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        // only when the outer pair encloses everything
        let mut depth = 0;
        for (i, ch) in t.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 && i != t.len() - 1 {
                        return t;
                    }
                }
                _ => {}
            }
        }
        return t[1..t.len() - 1].trim();
    }
    t
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(0, format!("expected an integer, found '{t}'")));
    }
    t.parse().map_err(|_| Error::parse(0, format!("bad integer '{t}'")))
}

fn reduce_big(v: &BigInt, m: u64) -> u64 {
    let m = BigInt::from(m);
    let r = ((v % &m) + &m) % &m;
    r.try_into().expect("residue fits in u64")
}

pub(crate) fn parse_elem(spec: &RingSpec, input: &str) -> Result<Elem> {
    let s = strip_parens(input);
    match spec.family() {
        Family::PrimePower { modulus, .. } => Ok(Elem::Int(reduce_big(&parse_bigint(s)?, *modulus))),
        Family::Product(_) if spec.is_integer_product() => {
            let v = reduce_big(&parse_bigint(s)?, spec.size().unwrap());
            Ok(from_integer(spec, v))
        }
        Family::Product(cs) => {
            let parts: Vec<&str> = s.split(';').collect();
            if parts.len() != cs.len() {
                return Err(Error::parse(0, format!("expected {} components", cs.len())));
            }
            cs.iter()
                .zip(parts)
                .map(|(c, t)| parse_elem(c, t))
                .collect::<Result<_>>()
                .map(Elem::Tuple)
        }
        Family::Truncated { p, k } => parse_truncated(s, *p, *k as usize),
        Family::Localized { p } => {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (parse_bigint(a)?, parse_bigint(b)?),
                None => (parse_bigint(s)?, BigInt::from(1)),
            };
            if den.is_zero() {
                return Err(Error::InvalidElement("zero denominator".into()));
            }
            let q = BigRational::new(num, den);
            if (q.denom() % BigInt::from(*p)).is_zero() {
                return Err(Error::InvalidElement(format!("{s}: denominator divisible by {p}")));
            }
            debug_assert!(q.denom().is_positive());
            Ok(Elem::Frac(q))
        }
    }
}

/// Parses sums of terms `c`, `t`, `t^j`, `c*t`, `c*t^j`.
fn parse_truncated(s: &str, p: u64, k: usize) -> Result<Elem> {
    let mut coeffs = vec![0u64; k];
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::parse(0, "empty element"));
    }
    let bytes = compact.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut negative = false;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            negative = bytes[i] == b'-';
            i += 1;
        } else if i != 0 {
            return Err(Error::parse(i, "expected '+' or '-'"));
        }
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let term = &compact[start..i];
        let (coef, power) = match term.split_once('t') {
            None => (parse_u64(term, start)?, 0usize),
            Some((c, rest)) => {
                let coef = match c {
                    "" => 1,
                    c => parse_u64(
                        c.strip_suffix('*')
                            .ok_or_else(|| Error::parse(start, "expected '*t'"))?,
                        start,
                    )?,
                };
                let power = match rest {
                    "" => 1,
                    r => {
                        let e = r.strip_prefix('^').ok_or_else(|| Error::parse(start, "expected '^'"))?;
                        parse_u64(e, start)? as usize
                    }
                };
                (coef, power)
            }
        };
        if power < k {
            let c = coef % p;
            let c = if negative { (p - c) % p } else { c };
            coeffs[power] = (coeffs[power] + c) % p;
        }
    }
    Ok(Elem::Trunc(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_spec_grammar() {
        let s: RingSpec = "Z/27".parse().unwrap();
        assert_eq!(s, RingSpec::prime_power(3, 3).unwrap());
        let s: RingSpec = "Z/360".parse().unwrap();
        let expected = RingSpec::product(vec![
            RingSpec::prime_power(2, 3).unwrap(),
            RingSpec::prime_power(3, 2).unwrap(),
            RingSpec::prime_power(5, 1).unwrap(),
        ])
        .unwrap();
        assert_eq!(s, expected);
        let s: RingSpec = "F2[t]/t^2".parse().unwrap();
        assert_eq!(s, RingSpec::truncated(2, 2).unwrap());
        let s: RingSpec = "F3[t]/(t^4)".parse().unwrap();
        assert_eq!(s, RingSpec::truncated(3, 4).unwrap());
        let s: RingSpec = " Zloc(7) ".parse().unwrap();
        assert_eq!(s, RingSpec::localized(7).unwrap());
    }

    #[test]
    fn ring_spec_errors() {
        assert!(matches!("Q".parse::<RingSpec>(), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!("Z/x".parse::<RingSpec>(), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!("F4[t]/t^2".parse::<RingSpec>(), Err(Error::NotPrime(4))));
        assert!(matches!("Zloc(9)".parse::<RingSpec>(), Err(Error::NotPrime(9))));
        assert!(matches!("Z/1".parse::<RingSpec>(), Err(Error::InvalidSpec(_))));
        assert!(matches!("F2[t]/t^0".parse::<RingSpec>(), Err(Error::InvalidSpec(_))));
        assert!(matches!("F2[t]/t^40".parse::<RingSpec>(), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn spec_display_round_trips() {
        for s in ["Z/4", "Z/12", "Z/360", "F3[t]/t^2", "Zloc(5)"] {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn element_syntax() {
        let f = RingSpec::truncated(3, 3).unwrap();
        let x = f.parse_elem("1+2*t+t^2").unwrap();
        assert_eq!(x, Elem::Trunc(vec![1, 2, 1]));
        assert_eq!(f.format_elem(&x), "1+2*t+t^2");
        assert_eq!(f.parse_elem("(1-t)").unwrap(), Elem::Trunc(vec![1, 2, 0]));
        assert_eq!(f.parse_elem("t^3").unwrap(), f.zero());
        assert_eq!(f.format_elem(&f.zero()), "0");

        let q = RingSpec::localized(5).unwrap();
        assert_eq!(q.format_elem(&q.parse_elem("2/4").unwrap()), "1/2");
        assert_eq!(q.format_elem(&q.parse_elem("-3").unwrap()), "-3");
        assert!(q.parse_elem("1/5").is_err());
        assert!(q.parse_elem("1/0").is_err());

        let z = RingSpec::integers_mod(12).unwrap();
        assert_eq!(z.format_elem(&z.parse_elem("-5").unwrap()), "7");

        let mixed = RingSpec::product(vec![
            RingSpec::prime_power(3, 1).unwrap(),
            RingSpec::truncated(2, 2).unwrap(),
        ])
        .unwrap();
        let x = mixed.parse_elem("(2;1+t)").unwrap();
        assert_eq!(mixed.format_elem(&x), "(2;1+t)");
    }
}
