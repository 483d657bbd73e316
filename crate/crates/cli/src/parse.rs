//! Exact string parsing for CLI inputs: rationals, quadratic scalars such
//! as "1/2+3/4√5" (or "sqrt5"), points "x,y", integer triples and digit
//! words. No floating point is involved at any stage.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::str::FromStr;

use romik_core::quadspace::CirclePoint;
use romik_core::romik::word_from_u8s;
use romik_core::{Digit, Qfe, Rational};

/// A failure to understand the input string (CLI exit code 2), as opposed
/// to a semantically invalid value (core domain error, exit code 1).
#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    if s.is_empty() {
        return err("empty rational");
    }
    BigRational::from_str(s).map_err(|e| ParseError(format!("bad rational '{s}': {e}")))
}

/// One additive term: either a rational or a multiple of a square root,
/// written `b√D`, `√D/q`, or `b*sqrt(D)`-style after normalization.
fn parse_term(s: &str) -> Result<(Rational, Option<(Rational, u64)>), ParseError> {
    match s.find('√') {
        None => Ok((parse_rational(s)?, None)),
        Some(i) => {
            let pre = s[..i].trim_end_matches('*');
            let coef = if pre.is_empty() {
                Rational::one()
            } else {
                parse_rational(pre)?
            };
            let rest = &s[i + '√'.len_utf8()..];
            let (d_str, den) = match rest.split_once('/') {
                Some((d, q)) => (d, Some(q)),
                None => (rest, None),
            };
            let d: u64 = d_str
                .parse()
                .map_err(|_| ParseError(format!("bad radicand '{d_str}'")))?;
            let coef = match den {
                Some(q) => {
                    let q: BigInt = q
                        .parse()
                        .map_err(|_| ParseError(format!("bad denominator '{q}'")))?;
                    coef / Rational::from_integer(q)
                }
                None => coef,
            };
            Ok((Rational::from_integer(BigInt::from(0)), Some((coef, d))))
        }
    }
}

/// Parses a scalar in Q(sqrt D): a sum of at most one rational and one
/// surd term, e.g. "7/4", "1/2+3/4√5", "-√2/2", "2-sqrt3".
pub fn parse_qfe(input: &str) -> Result<Qfe, ParseError> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let compact = compact.replace("sqrt", "√");
    if compact.is_empty() {
        return err("empty scalar");
    }
    // Split into signed terms at '+'/'-', the leading sign included.
    let (mut sign, body): (i8, &str) = match compact.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, compact.strip_prefix('+').unwrap_or(&compact)),
    };
    let mut terms: Vec<(i8, String)> = Vec::new();
    let mut cur = String::new();
    for ch in body.chars() {
        if ch == '+' || ch == '-' {
            terms.push((sign, std::mem::take(&mut cur)));
            sign = if ch == '+' { 1 } else { -1 };
        } else {
            cur.push(ch);
        }
    }
    terms.push((sign, cur));
    let mut a = Rational::from_integer(BigInt::from(0));
    let mut surd: Option<(Rational, u64)> = None;
    for (s, t) in &terms {
        if t.is_empty() {
            return err(format!("dangling sign in '{input}'"));
        }
        let (ra, rb) = parse_term(t)?;
        let signed = Rational::from_integer(BigInt::from(*s as i64));
        a += ra * &signed;
        if let Some((coef, d)) = rb {
            if surd.is_some() {
                return err(format!("more than one surd term in '{input}'"));
            }
            surd = Some((coef * &signed, d));
        }
    }
    let (b, d) = surd.unwrap_or((Rational::from_integer(BigInt::from(0)), 0));
    Qfe::new(a, b, d).map_err(|e| ParseError(format!("bad scalar '{input}': {e}")))
}

/// Parses a point "x,y" of exact scalars; circle membership is checked by
/// the caller via `CirclePoint::new` so that it surfaces as a domain error.
pub fn parse_point_scalars(input: &str) -> Result<(Qfe, Qfe), ParseError> {
    let parts: Vec<&str> = input.split(',').collect();
    if parts.len() != 2 {
        return err(format!("expected 'x,y', got '{input}'"));
    }
    Ok((parse_qfe(parts[0])?, parse_qfe(parts[1])?))
}

/// Parses and validates a point on the circle (validation failures are
/// domain errors, reported separately from parse errors).
pub fn parse_point(input: &str) -> Result<Result<CirclePoint, romik_core::Error>, ParseError> {
    let (x, y) = parse_point_scalars(input)?;
    Ok(CirclePoint::new(x, y))
}

/// Parses a digit word, "3,1" or "31".
pub fn parse_word(input: &str) -> Result<Vec<Digit>, ParseError> {
    let cleaned = input.replace(',', "");
    let digits: Result<Vec<u8>, _> = cleaned
        .chars()
        .map(|c| {
            c.to_digit(10)
                .map(|v| v as u8)
                .ok_or_else(|| ParseError(format!("bad digit '{c}' in word '{input}'")))
        })
        .collect();
    word_from_u8s(&digits?).map_err(|e| ParseError(format!("bad word '{input}': {e}")))
}

/// Parses an integer triple "a,b,c"; primitivity is checked by the caller.
pub fn parse_triple_ints(input: &str) -> Result<(BigInt, BigInt, BigInt), ParseError> {
    let parts: Vec<&str> = input.split(',').collect();
    if parts.len() != 3 {
        return err(format!("expected 'a,b,c', got '{input}'"));
    }
    let mut vals = Vec::new();
    for p in &parts {
        vals.push(
            BigInt::from_str(p.trim())
                .map_err(|_| ParseError(format!("bad integer '{p}'")))?,
        );
    }
    Ok((vals[0].clone(), vals[1].clone(), vals[2].clone()))
}
