//! Element literals: reading and writing.
//!
//! Integers `-12`; quadratic elements `3`, `2i`, `1-4i` (`w` for ℤ[√−5]);
//! polynomials as signed sums of `c`, `x`, `cx`, `x^k`, `cx^k` in any order
//! (`**` is accepted for `^`); pairs `(a,b)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Element, Ring};
use crate::error::{Error, Result};
use crate::modpoly::ModPoly;
use crate::quadratic::QuadInt;
use crate::zpoly::ZPoly;

fn syntax(text: &str, why: &str) -> Error {
    Error::Syntax(format!("{why} in {text:?}"))
}

fn parse_int(text: &str, s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(text, "expected an integer"));
    }
    s.parse().map_err(|_| syntax(text, "expected an integer"))
}

/// Splits `s` into `(sign, body)` terms at top-level `+`/`-`.
fn signed_terms<'a>(text: &str, s: &'a str) -> Result<Vec<(bool, &'a str)>> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    // a leading sign belongs to the first term
    if let Some(&c) = bytes.first() {
        if c == b'+' || c == b'-' {
            negative = c == b'-';
            i = 1;
            start = 1;
        }
    }
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'+' || c == b'-' {
            out.push((negative, &s[start..i]));
            negative = c == b'-';
            start = i + 1;
        }
        i += 1;
    }
    out.push((negative, &s[start..]));
    if out.iter().any(|(_, t)| t.is_empty()) {
        return Err(syntax(text, "empty term"));
    }
    Ok(out)
}

/// Optional coefficient in front of a variable: `""` means 1, `"3"` or `"3*"`.
fn coefficient(text: &str, s: &str) -> Result<BigInt> {
    let s = s.strip_suffix('*').unwrap_or(s);
    if s.is_empty() {
        Ok(BigInt::from(1))
    } else {
        parse_int(text, s)
    }
}

fn parse_quadratic(text: &str, s: &str, var: char) -> Result<QuadInt> {
    let mut q = QuadInt::zero();
    for (negative, term) in signed_terms(text, s)? {
        let (a, b) = match term.strip_suffix(var) {
            Some(c) => (BigInt::zero(), coefficient(text, c)?),
            None => (parse_int(text, term)?, BigInt::zero()),
        };
        let t = QuadInt::new(a, b);
        q = q.add(&if negative { t.neg() } else { t });
    }
    Ok(q)
}

/// Coefficients (low to high) of a polynomial literal over ℤ.
fn parse_poly(text: &str, s: &str) -> Result<Vec<BigInt>> {
    let s = s.replace("**", "^");
    let mut coeffs: Vec<BigInt> = Vec::new();
    for (negative, term) in signed_terms(text, &s)? {
        let (c, k) = match term.find('x') {
            None => (parse_int(text, term)?, 0usize),
            Some(pos) => {
                let c = coefficient(text, &term[..pos])?;
                let rest = &term[pos + 1..];
                let k = if rest.is_empty() {
                    1
                } else {
                    let e = rest
                        .strip_prefix('^')
                        .ok_or_else(|| syntax(text, "expected ^ after x"))?;
                    if e.is_empty() || !e.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(syntax(text, "bad exponent"));
                    }
                    e.parse::<usize>()
                        .map_err(|_| syntax(text, "bad exponent"))?
                };
                if k > 4096 {
                    return Err(syntax(text, "exponent too large"));
                }
                (c, k)
            }
        };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        if negative {
            coeffs[k] -= c;
        } else {
            coeffs[k] += c;
        }
    }
    Ok(coeffs)
}

fn parse_pair(text: &str, s: &str) -> Result<(BigInt, BigInt)> {
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| syntax(text, "expected (a,b)"))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| syntax(text, "expected (a,b)"))?;
    Ok((parse_int(text, a)?, parse_int(text, b)?))
}

/// Parses a literal of `ring` into canonical form. Whitespace is ignored.
pub fn parse_element(ring: Ring, text: &str) -> Result<Element> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(syntax(text, "empty literal"));
    }
    Ok(match ring {
        Ring::Int => Element::Int(parse_int(text, &s)?),
        Ring::GaussInt => Element::Gauss(parse_quadratic(text, &s, 'i')?),
        Ring::QuadM5 => Element::Quad(parse_quadratic(text, &s, 'w')?),
        Ring::PolyFp(p) => {
            let pb = BigInt::from(p);
            let c = parse_poly(text, &s)?
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap())
                .collect();
            Element::PolyFp(ModPoly::new(p, c))
        }
        Ring::PolyZ => Element::PolyZ(ZPoly::new(parse_poly(text, &s)?)),
        Ring::ProdIntInt => {
            let (a, b) = parse_pair(text, &s)?;
            Element::Prod(a, b)
        }
    })
}

fn render_quadratic(q: &QuadInt, var: char) -> String {
    match (q.a.is_zero(), q.b.is_zero()) {
        (_, true) => q.a.to_string(),
        (true, false) => format!("{}{var}", q.b),
        (false, false) => {
            let sign = if q.b.is_negative() { '-' } else { '+' };
            format!("{}{sign}{}{var}", q.a, q.b.abs())
        }
    }
}

fn render_poly(c: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, ck) in c.iter().enumerate().rev() {
        if ck.is_zero() {
            continue;
        }
        if ck.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = ck.abs();
        let unit = mag == BigInt::from(1);
        match k {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !unit {
                    out.push_str(&mag.to_string());
                }
                out.push('x');
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The literal that `parse_element` reads back to `x`.
pub fn render_element(x: &Element) -> String {
    match x {
        Element::Int(n) => n.to_string(),
        Element::Gauss(q) => render_quadratic(q, 'i'),
        Element::Quad(q) => render_quadratic(q, 'w'),
        Element::PolyFp(f) => {
            let c: Vec<BigInt> = f.coeffs().iter().map(|&c| BigInt::from(c)).collect();
            render_poly(&c)
        }
        Element::PolyZ(f) => render_poly(f.coeffs()),
        Element::Prod(a, b) => format!("({a},{b})"),
    }
}
