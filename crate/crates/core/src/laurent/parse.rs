//! Text syntax: `2*t^-1 - 3 + 2*t`, exponents ascending on output.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{LaurentPoly, Rational};
use crate::error::{Error, Result};

pub(crate) fn format_terms<'a>(terms: impl Iterator<Item = (i64, &'a Rational)>, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }
}

/// Parse a Laurent polynomial in `var`; whitespace is ignored and repeated
/// exponents are summed.
pub(crate) fn parse_laurent(src: &str, var: char) -> Result<LaurentPoly> {
    let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let compact = compact.replace('\u{2212}', "-");
    let mut cur = Cursor { s: compact.as_bytes(), pos: 0, src };
    if cur.s.is_empty() {
        return Err(cur.err("empty polynomial"));
    }
    let v = var as u8;
    let mut acc = LaurentPoly::zero();
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        match cur.peek() {
            Some(b'+') => cur.pos += 1,
            Some(b'-') => {
                negative = true;
                cur.pos += 1
            }
            _ if first => {}
            _ => return Err(cur.err("expected '+' or '-'")),
        }
        first = false;
        let mut coeff: Option<Rational> = None;
        if let Some(n) = cur.integer() {
            let mut c = Rational::from_integer(n);
            if cur.peek() == Some(b'/') {
                cur.pos += 1;
                let d = cur.integer().ok_or_else(|| cur.err("expected denominator"))?;
                if d.is_zero() {
                    return Err(cur.err("zero denominator"));
                }
                c /= Rational::from_integer(d);
            }
            coeff = Some(c);
            if cur.peek() == Some(b'*') {
                cur.pos += 1;
                if cur.peek() != Some(v) {
                    return Err(cur.err("expected variable after '*'"));
                }
            }
        }
        let mut exp = 0i64;
        if cur.peek() == Some(v) {
            cur.pos += 1;
            exp = 1;
            if cur.peek() == Some(b'^') {
                cur.pos += 1;
                let mut eneg = false;
                if cur.peek() == Some(b'-') {
                    eneg = true;
                    cur.pos += 1;
                } else if cur.peek() == Some(b'(') {
                    cur.pos += 1;
                    if cur.peek() == Some(b'-') {
                        eneg = true;
                        cur.pos += 1;
                    }
                    let e = cur.integer().ok_or_else(|| cur.err("expected exponent"))?;
                    if cur.peek() != Some(b')') {
                        return Err(cur.err("expected ')'"));
                    }
                    cur.pos += 1;
                    exp = to_i64(&e, &cur)? * if eneg { -1 } else { 1 };
                    acc = push_term(acc, coeff, negative, exp);
                    continue;
                }
                let e = cur.integer().ok_or_else(|| cur.err("expected exponent"))?;
                exp = to_i64(&e, &cur)? * if eneg { -1 } else { 1 };
            }
        } else if coeff.is_none() {
            return Err(cur.err("expected coefficient or variable"));
        }
        acc = push_term(acc, coeff, negative, exp);
    }
    Ok(acc)
}

fn to_i64(e: &BigInt, cur: &Cursor<'_>) -> Result<i64> {
    i64::try_from(e).map_err(|_| cur.err("exponent out of range"))
}

fn push_term(acc: LaurentPoly, coeff: Option<Rational>, negative: bool, exp: i64) -> LaurentPoly {
    let mut c = coeff.unwrap_or_else(Rational::one);
    if negative {
        c = -c;
    }
    &acc + &LaurentPoly::monomial(c, exp)
}
