//! Text grammar for polynomials and small numeric inputs.
//!
//! Grammar, whitespace-insensitive: terms joined by `+`/`-`; a term is a
//! product of factors joined by `*` (or juxtaposition before a variable),
//! optionally divided by integer factors; a factor is an integer, `x[^k]`
//! or `y[^m]`. Examples: `x^2 + y^2 - 1`, `x*y^3/2 - 3/4`, `x^2/4+y^2-1`.
//!
//! Every failure is a positioned `Error::Parse`; no input may panic.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::BivariatePoly;
use crate::rational::Rational;

/// Exponents above this are rejected at parse time so hostile input cannot
/// blow up downstream arithmetic.
const MAX_EXPONENT: u32 = 4096;

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn read_digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }
}

#[derive(Clone)]
enum Factor {
    Number(BigInt),
    Power { var_is_x: bool, exp: u32 },
}

/// Parses the polynomial grammar into an exact `BivariatePoly`.
pub fn parse_poly(text: &str) -> Result<BivariatePoly> {
    let mut sc = Scanner::new(text);
    let mut poly = BivariatePoly::zero();
    sc.skip_ws();
    if sc.peek().is_none() {
        return Err(sc.error("empty input"));
    }
    let mut first = true;
    loop {
        sc.skip_ws();
        let negative = match sc.peek() {
            Some('+') => {
                sc.bump();
                false
            }
            Some('-') => {
                sc.bump();
                true
            }
            None if !first => break,
            None => return Err(sc.error("expected a term")),
            _ if first => false,
            Some(c) => return Err(sc.error(format!("expected '+' or '-', found '{c}'"))),
        };
        let (exp, coeff) = parse_term(&mut sc)?;
        poly.add_term(exp, if negative { -coeff } else { coeff });
        first = false;
        sc.skip_ws();
        if sc.peek().is_none() {
            break;
        }
    }
    Ok(poly)
}

fn parse_term(sc: &mut Scanner) -> Result<((u32, u32), Rational)> {
    let mut coeff = Rational::from_integer(BigInt::from(1));
    let mut ex: u32 = 0;
    let mut ey: u32 = 0;
    let mut saw_factor = false;
    loop {
        sc.skip_ws();
        match sc.peek() {
            Some('*') if saw_factor => {
                sc.bump();
                let f = parse_factor(sc)?;
                apply_factor(sc, f, false, &mut coeff, &mut ex, &mut ey)?;
            }
            Some('/') if saw_factor => {
                sc.bump();
                let f = parse_factor(sc)?;
                apply_factor(sc, f, true, &mut coeff, &mut ex, &mut ey)?;
            }
            Some(c) if c == 'x' || c == 'y' || c.is_ascii_digit() => {
                if !saw_factor || c == 'x' || c == 'y' {
                    let f = parse_factor(sc)?;
                    apply_factor(sc, f, false, &mut coeff, &mut ex, &mut ey)?;
                } else {
                    return Err(sc.error("expected an operator before this number"));
                }
            }
            _ if saw_factor => break,
            Some(c) => return Err(sc.error(format!("expected a factor, found '{c}'"))),
            None => return Err(sc.error("expected a factor")),
        }
        saw_factor = true;
    }
    Ok(((ex, ey), coeff))
}

fn apply_factor(
    sc: &Scanner,
    f: Factor,
    divide: bool,
    coeff: &mut Rational,
    ex: &mut u32,
    ey: &mut u32,
) -> Result<()> {
    match f {
        Factor::Number(n) => {
            if divide {
                if n.is_zero() {
                    return Err(sc.error("division by zero"));
                }
                *coeff = &*coeff / Rational::from_integer(n);
            } else {
                *coeff = &*coeff * Rational::from_integer(n);
            }
        }
        Factor::Power { var_is_x, exp } => {
            if divide {
                return Err(sc.error("division by a variable is not polynomial"));
            }
            let slot = if var_is_x { ex } else { ey };
            *slot = slot
                .checked_add(exp)
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| sc.error(format!("exponent exceeds {MAX_EXPONENT}")))?;
        }
    }
    Ok(())
}

fn parse_factor(sc: &mut Scanner) -> Result<Factor> {
    sc.skip_ws();
    match sc.peek() {
        Some(c) if c.is_ascii_digit() => {
            let digits = sc.read_digits().expect("digit peeked");
            let n: BigInt = digits.parse().map_err(|_| sc.error("invalid integer"))?;
            Ok(Factor::Number(n))
        }
        Some(c) if c == 'x' || c == 'y' => {
            sc.bump();
            let var_is_x = c == 'x';
            let exp = if sc.peek() == Some('^') {
                sc.bump();
                let digits = sc
                    .read_digits()
                    .ok_or_else(|| sc.error("expected exponent digits after '^'"))?;
                let e: u32 = digits
                    .parse()
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| sc.error(format!("exponent exceeds {MAX_EXPONENT}")))?;
                e
            } else {
                1
            };
            Ok(Factor::Power { var_is_x, exp })
        }
        Some(c) => Err(sc.error(format!("expected a factor, found '{c}'"))),
        None => Err(sc.error("expected a factor")),
    }
}

impl std::str::FromStr for BivariatePoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

/// Parses `a,b` into a pair of finite floats.
pub fn parse_point(text: &str) -> Result<[f64; 2]> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse {
            position: 0,
            message: "expected 'a,b'".into(),
        });
    }
    let mut out = [0.0; 2];
    for (k, part) in parts.iter().enumerate() {
        let v: f64 = part.trim().parse().map_err(|_| Error::Parse {
            position: 0,
            message: format!("invalid number '{}'", part.trim()),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                position: 0,
                message: "coordinates must be finite".into(),
            });
        }
        out[k] = v;
    }
    Ok(out)
}

/// Parses `a,b` into positive ellipse semi-axes.
pub fn parse_axes(text: &str) -> Result<(f64, f64)> {
    let [a, b] = parse_point(text)?;
    if a > 0.0 && b > 0.0 {
        Ok((a, b))
    } else {
        Err(Error::Parse {
            position: 0,
            message: "semi-axes must be positive".into(),
        })
    }
}
