//! Text form of polynomials.
//!
//! Terms are printed in graded-lex order and joined with ` + ` / ` - `:
//!
//! ```text
//! 1/2 - 1/2*z^1*zb^1 + (0)+(3/4)i*w^2*wb^1
//! ```
//!
//! A real coefficient prints as `p/q` (or `p`); a non-real one as `(re)+(im)i`.
//! A unit coefficient is omitted. The zero polynomial prints as `0`.

use std::fmt;
use std::str::FromStr;

use super::gaussian::GaussianRational;
use super::polynomial::{Monomial, Polynomial, Var};
use super::rational::{self, Rational};
use crate::error::CrError;

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exponent(v);
        if e > 0 {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{}^{}", v.name(), e)?;
            first = false;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative_real = c.is_real() && rational::is_negative(&c.re);
            let coeff = if negative_real { -c } else { c.clone() };
            match (idx, negative_real) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = coeff == GaussianRational::one();
            if *m == Monomial::ONE {
                write!(f, "{coeff}")?;
            } else {
                if !unit {
                    write!(f, "{coeff}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, what: &str) -> CrError {
        CrError::Parse(format!("{what} at byte {} in {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), CrError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn rational(&mut self) -> Result<Rational, CrError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'/') {
            end += 1;
        }
        if end == start {
            return Err(self.error("expected a rational"));
        }
        self.pos = end;
        rational::parse_ratio(&self.src[start..end])
    }

    fn uint(&mut self) -> Result<u32, CrError> {
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.error("expected an exponent"));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| self.error("exponent out of range"))
    }

    fn coefficient(&mut self) -> Result<Option<GaussianRational>, CrError> {
        if self.eat("(") {
            let re = self.rational()?;
            self.expect(")")?;
            if self.eat("+(") {
                let im = self.rational()?;
                self.expect(")i")?;
                return Ok(Some(GaussianRational::new(re, im)));
            }
            return Ok(Some(GaussianRational::real(re)));
        }
        if self.rest().starts_with(|ch: char| ch.is_ascii_digit()) {
            return Ok(Some(GaussianRational::real(self.rational()?)));
        }
        if self.rest().starts_with('i') {
            self.pos += 1;
            return Ok(Some(GaussianRational::i()));
        }
        Ok(None)
    }

    fn variable(&mut self) -> Option<Var> {
        // Longest names first so `zb` is not read as `z`.
        for (name, v) in [("zb", Var::Zb), ("wb", Var::Wb), ("z", Var::Z), ("w", Var::W)] {
            if self.eat(name) {
                return Some(v);
            }
        }
        None
    }

    fn term(&mut self) -> Result<Polynomial, CrError> {
        let mut coeff = GaussianRational::one();
        let mut mono = Monomial::ONE;
        if let Some(c) = self.coefficient()? {
            coeff = c;
            if !self.eat("*") {
                return Ok(Polynomial::term(mono, coeff));
            }
        }
        loop {
            let v = self.variable().ok_or_else(|| self.error("expected a variable"))?;
            let e = if self.eat("^") { self.uint()? } else { 1 };
            for _ in 0..e {
                mono = mono.times_var(v);
            }
            if !self.eat("*") {
                break;
            }
        }
        Ok(Polynomial::term(mono, coeff))
    }

    fn polynomial(&mut self) -> Result<Polynomial, CrError> {
        let mut out = Polynomial::zero();
        self.skip_ws();
        let mut negate = self.eat("-");
        if !negate {
            self.eat("+");
        }
        loop {
            self.skip_ws();
            let mut t = self.term()?;
            if negate {
                t = -t;
            }
            out = out + t;
            self.skip_ws();
            if self.pos == self.src.len() {
                return Ok(out);
            }
            if self.eat("+") {
                negate = false;
            } else if self.eat("-") {
                negate = true;
            } else {
                return Err(self.error("expected `+` or `-`"));
            }
        }
    }
}

impl FromStr for Polynomial {
    type Err = CrError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim() == "0" {
            return Ok(Polynomial::zero());
        }
        let mut p = Parser { src: s, pos: 0 };
        p.polynomial()
    }
}

/// Parses a coefficient on its own, e.g. `3/4`, `-3/4` or `(1/2)+(-1)i`.
pub fn parse_coefficient(s: &str) -> Result<GaussianRational, CrError> {
    let s = s.trim();
    let (negate, body) = match s.strip_prefix('-') {
        Some(rest) if rest.starts_with('(') => (true, rest),
        _ => (false, s),
    };
    let mut p = Parser { src: body, pos: 0 };
    let c = if body.starts_with('(') || body == "i" {
        p.coefficient()?.ok_or_else(|| p.error("expected a coefficient"))?
    } else {
        GaussianRational::real(p.rational()?)
    };
    if p.pos != body.len() {
        return Err(p.error("trailing input"));
    }
    Ok(if negate { -c } else { c })
}
