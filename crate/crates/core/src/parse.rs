//! Plain-text polynomial and divisor-class expressions.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := power (['*'] power)*
//! power := atom ['^' integer]
//! atom  := rational | name | '(' expr ')'
//! ```
//!
//! Rationals are written `p` or `p/q` with no spaces; `4H` and `4*H` are the same term.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, LatticeBasis};
use crate::projgeo::{MPoly, Monomial};
use crate::ratmath::{parse_rational, Poly1, Poly2, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = vec![];
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    return Err(Error::parse(start, "decimal literals are not allowed; write p/q"));
                }
                let q = parse_rational(&text[start..i]).map_err(|e| match e {
                    Error::Parse { msg, .. } => Error::parse(start, msg),
                    other => other,
                })?;
                out.push((start, Tok::Num(q)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => return Err(Error::parse(start, format!("unexpected character `{c}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    check: &'a dyn Fn(&str) -> Option<String>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = MPoly::zero();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.here();
        match self.toks.get(self.pos) {
            Some((_, Tok::Num(q))) if q.is_integer() && *q >= Rational::zero() => {
                let e: u32 = q
                    .to_integer()
                    .try_into()
                    .map_err(|_| Error::parse(at, "exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(Error::parse(at, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        let at = self.here();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(Error::parse(at, "unexpected end of expression"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(q) => Ok(MPoly::constant(q)),
            Tok::Ident(name) => {
                if let Some(msg) = (self.check)(&name) {
                    return Err(Error::parse(at, msg));
                }
                Ok(MPoly::var(&name))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::parse(self.here(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(Error::parse(at, format!("unexpected `{}`", tok_text(&other)))),
        }
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Num(q) => q.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Plus => "+".into(),
        Tok::Minus => "-".into(),
        Tok::Star => "*".into(),
        Tok::Caret => "^".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
    }
}

fn parse_with(text: &str, check: &dyn Fn(&str) -> Option<String>) -> Result<MPoly> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        check,
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        let (at, t) = &p.toks[p.pos];
        return Err(Error::parse(*at, format!("unexpected `{}`", tok_text(t))));
    }
    Ok(out)
}

/// A polynomial in any named variables.
pub fn parse_mpoly(text: &str) -> Result<MPoly> {
    parse_with(text, &|_| None)
}

/// A polynomial in the listed variables only.
pub fn parse_mpoly_in(text: &str, vars: &[&str]) -> Result<MPoly> {
    parse_with(text, &|name| {
        (!vars.contains(&name)).then(|| format!("unknown variable `{name}` (expected one of {})", vars.join(", ")))
    })
}

fn mpoly_to_poly2(p: &MPoly) -> Poly2<Rational> {
    let mut coeffs: Vec<Vec<Rational>> = vec![];
    for (m, c) in p.terms() {
        let (i, j) = (m.exponent("u") as usize, m.exponent("v") as usize);
        if coeffs.len() <= i {
            coeffs.resize(i + 1, vec![]);
        }
        if coeffs[i].len() <= j {
            coeffs[i].resize(j + 1, Rational::zero());
        }
        coeffs[i][j] = c.clone();
    }
    Poly2::new(coeffs)
}

/// A polynomial in `u` and `v`.
pub fn parse_poly2(text: &str) -> Result<Poly2<Rational>> {
    Ok(mpoly_to_poly2(&parse_mpoly_in(text, &["u", "v"])?))
}

/// A polynomial in `u` alone.
pub fn parse_poly_u(text: &str) -> Result<Poly1<Rational>> {
    parse_mpoly_in(text, &["u"])?.to_poly1("u").map(|p| p.with_var('u'))
}

/// A rational constant, possibly written as an expression like `3/28*(1/2 + 1)`.
pub fn parse_rational_expr(text: &str) -> Result<Rational> {
    let p = parse_mpoly_in(text, &[])?;
    Ok(p.coeff(&Monomial::one()))
}

/// Per-generator coefficients of a class whose coefficients are polynomials in `coeff_vars`.
pub fn parse_divisor_with(text: &str, basis: &Arc<LatticeBasis>, coeff_vars: &[&str]) -> Result<Vec<MPoly>> {
    let names: Vec<&str> = basis.names().iter().map(String::as_str).collect();
    let p = parse_with(text, &|name| {
        (!names.contains(&name) && !coeff_vars.contains(&name))
            .then(|| format!("unknown generator `{name}` (basis: {})", names.join(", ")))
    })?;
    let mut coeffs = vec![MPoly::zero(); names.len()];
    for (m, c) in p.coefficients_in(&names) {
        if m.degree() != 1 {
            let msg = if m.degree() == 0 {
                "a nonzero term carries no generator"
            } else {
                "expression is not linear in the generators"
            };
            return Err(Error::parse(0, format!("{msg} in `{text}`")));
        }
        let (g, _) = m.vars().next().expect("degree one monomial");
        coeffs[basis.index(g).expect("checked while parsing")] = c;
    }
    Ok(coeffs)
}

/// A divisor class with coefficients polynomial in `u`, `v`.
pub fn parse_divisor_expr(text: &str, basis: &Arc<LatticeBasis>) -> Result<DivisorClass<Poly2<Rational>>> {
    let coeffs = parse_divisor_with(text, basis, &["u", "v"])?;
    DivisorClass::new(basis, coeffs.iter().map(mpoly_to_poly2).collect())
}

/// A divisor class with rational coefficients.
pub fn parse_rational_class(text: &str, basis: &Arc<LatticeBasis>) -> Result<DivisorClass<Rational>> {
    parse_divisor_expr(text, basis)?
        .to_rational()
        .map_err(|_| Error::parse(0, format!("`{text}` must have constant coefficients")))
}

/// A divisor class with coefficients in `u` only.
pub fn parse_class_u(text: &str, basis: &Arc<LatticeBasis>) -> Result<DivisorClass<Poly1<Rational>>> {
    parse_divisor_expr(text, basis)?
        .to_poly_u()
        .map_err(|_| Error::parse(0, format!("`{text}` may depend on u only")))
}

/// An integer, used for small counts in scenario files.
pub fn parse_int(text: &str) -> Result<BigInt> {
    let q = parse_rational(text.trim())?;
    if !q.denom().is_one() {
        return Err(Error::parse(0, format!("`{text}` is not an integer")));
    }
    Ok(q.to_integer())
}
