//! Univariate polynomials with exact rational coefficients.
//!
//! Used both as the value ring of knot invariants (polynomials in `z`) and as
//! prefactors of Gaussian expressions (polynomials in `x`).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("empty polynomial text")]
    Empty,
    #[error("malformed term `{0}`")]
    BadTerm(String),
}

/// Dense polynomial `c0 + c1 v + c2 v^2 + ...`; trailing zeros are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c v^n`.
    pub fn monomial(c: BigRational, n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = c;
        Self::from_coeffs(coeffs)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(n, c)| c * int(n as i64)).collect())
    }

    /// Multiply by the variable.
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, v: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * v + c)
    }

    /// `p(v + shift)` re-expanded in powers of `v`.
    pub fn translate(&self, shift: &BigRational) -> Self {
        // Horner with the linear polynomial (v + shift).
        let lin = Poly::from_coeffs(vec![shift.clone(), BigRational::one()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Render with the given variable name, ascending degree: `1 - 2/3 z + z^2`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mag_text = fmt_rational(&mag);
            match n {
                0 => out.push_str(&mag_text),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&mag_text);
                        out.push(' ');
                    }
                    out.push_str(var);
                    if n > 1 {
                        out.push('^');
                        out.push_str(&n.to_string());
                    }
                }
            }
        }
        out
    }

    /// Parse text such as `3x^4 - x^2 + 7` or `1/2 z^2 + z` in the variable `var`.
    pub fn parse(text: &str, var: char) -> Result<Self, PolyParseError> {
        let cleaned: String =
            text.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
        if cleaned.is_empty() {
            return Err(PolyParseError::Empty);
        }
        let mut terms = Vec::new();
        let mut current = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        terms.push(current);

        let mut acc = Poly::zero();
        for term in terms {
            acc = &acc + &parse_term(&term, var)?;
        }
        Ok(acc)
    }
}

fn parse_term(term: &str, var: char) -> Result<Poly, PolyParseError> {
    let bad = || PolyParseError::BadTerm(term.to_string());
    let (negative, body) = match term.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, term.strip_prefix('+').unwrap_or(term)),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coeff_text, power) = match body.find(var) {
        Some(idx) => {
            let coeff_text = body[..idx].trim_end_matches('*');
            let rest = &body[idx + var.len_utf8()..];
            let power = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').and_then(|p| p.parse::<usize>().ok()).ok_or_else(bad)?
            };
            (coeff_text, power)
        }
        None => (body, 0),
    };
    let mut coeff =
        if coeff_text.is_empty() { BigRational::one() } else { parse_rational(coeff_text).ok_or_else(bad)? };
    if negative {
        coeff = -coeff;
    }
    Ok(Poly::monomial(coeff, power))
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("z"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}
