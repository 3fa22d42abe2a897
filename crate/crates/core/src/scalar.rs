//! Exact scalars in `Q(i)(√2, √3, √5, ...)`.
//!
//! A [`Scalar`] is a finite sum `Σ_s (a_s + i b_s) √s` over square-free
//! positive integers `s`, with rational `a_s, b_s`. The set is closed under
//! addition and multiplication, which is all the generator and trace
//! arithmetic needs. Gaussian rationals are the `s = 1` slice.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::fmt_rational;

/// `re + i·im` with exact rational parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    fn mul(&self, other: &Self) -> Self {
        GaussianRational {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    fn add_assign(&mut self, other: &Self) {
        self.re += &other.re;
        self.im += &other.im;
    }

    fn scale(&self, k: &BigRational) -> Self {
        GaussianRational { re: &self.re * k, im: &self.im * k }
    }
}

impl fmt::Display for GaussianRational {
    /// `p/q`, `r/s i` or `p/q+r/s i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{} i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{} i", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    // square-free radicand -> coefficient; zero coefficients never stored
    terms: BTreeMap<u64, GaussianRational>,
}

fn square_free_split(mut n: u64) -> (u64, u64) {
    // n = k^2 * s with s square-free; returns (k, s)
    let mut k = 1u64;
    let mut s = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    (k, s * n)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn i() -> Self {
        Self::from_gaussian(GaussianRational::new(BigRational::zero(), BigRational::one()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_gaussian(GaussianRational::real(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_gaussian(g: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !g.is_zero() {
            terms.insert(1, g);
        }
        Scalar { terms }
    }

    /// Exact `√q` for a non-negative rational `q` with machine-sized parts.
    pub fn sqrt_rational(q: &BigRational) -> Self {
        assert!(!q.is_negative(), "square root of a negative rational");
        if q.is_zero() {
            return Scalar::zero();
        }
        // √(a/b) = √(ab)/b
        let a = q.numer().to_u64().expect("radicand numerator fits in u64");
        let b = q.denom().to_u64().expect("radicand denominator fits in u64");
        let (k, s) = square_free_split(a * b);
        let coeff = BigRational::new(BigInt::from(k), BigInt::from(b));
        let mut terms = BTreeMap::new();
        terms.insert(s, GaussianRational::real(coeff));
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &GaussianRational)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn conj(&self) -> Self {
        Scalar { terms: self.terms.iter().map(|(s, c)| (*s, c.conj())).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(s, c)| (*s, c.scale(k))).collect() }
    }

    pub fn mul_i(&self) -> Self {
        Scalar { terms: self.terms.iter().map(|(s, c)| (*s, GaussianRational::new(-&c.im, c.re.clone()))).collect() }
    }

    /// `Some(q)` when the scalar is a plain rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (s, c) = self.terms.iter().next()?;
                (*s == 1 && c.im.is_zero()).then(|| c.re.clone())
            }
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        self.terms.iter().fold((0.0, 0.0), |(re, im), (s, c)| {
            let r = (*s as f64).sqrt();
            (re + c.re.to_f64().unwrap_or(f64::NAN) * r, im + c.im.to_f64().unwrap_or(f64::NAN) * r)
        })
    }

    fn insert_add(&mut self, s: u64, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(s).or_default();
        entry.add_assign(&c);
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (s, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let needs_parens = *s != 1 && !c.re.is_zero() && !c.im.is_zero();
            if needs_parens {
                write!(f, "({c})")?;
            } else {
                write!(f, "{c}")?;
            }
            if *s != 1 {
                write!(f, "*sqrt({s})")?;
            }
        }
        Ok(())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (s, c) in &rhs.terms {
            self.insert_add(*s, c.clone());
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (s, a) in &self.terms {
            for (t, b) in &rhs.terms {
                // √s √t = g √(st/g²) with g = gcd(s, t) for square-free s, t
                let g = num_integer::gcd(*s, *t);
                let radicand = (s / g) * (t / g);
                let coeff = a.mul(b).scale(&BigRational::from_integer(BigInt::from(g)));
                out.insert_add(radicand, coeff);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}
