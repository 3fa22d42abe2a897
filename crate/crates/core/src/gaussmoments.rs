//! Gaussian integrals without integration.
//!
//! Two functions are equivalent, `f ~ g`, when `f - g = dh/dx` for some `h`
//! vanishing at infinity; the "integral" of `f` is its equivalence class. For
//! `f = p(x) e^{-x^2/2}` with polynomial `p`, the class is a rational multiple
//! of the class of `e^{-x^2/2}` itself, found from `D(x^{n-1} e^{-x^2/2}) =
//! ((n-1) x^{n-2} - x^n) e^{-x^2/2}`, i.e. `x^n ~ (n-1) x^{n-2}`. The base
//! class equals `sqrt(2 pi)` when a genuine integral exists; everything here
//! is a ratio to it, so no transcendental number appears.
//!
//! The same bookkeeping extends to functionals. For `F(α) = α(x_0)^2`, the
//! variation `F(α + εδ) - F(α) = 2 ε α(x_0) δ(x_0) + O(ε^2)` gives
//! `δF/δα(x) = 2 α(x) δ(x - x_0)`; for `F(α) = f(α(x_0))` one gets
//! `f'(α(x_0)) δ(x - x_0)`. These need distributions and are not modelled.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{fmt_rational, int, Poly};

/// `p(x) e^{-x^2/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianExpression {
    pub p: Poly,
}

impl GaussianExpression {
    pub fn new(p: Poly) -> Self {
        GaussianExpression { p }
    }

    /// The rational `μ` with `p e^{-x^2/2} ~ μ e^{-x^2/2}`.
    pub fn class(&self) -> BigRational {
        reduce(&self.p)
    }
}

impl fmt::Display for GaussianExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) e^(-x^2/2)", self.p.display_with("x"))
    }
}

/// `D(q e^{-x^2/2}) = (q' - x q) e^{-x^2/2}`, whose class is zero.
pub fn derivative_of(q: &Poly) -> GaussianExpression {
    GaussianExpression::new(&q.derivative() - &q.shift_up())
}

/// `(n-1)!!` for even `n`, zero for odd `n`.
pub fn moment(n: usize) -> BigRational {
    if n % 2 == 1 {
        return BigRational::zero();
    }
    let mut acc = BigInt::one();
    let mut k = n as i64 - 1;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    BigRational::from_integer(acc)
}

/// Class of `p(x) e^{-x^2/2}` relative to the class of `e^{-x^2/2}`.
pub fn reduce(p: &Poly) -> BigRational {
    p.coeffs().iter().enumerate().filter(|(n, c)| n % 2 == 0 && !c.is_zero()).map(|(n, c)| c * moment(n)).sum()
}

/// Truncated power series `Σ_{n <= n_max} a_n J^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSeries {
    coeffs: Vec<BigRational>,
}

impl SourceSeries {
    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `n! a_n`, the `n`-th derivative at `J = 0`.
    pub fn derivative_at_zero(&self, n: usize) -> BigRational {
        let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
        self.coeff(n) * BigRational::from_integer(fact)
    }
}

/// `exp(Σ_k g_k J^k)` with `g_0 = 0`, up to `J^{n_max}`, over coefficients in
/// `Q[x]`; from `F' = g'F`, `n a_n = Σ_k k g_k a_{n-k}`.
fn exp_series(g: &[Poly], n_max: usize) -> Vec<Poly> {
    let mut a = vec![Poly::one()];
    for n in 1..=n_max {
        let mut acc = Poly::zero();
        for (k, gk) in g.iter().enumerate().take(n + 1).skip(1) {
            acc += &(gk * &a[n - k]).scale(&int(k as i64));
        }
        a.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(n))));
    }
    a
}

/// `e^{J^2/2}` to order `n_max`: the source-term generating function of the
/// moments, `∫ e^{-x^2/2 + Jx} = e^{J^2/2} ∫ e^{-x^2/2}`.
pub fn source_series(n_max: usize) -> SourceSeries {
    let g = [Poly::zero(), Poly::zero(), Poly::constant(BigRational::new(BigInt::one(), BigInt::from(2)))];
    let coeffs = exp_series(&g, n_max).into_iter().map(|p| p.coeff(0)).collect();
    SourceSeries { coeffs }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    /// Zero exactly when the check passes.
    pub residue: BigRational,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residue.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionReport {
    pub checks: Vec<Check>,
}

impl PropositionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for PropositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = if c.passed() { "ok" } else { "FAILED" };
            writeln!(f, "{}: {verdict} (residue {})", c.name, fmt_rational(&c.residue))?;
        }
        Ok(())
    }
}

/// Extra orders in `J` beyond `deg p` used by the translation check.
pub const TRANSLATION_EXTRA_ORDERS: usize = 6;

/// Coefficients `c_n` of `J^n` in the class of `p(x + J) e^{-(x+J)^2/2}`,
/// treated as a formal power series in `J`. Invariance under translation
/// means `c_0 = reduce(p)` and `c_n = 0` for `n >= 1`.
pub fn translated_classes(p: &Poly, n_max: usize) -> Vec<BigRational> {
    // p(x + J) = Σ_j p^{(j)}(x) J^j / j!
    let mut taylor = vec![p.clone()];
    for j in 1..=n_max {
        let next = taylor[j - 1].derivative().scale(&BigRational::new(BigInt::one(), BigInt::from(j)));
        taylor.push(next);
    }
    // e^{-(x+J)^2/2} = e^{-x^2/2} exp(-x J - J^2/2)
    let g =
        [Poly::zero(), Poly::from_ints(&[0, -1]), Poly::constant(BigRational::new(-BigInt::one(), BigInt::from(2)))];
    let e = exp_series(&g, n_max);
    (0..=n_max).map(|n| (0..=n).map(|j| reduce(&(&taylor[j] * &e[n - j]))).sum()).collect()
}

/// Exact checks of the properties of the class map on `p`, `q`:
/// it respects `~`, it is linear, it is translation invariant (as a formal
/// series in `J`, then summed at the given `J`), and integration by parts
/// holds.
pub fn check_proposition(p: &Poly, q: &Poly, k: &BigRational, j: &BigRational) -> PropositionReport {
    let mut checks = Vec::with_capacity(4);

    let shifted = &derivative_of(q).p + p;
    checks.push(Check { name: "equivalence", residue: reduce(&shifted) - reduce(p) });

    let combo = &p.scale(k) + q;
    checks.push(Check { name: "linearity", residue: reduce(&combo) - (k * reduce(p) + reduce(q)) });

    let n_max = p.degree().unwrap_or(0) + TRANSLATION_EXTRA_ORDERS;
    let c = translated_classes(p, n_max);
    let mut residue: BigRational = c[1..].iter().map(|x| x.abs()).sum();
    residue += (&c[0] - reduce(p)).abs();
    // the truncated series evaluated at J must reproduce reduce(p) exactly
    let at_j: BigRational = c.iter().rev().fold(BigRational::zero(), |acc, x| acc * j + x);
    residue += (at_j - reduce(p)).abs();
    checks.push(Check { name: "translation", residue });

    // ∫ f (D g) + ∫ (D f) g with f = p, g = q e^{-x^2/2}
    let parts = &(p * &derivative_of(q).p) + &(&p.derivative() * q);
    checks.push(Check { name: "integration by parts", residue: reduce(&parts) });

    PropositionReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn derivative_examples() {
        assert_eq!(derivative_of(&Poly::one()).p, Poly::from_ints(&[0, -1]));
        assert_eq!(derivative_of(&Poly::var()).p, Poly::from_ints(&[1, 0, -1]));
        assert!(derivative_of(&Poly::zero()).p.is_zero());
        assert!(derivative_of(&Poly::from_ints(&[3, 0, 2, 1])).class().is_zero());
    }

    #[test]
    fn small_moments() {
        let x = |n| Poly::monomial(int(1), n);
        assert_eq!(reduce(&x(2)), int(1));
        assert_eq!(reduce(&x(4)), int(3));
        assert_eq!(reduce(&x(6)), int(15));
        assert_eq!(reduce(&x(5)), int(0));
        assert_eq!(reduce(&Poly::from_ints(&[5])), int(5));
        assert_eq!(moment(0), int(1));
        assert_eq!(moment(8), int(105));
    }

    #[test]
    fn source_series_coefficients() {
        let s = source_series(6);
        assert_eq!(s.n_max(), 6);
        assert_eq!(s.coeff(0), int(1));
        assert_eq!(s.coeff(2), rat(1, 2));
        assert_eq!(s.coeff(3), int(0));
        assert_eq!(s.derivative_at_zero(2), moment(2));
    }

    #[test]
    fn proposition_examples() {
        let r = check_proposition(&Poly::from_ints(&[0, 0, 1]), &Poly::one(), &int(3), &int(0));
        assert!(r.all_pass(), "{r}");
        let r = check_proposition(&Poly::from_ints(&[0, 0, 0, 1]), &Poly::one(), &int(1), &rat(1, 2));
        assert!(r.checks[2].passed());
    }
}
