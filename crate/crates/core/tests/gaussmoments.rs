use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vasskit::gaussmoments::*;
use vasskit::poly::{int, rat, Poly};

// n-th derivative of e^{J^2/2} at 0: d/dJ (P e^{J^2/2}) = (P' + J P) e^{J^2/2}.
fn derivative_oracle(n: usize) -> BigRational {
    let mut p = Poly::one();
    for _ in 0..n {
        p = &p.derivative() + &p.shift_up();
    }
    p.coeff(0)
}

fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
    let degree = rng.gen_range(0..=8);
    Poly::from_coeffs((0..=degree).map(|_| rat(rng.gen_range(-30..=30), rng.gen_range(1..=12))).collect())
}

#[test]
fn moments_agree_with_both_oracles() {
    let series = source_series(41);
    for n in 0..=20 {
        let even = moment(2 * n);
        let double_factorial: BigInt = (1..2 * n as u64).step_by(2).map(BigInt::from).product();
        assert_eq!(even, BigRational::from_integer(double_factorial));
        assert_eq!(even, derivative_oracle(2 * n));
        assert_eq!(even, series.derivative_at_zero(2 * n));
        assert!(moment(2 * n + 1).is_zero());
        assert!(series.coeff(2 * n + 1).is_zero());
    }
}

#[test]
fn reduce_kills_total_derivatives() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let q = random_poly(&mut rng);
        assert!(reduce(&derivative_of(&q).p).is_zero(), "{}", q.display_with("x"));
    }
}

#[test]
fn proposition_on_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let p = random_poly(&mut rng);
        let q = random_poly(&mut rng);
        let k = rat(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        let j = rat(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        let report = check_proposition(&p, &q, &k, &j);
        assert!(report.all_pass(), "p = {}, q = {}\n{report}", p.display_with("x"), q.display_with("x"));
        assert_eq!(report.checks.len(), 4);
    }
}

#[test]
fn translation_of_a_cubic() {
    let p = Poly::from_ints(&[0, 0, 0, 1]);
    let c = translated_classes(&p, 10);
    assert!(c.iter().all(|x| x.is_zero()));
    let p = Poly::from_ints(&[1, 0, 2]);
    let c = translated_classes(&p, 10);
    assert_eq!(c[0], int(3));
    assert!(c[1..].iter().all(|x| x.is_zero()));
}

#[test]
fn parsed_polynomial_reduces() {
    let p = Poly::parse("3x^4 - x^2 + 7", 'x').unwrap();
    assert_eq!(reduce(&p), int(15));
}
