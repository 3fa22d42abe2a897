use std::collections::BTreeSet;
use std::time::Instant;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vasskit::chords::{all_matchings, enumerate_diagrams, four_term_relations, isolated_chord_diagrams};
use vasskit::lieweights::*;
use vasskit::poly::{int, rat};
use vasskit::{ChordDiagram, Scalar};

fn reps() -> Vec<LieAlgebraRep> {
    vec![su2_fundamental(), sun_fundamental(3).unwrap(), sun_fundamental(4).unwrap()]
}

// Dense oracle: sum over all colourings of the chords of the trace of the
// product of generators read around the circle.
fn weight_oracle(d: &ChordDiagram, rep: &LieAlgebraRep) -> Scalar {
    let word = d.label_sequence();
    let m = d.order();
    let g = rep.algebra_dim();
    let mut total = Scalar::zero();
    let mut colours = vec![0usize; m];
    loop {
        let mut prod = Matrix::identity(rep.dim);
        for &chord in &word {
            prod = &prod * &rep.generators[colours[chord]];
        }
        total = &total + &prod.trace();
        let mut k = 0;
        loop {
            if k == m {
                return total;
            }
            colours[k] += 1;
            if colours[k] < g {
                break;
            }
            colours[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn conventions_hold_exactly() {
    let start = Instant::now();
    for rep in reps() {
        rep.validate().unwrap();
        let f = structure_constants(&rep).unwrap();
        f.is_totally_antisymmetric().unwrap();
        f.reproduces_brackets(&rep).unwrap();
        let g = rep.algebra_dim();
        for a in 0..g {
            for b in 0..g {
                let tr = (&rep.generators[a] * &rep.generators[b]).trace();
                let expected = if a == b { Scalar::from_rational(rat(1, 2)) } else { Scalar::zero() };
                assert_eq!(tr, expected);
            }
        }
    }
    assert!(start.elapsed().as_secs_f64() < 1.0 || cfg!(debug_assertions));
}

#[test]
fn weights_match_dense_contraction() {
    for rep in reps().into_iter().take(2) {
        for m in 0..=3 {
            for d in enumerate_diagrams(m) {
                assert_eq!(weight(&d, &rep), weight_oracle(&d, &rep), "{} on {d}", rep.name);
            }
        }
    }
    let su4 = sun_fundamental(4).unwrap();
    for d in enumerate_diagrams(2) {
        assert_eq!(weight(&d, &su4), weight_oracle(&d, &su4));
    }
}

#[test]
fn weights_are_rotation_and_reflection_invariant() {
    let su3 = sun_fundamental(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut all = all_matchings(4);
    all.shuffle(&mut rng);
    for d in all.iter().take(12) {
        let w = weight(d, &su3);
        for r in 1..8 {
            assert_eq!(weight(&d.rotated(r), &su3), w);
        }
        assert_eq!(weight(&d.reflected(), &su3), w);
    }
}

#[test]
fn casimir_is_central() {
    for n in 2..=5 {
        let rep = sun_fundamental(n).unwrap();
        let c = casimir_insertion(&rep);
        for t in &rep.generators {
            assert!(c.commutator(t).is_zero());
        }
        let expected = rat((n * n - 1) as i64, 2 * n as i64);
        assert_eq!(c.as_rational_multiple_of_identity(), Some(expected.clone()));
        assert_eq!(fundamental_casimir(n), expected);
    }
}

#[test]
fn isolated_chord_weight_factors_through_casimir() {
    // a chord with adjacent ends contributes one Casimir factor
    for rep in reps().into_iter().take(2) {
        let c: BigRational = fundamental_casimir(rep.dim);
        for d in enumerate_diagrams(2) {
            let mut word = d.label_sequence();
            word.push(9);
            word.push(9);
            let bigger = ChordDiagram::from_labels(&word).unwrap();
            assert_eq!(weight(&bigger, &rep), weight(&d, &rep).scale(&c));
        }
    }
}

#[test]
fn four_term_vanishes() {
    let start = Instant::now();
    for rep in reps() {
        for m in 2..=3 {
            let report = check_four_term(&rep, m);
            assert!(report.all_vanish(), "{} m={m}: {:?}", rep.name, report.violations);
        }
    }
    assert!(start.elapsed().as_secs_f64() < 10.0 || cfg!(debug_assertions));
}

#[test]
fn four_term_detects_a_non_weight() {
    // 2^(number of crossing chord pairs) is not a weight system
    let crossings = |d: &ChordDiagram| {
        let m = d.order();
        let count = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).filter(|&(i, j)| d.chords_cross(i, j)).count();
        int(1 << count)
    };
    let bad = four_term_relations(3).iter().any(|r| r.evaluate(|d, c| c * crossings(d)) != int(0));
    assert!(bad);
}

#[test]
fn orbit_counts_by_burnside() {
    for (m, expected) in [(1usize, 1usize), (2, 2), (3, 5), (4, 18)] {
        let all = all_matchings(m);
        let n = 2 * m;
        let fixed: usize = (0..n).map(|r| all.iter().filter(|d| d.rotated(r) == **d).count()).sum();
        assert_eq!(fixed % n, 0);
        assert_eq!(fixed / n, expected);
        assert_eq!(enumerate_diagrams(m).len(), expected);
    }
}

#[test]
fn isolated_chords_by_brute_force() {
    // Up to order 4 a diagram has an uncrossed chord iff some chord has
    // adjacent ends; from order 5 on two crossing chords can hide on each side.
    for m in 1..=4 {
        let brute: BTreeSet<ChordDiagram> = enumerate_diagrams(m)
            .into_iter()
            .filter(|d| {
                let w = d.label_sequence();
                let n = w.len();
                (0..n).any(|i| w[i] == w[(i + 1) % n])
            })
            .collect();
        assert_eq!(isolated_chord_diagrams(m), brute);
    }
    assert_eq!(isolated_chord_diagrams(3).len(), 3);
    assert_eq!(enumerate_diagrams(3).len() - isolated_chord_diagrams(3).len(), 2);
}

#[test]
fn su2_values() {
    let su2 = su2_fundamental();
    assert_eq!(weight(&ChordDiagram::empty(), &su2), Scalar::from_int(2));
    assert_eq!(weight(&ChordDiagram::from_pairs([(0, 1)]).unwrap(), &su2), Scalar::from_rational(rat(3, 2)));
    assert_eq!(weight(&ChordDiagram::nested2(), &su2), Scalar::from_rational(rat(9, 8)));
    assert_eq!(weight(&ChordDiagram::crossed2(), &su2), Scalar::from_rational(rat(-3, 8)));
}
