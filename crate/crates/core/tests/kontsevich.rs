use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vasskit::chords::ChordDiagram;
use vasskit::knotio::{four_plat, morse_validate, CriticalKind, MorseVertex, PlatGenerator, Sign};
use vasskit::kontsevich::*;
use vasskit::lieweights::{su2_fundamental, LieAlgebraRep};
use vasskit::MorseEmbedding;

fn plat(word: &[(usize, Sign)]) -> MorseEmbedding {
    let w: Vec<PlatGenerator> = word.iter().map(|&(s, g)| PlatGenerator::new(s, g)).collect();
    four_plat(&w).unwrap()
}

fn trefoil() -> MorseEmbedding {
    plat(&[(2, Sign::Positive); 3])
}

fn unknot() -> MorseEmbedding {
    plat(&[(2, Sign::Positive)])
}

fn figure_eight() -> MorseEmbedding {
    plat(&[(2, Sign::Positive), (2, Sign::Positive), (1, Sign::Negative), (2, Sign::Positive)])
}

fn single() -> ChordDiagram {
    ChordDiagram::from_pairs([(0, 1)]).unwrap()
}

// Order one by brute force: fine height grid, strands matched between
// neighbouring heights by proximity, log increments summed.
fn order_one_oracle(e: &MorseEmbedding, margin: f64, steps: usize) -> Complex64 {
    let cfg = QuadratureConfig { margin, ..Default::default() };
    let heights = e.critical().heights();
    let w = margin * e.critical().min_gap();
    let mut total = Complex64::new(0.0, 0.0);
    for band in heights.windows(2) {
        let (lo, hi) = (band[0] + w, band[1] - w);
        let mut prev = strands_at(e, lo, &cfg).unwrap();
        for k in 1..=steps {
            let t = lo + (hi - lo) * k as f64 / steps as f64;
            let raw = strands_at(e, t, &cfg).unwrap();
            let next: Vec<Strand> = prev
                .iter()
                .map(|p| *raw.iter().min_by(|a, b| (a.z - p.z).norm().total_cmp(&(b.z - p.z).norm())).unwrap())
                .collect();
            for i in 0..prev.len() {
                for j in i + 1..prev.len() {
                    let sign = if (prev[i].direction == Direction::Down) ^ (prev[j].direction == Direction::Down) {
                        -1.0
                    } else {
                        1.0
                    };
                    total += ((next[i].z - next[j].z) / (prev[i].z - prev[j].z)).ln() * sign;
                }
            }
            prev = next;
        }
    }
    total / Complex64::new(0.0, 2.0 * std::f64::consts::PI)
}

#[test]
fn order_one_matches_brute_force() {
    let cfg = QuadratureConfig::default();
    for e in [MorseEmbedding::planar_circle(64).unwrap(), trefoil(), unknot(), figure_eight()] {
        let fast = raw_coefficient(&e, &single(), &cfg).unwrap();
        let slow = order_one_oracle(&e, cfg.margin, 4000);
        assert!((fast.value - slow.re).abs() < 1e-9, "{} vs {}", fast.value, slow.re);
        assert!((fast.imag_residual - slow.im.abs()).abs() < 1e-9);
    }
}

#[test]
fn planar_circle_coefficients_vanish() {
    let c = MorseEmbedding::planar_circle(64).unwrap();
    let cfg = QuadratureConfig::default();
    let one = raw_coefficient(&c, &single(), &cfg).unwrap();
    assert!(one.value.abs() < 0.02 && one.imag_residual < 1e-3);
    let crossed = raw_coefficient(&c, &ChordDiagram::crossed2(), &cfg).unwrap();
    assert!(crossed.value.abs() < 0.02 && crossed.imag_residual < 1e-3);
}

#[test]
fn imaginary_residuals_are_small() {
    let cfg = QuadratureConfig::default();
    for e in [MorseEmbedding::planar_circle(64).unwrap(), trefoil(), unknot(), figure_eight()] {
        for m in 1..=2 {
            for (d, c) in raw_coefficients(&e, m, &cfg).unwrap() {
                assert!(c.imag_residual < 1e-3, "{d}: {c:?}");
            }
        }
    }
}

#[test]
fn order_zero_is_one() {
    let c = raw_coefficient(&trefoil(), &ChordDiagram::empty(), &QuadratureConfig::default()).unwrap();
    assert_eq!(c, Coefficient { value: 1.0, imag_residual: 0.0 });
}

#[test]
fn pairing_count_is_a_product_of_binomials() {
    let e = trefoil();
    let cfg = QuadratureConfig::default();
    let h = e.critical().heights();
    let bottom = h[0];
    let top = h[h.len() - 1];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in 1..=3 {
        let mut ts: Vec<f64> = Vec::new();
        while ts.len() < m {
            let t = rng.gen_range(bottom..top);
            if strands_at(&e, t, &cfg).is_ok() && ts.iter().all(|&s| (s - t).abs() > 1e-6) {
                ts.push(t);
            }
        }
        ts.sort_by(f64::total_cmp);
        let expected: usize = ts
            .iter()
            .map(|&t| {
                let n = strands_at(&e, t, &cfg).unwrap().len();
                n * (n - 1) / 2
            })
            .product();
        let pairings = level_pairings(&e, &ts, &cfg).unwrap();
        assert_eq!(pairings.len(), expected);
        for p in &pairings {
            assert_eq!(p.order(), m);
            assert_eq!(p.diagram().order(), m);
        }
    }
    assert_eq!(level_pairings(&e, &[0.5, 0.2], &cfg).unwrap_err(), KontsevichError::HeightOrder);
}

#[test]
fn strand_counts_on_the_trefoil() {
    let e = trefoil();
    let cfg = QuadratureConfig::default();
    let h = e.critical().heights();
    assert_eq!(e.critical().points.iter().filter(|p| p.kind == CriticalKind::Max).count(), 2);
    // between the two maxima only one hump remains
    assert_eq!(strands_at(&e, 0.5 * (h[2] + h[3]), &cfg).unwrap().len(), 2);
    assert_eq!(strands_at(&e, h[2] - 0.1, &cfg).unwrap().len(), 4);
    assert!(strands_at(&e, h[3] + 1.0, &cfg).unwrap().is_empty());
}

#[test]
fn v2_of_trefoil_and_figure_eight() {
    let cfg = QuadratureConfig { subdivisions: 64, margin: 0.05, ..Default::default() };
    let t = v2_numeric(&trefoil(), &unknot(), &cfg).unwrap();
    assert!((t.value - 1.0).abs() < 0.05, "{t:?}");
    let f = v2_numeric(&figure_eight(), &unknot(), &cfg).unwrap();
    assert!((f.value + 1.0).abs() < 0.05, "{f:?}");
    assert!(t.imag_residual < 1e-3 && f.imag_residual < 1e-3);
}

#[test]
fn self_subtraction_is_exactly_zero() {
    let r = v2_numeric(&trefoil(), &trefoil(), &QuadratureConfig::default()).unwrap();
    assert_eq!(r.value, 0.0);
    assert!(r.refinement.iter().all(|row| row.value == 0.0));
}

#[test]
fn maxima_must_match() {
    let c = MorseEmbedding::planar_circle(16).unwrap();
    assert_eq!(
        v2_numeric(&trefoil(), &c, &QuadratureConfig::default()).unwrap_err(),
        KontsevichError::MaximaMismatch { knot: 2, unknot: 1 }
    );
}

#[test]
fn refinement_deltas_shrink() {
    for knot in [trefoil(), figure_eight()] {
        let r = v2_numeric(&knot, &unknot(), &QuadratureConfig::default()).unwrap();
        let sizes: Vec<usize> = r.refinement.iter().map(|row| row.subdivisions).collect();
        assert_eq!(sizes, vec![8, 16, 32, 64]);
        let deltas: Vec<f64> = r.refinement.iter().filter_map(|row| row.delta).collect();
        assert_eq!(deltas.len(), 3);
        assert!(deltas.windows(2).all(|w| w[1] < w[0]), "{deltas:?}");
    }
}

#[test]
fn time_reversal_sign() {
    // Reversing time reverses every one-form integral, so order m picks up (-1)^m.
    let cfg = QuadratureConfig::default();
    for e in [trefoil(), figure_eight()] {
        let f = e.flip_time();
        for m in 1..=2 {
            let a = raw_coefficients(&e, m, &cfg).unwrap();
            let b = raw_coefficients(&f, m, &cfg).unwrap();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            for (d, c) in &a {
                assert!((b[d].value - sign * c.value).abs() < 1e-9, "{d} {c:?} {:?}", b[d]);
            }
        }
    }
}

#[test]
fn perturbed_heights_keep_v2() {
    let cfg = QuadratureConfig::default();
    let base = v2_numeric(&trefoil(), &unknot(), &cfg).unwrap().value;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let e = trefoil();
    let critical: Vec<usize> = e.critical().points.iter().map(|p| p.index).collect();
    let bound = cfg.margin / 4.0 * e.critical().min_gap();
    for _ in 0..5 {
        let v = e.vertices();
        let n = v.len();
        let jittered: Vec<MorseVertex> = (0..n)
            .map(|i| {
                if critical.contains(&i) {
                    return v[i];
                }
                let room = (v[i].t - v[(i + n - 1) % n].t).abs().min((v[(i + 1) % n].t - v[i].t).abs()) / 2.0;
                let dt = rng.gen_range(-1.0..1.0) * bound.min(room) * 0.99;
                MorseVertex { z: v[i].z, t: v[i].t + dt }
            })
            .collect();
        let p = MorseEmbedding::new(jittered).unwrap();
        morse_validate(&p).unwrap();
        let value = v2_numeric(&p, &unknot(), &cfg).unwrap().value;
        assert!((value - base).abs() < 0.05, "{value} vs {base}");
    }
}

#[test]
fn worker_count_does_not_change_results() {
    let one = v2_numeric(&figure_eight(), &unknot(), &QuadratureConfig::default()).unwrap();
    let many = v2_numeric(&figure_eight(), &unknot(), &QuadratureConfig { threads: 3, ..Default::default() }).unwrap();
    assert_eq!(one, many);
}

#[test]
fn weighted_expansion_terms() {
    let cfg = QuadratureConfig::default();
    let circle = MorseEmbedding::planar_circle(64).unwrap();
    let su2 = su2_fundamental();
    let terms = weighted_expansion(&circle, &su2, 1, &cfg).unwrap();
    let raw = raw_coefficient(&circle, &single(), &cfg).unwrap().value;
    assert_eq!(terms.len(), 1);
    assert!((terms[0].value - 1.5 * raw).abs() < 1e-12 && terms[0].value.abs() < 0.03);

    let zero = LieAlgebraRep::zero(2, 3);
    for t in weighted_expansion(&trefoil(), &zero, 2, &cfg).unwrap() {
        assert_eq!(t.value, 0.0);
    }

    let coarse = weighted_expansion(&trefoil(), &su2, 2, &cfg.with_subdivisions(64)).unwrap()[1].value;
    let fine = weighted_expansion(&trefoil(), &su2, 2, &cfg.with_subdivisions(128)).unwrap()[1].value;
    assert!(coarse.is_finite() && (coarse - fine).abs() < 0.005, "{coarse} vs {fine}");
    assert_eq!(weighted_expansion(&trefoil(), &su2, 3, &cfg).unwrap_err(), KontsevichError::Order(3));
}
