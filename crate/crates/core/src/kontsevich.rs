//! Numerical Kontsevich integral of a Morse knot up to order two.
//!
//! A knot in `C x R` is cut by horizontal planes `t_1 < ... < t_m`. On each
//! plane choose a pair of strand points `z_i, z'_i`; the pairing is weighted by
//! `(-1)^{#downward endpoints}` and contributes
//!
//! ```text
//! (2 pi i)^{-m}  ∫_{t_1 < ... < t_m}  ∧_i d(z_i - z'_i) / (z_i - z'_i)
//! ```
//!
//! to the coefficient of the chord diagram traced out by the pairing. The
//! kernel is the `1/z` propagator of Chern-Simons theory in axial gauge. The
//! result is only invariant under isotopies fixing the number of critical
//! points, which is why [`v2_numeric`] subtracts an unknot with the same number
//! of maxima rather than dividing by the hump.
//!
//! Heights within `margin * (smallest gap between critical heights)` of a
//! critical height are excluded. Each remaining band between consecutive
//! critical heights is split into `subdivisions` equal cells; the strands in a
//! band are tracked as monotone arcs, so every cell has a fixed list of strand
//! pairs.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::chords::ChordDiagram;
use crate::knotio::MorseEmbedding;
use crate::lieweights::{weight, LieAlgebraRep};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum KontsevichError {
    #[error("subdivisions must be positive")]
    Subdivisions,
    #[error("margin must lie strictly between 0 and 1/2, got {0}")]
    Margin(f64),
    #[error("at least one worker thread is needed")]
    Threads,
    #[error("height {t} lies within the margin around the critical height {critical}")]
    InsideMargin { t: f64, critical: f64 },
    #[error("heights must be strictly increasing")]
    HeightOrder,
    #[error("orders above 2 are not supported, got {0}")]
    Order(usize),
    #[error("knot has {knot} maxima but the reference unknot has {unknot}")]
    MaximaMismatch { knot: usize, unknot: usize },
    #[error("non-finite integrand near height {0}")]
    NonFinite(f64),
}

/// How the one-form `d log(z - z')` is integrated over a cell.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Scheme {
    /// Exact: the sum of complex logarithms of the ratio of separations
    /// between consecutive vertex heights.
    #[default]
    LogIncrement,
    Midpoint,
    Trapezoid,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    /// Cells per band between consecutive critical heights.
    pub subdivisions: usize,
    /// Excluded margin around critical heights, as a fraction of the smallest
    /// critical gap.
    pub margin: f64,
    pub scheme: Scheme,
    pub threads: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { subdivisions: 64, margin: 0.05, scheme: Scheme::LogIncrement, threads: 1 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), KontsevichError> {
        if self.subdivisions == 0 {
            return Err(KontsevichError::Subdivisions);
        }
        if !(self.margin > 0.0 && self.margin < 0.5) {
            return Err(KontsevichError::Margin(self.margin));
        }
        if self.threads == 0 {
            return Err(KontsevichError::Threads);
        }
        Ok(())
    }

    /// Same settings at another resolution.
    pub fn with_subdivisions(&self, subdivisions: usize) -> Self {
        QuadratureConfig { subdivisions, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

/// A point of a horizontal section. `arc` is the position along the knot,
/// `edge + fraction` for a point on the edge from vertex `edge` to `edge + 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Strand {
    pub z: Complex64,
    pub direction: Direction,
    pub arc: f64,
}

fn margin_width(e: &MorseEmbedding, cfg: &QuadratureConfig) -> f64 {
    cfg.margin * e.critical().min_gap()
}

fn check_height(e: &MorseEmbedding, t: f64, cfg: &QuadratureConfig) -> Result<(), KontsevichError> {
    // slack so that the band ends used by the quadrature are accepted
    let w = margin_width(e, cfg) * (1.0 - 1e-9);
    match e.critical().heights().into_iter().find(|c| (t - c).abs() < w) {
        Some(critical) => Err(KontsevichError::InsideMargin { t, critical }),
        None => Ok(()),
    }
}

/// Intersections of the knot with the plane at height `t`, ordered along the knot.
pub fn strands_at(e: &MorseEmbedding, t: f64, cfg: &QuadratureConfig) -> Result<Vec<Strand>, KontsevichError> {
    cfg.validate()?;
    check_height(e, t, cfg)?;
    let v = e.vertices();
    let n = v.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        let (lo, hi) = if a.t < b.t { (a.t, b.t) } else { (b.t, a.t) };
        if lo < t && t <= hi {
            let f = (t - a.t) / (b.t - a.t);
            out.push(Strand {
                z: a.z + (b.z - a.z) * f,
                direction: if b.t > a.t { Direction::Up } else { Direction::Down },
                arc: i as f64 + f,
            });
        }
    }
    Ok(out)
}

/// One chord of a level pairing: two strand points at height `t`, with
/// `first.arc < second.arc`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelChord {
    pub t: f64,
    pub first: Strand,
    pub second: Strand,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelPairing {
    pub chords: Vec<LevelChord>,
}

impl LevelPairing {
    pub fn order(&self) -> usize {
        self.chords.len()
    }

    /// `(-1)^{#downward endpoints}`.
    pub fn sign(&self) -> f64 {
        let down = self
            .chords
            .iter()
            .flat_map(|c| [c.first.direction, c.second.direction])
            .filter(|&d| d == Direction::Down)
            .count();
        if down % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Canonical chord diagram traced by the endpoints around the knot.
    pub fn diagram(&self) -> ChordDiagram {
        let arcs: Vec<(f64, f64)> = self.chords.iter().map(|c| (c.first.arc, c.second.arc)).collect();
        diagram_of_arcs(&arcs)
    }
}

fn diagram_of_arcs(arcs: &[(f64, f64)]) -> ChordDiagram {
    let mut ends: Vec<(f64, usize)> = arcs.iter().enumerate().flat_map(|(k, &(a, b))| [(a, k), (b, k)]).collect();
    ends.sort_by(|x, y| x.0.total_cmp(&y.0));
    let word: Vec<usize> = ends.into_iter().map(|(_, k)| k).collect();
    ChordDiagram::from_labels(&word).expect("every chord has two ends").canonical()
}

/// Every way of choosing one pair of strands on each of the given heights.
/// There are `Π C(n_i, 2)` of them for `n_i` strands at height `t_i`.
pub fn level_pairings(
    e: &MorseEmbedding,
    heights: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<LevelPairing>, KontsevichError> {
    if heights.windows(2).any(|w| w[0] >= w[1]) {
        return Err(KontsevichError::HeightOrder);
    }
    let mut out = vec![LevelPairing { chords: Vec::new() }];
    for &t in heights {
        let s = strands_at(e, t, cfg)?;
        let mut next = Vec::with_capacity(out.len() * s.len() * s.len().saturating_sub(1) / 2);
        for p in &out {
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    let mut chords = p.chords.clone();
                    chords.push(LevelChord { t, first: s[i], second: s[j] });
                    next.push(LevelPairing { chords });
                }
            }
        }
        out = next;
    }
    Ok(out)
}

/// Value of a coefficient and the size of its imaginary part, which vanishes
/// in the continuum limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficient {
    pub value: f64,
    pub imag_residual: f64,
}

impl Coefficient {
    fn from_complex(c: Complex64) -> Self {
        Coefficient { value: c.re, imag_residual: c.im.abs() }
    }
}

/// A strand over one band, as vertices `(t, z, arc)` in increasing `t`.
/// `arc` is unwrapped so it interpolates linearly; it is reduced modulo the
/// vertex count when read.
struct MonotoneArc {
    direction: Direction,
    points: Vec<(f64, Complex64, f64)>,
    n: f64,
}

impl MonotoneArc {
    /// Segment index containing `t`, preferring the segment above a vertex
    /// when `upper` is set.
    fn segment(&self, t: f64, upper: bool) -> usize {
        let last = self.points.len() - 2;
        let k = self.points.partition_point(|p| if upper { p.0 <= t } else { p.0 < t });
        k.saturating_sub(1).min(last)
    }

    fn eval(&self, t: f64, upper: bool) -> (Complex64, Complex64, f64) {
        let k = self.segment(t, upper);
        let (t0, z0, a0) = self.points[k];
        let (t1, z1, a1) = self.points[k + 1];
        let slope = (z1 - z0) / (t1 - t0);
        let f = (t - t0) / (t1 - t0);
        (z0 + slope * (t - t0), slope, (a0 + f * (a1 - a0)).rem_euclid(self.n))
    }

    fn z(&self, t: f64) -> Complex64 {
        self.eval(t, false).0
    }

    fn arc(&self, t: f64) -> f64 {
        self.eval(t, false).2
    }
}

struct Band {
    lo: f64,
    hi: f64,
    arcs: Vec<MonotoneArc>,
}

fn bands(e: &MorseEmbedding) -> Vec<Band> {
    let v = e.vertices();
    let n = v.len();
    let heights = e.critical().heights();
    let mut out = Vec::with_capacity(heights.len().saturating_sub(1));
    for w in heights.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // sample in the widest gap between vertex heights so no vertex sits on it
        let mut levels: Vec<f64> = v.iter().map(|p| p.t).filter(|&t| lo < t && t < hi).collect();
        levels.push(lo);
        levels.push(hi);
        levels.sort_by(f64::total_cmp);
        let (a, b) = levels
            .windows(2)
            .map(|g| (g[0], g[1]))
            .max_by(|x, y| (x.1 - x.0).total_cmp(&(y.1 - y.0)))
            .expect("band has two ends");
        let ts = 0.5 * (a + b);
        let mut arcs = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            if v[i].t.min(v[j].t) < ts && ts < v[i].t.max(v[j].t) {
                let up = v[j].t > v[i].t;
                let step: isize = if up { 1 } else { -1 };
                let (mut low, mut high) = if up { (i as isize, i as isize + 1) } else { (i as isize + 1, i as isize) };
                let at = |k: isize| v[k.rem_euclid(n as isize) as usize];
                while at(low).t > lo {
                    low -= step;
                }
                while at(high).t < hi {
                    high += step;
                }
                let mut points = Vec::new();
                let mut k = low;
                loop {
                    points.push((at(k).t, at(k).z, k as f64));
                    if k == high {
                        break;
                    }
                    k += step;
                }
                let direction = if up { Direction::Up } else { Direction::Down };
                arcs.push(MonotoneArc { direction, points, n: n as f64 });
            }
        }
        out.push(Band { lo, hi, arcs });
    }
    out
}

/// One strand pair over one cell: the signed integral of `d log(z - z')` and
/// the arc positions of its endpoints at a few heights.
#[derive(Clone, Copy)]
struct CellTerm {
    w: Complex64,
    mid: (f64, f64),
    third: (f64, f64),
    two_thirds: (f64, f64),
}

fn dlog_integral(a: &MonotoneArc, b: &MonotoneArc, t0: f64, t1: f64, scheme: Scheme) -> Complex64 {
    let h = t1 - t0;
    let f = |t: f64, upper: bool| {
        let (za, sa, _) = a.eval(t, upper);
        let (zb, sb, _) = b.eval(t, upper);
        (sa - sb) / (za - zb)
    };
    match scheme {
        Scheme::Midpoint => f(0.5 * (t0 + t1), false) * h,
        Scheme::Trapezoid => (f(t0, true) + f(t1, false)) * (0.5 * h),
        Scheme::LogIncrement => {
            let mut cuts: Vec<f64> =
                a.points.iter().chain(&b.points).map(|p| p.0).filter(|&t| t0 < t && t < t1).collect();
            cuts.push(t0);
            cuts.push(t1);
            cuts.sort_by(f64::total_cmp);
            cuts.windows(2)
                .map(|w| {
                    let ratio = (a.z(w[1]) - b.z(w[1])) / (a.z(w[0]) - b.z(w[0]));
                    ratio.ln()
                })
                .sum()
        }
    }
}

fn cell_terms(e: &MorseEmbedding, cfg: &QuadratureConfig) -> Result<Vec<Vec<CellTerm>>, KontsevichError> {
    cfg.validate()?;
    let w = margin_width(e, cfg);
    let mut cells = Vec::new();
    for band in bands(e) {
        let (low, high) = (band.lo + w, band.hi - w);
        let h = (high - low) / cfg.subdivisions as f64;
        for k in 0..cfg.subdivisions {
            let t0 = low + k as f64 * h;
            let t1 = if k + 1 == cfg.subdivisions { high } else { t0 + h };
            let at = |s: f64| t0 + s * (t1 - t0);
            let mut terms = Vec::new();
            for i in 0..band.arcs.len() {
                for j in i + 1..band.arcs.len() {
                    let (a, b) = (&band.arcs[i], &band.arcs[j]);
                    let down = [a.direction, b.direction].iter().filter(|&&d| d == Direction::Down).count();
                    let sign = if down % 2 == 0 { 1.0 } else { -1.0 };
                    let wv = dlog_integral(a, b, t0, t1, cfg.scheme) * sign;
                    if !(wv.re.is_finite() && wv.im.is_finite()) {
                        return Err(KontsevichError::NonFinite(at(0.5)));
                    }
                    let pos = |s: f64| (a.arc(at(s)), b.arc(at(s)));
                    terms.push(CellTerm { w: wv, mid: pos(0.5), third: pos(1.0 / 3.0), two_thirds: pos(2.0 / 3.0) });
                }
            }
            cells.push(terms);
        }
    }
    Ok(cells)
}

/// Chords with arc endpoints `p` and `q` cross when exactly one end of `q`
/// lies between the ends of `p`.
fn arcs_cross(p: (f64, f64), q: (f64, f64)) -> bool {
    let (lo, hi) = if p.0 < p.1 { p } else { (p.1, p.0) };
    let inside = |x: f64| lo < x && x < hi;
    inside(q.0) != inside(q.1)
}

/// Cells handled as a unit by one worker; block sums are added in block
/// order, so the result does not depend on the number of threads.
const BLOCK: usize = 8;

/// `[crossed, nested]` sums over pairs of cells.
fn order_two_sums(cells: &[Vec<CellTerm>], threads: usize) -> [Complex64; 2] {
    let blocks = cells.len().div_ceil(BLOCK);
    let block_sum = |b: usize| -> [Complex64; 2] {
        let mut acc = [Complex64::new(0.0, 0.0); 2];
        for i in b * BLOCK..((b + 1) * BLOCK).min(cells.len()) {
            for p in &cells[i] {
                for q in &cells[i] {
                    let slot = if arcs_cross(p.third, q.two_thirds) { 0 } else { 1 };
                    acc[slot] += p.w * q.w * 0.5;
                }
                for later in &cells[i + 1..] {
                    for q in later {
                        let slot = if arcs_cross(p.mid, q.mid) { 0 } else { 1 };
                        acc[slot] += p.w * q.w;
                    }
                }
            }
        }
        acc
    };
    let mut partial = vec![[Complex64::new(0.0, 0.0); 2]; blocks];
    if threads <= 1 || blocks <= 1 {
        for (b, slot) in partial.iter_mut().enumerate() {
            *slot = block_sum(b);
        }
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads.min(blocks))
                .map(|worker| {
                    let block_sum = &block_sum;
                    scope
                        .spawn(move || (worker..blocks).step_by(threads).map(|b| (b, block_sum(b))).collect::<Vec<_>>())
                })
                .collect();
            for h in handles {
                for (b, s) in h.join().expect("worker panicked") {
                    partial[b] = s;
                }
            }
        });
    }
    partial.iter().fold([Complex64::new(0.0, 0.0); 2], |acc, s| [acc[0] + s[0], acc[1] + s[1]])
}

/// Coefficients of every order-`m` chord diagram, `m <= 2`.
pub fn raw_coefficients(
    e: &MorseEmbedding,
    m: usize,
    cfg: &QuadratureConfig,
) -> Result<BTreeMap<ChordDiagram, Coefficient>, KontsevichError> {
    cfg.validate()?;
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let mut out = BTreeMap::new();
    match m {
        0 => {
            out.insert(ChordDiagram::empty(), Coefficient { value: 1.0, imag_residual: 0.0 });
        }
        1 => {
            let cells = cell_terms(e, cfg)?;
            let total: Complex64 = cells.iter().flatten().map(|c| c.w).sum();
            let one = diagram_of_arcs(&[(0.0, 1.0)]);
            out.insert(one, Coefficient::from_complex(total / two_pi_i));
        }
        2 => {
            let cells = cell_terms(e, cfg)?;
            let [crossed, nested] = order_two_sums(&cells, cfg.threads);
            let norm = two_pi_i * two_pi_i;
            out.insert(ChordDiagram::crossed2(), Coefficient::from_complex(crossed / norm));
            out.insert(ChordDiagram::nested2(), Coefficient::from_complex(nested / norm));
        }
        _ => return Err(KontsevichError::Order(m)),
    }
    Ok(out)
}

/// Coefficient of the chord diagram `d` (of order at most 2).
pub fn raw_coefficient(
    e: &MorseEmbedding,
    d: &ChordDiagram,
    cfg: &QuadratureConfig,
) -> Result<Coefficient, KontsevichError> {
    let all = raw_coefficients(e, d.order(), cfg)?;
    Ok(all[&d.canonical()])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RefinementRow {
    pub subdivisions: usize,
    pub value: f64,
    /// Change from the previous row.
    pub delta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct V2Numeric {
    pub value: f64,
    /// Larger of the two imaginary residuals.
    pub imag_residual: f64,
    /// Values at `s/8, s/4, s/2, s` subdivisions (those that are at least 1).
    pub refinement: Vec<RefinementRow>,
}

/// Crossed order-two coefficient of `knot` minus that of `unknot`, an unknot
/// embedding with the same number of maxima.
pub fn v2_numeric(
    knot: &MorseEmbedding,
    unknot: &MorseEmbedding,
    cfg: &QuadratureConfig,
) -> Result<V2Numeric, KontsevichError> {
    cfg.validate()?;
    if knot.maxima() != unknot.maxima() {
        return Err(KontsevichError::MaximaMismatch { knot: knot.maxima(), unknot: unknot.maxima() });
    }
    let crossed = ChordDiagram::crossed2();
    let at = |s: usize| -> Result<(f64, f64), KontsevichError> {
        let c = cfg.with_subdivisions(s);
        let k = raw_coefficient(knot, &crossed, &c)?;
        let u = raw_coefficient(unknot, &crossed, &c)?;
        Ok((k.value - u.value, k.imag_residual.max(u.imag_residual)))
    };
    let s = cfg.subdivisions;
    let mut levels: Vec<usize> = [s / 8, s / 4, s / 2].into_iter().filter(|&x| x >= 1).collect();
    levels.dedup();
    levels.retain(|&x| x != s);
    levels.push(s);
    let mut refinement: Vec<RefinementRow> = Vec::with_capacity(levels.len());
    let mut last = (0.0, 0.0);
    for level in levels {
        last = at(level)?;
        let delta = refinement.last().map(|r| (last.0 - r.value).abs());
        refinement.push(RefinementRow { subdivisions: level, value: last.0, delta });
    }
    Ok(V2Numeric { value: last.0, imag_residual: last.1, refinement })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpansionTerm {
    pub order: usize,
    pub value: f64,
    pub imag_residual: f64,
}

/// `Σ_d coefficient(d) weight(d)` over diagrams of each order `1..=m_max`.
pub fn weighted_expansion(
    e: &MorseEmbedding,
    rep: &LieAlgebraRep,
    m_max: usize,
    cfg: &QuadratureConfig,
) -> Result<Vec<ExpansionTerm>, KontsevichError> {
    if m_max > 2 {
        return Err(KontsevichError::Order(m_max));
    }
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let mut total = Complex64::new(0.0, 0.0);
        let mut residual = 0.0;
        for (d, c) in raw_coefficients(e, m, cfg)? {
            let (re, im) = weight(&d, rep).to_f64();
            total += Complex64::new(re, im) * c.value;
            residual += c.imag_residual * Complex64::new(re, im).norm();
        }
        out.push(ExpansionTerm { order: m, value: total.re, imag_residual: residual + total.im.abs() });
    }
    Ok(out)
}
