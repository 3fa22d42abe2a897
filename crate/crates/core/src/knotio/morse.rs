use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Deserialize;

use super::{planar_gauss_code, GaussCode, KnotIoError, PlanarPoint, Sign};

/// Polyline vertex: complex coordinate `z` and height `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MorseVertex {
    pub z: Complex64,
    pub t: f64,
}

impl MorseVertex {
    pub fn new(re: f64, im: f64, t: f64) -> Self {
        MorseVertex { z: Complex64::new(re, im), t }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CriticalKind {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPoint {
    pub index: usize,
    pub kind: CriticalKind,
    pub t: f64,
}

/// Critical vertices sorted by height.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalReport {
    pub points: Vec<CriticalPoint>,
}

impl CriticalReport {
    pub fn maxima(&self) -> usize {
        self.points.iter().filter(|p| p.kind == CriticalKind::Max).count()
    }

    pub fn minima(&self) -> usize {
        self.points.iter().filter(|p| p.kind == CriticalKind::Min).count()
    }

    pub fn heights(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.t).collect()
    }

    /// Smallest distance between consecutive critical heights.
    pub fn min_gap(&self) -> f64 {
        self.points.windows(2).map(|w| w[1].t - w[0].t).fold(f64::INFINITY, f64::min)
    }
}

/// Closed piecewise-linear knot in `C x R`; the last vertex connects to the first.
///
/// Every segment is strictly monotone in `t`, so the critical points are
/// exactly the vertices where the direction of `t` reverses.
#[derive(Clone, Debug, PartialEq)]
pub struct MorseEmbedding {
    vertices: Vec<MorseVertex>,
    critical: CriticalReport,
}

#[derive(Deserialize)]
struct MorseFile {
    vertices: Vec<[f64; 3]>,
}

impl MorseEmbedding {
    /// Validate and wrap a vertex list. A trailing copy of the first vertex
    /// (explicit closure) is accepted and dropped.
    pub fn new(mut vertices: Vec<MorseVertex>) -> Result<Self, KnotIoError> {
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        let critical = morse_validate_vertices(&vertices)?;
        Ok(MorseEmbedding { vertices, critical })
    }

    pub fn from_json(text: &str) -> Result<Self, KnotIoError> {
        let file: MorseFile = serde_json::from_str(text).map_err(|e| KnotIoError::Json(e.to_string()))?;
        Self::new(file.vertices.iter().map(|v| MorseVertex::new(v[0], v[1], v[2])).collect())
    }

    /// `{"vertices": [[re, im, t], ...]}` with one vertex per line.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"vertices\": [\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let sep = if i + 1 == self.vertices.len() { "" } else { "," };
            let _ = writeln!(out, "    [{:?}, {:?}, {:?}]{sep}", v.z.re, v.z.im, v.t);
        }
        out.push_str("  ]\n}\n");
        out
    }

    pub fn vertices(&self) -> &[MorseVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn critical(&self) -> &CriticalReport {
        &self.critical
    }

    pub fn maxima(&self) -> usize {
        self.critical.maxima()
    }

    /// The same curve with time reversed, `t -> -t`.
    pub fn flip_time(&self) -> Self {
        let vertices = self.vertices.iter().map(|v| MorseVertex { z: v.z, t: -v.t }).collect();
        Self::new(vertices).expect("time reversal preserves validity")
    }

    /// Regular `n`-gon in the `(Re z, t)` plane with a vertex at the top and at
    /// the bottom; `n` must be even and at least 4.
    pub fn planar_circle(n: usize) -> Result<Self, KnotIoError> {
        let vertices = (0..n)
            .map(|k| {
                let theta = PI / 2.0 + 2.0 * PI * k as f64 / n as f64;
                MorseVertex::new(theta.cos(), 0.0, theta.sin())
            })
            .collect();
        Self::new(vertices)
    }

    /// Knot diagram seen along `Im z`: the plane is `(Re z, t)` and the
    /// strand with smaller `Im z` passes over.
    pub fn projection(&self) -> Result<GaussCode, KnotIoError> {
        let pts: Vec<PlanarPoint> =
            self.vertices.iter().map(|v| PlanarPoint { x: v.z.re, y: v.t, depth: v.z.im }).collect();
        let code = planar_gauss_code(&pts)?;
        GaussCode::knot(code.entries().to_vec())
    }
}

fn morse_validate_vertices(v: &[MorseVertex]) -> Result<CriticalReport, KnotIoError> {
    let n = v.len();
    if n < 4 {
        return Err(KnotIoError::TooFewVertices(n));
    }
    if let Some(index) = v.iter().position(|p| !(p.z.re.is_finite() && p.z.im.is_finite() && p.t.is_finite())) {
        return Err(KnotIoError::NonFinite { index });
    }
    if let Some(index) = (0..n).find(|&i| v[(i + 1) % n].t == v[i].t) {
        return Err(KnotIoError::ZeroLengthSegment { index });
    }
    let mut points: Vec<CriticalPoint> = (0..n)
        .filter_map(|i| {
            let prev = v[(i + n - 1) % n].t;
            let next = v[(i + 1) % n].t;
            let here = v[i].t;
            if here > prev && here > next {
                Some(CriticalPoint { index: i, kind: CriticalKind::Max, t: here })
            } else if here < prev && here < next {
                Some(CriticalPoint { index: i, kind: CriticalKind::Min, t: here })
            } else {
                None
            }
        })
        .collect();
    points.sort_by(|a, b| a.t.total_cmp(&b.t).then(a.index.cmp(&b.index)));
    if let Some(w) = points.windows(2).find(|w| w[0].t == w[1].t) {
        return Err(KnotIoError::DuplicateCriticalHeight { first: w[0].index, second: w[1].index, t: w[0].t });
    }
    let report = CriticalReport { points };
    // A closed curve alternates between maxima and minima.
    debug_assert_eq!(report.maxima(), report.minima());
    Ok(report)
}

pub fn morse_validate(e: &MorseEmbedding) -> Result<CriticalReport, KnotIoError> {
    morse_validate_vertices(e.vertices())
}

/// Braid generator `sigma_strand^sign` on four strands, `strand` in `1..=3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlatGenerator {
    pub strand: usize,
    pub sign: Sign,
}

impl PlatGenerator {
    pub fn new(strand: usize, sign: Sign) -> Self {
        PlatGenerator { strand, sign }
    }
}

const PLAT_BUMP: f64 = 0.3;

/// Plat closure of a four-strand braid word as a Morse embedding with two
/// maxima and two minima.
///
/// Strands rise one unit per generator. At `sigma_i^+` the strand moving
/// right passes nearer the viewer (smaller `Im z`), which picks out a
/// positive crossing when both strands rise.
pub fn four_plat(word: &[PlatGenerator]) -> Result<MorseEmbedding, KnotIoError> {
    if let Some(index) = word.iter().position(|g| !(1..=3).contains(&g.strand)) {
        return Err(KnotIoError::PlatGenerator { index });
    }
    let levels = word.len() as f64;
    // paths[s]: vertices of the strand starting at bottom position s, bottom to top
    let mut paths: Vec<Vec<MorseVertex>> = (0..4).map(|p| vec![MorseVertex::new(p as f64, 0.0, 0.0)]).collect();
    // occupant[p]: starting position of the strand currently at position p
    let mut occupant: [usize; 4] = [0, 1, 2, 3];
    for (k, g) in word.iter().enumerate() {
        let k = k as f64;
        let (a, b) = (g.strand - 1, g.strand);
        let lift = PLAT_BUMP * g.sign.as_i32() as f64;
        let mut next = occupant;
        for (p, &s) in occupant.iter().enumerate() {
            let path = &mut paths[s];
            if p == a {
                path.push(MorseVertex::new(a as f64 + 0.3, -lift, k + 0.3));
                path.push(MorseVertex::new(b as f64, 0.0, k + 1.0));
                next[b] = s;
            } else if p == b {
                path.push(MorseVertex::new(b as f64 - 0.7, lift, k + 0.7));
                path.push(MorseVertex::new(a as f64, 0.0, k + 1.0));
                next[a] = s;
            } else {
                path.push(MorseVertex::new(p as f64, 0.0, k + 1.0));
            }
        }
        occupant = next;
    }
    let top_of = |s: usize| occupant.iter().position(|&o| o == s).expect("every strand ends somewhere");
    let min_vertex = |pair: usize| {
        if pair == 0 {
            MorseVertex::new(0.5, 0.0, -1.0)
        } else {
            MorseVertex::new(2.5, 0.0, -1.3)
        }
    };
    let max_vertex = |pair: usize| {
        if pair == 0 {
            MorseVertex::new(0.5, 0.0, levels + 1.0)
        } else {
            MorseVertex::new(2.5, 0.0, levels + 1.3)
        }
    };

    // Caps join positions 0-1 and 2-3 at both ends. Start at the bottom cap
    // 0-1 and rise from position 1.
    let mut vertices = vec![min_vertex(0)];
    let mut up = 1;
    let mut used = 0;
    loop {
        vertices.extend(paths[up].iter().copied());
        let top = top_of(up);
        vertices.push(max_vertex(top / 2));
        let down = occupant[top ^ 1];
        vertices.extend(paths[down].iter().rev().copied());
        used += 2;
        if down / 2 == 0 {
            break;
        }
        vertices.push(min_vertex(1));
        up = down ^ 1;
    }
    if used != 4 {
        return Err(KnotIoError::PlatLink);
    }
    MorseEmbedding::new(vertices)
}
