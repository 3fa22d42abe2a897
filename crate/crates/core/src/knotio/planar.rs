//! Gauss codes of closed planar polylines.

use super::{Entry, GaussCode, KnotIoError, Pass, Sign};

/// Vertex of a closed polyline in the projection plane; `depth` decides
/// which strand is on top at a crossing (smaller depth is nearer the viewer).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
    pub depth: f64,
}

/// A transverse self-intersection. Positions are arc parameters `edge + fraction`
/// with `first < second`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarCrossing {
    pub first: f64,
    pub second: f64,
    pub first_dir: (f64, f64),
    pub second_dir: (f64, f64),
    pub first_depth: f64,
    pub second_depth: f64,
}

impl PlanarCrossing {
    /// Sign when the `first` passage is the over-strand (or not).
    pub fn sign(&self, first_over: bool) -> Sign {
        let (o, u) = if first_over { (self.first_dir, self.second_dir) } else { (self.second_dir, self.first_dir) };
        if o.0 * u.1 - o.1 * u.0 > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

const EPS: f64 = 1e-10;

/// All self-intersections of the closed polyline through `points`, with
/// the depth of each strand at the crossing.
pub fn planar_crossings(points: &[PlanarPoint]) -> Result<Vec<PlanarCrossing>, KnotIoError> {
    let n = points.len();
    let seg = |i: usize| (points[i], points[(i + 1) % n]);
    let mut out = Vec::new();
    for i in 0..n {
        let (p0, p1) = seg(i);
        let d1 = (p1.x - p0.x, p1.y - p0.y);
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (q0, q1) = seg(j);
            let d2 = (q1.x - q0.x, q1.y - q0.y);
            let denom = d1.0 * d2.1 - d1.1 * d2.0;
            let w = (q0.x - p0.x, q0.y - p0.y);
            let scale = (d1.0.hypot(d1.1) * d2.0.hypot(d2.1)).max(f64::MIN_POSITIVE);
            if denom.abs() <= EPS * scale {
                let collinear = (w.0 * d1.1 - w.1 * d1.0).abs() <= EPS * d1.0.hypot(d1.1) * (1.0 + w.0.hypot(w.1));
                if collinear && overlaps(p0, d1, q0, q1) && !adjacent {
                    return Err(KnotIoError::Degenerate(format!("segments {i} and {j} overlap")));
                }
                continue;
            }
            let u = (w.0 * d2.1 - w.1 * d2.0) / denom;
            let v = (w.0 * d1.1 - w.1 * d1.0) / denom;
            if adjacent {
                // Adjacent segments meet at their shared vertex only.
                continue;
            }
            if !(-EPS..=1.0 + EPS).contains(&u) || !(-EPS..=1.0 + EPS).contains(&v) {
                continue;
            }
            if !(EPS..=1.0 - EPS).contains(&u) || !(EPS..=1.0 - EPS).contains(&v) {
                return Err(KnotIoError::Degenerate(format!("segments {i} and {j} meet at a vertex")));
            }
            let da = p0.depth + u * (p1.depth - p0.depth);
            let db = q0.depth + v * (q1.depth - q0.depth);
            out.push(PlanarCrossing {
                first: i as f64 + u,
                second: j as f64 + v,
                first_dir: d1,
                second_dir: d2,
                first_depth: da,
                second_depth: db,
            });
        }
    }
    Ok(out)
}

fn overlaps(p0: PlanarPoint, d: (f64, f64), q0: PlanarPoint, q1: PlanarPoint) -> bool {
    let len2 = d.0 * d.0 + d.1 * d.1;
    let proj = |q: PlanarPoint| ((q.x - p0.x) * d.0 + (q.y - p0.y) * d.1) / len2;
    let (a, b) = (proj(q0), proj(q1));
    a.min(b) < 1.0 - EPS && a.max(b) > EPS
}

/// Build a Gauss code from crossings, with `first_over[k]` choosing the
/// over-strand of crossing `k`. Labels are numbered by first occurrence along
/// the curve; the returned vector maps crossing index to label.
pub fn assemble_gauss(crossings: &[PlanarCrossing], first_over: &[bool]) -> (GaussCode, Vec<u32>) {
    let mut passages: Vec<(f64, usize, bool)> = Vec::with_capacity(2 * crossings.len());
    for (k, c) in crossings.iter().enumerate() {
        passages.push((c.first, k, true));
        passages.push((c.second, k, false));
    }
    passages.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut labels = vec![0u32; crossings.len()];
    let mut next = 1;
    let mut entries = Vec::with_capacity(passages.len());
    for (_, k, is_first) in passages {
        if labels[k] == 0 {
            labels[k] = next;
            next += 1;
        }
        let over = is_first == first_over[k];
        entries.push(Entry {
            label: labels[k],
            pass: if over { Pass::Over } else { Pass::Under },
            sign: crossings[k].sign(first_over[k]),
        });
    }
    (GaussCode::from_entries(entries), labels)
}

/// Gauss code of a closed polyline, with the over-strand decided by depth.
pub fn planar_gauss_code(points: &[PlanarPoint]) -> Result<GaussCode, KnotIoError> {
    let crossings = planar_crossings(points)?;
    if let Some(c) = crossings.iter().find(|c| (c.first_depth - c.second_depth).abs() < EPS) {
        return Err(KnotIoError::Degenerate(format!("strands meet in space at arc position {}", c.first)));
    }
    let first_over: Vec<bool> = crossings.iter().map(|c| c.first_depth < c.second_depth).collect();
    Ok(assemble_gauss(&crossings, &first_over).0)
}
