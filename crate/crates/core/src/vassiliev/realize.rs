//! Singular knots with a prescribed chord diagram.
//!
//! Place the `2m` chord ends on the unit circle. For every chord, push a thin
//! finger from one end straight along the chord until its tip pokes out of
//! the circle just past the other end. The finger's outgoing strand crosses
//! the circle once near that end; that crossing becomes the node. Everything
//! else (the return strand leaving the circle, and fingers of crossing chords
//! running over each other) is an ordinary crossing. Signs come from the
//! geometry of the planar curve.

use std::f64::consts::PI;

use crate::chords::ChordDiagram;
use crate::knotio::{assemble_gauss, planar_crossings, GaussCode, Link, PlanarPoint, SingularKnotDiagram};

use super::VassilievError;

/// Which end of each chord the finger starts from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EndChoice {
    /// The end met first along the circle.
    #[default]
    First,
    Second,
}

/// Over-strand rule for the ordinary crossings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OrdinaryCrossings {
    /// Every ordinary crossing is first met as an under-pass.
    #[default]
    Ascending,
    Descending,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Realization {
    pub finger_from: EndChoice,
    pub ordinary: OrdinaryCrossings,
}

const CIRCLE_STEPS: usize = 720;
const FINGER_WIDTH: f64 = 0.01;
const TIP_OVERSHOOT: f64 = 0.15;

type Pt = (f64, f64);

fn on_circle(theta: f64) -> Pt {
    (theta.cos(), theta.sin())
}

/// Angle of chord end `p` out of `n`; a fixed irregular jitter keeps the
/// construction away from symmetric coincidences.
fn end_angle(p: usize, n: usize) -> f64 {
    let jitter = 0.12 * (1.7 * p as f64 + 0.3).sin();
    2.0 * PI * (p as f64 + 0.5 + jitter) / n as f64
}

pub fn realize(d: &ChordDiagram, how: Realization) -> Result<SingularKnotDiagram, VassilievError> {
    let m = d.order();
    if m == 0 {
        return Ok(SingularKnotDiagram::new(Link::knot(GaussCode::default())));
    }
    let n = 2 * m;
    let gamma = 0.15 * 2.0 * PI / n as f64;
    let mut fingers: Vec<(f64, usize)> = d
        .pairs()
        .iter()
        .map(|&(a, b)| match how.finger_from {
            EndChoice::First => (end_angle(a, n), b),
            EndChoice::Second => (end_angle(b, n), a),
        })
        .collect();
    fingers.sort_by(|x, y| x.0.total_cmp(&y.0));

    // points[i] starts segment i; finger[i] marks finger segments;
    // outgoing[k] is the outgoing strand of the k-th finger
    let mut points: Vec<PlanarPoint> = Vec::new();
    let mut finger: Vec<bool> = Vec::new();
    let mut outgoing: Vec<usize> = Vec::with_capacity(m);
    let mut push = |points: &mut Vec<PlanarPoint>, (x, y): Pt, is_finger: bool| {
        points.push(PlanarPoint { x, y, depth: 0.0 });
        finger.push(is_finger);
    };
    let mut next = 0;
    for step in 0..CIRCLE_STEPS {
        let theta = 2.0 * PI * step as f64 / CIRCLE_STEPS as f64;
        let theta_next = 2.0 * PI * (step + 1) as f64 / CIRCLE_STEPS as f64;
        if !fingers.iter().any(|&(b, _)| (theta - b).abs() <= gamma) {
            push(&mut points, on_circle(theta), false);
        }
        while next < fingers.len() && fingers[next].0 - gamma < theta_next {
            let (ts, e) = fingers[next];
            next += 1;
            let base_in = on_circle(ts - gamma);
            let (ps, pe) = (on_circle(ts), on_circle(end_angle(e, n)));
            let len = (pe.0 - ps.0).hypot(pe.1 - ps.1);
            let u = ((pe.0 - ps.0) / len, (pe.1 - ps.1) / len);
            let nrm = (-u.1, u.0);
            // Keep the outgoing strand on the same side of the chord as its base.
            let side = if u.0 * (base_in.1 - ps.1) - u.1 * (base_in.0 - ps.0) > 0.0 { 1.0 } else { -1.0 };
            let tip = (pe.0 + TIP_OVERSHOOT * u.0, pe.1 + TIP_OVERSHOOT * u.1);
            outgoing.push(points.len());
            push(&mut points, base_in, true);
            push(&mut points, (tip.0 + side * FINGER_WIDTH * nrm.0, tip.1 + side * FINGER_WIDTH * nrm.1), true);
            push(&mut points, (tip.0 - side * FINGER_WIDTH * nrm.0, tip.1 - side * FINGER_WIDTH * nrm.1), true);
            push(&mut points, on_circle(ts + gamma), false);
        }
    }

    let crossings = planar_crossings(&points)?;
    let mut node_of_finger = Vec::with_capacity(m);
    for &seg in &outgoing {
        let hits: Vec<usize> = crossings
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                let (a, b) = (c.first.floor() as usize, c.second.floor() as usize);
                (a == seg && !finger[b]) || (b == seg && !finger[a])
            })
            .map(|(k, _)| k)
            .collect();
        match hits.as_slice() {
            [k] => node_of_finger.push(*k),
            _ => {
                return Err(VassilievError::Realization(format!(
                    "finger strand crosses the circle {} times",
                    hits.len()
                )))
            }
        }
    }
    let first_over: Vec<bool> = (0..crossings.len())
        .map(|k| node_of_finger.contains(&k) || how.ordinary == OrdinaryCrossings::Descending)
        .collect();
    let (code, labels) = assemble_gauss(&crossings, &first_over);
    let code = GaussCode::knot(code.entries().to_vec())?;
    let nodes = node_of_finger.iter().map(|&k| labels[k]);
    Ok(SingularKnotDiagram::with_nodes(Link::knot(code), nodes)?)
}
