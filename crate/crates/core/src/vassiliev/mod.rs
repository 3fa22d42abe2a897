//! Extension of knot invariants to singular knots by the exchange identity
//! `V(K_*) = V(K_+) - V(K_-)`, the general graph extension, symbols on
//! chord diagrams, and the Conway polynomial as a built-in base invariant.

mod realize;

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chords::{ChordDiagram, ChordError};
use crate::knotio::{Entry, GaussCode, KnotIoError, Link, Pass, Sign, SingularKnotDiagram};
use crate::poly::{int, Poly};

pub use realize::{realize, EndChoice, OrdinaryCrossings, Realization};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum VassilievError {
    #[error("skein recursion exceeded depth {0}")]
    DepthExceeded(usize),
    #[error("{nodes} nodes exceed the configured bound of {max}")]
    TooManyNodes { nodes: usize, max: usize },
    #[error("expected a knot, got {0} components")]
    NotAKnot(usize),
    #[error("symbol of a type-{expected} invariant needs an order-{expected} diagram, got order {got}")]
    OrderMismatch { expected: usize, got: usize },
    #[error("realization failed: {0}")]
    Realization(String),
    #[error(transparent)]
    Diagram(#[from] KnotIoError),
    #[error(transparent)]
    Chord(#[from] ChordError),
}

/// A knot or link invariant with values in `Q[z]`.
///
/// Implementations must depend on the diagram only through its isotopy class
/// and in particular must not change under rotation of any component's code.
pub trait KnotInvariant {
    fn name(&self) -> &str;
    fn evaluate(&self, link: &Link) -> Result<Poly, VassilievError>;
}

pub const DEFAULT_MAX_DEPTH: usize = 64;

/// Conway polynomial by skein recursion towards a monotone diagram.
#[derive(Clone, Copy, Debug)]
pub struct Conway {
    pub max_depth: usize,
}

impl Default for Conway {
    fn default() -> Self {
        Conway { max_depth: DEFAULT_MAX_DEPTH }
    }
}

impl KnotInvariant for Conway {
    fn name(&self) -> &str {
        "conway"
    }

    fn evaluate(&self, link: &Link) -> Result<Poly, VassilievError> {
        ConwayRun { max_depth: self.max_depth, memo: HashMap::new() }.eval(link, 0)
    }
}

/// The coefficient of `z^2` in the Conway polynomial, as a constant polynomial.
#[derive(Clone, Copy, Debug, Default)]
pub struct V2 {
    pub conway: Conway,
}

impl KnotInvariant for V2 {
    fn name(&self) -> &str {
        "v2"
    }

    fn evaluate(&self, link: &Link) -> Result<Poly, VassilievError> {
        Ok(Poly::constant(self.conway.evaluate(link)?.coeff(2)))
    }
}

struct ConwayRun {
    max_depth: usize,
    memo: HashMap<Link, Poly>,
}

/// Crossings whose first passage along the traversal (components in order,
/// each from its basepoint) is of the wrong kind for a descending (`Over`)
/// or ascending (`Under`) diagram.
fn wrong_first_passes(link: &Link, want: Pass) -> Vec<(u32, Sign)> {
    let mut seen = std::collections::BTreeSet::new();
    let mut wrong = Vec::new();
    for e in link.components.iter().flat_map(|c| c.entries()) {
        if seen.insert(e.label) && e.pass != want {
            wrong.push((e.label, e.sign));
        }
    }
    wrong
}

/// Remove kinks and clasps (Reidemeister I and II moves visible as
/// adjacent entries) until none remain, then renumber labels by first
/// occurrence so equal diagrams share a memo entry.
fn simplify(link: &Link) -> Link {
    let mut comps: Vec<Vec<Entry>> = link.components.iter().map(|c| c.entries().to_vec()).collect();
    while remove_kink(&mut comps) || remove_clasp(&mut comps) {}
    let mut labels = HashMap::new();
    for e in comps.iter_mut().flatten() {
        let next = labels.len() as u32 + 1;
        e.label = *labels.entry(e.label).or_insert(next);
    }
    Link { components: comps.into_iter().map(GaussCode::from_entries).collect() }
}

fn remove_kink(comps: &mut [Vec<Entry>]) -> bool {
    for c in comps.iter_mut() {
        let n = c.len();
        if let Some(i) = (0..n).find(|&i| n >= 2 && c[i].label == c[(i + 1) % n].label) {
            let j = (i + 1) % n;
            c.remove(i.max(j));
            c.remove(i.min(j));
            return true;
        }
    }
    false
}

fn remove_clasp(comps: &mut [Vec<Entry>]) -> bool {
    // cyclically adjacent pairs (component, position, next position)
    let pairs: Vec<(usize, usize, usize)> = comps
        .iter()
        .enumerate()
        .flat_map(|(k, c)| {
            let n = c.len();
            (0..if n >= 2 { n } else { 0 }).map(move |i| (k, i, (i + 1) % n))
        })
        .collect();
    for (x, &(k, i, j)) in pairs.iter().enumerate() {
        let (a, b) = (comps[k][i], comps[k][j]);
        if a.label == b.label || a.pass != b.pass || a.sign == b.sign {
            continue;
        }
        let partner = pairs[x + 1..].iter().find(|&&(l, p, q)| {
            let (c, d) = (comps[l][p], comps[l][q]);
            let same = (c.label == a.label && d.label == b.label) || (c.label == b.label && d.label == a.label);
            let disjoint = l != k || (p != i && p != j && q != i && q != j);
            same && disjoint
        });
        if let Some(&(l, p, q)) = partner {
            let mut drop = vec![(k, i), (k, j), (l, p), (l, q)];
            drop.sort_by(|u, v| v.cmp(u));
            for (c, pos) in drop {
                comps[c].remove(pos);
            }
            return true;
        }
    }
    false
}

impl ConwayRun {
    fn eval(&mut self, link: &Link, depth: usize) -> Result<Poly, VassilievError> {
        if depth > self.max_depth {
            return Err(VassilievError::DepthExceeded(self.max_depth));
        }
        let simplified = simplify(link);
        let link = &simplified;
        if let Some(p) = self.memo.get(link) {
            return Ok(p.clone());
        }
        if link.component_count() > 1 && link.components.iter().any(|c| c.is_empty()) {
            return Ok(Poly::zero());
        }
        // A diagram that is descending (or ascending) with respect to the
        // traversal order stacks its components and unknots each of them.
        let down = wrong_first_passes(link, Pass::Over);
        let up = wrong_first_passes(link, Pass::Under);
        let wrong = if up.len() < down.len() { up } else { down };
        let value = match wrong.first() {
            None => {
                if link.component_count() == 1 {
                    Poly::one()
                } else {
                    Poly::zero()
                }
            }
            Some(&(label, sign)) => {
                let switched = self.eval(&link.switch(label)?, depth + 1)?;
                let smoothed = self.eval(&link.smooth(label)?, depth + 1)?;
                // C(K+) - C(K-) = z C(K0)
                let z_smoothed = smoothed.shift_up();
                match sign {
                    Sign::Positive => &switched + &z_smoothed,
                    Sign::Negative => &switched - &z_smoothed,
                }
            }
        };
        self.memo.insert(link.clone(), value.clone());
        Ok(value)
    }
}

pub fn conway(link: &Link) -> Result<Poly, VassilievError> {
    Conway::default().evaluate(link)
}

pub fn conway_knot(code: &GaussCode) -> Result<Poly, VassilievError> {
    conway(&Link::knot(code.clone()))
}

/// Coefficient of `z^2` in the Conway polynomial of a knot.
pub fn v2(link: &Link) -> Result<BigRational, VassilievError> {
    if !link.is_knot() {
        return Err(VassilievError::NotAKnot(link.component_count()));
    }
    Ok(conway(link)?.coeff(2))
}

/// Coefficients of `V(K_*) = a V(K_+) + b V(K_-) + c V(K_0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphExtensionConfig {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    /// Largest node count accepted; the expansion has `3^|G|` terms.
    pub max_nodes: usize,
}

pub const DEFAULT_MAX_NODES: usize = 8;

impl GraphExtensionConfig {
    pub fn new(a: BigRational, b: BigRational, c: BigRational) -> Self {
        GraphExtensionConfig { a, b, c, max_nodes: DEFAULT_MAX_NODES }
    }

    /// `(1, -1, 0)`: the exchange identity.
    pub fn vassiliev() -> Self {
        Self::new(int(1), int(-1), int(0))
    }
}

impl Default for GraphExtensionConfig {
    fn default() -> Self {
        Self::vassiliev()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Resolution {
    Positive,
    Negative,
    Smooth,
}

fn resolve(link: &Link, label: u32, how: Resolution) -> Result<Link, KnotIoError> {
    let sign = link.sign_of(label).ok_or(KnotIoError::UnknownLabel(label))?;
    match (how, sign) {
        (Resolution::Smooth, _) => link.smooth(label),
        (Resolution::Positive, Sign::Positive) | (Resolution::Negative, Sign::Negative) => Ok(link.clone()),
        _ => link.switch(label),
    }
}

fn check_bound(nodes: usize, max: usize) -> Result<(), VassilievError> {
    if nodes > max {
        Err(VassilievError::TooManyNodes { nodes, max })
    } else {
        Ok(())
    }
}

/// `V(G) = Σ_S a^{i+(S)} b^{i-(S)} c^{i0(S)} V(S)` over all `3^|G|` ways of
/// replacing each node by a positive crossing, a negative crossing or the
/// oriented smoothing. Terms with a zero coefficient are skipped.
pub fn extend_to_graph(
    v: &dyn KnotInvariant,
    cfg: &GraphExtensionConfig,
    g: &SingularKnotDiagram,
) -> Result<Poly, VassilievError> {
    let nodes: Vec<u32> = g.nodes().iter().copied().collect();
    check_bound(nodes.len(), cfg.max_nodes)?;
    let choices = [(Resolution::Positive, &cfg.a), (Resolution::Negative, &cfg.b), (Resolution::Smooth, &cfg.c)];
    let mut total = Poly::zero();
    let terms = 3usize.pow(nodes.len() as u32);
    for code in 0..terms {
        let mut rest = code;
        let mut coeff = BigRational::one();
        let mut link = g.base().clone();
        for &label in &nodes {
            let (how, k) = choices[rest % 3];
            rest /= 3;
            coeff *= k;
            if coeff.is_zero() {
                break;
            }
            link = resolve(&link, label, how)?;
        }
        if coeff.is_zero() {
            continue;
        }
        total += &v.evaluate(&link)?.scale(&coeff);
    }
    Ok(total)
}

/// Exchange-identity extension, resolving nodes one at a time in label order.
pub fn vassiliev_extend(v: &dyn KnotInvariant, s: &SingularKnotDiagram) -> Result<Poly, VassilievError> {
    let order: Vec<u32> = s.nodes().iter().copied().collect();
    vassiliev_extend_in_order(v, s, &order)
}

/// As [`vassiliev_extend`], resolving the nodes in the given order.
pub fn vassiliev_extend_in_order(
    v: &dyn KnotInvariant,
    s: &SingularKnotDiagram,
    order: &[u32],
) -> Result<Poly, VassilievError> {
    check_bound(s.node_count(), DEFAULT_MAX_NODES)?;
    let mut order = order.to_vec();
    for n in s.nodes() {
        if !order.contains(n) {
            order.push(*n);
        }
    }
    extend_rec(v, s, &order)
}

fn extend_rec(v: &dyn KnotInvariant, s: &SingularKnotDiagram, order: &[u32]) -> Result<Poly, VassilievError> {
    let Some((&label, rest)) = order.split_first() else {
        return v.evaluate(s.base());
    };
    if !s.nodes().contains(&label) {
        return extend_rec(v, s, rest);
    }
    let plus = s.with_base(resolve(s.base(), label, Resolution::Positive)?, label);
    let minus = s.with_base(resolve(s.base(), label, Resolution::Negative)?, label);
    Ok(&extend_rec(v, &plus, rest)? - &extend_rec(v, &minus, rest)?)
}

/// `vassiliev_extend(V, realize(d))` for an order-`k` diagram `d`.
pub fn symbol(v: &dyn KnotInvariant, k: usize, d: &ChordDiagram) -> Result<Poly, VassilievError> {
    symbol_with(v, k, d, Realization::default())
}

pub fn symbol_with(
    v: &dyn KnotInvariant,
    k: usize,
    d: &ChordDiagram,
    how: Realization,
) -> Result<Poly, VassilievError> {
    if d.order() != k {
        return Err(VassilievError::OrderMismatch { expected: k, got: d.order() });
    }
    vassiliev_extend(v, &realize(d, how)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotio::{make_node, parse_gauss};

    const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";

    #[test]
    fn conway_of_small_knots() {
        assert_eq!(conway_knot(&parse_gauss("").unwrap()).unwrap(), Poly::one());
        assert_eq!(conway_knot(&parse_gauss(TREFOIL).unwrap()).unwrap(), Poly::from_ints(&[1, 0, 1]));
        let hopf: Link = "O1+ U2+ | U1+ O2+".parse().unwrap();
        assert_eq!(conway(&hopf).unwrap(), Poly::from_ints(&[0, 1]));
        let unlink: Link = " | ".parse().unwrap();
        assert!(conway(&unlink).unwrap().is_zero());
    }

    #[test]
    fn depth_limit_reported() {
        let t = Link::knot(parse_gauss(TREFOIL).unwrap());
        let shallow = Conway { max_depth: 0 };
        assert_eq!(shallow.evaluate(&t).unwrap_err(), VassilievError::DepthExceeded(0));
    }

    #[test]
    fn one_node_trefoil_gives_z_squared() {
        let s = make_node(&parse_gauss(TREFOIL).unwrap(), 1).unwrap();
        let value = extend_to_graph(&Conway::default(), &GraphExtensionConfig::vassiliev(), &s).unwrap();
        assert_eq!(value, Poly::from_ints(&[0, 0, 1]));
        assert_eq!(vassiliev_extend(&Conway::default(), &s).unwrap(), value);
    }

    #[test]
    fn node_bound_enforced() {
        let s = make_node(&parse_gauss(TREFOIL).unwrap(), 1).unwrap();
        let cfg = GraphExtensionConfig { max_nodes: 0, ..GraphExtensionConfig::vassiliev() };
        assert_eq!(
            extend_to_graph(&Conway::default(), &cfg, &s).unwrap_err(),
            VassilievError::TooManyNodes { nodes: 1, max: 0 }
        );
    }

    #[test]
    fn v2_needs_a_knot() {
        let hopf: Link = "O1+ U2+ | U1+ O2+".parse().unwrap();
        assert_eq!(v2(&hopf).unwrap_err(), VassilievError::NotAKnot(2));
    }
}
