//! Chord diagram combinatorics: canonical forms, enumeration, extraction
//! from singular knots and the four-term and isolated-chord relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::knotio::SingularKnotDiagram;
use crate::poly::fmt_rational;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ChordError {
    #[error("malformed matching: {0}")]
    Malformed(String),
    #[error("cannot parse chord diagram `{0}`")]
    Parse(String),
    #[error("chord diagrams are defined for knots, got {0} components")]
    NotAKnot(usize),
}

/// Which symmetries `canonical_form` quotients by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Symmetry {
    /// Rotations of the circle only; the circle keeps its orientation.
    #[default]
    Rotation,
    /// Rotations and reflections.
    Dihedral,
}

/// Perfect matching on the points `0..2m` of an oriented circle, stored as
/// a sorted list of pairs `(a, b)` with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    pairs: Vec<(usize, usize)>,
}

impl ChordDiagram {
    pub fn empty() -> Self {
        ChordDiagram { pairs: Vec::new() }
    }

    /// Validated diagram from arbitrary pairs; the result is not canonicalized.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, ChordError> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        let n = 2 * pairs.len();
        let mut seen = vec![false; n];
        for &(a, b) in &pairs {
            if a == b {
                return Err(ChordError::Malformed(format!("chord ({a},{b}) joins a point to itself")));
            }
            for p in [a, b] {
                if p >= n {
                    return Err(ChordError::Malformed(format!("position {p} outside 0..{n}")));
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(ChordError::Malformed(format!("position {p} used twice")));
                }
            }
        }
        Ok(ChordDiagram { pairs })
    }

    /// Diagram read off a cyclic word in which every letter occurs twice.
    pub fn from_labels<T: Ord>(word: &[T]) -> Result<Self, ChordError> {
        let mut first: BTreeMap<&T, usize> = BTreeMap::new();
        let mut pairs = Vec::with_capacity(word.len() / 2);
        for (i, letter) in word.iter().enumerate() {
            match first.remove(letter) {
                Some(j) => pairs.push((j, i)),
                None => {
                    first.insert(letter, i);
                }
            }
        }
        if !first.is_empty() {
            return Err(ChordError::Malformed(format!("{} letters occur once", first.len())));
        }
        Self::from_pairs(pairs)
    }

    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `word[p]` is the index of the chord ending at position `p`.
    pub fn label_sequence(&self) -> Vec<usize> {
        let mut word = vec![0; 2 * self.order()];
        for (c, &(a, b)) in self.pairs.iter().enumerate() {
            word[a] = c;
            word[b] = c;
        }
        word
    }

    fn mapped(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut pairs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (f(a), f(b));
                (x.min(y), x.max(y))
            })
            .collect();
        pairs.sort_unstable();
        ChordDiagram { pairs }
    }

    /// Shift every position by `r` around the circle.
    pub fn rotated(&self, r: usize) -> Self {
        let n = 2 * self.order();
        if n == 0 {
            return self.clone();
        }
        self.mapped(|p| (p + r) % n)
    }

    /// Reverse the orientation of the circle.
    pub fn reflected(&self) -> Self {
        let n = 2 * self.order();
        self.mapped(|p| n - 1 - p)
    }

    pub fn chords_cross(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.pairs[i];
        let (c, d) = self.pairs[j];
        let inside = |p: usize| a < p && p < b;
        inside(c) != inside(d)
    }

    /// Some chord is crossed by no other chord.
    pub fn has_isolated_chord(&self) -> bool {
        (0..self.order()).any(|i| (0..self.order()).all(|j| i == j || !self.chords_cross(i, j)))
    }

    pub fn canonical(&self) -> Self {
        canonical_form(self)
    }

    pub fn is_canonical(&self) -> bool {
        *self == canonical_form(self)
    }

    /// The order-2 diagram whose chords cross.
    pub fn crossed2() -> Self {
        ChordDiagram { pairs: vec![(0, 2), (1, 3)] }
    }

    /// The order-2 diagram whose chords do not cross.
    pub fn nested2() -> Self {
        ChordDiagram { pairs: vec![(0, 1), (2, 3)] }
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.order())?;
        if !self.pairs.is_empty() {
            f.write_str(" ")?;
        }
        for (a, b) in &self.pairs {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

impl FromStr for ChordDiagram {
    type Err = ChordError;
    /// `m: (a,b)(c,d)...`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ChordError::Parse(s.to_string());
        let (order, body) = s.split_once(':').ok_or_else(bad)?;
        let order: usize = order.trim().parse().map_err(|_| bad())?;
        let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pairs = Vec::new();
        let mut rest = body.as_str();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let (a, b) = inner[..close].split_once(',').ok_or_else(bad)?;
            pairs.push((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?));
            rest = &inner[close + 1..];
        }
        if pairs.len() != order {
            return Err(ChordError::Malformed(format!("header says {order} chords, found {}", pairs.len())));
        }
        ChordDiagram::from_pairs(pairs)
    }
}

/// Rotation-minimal representative.
pub fn canonical_form(d: &ChordDiagram) -> ChordDiagram {
    canonical_form_with(d, Symmetry::Rotation)
}

pub fn canonical_form_with(d: &ChordDiagram, symmetry: Symmetry) -> ChordDiagram {
    let n = 2 * d.order();
    let mut best = d.clone();
    let mut candidates = vec![d.clone()];
    if symmetry == Symmetry::Dihedral {
        candidates.push(d.reflected());
    }
    for c in &candidates {
        for r in 0..n.max(1) {
            let rot = c.rotated(r);
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

fn matchings(free: &mut Vec<usize>, current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    if free.is_empty() {
        out.push(current.clone());
        return;
    }
    let a = free.remove(0);
    for k in 0..free.len() {
        let b = free.remove(k);
        current.push((a, b));
        matchings(free, current, out);
        current.pop();
        free.insert(k, b);
    }
    free.insert(0, a);
}

/// Every perfect matching on `2m` labelled points, `(2m-1)!!` of them.
pub fn all_matchings(m: usize) -> Vec<ChordDiagram> {
    let mut out = Vec::new();
    matchings(&mut (0..2 * m).collect(), &mut Vec::new(), &mut out);
    out.into_iter().map(|pairs| ChordDiagram::from_pairs(pairs).expect("generated matchings are perfect")).collect()
}

/// All order-`m` diagrams modulo rotation, as canonical forms.
pub fn enumerate_diagrams(m: usize) -> BTreeSet<ChordDiagram> {
    all_matchings(m).iter().map(canonical_form).collect()
}

/// Chord diagram of the nodes of a singular knot, read along the Gauss
/// sequence; ordinary crossings are ignored.
pub fn chord_diagram_of(s: &SingularKnotDiagram) -> Result<ChordDiagram, ChordError> {
    let base = s.base();
    if !base.is_knot() {
        return Err(ChordError::NotAKnot(base.component_count()));
    }
    let word: Vec<u32> =
        base.components[0].entries().iter().map(|e| e.label).filter(|l| s.nodes().contains(l)).collect();
    Ok(canonical_form(&ChordDiagram::from_labels(&word)?))
}

/// Formal rational combination of canonical diagrams.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramCombination {
    terms: BTreeMap<ChordDiagram, BigRational>,
}

impl DiagramCombination {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add `coeff * d`, canonicalizing `d` and dropping cancelled terms.
    pub fn add(&mut self, d: &ChordDiagram, coeff: BigRational) {
        let key = canonical_form(d);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> &BTreeMap<ChordDiagram, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Scale so that the least diagram has a positive coefficient.
    fn normalized(mut self) -> Self {
        if self.terms.values().next().is_some_and(|c| c.is_negative()) {
            for c in self.terms.values_mut() {
                *c = -c.clone();
            }
        }
        self
    }

    /// Apply a linear functional given on single diagrams.
    pub fn evaluate<T, F>(&self, mut f: F) -> T
    where
        T: Zero + std::ops::Add<Output = T>,
        F: FnMut(&ChordDiagram, &BigRational) -> T,
    {
        self.terms.iter().fold(T::zero(), |acc, (d, c)| acc + f(d, c))
    }
}

impl fmt::Display for DiagramCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                f.write_str(" ")?;
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{sign}[{d}]")?;
            } else {
                write!(f, "{sign}{}[{d}]", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

/// Four-term relations of order `m`.
///
/// Start from an order-`(m-1)` diagram and add a chord with one end fixed in
/// some gap of the circle. Its other end is placed immediately before, then
/// immediately after, each end `x` and `y` of some old chord. The combination
/// `before(x) - after(x) + before(y) - after(y)` is the relation; it is what
/// the commutator identity `T_c T_b - T_b T_c = i f^{cbe} T_e` makes vanish
/// under a Lie algebra weight system. Zero combinations are dropped and the
/// rest are deduplicated up to overall sign.
pub fn four_term_relations(m: usize) -> Vec<DiagramCombination> {
    if m < 2 {
        return Vec::new();
    }
    let mut found: BTreeSet<DiagramCombination> = BTreeSet::new();
    let fresh = m - 1;
    for base in enumerate_diagrams(m - 1) {
        let word = base.label_sequence();
        for gap in 0..word.len() {
            let mut with_fixed = word.clone();
            with_fixed.insert(gap, fresh);
            for chord in 0..m - 1 {
                let ends: Vec<usize> = (0..with_fixed.len()).filter(|&p| with_fixed[p] == chord).collect();
                let mut combo = DiagramCombination::new();
                for &end in &ends {
                    for (offset, sign) in [(0, 1), (1, -1)] {
                        let mut w = with_fixed.clone();
                        w.insert(end + offset, fresh);
                        let d = ChordDiagram::from_labels(&w).expect("each chord occurs twice");
                        combo.add(&d, BigRational::from_integer(sign.into()));
                    }
                }
                if !combo.is_zero() {
                    found.insert(combo.normalized());
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Order-`m` diagrams with at least one chord crossed by no other chord.
pub fn isolated_chord_diagrams(m: usize) -> BTreeSet<ChordDiagram> {
    enumerate_diagrams(m).into_iter().filter(|d| d.has_isolated_chord()).collect()
}
