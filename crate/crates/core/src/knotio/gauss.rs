use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::KnotIoError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pass {
    Over,
    Under,
}

impl Pass {
    pub fn flip(self) -> Self {
        match self {
            Pass::Over => Pass::Under,
            Pass::Under => Pass::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// One passage through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Entry {
    pub label: u32,
    pub pass: Pass,
    pub sign: Sign,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.pass {
            Pass::Over => 'O',
            Pass::Under => 'U',
        };
        let s = match self.sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
        };
        write!(f, "{p}{}{s}", self.label)
    }
}

/// Signed Gauss code of one closed strand, listed from a basepoint in the
/// direction of orientation.
///
/// A `GaussCode` produced by [`parse_gauss`] is a valid knot code. As a
/// component of a [`Link`] it may carry labels whose partner occurrence
/// lives in another component.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussCode {
    entries: Vec<Entry>,
}

impl GaussCode {
    /// Wrap entries without validation (link components, builders).
    pub fn from_entries(entries: Vec<Entry>) -> Self {
        GaussCode { entries }
    }

    /// Entries validated as a knot code.
    pub fn knot(entries: Vec<Entry>) -> Result<Self, KnotIoError> {
        let code = GaussCode { entries };
        validate_entries(code.entries.iter())?;
        Ok(code)
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.labels().len()
    }

    pub fn labels(&self) -> BTreeSet<u32> {
        self.entries.iter().map(|e| e.label).collect()
    }

    pub fn contains(&self, label: u32) -> bool {
        self.entries.iter().any(|e| e.label == label)
    }

    pub fn sign_of(&self, label: u32) -> Option<Sign> {
        self.entries.iter().find(|e| e.label == label).map(|e| e.sign)
    }

    /// Same code read from a different basepoint.
    pub fn rotated(&self, shift: usize) -> Self {
        let mut entries = self.entries.clone();
        if !entries.is_empty() {
            let k = shift % entries.len();
            entries.rotate_left(k);
        }
        GaussCode { entries }
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = KnotIoError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss(s)
    }
}

fn parse_token(token: &str, index: usize) -> Result<Entry, KnotIoError> {
    let bad = |reason: &str| KnotIoError::Token { index, token: token.to_string(), reason: reason.to_string() };
    let mut chars = token.chars();
    let pass = match chars.next() {
        Some('O') => Pass::Over,
        Some('U') => Pass::Under,
        _ => return Err(bad("expected leading O or U")),
    };
    let rest: String = chars.collect();
    let sign_char = rest.chars().last().ok_or_else(|| bad("missing label"))?;
    let sign = match sign_char {
        '+' => Sign::Positive,
        '-' | '\u{2212}' => Sign::Negative,
        _ => return Err(bad("expected trailing + or -")),
    };
    let digits = &rest[..rest.len() - sign_char.len_utf8()];
    let label: u32 = digits.parse().map_err(|_| bad("label is not a positive integer"))?;
    if label == 0 {
        return Err(bad("label is not a positive integer"));
    }
    Ok(Entry { label, pass, sign })
}

/// Checks the pairing invariants over a sequence of entries, reporting token
/// indices in sequence order.
pub(crate) fn validate_entries<'a>(entries: impl Iterator<Item = &'a Entry>) -> Result<(), KnotIoError> {
    let mut seen: BTreeMap<u32, (usize, Entry, usize)> = BTreeMap::new();
    for (index, e) in entries.enumerate() {
        match seen.get_mut(&e.label) {
            None => {
                seen.insert(e.label, (index, *e, 1));
            }
            Some((_, first, count)) => {
                *count += 1;
                if *count > 2 {
                    return Err(KnotIoError::ExtraOccurrence { label: e.label, index });
                }
                if first.pass == e.pass {
                    return Err(KnotIoError::DuplicatePass { label: e.label, index, pass: e.pass });
                }
                if first.sign != e.sign {
                    return Err(KnotIoError::SignMismatch { label: e.label, index });
                }
            }
        }
    }
    if let Some((label, (index, _, _))) = seen.iter().find(|(_, (_, _, c))| *c == 1) {
        return Err(KnotIoError::MissingPartner { label: *label, index: *index });
    }
    Ok(())
}

/// Parse a whitespace-separated knot Gauss code such as `O1+ U2+ O3+ U1+ O2+ U3+`.
pub fn parse_gauss(text: &str) -> Result<GaussCode, KnotIoError> {
    let entries =
        text.split_whitespace().enumerate().map(|(i, tok)| parse_token(tok, i)).collect::<Result<Vec<_>, _>>()?;
    GaussCode::knot(entries)
}

/// Oriented link diagram as Gauss codes sharing one label namespace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Link {
    pub components: Vec<GaussCode>,
}

impl Link {
    pub fn new(components: Vec<GaussCode>) -> Result<Self, KnotIoError> {
        let link = Link { components };
        link.validate()?;
        Ok(link)
    }

    pub fn knot(code: GaussCode) -> Self {
        Link { components: vec![code] }
    }

    pub fn validate(&self) -> Result<(), KnotIoError> {
        validate_entries(self.components.iter().flat_map(|c| c.entries.iter()))
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    pub fn labels(&self) -> BTreeSet<u32> {
        self.components.iter().flat_map(|c| c.labels()).collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.labels().len()
    }

    /// `(component, position)` of each occurrence of `label` in traversal order.
    pub fn occurrences(&self, label: u32) -> Vec<(usize, usize)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| {
                c.entries.iter().enumerate().filter(move |(_, e)| e.label == label).map(move |(pi, _)| (ci, pi))
            })
            .collect()
    }

    pub fn sign_of(&self, label: u32) -> Option<Sign> {
        self.components.iter().find_map(|c| c.sign_of(label))
    }

    fn require(&self, label: u32) -> Result<[(usize, usize); 2], KnotIoError> {
        match self.occurrences(label).as_slice() {
            [a, b] => Ok([*a, *b]),
            _ => Err(KnotIoError::UnknownLabel(label)),
        }
    }

    /// Exchange over and under at `label`; the crossing sign flips with it.
    pub fn switch(&self, label: u32) -> Result<Link, KnotIoError> {
        self.require(label)?;
        let components =
            self.components
                .iter()
                .map(|c| GaussCode {
                    entries: c
                        .entries
                        .iter()
                        .map(|e| {
                            if e.label == label {
                                Entry { label, pass: e.pass.flip(), sign: e.sign.flip() }
                            } else {
                                *e
                            }
                        })
                        .collect(),
                })
                .collect();
        Ok(Link { components })
    }

    /// Oriented smoothing at `label`. A self-crossing splits its component in
    /// two; a crossing between two components merges them.
    pub fn smooth(&self, label: u32) -> Result<Link, KnotIoError> {
        let [(ci, pi), (cj, pj)] = self.require(label)?;
        let mut components = Vec::with_capacity(self.components.len() + 1);
        if ci == cj {
            let e = &self.components[ci].entries;
            let inner: Vec<Entry> = e[pi + 1..pj].to_vec();
            let outer: Vec<Entry> = e[pj + 1..].iter().chain(e[..pi].iter()).copied().collect();
            for (k, c) in self.components.iter().enumerate() {
                if k == ci {
                    components.push(GaussCode { entries: outer.clone() });
                    components.push(GaussCode { entries: inner.clone() });
                } else {
                    components.push(c.clone());
                }
            }
        } else {
            // After arriving at the crossing along one component, leave along the other.
            let first = &self.components[ci].entries;
            let second = &self.components[cj].entries;
            let mut merged: Vec<Entry> = Vec::with_capacity(first.len() + second.len() - 2);
            merged.extend(first[pi + 1..].iter().chain(first[..pi].iter()));
            merged.extend(second[pj + 1..].iter().chain(second[..pj].iter()));
            for (k, c) in self.components.iter().enumerate() {
                if k == ci {
                    components.push(GaussCode { entries: merged.clone() });
                } else if k != cj {
                    components.push(c.clone());
                }
            }
        }
        Ok(Link { components })
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Link {
    type Err = KnotIoError;
    /// Components separated by `|`; an empty component is a crossingless circle.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut offset = 0;
        let mut components = Vec::new();
        for part in s.split('|') {
            let entries = part
                .split_whitespace()
                .enumerate()
                .map(|(i, tok)| parse_token(tok, offset + i))
                .collect::<Result<Vec<_>, _>>()?;
            offset += entries.len();
            components.push(GaussCode { entries });
        }
        Link::new(components)
    }
}

pub fn switch_crossing(d: &GaussCode, label: u32) -> Result<GaussCode, KnotIoError> {
    let mut link = Link::knot(d.clone()).switch(label)?;
    Ok(link.components.remove(0))
}

/// Oriented smoothing of a knot crossing; always yields two components.
pub fn smooth_crossing(d: &GaussCode, label: u32) -> Result<Vec<GaussCode>, KnotIoError> {
    Ok(Link::knot(d.clone()).smooth(label)?.components)
}
