use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{Entry, GaussCode, KnotIoError, Pass, Sign};

/// Planar diagram code: one 4-tuple of edge labels per crossing, listed
/// counterclockwise from the incoming under-strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    pub crossings: Vec<[u32; 4]>,
}

impl PdCode {
    /// Every edge label must occur exactly twice.
    pub fn validate(&self) -> Result<(), KnotIoError> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for x in &self.crossings {
            for e in x {
                *counts.entry(*e).or_default() += 1;
            }
        }
        let bad: Vec<(u32, usize)> = counts.into_iter().filter(|(_, c)| *c != 2).collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(KnotIoError::PdEdges(bad))
        }
    }

    /// Convert a knot PD code whose edges are numbered `1..=2n` along the
    /// orientation into a signed Gauss code.
    pub fn to_gauss(&self) -> Result<GaussCode, KnotIoError> {
        self.validate()?;
        let n_edges = 2 * self.crossings.len() as u32;
        if n_edges == 0 {
            return Ok(GaussCode::default());
        }
        let succ = |e: u32| if e == n_edges { 1 } else { e + 1 };
        let mut head: BTreeMap<u32, (u32, Pass, Sign)> = BTreeMap::new();
        for (k, &[a, b, c, d]) in self.crossings.iter().enumerate() {
            let label = k as u32 + 1;
            if [a, b, c, d].iter().any(|&e| e == 0 || e > n_edges) {
                return Err(KnotIoError::PdNotKnot(format!("crossing {label} uses an edge outside 1..={n_edges}")));
            }
            if c != succ(a) {
                return Err(KnotIoError::PdNotKnot(format!(
                    "crossing {label}: under-strand {a} -> {c} is not consecutive"
                )));
            }
            let (incoming_over, sign) = if b == succ(d) {
                (d, Sign::Positive)
            } else if d == succ(b) {
                (b, Sign::Negative)
            } else {
                return Err(KnotIoError::PdNotKnot(format!(
                    "crossing {label}: over-strand {b}/{d} is not consecutive"
                )));
            };
            head.insert(a, (label, Pass::Under, sign));
            head.insert(incoming_over, (label, Pass::Over, sign));
        }
        let entries = (1..=n_edges)
            .map(|e| {
                head.get(&e)
                    .map(|&(label, pass, sign)| Entry { label, pass, sign })
                    .ok_or_else(|| KnotIoError::PdNotKnot(format!("edge {e} never enters a crossing")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GaussCode::knot(entries)
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, [a, b, c, d]) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "X({a},{b},{c},{d})")?;
        }
        Ok(())
    }
}

impl FromStr for PdCode {
    type Err = KnotIoError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let crossings = s
            .split_whitespace()
            .enumerate()
            .map(|(index, tok)| parse_tuple(tok, index))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PdCode { crossings })
    }
}

fn parse_tuple(tok: &str, index: usize) -> Result<[u32; 4], KnotIoError> {
    let bad = |reason: &str| KnotIoError::Token { index, token: tok.to_string(), reason: reason.to_string() };
    let inner = tok
        .strip_prefix("X(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| tok.strip_prefix("X[").and_then(|r| r.strip_suffix(']')))
        .ok_or_else(|| bad("expected X(a,b,c,d)"))?;
    let parts = inner
        .split(',')
        .map(|p| p.trim().parse::<u32>().ok().filter(|&v| v > 0))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| bad("edge labels must be positive integers"))?;
    <[u32; 4]>::try_from(parts).map_err(|_| bad("expected exactly four edge labels"))
}

/// Parse and validate a PD code.
pub fn parse_pd(text: &str) -> Result<PdCode, KnotIoError> {
    let pd: PdCode = text.parse()?;
    pd.validate()?;
    Ok(pd)
}

pub fn pd_validate(pd: &PdCode) -> Result<(), KnotIoError> {
    pd.validate()
}
