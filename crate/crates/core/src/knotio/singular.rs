use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{GaussCode, KnotIoError, Link};

/// A link diagram in which some crossings are rigid 4-valent nodes.
///
/// Every node still carries the pass and sign of the crossing it replaced, so
/// the diagram records one specific resolution alongside the node set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularKnotDiagram {
    base: Link,
    nodes: BTreeSet<u32>,
}

impl SingularKnotDiagram {
    pub fn new(base: Link) -> Self {
        SingularKnotDiagram { base, nodes: BTreeSet::new() }
    }

    pub fn with_nodes(base: Link, nodes: impl IntoIterator<Item = u32>) -> Result<Self, KnotIoError> {
        nodes.into_iter().try_fold(Self::new(base), |d, label| d.make_node(label))
    }

    pub fn base(&self) -> &Link {
        &self.base
    }

    pub fn nodes(&self) -> &BTreeSet<u32> {
        &self.nodes
    }

    /// `|G|`, the number of nodes.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn make_node(mut self, label: u32) -> Result<Self, KnotIoError> {
        if !self.base.labels().contains(&label) {
            return Err(KnotIoError::UnknownLabel(label));
        }
        if !self.nodes.insert(label) {
            return Err(KnotIoError::AlreadyNode(label));
        }
        Ok(self)
    }

    /// Replace the resolved link while keeping the node set; used when a
    /// node is resolved into a crossing or a smoothing.
    pub(crate) fn with_base(&self, base: Link, drop_node: u32) -> Self {
        let mut nodes = self.nodes.clone();
        nodes.remove(&drop_node);
        SingularKnotDiagram { base, nodes }
    }
}

impl fmt::Display for SingularKnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nodes:", self.base)?;
        for n in &self.nodes {
            write!(f, " {n}")?;
        }
        Ok(())
    }
}

/// Inverse of `Display`: `"<link> nodes: 1 3"`; a missing `nodes:` part
/// means no nodes.
impl FromStr for SingularKnotDiagram {
    type Err = KnotIoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (link, nodes) = s.split_once("nodes:").unwrap_or((s, ""));
        let base: Link = link.parse()?;
        let labels = nodes
            .split_whitespace()
            .enumerate()
            .map(|(index, tok)| {
                tok.parse::<u32>().map_err(|_| KnotIoError::Token {
                    index,
                    token: tok.to_string(),
                    reason: "node labels are positive integers".into(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::with_nodes(base, labels)
    }
}

pub fn make_node(d: &GaussCode, label: u32) -> Result<SingularKnotDiagram, KnotIoError> {
    SingularKnotDiagram::new(Link::knot(d.clone())).make_node(label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotio::parse_gauss;

    #[test]
    fn text_round_trip() {
        let s: SingularKnotDiagram = "O1+ U2+ O3+ U1+ O2+ U3+ nodes: 1 3".parse().unwrap();
        assert_eq!(s.node_count(), 2);
        assert_eq!(s.to_string().parse::<SingularKnotDiagram>().unwrap(), s);
        assert!("O1+ U1+ nodes: 2".parse::<SingularKnotDiagram>().is_err());
    }

    #[test]
    fn nodes_accumulate() {
        let t = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let s = make_node(&t, 1).unwrap();
        assert_eq!(s.node_count(), 1);
        let all = s.make_node(2).unwrap().make_node(3).unwrap();
        assert_eq!(all.node_count(), 3);
        assert_eq!(all.clone().make_node(2).unwrap_err(), KnotIoError::AlreadyNode(2));
        assert_eq!(all.make_node(7).unwrap_err(), KnotIoError::UnknownLabel(7));
    }
}
