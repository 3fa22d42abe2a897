//! Textual knot representations and the three local moves on diagrams.

mod gauss;
mod morse;
mod pd;
mod planar;
mod singular;

use thiserror::Error;

pub use gauss::{parse_gauss, smooth_crossing, switch_crossing, Entry, GaussCode, Link, Pass, Sign};
pub use morse::{
    four_plat, morse_validate, CriticalKind, CriticalPoint, CriticalReport, MorseEmbedding, MorseVertex, PlatGenerator,
};
pub use pd::{parse_pd, pd_validate, PdCode};
pub use planar::{assemble_gauss, planar_crossings, planar_gauss_code, PlanarCrossing, PlanarPoint};
pub use singular::{make_node, SingularKnotDiagram};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum KnotIoError {
    #[error("token {index} `{token}`: {reason}")]
    Token { index: usize, token: String, reason: String },
    #[error("token {index}: label {label} occurs more than twice")]
    ExtraOccurrence { label: u32, index: usize },
    #[error("token {index}: label {label} has a second {pass:?} pass")]
    DuplicatePass { label: u32, index: usize, pass: Pass },
    #[error("token {index}: sign mismatch on label {label}")]
    SignMismatch { label: u32, index: usize },
    #[error("token {index}: label {label} has no partner occurrence")]
    MissingPartner { label: u32, index: usize },
    #[error("unknown crossing label {0}")]
    UnknownLabel(u32),
    #[error("crossing {0} is already a node")]
    AlreadyNode(u32),
    #[error("{}", describe_edges(.0))]
    PdEdges(Vec<(u32, usize)>),
    #[error("PD code is not a knot diagram with consecutive edges: {0}")]
    PdNotKnot(String),
    #[error("embedding needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("segment from vertex {index} has zero length in t")]
    ZeroLengthSegment { index: usize },
    #[error("critical vertices {first} and {second} share height {t}")]
    DuplicateCriticalHeight { first: usize, second: usize, t: f64 },
    #[error("{0}")]
    Json(String),
    #[error("plat word position {index}: generator must be 1, 2 or 3")]
    PlatGenerator { index: usize },
    #[error("plat closure of this word is a link with more than one component")]
    PlatLink,
    #[error("projection is not generic: {0}")]
    Degenerate(String),
}

fn describe_edges(bad: &[(u32, usize)]) -> String {
    let parts: Vec<String> =
        bad.iter().map(|(e, c)| format!("edge {e} appears {c} time{}", if *c == 1 { "" } else { "s" })).collect();
    format!("every edge must appear exactly twice: {}", parts.join(", "))
}
