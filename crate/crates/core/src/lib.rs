//! Chord diagrams, Lie algebra weight systems, Vassiliev invariants via the
//! exchange identity, a low-order numerical Kontsevich integral, and the
//! equivalence-class calculus of Gaussian integrals.

pub mod chords;
pub mod gaussmoments;
pub mod knotio;
pub mod kontsevich;
pub mod lieweights;
pub mod poly;
pub mod scalar;
pub mod vassiliev;

pub use chords::{ChordDiagram, DiagramCombination};
pub use gaussmoments::{GaussianExpression, SourceSeries};
pub use knotio::{GaussCode, KnotIoError, Link, MorseEmbedding, PdCode, SingularKnotDiagram};
pub use kontsevich::{QuadratureConfig, Scheme};
pub use lieweights::{LieAlgebraRep, Matrix, StructureConstants};
pub use poly::Poly;
pub use scalar::{GaussianRational, Scalar};
