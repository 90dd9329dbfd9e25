//! Exact polyhedral combinatorics for the polytopes of partial permutation
//! matrices, partial alternating sign matrices and partial permutohedra.

pub mod ehrhart;
pub mod error;
pub mod exact;
pub mod gridgraph;
pub mod inequality;
pub mod matrices;
pub mod oracle;
pub mod permutohedron;
pub mod polytopes;
pub mod ratmatrix;
pub mod sampling;
pub mod tubings;

pub use ehrhart::{PolytopeKind, VolumeResult};
pub use error::{Error, Result};
pub use exact::{interpolate, parse_rational, RatPolynomial, Rational};
pub use gridgraph::{GridGraph, SumLabeling};
pub use inequality::{Hyperplane, LinearInequality, Relation};
pub use matrices::{IntMatrix, Word};
pub use oracle::GradedPoset;
pub use polytopes::{ConvexDecomposition, MatrixKind};
pub use ratmatrix::{RatMatrix, RatVector};
pub use tubings::{Chain, Tube, Tubing};
