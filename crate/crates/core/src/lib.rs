//! Fractional induced matchings: the LP relaxation `(P)`/`(D)` solved
//! exactly, certified approximation algorithms built on it, exact oracles for
//! small graphs, and generators for the extremal families.

pub mod dual_constructor;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod local_ratio;
pub mod lp;
pub mod oracle;
pub mod rational;
pub mod simplex;
pub mod subcubic;

pub use error::{Error, ParseError, Result};
pub use graph::{EdgeId, Graph, InducedMatching, Subgraph, VertexId};
pub use lp::{EdgeWeights, LpSolution};
pub use rational::Rational;
