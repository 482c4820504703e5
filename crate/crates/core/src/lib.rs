//! Construction and verification toolkit for connected-homogeneous digraphs
//! with more than one end, checked on finite members and truncated balls.

pub mod arcs;
pub mod ball;
pub mod classify;
pub mod cuts;
pub mod digraph;
pub mod families;
pub mod iso;
pub mod reach;
pub mod symmetry;

pub use arcs::{enumerate_k_arcs, line_digraph, ArcKind, ArcSequence};
pub use ball::{BallDigraph, LazyDigraph};
pub use digraph::{analyze_basic, BasicReport, Digraph, DigraphError, Edge, Graph, Vertex};
pub use iso::{find_isomorphism, IsoError, IsoOptions, VertexMapping};
pub use families::{generate, FamilyError, FamilySpec, Generated};
