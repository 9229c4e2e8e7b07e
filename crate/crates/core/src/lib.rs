//! Shortest paths on skeletons of polymatroids.
//!
//! The library covers flip distances between acyclic orientations of
//! hypergraphs (exact search and a codegree-bounded approximation), exact
//! shortest paths on box polytopes cut by a hyperplane, the matroid and
//! graphical-zonotope cases, submodular oracles with brute-force checks,
//! and generators for the vertex-cover hardness instances.

pub mod box_polytope;
pub mod error;
pub mod flip;
pub mod graph;
pub mod hardness;
pub mod hypergraph;
pub mod polymatroid;
pub mod special_cases;

pub use error::{Error, Result};
