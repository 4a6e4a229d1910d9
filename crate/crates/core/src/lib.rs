//! Exact combinatorial representation theory of the partition algebra
//! `P_k(n)`: diagram products, branching-graph paths, residues, alcove
//! geometry, blocks, simple-module dimensions and Kronecker coefficients.

pub mod alcove;
pub mod branching;
pub mod diagram;
pub mod dot;
pub mod error;
pub mod kronecker;
pub mod modules;
pub mod partitions;
pub mod poly;
pub mod residues;
pub mod selftest;

pub use branching::{Path, Vertex};
pub use diagram::{AlgebraElement, SetPartitionDiagram};
pub use error::{Error, Result};
pub use partitions::{Node, Partition};
pub use poly::IntPolynomial;
