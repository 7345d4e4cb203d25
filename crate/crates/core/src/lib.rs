//! Structural analysis of finite simple graphs for quantum symmetry.
//!
//! The library decides, where it can, whether the quantum automorphism group
//! of a graph is commutative in Bichon's and in Banica's sense. Every
//! determined verdict carries a certificate that can be re-checked without
//! the rule engine. It also builds graphs whose quantum automorphism groups
//! realise free products, tensor products and free wreath products.

pub mod automorphism;
pub mod census;
pub mod classifier;
pub mod constructors;
pub mod error;
pub mod graph;
pub mod iso;
pub mod perm;
pub mod products;
pub mod reduction;

pub use error::{Error, Result};
pub use graph::Graph;
pub use perm::Permutation;
