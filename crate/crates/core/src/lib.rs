//! Exact-arithmetic machinery for multiple zeta values and their tree
//! generalisations: words with shuffle/quasi-shuffle products and their
//! dendriform/tridendriform splits, decorated Schroeder trees carrying the
//! free (tri)dendriform structures, the structural maps between them, and
//! numerical evaluators for multiple, arborified and Shintani zeta values.
//!
//! Modules:
//!
//! - `algebra`: formal linear combinations with exact rational coefficients
//! - `words`: words, (quasi-)shuffles, binarization, convergence predicates
//! - `trees`: angle/vertex/binary decorated Schroeder trees and structural maps
//! - `products`: comb decompositions, the grafting action and the tree products
//! - `numerics`: truncated-series and quadrature evaluators
//! - `shintani`: Shintani datum extraction and evaluation
//! - `verify`: the identity-verification harness behind `dendrizeta verify`

pub mod algebra;
pub mod error;
pub mod numerics;
pub mod products;
pub mod shintani;
pub mod trees;
pub mod verify;
pub mod words;

pub use algebra::{Augmented, Basis, LinComb, Piece, Rational};
pub use error::{Error, Result};
