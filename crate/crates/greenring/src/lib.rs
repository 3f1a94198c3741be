//! Exact representation theory of the Drinfeld double of a Taft algebra.
//!
//! The crate builds every finite-dimensional indecomposable module over the
//! double H_n(1,q) (simples, projectives, string and band modules), tensors
//! them, splits the products into indecomposables by exact linear algebra
//! over Q(zeta_n), and exposes a symbolic rule engine that predicts the same
//! decompositions; the two paths cross-check each other.

pub mod algebra;
pub mod decompose;
pub mod exactfield;
pub mod linalg;
pub mod rat;
pub mod repmod;
pub mod rules;

pub use exactfield::{ExtScalar, FieldCtx, FieldElem, FieldError};
pub use linalg::MatrixF;
pub use rat::Rat;
