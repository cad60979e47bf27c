//! Numerical toolkit for scalar and operator inequalities built on
//! deformed logarithms, relative operator entropies and their refinements.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! at the crate root fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod entropy;
pub mod error;
pub mod function;
pub mod harness;
pub mod linalg;
pub mod num;
pub mod scalar;

pub use catalog::{ChainVerdict, GateRecord, JensenKind, LogMode, DEFAULT_TOL};
pub use entropy::{OperatorChainVerdict, TwoFunctionMode};
pub use error::{Error, Result};
pub use function::{Flags, FunctionRef, FunctionSpec, Interval};
pub use linalg::{EigenDecomposition, LoewnerVerdict, SymmetricMatrix};
pub use num::Real;

pub type Function = FunctionSpec<f64>;
pub type Verdict = ChainVerdict<f64>;
pub type Matrix = SymmetricMatrix<f64>;
pub type Eigen = EigenDecomposition<f64>;
pub type OperatorVerdict = OperatorChainVerdict<f64>;
