//! Exact-arithmetic toolkit for linear information inequalities.
//!
//! Expressions are sparse rational combinations `Σ c_J H(X_J)` over a fixed
//! ground set of variable labels. The crate provides the formal dual operator
//! and balancing, instance/conditional-version substitutions, an exact Shannon
//! prover over the elemental inequalities, entropies of finite joint
//! distributions, and a catalog of named inequalities together with a harness
//! that checks the dual of the MMRV inequality fails on an explicit
//! five-variable distribution.

pub mod catalog;
pub mod cli;
pub mod entropy;
mod error;
pub mod expr;
pub mod ground;
pub mod lp;
pub mod parse;
pub mod point;
pub mod print;
pub mod rational;
pub mod search;
pub mod selfdual;
pub mod shannon;
pub mod substitution;
pub mod theorem;

pub use error::{Error, Result};
pub use expr::{InfExpr, InfoTerm};
pub use ground::{GroundSet, Subset};
pub use point::EntropyPoint;
pub use rational::Rat;
pub use substitution::Substitution;
