//! Littelmann's path model with exact rational breakpoints, and the column
//! presentation of the plactic monoid it induces.
//!
//! The crate is organised bottom-up:
//!
//! - [`root_system`]: Cartan data, reflections, the dominance precedence and
//!   the Weyl dimension formula, all in fundamental-weight coordinates.
//! - [`path`]: piecewise-linear paths from the origin, stored in a canonical
//!   form so that paths equal up to reparametrization compare equal.
//! - [`root_ops`]: the raising and lowering root operators on paths and on
//!   factor-tracked monomials.
//! - [`crystal`]: crystal graphs, L-S paths of fundamental shapes, standard
//!   tableaux and plactic equivalence.
//! - [`plactic`]: generators, rewriting rules, the normalizer and the
//!   termination/confluence audits.
//! - [`typea_oracle`]: brute-force Knuth congruence used to cross-check the
//!   path model in type A.
//!
//! Root indices and fundamental-weight indices are 1-based throughout, as in
//! the usual Lie-theoretic notation.

pub mod crystal;
pub mod error;
pub mod path;
pub mod plactic;
pub mod root_ops;
pub mod root_system;
pub mod serial;
pub mod typea_oracle;
pub mod weight;

pub use crystal::CrystalGraph;
pub use error::{Error, Result};
pub use path::{Path, PathLength, ScalarPl};
pub use plactic::{GeneratorTable, RewriteSystem, Rule, Word};
pub use root_ops::{Direction, Factor, Monomial, OperatorLog};
pub use root_system::{RootSystem, RootTables, TypeLabel};
pub use weight::{Q, RatVec, Weight};
