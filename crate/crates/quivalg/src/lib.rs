//! Path algebras of strata: the algebra of the exceptional collection of line
//! bundles on the torus side, the exit-path algebra of a subtorus, right
//! modules, minimal projective resolutions, and the translation of
//! projective complexes into complexes of line bundles.
//!
//! Conventions. Paths compose left to right: `p · q` is "`p`, then `q`".
//! Right modules are therefore covariant representations, and
//! `P_v = e_v A` is spanned by the paths leaving `v`. A subtorus is resolved
//! over its entrance algebra, the opposite of its exit algebra, so the tops
//! of the constant representation sit at the strata with no exit paths.

pub mod algebra;
pub mod bundles;
pub mod module;
mod presentation;
pub mod resolution;

pub use algebra::{bondal_algebra, exit_algebra, PathAlgebra, PathRef, Presentation, Relation, Vertex};
pub use bundles::{
    line_bundle_complex, translate_complex, translate_exit_to_bondal, variable_grading, LineBundleComplex, Poly,
};
pub use module::{constant_representation, projective_module, simple_module, RightModule};
pub use resolution::{minimal_projective_resolution, projective_cover, Combination, ProjComplex};

use strata::StrataError;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum QuivError {
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error("resolution exceeds the length bound {bound}")]
    LengthBoundExceeded { bound: usize },
    #[error("path tag {0:?} has a negative coordinate")]
    TagNotEffective(Vec<i64>),
    #[error("no Bondal vertex has class {0:?}")]
    MissingClass(Vec<i64>),
    #[error("no Bondal path carries the monomial {tag:?}")]
    MissingPath { tag: Vec<i64> },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
}
