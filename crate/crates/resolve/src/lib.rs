//! Resolutions of pushforwards of structure sheaves along finite toric
//! morphisms by sums of line bundles: topological Betti numbers from the
//! strata, the minimal resolution from the exit-path algebra of the
//! subtorus, the cellular resolution from its CW structure, module-level
//! resolutions over the Bondal algebra, and independent verification.

pub mod betti;
pub mod compare;
pub mod format;
pub mod pipelines;
pub mod verify;

pub use betti::{bundle_name, BettiTable};
pub use compare::equivalent_up_to_signed_permutation;
pub use format::{parse_machine, to_human, to_machine};
pub use pipelines::{
    betti_of, betti_topological, cellular_resolution, minimal_resolution, prepare, resolve_module, uniqueness_flag, Prepared,
    Uniqueness,
};
pub use quivalg::{LineBundleComplex, Poly};
pub use verify::{generic_fiber_degree, verify_complex, EulerSample, Probe, VerifyContext, VerifyReport};

use quivalg::QuivError;
use strata::StrataError;
use thiserror::Error;
use toricdata::ToricError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ResolveError {
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error(transparent)]
    Quiv(#[from] QuivError),
    #[error("{0}")]
    NotFinite(String),
    #[error("topological Betti numbers {topological} differ from the algebraic ones {algebraic}")]
    InternalBettiMismatch { topological: BettiTable, algebraic: BettiTable },
    #[error("malformed complex file, line {line}: {message}")]
    Format { line: usize, message: String },
}
