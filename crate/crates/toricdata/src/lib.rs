//! Toric input data: fans, the Picard sequence, divisor classes, Cox
//! monomials and finite toric morphisms, with validation of the standing
//! hypotheses (smooth, complete, strongly convex effective cone).

pub mod fan;
pub mod input;
pub mod morphism;
pub mod ses;

pub use fan::Fan;
pub use input::{parse_job, InputDoc, Job, MorphismSection, VarietySection};
pub use morphism::{check_finite_morphism, dual_map, Diagnostics, ToricMorphism};
pub use ses::{build_ses, class_leq, monomials_of_class, CoxMonomial, LatticeSES, PicClass};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ToricError {
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fan is not smooth: {0}")]
    NotSmooth(String),
    #[error("fan is not complete: {0}")]
    NotComplete(String),
    #[error("effective cone is not strongly convex: the ray functionals admit a nonzero m with <m, rho> >= 0 for every ray")]
    EffectiveConeNotStronglyConvex,
    #[error("Picard group has torsion (invariant factors {0}); only torsion-free inputs are supported")]
    TorsionInPicard(String),
    #[error("ray matrix does not have full column rank")]
    RayMapNotInjective,
    #[error("morphism matrix is not injective (rank {rank} < source dimension {source_dim})")]
    NotInjective { rank: usize, source_dim: usize },
    #[error("morphism is not finite: {0}")]
    NotFinite(String),
    #[error("line {line}: {message}")]
    Input { line: usize, message: String },
}
