//! Exact integer and rational linear algebra, plus polyhedral primitives.
//!
//! Nothing in here uses floating point. Integers are `BigInt`, rationals are
//! `BigRational`, and every decision (feasibility, rank, lattice points) is exact.

pub mod int;
pub mod poly;
pub mod polytope;
pub mod rat;

pub use int::{cokernel_projection, hermite_normal_form, integer_kernel, smith_normal_form};
pub use int::{Cokernel, Hermite, IntMatrix, SmithDecomposition};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::{feasible, lattice_points, Constraint, HPolyhedron, PolyError, Relation};
pub use polytope::{face_lattice, Face, Polytope};
pub use rat::{rational_rank, RatMatrix};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Shorthand for `num/den`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Converts to `i64`, returning `None` on overflow.
pub fn small_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    use num_traits::ToPrimitive;
    v.iter().map(|x| x.to_i64()).collect()
}

/// Floor of a rational as an `i64`. Panics on overflow, which cannot happen for
/// the desk-scale coordinates handled by this workspace.
pub fn floor_i64(x: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    x.floor().to_integer().to_i64().expect("coordinate overflow")
}

pub fn is_integer(x: &Rat) -> bool {
    x.is_integer()
}
