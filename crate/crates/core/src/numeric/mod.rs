//! Exact scalar arithmetic, vectors, matrices and the validity
//! predicates underlying all model semantics.

mod linalg;
mod quad;

pub use linalg::{
    validate_affine, validate_deterministic, validate_orthogonal, validate_stochastic,
    weighting_distribution, Matrix, Scalar, Vector,
};
pub use quad::QuadExt;

/// Reduced arbitrary-precision rational, the scalar of probabilistic and
/// affine models.
pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
