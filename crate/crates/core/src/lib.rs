//! obddlab-core: exact-arithmetic simulation and verification of
//! deterministic, probabilistic, unitary and affine ordered binary
//! decision diagrams and finite automata.
//!
//! Everything is computed over exact scalars (arbitrary-precision
//! rationals and elements of Q(sqrt 2)), so zero-error and Las Vegas
//! claims can be certified by exhaustive sweep rather than sampled.

pub mod automata;
pub mod bounds;
pub mod constructions;
pub mod error;
pub mod functions;
pub mod numeric;
pub mod obdd;

pub use error::{Error, Result};
pub use numeric::{QuadExt, Rational};

/// Vector of exact rationals.
pub type RationalVector = numeric::Vector<Rational>;
/// Matrix of exact rationals.
pub type RationalMatrix = numeric::Matrix<Rational>;
/// Vector over Q(sqrt 2).
pub type QuadVector = numeric::Vector<QuadExt>;
/// Matrix over Q(sqrt 2).
pub type QuadMatrix = numeric::Matrix<QuadExt>;
