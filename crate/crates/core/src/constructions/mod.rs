//! Builders that emit the concrete OBDD models for the named functions,
//! plus a minimal deterministic OBDD synthesizer for arbitrary truth
//! tables.

mod affine_fns;
mod minimal;
mod ssa;

pub use affine_fns::{build_hwb_afobdd, build_mws_afobdd, build_ws_afobdd};
pub use minimal::{build_minimal_obdd, MinimalObdd};
pub use ssa::{build_ssa_afobdd, build_ssa_lv_pobdd, build_ssa_lv_uobdd, SsaStateSpace};
pub(crate) use ssa::shiftx_int;

use num_traits::One;

use crate::numeric::{Matrix, Rational};

/// Row-built affine matrix: every row except `comp` is given by `row`;
/// the `comp` row is set to (all-ones minus the other rows), which makes
/// every column sum to exactly 1 by construction.
pub(crate) fn affine_with_compensation(
    dim: usize,
    comp: usize,
    row: impl Fn(usize, usize) -> Rational,
) -> Matrix<Rational> {
    Matrix::from_fn(dim, dim, |r, c| {
        if r != comp {
            row(r, c)
        } else {
            let others: Rational = (0..dim).filter(|&k| k != comp).map(|k| row(k, c)).sum();
            Rational::one() - others
        }
    })
}

/// Affine matrix sending any affine state to (1, 0, ..., 0): the first
/// row is all ones, the rest zero.
pub(crate) fn const_front_one(dim: usize) -> Matrix<Rational> {
    Matrix::from_fn(dim, dim, |r, _| {
        if r == 0 {
            Rational::one()
        } else {
            Rational::from_integer(0.into())
        }
    })
}

/// Affine matrix sending any affine state to (0, 1, 0, ..., 0).
pub(crate) fn const_front_zero(dim: usize) -> Matrix<Rational> {
    Matrix::from_fn(dim, dim, |r, _| {
        if r == 1 {
            Rational::one()
        } else {
            Rational::from_integer(0.into())
        }
    })
}

/// Affine matrix realizing (v_z, 1 - v_z, 0, ..., 0): row 0 picks
/// coordinate z, row 1 is the complementary ones-row, the rest vanish.
pub(crate) fn select_coordinate(dim: usize, z: usize) -> Matrix<Rational> {
    assert!(z < dim);
    let zero = || Rational::from_integer(0.into());
    Matrix::from_fn(dim, dim, |r, c| match r {
        0 => {
            if c == z {
                Rational::one()
            } else {
                zero()
            }
        }
        1 => {
            if c == z {
                zero()
            } else {
                Rational::one()
            }
        }
        _ => zero(),
    })
}
