//! Exact affine OBDDs for the hidden weighted bit and the (mixed)
//! weighted sum functions. All three share the same affine register
//! trick: the input prefix is written into the affine state entry by
//! entry, and a final classically-selected transformation collapses the
//! state to (f(x), 1 - f(x), 0, ..., 0).

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{affine_with_compensation, const_front_one, const_front_zero, select_coordinate};
use crate::error::{Error, Result};
use crate::functions::smallest_prime_gt;
use crate::numeric::{Matrix, Rational};
use crate::obdd::{AffineLevel, AffineObdd, DecisionPartition, VariableOrder};

fn zero() -> Rational {
    Rational::zero()
}

fn one() -> Rational {
    Rational::one()
}

/// The update applied when x_i = 1 while scanning the prefix: entry i is
/// set to 1 and entry 0 absorbs the compensation, so the state stays
/// (1 - sum of seen ones, x_1, ..., x_{i-1}, x_i, 0, ..., 0).
fn write_one_matrix(dim: usize, i: usize) -> Matrix<Rational> {
    assert!(i >= 1 && i < dim);
    Matrix::from_fn(dim, dim, |r, c| {
        if r == 0 {
            // new e_0 = -(e_1 + ... + e_{i-1})
            if c >= 1 && c < i {
                -one()
            } else {
                zero()
            }
        } else if r == i {
            // new e_i = e_0 + ... + e_i = 1 when the state is affine on
            // the first i entries
            if c <= i {
                one()
            } else {
                zero()
            }
        } else if r == c {
            one()
        } else {
            zero()
        }
    })
}

/// The x-phase update for the mixed weighted sum: entry i is set to
/// (-1)^bit and entry 0 keeps the state affine.
fn write_sign_matrix(dim: usize, i: usize, bit: bool) -> Matrix<Rational> {
    assert!(i >= 1 && i < dim);
    affine_with_compensation(dim, 0, move |r, c| {
        if r == i {
            // the ones-row times the constant +-1
            if bit {
                -one()
            } else {
                one()
            }
        } else if r == c {
            one()
        } else {
            zero()
        }
    })
}

/// The y-phase update: multiply entry j by -1, compensating through
/// entry 0.
fn flip_sign_matrix(dim: usize, j: usize) -> Matrix<Rational> {
    assert!(j >= 1 && j < dim);
    Matrix::from_fn(dim, dim, |r, c| {
        if r == 0 {
            if c == 0 {
                one()
            } else if c == j {
                Rational::from_integer(2.into())
            } else {
                zero()
            }
        } else if r == j {
            if c == j {
                -one()
            } else {
                zero()
            }
        } else if r == c {
            one()
        } else {
            zero()
        }
    })
}

/// The second finishing transformation: members have x_i != y_i, so the
/// i-th entry holds (-1)^{x_i+y_i} = -1 and the state must become
/// (-entry, 1 + entry, 0, ..., 0) to read (1, 0) for members and
/// (-1, 2) for non-members.
fn negated_select_coordinate(dim: usize, i: usize) -> Matrix<Rational> {
    assert!(i >= 1 && i < dim);
    Matrix::from_fn(dim, dim, |r, c| {
        if r == 0 {
            if c == i {
                -one()
            } else {
                zero()
            }
        } else if r == 1 {
            if c == i {
                Rational::from_integer(2.into())
            } else {
                one()
            }
        } else {
            zero()
        }
    })
}

/// Adds half of entry 1 to entry 0 and halves entry 1, turning the
/// member/non-member pair (1, 0) / (-1, 2) into (1, 0) / (0, 1).
fn half_fold_matrix(dim: usize) -> Matrix<Rational> {
    let half = Rational::new(1.into(), 2.into());
    Matrix::from_fn(dim, dim, |r, c| {
        if r == 0 {
            if c == 0 {
                one()
            } else if c == 1 {
                half.clone()
            } else {
                zero()
            }
        } else if r == 1 {
            if c == 1 {
                half.clone()
            } else {
                zero()
            }
        } else if r == c {
            one()
        } else {
            zero()
        }
    })
}

/// Exact affine OBDD for the hidden weighted bit function, identity
/// order, with n classical states and n+1 affine states.
pub fn build_hwb_afobdd(n: usize) -> Result<AffineObdd> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("hwb needs n >= 2, got {n}")));
    }
    let dim = n + 1;
    let identity = Matrix::<Rational>::identity(dim);

    let mut levels = Vec::with_capacity(n);
    for i in 1..n {
        let write = write_one_matrix(dim, i);
        let delta = (0..n).map(|s| [s, (s + 1) % n]).collect();
        let matrices = (0..n)
            .map(|_| [identity.clone(), write.clone()])
            .collect();
        levels.push(AffineLevel { delta, matrices });
    }

    // The pair (classical state t, last bit) picks the finishing matrix:
    // z = t + x_n, with the two boundary cases collapsing to constants.
    let final_matrix = |t: usize, bit: bool| -> Matrix<Rational> {
        if t == 0 && !bit {
            const_front_zero(dim)
        } else if t == n - 1 {
            const_front_one(dim)
        } else {
            select_coordinate(dim, t + bit as usize)
        }
    };
    levels.push(AffineLevel {
        delta: vec![[0, 0]; n],
        matrices: (0..n)
            .map(|t| [final_matrix(t, false), final_matrix(t, true)])
            .collect(),
    });

    AffineObdd::new(
        n,
        0,
        BTreeSet::from([0]),
        crate::numeric::Vector::basis(dim, 0),
        DecisionPartition::from_accept(dim, BTreeSet::from([0]))?,
        VariableOrder::identity(n),
        levels,
    )
}

/// Exact affine OBDD for the weighted sum function, identity order, with
/// p(n) classical states and the same affine register as the hidden
/// weighted bit model.
pub fn build_ws_afobdd(n: usize) -> Result<AffineObdd> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("ws needs n >= 2, got {n}")));
    }
    let p = smallest_prime_gt(n as u64) as usize;
    let dim = n + 1;
    let identity = Matrix::<Rational>::identity(dim);

    let mut levels = Vec::with_capacity(n);
    for i in 1..n {
        let write = write_one_matrix(dim, i);
        let delta = (0..p).map(|s| [s, (s + i) % p]).collect();
        let matrices = (0..p)
            .map(|_| [identity.clone(), write.clone()])
            .collect();
        levels.push(AffineLevel { delta, matrices });
    }

    let final_matrix = |t: usize, bit: bool| -> Matrix<Rational> {
        let z = (t + n * bit as usize) % p;
        if z == 0 || z > n {
            const_front_zero(dim)
        } else if z == n {
            // the selected bit is x_n itself, known from the transition
            if bit {
                const_front_one(dim)
            } else {
                const_front_zero(dim)
            }
        } else {
            select_coordinate(dim, z)
        }
    };
    levels.push(AffineLevel {
        delta: vec![[0, 0]; p],
        matrices: (0..p)
            .map(|t| [final_matrix(t, false), final_matrix(t, true)])
            .collect(),
    });

    AffineObdd::new(
        p,
        0,
        BTreeSet::from([0]),
        crate::numeric::Vector::basis(dim, 0),
        DecisionPartition::from_accept(dim, BTreeSet::from([0]))?,
        VariableOrder::identity(n),
        levels,
    )
}

/// Exact affine OBDD for the mixed weighted sum function on inputs of
/// length 2n (x then y), with p(n)^2 classical states tracking both
/// modular sums and n+1 affine states.
pub fn build_mws_afobdd(n: usize) -> Result<AffineObdd> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("mws needs n >= 2, got {n}")));
    }
    let p = smallest_prime_gt(n as u64) as usize;
    let classical = p * p;
    let dim = n + 1;
    let identity = Matrix::<Rational>::identity(dim);
    let enc = |a: usize, b: usize| a * p + b;

    let mut levels = Vec::with_capacity(2 * n);
    // x phase: encode (-1)^{x_i} into entry i, track s_n(x) classically
    for i in 1..=n {
        let writes = [
            write_sign_matrix(dim, i, false),
            write_sign_matrix(dim, i, true),
        ];
        let mut delta = Vec::with_capacity(classical);
        for a in 0..p {
            for b in 0..p {
                delta.push([enc(a, b), enc((a + i) % p, b)]);
            }
        }
        levels.push(AffineLevel {
            delta,
            matrices: (0..classical)
                .map(|_| [writes[0].clone(), writes[1].clone()])
                .collect(),
        });
    }
    // y phase before the last bit: multiply entry j by (-1)^{y_j}
    for j in 1..n {
        let flip = flip_sign_matrix(dim, j);
        let mut delta = Vec::with_capacity(classical);
        for a in 0..p {
            for b in 0..p {
                delta.push([enc(a, b), enc(a, (b + j) % p)]);
            }
        }
        levels.push(AffineLevel {
            delta,
            matrices: (0..classical)
                .map(|_| [identity.clone(), flip.clone()])
                .collect(),
        });
    }
    // last level: y_n phase update, then the classically selected
    // coordinate pick and the half fold, compiled into one matrix
    let half_fold = half_fold_matrix(dim);
    let y_phase = [identity.clone(), flip_sign_matrix(dim, n)];
    let mut delta = Vec::with_capacity(classical);
    let mut matrices = Vec::with_capacity(classical);
    for a in 0..p {
        for b in 0..p {
            let next = |bit: usize| enc(a, (b + n * bit) % p);
            delta.push([next(0), next(1)]);
            let compiled = |bit: bool| -> Matrix<Rational> {
                let i = (b + n * bit as usize) % p;
                if i >= 1 && i <= n {
                    half_fold
                        .matmul(&negated_select_coordinate(dim, i))
                        .unwrap()
                        .matmul(&y_phase[bit as usize])
                        .unwrap()
                } else {
                    // final classical state cannot accept; any affine
                    // update will do
                    y_phase[bit as usize].clone()
                }
            };
            matrices.push([compiled(false), compiled(true)]);
        }
    }
    levels.push(AffineLevel { delta, matrices });

    let accept: BTreeSet<usize> = (1..=n).map(|i| enc(i, i)).collect();
    AffineObdd::new(
        classical,
        0,
        accept,
        crate::numeric::Vector::basis(dim, 0),
        DecisionPartition::from_accept(dim, BTreeSet::from([0]))?,
        VariableOrder::identity(2 * n),
        levels,
    )
}
