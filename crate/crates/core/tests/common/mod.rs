//! Random model generators shared by the integration suites. All
//! randomness is seeded, so failures reproduce.
#![allow(dead_code)] // each test binary uses a different subset

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use obddlab_core::numeric::{rational_int, Matrix, QuadExt, Rational, Vector};
use obddlab_core::obdd::{
    AffineLevel, AffineObdd, DecisionPartition, DeterministicObdd, Level, ProbabilisticObdd,
    UnitaryObdd, VariableOrder,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_order(rng: &mut ChaCha8Rng, n: usize) -> VariableOrder {
    let mut pi: Vec<usize> = (1..=n).collect();
    pi.shuffle(rng);
    VariableOrder::new(pi).unwrap()
}

pub fn random_partition(rng: &mut ChaCha8Rng, m: usize, allow_neutral: bool) -> DecisionPartition {
    let mut accept = BTreeSet::new();
    let mut neutral = BTreeSet::new();
    for i in 0..m {
        match rng.gen_range(0..3) {
            0 => {
                accept.insert(i);
            }
            1 if allow_neutral => {
                neutral.insert(i);
            }
            _ => {}
        }
    }
    DecisionPartition::with_neutral(m, accept, neutral).unwrap()
}

pub fn random_distribution(rng: &mut ChaCha8Rng, m: usize) -> Vector<Rational> {
    let weights: Vec<i64> = (0..m).map(|_| rng.gen_range(0..4)).collect();
    let total: i64 = weights.iter().sum();
    if total == 0 {
        return Vector::basis(m, rng.gen_range(0..m));
    }
    Vector::new(
        weights
            .into_iter()
            .map(|w| Rational::new(w.into(), total.into()))
            .collect(),
    )
}

pub fn random_stochastic_matrix(rng: &mut ChaCha8Rng, m: usize) -> Matrix<Rational> {
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for _ in 0..m {
        let weights: Vec<i64> = (0..m).map(|_| rng.gen_range(0..4)).collect();
        let total: i64 = weights.iter().sum();
        if total == 0 {
            let mut col = vec![rational_int(0); m];
            col[rng.gen_range(0..m)] = rational_int(1);
            cols.push(col);
        } else {
            cols.push(
                weights
                    .into_iter()
                    .map(|w| Rational::new(w.into(), total.into()))
                    .collect(),
            );
        }
    }
    Matrix::from_fn(m, m, |r, c| cols[c][r].clone())
}

pub fn random_probabilistic(rng: &mut ChaCha8Rng, n: usize, m: usize) -> ProbabilisticObdd {
    let levels = (0..n)
        .map(|_| {
            Level::new(
                random_stochastic_matrix(rng, m),
                random_stochastic_matrix(rng, m),
            )
        })
        .collect();
    ProbabilisticObdd::new(
        random_distribution(rng, m),
        random_order(rng, n),
        levels,
        random_partition(rng, m, true),
    )
    .unwrap()
}

/// A signed permutation, optionally mixed with one exact 1/sqrt(2)
/// rotation on a random coordinate pair; always orthogonal.
pub fn random_orthogonal_matrix(rng: &mut ChaCha8Rng, m: usize) -> Matrix<QuadExt> {
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let signs: Vec<bool> = (0..m).map(|_| rng.gen_bool(0.3)).collect();
    let mut matrix = Matrix::from_fn(m, m, |_, _| QuadExt::from_integer(0));
    for (c, &r) in perm.iter().enumerate() {
        *matrix.get_mut(r, c) = if signs[c] {
            -QuadExt::from_integer(1)
        } else {
            QuadExt::from_integer(1)
        };
    }
    if m >= 2 && rng.gen_bool(0.5) {
        let i = rng.gen_range(0..m);
        let mut j = rng.gen_range(0..m);
        while j == i {
            j = rng.gen_range(0..m);
        }
        let h = QuadExt::inv_sqrt2();
        let mut rot = Matrix::identity(m);
        *rot.get_mut(i, i) = h.clone();
        *rot.get_mut(i, j) = -h.clone();
        *rot.get_mut(j, i) = h.clone();
        *rot.get_mut(j, j) = h;
        matrix = matrix.matmul(&rot).unwrap();
    }
    matrix
}

pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize, m: usize) -> UnitaryObdd {
    let levels = (0..n)
        .map(|_| {
            Level::new(
                random_orthogonal_matrix(rng, m),
                random_orthogonal_matrix(rng, m),
            )
        })
        .collect();
    let initial = if m >= 2 && rng.gen_bool(0.5) {
        let i = rng.gen_range(0..m);
        let mut j = rng.gen_range(0..m);
        while j == i {
            j = rng.gen_range(0..m);
        }
        let mut v = vec![QuadExt::from_integer(0); m];
        v[i] = QuadExt::inv_sqrt2();
        v[j] = if rng.gen_bool(0.5) {
            QuadExt::inv_sqrt2()
        } else {
            -QuadExt::inv_sqrt2()
        };
        Vector::new(v)
    } else {
        Vector::basis(m, rng.gen_range(0..m))
    };
    UnitaryObdd::new(initial, random_order(rng, n), levels, random_partition(rng, m, true))
        .unwrap()
}

pub fn random_affine_matrix(rng: &mut ChaCha8Rng, m: usize) -> Matrix<Rational> {
    let free: Vec<Vec<i64>> = (0..m - 1)
        .map(|_| (0..m).map(|_| rng.gen_range(-2..3)).collect())
        .collect();
    Matrix::from_fn(m, m, |r, c| {
        if r < m - 1 {
            rational_int(free[r][c])
        } else {
            let above: i64 = (0..m - 1).map(|k| free[k][c]).sum();
            rational_int(1 - above)
        }
    })
}

/// Strictly nonnegative affine state summing to 1.
pub fn random_affine_state(rng: &mut ChaCha8Rng, m: usize) -> Vector<Rational> {
    let mut entries: Vec<i64> = (0..m).map(|_| rng.gen_range(-2..3)).collect();
    let total: i64 = entries.iter().sum();
    entries[m - 1] += 1 - total;
    Vector::new(entries.into_iter().map(rational_int).collect())
}

pub fn random_affine(
    rng: &mut ChaCha8Rng,
    n: usize,
    classical: usize,
    dim: usize,
) -> AffineObdd {
    let levels = (0..n)
        .map(|_| AffineLevel {
            delta: (0..classical)
                .map(|_| [rng.gen_range(0..classical), rng.gen_range(0..classical)])
                .collect(),
            matrices: (0..classical)
                .map(|_| [random_affine_matrix(rng, dim), random_affine_matrix(rng, dim)])
                .collect(),
        })
        .collect();
    let accept: BTreeSet<usize> = (0..classical).filter(|_| rng.gen_bool(0.7)).collect();
    AffineObdd::new(
        classical,
        rng.gen_range(0..classical),
        if accept.is_empty() {
            BTreeSet::from([0])
        } else {
            accept
        },
        random_affine_state(rng, dim),
        random_partition(rng, dim, true),
        random_order(rng, n),
        levels,
    )
    .unwrap()
}

pub fn random_deterministic(rng: &mut ChaCha8Rng, n: usize, m: usize) -> DeterministicObdd {
    let maps = (0..n)
        .map(|_| {
            [
                (0..m).map(|_| rng.gen_range(0..m)).collect(),
                (0..m).map(|_| rng.gen_range(0..m)).collect(),
            ]
        })
        .collect();
    DeterministicObdd::new(
        m,
        rng.gen_range(0..m),
        random_order(rng, n),
        maps,
        random_partition(rng, m, true),
    )
    .unwrap()
}
