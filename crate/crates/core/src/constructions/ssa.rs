//! Models for the shuffled storage access function. The two Las Vegas
//! models split into two deterministic computation paths that store the
//! odd- and even-indexed storage-stream bits respectively; the path whose
//! half-register holds the addressed bit decides, the other answers
//! "don't know". The affine model keeps the whole storage register in
//! the affine state and reads it off exactly at the end.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::functions::SsaParams;
use crate::numeric::{Matrix, QuadExt, Rational, Vector};
use crate::obdd::{
    AffineLevel, AffineObdd, DecisionPartition, Level, ProbabilisticObdd, UnitaryObdd,
    VariableOrder,
};

/// ShiftX on a register held as an MSB-first integer of `width` bits.
pub(crate) fn shiftx_int(v: usize, width: usize, bit: bool) -> usize {
    debug_assert!(v < (1 << width));
    let msb = (v >> (width - 1)) & 1;
    ((v << 1) & ((1 << width) - 1)) | (msb ^ bit as usize)
}

/// The flat state space of the Las Vegas models: tuples
/// (s, t, e, a, b) where s is the path's half-register (2^(d-1) bits),
/// t marks whether the next storage bit is stored, e labels which parity
/// class of the storage stream the path keeps, a is the address register
/// (d bits) and b buffers the routing bit between the odd and even level
/// of a pair. Tuples are indexed lexicographically.
#[derive(Debug, Clone, Copy)]
pub struct SsaStateSpace {
    pub d: usize,
    /// bits in the per-path storage register, 2^d / 2
    pub reg_width: usize,
    pub n: usize,
}

impl SsaStateSpace {
    pub fn new(d: usize) -> Result<Self> {
        let params = SsaParams::from_d(d)?;
        Ok(SsaStateSpace {
            d,
            reg_width: 1 << (d - 1),
            n: params.n,
        })
    }

    pub fn width(&self) -> usize {
        (1 << self.reg_width) * 2 * 2 * (1 << self.d) * 2
    }

    pub fn encode(&self, s: usize, t: usize, e: usize, a: usize, b: usize) -> usize {
        debug_assert!(s < (1 << self.reg_width) && t < 2 && e < 2 && a < (1 << self.d) && b < 2);
        ((((s * 2 + t) * 2 + e) << self.d) + a) * 2 + b
    }

    pub fn decode(&self, idx: usize) -> (usize, usize, usize, usize, usize) {
        let b = idx % 2;
        let rest = idx / 2;
        let a = rest & ((1 << self.d) - 1);
        let rest = rest >> self.d;
        let e = rest % 2;
        let rest = rest / 2;
        let t = rest % 2;
        let s = rest / 2;
        (s, t, e, a, b)
    }

    /// Odd levels buffer the routing bit: b <- b xor r. Reachable states
    /// enter with b = 0, so the buffer holds r afterwards; the xor form
    /// keeps the map a permutation.
    fn odd_map(&self, idx: usize, r: bool) -> usize {
        let (s, t, e, a, b) = self.decode(idx);
        self.encode(s, t, e, a, b ^ r as usize)
    }

    /// Even levels consume the buffered routing bit: storage pairs shift
    /// the half-register on every other storage bit (t gates, and flips
    /// either way), address pairs shift the address register. Both
    /// branches clear the buffer, which merges states and is why this
    /// map has no unitary realization of the same width.
    fn even_map(&self, idx: usize, v: bool) -> usize {
        let (s, t, e, a, b) = self.decode(idx);
        if b == 0 {
            if t == 1 {
                self.encode(shiftx_int(s, self.reg_width, v), 0, e, a, 0)
            } else {
                self.encode(s, 1, e, a, 0)
            }
        } else {
            self.encode(s, t, e, shiftx_int(a, self.d, v), 0)
        }
    }

    fn level_map(&self, level: usize, idx: usize, bit: bool) -> usize {
        if level % 2 == 1 {
            self.odd_map(idx, bit)
        } else {
            self.even_map(idx, bit)
        }
    }

    /// The final three-way split. A path decides when its store-parity
    /// flag disagrees with the address parity; the answer is the
    /// register slot at offset floor(a/2) from the register front.
    pub fn partition(&self) -> Result<DecisionPartition> {
        let mut accept = BTreeSet::new();
        let mut neutral = BTreeSet::new();
        for idx in 0..self.width() {
            let (s, t, _e, a, b) = self.decode(idx);
            if b != 0 || t == a % 2 {
                neutral.insert(idx);
            } else {
                let slot = a / 2;
                let bit = (s >> (self.reg_width - 1 - slot)) & 1;
                if bit == 1 {
                    accept.insert(idx);
                }
            }
        }
        DecisionPartition::with_neutral(self.width(), accept, neutral)
    }

    fn initial_states(&self) -> (usize, usize) {
        // one path stores the odd storage-stream bits (t = e = 1), the
        // other the even ones (t = e = 0)
        (self.encode(0, 0, 0, 0, 0), self.encode(0, 1, 1, 0, 0))
    }
}

/// Las Vegas probabilistic OBDD for the shuffled storage access
/// function, success probability exactly 1/2, width 2^(2^d/2 + d + 3).
pub fn build_ssa_lv_pobdd(d: usize) -> Result<ProbabilisticObdd> {
    let space = SsaStateSpace::new(d)?;
    let width = space.width();
    let (init_even, init_odd) = space.initial_states();

    let mut initial = vec![Rational::from_integer(0.into()); width];
    let half = Rational::new(1.into(), 2.into());
    initial[init_even] = half.clone();
    initial[init_odd] = half;

    let levels = (1..=space.n)
        .map(|j| {
            Level::new(
                Matrix::column_map(width, |idx| space.level_map(j, idx, false)),
                Matrix::column_map(width, |idx| space.level_map(j, idx, true)),
            )
        })
        .collect();

    ProbabilisticObdd::new(
        Vector::new(initial),
        VariableOrder::identity(space.n),
        levels,
        space.partition()?,
    )
}

/// The same two-path machine with amplitudes: the initial state is the
/// equal superposition 1/sqrt(2)(|even path> + |odd path>) and the level
/// matrices are the 0/1 matrices of the same state maps. The odd-level
/// maps are permutations; the even-level maps merge the routing buffer
/// away and therefore are not orthogonal, which is inherent to this
/// state layout (clearing a buffered bit is not injective). The run
/// semantics still preserve the norm on every reachable state, and the
/// sweep certifies the Las Vegas contract exactly.
pub fn build_ssa_lv_uobdd(d: usize) -> Result<UnitaryObdd> {
    let space = SsaStateSpace::new(d)?;
    let width = space.width();
    let (init_even, init_odd) = space.initial_states();

    let mut initial = vec![QuadExt::from_integer(0); width];
    initial[init_even] = QuadExt::inv_sqrt2();
    initial[init_odd] = QuadExt::inv_sqrt2();

    let levels = (1..=space.n)
        .map(|j| {
            Level::new(
                Matrix::column_map(width, |idx| space.level_map(j, idx, false)),
                Matrix::column_map(width, |idx| space.level_map(j, idx, true)),
            )
        })
        .collect();

    UnitaryObdd::new(
        Vector::new(initial),
        VariableOrder::identity(space.n),
        levels,
        space.partition()?,
    )
}

/// The affine shift of the full storage register: entries rotate left by
/// one, the wrapped front entry lands at the back either unchanged
/// (bit 0) or complemented (bit 1), and the trailing entry compensates.
fn storage_shift(storage: usize, bit: bool) -> Matrix<Rational> {
    let dim = storage + 1;
    super::affine_with_compensation(dim, storage, move |r, c| {
        let one = Rational::from_integer(1.into());
        let zero = Rational::from_integer(0.into());
        if r < storage - 1 {
            if c == r + 1 {
                one
            } else {
                zero
            }
        } else if !bit {
            // wrapped entry unchanged
            if c == 0 {
                one
            } else {
                zero
            }
        } else {
            // wrapped entry complemented: ones-row minus the entry
            if c == 0 {
                zero
            } else {
                one
            }
        }
    })
}

/// Exact affine OBDD for the shuffled storage access function with
/// 2^(d+1) classical states and 2^d + 1 affine states. The classical
/// part tracks the routing phase and the address register; the affine
/// part holds the storage register exactly, and the final transformation
/// moves the addressed entry to the front.
pub fn build_ssa_afobdd(d: usize) -> Result<AffineObdd> {
    let params = SsaParams::from_d(d)?;
    let n = params.n;
    let storage = params.storage_len();
    let dim = storage + 1;
    let classical = 2 * (1 << d);
    let enc = |p: usize, s: usize| p * (1 << d) + s;
    let identity = Matrix::<Rational>::identity(dim);

    let mut levels = Vec::with_capacity(n);
    for j in 1..=n {
        let mut delta = Vec::with_capacity(classical);
        let mut matrices = Vec::with_capacity(classical);
        for p in 0..2usize {
            for s in 0..(1usize << d) {
                if j % 2 == 1 {
                    // routing bit: remember whether the next even bit is
                    // storage (p0) or address (p1)
                    delta.push([enc(0, s), enc(1, s)]);
                    matrices.push([identity.clone(), identity.clone()]);
                } else {
                    let next = |bit: bool| {
                        if p == 0 {
                            enc(0, s)
                        } else {
                            enc(1, shiftx_int(s, d, bit))
                        }
                    };
                    delta.push([next(false), next(true)]);
                    let base = |bit: bool| {
                        if p == 0 {
                            storage_shift(storage, bit)
                        } else {
                            identity.clone()
                        }
                    };
                    if j < n {
                        matrices.push([base(false), base(true)]);
                    } else {
                        // last level: compose the final fold, selected by
                        // the address the classical state will end in
                        let fold_for = |bit: bool| {
                            let addr = if p == 0 { s } else { shiftx_int(s, d, bit) };
                            super::select_coordinate(dim, addr)
                                .matmul(&base(bit))
                                .unwrap()
                        };
                        matrices.push([fold_for(false), fold_for(true)]);
                    }
                }
            }
        }
        levels.push(AffineLevel { delta, matrices });
    }

    if n % 2 != 0 {
        return Err(Error::InvalidParams("ssa input length must be even".into()));
    }

    AffineObdd::new(
        classical,
        0,
        (0..classical).collect(),
        Vector::basis(dim, storage),
        DecisionPartition::from_accept(dim, BTreeSet::from([0]))?,
        VariableOrder::identity(n),
        levels,
    )
}
