//! Reference oracles for every Boolean function and language the models
//! are checked against. These are the ground truth for the sweep
//! classifier and the bound engine, so they are written as directly from
//! the definitions as possible.

use crate::error::{Error, Result};

/// A sequence of bits. Positions are 1-based in the accessors to match
/// the usual x_1..x_n indexing of inputs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString { bits }
    }

    pub fn empty() -> Self {
        BitString { bits: Vec::new() }
    }

    /// Parse from a string of '0'/'1' characters.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::UnknownSymbol(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString::new)
    }

    /// The `n`-bit string whose bits spell `index` in binary, x_1 being
    /// the most significant bit. Enumerating `index` in 0..2^n yields
    /// every input exactly once.
    pub fn from_index(index: u64, n: usize) -> Self {
        assert!(n < 64);
        let bits = (0..n).map(|j| (index >> (n - 1 - j)) & 1 == 1).collect();
        BitString { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The bit x_i, 1-based. Panics outside 1..=len.
    pub fn bit(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.bits.len(), "bit index {i} out of range");
        self.bits[i - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Concatenation, used to assemble prefix+suffix words.
    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        BitString { bits }
    }

    /// MSB-first integer value of the string.
    pub fn to_index(&self) -> u64 {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// All bit strings of length `n`, in index order.
pub fn all_inputs(n: usize) -> impl Iterator<Item = BitString> {
    (0..(1u64 << n)).map(move |i| BitString::from_index(i, n))
}

/// Hidden weighted bit: x_z where z is the number of ones, with x_0 = 0.
pub fn hwb(x: &BitString) -> bool {
    let z = x.count_ones();
    if z == 0 {
        false
    } else {
        x.bit(z)
    }
}

/// The least prime strictly greater than n.
pub fn smallest_prime_gt(n: u64) -> u64 {
    fn is_prime(m: u64) -> bool {
        if m < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }
    let mut p = n + 1;
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// s_n(x) = (sum of i * x_i) mod p(n).
pub fn weighted_sum(x: &BitString) -> u64 {
    let p = smallest_prime_gt(x.len() as u64);
    let mut s = 0u64;
    for i in 1..=x.len() {
        if x.bit(i) {
            s = (s + i as u64) % p;
        }
    }
    s
}

/// WS_n(x) = x_{s_n(x)} when s_n(x) is in 1..=n, else 0.
pub fn ws(x: &BitString) -> bool {
    let s = weighted_sum(x) as usize;
    s >= 1 && s <= x.len() && x.bit(s)
}

/// MWS_n(x, y) = x_i xor y_i when i = s_n(x) = s_n(y) is in 1..=n, else 0.
pub fn mws(x: &BitString, y: &BitString) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let sx = weighted_sum(x) as usize;
    let sy = weighted_sum(y) as usize;
    if sx != sy || sx < 1 || sx > x.len() {
        return Ok(false);
    }
    Ok(x.bit(sx) ^ y.bit(sx))
}

/// ShiftX((a_1,...,a_m), b) = (a_2,...,a_m, a_1 xor b).
pub fn shiftx(a: &BitString, b: bool) -> Result<BitString> {
    if a.is_empty() {
        return Err(Error::EmptyBitString);
    }
    let mut bits: Vec<bool> = a.as_slice()[1..].to_vec();
    bits.push(a.bit(1) ^ b);
    Ok(BitString::new(bits))
}

/// Parameters of the shuffled storage access function: 2^d + d = n/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SsaParams {
    pub d: usize,
    pub n: usize,
}

impl SsaParams {
    pub fn from_d(d: usize) -> Result<Self> {
        if d == 0 || d > 4 {
            return Err(Error::InvalidParams(format!(
                "ssa parameter d must be in 1..=4, got {d}"
            )));
        }
        let n = 2 * ((1usize << d) + d);
        Ok(SsaParams { d, n })
    }

    pub fn check(&self) -> Result<()> {
        if self.n % 2 != 0 || (1usize << self.d) + self.d != self.n / 2 {
            return Err(Error::InvalidParams(format!(
                "ssa parameters must satisfy 2^d + d = n/2, got d={} n={}",
                self.d, self.n
            )));
        }
        Ok(())
    }

    pub fn storage_len(&self) -> usize {
        1 << self.d
    }

    pub fn address_len(&self) -> usize {
        self.d
    }
}

/// The even indices split into the storage stream I_0 and the address
/// stream I_1 by the preceding odd bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamSplit {
    pub i0: Vec<usize>,
    pub i1: Vec<usize>,
}

/// Route the even bits into the two streams and fold them through the
/// shift registers: alpha over the storage stream, beta over the address
/// stream.
pub fn ssa_streams(x: &BitString, p: &SsaParams) -> Result<(StreamSplit, BitString, BitString)> {
    p.check()?;
    if x.len() != p.n {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: p.n,
        });
    }
    let mut split = StreamSplit {
        i0: Vec::new(),
        i1: Vec::new(),
    };
    for i in 1..=p.n / 2 {
        if x.bit(2 * i - 1) {
            split.i1.push(2 * i);
        } else {
            split.i0.push(2 * i);
        }
    }
    let mut alpha = BitString::new(vec![false; p.storage_len()]);
    for &pos in &split.i0 {
        alpha = shiftx(&alpha, x.bit(pos))?;
    }
    let mut beta = BitString::new(vec![false; p.address_len()]);
    for &pos in &split.i1 {
        beta = shiftx(&beta, x.bit(pos))?;
    }
    Ok((split, alpha, beta))
}

/// Storage access: the storage bit selected by the address, decoded
/// MSB-first into v and read at 1-based position v+1. This convention is
/// fixed here once; builders and oracle share it.
pub fn sa(storage: &BitString, address: &BitString) -> Result<bool> {
    if storage.len() != (1usize << address.len()) {
        return Err(Error::LengthMismatch {
            left: storage.len(),
            right: 1usize << address.len(),
        });
    }
    let v = address.to_index() as usize;
    Ok(storage.bit(v + 1))
}

/// SSA_n(x) = SA_d(alpha(x), beta(x)).
pub fn ssa(x: &BitString, p: &SsaParams) -> Result<bool> {
    let (_, alpha, beta) = ssa_streams(x, p)?;
    sa(&alpha, &beta)
}

/// Membership in MODXOR_k: |w| >= 2k and the XOR of the bits at positions
/// i with (|w| - i) mod 2k = 2k - 1 equals 1. Those positions are exactly
/// the designated bits of the unique block decomposition.
pub fn modxor_member(w: &BitString, k: usize) -> bool {
    assert!(k >= 1);
    if w.len() < 2 * k {
        return false;
    }
    let mut acc = false;
    for i in 1..=w.len() {
        if (w.len() - i) % (2 * k) == 2 * k - 1 {
            acc ^= w.bit(i);
        }
    }
    acc
}

/// Membership in END_k: |w| >= k and the k-th bit from the end is 1.
pub fn end_member(w: &BitString, k: usize) -> bool {
    assert!(k >= 1);
    w.len() >= k && w.bit(w.len() - k + 1)
}
