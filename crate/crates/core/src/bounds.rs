//! Lower-bound machinery: subfunction counting over cuts, brute-force
//! Myhill-Nerode distinguishability, and the exact integer-power checks
//! of the size inequalities.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functions::BitString;
use crate::numeric::Rational;
use crate::obdd::VariableOrder;

/// Dense truth table of a Boolean function on n variables; entry `i`
/// is the value on the input whose bits spell `i` MSB-first. This is the
/// canonical function representation for all bound computations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn from_fn(n: usize, f: impl Fn(&BitString) -> bool) -> Self {
        assert!(n < 30, "truth tables this large are not materializable");
        let bits = (0..(1u64 << n))
            .map(|i| f(&BitString::from_index(i, n)))
            .collect();
        TruthTable { n, bits }
    }

    pub fn from_bits(n: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != (1usize << n) {
            return Err(Error::InvalidParams(format!(
                "truth table for n={n} needs {} entries, got {}",
                1usize << n,
                bits.len()
            )));
        }
        Ok(TruthTable { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn eval(&self, x: &BitString) -> bool {
        assert_eq!(x.len(), self.n);
        self.bits[x.to_index() as usize]
    }

    /// The table re-indexed along a variable order: entry `i` of the
    /// result is the value when x_{pi(1)}..x_{pi(n)} spell `i` MSB-first.
    pub fn reorder(&self, order: &VariableOrder) -> Vec<bool> {
        assert_eq!(order.n(), self.n);
        let n = self.n;
        (0..(1usize << n))
            .map(|idx| {
                let mut original = 0usize;
                for j in 1..=n {
                    let bit = (idx >> (n - j)) & 1;
                    let var = order.var_at(j);
                    original |= bit << (n - var);
                }
                self.bits[original]
            })
            .collect()
    }
}

/// A cut theta(pi, u) splitting the variables into the first u read and
/// the rest; the range restriction 1 < u < n is enforced.
#[derive(Debug, Clone)]
pub struct Cut {
    pub order: VariableOrder,
    pub u: usize,
}

impl Cut {
    pub fn new(order: VariableOrder, u: usize) -> Result<Self> {
        if u <= 1 || u >= order.n() {
            return Err(Error::InvalidParams(format!(
                "cut position must satisfy 1 < u < n, got u={u}, n={}",
                order.n()
            )));
        }
        Ok(Cut { order, u })
    }
}

fn distinct_subfunctions(table_pi: &[bool], n: usize, u: usize) -> usize {
    let block = 1usize << (n - u);
    let mut seen: HashSet<&[bool]> = HashSet::new();
    for rho in 0..(1usize << u) {
        seen.insert(&table_pi[rho * block..(rho + 1) * block]);
    }
    seen.len()
}

/// Number of distinct subfunctions of f under the cut: assignments to
/// the first u variables along the order are enumerated and the induced
/// functions of the remaining variables deduplicated.
pub fn subfunction_count(f: &TruthTable, cut: &Cut, budget: u64) -> Result<usize> {
    let required = 1u64 << f.n();
    if required > budget {
        return Err(Error::BudgetExceeded {
            required,
            cap: budget,
        });
    }
    let table_pi = f.reorder(&cut.order);
    Ok(distinct_subfunctions(&table_pi, f.n(), cut.u))
}

/// Max of the subfunction counts over all cuts 1 < u < n of the order.
pub fn subfunction_max(f: &TruthTable, order: &VariableOrder, budget: u64) -> Result<usize> {
    let n = f.n();
    if n < 3 {
        return Err(Error::InvalidParams(format!(
            "cut positions 1 < u < n require n >= 3, got {n}"
        )));
    }
    let required = 1u64 << n;
    if required > budget {
        return Err(Error::BudgetExceeded {
            required,
            cap: budget,
        });
    }
    let table_pi = f.reorder(order);
    Ok((2..n)
        .map(|u| distinct_subfunctions(&table_pi, n, u))
        .max()
        .unwrap())
}

/// How the order space was searched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

/// Subfunction counts for the best order found, and the resulting bound.
#[derive(Debug, Clone)]
pub struct BoundReport {
    /// (cut position, distinct subfunction count) for the best order
    pub per_cut: Vec<(usize, usize)>,
    /// max over cuts for the best order
    pub n_pi: usize,
    /// min over all orders; only set when the search was exhaustive
    pub n_f: Option<usize>,
    pub mode: SearchMode,
    pub orders_examined: usize,
    pub best_order: VariableOrder,
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (1..=n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out.sort();
    out
}

/// N(f): minimize the per-order subfunction maximum over variable
/// orders. Exhaustive search enumerates all n! orders (n <= 8); sampled
/// search yields an upper-bound estimate on N(f), never a lower bound.
pub fn n_of(f: &TruthTable, mode: SearchMode, budget: u64) -> Result<BoundReport> {
    let n = f.n();
    if n < 3 {
        return Err(Error::InvalidParams(format!(
            "cut positions 1 < u < n require n >= 3, got {n}"
        )));
    }
    let orders: Vec<VariableOrder> = match &mode {
        SearchMode::Exhaustive => {
            if n > 8 {
                return Err(Error::InvalidParams(format!(
                    "exhaustive order enumeration is capped at n = 8, got {n}"
                )));
            }
            permutations(n)
                .into_iter()
                .map(|pi| VariableOrder::new(pi).unwrap())
                .collect()
        }
        SearchMode::Sampled { count, seed } => sample_orders(n, *count, *seed),
    };
    let required = (orders.len() as u64).saturating_mul(1u64 << n);
    if required > budget {
        return Err(Error::BudgetExceeded {
            required,
            cap: budget,
        });
    }

    let evaluated: Vec<(usize, Vec<(usize, usize)>)> = orders
        .par_iter()
        .map(|order| {
            let table_pi = f.reorder(order);
            let per_cut: Vec<(usize, usize)> = (2..n)
                .map(|u| (u, distinct_subfunctions(&table_pi, n, u)))
                .collect();
            let max = per_cut.iter().map(|&(_, c)| c).max().unwrap();
            (max, per_cut)
        })
        .collect();

    let (best_idx, _) = evaluated
        .iter()
        .enumerate()
        .min_by_key(|&(i, (max, _))| (*max, i))
        .unwrap();
    let (n_pi, per_cut) = evaluated[best_idx].clone();
    Ok(BoundReport {
        per_cut,
        n_pi,
        n_f: match mode {
            SearchMode::Exhaustive => Some(n_pi),
            SearchMode::Sampled { .. } => None,
        },
        orders_examined: evaluated.len(),
        mode,
        best_order: orders[best_idx].clone(),
    })
}

/// Deterministic order sampling from a seeded xorshift generator; only
/// reproducibility matters here.
fn sample_orders(n: usize, count: usize, seed: u64) -> Vec<VariableOrder> {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).max(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    (0..count)
        .map(|_| {
            let mut pi: Vec<usize> = (1..=n).collect();
            for i in (1..n).rev() {
                let j = (next() % (i as u64 + 1)) as usize;
                pi.swap(i, j);
            }
            VariableOrder::new(pi).unwrap()
        })
        .collect()
}

/// The residue-class profile of a word: the class index whose binary
/// digit a_j is the xor of the bits at positions i with
/// (|w| - i) mod 2k = j; a_0 is the least significant digit.
pub fn nerode_class_of(w: &BitString, k: usize) -> u64 {
    assert!(k >= 1);
    let mut digits = vec![false; 2 * k];
    for i in 1..=w.len() {
        let j = (w.len() - i) % (2 * k);
        digits[j] ^= w.bit(i);
    }
    digits
        .iter()
        .enumerate()
        .fold(0u64, |acc, (j, &a)| acc | ((a as u64) << j))
}

/// Brute-force Myhill-Nerode: count equivalence classes of prefixes up
/// to `prefix_max_len` distinguished by suffixes up to `suffix_max_len`.
/// The count is a certified lower bound on the minimal DFA size.
pub fn distinguishable_count(
    oracle: impl Fn(&BitString) -> bool + Sync,
    prefix_max_len: usize,
    suffix_max_len: usize,
    budget: u64,
) -> Result<usize> {
    let strings_up_to = |len: usize| -> u64 { (1u64 << (len + 1)) - 1 };
    let required = strings_up_to(prefix_max_len) * strings_up_to(suffix_max_len);
    if required > budget {
        return Err(Error::BudgetExceeded {
            required,
            cap: budget,
        });
    }
    let suffixes: Vec<BitString> = (0..=suffix_max_len)
        .flat_map(|len| (0..(1u64 << len)).map(move |i| BitString::from_index(i, len)))
        .collect();
    let prefixes: Vec<BitString> = (0..=prefix_max_len)
        .flat_map(|len| (0..(1u64 << len)).map(move |i| BitString::from_index(i, len)))
        .collect();
    let signatures: HashSet<Vec<bool>> = prefixes
        .par_iter()
        .map(|p| suffixes.iter().map(|s| oracle(&p.concat(s))).collect())
        .collect();
    Ok(signatures.len())
}

/// One (lower bound, model size) pairing checked at error bound eps:
/// bound^(1-eps) <= size, decided exactly as bound^p <= size^q for
/// 1 - eps = p/q.
#[derive(Debug, Clone)]
pub struct InequalityCheck {
    pub label: String,
    pub bound: u64,
    pub size: u64,
    pub one_minus_eps: Rational,
}

/// The outcome, keeping the integers actually compared.
#[derive(Debug, Clone)]
pub struct InequalityResult {
    pub label: String,
    pub bound: u64,
    pub size: u64,
    pub one_minus_eps: Rational,
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub pass: bool,
}

pub fn check_inequality(check: &InequalityCheck) -> Result<InequalityResult> {
    let exp = &check.one_minus_eps;
    if exp.is_negative() || exp.is_zero() {
        return Err(Error::InvalidParams(
            "exponent 1 - eps must be positive".into(),
        ));
    }
    let p: u32 = exp
        .numer()
        .try_into()
        .map_err(|_| Error::InvalidParams("exponent numerator too large".into()))?;
    let q: u32 = exp
        .denom()
        .try_into()
        .map_err(|_| Error::InvalidParams("exponent denominator too large".into()))?;
    let lhs = BigUint::from(check.bound).pow(p);
    let rhs = BigUint::from(check.size).pow(q);
    Ok(InequalityResult {
        label: check.label.clone(),
        bound: check.bound,
        size: check.size,
        one_minus_eps: exp.clone(),
        pass: lhs <= rhs,
        lhs,
        rhs,
    })
}

pub fn check_inequalities(checks: &[InequalityCheck]) -> Result<Vec<InequalityResult>> {
    checks.iter().map(check_inequality).collect()
}
