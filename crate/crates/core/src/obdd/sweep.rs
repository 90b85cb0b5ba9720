//! Exhaustive sweep certification: run a model on every input and check
//! the acceptance contract against a reference oracle.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{Obdd, RunOutcome};
use crate::error::{Error, Result};
use crate::functions::BitString;
use crate::numeric::{QuadExt, Rational};

/// Default cap on the number of input evaluations in one sweep.
pub const DEFAULT_SWEEP_BUDGET: u64 = 1 << 20;

/// The acceptance contract a sweep certifies.
#[derive(Debug, Clone, PartialEq)]
pub enum CertMode {
    /// Accept probability exactly 1 on members, exactly 0 on non-members.
    Exact,
    /// Zero wrong-side probability, and the correct decision is made with
    /// probability at least p.
    LasVegas(Rational),
    /// Members accepted with probability >= 1 - eps, non-members with
    /// probability < eps.
    Bounded(Rational),
}

impl std::fmt::Display for CertMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CertMode::Exact => write!(f, "exact"),
            CertMode::LasVegas(p) => write!(f, "lasvegas({p})"),
            CertMode::Bounded(e) => write!(f, "bounded({e})"),
        }
    }
}

/// One input on which the model broke the contract.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub input: BitString,
    pub outcome: RunOutcome<QuadExt>,
    pub member: bool,
    pub reason: String,
}

/// Result of an exhaustive sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub total: u64,
    pub mode: CertMode,
    pub violations: Vec<Violation>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check one outcome against the contract. Returns the failure reason if
/// it violates.
pub(crate) fn check_outcome(
    mode: &CertMode,
    member: bool,
    out: &RunOutcome<QuadExt>,
) -> Option<String> {
    if !out.conserves() {
        return Some(format!(
            "outcome does not conserve probability: {} + {} + {}",
            out.accept, out.reject, out.dont_know
        ));
    }
    match mode {
        CertMode::Exact => {
            let want = if member {
                QuadExt::one()
            } else {
                QuadExt::zero()
            };
            if out.accept != want {
                return Some(format!(
                    "exact: accept probability {} but membership is {member}",
                    out.accept
                ));
            }
        }
        CertMode::LasVegas(p) => {
            let p = QuadExt::from(p.clone());
            let (wrong, right) = if member {
                (&out.reject, &out.accept)
            } else {
                (&out.accept, &out.reject)
            };
            if !wrong.is_zero() {
                return Some(format!("las vegas: wrong-side probability {wrong} is nonzero"));
            }
            if *right < p {
                return Some(format!(
                    "las vegas: decision probability {right} below {p}"
                ));
            }
        }
        CertMode::Bounded(eps) => {
            let eps = QuadExt::from(eps.clone());
            if member {
                let threshold = QuadExt::one() - eps;
                if out.accept < threshold {
                    return Some(format!(
                        "bounded: member accepted with probability {} < {threshold}",
                        out.accept
                    ));
                }
            } else if !(out.accept < eps) {
                return Some(format!(
                    "bounded: non-member accepted with probability {} >= {eps}",
                    out.accept
                ));
            }
        }
    }
    None
}

/// Enumerate all 2^n inputs of a model and certify the contract given by
/// `mode` against `oracle`. The report lists every violating input in
/// input-index order.
pub fn sweep_classify(
    model: &Obdd,
    oracle: impl Fn(&BitString) -> bool + Sync,
    mode: &CertMode,
    budget: u64,
) -> Result<SweepReport> {
    let n = model.n();
    if n >= 63 {
        return Err(Error::BudgetExceeded {
            required: u64::MAX,
            cap: budget,
        });
    }
    let total = 1u64 << n;
    if total > budget {
        return Err(Error::BudgetExceeded {
            required: total,
            cap: budget,
        });
    }
    let mut violations: Vec<(u64, Violation)> = (0..total)
        .into_par_iter()
        .filter_map(|i| {
            let x = BitString::from_index(i, n);
            let member = oracle(&x);
            let out = model.run(&x).expect("model and input sizes agree");
            check_outcome(mode, member, &out).map(|reason| {
                (
                    i,
                    Violation {
                        input: x,
                        outcome: out,
                        member,
                        reason,
                    },
                )
            })
        })
        .collect();
    violations.sort_by_key(|(i, _)| *i);
    Ok(SweepReport {
        total,
        mode: mode.clone(),
        violations: violations.into_iter().map(|(_, v)| v).collect(),
    })
}
