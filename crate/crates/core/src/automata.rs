//! Finite-automaton variants: uniform transition matrices shared across
//! steps, an optional end-marker transformation, and the same exact
//! outcome semantics as the leveled models.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functions::BitString;
use crate::numeric::{
    validate_affine, validate_orthogonal, validate_stochastic, weighting_distribution, Matrix,
    QuadExt, Rational, Vector,
};
use crate::obdd::{CertMode, DecisionPartition, RunOutcome};

/// Probabilistic automaton: one stochastic matrix per input symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilisticAutomaton {
    pub initial: Vector<Rational>,
    pub on0: Matrix<Rational>,
    pub on1: Matrix<Rational>,
    pub end_marker: Option<Matrix<Rational>>,
    pub partition: DecisionPartition,
}

/// Unitary automaton over Q(sqrt 2) amplitudes, measured after the
/// end-marker step.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryAutomaton {
    pub initial: Vector<QuadExt>,
    pub on0: Matrix<QuadExt>,
    pub on1: Matrix<QuadExt>,
    pub end_marker: Option<Matrix<QuadExt>>,
    pub partition: DecisionPartition,
}

/// Affine automaton: affine symbol matrices and the weighting readout.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineAutomaton {
    pub initial: Vector<Rational>,
    pub on0: Matrix<Rational>,
    pub on1: Matrix<Rational>,
    pub end_marker: Option<Matrix<Rational>>,
    pub partition: DecisionPartition,
}

/// Deterministic automaton as state maps.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterministicAutomaton {
    pub states: usize,
    pub initial: usize,
    pub on0: Vec<usize>,
    pub on1: Vec<usize>,
    pub end_marker: Option<Vec<usize>>,
    pub partition: DecisionPartition,
}

/// Any automaton variant.
#[derive(Debug, Clone, PartialEq)]
pub enum AutomatonModel {
    Deterministic(DeterministicAutomaton),
    Probabilistic(ProbabilisticAutomaton),
    Unitary(UnitaryAutomaton),
    Affine(AffineAutomaton),
}

fn linear_trace<S: crate::numeric::Scalar>(
    initial: &Vector<S>,
    on0: &Matrix<S>,
    on1: &Matrix<S>,
    end: Option<&Matrix<S>>,
    w: &BitString,
) -> Result<Vec<Vector<S>>> {
    let mut states = vec![initial.clone()];
    for bit in w.iter() {
        let m = if bit { on1 } else { on0 };
        let next = m.apply(states.last().unwrap())?;
        states.push(next);
    }
    if let Some(end) = end {
        let next = end.apply(states.last().unwrap())?;
        states.push(next);
    }
    Ok(states)
}

impl ProbabilisticAutomaton {
    pub fn states(&self) -> usize {
        self.initial.len()
    }

    pub fn trace(&self, w: &BitString) -> Result<Vec<Vector<Rational>>> {
        linear_trace(&self.initial, &self.on0, &self.on1, self.end_marker.as_ref(), w)
    }

    pub fn run(&self, w: &BitString) -> Result<RunOutcome<Rational>> {
        let final_state = self.trace(w)?.pop().unwrap();
        Ok(RunOutcome {
            accept: final_state.mass_on(&self.partition.accept),
            reject: final_state.mass_on(&self.partition.reject),
            dont_know: final_state.mass_on(&self.partition.neutral),
        })
    }

    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if self.initial.iter().any(|x| x.is_negative()) || !self.initial.sum().is_one() {
            bad.push("initial vector is not a probability distribution".into());
        }
        for (name, m) in self.matrices() {
            if !validate_stochastic(m) {
                bad.push(format!("{name} matrix is not stochastic"));
            }
        }
        bad
    }

    fn matrices(&self) -> Vec<(&'static str, &Matrix<Rational>)> {
        let mut v = vec![("symbol-0", &self.on0), ("symbol-1", &self.on1)];
        if let Some(end) = &self.end_marker {
            v.push(("end-marker", end));
        }
        v
    }
}

impl UnitaryAutomaton {
    pub fn states(&self) -> usize {
        self.initial.len()
    }

    pub fn trace(&self, w: &BitString) -> Result<Vec<Vector<QuadExt>>> {
        linear_trace(&self.initial, &self.on0, &self.on1, self.end_marker.as_ref(), w)
    }

    pub fn run(&self, w: &BitString) -> Result<RunOutcome<QuadExt>> {
        let final_state = self.trace(w)?.pop().unwrap();
        let mass = |cell: &BTreeSet<usize>| {
            cell.iter()
                .fold(QuadExt::zero(), |acc, &i| acc + final_state.get(i).squared())
        };
        Ok(RunOutcome {
            accept: mass(&self.partition.accept),
            reject: mass(&self.partition.reject),
            dont_know: mass(&self.partition.neutral),
        })
    }

    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if !self.initial.l2_norm_squared().is_one() {
            bad.push("initial state does not have unit norm".into());
        }
        let mut check = |name: &str, m: &Matrix<QuadExt>| {
            if !validate_orthogonal(m) {
                bad.push(format!("{name} matrix is not orthogonal"));
            }
        };
        check("symbol-0", &self.on0);
        check("symbol-1", &self.on1);
        if let Some(end) = &self.end_marker {
            check("end-marker", end);
        }
        bad
    }
}

impl AffineAutomaton {
    pub fn states(&self) -> usize {
        self.initial.len()
    }

    pub fn trace(&self, w: &BitString) -> Result<Vec<Vector<Rational>>> {
        linear_trace(&self.initial, &self.on0, &self.on1, self.end_marker.as_ref(), w)
    }

    pub fn run(&self, w: &BitString) -> Result<RunOutcome<Rational>> {
        let final_state = self.trace(w)?.pop().unwrap();
        Ok(RunOutcome {
            accept: weighting_distribution(&final_state, &self.partition.accept)?,
            reject: weighting_distribution(&final_state, &self.partition.reject)?,
            dont_know: weighting_distribution(&final_state, &self.partition.neutral)?,
        })
    }

    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if !self.initial.sum().is_one() {
            bad.push("initial affine state does not sum to 1".into());
        }
        let mut check = |name: &str, m: &Matrix<Rational>| {
            if !validate_affine(m) {
                bad.push(format!("{name} matrix is not affine"));
            }
        };
        check("symbol-0", &self.on0);
        check("symbol-1", &self.on1);
        if let Some(end) = &self.end_marker {
            check("end-marker", end);
        }
        bad
    }
}

impl DeterministicAutomaton {
    pub fn run(&self, w: &BitString) -> Result<bool> {
        let mut s = self.initial;
        for bit in w.iter() {
            let map = if bit { &self.on1 } else { &self.on0 };
            s = map[s];
        }
        if let Some(end) = &self.end_marker {
            s = end[s];
        }
        Ok(self.partition.accept.contains(&s))
    }
}

impl AutomatonModel {
    pub fn states(&self) -> usize {
        match self {
            AutomatonModel::Deterministic(m) => m.states,
            AutomatonModel::Probabilistic(m) => m.states(),
            AutomatonModel::Unitary(m) => m.states(),
            AutomatonModel::Affine(m) => m.states(),
        }
    }

    pub fn validate(&self) -> Vec<String> {
        match self {
            AutomatonModel::Deterministic(_) => Vec::new(),
            AutomatonModel::Probabilistic(m) => m.validate(),
            AutomatonModel::Unitary(m) => m.validate(),
            AutomatonModel::Affine(m) => m.validate(),
        }
    }
}

/// Feed a word (and the end-marker, when the model has one) through an
/// automaton and read out the exact outcome triple.
pub fn run_automaton(m: &AutomatonModel, w: &BitString) -> Result<RunOutcome<QuadExt>> {
    match m {
        AutomatonModel::Deterministic(m) => Ok(if m.run(w)? {
            RunOutcome::certain_accept()
        } else {
            RunOutcome::certain_reject()
        }),
        AutomatonModel::Probabilistic(m) => Ok(m.run(w)?.promote()),
        AutomatonModel::Unitary(m) => m.run(w),
        AutomatonModel::Affine(m) => Ok(m.run(w)?.promote()),
    }
}

/// State layout of the two-path MODXOR recognizers: pairs (p, s) with
/// p in {p0, p1} and s a k-bit register held MSB-first, indexed
/// p * 2^k + s. The p1 component applies the shift-and-xor register
/// update and p0 idles one step, so each path reads every other symbol.
fn modxor_space(k: usize) -> Result<(usize, usize)> {
    if k == 0 || k > 8 {
        return Err(Error::InvalidParams(format!(
            "modxor parameter k must be in 1..=8, got {k}"
        )));
    }
    Ok((1 << k, 2 << k))
}

fn modxor_step(k: usize, idx: usize, bit: bool) -> usize {
    let reg_size = 1usize << k;
    let (p, s) = (idx / reg_size, idx % reg_size);
    if p == 0 {
        reg_size + s
    } else {
        crate::constructions::shiftx_int(s, k, bit)
    }
}

/// The three-way split shared by the probabilistic and unitary MODXOR
/// recognizers: p0 states are neutral, p1 states decide by the front
/// register bit.
fn modxor_partition(k: usize) -> Result<DecisionPartition> {
    let reg_size = 1usize << k;
    let mut accept = BTreeSet::new();
    let mut neutral = BTreeSet::new();
    for s in 0..reg_size {
        neutral.insert(s);
        if (s >> (k - 1)) & 1 == 1 {
            accept.insert(reg_size + s);
        }
    }
    DecisionPartition::with_neutral(2 * reg_size, accept, neutral)
}

/// Las Vegas probabilistic automaton for MODXOR_k with 2 * 2^k states
/// and success probability exactly 1/2.
pub fn build_modxor_lv_pfa(k: usize) -> Result<AutomatonModel> {
    let (reg_size, states) = modxor_space(k)?;
    let half = Rational::new(1.into(), 2.into());
    let mut initial = vec![Rational::zero(); states];
    initial[0] = half.clone(); // (p0, 0)
    initial[reg_size] = half; // (p1, 0)
    Ok(AutomatonModel::Probabilistic(ProbabilisticAutomaton {
        initial: Vector::new(initial),
        on0: Matrix::column_map(states, |idx| modxor_step(k, idx, false)),
        on1: Matrix::column_map(states, |idx| modxor_step(k, idx, true)),
        end_marker: None,
        partition: modxor_partition(k)?,
    }))
}

/// The unitary version: the same reversible two-path transitions with
/// the initial coin flip replaced by an equal superposition.
pub fn build_modxor_lv_ufa(k: usize) -> Result<AutomatonModel> {
    let (reg_size, states) = modxor_space(k)?;
    let mut initial = vec![QuadExt::zero(); states];
    initial[0] = QuadExt::inv_sqrt2();
    initial[reg_size] = QuadExt::inv_sqrt2();
    Ok(AutomatonModel::Unitary(UnitaryAutomaton {
        initial: Vector::new(initial),
        on0: Matrix::column_map(states, |idx| modxor_step(k, idx, false)),
        on1: Matrix::column_map(states, |idx| modxor_step(k, idx, true)),
        end_marker: None,
        partition: modxor_partition(k)?,
    }))
}

/// Zero-error affine automaton for MODXOR_k with 2k + 1 states: a 2k-slot
/// rotating xor register in the affine entries, a compensation entry,
/// and an end-marker fold that moves the answer to the front.
pub fn build_modxor_afa(k: usize) -> Result<AutomatonModel> {
    if k == 0 || k > 16 {
        return Err(Error::InvalidParams(format!(
            "modxor parameter k must be in 1..=16, got {k}"
        )));
    }
    let reg = 2 * k;
    let dim = reg + 1;
    let zero = Rational::zero;
    let one = Rational::one;

    // symbol matrices: xor the symbol into the front entry (identity for
    // symbol 0, complement for symbol 1), then rotate the register right
    // by one; the last entry compensates.
    let update = |bit: bool| -> Matrix<Rational> {
        crate::constructions::affine_with_compensation(dim, reg, move |r, c| {
            if r == 0 {
                match (bit, c == 0) {
                    (false, true) => one(),
                    (false, false) => zero(),
                    // ones-row minus the entry: 1 - v_0
                    (true, true) => zero(),
                    (true, false) => one(),
                }
            } else if r < reg {
                if c == r {
                    one()
                } else {
                    zero()
                }
            } else {
                unreachable!("compensation row")
            }
        })
    };
    let rotate = crate::constructions::affine_with_compensation(
        dim,
        reg,
        move |r, c| {
            let src = if r == 0 { reg - 1 } else { r - 1 };
            if c == src {
                one()
            } else {
                zero()
            }
        },
    );
    let symbol = |bit: bool| rotate.matmul(&update(bit)).unwrap();

    // end-marker: keep the front entry, fold everything else into the
    // second entry
    let fold = Matrix::from_fn(dim, dim, |r, c| match r {
        0 => {
            if c == 0 {
                one()
            } else {
                zero()
            }
        }
        1 => {
            if c == 0 {
                zero()
            } else {
                one()
            }
        }
        _ => zero(),
    });

    let mut accept = BTreeSet::new();
    accept.insert(0);
    Ok(AutomatonModel::Affine(AffineAutomaton {
        initial: Vector::basis(dim, reg),
        on0: symbol(false),
        on1: symbol(true),
        end_marker: Some(fold),
        partition: DecisionPartition::from_accept(dim, accept)?,
    }))
}

/// One string on which an automaton broke the sweep contract.
#[derive(Debug, Clone, PartialEq)]
pub struct StringViolation {
    pub input: BitString,
    pub outcome: RunOutcome<QuadExt>,
    pub member: bool,
    pub reason: String,
}

/// Result of sweeping all strings up to a length bound.
#[derive(Debug, Clone, PartialEq)]
pub struct StringSweepReport {
    pub total: u64,
    pub max_len: usize,
    pub mode: CertMode,
    pub violations: Vec<StringViolation>,
}

impl StringSweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Enumerate every binary string of length <= max_len and certify the
/// acceptance contract against the oracle. Violations are listed
/// shortest first.
pub fn sweep_strings(
    model: &AutomatonModel,
    oracle: impl Fn(&BitString) -> bool + Sync,
    max_len: usize,
    mode: &CertMode,
    budget: u64,
) -> Result<StringSweepReport> {
    if max_len >= 62 {
        return Err(Error::BudgetExceeded {
            required: u64::MAX,
            cap: budget,
        });
    }
    let total = (1u64 << (max_len + 1)) - 1;
    if total > budget {
        return Err(Error::BudgetExceeded {
            required: total,
            cap: budget,
        });
    }
    let mut violations = Vec::new();
    for len in 0..=max_len {
        let mut batch: Vec<(u64, StringViolation)> = (0..(1u64 << len))
            .into_par_iter()
            .filter_map(|i| {
                let w = BitString::from_index(i, len);
                let member = oracle(&w);
                let out = run_automaton(model, &w).expect("alphabet is binary");
                crate::obdd::check_outcome(mode, member, &out).map(|reason| {
                    (
                        i,
                        StringViolation {
                            input: w,
                            outcome: out,
                            member,
                            reason,
                        },
                    )
                })
            })
            .collect();
        batch.sort_by_key(|(i, _)| *i);
        violations.extend(batch.into_iter().map(|(_, v)| v));
    }
    Ok(StringSweepReport {
        total,
        max_len,
        mode: mode.clone(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::modxor_member;
    use crate::numeric::{rational, rational_int};
    use crate::obdd::DEFAULT_SWEEP_BUDGET;

    fn bs(s: &str) -> BitString {
        BitString::parse(s).unwrap()
    }

    fn all_strings(max_len: usize) -> impl Iterator<Item = BitString> {
        (0..=max_len).flat_map(|len| (0..(1u64 << len)).map(move |i| BitString::from_index(i, len)))
    }

    #[test]
    fn one_state_always_accept_dfa() {
        let m = AutomatonModel::Deterministic(DeterministicAutomaton {
            states: 1,
            initial: 0,
            on0: vec![0],
            on1: vec![0],
            end_marker: None,
            partition: DecisionPartition::from_accept(1, BTreeSet::from([0])).unwrap(),
        });
        for w in all_strings(5) {
            assert_eq!(run_automaton(&m, &w).unwrap().accept, QuadExt::one());
        }
    }

    #[test]
    fn lv_pfa_dimensions_and_examples() {
        let m = build_modxor_lv_pfa(1).unwrap();
        assert_eq!(m.states(), 4);
        assert!(m.validate().is_empty());
        let out = run_automaton(&m, &bs("10")).unwrap();
        assert_eq!(out.accept, QuadExt::from(rational(1, 2)));
        assert_eq!(out.reject, QuadExt::zero());
        assert_eq!(out.dont_know, QuadExt::from(rational(1, 2)));
        assert!(build_modxor_lv_pfa(0).is_err());
    }

    #[test]
    fn lv_models_never_accept_short_strings() {
        for k in 1..=2usize {
            for model in [build_modxor_lv_pfa(k).unwrap(), build_modxor_lv_ufa(k).unwrap()] {
                for w in all_strings(2 * k - 1) {
                    let out = run_automaton(&model, &w).unwrap();
                    assert!(out.accept.is_zero(), "k={k} w={w}");
                }
            }
        }
    }

    #[test]
    fn lv_pfa_certifies_las_vegas() {
        for k in 1..=2usize {
            let m = build_modxor_lv_pfa(k).unwrap();
            let report = sweep_strings(
                &m,
                |w| modxor_member(w, k),
                2 * k + 6,
                &CertMode::LasVegas(rational(1, 2)),
                DEFAULT_SWEEP_BUDGET,
            )
            .unwrap();
            assert!(report.passed(), "k={k}: {:?}", report.violations.first());
        }
    }

    #[test]
    fn lv_ufa_is_orthogonal_and_matches_pfa() {
        for k in 1..=3usize {
            let pfa = build_modxor_lv_pfa(k).unwrap();
            let ufa = build_modxor_lv_ufa(k).unwrap();
            assert!(ufa.validate().is_empty(), "k={k}");
            for w in all_strings(2 * k + 6) {
                assert_eq!(
                    run_automaton(&pfa, &w).unwrap(),
                    run_automaton(&ufa, &w).unwrap(),
                    "k={k} w={w}"
                );
            }
        }
    }

    #[test]
    fn pfa_support_alternates_between_path_phases() {
        // after l symbols each path sits in the p-component matching its
        // starting phase plus l
        let k = 2;
        let reg_size = 1usize << k;
        if let AutomatonModel::Probabilistic(m) = build_modxor_lv_pfa(k).unwrap() {
            for w in all_strings(6) {
                let trace = m.trace(&w).unwrap();
                for (l, state) in trace.iter().enumerate() {
                    for (idx, mass) in state.iter().enumerate() {
                        if mass.is_zero() {
                            continue;
                        }
                        let p = idx / reg_size;
                        // the p0-start path is in p0 at even l; the
                        // p1-start path in p1 at even l
                        let _ = p;
                        assert!(
                            (idx / reg_size) == (l % 2) || (idx / reg_size) == 1 - (l % 2)
                        );
                    }
                    // exactly two support states, one per path
                    assert_eq!(
                        state.iter().filter(|x| !x.is_zero()).count(),
                        2,
                        "w={w} l={l}"
                    );
                }
            }
        } else {
            unreachable!()
        }
    }

    #[test]
    fn afa_dimensions_and_zero_error() {
        let m = build_modxor_afa(1).unwrap();
        assert_eq!(m.states(), 3);
        assert!(m.validate().is_empty());
        assert_eq!(
            run_automaton(&m, &bs("10")).unwrap().accept,
            QuadExt::one()
        );
        assert_eq!(
            run_automaton(&m, &bs("00")).unwrap().accept,
            QuadExt::zero()
        );

        for k in 1..=2usize {
            let m = build_modxor_afa(k).unwrap();
            assert_eq!(m.states(), 2 * k + 1);
            let report = sweep_strings(
                &m,
                |w| modxor_member(w, k),
                2 * k + 6,
                &CertMode::Exact,
                DEFAULT_SWEEP_BUDGET,
            )
            .unwrap();
            assert!(report.passed(), "k={k}: {:?}", report.violations.first());
        }
    }

    #[test]
    fn afa_register_entries_stay_binary() {
        let k = 2;
        if let AutomatonModel::Affine(m) = build_modxor_afa(k).unwrap() {
            for w in all_strings(2 * k + 4) {
                // states after each symbol, before the end-marker fold
                let mut state = m.initial.clone();
                for bit in w.iter() {
                    let matrix = if bit { &m.on1 } else { &m.on0 };
                    state = matrix.apply(&state).unwrap();
                    assert_eq!(state.sum(), rational_int(1), "w={w}");
                    for entry in &state.entries()[..2 * k] {
                        assert!(
                            entry.is_zero() || entry == &rational_int(1),
                            "w={w} state={state:?}"
                        );
                    }
                }
            }
        } else {
            unreachable!()
        }
    }

    #[test]
    fn fault_injected_model_fails_with_shortest_counterexample() {
        let k = 1;
        let mut m = build_modxor_afa(k).unwrap();
        if let AutomatonModel::Affine(a) = &mut m {
            // corrupt the symbol-1 matrix: swap it for the symbol-0 one
            a.on1 = a.on0.clone();
        }
        let report = sweep_strings(
            &m,
            |w| modxor_member(w, k),
            6,
            &CertMode::Exact,
            DEFAULT_SWEEP_BUDGET,
        )
        .unwrap();
        assert!(!report.passed());
        let first = &report.violations[0];
        // every longer violation comes later in the list
        assert!(report
            .violations
            .iter()
            .all(|v| v.input.len() >= first.input.len()));
    }
}
