//! The four OBDD run semantics (deterministic, probabilistic, unitary,
//! affine) over leveled width-m models with an arbitrary variable order.

mod sweep;

pub use sweep::{sweep_classify, CertMode, SweepReport, Violation, DEFAULT_SWEEP_BUDGET};
pub(crate) use sweep::check_outcome;

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::functions::BitString;
use crate::numeric::{weighting_distribution, Matrix, QuadExt, Rational, Scalar, Vector};

/// A variable order: pi(j) is the (1-based) input variable read at step j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableOrder {
    pi: Vec<usize>,
}

impl VariableOrder {
    pub fn new(pi: Vec<usize>) -> Result<Self> {
        let n = pi.len();
        let mut seen = vec![false; n + 1];
        for &v in &pi {
            if v < 1 || v > n || seen[v] {
                return Err(Error::InvalidParams(format!(
                    "order must be a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(VariableOrder { pi })
    }

    pub fn identity(n: usize) -> Self {
        VariableOrder {
            pi: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    /// The variable read at (1-based) step j.
    pub fn var_at(&self, j: usize) -> usize {
        self.pi[j - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.pi
    }
}

/// Accept / reject / neutral split of the final states. Plain two-way
/// models leave `neutral` empty; Las Vegas models use it for the
/// "don't know" sinks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionPartition {
    pub accept: BTreeSet<usize>,
    pub reject: BTreeSet<usize>,
    pub neutral: BTreeSet<usize>,
}

impl DecisionPartition {
    pub fn new(
        m: usize,
        accept: BTreeSet<usize>,
        reject: BTreeSet<usize>,
        neutral: BTreeSet<usize>,
    ) -> Result<Self> {
        let mut seen = vec![false; m];
        for &i in accept.iter().chain(&reject).chain(&neutral) {
            if i >= m {
                return Err(Error::InvalidParams(format!(
                    "partition index {i} out of range for {m} states"
                )));
            }
            if seen[i] {
                return Err(Error::InvalidParams(format!(
                    "partition cells overlap at state {i}"
                )));
            }
            seen[i] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidParams(
                "partition must cover every state".into(),
            ));
        }
        Ok(DecisionPartition {
            accept,
            reject,
            neutral,
        })
    }

    /// Two-way partition: everything not accepting rejects.
    pub fn from_accept(m: usize, accept: BTreeSet<usize>) -> Result<Self> {
        let reject = (0..m).filter(|i| !accept.contains(i)).collect();
        DecisionPartition::new(m, accept, reject, BTreeSet::new())
    }

    /// Three-way partition: the remaining states reject.
    pub fn with_neutral(
        m: usize,
        accept: BTreeSet<usize>,
        neutral: BTreeSet<usize>,
    ) -> Result<Self> {
        let reject = (0..m)
            .filter(|i| !accept.contains(i) && !neutral.contains(i))
            .collect();
        DecisionPartition::new(m, accept, reject, neutral)
    }
}

/// Exact accept / reject / don't-know probabilities for one input.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome<S> {
    pub accept: S,
    pub reject: S,
    pub dont_know: S,
}

impl<S: Scalar> RunOutcome<S> {
    pub fn conserves(&self) -> bool {
        (self.accept.clone() + self.reject.clone() + self.dont_know.clone()).is_one()
    }

    pub fn certain_accept() -> Self {
        RunOutcome {
            accept: S::one(),
            reject: S::zero(),
            dont_know: S::zero(),
        }
    }

    pub fn certain_reject() -> Self {
        RunOutcome {
            accept: S::zero(),
            reject: S::one(),
            dont_know: S::zero(),
        }
    }
}

impl RunOutcome<Rational> {
    pub fn promote(&self) -> RunOutcome<QuadExt> {
        RunOutcome {
            accept: QuadExt::from(self.accept.clone()),
            reject: QuadExt::from(self.reject.clone()),
            dont_know: QuadExt::from(self.dont_know.clone()),
        }
    }
}

/// One level of a leveled model: the matrix applied on bit 0 and on bit 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Level<S> {
    pub on0: Matrix<S>,
    pub on1: Matrix<S>,
}

impl<S: Scalar> Level<S> {
    pub fn new(on0: Matrix<S>, on1: Matrix<S>) -> Self {
        Level { on0, on1 }
    }

    pub fn on(&self, bit: bool) -> &Matrix<S> {
        if bit {
            &self.on1
        } else {
            &self.on0
        }
    }
}

fn check_levels<S: Scalar>(width: usize, levels: &[Level<S>]) -> Result<()> {
    for (i, level) in levels.iter().enumerate() {
        for m in [&level.on0, &level.on1] {
            if m.rows() != width || m.cols() != width {
                return Err(Error::InvalidParams(format!(
                    "level {} matrix is {}x{}, expected {width}x{width}",
                    i + 1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
    }
    Ok(())
}

/// Width-m leveled machine with stochastic transitions.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilisticObdd {
    width: usize,
    initial: Vector<Rational>,
    order: VariableOrder,
    levels: Vec<Level<Rational>>,
    partition: DecisionPartition,
}

impl ProbabilisticObdd {
    pub fn new(
        initial: Vector<Rational>,
        order: VariableOrder,
        levels: Vec<Level<Rational>>,
        partition: DecisionPartition,
    ) -> Result<Self> {
        let width = initial.len();
        if order.n() != levels.len() {
            return Err(Error::InvalidParams(format!(
                "order length {} does not match level count {}",
                order.n(),
                levels.len()
            )));
        }
        check_levels(width, &levels)?;
        Ok(ProbabilisticObdd {
            width,
            initial,
            order,
            levels,
            partition,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn order(&self) -> &VariableOrder {
        &self.order
    }

    pub fn initial(&self) -> &Vector<Rational> {
        &self.initial
    }

    pub fn levels(&self) -> &[Level<Rational>] {
        &self.levels
    }

    pub fn partition(&self) -> &DecisionPartition {
        &self.partition
    }

    /// Violations of the model invariants (empty means valid).
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if self.initial.iter().any(|x| x.is_negative()) || !self.initial.sum().is_one() {
            bad.push("initial vector is not a probability distribution".into());
        }
        for (i, level) in self.levels.iter().enumerate() {
            for (bit, m) in [(0, &level.on0), (1, &level.on1)] {
                if !crate::numeric::validate_stochastic(m) {
                    bad.push(format!("level {} matrix on bit {bit} is not stochastic", i + 1));
                }
            }
        }
        bad
    }

    /// The probabilistic state after every level (index 0 is the initial
    /// state).
    pub fn trace(&self, x: &BitString) -> Result<Vec<Vector<Rational>>> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: self.n(),
            });
        }
        let mut states = Vec::with_capacity(self.n() + 1);
        states.push(self.initial.clone());
        for j in 1..=self.n() {
            let bit = x.bit(self.order.var_at(j));
            let next = self.levels[j - 1].on(bit).apply(states.last().unwrap())?;
            states.push(next);
        }
        Ok(states)
    }

    pub fn run(&self, x: &BitString) -> Result<RunOutcome<Rational>> {
        let final_state = self.trace(x)?.pop().unwrap();
        Ok(RunOutcome {
            accept: final_state.mass_on(&self.partition.accept),
            reject: final_state.mass_on(&self.partition.reject),
            dont_know: final_state.mass_on(&self.partition.neutral),
        })
    }
}

/// Width-m leveled machine over Q(sqrt 2) amplitudes, measured once at
/// the end in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryObdd {
    width: usize,
    initial: Vector<QuadExt>,
    order: VariableOrder,
    levels: Vec<Level<QuadExt>>,
    partition: DecisionPartition,
}

impl UnitaryObdd {
    pub fn new(
        initial: Vector<QuadExt>,
        order: VariableOrder,
        levels: Vec<Level<QuadExt>>,
        partition: DecisionPartition,
    ) -> Result<Self> {
        let width = initial.len();
        if order.n() != levels.len() {
            return Err(Error::InvalidParams(format!(
                "order length {} does not match level count {}",
                order.n(),
                levels.len()
            )));
        }
        check_levels(width, &levels)?;
        Ok(UnitaryObdd {
            width,
            initial,
            order,
            levels,
            partition,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn order(&self) -> &VariableOrder {
        &self.order
    }

    pub fn initial(&self) -> &Vector<QuadExt> {
        &self.initial
    }

    pub fn levels(&self) -> &[Level<QuadExt>] {
        &self.levels
    }

    pub fn partition(&self) -> &DecisionPartition {
        &self.partition
    }

    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if !self.initial.l2_norm_squared().is_one() {
            bad.push("initial state does not have unit norm".into());
        }
        for (i, level) in self.levels.iter().enumerate() {
            for (bit, m) in [(0, &level.on0), (1, &level.on1)] {
                if !crate::numeric::validate_orthogonal(m) {
                    bad.push(format!("level {} matrix on bit {bit} is not orthogonal", i + 1));
                }
            }
        }
        bad
    }

    pub fn trace(&self, x: &BitString) -> Result<Vec<Vector<QuadExt>>> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: self.n(),
            });
        }
        let mut states = Vec::with_capacity(self.n() + 1);
        states.push(self.initial.clone());
        for j in 1..=self.n() {
            let bit = x.bit(self.order.var_at(j));
            let next = self.levels[j - 1].on(bit).apply(states.last().unwrap())?;
            states.push(next);
        }
        Ok(states)
    }

    pub fn run(&self, x: &BitString) -> Result<RunOutcome<QuadExt>> {
        let final_state = self.trace(x)?.pop().unwrap();
        let mass = |cell: &BTreeSet<usize>| {
            cell.iter().fold(QuadExt::zero(), |acc, &i| {
                acc + final_state.get(i).squared()
            })
        };
        Ok(RunOutcome {
            accept: mass(&self.partition.accept),
            reject: mass(&self.partition.reject),
            dont_know: mass(&self.partition.neutral),
        })
    }
}

/// One level of an affine model: the classical transition and the affine
/// matrix both depend on the current classical state and the bit read.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineLevel {
    /// delta[s] = [next state on 0, next state on 1]
    pub delta: Vec<[usize; 2]>,
    /// matrices[s] = [affine matrix on 0, affine matrix on 1]
    pub matrices: Vec<[Matrix<Rational>; 2]>,
}

/// Leveled machine with classical states driving exact affine updates.
/// Width is classical count times affine dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineObdd {
    classical_count: usize,
    initial_classical: usize,
    classical_accept: BTreeSet<usize>,
    affine_dim: usize,
    initial_affine: Vector<Rational>,
    affine_partition: DecisionPartition,
    order: VariableOrder,
    levels: Vec<AffineLevel>,
}

impl AffineObdd {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        classical_count: usize,
        initial_classical: usize,
        classical_accept: BTreeSet<usize>,
        initial_affine: Vector<Rational>,
        affine_partition: DecisionPartition,
        order: VariableOrder,
        levels: Vec<AffineLevel>,
    ) -> Result<Self> {
        let affine_dim = initial_affine.len();
        if initial_classical >= classical_count {
            return Err(Error::InvalidParams(
                "initial classical state out of range".into(),
            ));
        }
        if order.n() != levels.len() {
            return Err(Error::InvalidParams(format!(
                "order length {} does not match level count {}",
                order.n(),
                levels.len()
            )));
        }
        for (i, level) in levels.iter().enumerate() {
            if level.delta.len() != classical_count || level.matrices.len() != classical_count {
                return Err(Error::InvalidParams(format!(
                    "level {} transition tables do not cover all classical states",
                    i + 1
                )));
            }
            for row in &level.delta {
                if row[0] >= classical_count || row[1] >= classical_count {
                    return Err(Error::InvalidParams(format!(
                        "level {} classical transition out of range",
                        i + 1
                    )));
                }
            }
            for pair in &level.matrices {
                for m in pair {
                    if m.rows() != affine_dim || m.cols() != affine_dim {
                        return Err(Error::InvalidParams(format!(
                            "level {} affine matrix is {}x{}, expected {affine_dim}x{affine_dim}",
                            i + 1,
                            m.rows(),
                            m.cols()
                        )));
                    }
                }
            }
        }
        Ok(AffineObdd {
            classical_count,
            initial_classical,
            classical_accept,
            affine_dim,
            initial_affine,
            affine_partition,
            order,
            levels,
        })
    }

    pub fn classical_count(&self) -> usize {
        self.classical_count
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn width(&self) -> usize {
        self.classical_count * self.affine_dim
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn order(&self) -> &VariableOrder {
        &self.order
    }

    pub fn initial_affine(&self) -> &Vector<Rational> {
        &self.initial_affine
    }

    pub fn initial_classical(&self) -> usize {
        self.initial_classical
    }

    pub fn classical_accept(&self) -> &BTreeSet<usize> {
        &self.classical_accept
    }

    pub fn affine_partition(&self) -> &DecisionPartition {
        &self.affine_partition
    }

    pub fn levels(&self) -> &[AffineLevel] {
        &self.levels
    }

    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if !self.initial_affine.sum().is_one() {
            bad.push("initial affine state does not sum to 1".into());
        }
        for (i, level) in self.levels.iter().enumerate() {
            for (s, pair) in level.matrices.iter().enumerate() {
                for (bit, m) in [(0, &pair[0]), (1, &pair[1])] {
                    if !crate::numeric::validate_affine(m) {
                        bad.push(format!(
                            "level {} matrix for classical state {s} on bit {bit} is not affine",
                            i + 1
                        ));
                    }
                }
            }
        }
        bad
    }

    /// Classical and affine state after every level.
    pub fn trace(&self, x: &BitString) -> Result<Vec<(usize, Vector<Rational>)>> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: self.n(),
            });
        }
        let mut states = Vec::with_capacity(self.n() + 1);
        states.push((self.initial_classical, self.initial_affine.clone()));
        for j in 1..=self.n() {
            let bit = x.bit(self.order.var_at(j));
            let (s, v) = states.last().unwrap();
            let level = &self.levels[j - 1];
            // affine update first (selected by the current classical
            // state), then the classical step
            let next_v = level.matrices[*s][bit as usize].apply(v)?;
            let next_s = level.delta[*s][bit as usize];
            states.push((next_s, next_v));
        }
        Ok(states)
    }

    pub fn run(&self, x: &BitString) -> Result<RunOutcome<Rational>> {
        let (final_s, final_v) = self.trace(x)?.pop().unwrap();
        if !self.classical_accept.contains(&final_s) {
            return Ok(RunOutcome::certain_reject());
        }
        let accept = weighting_distribution(&final_v, &self.affine_partition.accept)?;
        let reject = weighting_distribution(&final_v, &self.affine_partition.reject)?;
        let dont_know = weighting_distribution(&final_v, &self.affine_partition.neutral)?;
        Ok(RunOutcome {
            accept,
            reject,
            dont_know,
        })
    }
}

/// Deterministic leveled machine: per level and bit, a total state map.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterministicObdd {
    width: usize,
    initial: usize,
    order: VariableOrder,
    /// maps[j][bit][state] = next state at level j+1
    maps: Vec<[Vec<usize>; 2]>,
    partition: DecisionPartition,
}

impl DeterministicObdd {
    pub fn new(
        width: usize,
        initial: usize,
        order: VariableOrder,
        maps: Vec<[Vec<usize>; 2]>,
        partition: DecisionPartition,
    ) -> Result<Self> {
        if initial >= width {
            return Err(Error::InvalidParams("initial state out of range".into()));
        }
        if order.n() != maps.len() {
            return Err(Error::InvalidParams(format!(
                "order length {} does not match level count {}",
                order.n(),
                maps.len()
            )));
        }
        for (i, level) in maps.iter().enumerate() {
            for map in level {
                if map.len() != width || map.iter().any(|&t| t >= width) {
                    return Err(Error::InvalidParams(format!(
                        "level {} map is not a total function on {width} states",
                        i + 1
                    )));
                }
            }
        }
        Ok(DeterministicObdd {
            width,
            initial,
            order,
            maps,
            partition,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn order(&self) -> &VariableOrder {
        &self.order
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn maps(&self) -> &[[Vec<usize>; 2]] {
        &self.maps
    }

    pub fn partition(&self) -> &DecisionPartition {
        &self.partition
    }

    /// Follow the unique path; 1 iff it ends in an accepting state.
    pub fn run(&self, x: &BitString) -> Result<bool> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: self.n(),
            });
        }
        let mut s = self.initial;
        for j in 1..=self.n() {
            let bit = x.bit(self.order.var_at(j));
            s = self.maps[j - 1][bit as usize][s];
        }
        Ok(self.partition.accept.contains(&s))
    }

    /// The same machine with 0/1 stochastic matrices.
    pub fn to_probabilistic(&self) -> ProbabilisticObdd {
        let levels = self
            .maps
            .iter()
            .map(|level| {
                Level::new(
                    Matrix::column_map(self.width, |j| level[0][j]),
                    Matrix::column_map(self.width, |j| level[1][j]),
                )
            })
            .collect();
        ProbabilisticObdd::new(
            Vector::basis(self.width, self.initial),
            self.order.clone(),
            levels,
            self.partition.clone(),
        )
        .expect("a valid deterministic model converts directly")
    }
}

/// Any of the four model variants, for code that sweeps or serializes
/// models uniformly.
#[derive(Debug, Clone, PartialEq)]
pub enum Obdd {
    Deterministic(DeterministicObdd),
    Probabilistic(ProbabilisticObdd),
    Unitary(UnitaryObdd),
    Affine(AffineObdd),
}

impl Obdd {
    pub fn n(&self) -> usize {
        match self {
            Obdd::Deterministic(m) => m.n(),
            Obdd::Probabilistic(m) => m.n(),
            Obdd::Unitary(m) => m.n(),
            Obdd::Affine(m) => m.n(),
        }
    }

    /// Declared state-space size: m, or classical times affine.
    pub fn width(&self) -> usize {
        match self {
            Obdd::Deterministic(m) => m.width(),
            Obdd::Probabilistic(m) => m.width(),
            Obdd::Unitary(m) => m.width(),
            Obdd::Affine(m) => m.width(),
        }
    }

    /// Run, with the outcome promoted into Q(sqrt 2) so that outcomes of
    /// different variants compare exactly.
    pub fn run(&self, x: &BitString) -> Result<RunOutcome<QuadExt>> {
        match self {
            Obdd::Deterministic(m) => Ok(if m.run(x)? {
                RunOutcome::certain_accept()
            } else {
                RunOutcome::certain_reject()
            }),
            Obdd::Probabilistic(m) => Ok(m.run(x)?.promote()),
            Obdd::Unitary(m) => m.run(x),
            Obdd::Affine(m) => Ok(m.run(x)?.promote()),
        }
    }

    pub fn validate(&self) -> Vec<String> {
        match self {
            Obdd::Deterministic(m) => m.to_probabilistic().validate(),
            Obdd::Probabilistic(m) => m.validate(),
            Obdd::Unitary(m) => m.validate(),
            Obdd::Affine(m) => m.validate(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rational, rational_int};

    fn bs(s: &str) -> BitString {
        BitString::parse(s).unwrap()
    }

    fn accept_set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn one_level_identity_point_mass_accepts() {
        let m = ProbabilisticObdd::new(
            Vector::basis(2, 0),
            VariableOrder::identity(1),
            vec![Level::new(Matrix::identity(2), Matrix::identity(2))],
            DecisionPartition::from_accept(2, accept_set(&[0])).unwrap(),
        )
        .unwrap();
        assert!(m.validate().is_empty());
        let out = m.run(&bs("0")).unwrap();
        assert_eq!(out.accept, rational_int(1));
        assert!(out.conserves());
    }

    #[test]
    fn half_half_swap_gives_half() {
        // v0 = (1/2, 1/2), T swaps, state 0 accepting
        let swap = Matrix::column_map(2, |j| 1 - j);
        let m = ProbabilisticObdd::new(
            Vector::new(vec![rational(1, 2), rational(1, 2)]),
            VariableOrder::identity(1),
            vec![Level::new(swap.clone(), swap)],
            DecisionPartition::from_accept(2, accept_set(&[0])).unwrap(),
        )
        .unwrap();
        let out = m.run(&bs("1")).unwrap();
        assert_eq!(out.accept, rational(1, 2));
        assert_eq!(out.reject, rational(1, 2));
    }

    #[test]
    fn unitary_identity_basis_accepts() {
        let m = UnitaryObdd::new(
            Vector::basis(2, 0),
            VariableOrder::identity(2),
            vec![
                Level::new(Matrix::identity(2), Matrix::identity(2)),
                Level::new(Matrix::identity(2), Matrix::identity(2)),
            ],
            DecisionPartition::from_accept(2, accept_set(&[0])).unwrap(),
        )
        .unwrap();
        assert!(m.validate().is_empty());
        let out = m.run(&bs("10")).unwrap();
        assert_eq!(out.accept, QuadExt::one());
        assert!(out.conserves());
    }

    #[test]
    fn equal_superposition_of_two_paths_gives_half() {
        // 1/sqrt(2) on states 0 and 1; identity evolution; only state 0
        // accepts.
        let h = QuadExt::inv_sqrt2();
        let m = UnitaryObdd::new(
            Vector::new(vec![h.clone(), h]),
            VariableOrder::identity(1),
            vec![Level::new(Matrix::identity(2), Matrix::identity(2))],
            DecisionPartition::from_accept(2, accept_set(&[0])).unwrap(),
        )
        .unwrap();
        let out = m.run(&bs("0")).unwrap();
        assert_eq!(out.accept, QuadExt::from(rational(1, 2)));
        assert_eq!(out.reject, QuadExt::from(rational(1, 2)));
        assert!(out.conserves());
    }

    #[test]
    fn all_neutral_partition_gives_dont_know_one() {
        let m = UnitaryObdd::new(
            Vector::basis(2, 0),
            VariableOrder::identity(1),
            vec![Level::new(Matrix::identity(2), Matrix::identity(2))],
            DecisionPartition::with_neutral(2, BTreeSet::new(), accept_set(&[0, 1])).unwrap(),
        )
        .unwrap();
        let out = m.run(&bs("1")).unwrap();
        assert_eq!(out.dont_know, QuadExt::one());
    }

    #[test]
    fn single_level_affine_identity_accepts() {
        let m = AffineObdd::new(
            1,
            0,
            accept_set(&[0]),
            Vector::basis(3, 0),
            DecisionPartition::from_accept(3, accept_set(&[0])).unwrap(),
            VariableOrder::identity(1),
            vec![AffineLevel {
                delta: vec![[0, 0]],
                matrices: vec![[Matrix::identity(3), Matrix::identity(3)]],
            }],
        )
        .unwrap();
        assert!(m.validate().is_empty());
        let out = m.run(&bs("1")).unwrap();
        assert_eq!(out.accept, rational_int(1));
        assert!(out.conserves());
    }

    #[test]
    fn classical_reject_short_circuits() {
        let m = AffineObdd::new(
            2,
            0,
            accept_set(&[1]),
            Vector::basis(2, 0),
            DecisionPartition::from_accept(2, accept_set(&[0])).unwrap(),
            VariableOrder::identity(1),
            vec![AffineLevel {
                delta: vec![[0, 0], [1, 1]],
                matrices: vec![
                    [Matrix::identity(2), Matrix::identity(2)],
                    [Matrix::identity(2), Matrix::identity(2)],
                ],
            }],
        )
        .unwrap();
        let out = m.run(&bs("0")).unwrap();
        assert_eq!(out, RunOutcome::certain_reject());
    }

    #[test]
    fn degenerate_affine_state_is_an_error() {
        // a valid affine matrix can still send some non-affine vector to
        // zero; force the degenerate case with a zero initial vector,
        // which validate() flags but run() must also refuse to weight.
        let m = AffineObdd::new(
            1,
            0,
            accept_set(&[0]),
            Vector::new(vec![rational_int(1), rational_int(-1)]),
            DecisionPartition::from_accept(2, accept_set(&[0])).unwrap(),
            VariableOrder::identity(1),
            vec![AffineLevel {
                delta: vec![[0, 0]],
                // sends (1, -1) to (0, 0); columns still sum to 1
                matrices: vec![[
                    Matrix::from_rows(vec![
                        vec![rational(1, 2), rational(1, 2)],
                        vec![rational(1, 2), rational(1, 2)],
                    ]),
                    Matrix::identity(2),
                ]],
            }],
        )
        .unwrap();
        assert_eq!(m.run(&bs("0")), Err(Error::DegenerateAffineState));
    }

    fn xor_minimal_obdd() -> DeterministicObdd {
        // states 0/1 track the running parity; after the last level the
        // state is the parity itself.
        DeterministicObdd::new(
            2,
            0,
            VariableOrder::identity(2),
            vec![
                [vec![0, 1], vec![1, 0]],
                [vec![0, 1], vec![1, 0]],
            ],
            DecisionPartition::from_accept(2, accept_set(&[1])).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn deterministic_xor_traces() {
        let m = xor_minimal_obdd();
        assert!(m.run(&bs("10")).unwrap());
        assert!(!m.run(&bs("11")).unwrap());
        assert!(!m.run(&bs("00")).unwrap());
    }

    #[test]
    fn deterministic_agrees_with_probabilistic_run() {
        let m = xor_minimal_obdd();
        let p = m.to_probabilistic();
        assert!(p.validate().is_empty());
        for i in 0..4u64 {
            let x = BitString::from_index(i, 2);
            let det = m.run(&x).unwrap();
            let out = p.run(&x).unwrap();
            assert_eq!(out.accept, rational_int(det as i64));
        }
    }

    #[test]
    fn bad_order_rejected() {
        assert!(VariableOrder::new(vec![1, 1]).is_err());
        assert!(VariableOrder::new(vec![2, 3]).is_err());
        assert!(VariableOrder::new(vec![2, 1, 3]).is_ok());
    }

    #[test]
    fn partition_must_cover_disjointly() {
        assert!(DecisionPartition::new(
            2,
            accept_set(&[0]),
            accept_set(&[0]),
            BTreeSet::new()
        )
        .is_err());
        assert!(DecisionPartition::new(
            2,
            accept_set(&[0]),
            BTreeSet::new(),
            BTreeSet::new()
        )
        .is_err());
    }
}
