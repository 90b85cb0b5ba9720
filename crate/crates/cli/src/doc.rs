//! Model serialization: a versioned JSON document holding exact scalars
//! as strings. Rationals are written "p/q"; elements of Q(sqrt 2) as
//! {"a": "p/q", "b": "p/q"}. Parsing re-checks structural validity and
//! reports predicate violations separately so defective models can still
//! be examined.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use obddlab_core::automata::{
    AffineAutomaton, AutomatonModel, DeterministicAutomaton, ProbabilisticAutomaton,
    UnitaryAutomaton,
};
use obddlab_core::numeric::{Matrix, QuadExt, Rational, Scalar, Vector};
use obddlab_core::obdd::{
    AffineLevel, AffineObdd, DecisionPartition, DeterministicObdd, Level, Obdd,
    ProbabilisticObdd, UnitaryObdd, VariableOrder,
};

pub const SCHEMA: &str = "obddlab-model/1";

/// Always includes the denominator, so "1" round-trips as "1/1".
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<Rational> {
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let numer = numer
        .parse()
        .with_context(|| format!("bad numerator in {s:?}"))?;
    let denom = denom
        .parse()
        .with_context(|| format!("bad denominator in {s:?}"))?;
    let r = Rational::new_raw(numer, denom);
    if r.denom() <= &0.into() {
        bail!("denominator must be positive in {s:?}");
    }
    Ok(r.reduced())
}

pub fn format_quad(q: &QuadExt) -> String {
    if let Some(r) = q.as_rational() {
        return format_ratio(r);
    }
    if q.a == Rational::from_integer(0.into()) {
        format!("{}√2", format_ratio(&q.b))
    } else {
        format!("{} + {}√2", format_ratio(&q.a), format_ratio(&q.b))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDoc {
    Rational(String),
    Quad { a: String, b: String },
}

impl ScalarDoc {
    fn of_rational(r: &Rational) -> Self {
        ScalarDoc::Rational(format_ratio(r))
    }

    fn of_quad(q: &QuadExt) -> Self {
        ScalarDoc::Quad {
            a: format_ratio(&q.a),
            b: format_ratio(&q.b),
        }
    }

    fn to_rational(&self) -> Result<Rational> {
        match self {
            ScalarDoc::Rational(s) => parse_ratio(s),
            ScalarDoc::Quad { .. } => bail!("expected a rational, found a quadratic value"),
        }
    }

    fn to_quad(&self) -> Result<QuadExt> {
        match self {
            ScalarDoc::Rational(s) => Ok(QuadExt::from(parse_ratio(s)?)),
            ScalarDoc::Quad { a, b } => Ok(QuadExt::new(parse_ratio(a)?, parse_ratio(b)?)),
        }
    }
}

pub type MatrixDoc = Vec<Vec<ScalarDoc>>;

fn matrix_of_rational(m: &Matrix<Rational>) -> MatrixDoc {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| ScalarDoc::of_rational(m.get(r, c))).collect())
        .collect()
}

fn matrix_of_quad(m: &Matrix<QuadExt>) -> MatrixDoc {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| ScalarDoc::of_quad(m.get(r, c))).collect())
        .collect()
}

fn doc_to_matrix<S: Scalar>(
    doc: &MatrixDoc,
    parse: impl Fn(&ScalarDoc) -> Result<S>,
) -> Result<Matrix<S>> {
    let rows = doc.len();
    if rows == 0 {
        bail!("matrix must have at least one row");
    }
    let cols = doc[0].len();
    if doc.iter().any(|r| r.len() != cols) {
        bail!("matrix rows have uneven lengths");
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in doc {
        for cell in row {
            entries.push(parse(cell)?);
        }
    }
    let mut it = entries.into_iter();
    Ok(Matrix::from_fn(rows, cols, |_, _| it.next().unwrap()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub accept: Vec<usize>,
    pub reject: Vec<usize>,
    pub neutral: Vec<usize>,
}

impl PartitionDoc {
    fn of(p: &DecisionPartition) -> Self {
        PartitionDoc {
            accept: p.accept.iter().copied().collect(),
            reject: p.reject.iter().copied().collect(),
            neutral: p.neutral.iter().copied().collect(),
        }
    }

    fn to_partition(&self, m: usize) -> Result<DecisionPartition> {
        DecisionPartition::new(
            m,
            self.accept.iter().copied().collect(),
            self.reject.iter().copied().collect(),
            self.neutral.iter().copied().collect(),
        )
        .map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelDoc {
    pub on0: MatrixDoc,
    pub on1: MatrixDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AffineLevelDoc {
    /// delta[s] = [next on 0, next on 1]
    pub delta: Vec<[usize; 2]>,
    /// matrices[s] = {on0, on1}
    pub matrices: Vec<LevelDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapLevelDoc {
    pub on0: Vec<usize>,
    pub on1: Vec<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct MetadataDoc {
    pub builder: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state_encoding: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum ModelPayload {
    #[serde(rename = "probabilistic-obdd")]
    ProbabilisticObdd {
        order: Vec<usize>,
        initial: Vec<ScalarDoc>,
        levels: Vec<LevelDoc>,
        partition: PartitionDoc,
    },
    #[serde(rename = "unitary-obdd")]
    UnitaryObdd {
        order: Vec<usize>,
        initial: Vec<ScalarDoc>,
        levels: Vec<LevelDoc>,
        partition: PartitionDoc,
    },
    #[serde(rename = "affine-obdd")]
    AffineObdd {
        order: Vec<usize>,
        classical_count: usize,
        initial_classical: usize,
        classical_accept: Vec<usize>,
        initial_affine: Vec<ScalarDoc>,
        affine_partition: PartitionDoc,
        levels: Vec<AffineLevelDoc>,
    },
    #[serde(rename = "deterministic-obdd")]
    DeterministicObdd {
        order: Vec<usize>,
        width: usize,
        initial: usize,
        levels: Vec<MapLevelDoc>,
        partition: PartitionDoc,
    },
    #[serde(rename = "probabilistic-automaton")]
    ProbabilisticAutomaton {
        initial: Vec<ScalarDoc>,
        on0: MatrixDoc,
        on1: MatrixDoc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        end_marker: Option<MatrixDoc>,
        partition: PartitionDoc,
    },
    #[serde(rename = "unitary-automaton")]
    UnitaryAutomaton {
        initial: Vec<ScalarDoc>,
        on0: MatrixDoc,
        on1: MatrixDoc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        end_marker: Option<MatrixDoc>,
        partition: PartitionDoc,
    },
    #[serde(rename = "affine-automaton")]
    AffineAutomaton {
        initial: Vec<ScalarDoc>,
        on0: MatrixDoc,
        on1: MatrixDoc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        end_marker: Option<MatrixDoc>,
        partition: PartitionDoc,
    },
    #[serde(rename = "deterministic-automaton")]
    DeterministicAutomaton {
        states: usize,
        initial: usize,
        on0: Vec<usize>,
        on1: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        end_marker: Option<Vec<usize>>,
        partition: PartitionDoc,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelDocument {
    pub schema: String,
    pub metadata: MetadataDoc,
    #[serde(flatten)]
    pub payload: ModelPayload,
}

/// Either kind of runnable model.
#[derive(Debug, Clone)]
pub enum AnyModel {
    Obdd(Obdd),
    Automaton(AutomatonModel),
}

impl AnyModel {
    pub fn width_or_states(&self) -> usize {
        match self {
            AnyModel::Obdd(m) => m.width(),
            AnyModel::Automaton(m) => m.states(),
        }
    }

    /// Predicate violations; empty for structurally valid models whose
    /// matrices all satisfy their variant's validity predicate.
    pub fn validate(&self) -> Vec<String> {
        match self {
            AnyModel::Obdd(m) => m.validate(),
            AnyModel::Automaton(m) => m.validate(),
        }
    }
}

impl ModelDocument {
    pub fn new(metadata: MetadataDoc, model: &AnyModel) -> Self {
        ModelDocument {
            schema: SCHEMA.to_string(),
            metadata,
            payload: payload_of(model),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: ModelDocument = serde_json::from_str(text).context("malformed model file")?;
        if doc.schema != SCHEMA {
            bail!("unsupported schema {:?}, expected {SCHEMA:?}", doc.schema);
        }
        Ok(doc)
    }

    /// Rebuild the in-memory model, enforcing structural invariants.
    pub fn to_model(&self) -> Result<AnyModel> {
        model_of(&self.payload)
    }
}

fn payload_of(model: &AnyModel) -> ModelPayload {
    match model {
        AnyModel::Obdd(Obdd::Probabilistic(m)) => ModelPayload::ProbabilisticObdd {
            order: m.order().as_slice().to_vec(),
            initial: m.initial().iter().map(ScalarDoc::of_rational).collect(),
            levels: m
                .levels()
                .iter()
                .map(|l| LevelDoc {
                    on0: matrix_of_rational(&l.on0),
                    on1: matrix_of_rational(&l.on1),
                })
                .collect(),
            partition: PartitionDoc::of(m.partition()),
        },
        AnyModel::Obdd(Obdd::Unitary(m)) => ModelPayload::UnitaryObdd {
            order: m.order().as_slice().to_vec(),
            initial: m.initial().iter().map(ScalarDoc::of_quad).collect(),
            levels: m
                .levels()
                .iter()
                .map(|l| LevelDoc {
                    on0: matrix_of_quad(&l.on0),
                    on1: matrix_of_quad(&l.on1),
                })
                .collect(),
            partition: PartitionDoc::of(m.partition()),
        },
        AnyModel::Obdd(Obdd::Affine(m)) => ModelPayload::AffineObdd {
            order: m.order().as_slice().to_vec(),
            classical_count: m.classical_count(),
            initial_classical: m.initial_classical(),
            classical_accept: m.classical_accept().iter().copied().collect(),
            initial_affine: m.initial_affine().iter().map(ScalarDoc::of_rational).collect(),
            affine_partition: PartitionDoc::of(m.affine_partition()),
            levels: m
                .levels()
                .iter()
                .map(|l| AffineLevelDoc {
                    delta: l.delta.clone(),
                    matrices: l
                        .matrices
                        .iter()
                        .map(|pair| LevelDoc {
                            on0: matrix_of_rational(&pair[0]),
                            on1: matrix_of_rational(&pair[1]),
                        })
                        .collect(),
                })
                .collect(),
        },
        AnyModel::Obdd(Obdd::Deterministic(m)) => ModelPayload::DeterministicObdd {
            order: m.order().as_slice().to_vec(),
            width: m.width(),
            initial: m.initial(),
            levels: m
                .maps()
                .iter()
                .map(|l| MapLevelDoc {
                    on0: l[0].clone(),
                    on1: l[1].clone(),
                })
                .collect(),
            partition: PartitionDoc::of(m.partition()),
        },
        AnyModel::Automaton(AutomatonModel::Probabilistic(m)) => {
            ModelPayload::ProbabilisticAutomaton {
                initial: m.initial.iter().map(ScalarDoc::of_rational).collect(),
                on0: matrix_of_rational(&m.on0),
                on1: matrix_of_rational(&m.on1),
                end_marker: m.end_marker.as_ref().map(matrix_of_rational),
                partition: PartitionDoc::of(&m.partition),
            }
        }
        AnyModel::Automaton(AutomatonModel::Unitary(m)) => ModelPayload::UnitaryAutomaton {
            initial: m.initial.iter().map(ScalarDoc::of_quad).collect(),
            on0: matrix_of_quad(&m.on0),
            on1: matrix_of_quad(&m.on1),
            end_marker: m.end_marker.as_ref().map(matrix_of_quad),
            partition: PartitionDoc::of(&m.partition),
        },
        AnyModel::Automaton(AutomatonModel::Affine(m)) => ModelPayload::AffineAutomaton {
            initial: m.initial.iter().map(ScalarDoc::of_rational).collect(),
            on0: matrix_of_rational(&m.on0),
            on1: matrix_of_rational(&m.on1),
            end_marker: m.end_marker.as_ref().map(matrix_of_rational),
            partition: PartitionDoc::of(&m.partition),
        },
        AnyModel::Automaton(AutomatonModel::Deterministic(m)) => {
            ModelPayload::DeterministicAutomaton {
                states: m.states,
                initial: m.initial,
                on0: m.on0.clone(),
                on1: m.on1.clone(),
                end_marker: m.end_marker.clone(),
                partition: PartitionDoc::of(&m.partition),
            }
        }
    }
}

fn vector_of<S: Scalar>(
    doc: &[ScalarDoc],
    parse: impl Fn(&ScalarDoc) -> Result<S>,
) -> Result<Vector<S>> {
    if doc.is_empty() {
        bail!("state vectors must be non-empty");
    }
    Ok(Vector::new(
        doc.iter().map(parse).collect::<Result<Vec<_>>>()?,
    ))
}

fn model_of(payload: &ModelPayload) -> Result<AnyModel> {
    Ok(match payload {
        ModelPayload::ProbabilisticObdd {
            order,
            initial,
            levels,
            partition,
        } => {
            let initial = vector_of(initial, ScalarDoc::to_rational)?;
            let m = initial.len();
            AnyModel::Obdd(Obdd::Probabilistic(
                ProbabilisticObdd::new(
                    initial,
                    VariableOrder::new(order.clone()).map_err(|e| anyhow!("{e}"))?,
                    levels
                        .iter()
                        .map(|l| {
                            Ok(Level::new(
                                doc_to_matrix(&l.on0, ScalarDoc::to_rational)?,
                                doc_to_matrix(&l.on1, ScalarDoc::to_rational)?,
                            ))
                        })
                        .collect::<Result<Vec<_>>>()?,
                    partition.to_partition(m)?,
                )
                .map_err(|e| anyhow!("{e}"))?,
            ))
        }
        ModelPayload::UnitaryObdd {
            order,
            initial,
            levels,
            partition,
        } => {
            let initial = vector_of(initial, ScalarDoc::to_quad)?;
            let m = initial.len();
            AnyModel::Obdd(Obdd::Unitary(
                UnitaryObdd::new(
                    initial,
                    VariableOrder::new(order.clone()).map_err(|e| anyhow!("{e}"))?,
                    levels
                        .iter()
                        .map(|l| {
                            Ok(Level::new(
                                doc_to_matrix(&l.on0, ScalarDoc::to_quad)?,
                                doc_to_matrix(&l.on1, ScalarDoc::to_quad)?,
                            ))
                        })
                        .collect::<Result<Vec<_>>>()?,
                    partition.to_partition(m)?,
                )
                .map_err(|e| anyhow!("{e}"))?,
            ))
        }
        ModelPayload::AffineObdd {
            order,
            classical_count,
            initial_classical,
            classical_accept,
            initial_affine,
            affine_partition,
            levels,
        } => {
            let initial = vector_of(initial_affine, ScalarDoc::to_rational)?;
            let dim = initial.len();
            AnyModel::Obdd(Obdd::Affine(
                AffineObdd::new(
                    *classical_count,
                    *initial_classical,
                    classical_accept.iter().copied().collect(),
                    initial,
                    affine_partition.to_partition(dim)?,
                    VariableOrder::new(order.clone()).map_err(|e| anyhow!("{e}"))?,
                    levels
                        .iter()
                        .map(|l| {
                            Ok(AffineLevel {
                                delta: l.delta.clone(),
                                matrices: l
                                    .matrices
                                    .iter()
                                    .map(|pair| {
                                        Ok([
                                            doc_to_matrix(&pair.on0, ScalarDoc::to_rational)?,
                                            doc_to_matrix(&pair.on1, ScalarDoc::to_rational)?,
                                        ])
                                    })
                                    .collect::<Result<Vec<_>>>()?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?,
                )
                .map_err(|e| anyhow!("{e}"))?,
            ))
        }
        ModelPayload::DeterministicObdd {
            order,
            width,
            initial,
            levels,
            partition,
        } => AnyModel::Obdd(Obdd::Deterministic(
            DeterministicObdd::new(
                *width,
                *initial,
                VariableOrder::new(order.clone()).map_err(|e| anyhow!("{e}"))?,
                levels
                    .iter()
                    .map(|l| [l.on0.clone(), l.on1.clone()])
                    .collect(),
                partition.to_partition(*width)?,
            )
            .map_err(|e| anyhow!("{e}"))?,
        )),
        ModelPayload::ProbabilisticAutomaton {
            initial,
            on0,
            on1,
            end_marker,
            partition,
        } => {
            let initial = vector_of(initial, ScalarDoc::to_rational)?;
            let m = initial.len();
            AnyModel::Automaton(AutomatonModel::Probabilistic(ProbabilisticAutomaton {
                initial,
                on0: doc_to_matrix(on0, ScalarDoc::to_rational)?,
                on1: doc_to_matrix(on1, ScalarDoc::to_rational)?,
                end_marker: end_marker
                    .as_ref()
                    .map(|m| doc_to_matrix(m, ScalarDoc::to_rational))
                    .transpose()?,
                partition: partition.to_partition(m)?,
            }))
        }
        ModelPayload::UnitaryAutomaton {
            initial,
            on0,
            on1,
            end_marker,
            partition,
        } => {
            let initial = vector_of(initial, ScalarDoc::to_quad)?;
            let m = initial.len();
            AnyModel::Automaton(AutomatonModel::Unitary(UnitaryAutomaton {
                initial,
                on0: doc_to_matrix(on0, ScalarDoc::to_quad)?,
                on1: doc_to_matrix(on1, ScalarDoc::to_quad)?,
                end_marker: end_marker
                    .as_ref()
                    .map(|m| doc_to_matrix(m, ScalarDoc::to_quad))
                    .transpose()?,
                partition: partition.to_partition(m)?,
            }))
        }
        ModelPayload::AffineAutomaton {
            initial,
            on0,
            on1,
            end_marker,
            partition,
        } => {
            let initial = vector_of(initial, ScalarDoc::to_rational)?;
            let m = initial.len();
            AnyModel::Automaton(AutomatonModel::Affine(AffineAutomaton {
                initial,
                on0: doc_to_matrix(on0, ScalarDoc::to_rational)?,
                on1: doc_to_matrix(on1, ScalarDoc::to_rational)?,
                end_marker: end_marker
                    .as_ref()
                    .map(|m| doc_to_matrix(m, ScalarDoc::to_rational))
                    .transpose()?,
                partition: partition.to_partition(m)?,
            }))
        }
        ModelPayload::DeterministicAutomaton {
            states,
            initial,
            on0,
            on1,
            end_marker,
            partition,
        } => {
            if on0.len() != *states
                || on1.len() != *states
                || on0.iter().chain(on1).any(|&t| t >= *states)
            {
                bail!("transition maps must be total on the state set");
            }
            AnyModel::Automaton(AutomatonModel::Deterministic(DeterministicAutomaton {
                states: *states,
                initial: *initial,
                on0: on0.clone(),
                on1: on1.clone(),
                end_marker: end_marker.clone(),
                partition: partition.to_partition(*states)?,
            }))
        }
    })
}
