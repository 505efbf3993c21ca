//! Learning the weight matrix `W` of `A o W = B` from sample pairs.
//!
//! Each row `a_i` of `A` is an input pattern and the matching row `b_i` of
//! `B` its target. All learners start from the all-ones matrix and only
//! ever lower weights, so the limit is the greatest solution below it.

mod delta;
mod smooth;

use relq_grade::{Scalar, TNorm};
use relq_relation::{Relation, RelationError};
use serde::{Deserialize, Serialize};

pub use delta::{delta_rule_b, delta_rule_basic, delta_rule_j, delta_rule_k};
pub use smooth::smooth_derivative_train;

pub type TrainingSet64 = TrainingSet<f64>;
pub type TrainerConfig64 = TrainerConfig<f64>;

#[derive(Debug, thiserror::Error)]
pub enum LearnError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// Inputs (`p x n`) and targets (`p x m`), one sample per row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Repr<S>", into = "Repr<S>", bound = "S: Scalar")]
pub struct TrainingSet<S> {
    pub inputs: Relation<S>,
    pub targets: Relation<S>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct Repr<S> {
    inputs: Vec<Vec<S>>,
    targets: Vec<Vec<S>>,
}

impl<S: Scalar> TryFrom<Repr<S>> for TrainingSet<S> {
    type Error = LearnError;
    fn try_from(r: Repr<S>) -> Result<Self, LearnError> {
        TrainingSet::new(Relation::from_rows(r.inputs)?, Relation::from_rows(r.targets)?)
    }
}

impl<S: Scalar> From<TrainingSet<S>> for Repr<S> {
    fn from(t: TrainingSet<S>) -> Self {
        Repr { inputs: t.inputs.to_rows(), targets: t.targets.to_rows() }
    }
}

impl<S: Scalar> TrainingSet<S> {
    pub fn new(inputs: Relation<S>, targets: Relation<S>) -> Result<Self, LearnError> {
        if inputs.rows() != targets.rows() {
            return Err(LearnError::LengthMismatch(inputs.rows(), targets.rows()));
        }
        Ok(TrainingSet { inputs, targets })
    }

    pub fn from_rows(inputs: Vec<Vec<S>>, targets: Vec<Vec<S>>) -> Result<Self, LearnError> {
        TrainingSet::try_from(Repr { inputs, targets })
    }

    pub fn samples(&self) -> usize {
        self.inputs.rows()
    }

    /// Width of the input layer.
    pub fn n(&self) -> usize {
        self.inputs.cols()
    }

    /// Width of the output layer.
    pub fn m(&self) -> usize {
        self.targets.cols()
    }

    /// `b'_ij = max_k t(w_kj, a_ik)` for sample `i`.
    pub fn output(&self, t: &TNorm<S>, w: &Relation<S>, i: usize) -> Vec<S> {
        (0..self.m())
            .map(|j| (0..self.n()).fold(S::zero(), |acc, k| acc.max(t.apply(w.get(k, j), self.inputs.get(i, k)))))
            .collect()
    }

    /// True when `A o W = B` up to `tol`.
    pub fn is_solved_by(&self, t: &TNorm<S>, w: &Relation<S>, tol: S) -> bool {
        (0..self.samples()).all(|i| {
            self.output(t, w, i).iter().zip(self.targets.row(i)).all(|(&o, &b)| (o - b).abs() <= tol)
        })
    }

    /// Total `sum |A o W - B|` over all samples.
    pub fn total_error(&self, t: &TNorm<S>, w: &Relation<S>) -> S {
        (0..self.samples()).fold(S::zero(), |acc, i| {
            acc + equality_error(&self.output(t, w, i), self.targets.row(i)).expect("matching widths")
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct TrainerConfig<S> {
    pub eta: S,
    pub epsilon: S,
    pub max_epochs: usize,
    #[serde(with = "tnorm_name")]
    pub tnorm: TNorm<S>,
}

impl<S: Scalar> Default for TrainerConfig<S> {
    fn default() -> Self {
        TrainerConfig { eta: S::lit(0.1), epsilon: S::lit(1e-6), max_epochs: 10_000, tnorm: TNorm::Min }
    }
}

impl<S: Scalar> TrainerConfig<S> {
    pub fn validate(&self) -> Result<(), LearnError> {
        if !(self.eta > S::zero() && self.eta <= S::one()) {
            return Err(LearnError::Domain(format!("eta = {} is outside (0, 1]", self.eta)));
        }
        if self.epsilon < S::zero() {
            return Err(LearnError::Domain("epsilon must be non-negative".into()));
        }
        Ok(())
    }
}

mod tnorm_name {
    use relq_grade::{Scalar, TNorm};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Scalar, Z: Serializer>(t: &TNorm<S>, s: Z) -> Result<Z::Ok, Z::Error> {
        s.serialize_str(&t.name())
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(d: D) -> Result<TNorm<S>, D::Error> {
        let name = String::deserialize(d)?;
        TNorm::from_name(&name).ok_or_else(|| D::Error::custom(format!("unknown t-norm {name}")))
    }
}

/// What a learner produced and how it got there.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct LearnReport<S> {
    pub w: Relation<S>,
    pub converged: bool,
    /// Update sweeps performed (one per sample for the single-pass rules).
    pub sweeps: usize,
    /// Total `sum |A o W - B|` after each sweep.
    pub error_trace: Vec<S>,
    /// No weight ever increased.
    pub monotone: bool,
    /// Cells set by a fallback rather than the rule itself.
    pub flagged: Vec<(usize, usize)>,
}

/// `sum_i |F_i - B_i|`, the summed complement of the equality index.
pub fn equality_error<S: Scalar>(f: &[S], b: &[S]) -> Result<S, LearnError> {
    if f.len() != b.len() {
        return Err(LearnError::LengthMismatch(f.len(), b.len()));
    }
    Ok(f.iter().zip(b).fold(S::zero(), |acc, (&x, &y)| acc + (S::one() - relq_grade::equality_index(x, y))))
}
