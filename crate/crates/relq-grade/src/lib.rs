//! Scalar truth-value algebra on the unit interval.
//!
//! Everything here is generic over [`Scalar`] (implemented for `f32` and
//! `f64`). The crate root re-exports `f64` aliases for the common case.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, NumCast};
use serde::de::DeserializeOwned;
use serde::Serialize;

mod implication;
mod metric;
mod ops;
mod tnorm;

pub use implication::Implication;
pub use metric::{equivalence_degree, inclusion_degree, q_lukasiewicz_closed, q_metric};
pub use ops::{at_op, beta_op, equality_index, sigma_alpha, solve_scalar_t, AtKind, ScalarSolution};
pub use tnorm::{Generator, TNorm};

/// Floating point type usable as a grade.
pub trait Scalar:
    Float
    + FromPrimitive
    + NumCast
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Default comparison tolerance for this precision.
    fn tol() -> Self;

    /// Converts a literal; panics only for non-representable input.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal fits the scalar type")
    }

    /// Clamps into [0, 1].
    fn clamp01(self) -> Self {
        self.max(Self::zero()).min(Self::one())
    }

    fn approx_eq(self, other: Self, tol: Self) -> bool {
        (self - other).abs() <= tol
    }
}

impl Scalar for f64 {
    fn tol() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn tol() -> Self {
        1e-5
    }
}

/// A membership grade in double precision.
pub type Grade = f64;
pub type TNorm64 = TNorm<f64>;
pub type Implication64 = Implication<f64>;
pub type ScalarSolution64 = ScalarSolution<f64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GradeError {
    #[error("crisp material implication needs binary arguments, got ({0}, {1})")]
    NonBinary(f64, f64),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("t-norm {0} is not continuous")]
    NotContinuous(String),
}

/// True when `v` lies in [0, 1].
pub fn is_grade<S: Scalar>(v: S) -> bool {
    v >= S::zero() && v <= S::one()
}
