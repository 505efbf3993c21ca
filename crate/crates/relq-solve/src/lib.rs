//! Solvers for `x o A = b` under sup-t compositions.
//!
//! The public orientation is row vector times matrix: `x` has one entry per
//! row of `A`, `b` one entry per column. [`gavalec`] works on the column
//! form `A (x) x = b` and says so.

mod archimedean;
mod attain;
mod constrained;
pub mod gavalec;
mod kagei;
mod maximum;
mod minimal;
pub mod oracle;
mod shift;
mod sre;

use relq_grade::{Scalar, TNorm};
use relq_relation::{Composition, Relation, RelationError};
use serde::Serialize;

pub use archimedean::{minimal_solutions_archimedean, solution_matrices, SolutionMatrices};
pub use attain::{classify_attainability, Attainability, OverallAttainability};
pub use constrained::{constrained_greatest, greatest_solution_relation, Constraint};
pub use gavalec::{gavalec_certificate, gavalec_flags, GavalecCertificate, XBar};
pub use kagei::{kagei_type1, kagei_type2_unique, KageiOne, KageiTwo, KAGEI_SLACK};
pub use maximum::{is_solution, max_candidate, max_solution, solve_relation_equation};
pub use minimal::{
    default_cap, dominance_filter, index_sets, matrix_pattern, minimal_solutions_lambda,
    minimal_solutions_lambda_capped, minimal_solutions_matrix_pattern, solution_set,
};
pub use shift::{mse, phi, psi, shift_relation, specificity_shift_fit, ShiftFit};
pub use sre::{sre_solvability_criteria, sre_solve, SreMode};

pub type FreProblem64 = FreProblem<f64>;
pub type SolutionSet64 = SolutionSet<f64>;

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("infeasible")]
    Infeasible,
    #[error("combinatorial cap exceeded: {size} candidates, cap {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no constrained solution")]
    NoConstrainedSolution,
    #[error("unsatisfiable: {0}")]
    Unsatisfiable(String),
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// The system `x o A = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct FreProblem<S> {
    pub a: Relation<S>,
    pub b: Vec<S>,
    pub composition: Composition<S>,
}

impl<S: Scalar> FreProblem<S> {
    pub fn new(a: Relation<S>, b: Vec<S>, composition: Composition<S>) -> Result<Self, SolveError> {
        let p = FreProblem { a, b, composition };
        p.validate()?;
        Ok(p)
    }

    pub fn max_min(a: Relation<S>, b: Vec<S>) -> Result<Self, SolveError> {
        FreProblem::new(a, b, Composition::MaxMin)
    }

    pub fn max_product(a: Relation<S>, b: Vec<S>) -> Result<Self, SolveError> {
        FreProblem::new(a, b, Composition::MaxProduct)
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        if self.b.len() != self.a.cols() {
            return Err(SolveError::Domain(format!(
                "b has {} entries, A has {} columns",
                self.b.len(),
                self.a.cols()
            )));
        }
        if let Some((j, v)) = self.b.iter().enumerate().find(|(_, v)| !relq_grade::is_grade(**v)) {
            return Err(SolveError::Domain(format!("b[{j}] = {v} is outside [0, 1]")));
        }
        match self.tnorm() {
            None => Err(SolveError::Domain("inf-implication is not a solvable composition".into())),
            Some(t) if !t.is_continuous() => Err(SolveError::Domain(format!("t-norm {t} is not continuous"))),
            Some(_) => Ok(()),
        }
    }

    pub fn tnorm(&self) -> Option<TNorm<S>> {
        self.composition.tnorm()
    }

    /// Rows of `A`, i.e. the length of `x`.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub(crate) fn t(&self) -> TNorm<S> {
        self.tnorm().expect("validated problem")
    }
}

/// Maximum solution plus the finite set of minimal solutions.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct SolutionSet<S> {
    pub feasible: bool,
    pub x_hat: Option<Vec<S>>,
    /// Sorted lexicographically, pairwise incomparable.
    pub minimals: Vec<Vec<S>>,
    /// Binding rows `I_j` for each column.
    pub index_sets: Vec<Vec<usize>>,
}

impl<S: Scalar> SolutionSet<S> {
    pub fn infeasible() -> Self {
        SolutionSet { feasible: false, x_hat: None, minimals: vec![], index_sets: vec![] }
    }

    /// True when `x` lies in some box `[minimal, x_hat]`.
    pub fn contains(&self, x: &[S], tol: S) -> bool {
        let Some(hat) = &self.x_hat else { return false };
        x.len() == hat.len()
            && x.iter().zip(hat).all(|(&v, &h)| v <= h + tol)
            && self.minimals.iter().any(|m| m.iter().zip(x).all(|(&lo, &v)| lo <= v + tol))
    }
}

pub(crate) fn lex_cmp<S: Scalar>(a: &[S], b: &[S]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    a.len().cmp(&b.len())
}
