//! Optimization subject to `x o A = b`.
//!
//! Linear objectives are solved exactly by problem reduction and a 0-1
//! branch and bound over binding-variable choices. Other objectives go
//! through a genetic algorithm whose operators never leave the feasible set.

mod fcm;
mod ga;
mod linear;
mod pareto;
mod pattern;

use relq_grade::Scalar;
use relq_solve::{FreProblem, SolveError};

pub use fcm::{fuzzy_c_means, FcmResult};
pub use ga::{
    ga_crossover, ga_initialize, ga_mutate, optimize_nonlinear_ga, rank_probabilities, repair, GaConfig, GaRun,
};
pub use linear::{
    brute_force_linear, optimize_linear, optimize_linear_with, reduce_problem, split_costs, BnbOptions,
    LinearSolution, ReductionState, Subproblem,
};
pub use pareto::{dominates, optimize_multiobjective, ParetoArchive};
pub use pattern::{equivalence_reduce, pseudo_char_matrix, sufficient_condition};

pub type LinearFreProblem64 = LinearFreProblem<f64>;

#[derive(Debug, thiserror::Error)]
pub enum OptError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("domain error: {0}")]
    Domain(String),
}

/// `min sum c_i x_i` subject to `x o A = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFreProblem<S> {
    pub base: FreProblem<S>,
    pub c: Vec<S>,
}

impl<S: Scalar> LinearFreProblem<S> {
    pub fn new(base: FreProblem<S>, c: Vec<S>) -> Result<Self, OptError> {
        if c.len() != base.m() {
            return Err(OptError::Domain(format!("{} costs for {} variables", c.len(), base.m())));
        }
        Ok(LinearFreProblem { base, c })
    }

    pub fn cost(&self, x: &[S]) -> S {
        self.c.iter().zip(x).fold(S::zero(), |acc, (&c, &v)| acc + c * v)
    }
}

/// Least value row `i` can take and still attain `b_j`, snapped onto `x_hat`.
pub(crate) fn need<S: Scalar>(p: &FreProblem<S>, x_hat: &[S], i: usize, j: usize) -> S {
    let t = p.tnorm().expect("validated problem");
    let v = t.min_so(p.a.get(i, j), p.b[j]).unwrap_or(x_hat[i]);
    if (v - x_hat[i]).abs() <= S::tol() {
        x_hat[i]
    } else {
        v.min(x_hat[i])
    }
}
