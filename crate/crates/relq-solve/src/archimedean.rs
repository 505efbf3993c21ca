use std::collections::BTreeSet;

use relq_grade::{Scalar, TNorm};
use relq_relation::Composition;

use crate::{dominance_filter, index_sets, max_solution, FreProblem, SolutionSet, SolveError};

fn archimedean_t<S: Scalar>(p: &FreProblem<S>) -> Result<TNorm<S>, SolveError> {
    let t = match p.composition {
        Composition::MaxProduct => TNorm::Product,
        Composition::SupT(t) => t,
        _ => return Err(SolveError::Domain(format!("{} is not an Archimedean composition", p.composition.name()))),
    };
    if !t.is_archimedean() {
        return Err(SolveError::Domain(format!("t-norm {t} is not Archimedean")));
    }
    Ok(t)
}

/// Per-cell scalar solution data for `t(x, a_ij) = b_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionMatrices<S> {
    /// Largest `x` with `t(x, a_ij) = b_j`.
    pub max_sm: Vec<Vec<Option<S>>>,
    /// The exact scalar solution (unique for Archimedean `t` and `b_j > 0`).
    pub mean_sm: Vec<Vec<Option<S>>>,
    /// The mean entry where row `i` can still reach it below `x_hat`.
    pub min_sm: Vec<Vec<Option<S>>>,
}

pub fn solution_matrices<S: Scalar>(p: &FreProblem<S>) -> Result<SolutionMatrices<S>, SolveError> {
    let t = archimedean_t(p)?;
    let x_hat = crate::max_candidate(p);
    let cell = |f: &dyn Fn(usize, usize) -> Option<S>| -> Vec<Vec<Option<S>>> {
        (0..p.m()).map(|i| (0..p.n()).map(|j| f(i, j)).collect()).collect()
    };
    let max_sm = cell(&|i, j| t.max_so(p.a.get(i, j), p.b[j]));
    let mean_sm = cell(&|i, j| {
        let (hi, lo) = (t.max_so(p.a.get(i, j), p.b[j])?, t.min_so(p.a.get(i, j), p.b[j])?);
        ((hi - lo).abs() <= S::tol()).then_some(lo)
    });
    let min_sm = (0..p.m())
        .map(|i| {
            (0..p.n())
                .map(|j| mean_sm[i][j].filter(|&v| (v - x_hat[i]).abs() <= S::tol()))
                .collect()
        })
        .collect();
    Ok(SolutionMatrices { max_sm, mean_sm, min_sm })
}

/// Minimal solutions from the symbolic product of binding sets.
///
/// Each column contributes the sum of its binding variables; multiplying
/// out with `x x = x` and `x + x y = x` leaves one monomial per minimal
/// solution, which takes `x_hat` on its variables and 0 elsewhere.
pub fn minimal_solutions_archimedean<S: Scalar>(p: &FreProblem<S>) -> Result<SolutionSet<S>, SolveError> {
    archimedean_t(p)?;
    let x_hat = max_solution(p).ok_or(SolveError::Infeasible)?;
    let sets = index_sets(p, &x_hat);
    let mut terms: BTreeSet<BTreeSet<usize>> = BTreeSet::from([BTreeSet::new()]);
    for j in (0..p.n()).filter(|&j| p.b[j] > S::tol()) {
        let mut next = BTreeSet::new();
        for term in &terms {
            if sets[j].iter().any(|i| term.contains(i)) {
                next.insert(term.clone());
                continue;
            }
            for &i in &sets[j] {
                let mut t = term.clone();
                t.insert(i);
                next.insert(t);
            }
        }
        terms = absorb(next);
    }
    let cands = terms
        .iter()
        .map(|term| (0..p.m()).map(|i| if term.contains(&i) { x_hat[i] } else { S::zero() }).collect())
        .collect();
    Ok(SolutionSet { feasible: true, minimals: dominance_filter(cands), x_hat: Some(x_hat), index_sets: sets })
}

fn absorb(terms: BTreeSet<BTreeSet<usize>>) -> BTreeSet<BTreeSet<usize>> {
    let mut by_size: Vec<_> = terms.into_iter().collect();
    by_size.sort_by_key(BTreeSet::len);
    let mut kept: Vec<BTreeSet<usize>> = Vec::new();
    for t in by_size {
        if !kept.iter().any(|k| k.is_subset(&t)) {
            kept.push(t);
        }
    }
    kept.into_iter().collect()
}
