use relq_grade::Scalar;
use serde::Serialize;

use crate::{is_solution, FreProblem, SolveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Attainability {
    Attainable,
    Unattainable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OverallAttainability {
    Attainable,
    PartiallyAttainable,
    Unattainable,
}

/// Labels each constraint by whether some row attains `b_j` exactly.
pub fn classify_attainability<S: Scalar>(
    x: &[S],
    p: &FreProblem<S>,
) -> Result<(Vec<Attainability>, OverallAttainability), SolveError> {
    if x.len() != p.m() || !is_solution(p, x) {
        return Err(SolveError::Domain("vector is not a solution".into()));
    }
    let t = p.t();
    let labels: Vec<Attainability> = (0..p.n())
        .map(|j| {
            let hit = (0..p.m()).any(|i| (t.apply(x[i], p.a.get(i, j)) - p.b[j]).abs() <= S::tol());
            if hit {
                Attainability::Attainable
            } else {
                Attainability::Unattainable
            }
        })
        .collect();
    let hits = labels.iter().filter(|l| **l == Attainability::Attainable).count();
    let overall = match hits {
        h if h == labels.len() => OverallAttainability::Attainable,
        0 => OverallAttainability::Unattainable,
        _ => OverallAttainability::PartiallyAttainable,
    };
    Ok((labels, overall))
}
