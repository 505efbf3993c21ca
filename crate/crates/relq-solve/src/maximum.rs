use relq_grade::{at_op, AtKind, Scalar};
use relq_relation::{compose_vec, Composition, Relation};

use crate::{FreProblem, SolveError};

/// Greatest `x` with `x o A <= b`; a solution exactly when the system is solvable.
pub fn max_candidate<S: Scalar>(p: &FreProblem<S>) -> Vec<S> {
    let t = p.t();
    (0..p.m())
        .map(|i| {
            (0..p.n()).fold(S::one(), |acc, j| {
                let (a, b) = (p.a.get(i, j), p.b[j]);
                let w = match p.composition {
                    Composition::MaxMin => at_op(AtKind::MaxMin, a, b),
                    Composition::MaxProduct => at_op(AtKind::MaxProduct, a, b),
                    _ => t.residuum(a, b),
                };
                acc.min(w)
            })
        })
        .collect()
}

/// `x o A = b` up to the scalar tolerance.
pub fn is_solution<S: Scalar>(p: &FreProblem<S>, x: &[S]) -> bool {
    match compose_vec(&p.composition, x, &p.a) {
        Ok(r) => r.iter().zip(&p.b).all(|(&v, &b)| (v - b).abs() <= S::tol()),
        Err(_) => false,
    }
}

/// The maximum solution, or `None` when the system has no solution.
pub fn max_solution<S: Scalar>(p: &FreProblem<S>) -> Option<Vec<S>> {
    let x = max_candidate(p);
    is_solution(p, &x).then_some(x)
}

/// Greatest `P` with `P o Q = R`, solved one row of `P` at a time.
pub fn solve_relation_equation<S: Scalar>(
    q: &Relation<S>,
    r: &Relation<S>,
    composition: Composition<S>,
) -> Result<Relation<S>, SolveError> {
    if q.cols() != r.cols() {
        return Err(SolveError::Domain(format!("Q has {} columns, R has {}", q.cols(), r.cols())));
    }
    let mut rows = Vec::with_capacity(r.rows());
    for i in 0..r.rows() {
        let p = FreProblem::new(q.clone(), r.row(i).to_vec(), composition)?;
        rows.push(max_solution(&p).ok_or(SolveError::Infeasible)?);
    }
    Ok(Relation::from_rows(rows)?)
}
