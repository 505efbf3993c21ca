use relq_grade::{Scalar, TNorm};
use relq_relation::{compose, Composition, Relation};

use crate::SolveError;

fn godel<S: Scalar>(a: S, b: S) -> S {
    TNorm::Min.residuum(a, b)
}

/// `U*(x, z) = min_y (R(y, x) -> T(y, z))`, the candidate greatest solution of `R o U = T`.
fn u_star<S: Scalar>(r: &Relation<S>, t: &Relation<S>) -> Result<Relation<S>, SolveError> {
    if r.rows() != t.rows() {
        return Err(SolveError::Domain(format!("R has {} rows, T has {}", r.rows(), t.rows())));
    }
    let mut cells = Vec::with_capacity(r.cols() * t.cols());
    for x in 0..r.cols() {
        for z in 0..t.cols() {
            cells.push((0..r.rows()).fold(S::one(), |acc, y| acc.min(godel(r.get(y, x), t.get(y, z)))));
        }
    }
    Ok(Relation::new(r.cols(), t.cols(), cells)?)
}

fn solves<S: Scalar>(r: &Relation<S>, u: &Relation<S>, t: &Relation<S>) -> Result<bool, SolveError> {
    Ok(compose(&Composition::MaxMin, r, u)?.approx_eq(t, S::tol()))
}

/// Greatest `U` with `R o U = T` under max-min.
pub fn greatest_solution_relation<S: Scalar>(r: &Relation<S>, t: &Relation<S>) -> Result<Relation<S>, SolveError> {
    let u = u_star(r, t)?;
    if solves(r, &u, t)? {
        Ok(u)
    } else {
        Err(SolveError::Infeasible)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    Irreflexive,
    Symmetric,
    Transitive,
}

/// Greatest solution of `R o U = T` with the structural property, if any.
pub fn constrained_greatest<S: Scalar>(
    r: &Relation<S>,
    t: &Relation<S>,
    constraint: Constraint,
) -> Result<Relation<S>, SolveError> {
    let u = u_star(r, t)?;
    if !u.is_square() {
        return Err(SolveError::Domain(format!("unknown relation is {}x{}, not square", u.rows(), u.cols())));
    }
    let n = u.rows();
    let cand = match constraint {
        Constraint::Irreflexive => {
            let mut c = u.clone();
            for i in 0..n {
                c.set(i, i, S::zero());
            }
            c
        }
        Constraint::Symmetric => u.intersection(&u.transpose())?,
        Constraint::Transitive => {
            if !t.is_square() {
                return Err(SolveError::Domain("T -> T needs a square T".into()));
            }
            // (T -> T)(x, z) = min_y T(y, x) -> T(y, z)
            u_star(t, t)?.intersection(&u)?
        }
    };
    if solves(r, &cand, t)? {
        Ok(cand)
    } else {
        Err(SolveError::NoConstrainedSolution)
    }
}
