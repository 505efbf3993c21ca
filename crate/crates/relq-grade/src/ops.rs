use crate::{GradeError, Scalar, TNorm};

/// `1` if `a <= b`, else `b`. Builds the greatest max-min solution.
pub fn sigma_alpha<S: Scalar>(a: S, b: S) -> S {
    if a <= b {
        S::one()
    } else {
        b
    }
}

/// `1` if `a < b`, else `b`.
pub fn beta_op<S: Scalar>(a: S, b: S) -> S {
    if a < b {
        S::one()
    } else {
        b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtKind {
    MaxMin,
    MaxProduct,
}

/// The `@` operator: per-cell upper bound for the maximum solution.
pub fn at_op<S: Scalar>(kind: AtKind, a: S, b: S) -> S {
    if a <= b {
        return S::one();
    }
    match kind {
        AtKind::MaxMin => b,
        AtKind::MaxProduct => b / a,
    }
}

/// Solution set of the scalar equation `t(a, x) = b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarSolution<S> {
    NoSolution,
    Unique(S),
    /// All `x` in `[min, max]` solve the equation.
    Interval { max: S, min: S },
}

/// Solves `t(a, x) = b` for `x`.
///
/// Archimedean norms return `Unique` whenever the solution set is a single
/// point; `Min` always reports the interval form, which may be degenerate.
pub fn solve_scalar_t<S: Scalar>(t: &TNorm<S>, a: S, b: S) -> Result<ScalarSolution<S>, GradeError> {
    if !t.is_continuous() {
        return Err(GradeError::NotContinuous(t.name()));
    }
    let (Some(max), Some(min)) = (t.max_so(a, b), t.min_so(a, b)) else {
        return Ok(ScalarSolution::NoSolution);
    };
    if t.is_archimedean() && (max - min).abs() <= S::tol() {
        Ok(ScalarSolution::Unique(max))
    } else {
        Ok(ScalarSolution::Interval { max, min })
    }
}

/// Degree of equality `1 - |f - b|`.
pub fn equality_index<S: Scalar>(f: S, b: S) -> S {
    S::one() - (f - b).abs()
}
