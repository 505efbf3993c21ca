use relq_grade::{Scalar, TNorm};
use relq_relation::{compose_vec, Relation};

use crate::SolveError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SreMode {
    /// `B_i = A_i o R` with sup-t composition.
    SupT,
    /// `B_i(y) = inf_x A_i(x) -> R(x, y)` with the residuum of `t`.
    InfRho,
}

/// Support points of premise `i` where every other premise vanishes.
fn exclusive_points<S: Scalar>(premises: &[Vec<S>], i: usize) -> Vec<usize> {
    (0..premises[i].len())
        .filter(|&x| premises[i][x] > S::zero())
        .filter(|&x| premises.iter().enumerate().all(|(k, a)| k == i || a[x] == S::zero()))
        .collect()
}

/// Sufficient solvability test for a system of relation equations.
///
/// `SupT`: the exclusive points of each premise reach every value the
/// premise takes on its support. `InfRho`: each premise owns at least one
/// exclusive point. `false` only means the test is inconclusive.
pub fn sre_solvability_criteria<S: Scalar>(premises: &[Vec<S>], mode: SreMode) -> Result<bool, SolveError> {
    let n = premises.first().map_or(0, Vec::len);
    if premises.iter().any(|a| a.len() != n) {
        return Err(SolveError::Domain("premises live on different domains".into()));
    }
    Ok((0..premises.len()).all(|i| {
        let ex = exclusive_points(premises, i);
        match mode {
            SreMode::InfRho => !ex.is_empty(),
            SreMode::SupT => premises[i]
                .iter()
                .filter(|&&v| v > S::zero())
                .all(|&v| ex.iter().any(|&x| premises[i][x] == v)),
        }
    }))
}

/// Candidate relation for the system, returned when it reproduces every conclusion.
///
/// `SupT` uses `min_i (A_i -> B_i)`, `InfRho` uses `max_i t(A_i, B_i)`.
pub fn sre_solve<S: Scalar>(
    premises: &[Vec<S>],
    conclusions: &[Vec<S>],
    mode: SreMode,
    t: &TNorm<S>,
) -> Result<Relation<S>, SolveError> {
    if premises.is_empty() || premises.len() != conclusions.len() {
        return Err(SolveError::Domain("need one conclusion per premise".into()));
    }
    let (nx, ny) = (premises[0].len(), conclusions[0].len());
    if premises.iter().any(|a| a.len() != nx) || conclusions.iter().any(|b| b.len() != ny) {
        return Err(SolveError::Domain("ragged premises or conclusions".into()));
    }
    let init = match mode {
        SreMode::SupT => S::one(),
        SreMode::InfRho => S::zero(),
    };
    let mut r = Relation::filled(nx, ny, init)?;
    for (a, b) in premises.iter().zip(conclusions) {
        for x in 0..nx {
            for y in 0..ny {
                let v = match mode {
                    SreMode::SupT => r.get(x, y).min(t.residuum(a[x], b[y])),
                    SreMode::InfRho => r.get(x, y).max(t.apply(a[x], b[y])),
                };
                r.set(x, y, v);
            }
        }
    }
    for (a, b) in premises.iter().zip(conclusions) {
        let got = match mode {
            SreMode::SupT => compose_vec(&relq_relation::Composition::SupT(*t), a, &r)?,
            SreMode::InfRho => (0..ny)
                .map(|y| (0..nx).fold(S::one(), |m, x| m.min(t.residuum(a[x], r.get(x, y)))))
                .collect(),
        };
        if got.iter().zip(b).any(|(&g, &w)| (g - w).abs() > S::tol()) {
            return Err(SolveError::Infeasible);
        }
    }
    Ok(r)
}
