use std::collections::HashSet;

use relq_grade::Scalar;

use crate::{lex_cmp, max_solution, FreProblem, SolutionSet, SolveError};

/// Default bound on `|Lambda|`; `RELQ_CAP` overrides it.
pub fn default_cap() -> u128 {
    std::env::var("RELQ_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(1_000_000)
}

/// `I_j`: rows that attain `b_j` at the maximum solution.
pub fn index_sets<S: Scalar>(p: &FreProblem<S>, x_hat: &[S]) -> Vec<Vec<usize>> {
    let t = p.t();
    (0..p.n())
        .map(|j| {
            (0..p.m())
                .filter(|&i| (t.apply(x_hat[i], p.a.get(i, j)) - p.b[j]).abs() <= S::tol())
                .collect()
        })
        .collect()
}

/// Marked cells of the matrix pattern: `true` where row `i` binds column `j`.
pub fn matrix_pattern<S: Scalar>(p: &FreProblem<S>, x_hat: &[S]) -> Vec<Vec<bool>> {
    let sets = index_sets(p, x_hat);
    (0..p.m()).map(|i| (0..p.n()).map(|j| sets[j].contains(&i)).collect()).collect()
}

/// Least value row `i` needs for column `j`, snapped onto `x_hat` when they agree.
fn need<S: Scalar>(p: &FreProblem<S>, x_hat: &[S], i: usize, j: usize) -> S {
    let v = p.t().min_so(p.a.get(i, j), p.b[j]).unwrap_or(x_hat[i]);
    if (v - x_hat[i]).abs() <= S::tol() {
        x_hat[i]
    } else {
        v.min(x_hat[i])
    }
}

/// Keeps the pairwise incomparable vectors that nothing else undercuts, sorted.
pub fn dominance_filter<S: Scalar>(cands: Vec<Vec<S>>) -> Vec<Vec<S>> {
    let tol = S::tol();
    let mut seen = HashSet::new();
    let mut cands: Vec<Vec<S>> = cands
        .into_iter()
        .filter(|c| seen.insert(c.iter().map(|v| v.to_f64().unwrap_or(0.0).to_bits()).collect::<Vec<_>>()))
        .collect();
    // a dominator has a smaller sum, so scanning by sum lets each candidate
    // be checked against the minimals found so far only
    let sum = |v: &[S]| v.iter().fold(S::zero(), |a, &b| a + b);
    cands.sort_by(|a, b| sum(a).partial_cmp(&sum(b)).unwrap_or(std::cmp::Ordering::Equal).then(lex_cmp(a, b)));
    let mut keep: Vec<Vec<S>> = Vec::new();
    for c in cands {
        let covered = keep.iter().any(|k| k.iter().zip(&c).all(|(&lo, &v)| lo <= v + tol));
        if !covered {
            keep.push(c);
        }
    }
    keep.sort_by(|a, b| lex_cmp(a, b));
    keep
}

fn active_columns<S: Scalar>(p: &FreProblem<S>) -> Vec<usize> {
    (0..p.n()).filter(|&j| p.b[j] > S::tol()).collect()
}

pub fn minimal_solutions_lambda<S: Scalar>(p: &FreProblem<S>) -> Result<SolutionSet<S>, SolveError> {
    minimal_solutions_lambda_capped(p, default_cap())
}

/// Enumerates every tuple of `Lambda = I_1 x ... x I_n` and filters.
pub fn minimal_solutions_lambda_capped<S: Scalar>(
    p: &FreProblem<S>,
    cap: u128,
) -> Result<SolutionSet<S>, SolveError> {
    let x_hat = max_solution(p).ok_or(SolveError::Infeasible)?;
    let sets = index_sets(p, &x_hat);
    // zero right-hand sides hold for anything below x_hat
    let cols = active_columns(p);
    let size = cols.iter().fold(1u128, |acc, &j| acc.saturating_mul(sets[j].len() as u128));
    if size > cap {
        return Err(SolveError::CapExceeded { size, cap });
    }
    let mut out = Vec::new();
    let mut cur = vec![S::zero(); p.m()];
    lambda_rec(p, &x_hat, &sets, &cols, 0, &mut cur, &mut out);
    Ok(SolutionSet { feasible: true, minimals: dominance_filter(out), x_hat: Some(x_hat), index_sets: sets })
}

fn lambda_rec<S: Scalar>(
    p: &FreProblem<S>,
    x_hat: &[S],
    sets: &[Vec<usize>],
    cols: &[usize],
    k: usize,
    cur: &mut Vec<S>,
    out: &mut Vec<Vec<S>>,
) {
    let Some(&j) = cols.get(k) else {
        out.push(cur.clone());
        return;
    };
    for &i in &sets[j] {
        let old = cur[i];
        cur[i] = old.max(need(p, x_hat, i, j));
        lambda_rec(p, x_hat, sets, cols, k + 1, cur, out);
        cur[i] = old;
    }
}

/// Branches only on columns the current partial vector leaves unsatisfied.
pub fn minimal_solutions_matrix_pattern<S: Scalar>(p: &FreProblem<S>) -> Result<SolutionSet<S>, SolveError> {
    let x_hat = max_solution(p).ok_or(SolveError::Infeasible)?;
    let sets = index_sets(p, &x_hat);
    let mut cols = active_columns(p);
    // largest right-hand sides first
    cols.sort_by(|&x, &y| p.b[y].partial_cmp(&p.b[x]).unwrap_or(std::cmp::Ordering::Equal).then(x.cmp(&y)));
    let mut out = Vec::new();
    let mut cur = vec![S::zero(); p.m()];
    pattern_rec(p, &x_hat, &sets, &cols, &mut cur, &mut out);
    Ok(SolutionSet { feasible: true, minimals: dominance_filter(out), x_hat: Some(x_hat), index_sets: sets })
}

fn pattern_rec<S: Scalar>(
    p: &FreProblem<S>,
    x_hat: &[S],
    sets: &[Vec<usize>],
    cols: &[usize],
    cur: &mut Vec<S>,
    out: &mut Vec<Vec<S>>,
) {
    let t = p.t();
    let open = cols.iter().copied().find(|&j| {
        let got = (0..p.m()).fold(S::zero(), |m, i| m.max(t.apply(cur[i], p.a.get(i, j))));
        got < p.b[j] - S::tol()
    });
    let Some(j) = open else {
        out.push(cur.clone());
        return;
    };
    for &i in &sets[j] {
        let old = cur[i];
        cur[i] = old.max(need(p, x_hat, i, j));
        pattern_rec(p, x_hat, sets, cols, cur, out);
        cur[i] = old;
    }
}

/// Λ-based solution set, or an infeasible marker.
pub fn solution_set<S: Scalar>(p: &FreProblem<S>) -> Result<SolutionSet<S>, SolveError> {
    match minimal_solutions_lambda(p) {
        Err(SolveError::Infeasible) => Ok(SolutionSet::infeasible()),
        other => other,
    }
}
