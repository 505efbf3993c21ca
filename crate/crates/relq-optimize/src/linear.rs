use relq_grade::Scalar;
use relq_solve::{default_cap, index_sets, is_solution, max_solution, SolveError};
use serde::Serialize;

use crate::{need, LinearFreProblem, OptError};

/// `(c', c'')`: the non-negative and the negative parts of `c`.
pub fn split_costs<S: Scalar>(c: &[S]) -> (Vec<S>, Vec<S>) {
    let z = S::zero();
    let plus = c.iter().map(|&v| if v >= z { v } else { z }).collect();
    let minus = c.iter().map(|&v| if v < z { v } else { z }).collect();
    (plus, minus)
}

/// A block of constraints that shares no binding row with any other block.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Subproblem {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `prod |I_j|` over `cols`, saturating.
    pub lambda_size: u128,
}

/// Outcome of the size reductions applied before branching.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct ReductionState<S> {
    pub x_hat: Vec<S>,
    /// Final values known after reduction; `None` means a subproblem decides.
    pub fixed: Vec<Option<S>>,
    /// Current lower bounds: `x_hat` on negative-cost rows, forced values
    /// from singleton binding sets, zero elsewhere.
    pub lower: Vec<S>,
    /// Negative-cost rows, pinned at `x_hat`.
    pub i_hat: Vec<usize>,
    /// Columns satisfied by the rows in `i_hat`.
    pub j_hat: Vec<usize>,
    /// Rows raised because they alone bind some column.
    pub i_bar: Vec<usize>,
    /// Columns satisfied by those raised rows.
    pub j_bar: Vec<usize>,
    /// Columns with `b_j = 0`; anything below `x_hat` meets them.
    pub zero_cols: Vec<usize>,
    pub index_sets: Vec<Vec<usize>>,
    pub subproblems: Vec<Subproblem>,
}

pub fn reduce_problem<S: Scalar>(p: &LinearFreProblem<S>) -> Result<ReductionState<S>, OptError> {
    let base = &p.base;
    let (m, n) = (base.m(), base.n());
    let x_hat = max_solution(base).ok_or(SolveError::Infeasible)?;
    let sets = index_sets(base, &x_hat);
    let tol = S::tol();

    let i_hat: Vec<usize> = (0..m).filter(|&i| p.c[i] < S::zero()).collect();
    let mut lower = vec![S::zero(); m];
    for &i in &i_hat {
        lower[i] = x_hat[i];
    }
    let meets = |lower: &[S], i: usize, j: usize| lower[i] >= need(base, &x_hat, i, j) - tol;
    let sat = |lower: &[S], j: usize| sets[j].iter().any(|&i| meets(lower, i, j));

    let zero_cols: Vec<usize> = (0..n).filter(|&j| base.b[j] <= tol).collect();
    let mut open: Vec<usize> = (0..n).filter(|&j| base.b[j] > tol).collect();
    let j_hat: Vec<usize> = open.iter().copied().filter(|&j| sat(&lower, j)).collect();
    open.retain(|j| !j_hat.contains(j));

    // a column bound by one row alone forces that row up
    let mut i_bar = Vec::new();
    for &j in &open {
        if let [i] = sets[j][..] {
            lower[i] = lower[i].max(need(base, &x_hat, i, j));
            if !i_bar.contains(&i) {
                i_bar.push(i);
            }
        }
    }
    i_bar.sort_unstable();
    let j_bar: Vec<usize> = open.iter().copied().filter(|&j| sat(&lower, j)).collect();
    open.retain(|j| !j_bar.contains(j));

    let subproblems = components(&open, &sets, m);
    let mut fixed: Vec<Option<S>> = lower.iter().map(|&v| Some(v)).collect();
    for sp in &subproblems {
        for &i in &sp.rows {
            fixed[i] = None;
        }
    }
    Ok(ReductionState {
        x_hat,
        fixed,
        lower,
        i_hat,
        j_hat,
        i_bar,
        j_bar,
        zero_cols,
        index_sets: sets,
        subproblems,
    })
}

/// Connected components of the column graph where columns meet when their
/// binding sets overlap.
fn components(open: &[usize], sets: &[Vec<usize>], m: usize) -> Vec<Subproblem> {
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &j in open {
        let first = find(&mut parent, sets[j][0]);
        for &i in &sets[j][1..] {
            let r = find(&mut parent, i);
            parent[r] = first;
        }
    }
    let mut out: Vec<Subproblem> = Vec::new();
    let mut root_of: Vec<usize> = Vec::new();
    for &j in open {
        let r = find(&mut parent, sets[j][0]);
        let k = match root_of.iter().position(|&x| x == r) {
            Some(k) => k,
            None => {
                root_of.push(r);
                out.push(Subproblem { rows: vec![], cols: vec![], lambda_size: 1 });
                out.len() - 1
            }
        };
        let sp = &mut out[k];
        sp.cols.push(j);
        sp.lambda_size = sp.lambda_size.saturating_mul(sets[j].len() as u128);
        for &i in &sets[j] {
            if !sp.rows.contains(&i) {
                sp.rows.push(i);
            }
        }
    }
    for sp in &mut out {
        sp.rows.sort_unstable();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BnbOptions {
    /// Cut nodes whose cost already reaches the incumbent.
    pub prune: bool,
    /// Bound on explored nodes per subproblem.
    pub node_cap: u128,
}

impl Default for BnbOptions {
    fn default() -> Self {
        BnbOptions { prune: true, node_cap: default_cap() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct LinearSolution<S> {
    pub x: Vec<S>,
    pub z: S,
    pub nodes: u128,
    pub certificate: &'static str,
}

pub fn optimize_linear<S: Scalar>(p: &LinearFreProblem<S>) -> Result<LinearSolution<S>, OptError> {
    optimize_linear_with(p, BnbOptions::default())
}

/// Reduction followed by an exact branch and bound on every subproblem.
pub fn optimize_linear_with<S: Scalar>(p: &LinearFreProblem<S>, opts: BnbOptions) -> Result<LinearSolution<S>, OptError> {
    let st = reduce_problem(p)?;
    let mut x = st.lower.clone();
    let mut nodes = 0u128;
    for sp in &st.subproblems {
        let mut cols = sp.cols.clone();
        cols.sort_by_key(|&j| (st.index_sets[j].len(), j));
        let mut search = Search {
            p,
            st: &st,
            cols: &cols,
            opts,
            nodes: 0,
            best: None,
        };
        let mut cur = st.lower.clone();
        search.descend(&mut cur, S::zero())?;
        nodes += search.nodes;
        let (_, best) = search.best.ok_or(SolveError::Infeasible)?;
        for &i in &sp.rows {
            x[i] = best[i];
        }
    }
    if !is_solution(&p.base, &x) {
        return Err(SolveError::Infeasible.into());
    }
    Ok(LinearSolution { z: p.cost(&x), x, nodes, certificate: "exact-ip" })
}

struct Search<'a, S> {
    p: &'a LinearFreProblem<S>,
    st: &'a ReductionState<S>,
    cols: &'a [usize],
    opts: BnbOptions,
    nodes: u128,
    best: Option<(S, Vec<S>)>,
}

impl<S: Scalar> Search<'_, S> {
    fn need(&self, i: usize, j: usize) -> S {
        need(&self.p.base, &self.st.x_hat, i, j)
    }

    // `cost` is the added cost over `lower` within this subproblem
    fn descend(&mut self, cur: &mut Vec<S>, cost: S) -> Result<(), OptError> {
        self.nodes += 1;
        if self.nodes > self.opts.node_cap {
            return Err(SolveError::CapExceeded { size: self.nodes, cap: self.opts.node_cap }.into());
        }
        if self.opts.prune {
            if let Some((b, _)) = &self.best {
                if cost >= *b - S::tol() {
                    return Ok(());
                }
            }
        }
        let tol = S::tol();
        let sets = &self.st.index_sets;
        let open = self
            .cols
            .iter()
            .copied()
            .find(|&j| !sets[j].iter().any(|&i| cur[i] >= self.need(i, j) - tol));
        let Some(j) = open else {
            if self.best.as_ref().map_or(true, |(b, _)| cost < *b - tol) {
                self.best = Some((cost, cur.clone()));
            }
            return Ok(());
        };
        let mut kids: Vec<(S, usize, S)> = sets[j]
            .iter()
            .map(|&i| {
                let v = cur[i].max(self.need(i, j));
                (self.p.c[i] * (v - cur[i]), i, v)
            })
            .collect();
        kids.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal).then(a.1.cmp(&b.1)));
        for (inc, i, v) in kids {
            let old = cur[i];
            cur[i] = v;
            self.descend(cur, cost + inc)?;
            cur[i] = old;
        }
        Ok(())
    }
}

/// `F_i(f)` on non-negative rows and `x_hat` on negative ones, minimised
/// over every `f` in `Lambda`.
pub fn brute_force_linear<S: Scalar>(p: &LinearFreProblem<S>, cap: u128) -> Result<(Vec<S>, S), OptError> {
    let base = &p.base;
    let x_hat = max_solution(base).ok_or(SolveError::Infeasible)?;
    let sets = index_sets(base, &x_hat);
    let cols: Vec<usize> = (0..base.n()).filter(|&j| base.b[j] > S::tol()).collect();
    let size = cols.iter().fold(1u128, |acc, &j| acc.saturating_mul(sets[j].len() as u128));
    if size > cap {
        return Err(SolveError::CapExceeded { size, cap }.into());
    }
    let mut choice = vec![0usize; cols.len()];
    let mut best: Option<(Vec<S>, S)> = None;
    loop {
        let mut x = vec![S::zero(); base.m()];
        for (k, &j) in cols.iter().enumerate() {
            let i = sets[j][choice[k]];
            x[i] = x[i].max(need(base, &x_hat, i, j));
        }
        for i in 0..base.m() {
            if p.c[i] < S::zero() {
                x[i] = x_hat[i];
            }
        }
        let z = p.cost(&x);
        if best.as_ref().map_or(true, |(_, b)| z < *b) {
            best = Some((x, z));
        }
        // odometer step
        let mut k = 0;
        loop {
            if k == cols.len() {
                return best.ok_or(SolveError::Infeasible.into());
            }
            choice[k] += 1;
            if choice[k] < sets[cols[k]].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}
