//! Brute-force reference implementations over finite grids.
//!
//! These are slow by design and exist to cross-check the solvers.

use relq_grade::Scalar;

use crate::{is_solution, FreProblem};

/// `{0, 1/steps, ..., 1}`.
pub fn grid<S: Scalar>(steps: usize) -> Vec<S> {
    (0..=steps).map(|k| S::lit(k as f64 / steps as f64)).collect()
}

/// Every vector of length `len` over `values`, in odometer order.
pub fn grid_vectors<S: Scalar>(values: &[S], len: usize) -> Vec<Vec<S>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                values.iter().map(move |&g| {
                    let mut w = v.clone();
                    w.push(g);
                    w
                })
            })
            .collect();
    }
    out
}

/// All grid vectors solving `x o A = b`.
pub fn grid_solutions<S: Scalar>(p: &FreProblem<S>, values: &[S]) -> Vec<Vec<S>> {
    grid_vectors(values, p.m()).into_iter().filter(|x| is_solution(p, x)).collect()
}

/// Bitmask over the `values.len()^n` grid vectors `x` with
/// `max_j min(a_j, x_j) = b`, for one row of `A (x) x = b` (`n <= 3` for
/// five-point grids so the mask fits 128 bits).
pub fn row_solution_mask<S: Scalar>(row: &[S], b: S, values: &[S]) -> u128 {
    let n = row.len();
    let total = values.len().pow(n as u32);
    assert!(total <= 128, "grid too large for a u128 mask");
    let mut mask = 0u128;
    for code in 0..total {
        let mut c = code;
        let mut v = S::zero();
        for &a in row {
            v = v.max(a.min(values[c % values.len()]));
            c /= values.len();
        }
        if v == b {
            mask |= 1 << code;
        }
    }
    mask
}
