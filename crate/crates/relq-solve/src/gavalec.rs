//! Solvability and unique solvability of `A (x) x = b` in max-min algebra.
//!
//! Here `A` is `m x n`, `x` a column of length `n` and `b` a column of
//! length `m`. For the row form `x o A = b` pass the transpose of `A`.

use relq_grade::Scalar;
use relq_relation::Relation;

use crate::SolveError;

/// Upper bound for one unknown; `Top` when no row constrains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XBar<S> {
    Value(S),
    Top,
}

impl<S: Scalar> XBar<S> {
    /// The bound inside [0, 1], where the top element is 1.
    pub fn grade(self) -> S {
        match self {
            XBar::Value(v) => v,
            XBar::Top => S::one(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GavalecCertificate<S> {
    pub solvable: bool,
    pub unique: bool,
    pub x_bar: Vec<XBar<S>>,
    /// `I_j = {i : a_ij >= b_i = xbar_j}`.
    pub i_sets: Vec<Vec<usize>>,
    /// `K_j = {i : a_ij = b_i < xbar_j}`.
    pub k_sets: Vec<Vec<usize>>,
    /// Matrix reads made while building the certificate.
    pub cells_visited: usize,
}

pub fn gavalec_certificate<S: Scalar>(a: &Relation<S>, b: &[S]) -> Result<GavalecCertificate<S>, SolveError> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(SolveError::Domain(format!("b has {} entries, A has {m} rows", b.len())));
    }
    let mut visits = 0;
    let mut x_bar = Vec::with_capacity(n);
    for j in 0..n {
        let mut bound = XBar::Top;
        for (i, &bi) in b.iter().enumerate() {
            visits += 1;
            if a.get(i, j) > bi {
                bound = match bound {
                    XBar::Value(v) if v <= bi => XBar::Value(v),
                    _ => XBar::Value(bi),
                };
            }
        }
        x_bar.push(bound);
    }
    let mut i_sets = vec![Vec::new(); n];
    let mut k_sets = vec![Vec::new(); n];
    for j in 0..n {
        let xb = x_bar[j].grade();
        for (i, &bi) in b.iter().enumerate() {
            visits += 1;
            let aij = a.get(i, j);
            if aij >= bi && bi == xb {
                i_sets[j].push(i);
            } else if aij == bi && bi < xb {
                k_sets[j].push(i);
            }
        }
    }
    // covering check on the index lists alone
    let mut in_k = vec![false; m];
    let mut count_i = vec![0usize; m];
    for j in 0..n {
        for &i in &k_sets[j] {
            in_k[i] = true;
        }
        for &i in &i_sets[j] {
            count_i[i] += 1;
        }
    }
    let solvable = (0..m).all(|i| in_k[i] || count_i[i] > 0);
    // I covers M - uK minimally: each I_j owns a point nobody else covers.
    // An unknown pinned at the bottom element cannot move, so it is exempt.
    let unique = solvable
        && (0..n).all(|j| {
            x_bar[j].grade() == S::zero() || i_sets[j].iter().any(|&i| !in_k[i] && count_i[i] == 1)
        });
    Ok(GavalecCertificate { solvable, unique, x_bar, i_sets, k_sets, cells_visited: visits })
}

/// Allocation-free `(solvable, unique)` for row-major `a` with `m, n <= 64`.
pub fn gavalec_flags<S: Scalar>(a: &[S], m: usize, n: usize, b: &[S]) -> (bool, bool) {
    assert!(m <= 64 && n <= 64 && a.len() == m * n && b.len() == m, "small instances only");
    let mut i_masks = [0u64; 64];
    let mut pinned = 0u64;
    let mut k_all = 0u64;
    for j in 0..n {
        let mut xb = S::one();
        for i in 0..m {
            if a[i * n + j] > b[i] && b[i] < xb {
                xb = b[i];
            }
        }
        let (mut im, mut km) = (0u64, 0u64);
        for i in 0..m {
            let aij = a[i * n + j];
            if aij >= b[i] && b[i] == xb {
                im |= 1 << i;
            } else if aij == b[i] && b[i] < xb {
                km |= 1 << i;
            }
        }
        i_masks[j] = im;
        k_all |= km;
        if xb == S::zero() {
            pinned |= 1 << j;
        }
    }
    let (mut once, mut twice) = (0u64, 0u64);
    for &im in &i_masks[..n] {
        twice |= once & im;
        once |= im;
    }
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let solvable = (once | k_all) == full;
    let single = once & !twice & !k_all;
    let unique = solvable && (0..n).all(|j| pinned & (1 << j) != 0 || i_masks[j] & single != 0);
    (solvable, unique)
}
