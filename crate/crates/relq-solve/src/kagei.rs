use relq_grade::{sigma_alpha, Scalar};
use relq_relation::Relation;

use crate::SolveError;

/// Slack used to realise the strict inequalities of unique outputs.
pub const KAGEI_SLACK: f64 = 1e-6;

const MAX_SWEEPS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct KageiOne<S> {
    /// Largest solution, from the fixpoint iteration.
    pub r_plus: Vec<S>,
    /// Cell-wise meet of the single-pair closed forms. Only an upper bound
    /// in general; it need not solve the system with several pairs.
    pub closed_form: Vec<S>,
    pub sweeps: usize,
}

fn check_pairs<S>(pairs: &[(Vec<S>, usize)], len: usize, what: &str) -> Result<(), SolveError> {
    for (k, (p, star)) in pairs.iter().enumerate() {
        if p.len() != len {
            return Err(SolveError::Domain(format!("pair {k}: input has {} entries, expected {len}", p.len())));
        }
        if *star >= len && what == "x" {
            return Err(SolveError::Domain(format!("pair {k}: output index {star} out of range")));
        }
    }
    Ok(())
}

/// Largest `R` on `X` with `max_x p(x) ^ R(x) = p(x*) ^ R(x*)` for every pair.
///
/// `caps` bounds `R` from above cell-wise (all ones when absent). Indices
/// are 0-based.
pub fn kagei_type1<S: Scalar>(
    pairs: &[(Vec<S>, usize)],
    caps: Option<&[S]>,
) -> Result<KageiOne<S>, SolveError> {
    let n = pairs.first().map_or(caps.map_or(0, <[S]>::len), |p| p.0.len());
    check_pairs(pairs, n, "x")?;
    let caps: Vec<S> = match caps {
        Some(c) if c.len() != n => return Err(SolveError::Domain("caps length differs from the input length".into())),
        Some(c) => c.to_vec(),
        None => vec![S::one(); n],
    };
    let mut r = caps.clone();
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let mut changed = false;
        for (p, star) in pairs {
            let b = p[*star].min(r[*star]);
            for x in (0..n).filter(|x| x != star) {
                if p[x].min(r[x]) > b {
                    r[x] = b;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let closed_form = (0..n)
        .map(|x| {
            pairs.iter().fold(caps[x], |acc, (p, star)| {
                acc.min(sigma_alpha(p[x], p[*star].min(caps[*star])))
            })
        })
        .collect();
    Ok(KageiOne { r_plus: r, closed_form, sweeps })
}

#[derive(Debug, Clone, PartialEq)]
pub struct KageiTwo<S> {
    pub r: Relation<S>,
    pub sweeps: usize,
}

/// Quasi-largest `R` on `X x Y` for which every pair's output `y*` wins strictly.
pub fn kagei_type2_unique<S: Scalar>(pairs: &[(Vec<S>, usize)], ydim: usize) -> Result<KageiTwo<S>, SolveError> {
    let n = pairs.first().map_or(0, |p| p.0.len());
    if n == 0 || ydim == 0 {
        return Err(SolveError::Domain("empty input or output space".into()));
    }
    check_pairs(pairs, n, "y")?;
    for (k, (p, y)) in pairs.iter().enumerate() {
        if *y >= ydim {
            return Err(SolveError::Domain(format!("pair {k}: output index {y} out of range")));
        }
        if let Some((l, _)) = pairs[..k].iter().enumerate().find(|(_, (q, z))| q == p && z != y) {
            return Err(SolveError::Unsatisfiable(format!("pairs {l} and {k} share an input but not an output")));
        }
    }
    let s = S::lit(KAGEI_SLACK);
    let mut r = Relation::filled(n, ydim, S::one())?;
    let height = |r: &Relation<S>, p: &[S], y: usize| (0..n).fold(S::zero(), |m, x| m.max(p[x].min(r.get(x, y))));
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let mut changed = false;
        for (p, ystar) in pairs {
            let b = height(&r, p, *ystar);
            let target = (b - s).max(S::zero());
            for x in 0..n {
                for y in (0..ydim).filter(|y| y != ystar) {
                    if p[x].min(r.get(x, y)) > b - s && r.get(x, y) != target {
                        r.set(x, y, target);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            return Err(SolveError::Unsatisfiable("no fixpoint within the sweep limit".into()));
        }
    }
    for (k, (p, ystar)) in pairs.iter().enumerate() {
        let win = height(&r, p, *ystar);
        if (0..ydim).any(|y| y != *ystar && height(&r, p, y) >= win) {
            return Err(SolveError::Unsatisfiable(format!("pair {k} has no strict winner")));
        }
    }
    Ok(KageiTwo { r, sweeps })
}
