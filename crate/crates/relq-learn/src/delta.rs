use relq_grade::{Scalar, TNorm};
use relq_relation::Relation;

use crate::{LearnError, LearnReport, TrainerConfig, TrainingSet};

/// Fuzzy delta rule for max-min networks.
pub fn delta_rule_basic<S: Scalar>(ts: &TrainingSet<S>, cfg: &TrainerConfig<S>) -> Result<LearnReport<S>, LearnError> {
    if cfg.tnorm != TNorm::Min {
        return Err(LearnError::Domain(format!("the basic rule is max-min only, got {}", cfg.tnorm)));
    }
    delta_rule_j(ts, cfg)
}

/// Fuzzy delta rule for max-t networks.
///
/// Each sample is trained until its worst output overshoot is at most
/// `epsilon`: every weight with `t(w_kj, a_ik) > b_ij` drops by
/// `eta * (b'_ij - b_ij)`. Passes over the samples repeat until one
/// changes nothing. Exceeding `max_epochs` sweeps returns the partial
/// matrix with `converged = false`.
pub fn delta_rule_j<S: Scalar>(ts: &TrainingSet<S>, cfg: &TrainerConfig<S>) -> Result<LearnReport<S>, LearnError> {
    cfg.validate()?;
    if !cfg.tnorm.is_continuous() {
        return Err(LearnError::Domain(format!("t-norm {} is not continuous", cfg.tnorm)));
    }
    let t = cfg.tnorm;
    let (n, m) = (ts.n(), ts.m());
    let mut w = Relation::filled(n, m, S::one())?;
    let mut trace = Vec::new();
    let mut sweeps = 0;
    let mut monotone = true;
    loop {
        let mut pass_changed = false;
        for i in 0..ts.samples() {
            loop {
                let out = ts.output(&t, &w, i);
                let mut changed = false;
                for j in 0..m {
                    let b = ts.targets.get(i, j);
                    let delta = out[j] - b;
                    if delta <= cfg.epsilon {
                        continue;
                    }
                    for k in 0..n {
                        let old = w.get(k, j);
                        if t.apply(old, ts.inputs.get(i, k)) > b {
                            let new = (old - cfg.eta * delta).max(S::zero());
                            monotone &= new <= old;
                            w.set(k, j, new);
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
                pass_changed = true;
                sweeps += 1;
                trace.push(ts.total_error(&t, &w));
                if sweeps >= cfg.max_epochs {
                    return Ok(LearnReport { w, converged: false, sweeps, error_trace: trace, monotone, flagged: vec![] });
                }
            }
        }
        if !pass_changed {
            break;
        }
    }
    Ok(LearnReport { w, converged: true, sweeps, error_trace: trace, monotone, flagged: vec![] })
}

/// Extended delta rule B: `w_kj = min { b_ij : a_ik > b_ij }`, empty min 1.
///
/// One sweep per sample, so `sweeps = p`; the result does not depend on
/// sample order.
pub fn delta_rule_b<S: Scalar>(ts: &TrainingSet<S>) -> Result<LearnReport<S>, LearnError> {
    let mut w = Relation::filled(ts.n(), ts.m(), S::one())?;
    let mut trace = Vec::new();
    for i in 0..ts.samples() {
        for j in 0..ts.m() {
            let b = ts.targets.get(i, j);
            for k in 0..ts.n() {
                if ts.inputs.get(i, k) > b {
                    w.set(k, j, w.get(k, j).min(b));
                }
            }
        }
        trace.push(ts.total_error(&TNorm::Min, &w));
    }
    Ok(LearnReport { w, converged: true, sweeps: ts.samples(), error_trace: trace, monotone: true, flagged: vec![] })
}

/// Delta rule K: an overshooting weight jumps straight to the largest
/// `w` with `t(w, a_ik) = b_ij`. One sweep per sample.
///
/// The overshoot test `t(w, a) > b` is evaluated as `w > w_t(a, b)`, the
/// same condition for left-continuous norms but immune to the product
/// rounding onto `b`. When the target set is empty the cell takes the
/// residuum, the largest `w` with `t(w, a_ik) <= b_ij`, and is listed in
/// `flagged`.
pub fn delta_rule_k<S: Scalar>(ts: &TrainingSet<S>, t: &TNorm<S>) -> Result<LearnReport<S>, LearnError> {
    if !t.is_continuous() {
        return Err(LearnError::Domain(format!("t-norm {t} is not continuous")));
    }
    let mut w = Relation::filled(ts.n(), ts.m(), S::one())?;
    let mut trace = Vec::new();
    let mut flagged = Vec::new();
    for i in 0..ts.samples() {
        for j in 0..ts.m() {
            let b = ts.targets.get(i, j);
            for k in 0..ts.n() {
                let a = ts.inputs.get(i, k);
                let old = w.get(k, j);
                if old > t.residuum(a, b) {
                    let target = match t.max_so(a, b) {
                        Some(v) => v,
                        None => {
                            if !flagged.contains(&(k, j)) {
                                flagged.push((k, j));
                            }
                            t.residuum(a, b)
                        }
                    };
                    w.set(k, j, old.min(target));
                }
            }
        }
        trace.push(ts.total_error(t, &w));
    }
    Ok(LearnReport { w, converged: true, sweeps: ts.samples(), error_trace: trace, monotone: true, flagged })
}
