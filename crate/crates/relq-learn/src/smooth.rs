use relq_grade::{Scalar, TNorm};
use relq_relation::Relation;

use crate::{LearnError, LearnReport, TrainerConfig, TrainingSet};

/// Derivative surrogate `dO_j / dw_sj` of a max-min neuron.
///
/// `rest` is the largest `min(x_i, w_ij)` over the other inputs.
fn slope<S: Scalar>(x: S, w: S, rest: S) -> S {
    if x < w {
        if x >= rest {
            x
        } else {
            x * x
        }
    } else if w >= rest {
        S::one()
    } else {
        w
    }
}

/// Gradient-style training of a max-min network with smoothed derivatives.
///
/// Starts from all-ones weights, uses `eta` as the step size and descends
/// on `E = 1/2 sum (T_j - O_j)^2`. Stops once every output is within
/// `epsilon` of its target; `error_trace` holds `E` per epoch and
/// `monotone` records whether it never rose.
pub fn smooth_derivative_train<S: Scalar>(
    ts: &TrainingSet<S>,
    cfg: &TrainerConfig<S>,
) -> Result<LearnReport<S>, LearnError> {
    cfg.validate()?;
    if cfg.tnorm != TNorm::Min {
        return Err(LearnError::Domain(format!("smooth-derivative training is max-min only, got {}", cfg.tnorm)));
    }
    let t = TNorm::Min;
    let (n, m) = (ts.n(), ts.m());
    let mut w = Relation::filled(n, m, S::one())?;
    let half = S::lit(0.5);
    let energy = |w: &Relation<S>| {
        (0..ts.samples()).fold(S::zero(), |acc, i| {
            ts.output(&t, w, i).iter().zip(ts.targets.row(i)).fold(acc, |a, (&o, &b)| a + half * (b - o) * (b - o))
        })
    };
    let worst = |w: &Relation<S>| {
        (0..ts.samples()).fold(S::zero(), |acc, i| {
            ts.output(&t, w, i).iter().zip(ts.targets.row(i)).fold(acc, |a, (&o, &b)| a.max((b - o).abs()))
        })
    };
    let mut trace = Vec::new();
    let mut monotone = true;
    let mut epochs = 0;
    while worst(&w) > cfg.epsilon {
        if epochs == cfg.max_epochs {
            return Ok(LearnReport { w, converged: false, sweeps: epochs, error_trace: trace, monotone, flagged: vec![] });
        }
        epochs += 1;
        for i in 0..ts.samples() {
            let x = ts.inputs.row(i).to_vec();
            let out = ts.output(&t, &w, i);
            let mut next = w.clone();
            for j in 0..m {
                let err = out[j] - ts.targets.get(i, j);
                if err == S::zero() {
                    continue;
                }
                for s in 0..n {
                    let rest = (0..n).filter(|&q| q != s).fold(S::zero(), |a, q| a.max(x[q].min(w.get(q, j))));
                    let c = slope(x[s], w.get(s, j), rest);
                    next.set(s, j, w.get(s, j) - cfg.eta * err * c);
                }
            }
            w = next;
        }
        let e = energy(&w);
        if let Some(&prev) = trace.last() {
            monotone &= e <= prev;
        }
        trace.push(e);
    }
    Ok(LearnReport { w, converged: true, sweeps: epochs, error_trace: trace, monotone, flagged: vec![] })
}
