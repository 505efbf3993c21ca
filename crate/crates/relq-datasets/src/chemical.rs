use relq_grade::Scalar;
use relq_relation::{compose, Composition, Relation};
use serde::Serialize;

use crate::DatasetError;

/// Which weights of the five-node flow network may be non-zero: row `i`
/// is a node balance, column `j` one of the unmeasured streams.
pub fn chemical_mask<S: Scalar>() -> Relation<S> {
    Relation::from_f64_rows(&[
        &[1., 1., 0., 0., 0.],
        &[0., 1., 1., 0., 0.],
        &[0., 0., 1., 1., 0.],
        &[1., 0., 0., 0., 1.],
        &[0., 0., 0., 0., 1.],
    ])
    .expect("fixed shape")
}

/// Scaled unmeasured flows, one per mask column.
pub const CHEMICAL_FLOWS: [f64; 5] = [0.5, 0.8, 0.4, 0.3, 0.6];

/// A weight matrix on the mask; the embedded targets are its outputs.
pub const CHEMICAL_HIDDEN: [[f64; 5]; 5] = [
    [0.6, 0.3, 0.0, 0.0, 0.0],
    [0.0, 0.5, 0.8, 0.0, 0.0],
    [0.0, 0.0, 0.7, 0.4, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.9],
    [0.0, 0.0, 0.0, 0.0, 0.5],
];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct ChemicalFlowReport<S> {
    pub q: Vec<S>,
    pub r: Vec<S>,
    pub w: Relation<S>,
    pub outputs: Vec<S>,
    /// `max_i |y_i - r_i|`.
    pub residual: S,
    pub converged: bool,
    pub sweeps: usize,
    /// Rows whose target exceeds every product the mask allows.
    pub infeasible_rows: Vec<usize>,
}

/// Consistent targets from the hidden weights, or with the last target
/// raised above anything its single stream can reach.
pub fn chemical_targets<S: Scalar>(consistent: bool) -> Vec<S> {
    let mut r: Vec<S> = CHEMICAL_HIDDEN
        .iter()
        .map(|row| S::lit(row.iter().zip(CHEMICAL_FLOWS).fold(0.0, |m, (&w, q)| f64::max(m, w * q))))
        .collect();
    if !consistent {
        r[4] = S::lit(0.7);
    }
    r
}

/// `y = f(max_j w_ij q_j)` trained on the embedded synthetic flows.
pub fn demo_chemical_flow<S: Scalar>(consistent: bool) -> Result<ChemicalFlowReport<S>, DatasetError> {
    let q = CHEMICAL_FLOWS.iter().map(|&v| S::lit(v)).collect::<Vec<_>>();
    demo_chemical_flow_with(&chemical_mask(), &q, &chemical_targets(consistent), S::lit(0.5), 10_000)
}

/// Delta-style training of the masked weights for `W o q = r` under
/// max-product.
///
/// Weights start at the mask. A row whose output overshoots by `d` lowers
/// every overshooting weight by `eta * d`, never below the level where its
/// product meets the target. Masked-out weights are never touched. Training
/// stops when a sweep changes nothing or after `max_sweeps`; it has
/// converged when the residual is below `1e-6`.
pub fn demo_chemical_flow_with<S: Scalar>(
    mask: &Relation<S>,
    q: &[S],
    r: &[S],
    eta: S,
    max_sweeps: usize,
) -> Result<ChemicalFlowReport<S>, DatasetError> {
    let (n, m) = (mask.rows(), mask.cols());
    if q.len() != m || r.len() != n {
        return Err(DatasetError::Domain(format!("{n}x{m} mask with {} flows and {} targets", q.len(), r.len())));
    }
    if !(eta > S::zero() && eta <= S::one()) {
        return Err(DatasetError::Domain("eta must lie in (0, 1]".into()));
    }
    let allowed = |i: usize, j: usize| mask.get(i, j) > S::zero();
    let mut w = mask.map(|v| if v > S::zero() { S::one() } else { S::zero() });
    let output = |w: &Relation<S>, i: usize| (0..m).fold(S::zero(), |acc, j| acc.max(w.get(i, j) * q[j]));
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        let mut changed = false;
        for i in 0..n {
            let d = output(&w, i) - r[i];
            if d <= S::zero() {
                continue;
            }
            for j in (0..m).filter(|&j| allowed(i, j)) {
                let old = w.get(i, j);
                if old * q[j] > r[i] {
                    let floor = r[i] / q[j];
                    let new = (old - eta * d).max(floor);
                    if new < old {
                        w.set(i, j, new);
                        changed = true;
                    }
                }
            }
        }
        sweeps += 1;
        if !changed {
            break;
        }
    }
    let outputs = compose(&Composition::MaxProduct, &w, &Relation::column_vector(q)?)?.col(0);
    let residual = outputs.iter().zip(r).fold(S::zero(), |acc, (&y, &t)| acc.max((y - t).abs()));
    let infeasible_rows =
        (0..n).filter(|&i| (0..m).filter(|&j| allowed(i, j)).fold(S::zero(), |acc, j| acc.max(q[j])) < r[i]).collect();
    Ok(ChemicalFlowReport {
        q: q.to_vec(),
        r: r.to_vec(),
        w,
        outputs,
        residual,
        converged: residual < S::lit(1e-6),
        sweeps,
        infeasible_rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consistent_flows_converge() {
        let rep = demo_chemical_flow::<f64>(true).unwrap();
        assert!(rep.converged, "{rep:?}");
        assert!(rep.infeasible_rows.is_empty());
        let mask = chemical_mask::<f64>();
        for i in 0..5 {
            for j in 0..5 {
                if mask.get(i, j) == 0.0 {
                    assert_eq!(rep.w.get(i, j), 0.0);
                }
            }
        }
    }

    #[test]
    fn inconsistent_flows_are_flagged() {
        let rep = demo_chemical_flow::<f64>(false).unwrap();
        assert!(!rep.converged);
        assert_eq!(rep.infeasible_rows, vec![4]);
        assert!((rep.residual - 0.1).abs() < 1e-12);
    }
}
