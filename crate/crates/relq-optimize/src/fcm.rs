use relq_grade::Scalar;
use serde::Serialize;

use crate::OptError;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct FcmResult<S> {
    pub centers: Vec<Vec<S>>,
    /// `memberships[c][p]`; every column sums to one.
    pub memberships: Vec<Vec<S>>,
    pub objective: S,
    /// Objective after each iteration; non-increasing.
    pub history: Vec<S>,
    pub iterations: usize,
}

fn dist2<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (&x, &y)| acc + (x - y) * (x - y))
}

/// Fuzzy c-means with exponent `m`, alternating membership and center
/// updates until no center moves more than `tol`.
pub fn fuzzy_c_means<S: Scalar>(
    points: &[Vec<S>],
    clusters: usize,
    m: S,
    tol: S,
    max_iter: usize,
) -> Result<FcmResult<S>, OptError> {
    if clusters == 0 || clusters > points.len() {
        return Err(OptError::Domain(format!("{clusters} clusters for {} points", points.len())));
    }
    if m <= S::one() {
        return Err(OptError::Domain(format!("fuzzifier {m} must exceed 1")));
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(OptError::Domain("points differ in dimension".into()));
    }

    // farthest-point seeding from the first point
    let mut centers = vec![points[0].clone()];
    while centers.len() < clusters {
        let far = points
            .iter()
            .max_by(|a, b| {
                let da = centers.iter().map(|c| dist2(a, c)).fold(S::infinity(), S::min);
                let db = centers.iter().map(|c| dist2(b, c)).fold(S::infinity(), S::min);
                da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("points is non-empty");
        centers.push(far.clone());
    }

    let mut history = Vec::new();
    let mut u = memberships(points, &centers, m);
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let next = update_centers(points, &u, m, &centers);
        let moved = centers.iter().zip(&next).map(|(a, b)| dist2(a, b).sqrt()).fold(S::zero(), S::max);
        centers = next;
        u = memberships(points, &centers, m);
        history.push(objective(points, &centers, &u, m));
        if moved < tol {
            break;
        }
    }
    let objective = objective(points, &centers, &u, m);
    Ok(FcmResult { centers, memberships: u, objective, history, iterations })
}

/// Membership update; a point sitting on centers splits itself among them.
fn memberships<S: Scalar>(points: &[Vec<S>], centers: &[Vec<S>], m: S) -> Vec<Vec<S>> {
    let c = centers.len();
    let mut u = vec![vec![S::zero(); points.len()]; c];
    let e = S::one() / (m - S::one());
    for (p, x) in points.iter().enumerate() {
        let d: Vec<S> = centers.iter().map(|v| dist2(x, v)).collect();
        let zeros: Vec<usize> = (0..c).filter(|&k| d[k] == S::zero()).collect();
        if !zeros.is_empty() {
            let share = S::one() / S::lit(zeros.len() as f64);
            for k in zeros {
                u[k][p] = share;
            }
            continue;
        }
        // squared distances, so the exponent is 1/(m-1)
        for k in 0..c {
            let s = d.iter().fold(S::zero(), |acc, &dl| acc + (d[k] / dl).powf(e));
            u[k][p] = S::one() / s;
        }
    }
    u
}

fn update_centers<S: Scalar>(points: &[Vec<S>], u: &[Vec<S>], m: S, old: &[Vec<S>]) -> Vec<Vec<S>> {
    u.iter()
        .zip(old)
        .map(|(row, prev)| {
            let w: Vec<S> = row.iter().map(|&v| v.powf(m)).collect();
            let total = w.iter().fold(S::zero(), |a, &b| a + b);
            if total == S::zero() {
                return prev.clone();
            }
            (0..prev.len())
                .map(|d| points.iter().zip(&w).fold(S::zero(), |a, (x, &wi)| a + wi * x[d]) / total)
                .collect()
        })
        .collect()
}

fn objective<S: Scalar>(points: &[Vec<S>], centers: &[Vec<S>], u: &[Vec<S>], m: S) -> S {
    let mut z = S::zero();
    for (c, v) in centers.iter().enumerate() {
        for (p, x) in points.iter().enumerate() {
            z = z + u[c][p].powf(m) * dist2(x, v);
        }
    }
    z
}
