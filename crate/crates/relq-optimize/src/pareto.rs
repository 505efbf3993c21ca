use relq_grade::Scalar;
use relq_solve::FreProblem;
use serde::Serialize;

use crate::ga::run;
use crate::{GaConfig, OptError};

/// `z1` dominates `z2` when it is no worse everywhere and differs somewhere.
pub fn dominates<S: Scalar>(z1: &[S], z2: &[S]) -> bool {
    z1.iter().zip(z2).all(|(a, b)| a <= b) && z1.iter().zip(z2).any(|(a, b)| a < b)
}

/// Mutually non-dominated points, at most one per criterion vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct ParetoArchive<S> {
    pub points: Vec<(Vec<S>, Vec<S>)>,
}

impl<S: Scalar> Default for ParetoArchive<S> {
    fn default() -> Self {
        ParetoArchive { points: Vec::new() }
    }
}

impl<S: Scalar> ParetoArchive<S> {
    /// Adds `(x, z)` unless something in the archive dominates or equals it;
    /// evicts what it dominates. Returns whether it was kept.
    pub fn insert(&mut self, x: Vec<S>, z: Vec<S>) -> bool {
        let tol = S::tol();
        let same = |a: &[S]| a.iter().zip(&z).all(|(p, q)| (*p - *q).abs() <= tol);
        if self.points.iter().any(|(_, w)| same(w) || dominates(w, &z)) {
            return false;
        }
        self.points.retain(|(_, w)| !dominates(&z, w));
        self.points.push((x, z));
        true
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Weighted-sum genetic runs over a spread of weights; every evaluated
/// point goes through the archive.
pub fn optimize_multiobjective<S: Scalar>(
    p: &FreProblem<S>,
    fs: &[&dyn Fn(&[S]) -> S],
    cfg: &GaConfig,
) -> Result<ParetoArchive<S>, OptError> {
    if fs.len() < 2 {
        return Err(OptError::Domain(format!("need at least 2 objectives, got {}", fs.len())));
    }
    let k = fs.len();
    // unit vectors first, then the uniform blend
    let mut weights: Vec<Vec<S>> = (0..k)
        .map(|c| (0..k).map(|d| if c == d { S::one() } else { S::zero() }).collect())
        .collect();
    weights.push(vec![S::one() / S::lit(k as f64); k]);
    let mut archive = ParetoArchive::default();
    for (r, w) in weights.iter().enumerate() {
        let scalar = |x: &[S]| fs.iter().zip(w).fold(S::zero(), |acc, (f, &wi)| acc + wi * f(x));
        let run_cfg = GaConfig { rng_seed: cfg.rng_seed.wrapping_add(r as u64), ..cfg.clone() };
        run(p, &scalar, &run_cfg, &mut |x, _| {
            archive.insert(x.to_vec(), fs.iter().map(|f| f(x)).collect());
        })?;
    }
    Ok(archive)
}
