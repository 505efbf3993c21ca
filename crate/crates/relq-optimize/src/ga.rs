use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relq_grade::Scalar;
use relq_relation::Composition;
use relq_solve::{index_sets, is_solution, max_solution, FreProblem, SolveError};
use serde::{Deserialize, Serialize};

use crate::{equivalence_reduce, need, OptError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub selection_q: f64,
    pub mutation_prob: f64,
    pub crossover_prob: f64,
    pub rng_seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 40,
            generations: 200,
            selection_q: 0.1,
            mutation_prob: 0.3,
            crossover_prob: 0.7,
            rng_seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), OptError> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        if self.population_size == 0 {
            return Err(OptError::Domain("population_size must be positive".into()));
        }
        if !(self.selection_q > 0.0 && self.selection_q < 1.0) {
            return Err(OptError::Domain(format!("selection_q = {} is outside (0, 1)", self.selection_q)));
        }
        if !unit(self.mutation_prob) || !unit(self.crossover_prob) {
            return Err(OptError::Domain("probabilities must lie in [0, 1]".into()));
        }
        Ok(())
    }
}

/// Result of a genetic run.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct GaRun<S> {
    pub x_best: Vec<S>,
    pub f_best: S,
    /// Best objective so far, one entry per generation (initial population first).
    pub history: Vec<S>,
    pub evaluations: usize,
    /// Individuals that failed the feasibility audit; zero in a correct run.
    pub infeasible_seen: usize,
    pub certificate: &'static str,
}

/// Selection weights `q'(1-q)^(r-1)` for ranks `1..=size`; they sum to one.
pub fn rank_probabilities(size: usize, q: f64) -> Vec<f64> {
    let qq = q / (1.0 - (1.0 - q).powi(size as i32));
    (0..size).map(|r| qq * (1.0 - q).powi(r as i32)).collect()
}

/// Precomputed data every operator needs.
struct Ctx<'a, S> {
    p: &'a FreProblem<S>,
    x_hat: Vec<S>,
    sets: Vec<Vec<usize>>,
    /// Columns with positive right-hand side.
    cols: Vec<usize>,
}

impl<'a, S: Scalar> Ctx<'a, S> {
    fn new(p: &'a FreProblem<S>) -> Result<Self, OptError> {
        p.validate()?;
        let x_hat = max_solution(p).ok_or(SolveError::Infeasible)?;
        let sets = index_sets(p, &x_hat);
        let cols = (0..p.n()).filter(|&j| p.b[j] > S::tol()).collect();
        Ok(Ctx { p, x_hat, sets, cols })
    }

    fn need(&self, i: usize, j: usize) -> S {
        need(self.p, &self.x_hat, i, j)
    }

    fn satisfied(&self, x: &[S], j: usize) -> bool {
        self.sets[j].iter().any(|&i| x[i] >= self.need(i, j) - S::tol())
    }

    /// Clips into `[0, x_hat]` and raises a random binder for each unmet
    /// column. `None` if some column can only be met through `banned`.
    fn repair<R: Rng>(&self, x: &[S], banned: Option<usize>, rng: &mut R) -> Option<Vec<S>> {
        let mut y: Vec<S> = x.iter().zip(&self.x_hat).map(|(&v, &h)| v.max(S::zero()).min(h)).collect();
        let mut cols = self.cols.clone();
        cols.shuffle(rng);
        for j in cols {
            if self.satisfied(&y, j) {
                // pin binders that only meet the column within tolerance,
                // otherwise the search creeps down through the slack
                if !self.sets[j].iter().any(|&i| y[i] >= self.need(i, j)) {
                    let i = self.sets[j].iter().copied().find(|&i| y[i] >= self.need(i, j) - S::tol()).expect("satisfied");
                    y[i] = self.need(i, j);
                }
                continue;
            }
            let choices: Vec<usize> = self.sets[j].iter().copied().filter(|&i| Some(i) != banned).collect();
            let &i = choices.choose(rng)?;
            y[i] = y[i].max(self.need(i, j));
        }
        Some(y)
    }

    fn mutate<R: Rng>(&self, x: &[S], rng: &mut R) -> Vec<S> {
        let mut d: Vec<usize> = (0..x.len()).filter(|&k| x[k] > S::tol()).collect();
        d.shuffle(rng);
        for k in d {
            let v = if rng.gen_bool(0.5) {
                x[k] * S::lit(rng.gen::<f64>())
            } else {
                // snap to a value where some column changes status
                let mut stops: Vec<S> = std::iter::once(S::zero())
                    .chain(self.cols.iter().map(|&j| self.need(k, j)))
                    .filter(|&s| s < x[k] - S::tol())
                    .collect();
                stops.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
                stops.dedup_by(|a, b| (*a - *b).abs() <= S::tol());
                *stops.choose(rng).unwrap_or(&S::zero())
            };
            let mut y = x.to_vec();
            y[k] = v;
            if let Some(z) = self.repair(&y, Some(k), rng) {
                return z;
            }
        }
        x.to_vec()
    }

    fn crossover<R: Rng>(&self, x1: &[S], x2: &[S], rng: &mut R) -> (Vec<S>, Vec<S>) {
        let lambda = S::lit(rng.gen::<f64>());
        let toward: &[S] = if rng.gen_bool(0.5) { &self.x_hat } else { x2 };
        let c1 = contraction(x1, toward, lambda);
        let gamma = S::lit(1.0 + rng.gen::<f64>());
        let c2 = extraction(x2, x1, gamma);
        let fix = |c: Vec<S>, rng: &mut R| self.repair(&c, None, rng).expect("unrestricted repair succeeds");
        let c1 = fix(c1, rng);
        let c2 = fix(c2, rng);
        (c1, c2)
    }

    fn initialize<R: Rng>(&self, size: usize, rng: &mut R) -> Vec<Vec<S>> {
        let tol = S::tol();
        // lower bounds come from the reduced matrix so that capped cells do
        // not push the interval above x_hat
        let reduced = match self.p.composition {
            Composition::MaxMin => equivalence_reduce(&self.p.a, &self.p.b),
            _ => self.p.a.clone(),
        };
        let lb: Vec<S> = (0..self.p.m())
            .map(|i| {
                self.cols
                    .iter()
                    .filter(|&&j| reduced.get(i, j) >= self.p.b[j] - tol)
                    .map(|&j| self.need(i, j))
                    .fold(S::zero(), |a, v| a.max(v))
                    .min(self.x_hat[i])
            })
            .collect();
        (0..size)
            .map(|_| {
                let x: Vec<S> = lb
                    .iter()
                    .zip(&self.x_hat)
                    .map(|(&lo, &hi)| lo + (hi - lo) * S::lit(rng.gen::<f64>()))
                    .collect();
                self.repair(&x, None, rng).expect("unrestricted repair succeeds")
            })
            .collect()
    }
}

/// `lambda x + (1 - lambda) toward`.
pub(crate) fn contraction<S: Scalar>(x: &[S], toward: &[S], lambda: S) -> Vec<S> {
    x.iter().zip(toward).map(|(&a, &s)| (lambda * a + (S::one() - lambda) * s).clamp01()).collect()
}

/// `gamma x - (gamma - 1) away` for `gamma >= 1`.
pub(crate) fn extraction<S: Scalar>(x: &[S], away: &[S], gamma: S) -> Vec<S> {
    x.iter().zip(away).map(|(&a, &s)| (gamma * a - (gamma - S::one()) * s).clamp01()).collect()
}

/// Feasible point above `x` (after clipping into `[0, x_hat]`).
pub fn repair<S: Scalar, R: Rng>(x: &[S], p: &FreProblem<S>, rng: &mut R) -> Result<Vec<S>, OptError> {
    let ctx = Ctx::new(p)?;
    Ok(ctx.repair(x, None, rng).expect("unrestricted repair succeeds"))
}

pub fn ga_initialize<S: Scalar>(p: &FreProblem<S>, cfg: &GaConfig) -> Result<Vec<Vec<S>>, OptError> {
    cfg.validate()?;
    let ctx = Ctx::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    Ok(ctx.initialize(cfg.population_size, &mut rng))
}

/// Lowers one coordinate and repairs without raising it back. Returns `x`
/// unchanged when no coordinate can be lowered that way.
pub fn ga_mutate<S: Scalar, R: Rng>(x: &[S], p: &FreProblem<S>, rng: &mut R) -> Result<Vec<S>, OptError> {
    Ok(Ctx::new(p)?.mutate(x, rng))
}

/// Three-point crossover: a contraction of `x1` toward `x_hat` or `x2`,
/// and an extraction of `x2` away from `x1`, both repaired.
pub fn ga_crossover<S: Scalar, R: Rng>(
    x1: &[S],
    x2: &[S],
    p: &FreProblem<S>,
    rng: &mut R,
) -> Result<(Vec<S>, Vec<S>), OptError> {
    Ok(Ctx::new(p)?.crossover(x1, x2, rng))
}

/// Minimises `f` over the solution set with a search that stays feasible.
pub fn optimize_nonlinear_ga<S: Scalar>(
    p: &FreProblem<S>,
    f: &dyn Fn(&[S]) -> S,
    cfg: &GaConfig,
) -> Result<GaRun<S>, OptError> {
    run(p, f, cfg, &mut |_, _| {})
}

/// The genetic loop; `observe` sees every evaluated point with its value.
pub(crate) fn run<S: Scalar>(
    p: &FreProblem<S>,
    f: &dyn Fn(&[S]) -> S,
    cfg: &GaConfig,
    observe: &mut dyn FnMut(&[S], S),
) -> Result<GaRun<S>, OptError> {
    cfg.validate()?;
    let ctx = Ctx::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let size = cfg.population_size;
    let weights = rank_probabilities(size, cfg.selection_q);
    let mut evaluations = 0;
    let mut infeasible_seen = 0;
    let mut score = |pop: Vec<Vec<S>>, evals: &mut usize, bad: &mut usize| -> Vec<(S, Vec<S>)> {
        let mut scored: Vec<(S, Vec<S>)> = pop
            .into_iter()
            .map(|x| {
                *evals += 1;
                if !is_solution(p, &x) {
                    *bad += 1;
                }
                let v = f(&x);
                observe(&x, v);
                (v, x)
            })
            .collect();
        scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        scored
    };

    let mut pop = score(ctx.initialize(size, &mut rng), &mut evaluations, &mut infeasible_seen);
    let mut best = pop[0].clone();
    let mut history = vec![best.0];
    for _ in 0..cfg.generations {
        let pick = |rng: &mut ChaCha8Rng| {
            let mut u = rng.gen::<f64>();
            for (r, w) in weights.iter().enumerate() {
                if u < *w {
                    return r;
                }
                u -= w;
            }
            size - 1
        };
        let mut next = vec![best.1.clone()];
        while next.len() < size {
            let a = pop[pick(&mut rng)].1.clone();
            let b = pop[pick(&mut rng)].1.clone();
            let (mut c1, mut c2) = if rng.gen_bool(cfg.crossover_prob) { ctx.crossover(&a, &b, &mut rng) } else { (a, b) };
            if rng.gen_bool(cfg.mutation_prob) {
                c1 = ctx.mutate(&c1, &mut rng);
            }
            if rng.gen_bool(cfg.mutation_prob) {
                c2 = ctx.mutate(&c2, &mut rng);
            }
            next.push(c1);
            if next.len() < size {
                next.push(c2);
            }
        }
        pop = score(next, &mut evaluations, &mut infeasible_seen);
        if pop[0].0 < best.0 {
            best = pop[0].clone();
        }
        history.push(best.0);
    }
    Ok(GaRun {
        f_best: best.0,
        x_best: best.1,
        history,
        evaluations,
        infeasible_seen,
        certificate: "ga-heuristic",
    })
}
