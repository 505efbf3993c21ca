use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relq_grade::TNorm;
use relq_learn::*;
use relq_relation::{compose, Composition, Relation64};
use relq_solve::{max_solution, FreProblem64};

fn grid_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Relation64 {
    Relation64::from_rows((0..r).map(|_| (0..c).map(|_| rng.gen_range(0..=10) as f64 / 10.0).collect()).collect())
        .unwrap()
}

/// `A o W0 = B` for random `A` and `W0`, so the system is solvable.
fn solvable(rng: &mut ChaCha8Rng, p: usize, n: usize, m: usize, comp: &Composition<f64>) -> TrainingSet64 {
    let a = grid_matrix(rng, p, n);
    let w0 = grid_matrix(rng, n, m);
    let b = compose(comp, &a, &w0).unwrap();
    TrainingSet::new(a, b).unwrap()
}

/// Greatest `W` from the solver, one column at a time on `w_j^T o A^T = b_j^T`.
fn greatest(ts: &TrainingSet64, comp: Composition<f64>) -> Relation64 {
    let at = ts.inputs.transpose();
    let cols: Vec<Vec<f64>> = (0..ts.m())
        .map(|j| {
            let p = FreProblem64::new(at.clone(), ts.targets.col(j), comp).unwrap();
            max_solution(&p).unwrap()
        })
        .collect();
    Relation64::from_rows(cols).unwrap().transpose()
}

#[test]
fn rule_k_is_the_greatest_solution() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (t, comp) in [
        (TNorm::Min, Composition::MaxMin),
        (TNorm::Product, Composition::MaxProduct),
        (TNorm::Lukasiewicz, Composition::SupT(TNorm::Lukasiewicz)),
    ] {
        for _ in 0..100 {
            let (p, n, m) = (rng.gen_range(1..=5), rng.gen_range(1..=5), rng.gen_range(1..=4));
            let ts = solvable(&mut rng, p, n, m, &comp);
            let r = delta_rule_k(&ts, &t).unwrap();
            assert_eq!(r.w, greatest(&ts, comp), "{t:?} {ts:?}");
            assert_eq!(r.sweeps, p);
            assert!(ts.is_solved_by(&t, &r.w, 1e-9));
        }
    }
}

#[test]
fn rule_b_matches_sanchez_and_ignores_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let ts = solvable(&mut rng, 4, 3, 3, &Composition::MaxMin);
        let r = delta_rule_b(&ts).unwrap();
        assert_eq!(r.w, greatest(&ts, Composition::MaxMin));
        assert!(ts.is_solved_by(&TNorm::Min, &r.w, 0.0));
        assert_eq!(r.sweeps, 4);
        assert_eq!(r.w, delta_rule_k(&ts, &TNorm::Min).unwrap().w);

        let mut order: Vec<usize> = (0..4).collect();
        order.shuffle(&mut rng);
        let shuffled = TrainingSet::from_rows(
            order.iter().map(|&i| ts.inputs.row(i).to_vec()).collect(),
            order.iter().map(|&i| ts.targets.row(i).to_vec()).collect(),
        )
        .unwrap();
        assert_eq!(delta_rule_b(&shuffled).unwrap().w, r.w);
    }
}

#[test]
fn iterative_rules_approach_the_greatest_solution() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (t, comp) in [(TNorm::Min, Composition::MaxMin), (TNorm::Product, Composition::MaxProduct)] {
        for _ in 0..40 {
            let ts = solvable(&mut rng, 3, 3, 2, &comp);
            let eta = 0.05;
            let cfg = TrainerConfig { eta, tnorm: t, ..TrainerConfig::default() };
            let r = delta_rule_j(&ts, &cfg).unwrap();
            assert!(r.converged && r.monotone);
            let g = greatest(&ts, comp);
            let over = (0..3).flat_map(|k| (0..2).map(move |j| (k, j))).map(|(k, j)| r.w.get(k, j) - g.get(k, j)).fold(f64::MIN, f64::max);
            let under = (0..3).flat_map(|k| (0..2).map(move |j| (k, j))).map(|(k, j)| g.get(k, j) - r.w.get(k, j)).fold(f64::MIN, f64::max);
            // stops within epsilon of the target from above, undershoots by O(eta)
            assert!(over <= 1e-4, "{over}");
            assert!(under <= eta, "{under}");
        }
    }
}

#[test]
fn smooth_derivative_audit() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut solved = 0;
    let runs = 20;
    for _ in 0..runs {
        let ts = solvable(&mut rng, 3, 2, 2, &Composition::MaxMin);
        let cfg = TrainerConfig { eta: 0.5, epsilon: 1e-3, ..TrainerConfig::default() };
        let r = smooth_derivative_train(&ts, &cfg).unwrap();
        assert!(r.w.cells().iter().all(|&v| (0.0..=1.0).contains(&v)));
        if ts.is_solved_by(&TNorm::Min, &r.w, 1e-2) {
            solved += 1;
        }
    }
    assert!(solved * 10 >= runs * 8, "{solved}/{runs}");
}

proptest! {
    #[test]
    fn delta_rule_weights_only_fall(
        a in proptest::collection::vec(0.0f64..=1.0, 6),
        b in proptest::collection::vec(0.0f64..=1.0, 4),
        eta in 0.05f64..=1.0,
    ) {
        let ts = TrainingSet::from_rows(
            a.chunks(3).map(|c| c.to_vec()).collect(),
            b.chunks(2).map(|c| c.to_vec()).collect(),
        ).unwrap();
        // each sweep lowers some weight by at least eta * epsilon
        let epsilon = 1e-3;
        let bound = (6.0 / (eta * epsilon)).ceil() as usize + 1;
        let cfg = TrainerConfig { eta, epsilon, max_epochs: bound, ..TrainerConfig::default() };
        let r = delta_rule_basic(&ts, &cfg).unwrap();
        prop_assert!(r.monotone);
        prop_assert!(r.converged);
        // every sample ends with no overshoot beyond epsilon
        for i in 0..2 {
            for (o, t) in ts.output(&TNorm::Min, &r.w, i).iter().zip(ts.targets.row(i)) {
                prop_assert!(*o <= t + epsilon + 1e-12);
            }
        }
    }
}
