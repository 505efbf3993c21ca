use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relq_grade::*;

fn left_continuous() -> Vec<TNorm64> {
    TNorm64::builtins()
        .into_iter()
        .filter(|t| !matches!(t, TNorm::Drastic))
        .collect()
}

proptest! {
    #[test]
    fn residuation_adjunction(a in 0.0f64..=1.0, b in 0.0f64..=1.0, d in 0.0f64..=1.0) {
        for t in left_continuous() {
            let w = t.residuum(a, d);
            let lhs = t.apply(a, b) <= d + 1e-9;
            let rhs = b <= w + 1e-9;
            // bisected residua are only tight to 1e-9, so skip knife-edge cases
            if (t.apply(a, b) - d).abs() > 1e-7 && (b - w).abs() > 1e-7 {
                prop_assert_eq!(lhs, rhs, "{} a={} b={} d={}", t, a, b, d);
            }
        }
    }

    #[test]
    fn residuum_is_below_target(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        for t in left_continuous() {
            prop_assert!(t.apply(a, t.residuum(a, b)) <= b + 1e-9, "{}", t);
        }
    }

    #[test]
    fn sigma_alpha_is_godel_residuum(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        prop_assert_eq!(sigma_alpha(a, b), TNorm64::Min.residuum(a, b));
    }

    #[test]
    fn generator_solution_close(a in 0.01f64..=1.0, frac in 0.0f64..=1.0) {
        let b = a * frac;
        for g in [Generator::hamacher(), Generator::neg_log(), Generator::one_minus()] {
            let t = TNorm::Archimedean(g);
            match solve_scalar_t(&t, a, b).unwrap() {
                ScalarSolution::Unique(x) => prop_assert!((t.apply(a, x) - b).abs() <= 1e-9),
                ScalarSolution::Interval { max, min } => {
                    prop_assert!((t.apply(a, max) - b).abs() <= 1e-9);
                    prop_assert!((t.apply(a, min) - b).abs() <= 1e-9);
                }
                ScalarSolution::NoSolution => prop_assert!(false, "a >= b must be solvable"),
            }
        }
    }

    #[test]
    fn residuum_is_supremum_on_grid(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        for t in left_continuous() {
            let w = t.residuum(a, b);
            for k in 0..=100 {
                let x = k as f64 / 100.0;
                if t.apply(a, x) <= b - 1e-9 {
                    prop_assert!(x <= w + 1e-9, "{} x={} w={}", t, x, w);
                }
            }
        }
    }
}

fn grid_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0..=10) as f64 / 10.0).collect()
}

#[test]
fn metric_axioms_for_min_and_lukasiewicz() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in [TNorm64::Min, TNorm64::Lukasiewicz] {
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=4);
            let (a, b, c) = (grid_vec(&mut rng, n), grid_vec(&mut rng, n), grid_vec(&mut rng, n));
            let q = |x: &[f64], y: &[f64]| q_metric(&t, x, y).unwrap();
            assert!(q(&a, &a).abs() < 1e-12);
            assert!((q(&a, &b) - q(&b, &a)).abs() < 1e-12);
            assert!(q(&a, &c) <= q(&a, &b) + q(&b, &c) + 1e-9, "{t} {a:?} {b:?} {c:?}");
        }
    }
}

#[test]
fn drastic_violation_found_by_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t = TNorm64::Drastic;
    let found = (0..100_000).any(|_| {
        let (a, b, c) = (grid_vec(&mut rng, 1), grid_vec(&mut rng, 1), grid_vec(&mut rng, 1));
        let q = |x: &[f64], y: &[f64]| q_metric(&t, x, y).unwrap();
        q(&a, &c) > q(&a, &b) + q(&b, &c) + 1e-9
    });
    assert!(found);
}

#[test]
fn lukasiewicz_closed_form_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2_000 {
        let n = rng.gen_range(1..=5);
        let a: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
        let b: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
        let d = q_metric(&TNorm::Lukasiewicz, &a, &b).unwrap();
        assert!((d - q_lukasiewicz_closed(&a, &b).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn spec_spot_values() {
    assert_eq!(TNorm64::Min.apply(0.3, 0.7), 0.3);
    assert!((TNorm64::Lukasiewicz.apply(0.9, 0.5) - 0.4).abs() < 1e-12);
    let g = TNorm::Archimedean(Generator::neg_log());
    assert!((g.apply(0.8, 0.5) - 0.4f64).abs() < 1e-12);
    assert!((Implication64::KleeneDienes.apply(0.6, 0.4).unwrap() - 0.4).abs() < 1e-12);
}
