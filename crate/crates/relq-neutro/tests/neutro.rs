use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relq_neutro::*;
use relq_optimize::pseudo_char_matrix;
use relq_relation::{compose, Composition, Relation64};
use relq_solve::{max_solution, FreProblem64};

use NeutroMode::*;

fn g(s: &str) -> NeutroGrade64 {
    s.parse().unwrap()
}

fn vec_of(tokens: &[&str]) -> Vec<NeutroGrade64> {
    tokens.iter().map(|t| g(t)).collect()
}

fn grade(rng: &mut ChaCha8Rng, p_indet: f64) -> NeutroGrade64 {
    let c = rng.gen_range(0..=10) as f64 / 10.0;
    if rng.gen_bool(p_indet) {
        NeutroGrade::indet(c)
    } else {
        NeutroGrade::real(c)
    }
}

fn matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, p_indet: f64) -> NeutroRelation64 {
    NeutroRelation::from_rows((0..m).map(|_| (0..n).map(|_| grade(rng, p_indet)).collect()).collect()).unwrap()
}

fn bonded_labor() -> NeutroRelation64 {
    NeutroRelation::parse_rows(&[
        &[".6", "0", ".3I", "0"],
        &[".7", ".4", ".3", ".8I"],
        &[".3", ".4", ".3", ".3"],
        &[".3I", "0", ".3", ".4I"],
        &[".8", ".4I", ".2", ".4"],
        &["0", ".4", ".5", ".9"],
    ])
    .unwrap()
}

fn medical() -> NeutroRelation64 {
    NeutroRelation::parse_rows(&[
        &["0", "0", ".2I", ".5", "0", "0", ".6", ".7", "0", ".5I"],
        &["0", "0", "0", "0", "0", ".2", "1", "0", ".9", ".6"],
        &[".5I", "0", "0", "0", ".9", "0", "0", "0", "0", "0"],
        &[".7", "0", "0", ".8I", "0", ".3", "0", ".8", "0", "0"],
        &["0", ".8I", ".3", "0", ".7", "1", "0", ".3", ".7I", ".7"],
        &[".3", ".7", "0", ".3", "0", "0", "0", "1", "1", "0"],
        &[".9", ".4", "0", "0", ".8I", ".9", "0", "0", "0", ".4"],
        &[".2I", "0", "0", "0", "0", "0", ".7I", "0", ".2", ".3"],
    ])
    .unwrap()
}

#[test]
fn bonded_labor_effects() {
    let q = NeutroRelation::parse_rows(&[&[".6"], &[".5"], &[".7"], &[".9"]]).unwrap();
    let r = neutro_compose(Graded, &bonded_labor(), &q).unwrap();
    assert_eq!(r.col(0), vec_of(&[".6", ".8I", ".4", ".4I", ".6", ".9"]));
}

#[test]
fn medical_symptoms_to_diseases() {
    let q = vec_of(&[".3", ".7", ".5I", ".3", "0", ".3", ".2", ".3I"]);
    let r = neutro_compose_vec(Graded, &q, &medical()).unwrap();
    let published = vec_of(&[".5I", ".3", ".3", ".3", ".5I", "0", ".7", ".3", ".7", ".6"]);
    // worked by hand: column 3 peaks at min(.3, .2I) = .2I, column 6 at
    // min(.7, .2) = min(.3, .3) = .3
    let by_hand = vec_of(&[".5I", ".3", ".2I", ".3", ".5I", ".3", ".7", ".3", ".7", ".6"]);
    assert_eq!(r, by_hand);
    let agree: Vec<usize> = (0..10).filter(|&j| r[j] == published[j]).collect();
    assert_eq!(agree, vec![0, 1, 3, 4, 6, 7, 8, 9]);
}

#[test]
fn graded_lattice_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let p = if rng.gen_bool(0.5) { 1.0 } else { 0.0 };
        let (a, b, c) = (grade(&mut rng, p), grade(&mut rng, p), grade(&mut rng, p));
        for op in [neutro_min::<f64>, neutro_max::<f64>] {
            assert_eq!(op(Graded, a, b), op(Graded, b, a));
            assert_eq!(op(Graded, op(Graded, a, b), c), op(Graded, a, op(Graded, b, c)));
            assert_eq!(op(Graded, a, a), a);
        }
        assert_eq!(neutro_min(Graded, a, neutro_max(Graded, a, b)), a);
        assert_eq!(neutro_max(Graded, a, neutro_min(Graded, a, b)), a);
    }
}

#[test]
fn mixed_kind_algebra_stays_commutative_and_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10_000 {
        let (a, b, c) = (grade(&mut rng, 0.5), grade(&mut rng, 0.5), grade(&mut rng, 0.5));
        for mode in [Graded, Absorbing] {
            for op in [neutro_min::<f64>, neutro_max::<f64>] {
                assert_eq!(op(mode, a, b), op(mode, b, a));
                assert_eq!(op(mode, op(mode, a, b), c), op(mode, a, op(mode, b, c)));
            }
        }
    }
}

#[test]
fn absorbing_propagation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..2000 {
        let (m, k, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=4));
        let p = matrix(&mut rng, m, k, 0.3);
        let q = matrix(&mut rng, k, n, 0.3);
        let r = neutro_compose(Absorbing, &p, &q).unwrap();
        for i in 0..m {
            for j in 0..n {
                let path = (0..k).any(|l| {
                    let (x, y) = (p.get(i, l), q.get(l, j));
                    !x.is_bottom() && !y.is_bottom() && (x.is_indet() || y.is_indet())
                });
                assert_eq!(r.get(i, j).is_indet(), path);
                if r.get(i, j).is_indet() {
                    assert_eq!(r.get(i, j), NeutroGrade::i());
                }
            }
        }
    }
}

#[test]
fn split_recombines() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut feasible = 0;
    for _ in 0..5000 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=5));
        let a = matrix(&mut rng, m, n, 0.3);
        let x0: Vec<_> = (0..m).map(|_| grade(&mut rng, 0.3)).collect();
        for mode in [Graded, Absorbing] {
            let b = neutro_compose_vec(mode, &x0, &a).unwrap();
            let s = nre_split(&a, &b, mode).unwrap();
            assert_eq!(s.combined(mode), nre_candidate(&a, &b, mode).unwrap());
            assert_eq!(s.real_cols.len() + s.indet_cols.len(), n);
            if let Ok(x) = nre_max_solution(&a, &b, mode) {
                feasible += 1;
                assert!(nre_is_solution(&a, &b, &x, mode));
                if mode == Absorbing {
                    assert!(s.real_ok && s.indet_ok);
                }
            }
        }
    }
    assert!(feasible > 5000, "{feasible}");
}

#[test]
fn pseudo_char_on_examples() {
    let a = NeutroRelation::parse_rows(&[&["0.7I", "0.3"]]).unwrap();
    let p = n_pseudo_char_matrix(&a, &vec_of(&["0.3I", "0.3I"])).unwrap();
    assert_eq!(p, vec![vec![NSymbol::I, NSymbol::Incomparable]]);
}

fn real_matrix(v: &[f64], cols: usize) -> Relation64 {
    Relation64::from_rows(v.chunks(cols).map(|c| c.to_vec()).collect()).unwrap()
}

fn lift(v: &[f64]) -> Vec<NeutroGrade64> {
    v.iter().map(|&c| NeutroGrade::real(c)).collect()
}

proptest! {
    #[test]
    fn restriction_compose(a in proptest::collection::vec(0.0f64..=1.0, 6), b in proptest::collection::vec(0.0f64..=1.0, 6)) {
        let (ra, rb) = (real_matrix(&a, 3), real_matrix(&b, 2));
        let fuzzy = compose(&Composition::MaxMin, &ra, &rb).unwrap();
        for mode in [Graded, Absorbing] {
            let n = neutro_compose(mode, &NeutroRelation::from_real(&ra), &NeutroRelation::from_real(&rb)).unwrap();
            prop_assert_eq!(n.to_real().unwrap(), fuzzy.clone());
        }
    }

    #[test]
    fn restriction_max_solution(a in proptest::collection::vec(0usize..=10, 12), x0 in proptest::collection::vec(0usize..=10, 3), noise in any::<bool>()) {
        let a: Vec<f64> = a.iter().map(|&v| v as f64 / 10.0).collect();
        let ra = real_matrix(&a, 4);
        let x0: Vec<f64> = x0.iter().map(|&v| v as f64 / 10.0).collect();
        let mut b = relq_relation::compose_vec(&Composition::MaxMin, &x0, &ra).unwrap();
        if noise {
            b[0] = (b[0] + 0.35).min(1.0);
        }
        let fuzzy = max_solution(&FreProblem64::new(ra.clone(), b.clone(), Composition::MaxMin).unwrap());
        for mode in [Graded, Absorbing] {
            let n = nre_max_solution(&NeutroRelation::from_real(&ra), &lift(&b), mode);
            match &fuzzy {
                Some(x) => {
                    let got: Vec<f64> = n.unwrap().iter().map(|g| g.as_real().unwrap()).collect();
                    prop_assert_eq!(got.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), x.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
                }
                None => prop_assert_eq!(n, Err(NeutroError::Infeasible)),
            }
        }
    }

    #[test]
    fn restriction_pseudo_char(a in proptest::collection::vec(0usize..=5, 9), b in proptest::collection::vec(0usize..=5, 3)) {
        let ra = real_matrix(&a.iter().map(|&v| v as f64 / 5.0).collect::<Vec<_>>(), 3);
        let b: Vec<f64> = b.iter().map(|&v| v as f64 / 5.0).collect();
        let n = n_pseudo_char_matrix(&NeutroRelation::from_real(&ra), &lift(&b)).unwrap();
        let plain: Vec<Vec<i8>> = n.iter().map(|r| r.iter().map(|s| s.as_real().unwrap()).collect()).collect();
        prop_assert_eq!(plain, pseudo_char_matrix(&ra, &b));
    }

    #[test]
    fn token_round_trip(c in 0usize..=1000, indet in any::<bool>()) {
        let c = c as f64 / 1000.0;
        let g = if indet { NeutroGrade64::indet(c) } else { NeutroGrade64::real(c) };
        prop_assert_eq!(neutro_parse::<f64>(&neutro_format(&g)).unwrap(), g);
    }
}
