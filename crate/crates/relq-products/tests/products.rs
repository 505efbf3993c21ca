use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relq_grade::Implication;
use relq_relation::{alpha_cut, Relation64};
use relq_products::*;

fn hiv() -> ObservationMatrix<f64> {
    let r = Relation64::from_f64_rows(&[
        &[0., 0., 1., 0., 0., 0., 0., 1., 0., 0.],
        &[0., 0., 0., 0., 0., 1., 0., 0., 0., 0.],
        &[0., 0., 0., 1., 0., 0., 0., 0., 0., 0.],
        &[1., 1., 1., 0., 1., 0., 1., 0., 1., 0.],
        &[0., 0., 1., 0., 0., 0., 1., 0., 0., 0.],
        &[0., 0., 0., 1., 1., 0., 0., 0., 0., 1.],
        &[1., 0., 1., 0., 1., 0., 0., 1., 1., 0.],
        &[1., 1., 0., 1., 0., 0., 1., 0., 0., 0.],
    ])
    .unwrap();
    ObservationMatrix::unlabeled(r)
}

fn printed_u() -> Relation64 {
    Relation64::from_f64_rows(&[
        &[1., 0.88, 0.88, 0.75, 0.88, 0.63, 0.88, 0.75, 0.88, 0.63],
        &[1., 1., 0.88, 0.88, 0.88, 0.75, 1., 0.75, 0.88, 0.75],
        &[0.75, 0.63, 1., 0.5, 0.75, 0.5, 0.75, 0.75, 0.75, 0.63],
        &[0.75, 0.75, 0.63, 1., 0.75, 0.63, 0.75, 0.63, 0.63, 0.75],
        &[0.88, 0.75, 0.88, 0.75, 1., 0.63, 0.75, 0.75, 0.88, 0.75],
        &[0.88, 0.88, 0.88, 0.88, 0.88, 1., 0.88, 0.88, 0.88, 0.88],
        &[0.88, 0.88, 0.88, 0.75, 0.75, 0.63, 1., 0.63, 0.75, 0.63],
        &[0.88, 0.75, 1., 0.75, 0.88, 0.75, 0.75, 1., 0.88, 0.75],
        &[1., 0.88, 1., 0.75, 1., 0.75, 0.88, 0.88, 1., 0.75],
        &[0.88, 0.88, 0.88, 1., 1., 0.88, 0.88, 0.88, 0.88, 1.],
    ])
    .unwrap()
}

fn printed_v() -> Relation64 {
    Relation64::from_f64_rows(&[
        &[1., 0.8, 0.8, 0.9, 0.9, 0.8, 1., 0.8],
        &[0.9, 1., 0.9, 0.9, 0.9, 0.9, 0.9, 0.9],
        &[0.9, 0.9, 1., 0.9, 0.9, 1., 0.9, 1.],
        &[0.5, 0.4, 0.4, 1., 0.6, 0.5, 0.8, 0.7],
        &[0.9, 0.8, 0.8, 1., 1., 0.8, 0.9, 0.9],
        &[0.7, 0.7, 0.8, 0.8, 0.7, 1., 0.8, 0.8],
        &[0.7, 0.5, 0.5, 0.9, 0.6, 0.6, 1., 0.6],
        &[0.6, 0.6, 0.7, 0.9, 0.7, 0.7, 0.7, 1.],
    ])
    .unwrap()
}

fn mismatches(a: &Relation64, b: &Relation64) -> Vec<(usize, usize)> {
    let mut out = vec![];
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if (a.get(i, j) - b.get(i, j)).abs() > 1e-9 {
                out.push((i, j));
            }
        }
    }
    out
}

#[test]
fn hiv_subject_product() {
    let u = triangle_product_subjects(&hiv(), &Implication::CrispMaterial).unwrap();
    assert_eq!(u.get(0, 1), 7.0 / 8.0);
    let bad = mismatches(&round_to(&u, 2), &printed_u());
    // the printed table has 0.63 for subjects 3 -> 10; the data give 4/8
    assert_eq!(bad, vec![(2, 9)], "{bad:?}");
    assert_eq!(u.get(2, 9), 0.5);
}

#[test]
fn hiv_subject_alpha_cut() {
    let u = triangle_product_subjects(&hiv(), &Implication::CrispMaterial).unwrap();
    let cut = &alpha_report(&u, &[1.0], Some(2))[0].1;
    let ones: Vec<Vec<usize>> = (0..10).map(|i| (0..10).filter(|&j| cut.get(i, j) == 1.0).collect()).collect();
    let want: Vec<Vec<usize>> =
        vec![vec![0], vec![0, 1, 6], vec![2], vec![3], vec![4], vec![5], vec![6], vec![2, 7], vec![0, 2, 4, 8], vec![3, 4, 9]];
    assert_eq!(ones, want);
}

#[test]
fn hiv_criteria_product() {
    let v = triangle_product_criteria(&hiv(), &Implication::CrispMaterial).unwrap();
    assert_eq!(mismatches(&v, &printed_v()), vec![]);
    let cut = alpha_cut(&v, 1.0, false);
    let mut want = Relation64::identity(8).unwrap();
    for (i, j) in [(0, 6), (2, 5), (2, 7), (4, 3)] {
        want.set(i, j, 1.0);
    }
    assert_eq!(cut, want);
}

fn checklist_marks() -> Relation64 {
    // items C1..C5 as rows, patients P1..P5 as columns; transposed to
    // subjects x items
    Relation64::from_f64_rows(&[
        &[0., 0., 0., 0., 1.],
        &[1., 1., 1., 1., 1.],
        &[1., 1., 0., 0., 1.],
        &[1., 0., 1., 1., 0.],
        &[0., 1., 0., 0., 0.],
    ])
    .unwrap()
    .transpose()
}

#[test]
fn checklist_patients() {
    let w = checklist_product(&checklist_marks(), &Implication::KleeneDienes).unwrap();
    let want = Relation64::from_f64_rows(&[
        &[0.6, 0.6, 0.4, 0.4, 0.6],
        &[0.6, 0.6, 0.4, 0.4, 0.6],
        &[0.6; 5],
        &[0.6; 5],
        &[0.6, 0.6, 0.4, 0.4, 0.6],
    ])
    .unwrap();
    assert!(w.approx_eq(&want, 1e-12));
    assert_eq!(round_to(&w, 2), want);
    assert!((w.get(0, 2) - 0.4).abs() < 1e-12);
}

#[test]
fn checklist_symptoms() {
    let w = checklist_product(&checklist_marks().transpose(), &Implication::KleeneDienes).unwrap();
    let want = Relation64::from_f64_rows(&[
        &[0.8, 1., 0.8, 0.8, 0.8],
        &[0.2, 1., 0.6, 0.6, 0.2],
        &[0.4, 1., 0.6, 0.6, 0.4],
        &[0.4, 1., 0.6, 0.6, 0.4],
        &[0.8, 1., 0.8, 0.8, 0.8],
    ])
    .unwrap();
    assert!(w.approx_eq(&want, 1e-12));
}

#[test]
fn checklist_support() {
    let t = contingency(&checklist_marks(), 1, 2).unwrap();
    assert_eq!((t.a10, t.n), (2, 5));
    assert!((classical_support::<f64>(&t).unwrap() - 0.6).abs() < 1e-12);
}

fn brute_at_least_k(r: &Relation64, m: &[f64], k: usize, imp: &Implication<f64>) -> Vec<f64> {
    // every permutation of the present manifestations, the first k weighted
    let present: Vec<usize> = (0..m.len()).filter(|&i| m[i] > 0.0).collect();
    fn extend(prefix: &mut Vec<usize>, rest: &[usize], out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
        }
        for (pos, &i) in rest.iter().enumerate() {
            let mut others = rest.to_vec();
            others.remove(pos);
            prefix.push(i);
            extend(prefix, &others, out);
            prefix.pop();
        }
    }
    if k > present.len() {
        return vec![0.0; r.rows()];
    }
    let mut perms = vec![];
    extend(&mut vec![], &present, &mut perms);
    (0..r.rows())
        .map(|d| {
            perms
                .iter()
                .map(|p| {
                    p.iter()
                        .enumerate()
                        .map(|(pos, &i)| {
                            let w: f64 = if pos < k { 1.0 } else { 0.0 };
                            imp.apply(w.min(m[i]), r.get(d, i)).unwrap()
                        })
                        .fold(1.0, f64::min)
                })
                .fold(0.0, f64::max)
        })
        .collect()
}

#[test]
fn at_least_k_fuzzy_three() {
    let r = Relation64::from_f64_rows(&[&[0.9, 0.2, 0.6], &[0.3, 0.8, 0.5], &[1.0, 1.0, 0.1]]).unwrap();
    let m = [0.7, 0.4, 1.0];
    for imp in [Implication::Godel, Implication::Lukasiewicz, Implication::KleeneDienes] {
        for k in 0..=3 {
            assert_eq!(explain_at_least_k(&r, &m, k, &imp).unwrap(), brute_at_least_k(&r, &m, k, &imp), "k={k}");
        }
    }
}

#[test]
fn at_least_k_matches_permutations_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let grid = |rng: &mut ChaCha8Rng| rng.gen_range(0..=5) as f64 / 5.0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=5);
        let d = rng.gen_range(1..=3);
        let rows: Vec<Vec<f64>> = (0..d).map(|_| (0..n).map(|_| grid(&mut rng)).collect()).collect();
        let r = Relation64::from_rows(rows).unwrap();
        let m: Vec<f64> = (0..n).map(|_| grid(&mut rng)).collect();
        let k = rng.gen_range(0..=n);
        for imp in [Implication::Godel, Implication::Lukasiewicz, Implication::KleeneDienes] {
            assert_eq!(explain_at_least_k(&r, &m, k, &imp).unwrap(), brute_at_least_k(&r, &m, k, &imp));
        }
    }
}

#[test]
fn crisp_input_adjoint_equals_simple() {
    for seed in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (nx, nu, nr) = (rng.gen_range(2..8), rng.gen_range(2..8), rng.gen_range(1..6));
        let mut vec = |n: usize| (0..n).map(|_| rng.gen_range(0..=10) as f64 / 10.0).collect::<Vec<f64>>();
        let rules: Vec<Rule<f64>> = (0..nr).map(|_| Rule::new(vec(nx), vec(nu))).collect();
        let x0 = (seed as usize) % nx;
        let input: Vec<f64> = (0..nx).map(|x| if x == x0 { 1.0 } else { 0.0 }).collect();
        let simple = mamdani_control(&rules, &input, ControlMethod::Simple).unwrap();
        let adjoint = mamdani_control(&rules, &input, ControlMethod::AdjointGodel).unwrap();
        assert_eq!(adjoint, simple, "seed {seed}");
        for r in &rules {
            assert_eq!(possibility(&input, &r.x).unwrap(), r.x[x0]);
        }
    }
}

fn arb_set(m: usize) -> impl Strategy<Value = BTreeSet<usize>> {
    proptest::collection::btree_set(0..m, 0..=m)
}

/// Random knowledge: every manifestation goes to plus, minus or unknown.
fn arb_knowledge() -> impl Strategy<Value = DiagnosisKnowledge> {
    (1usize..6, 1usize..6).prop_flat_map(|(nd, m)| {
        let split = move || proptest::collection::vec(0u8..3, m);
        (proptest::collection::vec(split(), nd), split()).prop_map(move |(ds, obs)| {
            let pick = |v: &[u8], t: u8| (0..m).filter(|&i| v[i] == t).collect::<BTreeSet<_>>();
            DiagnosisKnowledge::new(
                (0..nd).map(|i| format!("d{i}")).collect(),
                (0..m).map(|i| format!("m{i}")).collect(),
                ds.iter().map(|v| pick(v, 1)).collect(),
                ds.iter().map(|v| pick(v, 2)).collect(),
                pick(&obs, 1),
                pick(&obs, 2),
            )
            .unwrap()
        })
    })
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

proptest! {
    #[test]
    fn diagnosis_sets_are_nested(k in arb_knowledge(), conj in any::<bool>(), sub in any::<bool>()) {
        let opts = DiagnoseOptions {
            relevance: if conj { Relevance::Conjunctive } else { Relevance::Disjunctive },
            coverage: if sub { Coverage::Subset } else { Coverage::Superset },
        };
        let r = diagnose(&k, &opts).unwrap();
        prop_assert!(is_subset(&r.covering, &r.relevant));
        prop_assert!(is_subset(&r.relevant, &r.potential));
    }

    #[test]
    fn complete_information_reduces_to_equality(
        (m, sets, obs) in (1usize..7).prop_flat_map(|m| (Just(m), proptest::collection::vec(arb_set(m), 1..6), arb_set(m)))
    ) {
        let comp = |s: &BTreeSet<usize>| (0..m).filter(|i| !s.contains(i)).collect::<BTreeSet<_>>();
        let k = DiagnosisKnowledge::new(
            (0..sets.len()).map(|i| format!("d{i}")).collect(),
            (0..m).map(|i| format!("m{i}")).collect(),
            sets.clone(),
            sets.iter().map(comp).collect(),
            obs.clone(),
            comp(&obs),
        ).unwrap();
        let r = diagnose(&k, &DiagnoseOptions::default()).unwrap();
        let want: Vec<usize> = (0..sets.len()).filter(|&d| sets[d] == obs).collect();
        prop_assert_eq!(r.potential, want);
    }

    #[test]
    fn singleton_joint_agrees_with_diagnose(k in arb_knowledge()) {
        let cands: Vec<_> = (0..k.disorders.len()).map(|d| JointCandidate::additive([d])).collect();
        let joint = diagnose_joint(&k, &cands, true, &DiagnoseOptions::default()).unwrap();
        let single = diagnose(&k, &DiagnoseOptions::default()).unwrap();
        let consistent: Vec<usize> =
            joint.entries.iter().filter(|e| e.consistent).map(|e| *e.members.iter().next().unwrap()).collect();
        prop_assert_eq!(consistent, single.potential);
    }

    #[test]
    fn additive_pair_forbids_the_intersection(k in arb_knowledge()) {
        let n = k.disorders.len();
        for a in 0..n {
            for b in 0..n {
                let (plus, minus) = joint_sets(&k, &[a, b].into_iter().collect());
                prop_assert_eq!(minus, k.forbidden[a].intersection(&k.forbidden[b]).copied().collect::<BTreeSet<_>>());
                prop_assert_eq!(plus, k.certain[a].union(&k.certain[b]).copied().collect::<BTreeSet<_>>());
            }
        }
    }

    #[test]
    fn crisp_products_on_the_grid(cells in proptest::collection::vec(proptest::bool::ANY, 12), rows in 1usize..5) {
        let cols = 12 / rows.max(1);
        let data: Vec<Vec<f64>> =
            (0..rows).map(|i| (0..cols).map(|j| if cells[i * cols + j] { 1.0 } else { 0.0 }).collect()).collect();
        let obs = ObservationMatrix::unlabeled(Relation64::from_rows(data).unwrap());
        let u = triangle_product_subjects(&obs, &Implication::CrispMaterial).unwrap();
        for &v in u.cells() {
            let steps = v * rows as f64;
            prop_assert!((0.0..=1.0).contains(&v) && (steps - steps.round()).abs() < 1e-9);
        }
        for j in 0..u.rows() {
            prop_assert_eq!(u.get(j, j), 1.0);
        }
    }

    #[test]
    fn fuzzy_products_stay_in_range(cells in proptest::collection::vec(0.0f64..=1.0, 12)) {
        let obs = ObservationMatrix::unlabeled(Relation64::new(3, 4, cells).unwrap());
        for imp in [Implication::Godel, Implication::Lukasiewicz, Implication::KleeneDienes] {
            let v = triangle_product_criteria(&obs, &imp).unwrap();
            prop_assert!(v.cells().iter().all(|&x| (0.0..=1.0).contains(&x)));
            for level in [0.3, 0.7, 1.0] {
                let report = alpha_report(&v, &[level], None);
                prop_assert_eq!(&report[0].1, &alpha_cut(&v, level, false));
            }
        }
    }
}
