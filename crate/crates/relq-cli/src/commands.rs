use anyhow::{anyhow, bail, Context, Result};
use relq_datasets::{
    dataset, demo_bonded_labor, demo_chemical_flow, estimate_block_relations, expert_matrix, hiv_checklist,
    hiv_observations, pallavan_partition, Direction, PallavanRun, PALLAVAN_COUNTS, PALLAVAN_HOURS,
};
use relq_grade::{Implication, TNorm};
use relq_learn::{
    delta_rule_b, delta_rule_basic, delta_rule_j, delta_rule_k, smooth_derivative_train, TrainerConfig, TrainingSet64,
};
use relq_neutro::{neutro_compose, neutro_compose_vec, nre_candidate, nre_max_solution, NeutroError, NeutroMode};
use relq_optimize::{optimize_linear_with, optimize_nonlinear_ga, BnbOptions, GaConfig, LinearFreProblem, OptError};
use relq_products::{
    alpha_report, checklist_product, classical_support, contingency, diagnose as run_diagnosis, triangle_product_criteria,
    triangle_product_subjects, Coverage, DiagnoseOptions, DiagnosisKnowledge, ObservationMatrix, Relevance,
};
use relq_relation::{compose as compose_rel, compose_vec, relation_properties, transitive_closure, Composition, Relation64};
use relq_solve::{
    default_cap, minimal_solutions_archimedean, minimal_solutions_lambda_capped, minimal_solutions_matrix_pattern,
    FreProblem64, SolveError,
};

use crate::input::{load_operand, load_problem, parse_composition, parse_list, Operand, Problem};
use crate::output::{Item, Report};
use crate::{CoverageArg, Global, Method, RelevanceArg, RuleArg};

pub struct Outcome {
    pub report: Report,
    /// Maps to exit status 2.
    pub infeasible: bool,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, infeasible: false }
    }
}

fn cap(g: &Global) -> u128 {
    g.cap.unwrap_or_else(default_cap)
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn compose(p: &str, q: &str, comp: &str, mode: Option<NeutroMode>) -> Result<Outcome> {
    let comp = parse_composition(comp)?;
    let (a, b) = (load_operand(p, mode)?, load_operand(q, mode)?);
    let ((ar, ac), (br, bc)) = (a.shape(), b.shape());
    if ac != br {
        bail!("cannot compose a {ar}x{ac} relation with a {br}x{bc} relation: inner dimensions {ac} and {br} differ");
    }
    let mut report = Report::default();
    match (a, b) {
        (Operand::Fuzzy(a), Operand::Fuzzy(b)) => {
            report.push("composition", Item::Text(comp.name()));
            report.push("r", Item::matrix(&compose_rel(&comp, &a, &b)?));
        }
        (a, b) => {
            let mode = match (mode, a.mode(), b.mode()) {
                (Some(m), _, _) => m,
                (None, Some(x), Some(y)) if x != y => bail!("operands are in different modes ({x} and {y})"),
                (None, Some(m), _) | (None, None, Some(m)) => m,
                (None, None, None) => unreachable!("at least one operand is neutrosophic"),
            };
            if comp != Composition::MaxMin {
                bail!("neutrosophic relations compose under max-min only, got {}", comp.name());
            }
            // listed first so CSV output starts with the mode header
            report.push("mode", Item::Text(mode.to_string()));
            report.push("r", Item::neutro_matrix(&neutro_compose(mode, &a.into_neutro(), &b.into_neutro())?));
        }
    }
    Ok(report.into())
}

fn residual(p: &FreProblem64, x: &[f64]) -> Result<f64> {
    let y = compose_vec(&p.composition, x, &p.a)?;
    Ok(y.iter().zip(&p.b).fold(0.0, |m: f64, (u, v)| m.max((u - v).abs())))
}

pub fn solve(g: &Global, path: &str, comp: Option<&str>, mode: Option<NeutroMode>, method: Method) -> Result<Outcome> {
    let mut report = Report::default();
    match load_problem(path, mode)? {
        Problem::Neutro { a, b, mode } => {
            report.push("mode", Item::Text(mode.to_string()));
            match nre_max_solution(&a, &b, mode) {
                Ok(x) => {
                    report.push("feasible", Item::Bool(true)).push("x_hat", Item::neutro_vector(&x));
                    Ok(report.into())
                }
                Err(NeutroError::Infeasible) => {
                    let cand = nre_candidate(&a, &b, mode)?;
                    report.push("feasible", Item::Bool(false)).push("candidate", Item::neutro_vector(&cand));
                    Ok(Outcome { report, infeasible: true })
                }
                Err(e) => Err(e.into()),
            }
        }
        Problem::Fuzzy { a, b, composition, .. } => {
            let comp = match comp {
                Some(c) => parse_composition(c)?,
                None => composition.unwrap_or(Composition::MaxMin),
            };
            let p = FreProblem64::new(a, b, comp)?;
            let set = match method {
                Method::Lambda => minimal_solutions_lambda_capped(&p, cap(g)),
                Method::Pattern => minimal_solutions_matrix_pattern(&p),
                Method::Archimedean => minimal_solutions_archimedean(&p),
            };
            let name = match method {
                Method::Lambda => "lambda",
                Method::Pattern => "pattern",
                Method::Archimedean => "archimedean",
            };
            report.push("composition", Item::Text(comp.name())).push("method", Item::Text(name.into()));
            match set {
                Ok(s) => {
                    let hat = s.x_hat.clone().expect("feasible sets carry x_hat");
                    let mut worst = residual(&p, &hat)?;
                    for m in &s.minimals {
                        worst = worst.max(residual(&p, m)?);
                    }
                    report
                        .push("feasible", Item::Bool(true))
                        .push("x_hat", Item::vector(&hat))
                        .push("minimals", Item::vectors(&s.minimals))
                        .push("verified", Item::Bool(worst <= g.tol));
                    Ok(report.into())
                }
                Err(SolveError::Infeasible) => {
                    report.push("feasible", Item::Bool(false));
                    Ok(Outcome { report, infeasible: true })
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

pub fn optimize(
    g: &Global,
    path: &str,
    comp: Option<&str>,
    costs: Option<&str>,
    ga: Option<(usize, usize)>,
) -> Result<Outcome> {
    let Problem::Fuzzy { a, b, composition, c } = load_problem(path, None)? else {
        bail!("optimization is defined for fuzzy systems only");
    };
    let comp = match comp {
        Some(s) => parse_composition(s)?,
        None => composition.unwrap_or(Composition::MaxMin),
    };
    let c = match costs {
        Some(s) => parse_list(s)?,
        None => c.ok_or_else(|| anyhow!("no cost vector: pass --c or put \"c\" in {path}"))?,
    };
    let lp = LinearFreProblem::new(FreProblem64::new(a, b, comp)?, c)?;
    let mut report = Report::default();
    report.push("composition", Item::Text(comp.name()));
    let infeasible = |mut report: Report| {
        report.push("feasible", Item::Bool(false));
        Ok(Outcome { report, infeasible: true })
    };
    match ga {
        None => match optimize_linear_with(&lp, BnbOptions { prune: true, node_cap: cap(g) }) {
            Ok(s) => {
                report
                    .push("feasible", Item::Bool(true))
                    .push("x", Item::vector(&s.x))
                    .push("z", Item::Num(s.z))
                    .push("nodes", Item::Int(s.nodes as u64))
                    .push("certificate", Item::Text(s.certificate.into()));
                Ok(report.into())
            }
            Err(OptError::Solve(SolveError::Infeasible)) => infeasible(report),
            Err(e) => Err(e.into()),
        },
        Some((generations, population_size)) => {
            let cfg = GaConfig { rng_seed: g.seed, generations, population_size, ..GaConfig::default() };
            let f = |x: &[f64]| lp.cost(x);
            match optimize_nonlinear_ga(&lp.base, &f, &cfg) {
                Ok(run) => {
                    report
                        .push("feasible", Item::Bool(true))
                        .push("x", Item::vector(&run.x_best))
                        .push("z", Item::Num(run.f_best))
                        .push("evaluations", Item::Int(run.evaluations as u64))
                        .push("seed", Item::Int(g.seed))
                        .push("certificate", Item::Text(run.certificate.into()));
                    Ok(report.into())
                }
                Err(OptError::Solve(SolveError::Infeasible)) => infeasible(report),
                Err(e) => Err(e.into()),
            }
        }
    }
}

pub fn learn(
    g: &Global,
    path: &str,
    rule: RuleArg,
    tnorm: &str,
    eta: f64,
    epsilon: f64,
    max_epochs: usize,
) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let ts: TrainingSet64 = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
    let t = TNorm::from_name(tnorm).ok_or_else(|| anyhow!("unknown t-norm {tnorm:?}"))?;
    let cfg = TrainerConfig { eta, epsilon, max_epochs, tnorm: t };
    let (name, r) = match rule {
        RuleArg::Basic => ("basic", delta_rule_basic(&ts, &cfg)?),
        RuleArg::J => ("J", delta_rule_j(&ts, &cfg)?),
        RuleArg::B => {
            if t != TNorm::Min {
                bail!("rule B is the max-min closed form; use --tnorm min or rule K");
            }
            ("B", delta_rule_b(&ts)?)
        }
        RuleArg::K => ("K", delta_rule_k(&ts, &t)?),
        RuleArg::Smooth => ("smooth", smooth_derivative_train(&ts, &cfg)?),
    };
    let mut report = Report::default();
    report
        .push("rule", Item::Text(name.into()))
        .push("tnorm", Item::Text(t.name()))
        .push("w", Item::matrix(&r.w))
        .push("converged", Item::Bool(r.converged))
        .push("sweeps", Item::Int(r.sweeps as u64))
        .push("error", Item::Num(ts.total_error(&t, &r.w)))
        .push("solved", Item::Bool(ts.is_solved_by(&t, &r.w, g.tol)));
    if !r.flagged.is_empty() {
        report.push("flagged", Item::Texts(r.flagged.iter().map(|(i, j)| format!("({}, {})", i + 1, j + 1)).collect()));
    }
    Ok(report.into())
}

pub fn diagnose(path: &str, relevance: RelevanceArg, coverage: CoverageArg) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let k = DiagnosisKnowledge::from_json(&text)?;
    let opts = DiagnoseOptions {
        relevance: match relevance {
            RelevanceArg::Disjunctive => Relevance::Disjunctive,
            RelevanceArg::Conjunctive => Relevance::Conjunctive,
        },
        coverage: match coverage {
            CoverageArg::Superset => Coverage::Superset,
            CoverageArg::Subset => Coverage::Subset,
        },
    };
    let d = run_diagnosis(&k, &opts)?;
    let names = |ix: &[usize]| Item::Texts(ix.iter().map(|&i| k.disorders[i].clone()).collect());
    let mut report = Report::default();
    report.push("potential", names(&d.potential)).push("relevant", names(&d.relevant)).push("covering", names(&d.covering));
    Ok(report.into())
}

pub fn demo(g: &Global, name: &str, blocks: Option<usize>, levels: &str, inconsistent: bool) -> Result<Outcome> {
    let data = dataset(name)?;
    let mut report = Report::default();
    report.push("dataset", Item::Text(data.name.into())).push("description", Item::Text(data.description.into()));
    match data.name {
        "pallavan" => {
            let n = blocks.unwrap_or(5);
            let run = PallavanRun::from_blocks(n)
                .ok_or_else(|| anyhow!("--blocks {n}: the passenger runs use 5, 3 or 4 (arbitrary) blocks"))?;
            let (start, _) = run.start_and_sizes();
            let series = pallavan_partition::<f64>(run);
            let est = estimate_block_relations(&series)?;
            let rows: Vec<Vec<f64>> = est
                .iter()
                .map(|e| {
                    let (first, last, peak) = (start + e.range.start, start + e.range.end - 1, start + e.peak);
                    vec![
                        PALLAVAN_HOURS[first] as f64,
                        PALLAVAN_HOURS[last] as f64,
                        PALLAVAN_HOURS[peak] as f64,
                        PALLAVAN_COUNTS[peak] as f64,
                        e.residual,
                    ]
                })
                .collect();
            let cols = ["from", "to", "peak_hour", "passengers", "residual"].map(String::from).to_vec();
            report.push("peaks", Item::vectors(&rows).labeled(labels("block ", est.len()), cols));
            for (i, e) in est.iter().enumerate() {
                report.push(format!("P{}", i + 1), Item::matrix(&e.p));
            }
        }
        "chemical-flow" => {
            let r = demo_chemical_flow::<f64>(!inconsistent)?;
            report
                .push("q", Item::vector(&r.q))
                .push("r", Item::vector(&r.r))
                .push("w", Item::matrix(&r.w))
                .push("outputs", Item::vector(&r.outputs))
                .push("residual", Item::Num(r.residual))
                .push("converged", Item::Bool(r.converged))
                .push("sweeps", Item::Int(r.sweeps as u64))
                .push("infeasible_rows", Item::Texts(r.infeasible_rows.iter().map(|i| (i + 1).to_string()).collect()));
        }
        "bonded-labor-1" | "bonded-labor-2" | "bonded-labor-3" => {
            let expert: usize = data.name[data.name.len() - 1..].parse()?;
            report
                .push("p", Item::matrix(&expert_matrix::<f64>(expert)?))
                .push("r_forward", Item::vector(&demo_bonded_labor::<f64>(expert, Direction::Forward)?))
                .push("q_inverse", Item::vector(&demo_bonded_labor::<f64>(expert, Direction::Inverse)?));
        }
        "hiv-triangle" => {
            let levels = parse_list(levels)?;
            let obs = ObservationMatrix::unlabeled(hiv_observations());
            let u = triangle_product_subjects(&obs, &Implication::CrispMaterial)?;
            let v = triangle_product_criteria(&obs, &Implication::CrispMaterial)?;
            let (s, c) = (obs.subjects.clone(), obs.criteria.clone());
            report.push("U", Item::matrix(&u).labeled(s.clone(), s.clone()));
            report.push("V", Item::matrix(&v).labeled(c.clone(), c.clone()));
            for (a, cut) in alpha_report(&u, &levels, g.round) {
                report.push(format!("U alpha={a}"), Item::matrix(&cut).labeled(s.clone(), s.clone()));
            }
            for (a, cut) in alpha_report(&v, &levels, g.round) {
                report.push(format!("V alpha={a}"), Item::matrix(&cut).labeled(c.clone(), c.clone()));
            }
        }
        "hiv-checklist" => {
            let marks = hiv_checklist();
            let (p, c) = (labels("P", marks.rows()), labels("C", marks.cols()));
            let wp = checklist_product(&marks, &Implication::KleeneDienes)?;
            let wc = checklist_product(&marks.transpose(), &Implication::KleeneDienes)?;
            let support: Vec<Vec<f64>> = (0..marks.rows())
                .map(|j| {
                    (0..marks.rows()).map(|m| Ok(classical_support::<f64>(&contingency(&marks, j, m)?)?)).collect()
                })
                .collect::<Result<_>>()?;
            report.push("marks", Item::matrix(&marks).labeled(p.clone(), c.clone()));
            report.push("W patients", Item::matrix(&wp).labeled(p.clone(), p.clone()));
            report.push("W items", Item::matrix(&wc).labeled(c.clone(), c));
            report.push("support", Item::vectors(&support).labeled(p.clone(), p));
        }
        "bonded-labor-nre" => {
            let (p, q) = (data.neutro("p").expect("table p"), data.neutro("q").expect("table q"));
            let r = neutro_compose(NeutroMode::Graded, p, q)?;
            report.push("mode", Item::Text("graded".into())).push("r", Item::neutro_vector(&r.col(0)));
        }
        "medical-nre" => {
            let (a, x) = (data.neutro("a").expect("table a"), data.neutro("x").expect("table x"));
            let r = neutro_compose_vec(NeutroMode::Graded, x.row(0), a)?;
            report.push("mode", Item::Text("graded".into())).push("diseases", Item::neutro_vector(&r));
        }
        "neutro-example" => {
            let (p, q) = (data.neutro("p").expect("table p"), data.neutro("q").expect("table q"));
            let r = neutro_compose(NeutroMode::Absorbing, p, q)?;
            report.push("mode", Item::Text("absorbing".into())).push("r", Item::neutro_vector(&r.col(0)));
        }
        "compat-graph" => {
            let r: &Relation64 = data.fuzzy("r").expect("table r");
            let props = relation_properties(r, g.tol)?;
            report
                .push("r", Item::matrix(r))
                .push("reflexive", Item::Bool(props.reflexive))
                .push("symmetric", Item::Bool(props.symmetric))
                .push("maxmin_transitive", Item::Bool(props.maxmin_transitive))
                .push("closure", Item::matrix(&transitive_closure(r, &TNorm::Min)?));
        }
        other => bail!("dataset {other} has no demo"),
    }
    Ok(report.into())
}
