use std::collections::{BTreeMap, BTreeSet, HashMap};

use relq_grade::{Implication, Scalar};
use relq_relation::Relation;
use serde::{Deserialize, Serialize};

use crate::ProductError;

pub type Set = BTreeSet<usize>;

/// Disorders, manifestations and the partial knowledge linking them.
///
/// `certain[d]` are the manifestations surely produced by disorder `d`,
/// `forbidden[d]` those it surely cannot produce. Observations are split
/// the same way into surely present and surely absent, the rest unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagnosisKnowledge {
    pub disorders: Vec<String>,
    pub manifestations: Vec<String>,
    pub certain: Vec<Set>,
    pub forbidden: Vec<Set>,
    pub observed_present: Set,
    pub observed_absent: Set,
}

#[derive(Serialize, Deserialize)]
struct KnowledgeRepr {
    disorders: Vec<String>,
    manifestations: Vec<String>,
    #[serde(default)]
    certain: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    forbidden: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    present: Vec<String>,
    #[serde(default)]
    absent: Vec<String>,
}

fn index(labels: &[String], what: &str) -> Result<HashMap<String, usize>, ProductError> {
    let mut map = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if map.insert(l.clone(), i).is_some() {
            return Err(ProductError::Domain(format!("duplicate {what} {l:?}")));
        }
    }
    Ok(map)
}

impl DiagnosisKnowledge {
    pub fn new(
        disorders: Vec<String>,
        manifestations: Vec<String>,
        certain: Vec<Set>,
        forbidden: Vec<Set>,
        observed_present: Set,
        observed_absent: Set,
    ) -> Result<Self, ProductError> {
        let k = DiagnosisKnowledge { disorders, manifestations, certain, forbidden, observed_present, observed_absent };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<(), ProductError> {
        index(&self.disorders, "disorder")?;
        index(&self.manifestations, "manifestation")?;
        let n = self.disorders.len();
        if self.certain.len() != n || self.forbidden.len() != n {
            return Err(ProductError::Domain(format!("{n} disorders need {n} certain and forbidden sets")));
        }
        let m = self.manifestations.len();
        let sets = self.certain.iter().chain(&self.forbidden).chain([&self.observed_present, &self.observed_absent]);
        if sets.flat_map(|s| s.iter()).any(|&i| i >= m) {
            return Err(ProductError::Domain(format!("manifestation index out of range for {m}")));
        }
        for (d, (p, q)) in self.certain.iter().zip(&self.forbidden).enumerate() {
            if !p.is_disjoint(q) {
                return Err(ProductError::Domain(format!("disorder {:?} both produces and forbids a manifestation", self.disorders[d])));
            }
        }
        if !self.observed_present.is_disjoint(&self.observed_absent) {
            return Err(ProductError::Domain("a manifestation is observed both present and absent".into()));
        }
        Ok(())
    }

    /// The manifestations with unknown status.
    pub fn unobserved(&self) -> Set {
        (0..self.manifestations.len())
            .filter(|i| !self.observed_present.contains(i) && !self.observed_absent.contains(i))
            .collect()
    }

    /// JSON with sets named by label:
    /// `{"disorders": [..], "manifestations": [..], "certain": {"d1": ["m1"]},
    /// "forbidden": {..}, "present": [..], "absent": [..]}`.
    pub fn from_json(text: &str) -> Result<Self, ProductError> {
        let r: KnowledgeRepr = serde_json::from_str(text).map_err(|e| ProductError::Format(e.to_string()))?;
        let dis = index(&r.disorders, "disorder")?;
        let man = index(&r.manifestations, "manifestation")?;
        let set = |names: &[String]| -> Result<Set, ProductError> {
            names
                .iter()
                .map(|n| man.get(n).copied().ok_or_else(|| ProductError::Domain(format!("unknown manifestation {n:?}"))))
                .collect()
        };
        let per_disorder = |map: &BTreeMap<String, Vec<String>>| -> Result<Vec<Set>, ProductError> {
            let mut out = vec![Set::new(); r.disorders.len()];
            for (d, names) in map {
                let &i = dis.get(d).ok_or_else(|| ProductError::Domain(format!("unknown disorder {d:?}")))?;
                out[i] = set(names)?;
            }
            Ok(out)
        };
        Self::new(
            r.disorders.clone(),
            r.manifestations.clone(),
            per_disorder(&r.certain)?,
            per_disorder(&r.forbidden)?,
            set(&r.present)?,
            set(&r.absent)?,
        )
    }

    pub fn to_json(&self) -> String {
        let names = |s: &Set| s.iter().map(|&i| self.manifestations[i].clone()).collect::<Vec<_>>();
        let per_disorder = |sets: &[Set]| {
            self.disorders.iter().zip(sets).filter(|(_, s)| !s.is_empty()).map(|(d, s)| (d.clone(), names(s))).collect()
        };
        let r = KnowledgeRepr {
            disorders: self.disorders.clone(),
            manifestations: self.manifestations.clone(),
            certain: per_disorder(&self.certain),
            forbidden: per_disorder(&self.forbidden),
            present: names(&self.observed_present),
            absent: names(&self.observed_absent),
        };
        serde_json::to_string_pretty(&r).expect("plain data serializes")
    }
}

/// How the weak-relevance filter combines its two tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Relevance {
    /// A sure effect observed present or a sure non-effect observed absent.
    #[default]
    Disjunctive,
    /// Both.
    Conjunctive,
}

/// The covering filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coverage {
    /// The sure effects include every observed presence, and the sure
    /// non-effects every observed absence.
    #[default]
    Superset,
    /// Every sure effect is observed present and every sure non-effect is
    /// observed absent.
    Subset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DiagnoseOptions {
    pub relevance: Relevance,
    pub coverage: Coverage,
}

/// Disorder indices passing each filter; `covering ⊆ relevant ⊆ potential`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagnosisReport {
    /// Not ruled out by the observations.
    pub potential: Vec<usize>,
    /// Potential and weakly relevant to the observations.
    pub relevant: Vec<usize>,
    /// Relevant and covering the observations.
    pub covering: Vec<usize>,
}

struct Verdict {
    consistent: bool,
    relevant: bool,
    covering: bool,
}

fn judge(k: &DiagnosisKnowledge, plus: &Set, minus: &Set, opts: &DiagnoseOptions) -> Verdict {
    let (mp, mm) = (&k.observed_present, &k.observed_absent);
    let consistent = plus.is_disjoint(mm) && minus.is_disjoint(mp);
    let (hit_p, hit_m) = (!plus.is_disjoint(mp), !minus.is_disjoint(mm));
    let relevant = consistent
        && match opts.relevance {
            Relevance::Disjunctive => hit_p || hit_m,
            Relevance::Conjunctive => hit_p && hit_m,
        };
    // covering is taken inside the relevant set so the three stay nested
    // even when nothing is observed
    let covering = relevant
        && match opts.coverage {
            Coverage::Superset => plus.is_superset(mp) && minus.is_superset(mm),
            Coverage::Subset => plus.is_subset(mp) && minus.is_subset(mm),
        };
    Verdict { consistent, relevant, covering }
}

pub fn diagnose(k: &DiagnosisKnowledge, opts: &DiagnoseOptions) -> Result<DiagnosisReport, ProductError> {
    k.validate()?;
    let mut report = DiagnosisReport { potential: vec![], relevant: vec![], covering: vec![] };
    for d in 0..k.disorders.len() {
        let v = judge(k, &k.certain[d], &k.forbidden[d], opts);
        if v.consistent {
            report.potential.push(d);
        }
        if v.relevant {
            report.relevant.push(d);
        }
        if v.covering {
            report.covering.push(d);
        }
    }
    Ok(report)
}

/// A group of disorders assumed jointly present. Explicit effect sets are
/// needed unless the joint effects are derived additively.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JointCandidate {
    pub members: Set,
    pub certain: Option<Set>,
    pub forbidden: Option<Set>,
}

impl JointCandidate {
    pub fn additive(members: impl IntoIterator<Item = usize>) -> Self {
        JointCandidate { members: members.into_iter().collect(), certain: None, forbidden: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JointEntry {
    pub members: Set,
    pub certain: Set,
    pub forbidden: Set,
    pub consistent: bool,
    pub relevant: bool,
    pub covering: bool,
}

/// Candidates ordered by cardinality (fewest disorders first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JointReport {
    pub entries: Vec<JointEntry>,
}

impl JointReport {
    /// The covering groups of least cardinality.
    pub fn most_parsimonious(&self) -> Vec<&JointEntry> {
        let best = self.entries.iter().filter(|e| e.covering).map(|e| e.members.len()).min();
        self.entries.iter().filter(|e| e.covering && Some(e.members.len()) == best).collect()
    }
}

/// Additive joint effects: sure effects unite, sure non-effects intersect.
pub fn joint_sets(k: &DiagnosisKnowledge, members: &Set) -> (Set, Set) {
    let plus = members.iter().flat_map(|&d| k.certain[d].iter().copied()).collect();
    let mut it = members.iter();
    let minus = match it.next() {
        Some(&first) => it.fold(k.forbidden[first].clone(), |acc, &d| acc.intersection(&k.forbidden[d]).copied().collect()),
        None => Set::new(),
    };
    (plus, minus)
}

pub fn diagnose_joint(
    k: &DiagnosisKnowledge,
    candidates: &[JointCandidate],
    additive: bool,
    opts: &DiagnoseOptions,
) -> Result<JointReport, ProductError> {
    k.validate()?;
    let mut entries = Vec::with_capacity(candidates.len());
    for c in candidates {
        if c.members.iter().any(|&d| d >= k.disorders.len()) {
            return Err(ProductError::Domain("candidate names an unknown disorder".into()));
        }
        let (plus, minus) = if additive {
            joint_sets(k, &c.members)
        } else {
            match (&c.certain, &c.forbidden) {
                (Some(p), Some(m)) => (p.clone(), m.clone()),
                _ => return Err(ProductError::Domain("non-additive candidates need explicit effect sets".into())),
            }
        };
        let v = judge(k, &plus, &minus, opts);
        entries.push(JointEntry {
            members: c.members.clone(),
            certain: plus,
            forbidden: minus,
            consistent: v.consistent,
            relevant: v.relevant,
            covering: v.covering,
        });
    }
    entries.sort_by(|a, b| a.members.len().cmp(&b.members.len()).then_with(|| a.members.cmp(&b.members)));
    Ok(JointReport { entries })
}

/// Degree to which each disorder (row of `r`) alone explains at least `k`
/// of the present manifestations `m_plus`:
/// `max_σ min_i [min(w_σ(i), m_plus_i) → r_di]` with `k` unit weights.
///
/// The `k` weighted manifestations are drawn from the support of `m_plus`;
/// an absent one would otherwise count as vacuously explained. Fewer than
/// `k` present manifestations give degree 0.
///
/// Each manifestation contributes `v_i = imp(m_plus_i, r_di)` when weighted
/// and `u_i = imp(0, r_di)` otherwise. A level `θ` is reachable iff every
/// `i` has `v_i ≥ θ` or `u_i ≥ θ`, and the forced picks `#{u_i < θ}` fit
/// in `k ≤ #{v_i ≥ θ}`; the degree is the highest such level.
pub fn explain_at_least_k<S: Scalar>(
    r: &Relation<S>,
    m_plus: &[S],
    k: usize,
    imp: &Implication<S>,
) -> Result<Vec<S>, ProductError> {
    let n = r.cols();
    if m_plus.len() != n {
        return Err(ProductError::Domain(format!("{n} manifestations but {} present degrees", m_plus.len())));
    }
    if k > n {
        return Err(ProductError::Domain(format!("k = {k} exceeds {n} manifestations")));
    }
    if k == 0 {
        return Ok(vec![S::one(); r.rows()]);
    }
    let support: Vec<usize> = (0..n).filter(|&i| m_plus[i] > S::zero()).collect();
    if k > support.len() {
        return Ok(vec![S::zero(); r.rows()]);
    }
    let present: Vec<S> = support.iter().map(|&i| m_plus[i]).collect();
    (0..r.rows())
        .map(|d| {
            let row: Vec<S> = support.iter().map(|&i| r.get(d, i)).collect();
            let v = row.iter().zip(&present).map(|(&x, &m)| imp.apply(m, x)).collect::<Result<Vec<S>, _>>()?;
            let u = row.iter().map(|&x| imp.apply(S::zero(), x)).collect::<Result<Vec<S>, _>>()?;
            let reachable = |t: S| {
                let mut forced = 0;
                let mut open = 0;
                for (&vi, &ui) in v.iter().zip(&u) {
                    if vi < t && ui < t {
                        return false;
                    }
                    forced += (ui < t) as usize;
                    open += (vi >= t) as usize;
                }
                forced <= k && k <= open
            };
            let best = v.iter().chain(&u).copied().filter(|&t| reachable(t)).fold(S::zero(), S::max);
            Ok(best)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> Set {
        v.iter().copied().collect()
    }

    fn labels(p: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{p}{i}")).collect()
    }

    fn knowledge(certain: Vec<Set>, forbidden: Vec<Set>, present: &[usize], absent: &[usize], m: usize) -> DiagnosisKnowledge {
        let n = certain.len();
        DiagnosisKnowledge::new(labels("d", n), labels("m", m), certain, forbidden, set(present), set(absent)).unwrap()
    }

    #[test]
    fn exact_match_is_covering() {
        let k = knowledge(vec![set(&[0])], vec![set(&[1])], &[0], &[1], 2);
        let r = diagnose(&k, &DiagnoseOptions::default()).unwrap();
        assert_eq!(r.covering, vec![0]);
        assert_eq!(r.relevant, vec![0]);
        assert_eq!(r.potential, vec![0]);
    }

    #[test]
    fn unknown_disorder_is_potential_only() {
        let k = knowledge(vec![set(&[]), set(&[0])], vec![set(&[]), set(&[])], &[0], &[1], 3);
        let r = diagnose(&k, &DiagnoseOptions::default()).unwrap();
        assert_eq!(r.potential, vec![0, 1]);
        assert_eq!(r.relevant, vec![1]);
    }

    #[test]
    fn no_observations_keep_everything() {
        let k = knowledge(vec![set(&[0]), set(&[1, 2]), set(&[])], vec![set(&[1]), set(&[0]), set(&[])], &[], &[], 3);
        let r = diagnose(&k, &DiagnoseOptions::default()).unwrap();
        assert_eq!(r.potential, vec![0, 1, 2]);
        assert!(r.covering.is_empty());
    }

    #[test]
    fn ruled_out() {
        // d1 surely produces m2, which is observed absent
        let k = knowledge(vec![set(&[1])], vec![set(&[])], &[0], &[1], 2);
        assert!(diagnose(&k, &DiagnoseOptions::default()).unwrap().potential.is_empty());
    }

    #[test]
    fn invariants_checked() {
        let bad = DiagnosisKnowledge::new(labels("d", 1), labels("m", 2), vec![set(&[0])], vec![set(&[0])], set(&[]), set(&[]));
        assert!(bad.is_err());
        let bad = DiagnosisKnowledge::new(labels("d", 1), labels("m", 2), vec![set(&[])], vec![set(&[])], set(&[1]), set(&[1]));
        assert!(bad.is_err());
        let bad = DiagnosisKnowledge::new(labels("d", 1), labels("m", 2), vec![set(&[5])], vec![set(&[])], set(&[]), set(&[]));
        assert!(bad.is_err());
    }

    #[test]
    fn variants() {
        let k = knowledge(vec![set(&[0]), set(&[0, 2])], vec![set(&[]), set(&[1])], &[0], &[1], 3);
        let conj = DiagnoseOptions { relevance: Relevance::Conjunctive, ..Default::default() };
        assert_eq!(diagnose(&k, &conj).unwrap().relevant, vec![1]);
        let sub = DiagnoseOptions { coverage: Coverage::Subset, ..Default::default() };
        assert_eq!(diagnose(&k, &sub).unwrap().covering, vec![0]);
        assert_eq!(diagnose(&k, &DiagnoseOptions::default()).unwrap().covering, vec![1]);
    }

    #[test]
    fn pair_covers_where_singletons_do_not() {
        let k = knowledge(vec![set(&[0]), set(&[1])], vec![set(&[2]), set(&[2, 3])], &[0, 1], &[], 4);
        let cands = [JointCandidate::additive([0, 1]), JointCandidate::additive([0]), JointCandidate::additive([1])];
        let rep = diagnose_joint(&k, &cands, true, &DiagnoseOptions::default()).unwrap();
        assert_eq!(rep.entries[0].members, set(&[0]));
        assert!(!rep.entries[0].covering && !rep.entries[1].covering);
        let pair = &rep.entries[2];
        assert!(pair.covering);
        assert_eq!(pair.certain, set(&[0, 1]));
        assert_eq!(pair.forbidden, set(&[2]));
        assert_eq!(rep.most_parsimonious().len(), 1);
        assert!(diagnose_joint(&k, &cands, false, &DiagnoseOptions::default()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = knowledge(vec![set(&[0]), set(&[])], vec![set(&[1]), set(&[])], &[0], &[1], 3);
        let back = DiagnosisKnowledge::from_json(&k.to_json()).unwrap();
        assert_eq!(back, k);
        let text = r#"{"disorders":["flu"],"manifestations":["fever"],"certain":{"cold":["fever"]}}"#;
        assert!(DiagnosisKnowledge::from_json(text).is_err());
    }

    #[test]
    fn at_least_k_crisp() {
        let r = Relation::<f64>::from_f64_rows(&[&[1., 1., 0.], &[1., 0., 0.]]).unwrap();
        let m = [1., 1., 0.];
        let d = explain_at_least_k(&r, &m, 2, &Implication::Godel).unwrap();
        assert_eq!(d, vec![1.0, 0.0]);
        assert_eq!(explain_at_least_k(&r, &m, 0, &Implication::Godel).unwrap(), vec![1.0, 1.0]);
        assert!(explain_at_least_k(&r, &m, 4, &Implication::Godel).is_err());
    }
}
