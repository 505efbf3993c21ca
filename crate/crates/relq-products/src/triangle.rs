use std::collections::HashSet;

use relq_grade::{Implication, Scalar};
use relq_relation::{alpha_cut, Relation};

use crate::ProductError;

/// Criteria x subjects observations with their labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationMatrix<S: Scalar> {
    pub relation: Relation<S>,
    pub criteria: Vec<String>,
    pub subjects: Vec<String>,
}

fn unique(labels: &[String], what: &str) -> Result<(), ProductError> {
    let mut seen = HashSet::new();
    match labels.iter().find(|l| !seen.insert(l.as_str())) {
        Some(dup) => Err(ProductError::Domain(format!("duplicate {what} label {dup:?}"))),
        None => Ok(()),
    }
}

impl<S: Scalar> ObservationMatrix<S> {
    pub fn new(relation: Relation<S>, criteria: Vec<String>, subjects: Vec<String>) -> Result<Self, ProductError> {
        if criteria.len() != relation.rows() || subjects.len() != relation.cols() {
            return Err(ProductError::Domain(format!(
                "{}x{} relation with {} criteria and {} subject labels",
                relation.rows(),
                relation.cols(),
                criteria.len(),
                subjects.len()
            )));
        }
        unique(&criteria, "criterion")?;
        unique(&subjects, "subject")?;
        Ok(ObservationMatrix { relation, criteria, subjects })
    }

    /// Labels `C1..` and `P1..`.
    pub fn unlabeled(relation: Relation<S>) -> Self {
        let criteria = (1..=relation.rows()).map(|i| format!("C{i}")).collect();
        let subjects = (1..=relation.cols()).map(|j| format!("P{j}")).collect();
        ObservationMatrix { relation, criteria, subjects }
    }

    /// Header row of subject labels (first cell ignored), then one row per
    /// criterion starting with its label.
    pub fn from_csv(text: &str) -> Result<Self, ProductError> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
        let fmt = |e: csv::Error| ProductError::Format(e.to_string());
        let subjects: Vec<String> = rdr.headers().map_err(fmt)?.iter().skip(1).map(String::from).collect();
        let mut criteria = Vec::new();
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(fmt)?;
            let mut it = rec.iter();
            criteria.push(it.next().unwrap_or_default().to_string());
            let row = it
                .map(|c| c.parse::<f64>().map(S::lit).map_err(|_| ProductError::Format(format!("bad grade {c:?}"))))
                .collect::<Result<Vec<S>, _>>()?;
            rows.push(row);
        }
        Self::new(Relation::from_rows(rows)?, criteria, subjects)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(vec![]);
        let header = std::iter::once(String::new()).chain(self.subjects.iter().cloned());
        w.write_record(header).expect("write to memory");
        for (i, label) in self.criteria.iter().enumerate() {
            let row = std::iter::once(label.clone()).chain(self.relation.row(i).iter().map(|v| v.to_string()));
            w.write_record(row).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }
}

fn mean_implication<S: Scalar>(imp: &Implication<S>, a: &[S], b: &[S]) -> Result<S, ProductError> {
    let mut sum = S::zero();
    for (&x, &y) in a.iter().zip(b) {
        sum = sum + imp.apply(x, y)?;
    }
    Ok(sum / S::from_usize(a.len()).expect("length fits"))
}

fn square<S: Scalar>(n: usize, f: impl Fn(usize, usize) -> Result<S, ProductError>) -> Result<Relation<S>, ProductError> {
    let rows = (0..n).map(|j| (0..n).map(|m| f(j, m)).collect::<Result<Vec<S>, _>>()).collect::<Result<_, _>>()?;
    Ok(Relation::from_rows(rows)?)
}

/// `U_jm = (1/K) sum_k (R_kj -> R_km)`: how far the criteria of subject
/// `j` imply those of subject `m`.
pub fn triangle_product_subjects<S: Scalar>(
    obs: &ObservationMatrix<S>,
    imp: &Implication<S>,
) -> Result<Relation<S>, ProductError> {
    let cols: Vec<Vec<S>> = (0..obs.relation.cols()).map(|j| obs.relation.col(j)).collect();
    square(cols.len(), |j, m| mean_implication(imp, &cols[j], &cols[m]))
}

/// `V_ik = (1/J) sum_j (R_ij -> R_kj)`: how far criterion `i` implies
/// criterion `k` across subjects.
pub fn triangle_product_criteria<S: Scalar>(
    obs: &ObservationMatrix<S>,
    imp: &Implication<S>,
) -> Result<Relation<S>, ProductError> {
    let r = &obs.relation;
    square(r.rows(), |i, k| mean_implication(imp, r.row(i), r.row(k)))
}

fn check_binary<S: Scalar>(marks: &Relation<S>) -> Result<(), ProductError> {
    if marks.cells().iter().any(|&v| v != S::zero() && v != S::one()) {
        return Err(ProductError::Domain("checklist marks must be 0 or 1".into()));
    }
    Ok(())
}

/// Checklist counts for subjects `j` and `m` (rows of `marks`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContingencyTable {
    pub a00: usize,
    pub a01: usize,
    pub a10: usize,
    pub a11: usize,
    pub n: usize,
}

impl ContingencyTable {
    pub fn new(a00: usize, a01: usize, a10: usize, a11: usize) -> Self {
        ContingencyTable { a00, a01, a10, a11, n: a00 + a01 + a10 + a11 }
    }

    pub fn r0(&self) -> usize {
        self.a00 + self.a01
    }

    pub fn r1(&self) -> usize {
        self.a10 + self.a11
    }

    pub fn c0(&self) -> usize {
        self.a00 + self.a10
    }

    pub fn c1(&self) -> usize {
        self.a01 + self.a11
    }
}

/// Counts items by (mark for `j`, mark for `m`).
pub fn contingency<S: Scalar>(marks: &Relation<S>, j: usize, m: usize) -> Result<ContingencyTable, ProductError> {
    check_binary(marks)?;
    if j >= marks.rows() || m >= marks.rows() {
        return Err(ProductError::Domain(format!("subject index out of range for {} subjects", marks.rows())));
    }
    let mut t = [[0usize; 2]; 2];
    for (&v, &w) in marks.row(j).iter().zip(marks.row(m)) {
        t[(v == S::one()) as usize][(w == S::one()) as usize] += 1;
    }
    Ok(ContingencyTable::new(t[0][0], t[0][1], t[1][0], t[1][1]))
}

/// `W_jm = imp(x_j, x_m)` where `x_j` is the share of items marked for
/// subject `j` (a row of `marks`).
pub fn checklist_product<S: Scalar>(marks: &Relation<S>, imp: &Implication<S>) -> Result<Relation<S>, ProductError> {
    check_binary(marks)?;
    let n = S::from_usize(marks.cols()).expect("length fits");
    let share: Vec<S> = (0..marks.rows()).map(|i| marks.row(i).iter().fold(S::zero(), |a, &v| a + v) / n).collect();
    square(share.len(), |j, m| Ok(imp.apply(share[j], share[m])?))
}

/// `m = 1 - a10 / n`.
pub fn classical_support<S: Scalar>(t: &ContingencyTable) -> Result<S, ProductError> {
    if t.n == 0 {
        return Err(ProductError::Domain("empty contingency table".into()));
    }
    Ok(S::one() - S::from_usize(t.a10).expect("count fits") / S::from_usize(t.n).expect("count fits"))
}

/// Rounds half up to `decimals` places.
pub fn round_to<S: Scalar>(r: &Relation<S>, decimals: u32) -> Relation<S> {
    let scale = S::lit(10f64.powi(decimals as i32));
    r.map(|v| (v * scale + S::lit(0.5) + S::tol()).floor() / scale)
}

/// Alpha cuts at each level, optionally on the matrix rounded first (as
/// printed tables are).
pub fn alpha_report<S: Scalar>(r: &Relation<S>, levels: &[S], decimals: Option<u32>) -> Vec<(S, Relation<S>)> {
    let base = decimals.map_or_else(|| r.clone(), |d| round_to(r, d));
    levels.iter().map(|&a| (a, alpha_cut(&base, a, false))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use relq_relation::Relation64;

    fn marks() -> Relation64 {
        // five subjects (rows) by five items
        Relation64::from_f64_rows(&[
            &[0., 1., 1., 1., 0.],
            &[0., 1., 1., 0., 1.],
            &[0., 1., 0., 1., 0.],
            &[0., 1., 0., 1., 0.],
            &[1., 1., 1., 0., 0.],
        ])
        .unwrap()
    }

    #[test]
    fn all_ones_give_all_ones() {
        let obs = ObservationMatrix::unlabeled(Relation64::filled(3, 4, 1.0).unwrap());
        let u = triangle_product_subjects(&obs, &Implication::CrispMaterial).unwrap();
        assert_eq!(u, Relation64::filled(4, 4, 1.0).unwrap());
        let v = triangle_product_criteria(&obs, &Implication::CrispMaterial).unwrap();
        assert_eq!(v, Relation64::filled(3, 3, 1.0).unwrap());
    }

    #[test]
    fn single_criterion() {
        let obs = ObservationMatrix::unlabeled(Relation64::from_f64_rows(&[&[1., 0., 1.]]).unwrap());
        let v = triangle_product_criteria(&obs, &Implication::CrispMaterial).unwrap();
        assert_eq!(v.to_rows(), vec![vec![1.0]]);
    }

    #[test]
    fn crisp_needs_binary() {
        let obs = ObservationMatrix::unlabeled(Relation64::from_f64_rows(&[&[0.5, 1.]]).unwrap());
        assert!(triangle_product_subjects(&obs, &Implication::CrispMaterial).is_err());
        assert!(triangle_product_subjects(&obs, &Implication::Lukasiewicz).is_ok());
    }

    #[test]
    fn contingency_and_support() {
        let t = contingency(&marks(), 1, 2).unwrap();
        assert_eq!(t, ContingencyTable::new(1, 1, 2, 1));
        assert_eq!(classical_support::<f64>(&t).unwrap(), 0.6);
        assert_eq!(contingency(&marks(), 0, 2).unwrap(), ContingencyTable::new(2, 0, 1, 2));
        assert_eq!(classical_support::<f64>(&ContingencyTable::new(3, 2, 0, 1)).unwrap(), 1.0);
        assert_eq!(classical_support::<f64>(&ContingencyTable::new(0, 0, 4, 0)).unwrap(), 0.0);
        assert!(classical_support::<f64>(&ContingencyTable::new(0, 0, 0, 0)).is_err());
    }

    #[test]
    fn checklist_edge_cases() {
        let zero = Relation64::zeros(3, 4).unwrap();
        assert_eq!(checklist_product(&zero, &Implication::KleeneDienes).unwrap(), Relation64::filled(3, 3, 1.0).unwrap());
        let w = checklist_product(&marks(), &Implication::KleeneDienes).unwrap();
        assert!((0..5).all(|i| w.get(i, i) >= 0.5));
        assert!(checklist_product(&Relation64::from_f64_rows(&[&[0.5]]).unwrap(), &Implication::KleeneDienes).is_err());
    }

    #[test]
    fn rounding_is_half_up() {
        let r = Relation64::from_f64_rows(&[&[0.875, 0.625, 0.5, 0.7]]).unwrap();
        assert_eq!(round_to(&r, 2).to_rows(), vec![vec![0.88, 0.63, 0.5, 0.7]]);
        let cuts = alpha_report(&r, &[0.88, 1.0], Some(2));
        assert_eq!(cuts[0].1.to_rows(), vec![vec![1.0, 0.0, 0.0, 0.0]]);
        assert_eq!(cuts[1].1.to_rows(), vec![vec![0.0; 4]]);
    }

    #[test]
    fn csv_labels() {
        let text = ",P1,P2\nfever,1,0\ncough,0.5,1\n";
        let obs = ObservationMatrix::<f64>::from_csv(text).unwrap();
        assert_eq!(obs.subjects, vec!["P1", "P2"]);
        assert_eq!(obs.criteria, vec!["fever", "cough"]);
        assert_eq!(obs.relation.get(1, 0), 0.5);
        assert_eq!(ObservationMatrix::<f64>::from_csv(&obs.to_csv()).unwrap(), obs);
        assert!(ObservationMatrix::<f64>::from_csv(",P1,P1\nx,1,0\n").is_err());
    }
}
