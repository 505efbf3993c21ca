use relq_grade::Scalar;
use relq_relation::Relation;

use crate::{neutro_max, neutro_min, NeutroError, NeutroGrade, NeutroMode};

/// Dense row-major matrix of neutrosophic grades.
#[derive(Debug, Clone, PartialEq)]
pub struct NeutroRelation<S: Scalar> {
    rows: usize,
    cols: usize,
    cells: Vec<NeutroGrade<S>>,
}

impl<S: Scalar> NeutroRelation<S> {
    pub fn from_rows(rows: Vec<Vec<NeutroGrade<S>>>) -> Result<Self, NeutroError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(NeutroError::Dimension(format!("row {bad} has {} cells, expected {cols}", rows[bad].len())));
        }
        Ok(NeutroRelation { rows: rows.len(), cols, cells: rows.into_iter().flatten().collect() })
    }

    /// Builds from tokens such as `"0.3"`, `"I"` or `".8I"`.
    pub fn parse_rows(rows: &[&[&str]]) -> Result<Self, NeutroError> {
        let parsed = rows.iter().map(|r| r.iter().map(|t| t.parse()).collect::<Result<Vec<_>, _>>());
        Self::from_rows(parsed.collect::<Result<_, _>>()?)
    }

    /// Embeds an ordinary fuzzy relation.
    pub fn from_real(r: &Relation<S>) -> Self {
        NeutroRelation {
            rows: r.rows(),
            cols: r.cols(),
            cells: r.cells().iter().map(|&v| NeutroGrade::real(v)).collect(),
        }
    }

    /// The fuzzy relation when every cell is real (or bottom).
    pub fn to_real(&self) -> Option<Relation<S>> {
        let rows = self.to_rows();
        let real: Option<Vec<Vec<S>>> = rows.iter().map(|r| r.iter().map(NeutroGrade::as_real).collect()).collect();
        real.map(|r| Relation::from_rows(r).expect("rectangular by construction"))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> NeutroGrade<S> {
        self.cells[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[NeutroGrade<S>] {
        &self.cells[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<NeutroGrade<S>> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn cells(&self) -> &[NeutroGrade<S>] {
        &self.cells
    }

    pub fn to_rows(&self) -> Vec<Vec<NeutroGrade<S>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let cells = (0..self.cols).flat_map(|j| (0..self.rows).map(move |i| (i, j))).map(|(i, j)| self.get(i, j));
        NeutroRelation { rows: self.cols, cols: self.rows, cells: cells.collect() }
    }

    /// Columns `keep` in the given order.
    pub fn select_cols(&self, keep: &[usize]) -> Self {
        let rows = (0..self.rows).map(|i| keep.iter().map(|&j| self.get(i, j)).collect()).collect();
        Self::from_rows(rows).expect("rectangular by construction")
    }
}

/// `r_ij = max_k min(p_ik, q_kj)` under `mode`.
pub fn neutro_compose<S: Scalar>(
    mode: NeutroMode,
    p: &NeutroRelation<S>,
    q: &NeutroRelation<S>,
) -> Result<NeutroRelation<S>, NeutroError> {
    if p.cols != q.rows {
        return Err(NeutroError::Dimension(format!("{}x{} o {}x{}", p.rows, p.cols, q.rows, q.cols)));
    }
    let cells = (0..p.rows)
        .flat_map(|i| (0..q.cols).map(move |j| (i, j)))
        .map(|(i, j)| {
            (0..p.cols).fold(NeutroGrade::zero(), |acc, k| neutro_max(mode, acc, neutro_min(mode, p.get(i, k), q.get(k, j))))
        })
        .collect();
    Ok(NeutroRelation { rows: p.rows, cols: q.cols, cells })
}

/// Row vector times matrix: `(x o A)_j = max_i min(x_i, a_ij)`.
pub fn neutro_compose_vec<S: Scalar>(
    mode: NeutroMode,
    x: &[NeutroGrade<S>],
    a: &NeutroRelation<S>,
) -> Result<Vec<NeutroGrade<S>>, NeutroError> {
    let row = NeutroRelation::from_rows(vec![x.to_vec()])?;
    Ok(neutro_compose(mode, &row, a)?.cells)
}
