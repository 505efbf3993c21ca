//! Dense fuzzy relations over [0, 1].
//!
//! A [`Relation`] is a row-major `rows x cols` grid of grades. Composition
//! semantics are chosen per call through [`Composition`].

mod compose;
mod io;
mod props;

use relq_grade::{GradeError, Scalar};
use serde::{Deserialize, Serialize};

pub use compose::{compose, compose_vec, relational_join, Composition, Join};
pub use io::{from_csv, from_json, to_csv, to_json};
pub use props::{alpha_cut, relation_properties, transitive_closure, PropertyReport};

pub type Relation64 = Relation<f64>;
pub type Composition64 = Composition<f64>;

#[derive(Debug, thiserror::Error)]
pub enum RelationError {
    #[error("relation must have at least one row and one column")]
    Empty,
    #[error("grade {value} at ({row}, {col}) is outside [0, 1]")]
    OutOfRange { row: usize, col: usize, value: f64 },
    #[error("ragged input: row {row} has {got} cells, expected {expected}")]
    Ragged { row: usize, got: usize, expected: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("relation is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error(transparent)]
    Grade(#[from] GradeError),
    #[error("csv: {0}")]
    Csv(String),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Repr<S>", into = "Repr<S>", bound = "S: Scalar")]
pub struct Relation<S> {
    rows: usize,
    cols: usize,
    cells: Vec<S>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct Repr<S> {
    rows: usize,
    cols: usize,
    cells: Vec<Vec<S>>,
}

impl<S: Scalar> TryFrom<Repr<S>> for Relation<S> {
    type Error = RelationError;
    fn try_from(r: Repr<S>) -> Result<Self, Self::Error> {
        let rel = Relation::from_rows(r.cells)?;
        if rel.rows != r.rows || rel.cols != r.cols {
            return Err(RelationError::Dimension(format!(
                "header says {}x{}, cells are {}x{}",
                r.rows, r.cols, rel.rows, rel.cols
            )));
        }
        Ok(rel)
    }
}

impl<S: Scalar> From<Relation<S>> for Repr<S> {
    fn from(r: Relation<S>) -> Self {
        Repr { rows: r.rows, cols: r.cols, cells: r.to_rows() }
    }
}

impl<S: Scalar> Relation<S> {
    /// Builds from row-major cells, validating dimensions and range.
    pub fn new(rows: usize, cols: usize, cells: Vec<S>) -> Result<Self, RelationError> {
        if rows == 0 || cols == 0 {
            return Err(RelationError::Empty);
        }
        if cells.len() != rows * cols {
            return Err(RelationError::Dimension(format!(
                "{} cells for a {}x{} relation",
                cells.len(),
                rows,
                cols
            )));
        }
        for (k, &v) in cells.iter().enumerate() {
            if !relq_grade::is_grade(v) {
                return Err(RelationError::OutOfRange {
                    row: k / cols,
                    col: k % cols,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Relation { rows, cols, cells })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, RelationError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(RelationError::Ragged { row: i, got: r.len(), expected: cols });
            }
            cells.extend(r);
        }
        Relation::new(n, cols, cells)
    }

    /// Rows given as `f64` literals; handy for fixed data tables.
    pub fn from_f64_rows(rows: &[&[f64]]) -> Result<Self, RelationError> {
        Relation::from_rows(rows.iter().map(|r| r.iter().map(|&v| S::lit(v)).collect()).collect())
    }

    pub fn row_vector(v: &[S]) -> Result<Self, RelationError> {
        Relation::new(1, v.len(), v.to_vec())
    }

    pub fn column_vector(v: &[S]) -> Result<Self, RelationError> {
        Relation::new(v.len(), 1, v.to_vec())
    }

    pub fn filled(rows: usize, cols: usize, v: S) -> Result<Self, RelationError> {
        Relation::new(rows, cols, vec![v; rows * cols])
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self, RelationError> {
        Relation::filled(rows, cols, S::zero())
    }

    pub fn identity(n: usize) -> Result<Self, RelationError> {
        let mut r = Relation::zeros(n, n)?;
        for i in 0..n {
            r.set(i, i, S::one());
        }
        Ok(r)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.cells[i * self.cols + j]
    }

    /// Sets a cell; the value is clamped into [0, 1].
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.cells[i * self.cols + j] = v.clamp01();
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.cells[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn cells(&self) -> &[S] {
        &self.cells
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                cells.push(self.get(i, j));
            }
        }
        Relation { rows: self.cols, cols: self.rows, cells }
    }

    /// Cell-wise map, clamped into [0, 1].
    pub fn map(&self, f: impl Fn(S) -> S) -> Self {
        Relation {
            rows: self.rows,
            cols: self.cols,
            cells: self.cells.iter().map(|&v| f(v).clamp01()).collect(),
        }
    }

    /// Cell-wise combination of two equally sized relations.
    pub fn zip_with(&self, other: &Self, f: impl Fn(S, S) -> S) -> Result<Self, RelationError> {
        self.same_shape(other)?;
        Ok(Relation {
            rows: self.rows,
            cols: self.cols,
            cells: self.cells.iter().zip(&other.cells).map(|(&a, &b)| f(a, b).clamp01()).collect(),
        })
    }

    /// Cell-wise maximum (fuzzy union).
    pub fn union(&self, other: &Self) -> Result<Self, RelationError> {
        self.zip_with(other, |a, b| a.max(b))
    }

    /// Cell-wise minimum (fuzzy intersection).
    pub fn intersection(&self, other: &Self) -> Result<Self, RelationError> {
        self.zip_with(other, |a, b| a.min(b))
    }

    /// `self <= other` in every cell, up to `tol`.
    pub fn is_subset_of(&self, other: &Self, tol: S) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.cells.iter().zip(&other.cells).all(|(&a, &b)| a <= b + tol)
    }

    pub fn approx_eq(&self, other: &Self, tol: S) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.cells.iter().zip(&other.cells).all(|(&a, &b)| (a - b).abs() <= tol)
    }

    /// Largest absolute cell difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<S, RelationError> {
        self.same_shape(other)?;
        Ok(self
            .cells
            .iter()
            .zip(&other.cells)
            .fold(S::zero(), |m, (&a, &b)| m.max((a - b).abs())))
    }

    fn same_shape(&self, other: &Self) -> Result<(), RelationError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(RelationError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl<S: Scalar> std::fmt::Display for Relation<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert!(matches!(Relation64::new(0, 1, vec![]), Err(RelationError::Empty)));
        assert!(matches!(
            Relation64::from_rows(vec![vec![0.1, 0.2], vec![0.3]]),
            Err(RelationError::Ragged { row: 1, .. })
        ));
        assert!(matches!(
            Relation64::from_rows(vec![vec![1.2]]),
            Err(RelationError::OutOfRange { .. })
        ));
    }

    #[test]
    fn transpose_twice() {
        let r = Relation64::from_rows(vec![vec![0.1, 0.2, 0.3], vec![0.4, 0.5, 0.6]]).unwrap();
        let t = r.transpose();
        assert_eq!((t.rows(), t.cols()), (3, 2));
        assert_eq!(t.get(2, 1), 0.6);
        assert_eq!(t.transpose(), r);
        let one = Relation64::from_rows(vec![vec![0.4]]).unwrap();
        assert_eq!(one.transpose(), one);
    }

    #[test]
    fn set_clamps() {
        let mut r = Relation64::zeros(1, 1).unwrap();
        r.set(0, 0, 1.5);
        assert_eq!(r.get(0, 0), 1.0);
    }
}
