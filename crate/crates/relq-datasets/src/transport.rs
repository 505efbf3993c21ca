use std::ops::Range;

use relq_grade::Scalar;
use relq_relation::{compose, Composition, Relation};
use relq_solve::{max_solution, FreProblem};
use serde::Serialize;

use crate::DatasetError;

/// Hour endings of the observed day, 6 a.m. to 10 p.m.
pub const PALLAVAN_HOURS: [u32; 17] = [6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22];

/// Passengers per hour.
pub const PALLAVAN_COUNTS: [u32; 17] = [96, 71, 222, 269, 300, 220, 241, 265, 249, 114, 381, 288, 356, 189, 376, 182, 67];

/// Scaled inputs `q` and outputs `r` cut into consecutive blocks.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct PartitionedSeries<S> {
    pub labels: Vec<String>,
    pub q: Vec<S>,
    pub r: Vec<S>,
    pub blocks: Vec<Range<usize>>,
}

impl<S: Scalar> PartitionedSeries<S> {
    /// The blocks must be non-empty, in order, and cover `0..n` exactly.
    pub fn new(labels: Vec<String>, q: Vec<S>, r: Vec<S>, blocks: Vec<Range<usize>>) -> Result<Self, DatasetError> {
        let n = q.len();
        if r.len() != n || labels.len() != n {
            return Err(DatasetError::Domain(format!("{} labels, {} inputs, {} outputs", labels.len(), n, r.len())));
        }
        let mut next = 0;
        for b in &blocks {
            if b.start != next || b.end <= b.start {
                return Err(DatasetError::Domain(format!("blocks must partition 0..{n}; got {blocks:?}")));
            }
            next = b.end;
        }
        if next != n {
            return Err(DatasetError::Domain(format!("blocks must partition 0..{n}; got {blocks:?}")));
        }
        if q.iter().chain(&r).any(|&v| !(v >= S::zero() && v <= S::one())) {
            return Err(DatasetError::Domain("series values must lie in [0, 1]; scale them first".into()));
        }
        Ok(PartitionedSeries { labels, q, r, blocks })
    }

    /// Consecutive blocks of the given sizes.
    pub fn with_sizes(labels: Vec<String>, q: Vec<S>, r: Vec<S>, sizes: &[usize]) -> Result<Self, DatasetError> {
        let mut start = 0;
        let blocks = sizes
            .iter()
            .map(|&s| {
                let b = start..start + s;
                start += s;
                b
            })
            .collect();
        Self::new(labels, q, r, blocks)
    }
}

/// One block's relation `P_i` with `P_i o q_i = r_i` and its peak.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct BlockEstimate<S> {
    pub range: Range<usize>,
    pub p: Relation<S>,
    /// Index into the series of the largest output (first on ties).
    pub peak: usize,
    pub peak_label: String,
    /// `max |P_i o q_i - r_i|`.
    pub residual: S,
}

/// Solves `P_i o q_i = r_i` under max-product for every block, taking the
/// greatest solution row by row, and locates each block's peak.
pub fn estimate_block_relations<S: Scalar>(series: &PartitionedSeries<S>) -> Result<Vec<BlockEstimate<S>>, DatasetError> {
    let comp = Composition::MaxProduct;
    series
        .blocks
        .iter()
        .enumerate()
        .map(|(bi, range)| {
            let q = &series.q[range.clone()];
            let r = &series.r[range.clone()];
            let qcol = Relation::column_vector(q)?;
            let mut rows = Vec::with_capacity(q.len());
            for (k, &target) in r.iter().enumerate() {
                let p = FreProblem::new(qcol.clone(), vec![target], comp)?;
                let row = max_solution(&p).ok_or_else(|| DatasetError::InfeasibleRow {
                    block: bi,
                    row: range.start + k,
                    label: series.labels[range.start + k].clone(),
                    target: target.to_f64().unwrap_or(f64::NAN),
                })?;
                rows.push(row);
            }
            let p = Relation::from_rows(rows)?;
            let out = compose(&comp, &p, &qcol)?;
            let residual = out.col(0).iter().zip(r).fold(S::zero(), |m, (&o, &t)| m.max((o - t).abs()));
            let local = (0..r.len()).fold(0, |best, k| if r[k] > r[best] { k } else { best });
            let peak = range.start + local;
            Ok(BlockEstimate { range: range.clone(), p, peak, peak_label: series.labels[peak].clone(), residual })
        })
        .collect()
}

/// The partitions reported for the passenger data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PallavanRun {
    /// First fifteen hours in five blocks of three.
    FiveByThree,
    /// Hours 7 to 21 in three blocks of five.
    ThreeByFive,
    /// Hours 6 to 21 in blocks of 3, 5, 2 and 6.
    Arbitrary,
}

impl PallavanRun {
    pub fn start_and_sizes(self) -> (usize, &'static [usize]) {
        match self {
            PallavanRun::FiveByThree => (0, &[3, 3, 3, 3, 3]),
            PallavanRun::ThreeByFive => (1, &[5, 5, 5]),
            PallavanRun::Arbitrary => (0, &[3, 5, 2, 6]),
        }
    }

    /// By number of blocks.
    pub fn from_blocks(n: usize) -> Option<Self> {
        match n {
            5 => Some(PallavanRun::FiveByThree),
            3 => Some(PallavanRun::ThreeByFive),
            4 => Some(PallavanRun::Arbitrary),
            _ => None,
        }
    }
}

/// The full day with hours scaled by `1e-2` and counts by `1e-4`, as one
/// block.
pub fn pallavan<S: Scalar>() -> PartitionedSeries<S> {
    pallavan_slice(0, &[17])
}

fn pallavan_slice<S: Scalar>(start: usize, sizes: &[usize]) -> PartitionedSeries<S> {
    let end = start + sizes.iter().sum::<usize>();
    let labels = PALLAVAN_HOURS[start..end].iter().map(|h| h.to_string()).collect();
    let q = PALLAVAN_HOURS[start..end].iter().map(|&h| S::lit(h as f64 * 1e-2)).collect();
    let r = PALLAVAN_COUNTS[start..end].iter().map(|&c| S::lit(c as f64 * 1e-4)).collect();
    PartitionedSeries::with_sizes(labels, q, r, sizes).expect("embedded partition is valid")
}

pub fn pallavan_partition<S: Scalar>(run: PallavanRun) -> PartitionedSeries<S> {
    let (start, sizes) = run.start_and_sizes();
    pallavan_slice(start, sizes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_element_block() {
        let s = PartitionedSeries::with_sizes(vec!["a".into()], vec![0.5], vec![0.2], &[1]).unwrap();
        let est = estimate_block_relations(&s).unwrap();
        assert_eq!(est[0].p.to_rows(), vec![vec![0.4]]);
        assert_eq!(est[0].peak, 0);
    }

    #[test]
    fn one_output_binds_at_the_largest_input() {
        let qcol = Relation::<f64>::column_vector(&[0.2, 0.5, 0.4]).unwrap();
        let p = FreProblem::new(qcol, vec![0.3], Composition::MaxProduct).unwrap();
        let row = max_solution(&p).unwrap();
        assert!(row.iter().zip([1.0, 0.6, 0.75]).all(|(a, b)| (a - b).abs() < 1e-12));
        assert!((row[1] * 0.5 - 0.3).abs() < 1e-12);
    }

    #[test]
    fn infeasible_row_is_named() {
        let s = PartitionedSeries::with_sizes(vec!["a".into(), "b".into()], vec![0.1, 0.2], vec![0.1, 0.9], &[2]).unwrap();
        match estimate_block_relations(&s) {
            Err(DatasetError::InfeasibleRow { row, label, .. }) => assert_eq!((row, label.as_str()), (1, "b")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn blocks_must_partition() {
        let l = || vec!["a".to_string(), "b".to_string()];
        assert!(PartitionedSeries::new(l(), vec![0.1, 0.2], vec![0.1, 0.1], vec![0..1]).is_err());
        assert!(PartitionedSeries::new(l(), vec![0.1, 0.2], vec![0.1, 0.1], vec![0..2, 1..2]).is_err());
        assert!(PartitionedSeries::new(l(), vec![0.1, 2.0], vec![0.1, 0.1], vec![0..2]).is_err());
    }

    #[test]
    fn ties_pick_the_first() {
        let s = PartitionedSeries::with_sizes(vec!["a".into(), "b".into()], vec![0.5, 0.5], vec![0.3, 0.3], &[2]).unwrap();
        assert_eq!(estimate_block_relations(&s).unwrap()[0].peak, 0);
    }
}
