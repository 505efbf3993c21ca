use relq_grade::Scalar;
use relq_relation::{compose, Composition, Relation};

use crate::DatasetError;

/// Weight matrices of the three experts: six labourer attributes (rows)
/// against four owner attributes (columns).
const EXPERTS: [[[f64; 4]; 6]; 3] = [
    [[0.8, 0.0, 0.0, 0.0], [0.8, 0.3, 0.3, 0.0], [0.1, 0.2, 0.3, 0.4], [0.0, 0.1, 0.1, 0.1], [0.8, 0.1, 0.2, 0.4], [0.2, 0.4, 0.4, 0.9]],
    [[0.7, 0.1, 0.0, 0.0], [0.9, 0.2, 0.3, 0.0], [0.0, 0.1, 0.2, 0.3], [0.0, 0.0, 0.1, 0.1], [0.9, 0.0, 0.1, 0.4], [0.1, 0.2, 0.4, 0.7]],
    [[0.9, 0.0, 0.0, 0.0], [0.5, 0.3, 0.4, 0.1], [0.2, 0.2, 0.2, 0.3], [0.0, 0.0, 0.1, 0.2], [0.7, 0.2, 0.2, 0.4], [0.2, 0.3, 0.3, 0.8]],
];

/// Published `P o Q` for each expert.
pub const PUBLISHED_FORWARD: [[f64; 6]; 3] =
    [[0.6, 0.6, 0.4, 0.1, 0.6, 0.5], [0.6, 0.6, 0.3, 0.1, 0.6, 0.5], [0.6, 0.5, 0.3, 0.2, 0.6, 0.5]];

/// Published `P^T o R` for each expert.
pub const PUBLISHED_INVERSE: [[f64; 4]; 3] = [[0.6, 0.4, 0.4, 0.6], [0.6, 0.2, 0.4, 0.6], [0.6, 0.3, 0.4, 0.6]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Labourer status from the owners' expected profit: `R = P o Q`.
    Forward,
    /// Owner state from a target status: `Q = P^T o R`.
    Inverse,
}

fn check(expert: usize) -> Result<(), DatasetError> {
    if !(1..=3).contains(&expert) {
        return Err(DatasetError::Domain(format!("expert {expert} is not one of 1, 2, 3")));
    }
    Ok(())
}

pub fn expert_matrix<S: Scalar>(expert: usize) -> Result<Relation<S>, DatasetError> {
    check(expert)?;
    let rows = EXPERTS[expert - 1].iter().map(|r| r.iter().map(|&v| S::lit(v)).collect()).collect();
    Ok(Relation::from_rows(rows)?)
}

/// The owners' expected profit `Q`.
pub fn bonded_labor_q<S: Scalar>() -> Vec<S> {
    [0.6, 0.5, 0.7, 0.5].map(S::lit).to_vec()
}

/// The target labourer status `R` for the inverse question.
pub fn bonded_labor_r<S: Scalar>() -> Vec<S> {
    [0.6, 0.4, 0.5, 0.4, 0.2, 0.6].map(S::lit).to_vec()
}

/// Max-min evaluation of one expert's matrix in either direction.
pub fn demo_bonded_labor<S: Scalar>(expert: usize, direction: Direction) -> Result<Vec<S>, DatasetError> {
    let p = expert_matrix::<S>(expert)?;
    let out = match direction {
        Direction::Forward => compose(&Composition::MaxMin, &p, &Relation::column_vector(&bonded_labor_q())?)?,
        Direction::Inverse => compose(&Composition::MaxMin, &p.transpose(), &Relation::column_vector(&bonded_labor_r())?)?,
    };
    Ok(out.col(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_expert() {
        assert!(demo_bonded_labor::<f64>(0, Direction::Forward).is_err());
        assert!(demo_bonded_labor::<f64>(4, Direction::Inverse).is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(demo_bonded_labor::<f64>(1, Direction::Forward).unwrap().len(), 6);
        assert_eq!(demo_bonded_labor::<f32>(2, Direction::Inverse).unwrap().len(), 4);
    }
}
