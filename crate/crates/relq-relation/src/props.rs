use relq_grade::{Scalar, TNorm};

use crate::{compose, Composition, Relation, RelationError};

/// Binary relation with 1 where the grade reaches `alpha` (exceeds it when `strong`).
pub fn alpha_cut<S: Scalar>(r: &Relation<S>, alpha: S, strong: bool) -> Relation<S> {
    r.map(|v| {
        let inside = if strong { v > alpha } else { v >= alpha };
        if inside {
            S::one()
        } else {
            S::zero()
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropertyReport {
    pub reflexive: bool,
    /// No diagonal cell equals 1.
    pub antireflexive: bool,
    pub eps_reflexive: bool,
    pub symmetric: bool,
    /// `R(x, y) > 0` and `R(y, x) > 0` only when `x = y`.
    pub antisymmetric: bool,
    pub maxmin_transitive: bool,
}

pub fn relation_properties<S: Scalar>(r: &Relation<S>, eps: S) -> Result<PropertyReport, RelationError> {
    if !r.is_square() {
        return Err(RelationError::NotSquare(r.rows(), r.cols()));
    }
    let n = r.rows();
    let diag: Vec<S> = (0..n).map(|i| r.get(i, i)).collect();
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    Ok(PropertyReport {
        reflexive: diag.iter().all(|&d| d == S::one()),
        antireflexive: diag.iter().all(|&d| d < S::one()),
        eps_reflexive: diag.iter().all(|&d| d >= eps),
        symmetric: pairs().all(|(x, y)| r.get(x, y) == r.get(y, x)),
        antisymmetric: pairs()
            .all(|(x, y)| x == y || !(r.get(x, y) > S::zero() && r.get(y, x) > S::zero())),
        maxmin_transitive: is_transitive(r, &TNorm::Min),
    })
}

/// `R(x, z) >= sup_y t(R(x, y), R(y, z))` everywhere.
pub fn is_transitive<S: Scalar>(r: &Relation<S>, t: &TNorm<S>) -> bool {
    let Ok(rr) = compose(&Composition::SupT(*t), r, r) else {
        return false;
    };
    rr.is_subset_of(r, S::zero())
}

/// Least t-transitive relation containing `r`.
pub fn transitive_closure<S: Scalar>(r: &Relation<S>, t: &TNorm<S>) -> Result<Relation<S>, RelationError> {
    if !r.is_square() {
        return Err(RelationError::NotSquare(r.rows(), r.cols()));
    }
    let spec = Composition::SupT(*t);
    // union of the powers R, R^2, ...; paths longer than n add nothing new
    let mut acc = r.clone();
    for _ in 0..r.rows() {
        let next = acc.union(&compose(&spec, &acc, r)?)?;
        if next == acc {
            break;
        }
        acc = next;
    }
    Ok(acc)
}
