use relq_grade::{Implication, Scalar, TNorm};

use crate::{Relation, RelationError};

/// How `P o Q` combines a row of `P` with a column of `Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Composition<S> {
    MaxMin,
    MaxProduct,
    SupT(TNorm<S>),
    /// `min_k imp(p_ik, q_kj)`.
    InfImplication(Implication<S>),
}

impl<S: Scalar> Composition<S> {
    /// The t-norm of a sup-t composition, `None` for inf-implication.
    pub fn tnorm(&self) -> Option<TNorm<S>> {
        match self {
            Composition::MaxMin => Some(TNorm::Min),
            Composition::MaxProduct => Some(TNorm::Product),
            Composition::SupT(t) => Some(*t),
            Composition::InfImplication(_) => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Composition::MaxMin => "max-min".into(),
            Composition::MaxProduct => "max-product".into(),
            Composition::SupT(t) => format!("sup-t:{}", t.name()),
            Composition::InfImplication(i) => format!("inf-imp:{}", i.name()),
        }
    }

    /// Parses `max-min`, `max-product`, `sup-t:<tnorm>` or `inf-imp:<implication>`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim().to_ascii_lowercase();
        if let Some(t) = s.strip_prefix("sup-t:") {
            return TNorm::from_name(t).map(Composition::SupT);
        }
        if let Some(i) = s.strip_prefix("inf-imp:") {
            return Implication::from_name(i).map(Composition::InfImplication);
        }
        match s.as_str() {
            "max-min" | "maxmin" => Some(Composition::MaxMin),
            "max-product" | "maxproduct" | "max-prod" => Some(Composition::MaxProduct),
            _ => None,
        }
    }

    /// Folds one row/column pair.
    pub fn combine(&self, p: &[S], q: impl Iterator<Item = S>) -> Result<S, RelationError> {
        match self {
            Composition::InfImplication(imp) => {
                let mut acc = S::one();
                for (&a, b) in p.iter().zip(q) {
                    acc = acc.min(imp.apply(a, b)?);
                }
                Ok(acc)
            }
            _ => {
                let t = self.tnorm().expect("sup-t composition");
                Ok(p.iter().zip(q).fold(S::zero(), |acc, (&a, b)| acc.max(t.apply(a, b))))
            }
        }
    }
}

/// `P o Q` under the given composition.
pub fn compose<S: Scalar>(
    spec: &Composition<S>,
    p: &Relation<S>,
    q: &Relation<S>,
) -> Result<Relation<S>, RelationError> {
    if p.cols() != q.rows() {
        return Err(RelationError::Dimension(format!(
            "cannot compose {}x{} with {}x{}",
            p.rows(),
            p.cols(),
            q.rows(),
            q.cols()
        )));
    }
    let mut cells = Vec::with_capacity(p.rows() * q.cols());
    for i in 0..p.rows() {
        let row = p.row(i);
        for j in 0..q.cols() {
            cells.push(spec.combine(row, (0..q.rows()).map(|k| q.get(k, j)))?);
        }
    }
    Relation::new(p.rows(), q.cols(), cells)
}

/// Row vector times relation: `(x o A)_j`.
pub fn compose_vec<S: Scalar>(
    spec: &Composition<S>,
    x: &[S],
    a: &Relation<S>,
) -> Result<Vec<S>, RelationError> {
    if x.len() != a.rows() {
        return Err(RelationError::Dimension(format!(
            "vector of length {} against {}x{}",
            x.len(),
            a.rows(),
            a.cols()
        )));
    }
    (0..a.cols())
        .map(|j| spec.combine(x, (0..a.rows()).map(|i| a.get(i, j))))
        .collect()
}

/// Three-axis grid `J(x, y, z) = min(P(x, y), Q(y, z))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Join<S> {
    pub dims: (usize, usize, usize),
    cells: Vec<S>,
}

impl<S: Scalar> Join<S> {
    pub fn get(&self, x: usize, y: usize, z: usize) -> S {
        let (_, ny, nz) = self.dims;
        self.cells[(x * ny + y) * nz + z]
    }

    /// Projection by maximum over the middle axis.
    pub fn project(&self) -> Relation<S> {
        let (nx, ny, nz) = self.dims;
        let mut cells = Vec::with_capacity(nx * nz);
        for x in 0..nx {
            for z in 0..nz {
                cells.push((0..ny).fold(S::zero(), |m, y| m.max(self.get(x, y, z))));
            }
        }
        Relation::new(nx, nz, cells).expect("projection of a valid join")
    }
}

pub fn relational_join<S: Scalar>(p: &Relation<S>, q: &Relation<S>) -> Result<Join<S>, RelationError> {
    if p.cols() != q.rows() {
        return Err(RelationError::Dimension(format!(
            "cannot join {}x{} with {}x{}",
            p.rows(),
            p.cols(),
            q.rows(),
            q.cols()
        )));
    }
    let dims = (p.rows(), p.cols(), q.cols());
    let mut cells = Vec::with_capacity(dims.0 * dims.1 * dims.2);
    for x in 0..dims.0 {
        for y in 0..dims.1 {
            for z in 0..dims.2 {
                cells.push(p.get(x, y).min(q.get(y, z)));
            }
        }
    }
    Ok(Join { dims, cells })
}
