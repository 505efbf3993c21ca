use relq_grade::Scalar;
use relq_relation::Relation;

/// `1` where `a_ij > b_j`, `0` where equal, `-1` where less.
pub fn pseudo_char_matrix<S: Scalar>(a: &Relation<S>, b: &[S]) -> Vec<Vec<i8>> {
    (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| {
                    let (v, t) = (a.get(i, j), b[j]);
                    if (v - t).abs() <= S::tol() {
                        0
                    } else if v > t {
                        1
                    } else {
                        -1
                    }
                })
                .collect()
        })
        .collect()
}

/// Max-min solvability test read off the pseudo-characteristic matrix.
///
/// Every column needs a row with `a_ij >= b_j` whose other strict cells
/// all sit at right-hand sides no smaller than `b_j`; such a row attains
/// `b_j` at the maximum solution. Sufficient, not necessary.
pub fn sufficient_condition<S: Scalar>(a: &Relation<S>, b: &[S]) -> bool {
    let p = pseudo_char_matrix(a, b);
    (0..a.cols()).all(|j| {
        (0..a.rows()).any(|i| p[i][j] >= 0 && (0..a.cols()).all(|k| p[i][k] != 1 || b[k] >= b[j] - S::tol()))
    })
}

/// Zeroes cells that can never be the witness of their column under
/// max-min: if `b_j1 > b_j2`, `a_ij1 >= b_j1` and `a_ij2 > b_j2`, row `i` is
/// capped by `b_j2` and cannot reach `b_j1`. Repeats to a fixpoint; the
/// solution set is unchanged.
pub fn equivalence_reduce<S: Scalar>(a: &Relation<S>, b: &[S]) -> Relation<S> {
    let tol = S::tol();
    let mut out = a.clone();
    loop {
        let mut changed = false;
        for i in 0..out.rows() {
            for j1 in 0..out.cols() {
                let v = out.get(i, j1);
                if v == S::zero() || v < b[j1] - tol {
                    continue;
                }
                let capped = (0..out.cols()).any(|j2| b[j1] > b[j2] + tol && out.get(i, j2) > b[j2] + tol);
                if capped {
                    out.set(i, j1, S::zero());
                    changed = true;
                }
            }
        }
        if !changed {
            return out;
        }
    }
}
