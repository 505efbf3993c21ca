use std::fmt;

use relq_grade::Scalar;

use crate::{align, neutro_compose_vec, neutro_min, Kind, NeutroError, NeutroGrade, NeutroMode, NeutroRelation};

/// The `@` step: `1` if `a <= b`, `b` if `a > b`.
///
/// A bottom `a` is below everything. Other cross-kind pairs are
/// incomparable: absorbing mode returns `I`; graded mode returns an
/// indeterminate carrying the `@` of the coefficients, so a real `1`
/// against `0.3I` gives `0.3I` and `0.5I` against `0.4` gives `0.4I`.
fn at<S: Scalar>(mode: NeutroMode, a: NeutroGrade<S>, b: NeutroGrade<S>) -> NeutroGrade<S> {
    let (a, b) = align(a, b);
    let coeff_at = if a.coeff <= b.coeff { S::one() } else { b.coeff };
    if a.kind == b.kind {
        if a.kind == Kind::Indet && mode == NeutroMode::Absorbing {
            // I <= I
            return NeutroGrade::one();
        }
        return if a.coeff <= b.coeff { NeutroGrade::one() } else { b };
    }
    match mode {
        NeutroMode::Absorbing => NeutroGrade::i(),
        NeutroMode::Graded => NeutroGrade { kind: Kind::Indet, coeff: coeff_at },
    }
}

fn check_dims<S: Scalar>(a: &NeutroRelation<S>, b: &[NeutroGrade<S>]) -> Result<(), NeutroError> {
    if a.cols() != b.len() {
        return Err(NeutroError::Dimension(format!("A has {} columns, b has {} entries", a.cols(), b.len())));
    }
    Ok(())
}

/// `x_i = min_j (a_ij @ b_j)` for `x o A = b`.
pub fn nre_candidate<S: Scalar>(
    a: &NeutroRelation<S>,
    b: &[NeutroGrade<S>],
    mode: NeutroMode,
) -> Result<Vec<NeutroGrade<S>>, NeutroError> {
    check_dims(a, b)?;
    Ok((0..a.rows())
        .map(|i| (0..a.cols()).fold(NeutroGrade::one(), |acc, j| neutro_min(mode, acc, at(mode, a.get(i, j), b[j]))))
        .collect())
}

/// `x o A = b` up to the scalar tolerance.
pub fn nre_is_solution<S: Scalar>(a: &NeutroRelation<S>, b: &[NeutroGrade<S>], x: &[NeutroGrade<S>], mode: NeutroMode) -> bool {
    match neutro_compose_vec(mode, x, a) {
        Ok(r) => r.len() == b.len() && r.iter().zip(b).all(|(v, w)| v.approx_eq(w, mode, S::tol())),
        Err(_) => false,
    }
}

/// The maximum solution of `x o A = b`, or [`NeutroError::Infeasible`].
pub fn nre_max_solution<S: Scalar>(
    a: &NeutroRelation<S>,
    b: &[NeutroGrade<S>],
    mode: NeutroMode,
) -> Result<Vec<NeutroGrade<S>>, NeutroError> {
    let x = nre_candidate(a, b, mode)?;
    if nre_is_solution(a, b, &x, mode) {
        Ok(x)
    } else {
        Err(NeutroError::Infeasible)
    }
}

/// The system split by the kind of `b_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct NreSplit<S: Scalar> {
    pub real_cols: Vec<usize>,
    pub indet_cols: Vec<usize>,
    /// Candidate from the real columns alone.
    pub x_real: Vec<NeutroGrade<S>>,
    /// Candidate from the indeterminate columns alone.
    pub x_indet: Vec<NeutroGrade<S>>,
    pub real_ok: bool,
    pub indet_ok: bool,
}

impl<S: Scalar> NreSplit<S> {
    /// The combined candidate `min(x_real, x_indet)`; the maximum solution
    /// when both halves check out.
    pub fn combined(&self, mode: NeutroMode) -> Vec<NeutroGrade<S>> {
        self.x_real.iter().zip(&self.x_indet).map(|(&p, &q)| neutro_min(mode, p, q)).collect()
    }
}

/// Solves the real and indeterminate parts of `b` separately.
///
/// Bottom entries of `b` count as real.
pub fn nre_split<S: Scalar>(
    a: &NeutroRelation<S>,
    b: &[NeutroGrade<S>],
    mode: NeutroMode,
) -> Result<NreSplit<S>, NeutroError> {
    check_dims(a, b)?;
    let (indet_cols, real_cols): (Vec<usize>, Vec<usize>) = (0..b.len()).partition(|&j| b[j].is_indet());
    let part = |cols: &[usize]| -> Result<(Vec<NeutroGrade<S>>, bool), NeutroError> {
        let sub = a.select_cols(cols);
        let bs: Vec<_> = cols.iter().map(|&j| b[j]).collect();
        let x = nre_candidate(&sub, &bs, mode)?;
        let ok = cols.is_empty() || nre_is_solution(&sub, &bs, &x, mode);
        Ok((x, ok))
    };
    let (x_real, real_ok) = part(&real_cols)?;
    let (x_indet, indet_ok) = part(&indet_cols)?;
    Ok(NreSplit { real_cols, indet_cols, x_real, x_indet, real_ok, indet_ok })
}

/// Entry of the N-pseudo-characteristic matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NSymbol {
    One,
    Zero,
    MinusOne,
    I,
    MinusI,
    /// `a_ij` and `b_j` are of different kinds.
    Incomparable,
}

impl fmt::Display for NSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NSymbol::One => "1",
            NSymbol::Zero => "0",
            NSymbol::MinusOne => "-1",
            NSymbol::I => "I",
            NSymbol::MinusI => "-I",
            NSymbol::Incomparable => "I?",
        })
    }
}

impl NSymbol {
    /// The plain `1 / 0 / -1` entry, if real.
    pub fn as_real(&self) -> Option<i8> {
        match self {
            NSymbol::One => Some(1),
            NSymbol::Zero => Some(0),
            NSymbol::MinusOne => Some(-1),
            _ => None,
        }
    }
}

/// Sign of `a_ij - b_j` (within tolerance), tagged `I` for two
/// indeterminates and [`NSymbol::Incomparable`] across kinds.
pub fn n_pseudo_char_matrix<S: Scalar>(
    a: &NeutroRelation<S>,
    b: &[NeutroGrade<S>],
) -> Result<Vec<Vec<NSymbol>>, NeutroError> {
    check_dims(a, b)?;
    Ok((0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| {
                    let (x, y) = align(a.get(i, j), b[j]);
                    if x.kind != y.kind {
                        return NSymbol::Incomparable;
                    }
                    let indet = x.kind == Kind::Indet;
                    if (x.coeff - y.coeff).abs() <= S::tol() {
                        NSymbol::Zero
                    } else if x.coeff > y.coeff {
                        if indet { NSymbol::I } else { NSymbol::One }
                    } else if indet {
                        NSymbol::MinusI
                    } else {
                        NSymbol::MinusOne
                    }
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = NeutroGrade<f64>;
    use NeutroMode::*;

    fn g(s: &str) -> G {
        s.parse().unwrap()
    }

    #[test]
    fn at_rule() {
        assert_eq!(at(Graded, g("0.5I"), g("0.4")), g("0.4I"));
        assert!(at(Absorbing, g("0.5I"), g("0.4")).is_indet());
        assert!(at(Graded, g("0.5I"), g("0.4")).is_indet());
        assert_eq!(at(Graded, g("1"), g("0.3I")), g("0.3I"));
        assert_eq!(at(Graded, g("0"), g("0.3I")), g("1"));
        assert_eq!(at(Graded, g("0.3I"), g("0.5I")), g("1"));
        assert_eq!(at(Graded, g("0.7I"), g("0.5I")), g("0.5I"));
        assert_eq!(at(Absorbing, g("0.7I"), g("0.5I")), g("1"));
        assert_eq!(at(Graded, g("0.7"), g("0.5")), g("0.5"));
        assert_eq!(at(Graded, g("0.7I"), g("0")), g("0"));
    }

    #[test]
    fn identity_returns_b() {
        let a = NeutroRelation::parse_rows(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]).unwrap();
        let b = vec![g("0.4"), g("0.3I"), g("I")];
        assert_eq!(nre_max_solution(&a, &b, Graded).unwrap(), b);
    }

    #[test]
    fn infeasible_is_reported() {
        let a = NeutroRelation::parse_rows(&[&["0.2"]]).unwrap();
        assert_eq!(nre_max_solution(&a, &[g("0.5")], Graded), Err(NeutroError::Infeasible));
        assert!(nre_max_solution(&a, &[g("0.5"), g("I")], Graded).is_err());
    }

    #[test]
    fn char_matrix_symbols() {
        let a = NeutroRelation::parse_rows(&[&["0.7I", "0.3", "0.2I", "0.5"], &["0.3I", "0.3", "0", "0.9"]]).unwrap();
        let b = vec![g("0.3I"), g("0.3I"), g("0.5I"), g("0.6")];
        let p = n_pseudo_char_matrix(&a, &b).unwrap();
        use NSymbol::*;
        assert_eq!(p, vec![vec![I, Incomparable, MinusI, MinusOne], vec![Zero, Incomparable, MinusI, One]]);
        assert_eq!(Incomparable.to_string(), "I?");
    }
}
