use crate::{GradeError, Scalar, TNorm};

/// Graded inclusion `inf_x w_t(A(x), B(x))`.
pub fn inclusion_degree<S: Scalar>(t: &TNorm<S>, a: &[S], b: &[S]) -> Result<S, GradeError> {
    if a.len() != b.len() {
        return Err(GradeError::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter()
        .zip(b)
        .map(|(&x, &y)| t.residuum(x, y))
        .fold(S::one(), |acc, v| acc.min(v)))
}

/// Graded equality: t-conjunction of the two inclusions.
pub fn equivalence_degree<S: Scalar>(t: &TNorm<S>, a: &[S], b: &[S]) -> Result<S, GradeError> {
    Ok(t.apply(inclusion_degree(t, a, b)?, inclusion_degree(t, b, a)?))
}

/// Distinguishability `Q_t(A, B) = 1 - [A ==_t B]`.
pub fn q_metric<S: Scalar>(t: &TNorm<S>, a: &[S], b: &[S]) -> Result<S, GradeError> {
    Ok(S::one() - equivalence_degree(t, a, b)?)
}

/// Closed form of `Q_t` for the Lukasiewicz norm.
pub fn q_lukasiewicz_closed<S: Scalar>(a: &[S], b: &[S]) -> Result<S, GradeError> {
    if a.len() != b.len() {
        return Err(GradeError::LengthMismatch(a.len(), b.len()));
    }
    let excess = |p: &[S], q: &[S]| {
        p.iter()
            .zip(q)
            .map(|(&x, &y)| x - y)
            .fold(S::zero(), |acc, v| acc.max(v))
    };
    Ok((excess(a, b) + excess(b, a)).clamp01())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_extremes() {
        let l = TNorm::<f64>::Lukasiewicz;
        let v = [0.2, 0.9, 0.4];
        assert_eq!(q_metric(&l, &v, &v).unwrap(), 0.0);
        assert_eq!(q_metric(&l, &[1.0], &[0.0]).unwrap(), 1.0);
        assert!(q_metric(&l, &[1.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn lukasiewicz_closed_form_agrees() {
        let l = TNorm::<f64>::Lukasiewicz;
        let a = [0.1, 0.8, 0.5];
        let b = [0.3, 0.6, 0.5];
        let direct = q_metric(&l, &a, &b).unwrap();
        assert!((direct - q_lukasiewicz_closed(&a, &b).unwrap()).abs() < 1e-12);
        assert!((direct - 0.4).abs() < 1e-12);
    }

    #[test]
    fn godel_is_strict() {
        // differing supports under min give full distinguishability
        let g = TNorm::<f64>::Min;
        assert_eq!(q_metric(&g, &[0.0, 0.5], &[0.1, 0.5]).unwrap(), 1.0);
    }

    #[test]
    fn drastic_triangle_failure_exists() {
        let d = TNorm::<f64>::Drastic;
        let (a, b, c) = ([1.0], [0.9], [0.5]);
        let ac = q_metric(&d, &a, &c).unwrap();
        let ab = q_metric(&d, &a, &b).unwrap();
        let bc = q_metric(&d, &b, &c).unwrap();
        assert!(ac > ab + bc);
    }
}
