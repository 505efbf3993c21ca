use relq_grade::{Scalar, TNorm};
use relq_relation::{compose_vec, Composition, Relation};

use crate::SolveError;

/// Input transform `max(0, (u - alpha) / (1 - alpha))`; identity at `alpha = 0`.
pub fn phi<S: Scalar>(alpha: S, u: S) -> S {
    ((u - alpha) / (S::one() - alpha)).max(S::zero())
}

/// Output transform `min(1, u / beta)`; identity at `beta = 1`.
pub fn psi<S: Scalar>(beta: S, u: S) -> S {
    (u / beta).min(S::one())
}

type Data<S> = [(Vec<S>, Vec<S>)];

fn dims<S: Scalar>(data: &Data<S>) -> Result<(usize, usize), SolveError> {
    let (x0, y0) = data.first().ok_or_else(|| SolveError::Domain("no data".into()))?;
    let (nx, ny) = (x0.len(), y0.len());
    if nx == 0 || ny == 0 {
        return Err(SolveError::Domain("empty vectors".into()));
    }
    if data.iter().any(|(x, y)| x.len() != nx || y.len() != ny) {
        return Err(SolveError::Domain("data vectors differ in length".into()));
    }
    Ok((nx, ny))
}

/// `R = min_k (phi(x(k)) -> psi(y(k)))` with the residuum of `t`.
pub fn shift_relation<S: Scalar>(data: &Data<S>, t: &TNorm<S>, alpha: S, beta: S) -> Result<Relation<S>, SolveError> {
    let (nx, ny) = dims(data)?;
    if !(alpha >= S::zero() && alpha < S::one() && beta > S::zero() && beta <= S::one()) {
        return Err(SolveError::Domain(format!("need 0 <= alpha < 1 and 0 < beta <= 1, got ({alpha}, {beta})")));
    }
    let mut r = Relation::filled(nx, ny, S::one())?;
    for (x, y) in data {
        for i in 0..nx {
            for j in 0..ny {
                let w = t.residuum(phi(alpha, x[i]), psi(beta, y[j]));
                r.set(i, j, r.get(i, j).min(w));
            }
        }
    }
    Ok(r)
}

/// Mean squared error of `x(k) o R` against `y(k)`.
pub fn mse<S: Scalar>(data: &Data<S>, t: &TNorm<S>, r: &Relation<S>) -> Result<S, SolveError> {
    let (_, ny) = dims(data)?;
    let spec = Composition::SupT(*t);
    let mut total = S::zero();
    for (x, y) in data {
        let got = compose_vec(&spec, x, r)?;
        total = total + got.iter().zip(y).fold(S::zero(), |acc, (&g, &w)| acc + (g - w) * (g - w));
    }
    Ok(total / S::lit((data.len() * ny) as f64))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftFit<S> {
    pub r: Relation<S>,
    pub alpha: S,
    pub beta: S,
    pub mse: S,
    pub baseline_mse: S,
}

/// Grid search over the cut-off parameters, keeping the identity transforms
/// unless a pair does strictly better.
pub fn specificity_shift_fit<S: Scalar>(
    data: &Data<S>,
    t: &TNorm<S>,
    alpha_grid: &[S],
    beta_grid: &[S],
) -> Result<ShiftFit<S>, SolveError> {
    let r0 = shift_relation(data, t, S::zero(), S::one())?;
    let base = mse(data, t, &r0)?;
    let mut best = ShiftFit { r: r0, alpha: S::zero(), beta: S::one(), mse: base, baseline_mse: base };
    for &alpha in alpha_grid {
        for &beta in beta_grid {
            let r = shift_relation(data, t, alpha, beta)?;
            let e = mse(data, t, &r)?;
            if e < best.mse {
                best = ShiftFit { r, alpha, beta, mse: e, baseline_mse: base };
            }
        }
    }
    Ok(best)
}
