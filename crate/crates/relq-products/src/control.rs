use relq_grade::Scalar;

use crate::ProductError;

/// `IF x THEN u`, both membership vectors on discretized universes.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule<S> {
    pub x: Vec<S>,
    pub u: Vec<S>,
}

impl<S: Scalar> Rule<S> {
    pub fn new(x: Vec<S>, u: Vec<S>) -> Self {
        Rule { x, u }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControlMethod {
    /// `U(u) = max_i min(Λ_i, U_i(u))`.
    Simple,
    /// `R = ∩_i (X_i φ U_i)` with the Godel `φ`, then `U = X ∘ R` (sup-min).
    SupTFre,
    /// `R = ∪_i X_i × U_i`, then `U(u) = inf_x X(x) φ R(x, u)`.
    AdjointGodel,
}

impl ControlMethod {
    pub fn name(&self) -> &'static str {
        match self {
            ControlMethod::Simple => "simple",
            ControlMethod::SupTFre => "sup-t",
            ControlMethod::AdjointGodel => "adjoint",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "simple" => Some(ControlMethod::Simple),
            "sup-t" | "supt" => Some(ControlMethod::SupTFre),
            "adjoint" => Some(ControlMethod::AdjointGodel),
            _ => None,
        }
    }
}

fn godel<S: Scalar>(a: S, b: S) -> S {
    if a <= b { S::one() } else { b }
}

/// `Π(X / X_i) = sup_x min(X(x), X_i(x))`.
pub fn possibility<S: Scalar>(x: &[S], xi: &[S]) -> Result<S, ProductError> {
    if x.len() != xi.len() {
        return Err(ProductError::Domain(format!("input universe has {} points, rule has {}", x.len(), xi.len())));
    }
    Ok(x.iter().zip(xi).fold(S::zero(), |acc, (&a, &b)| acc.max(a.min(b))))
}

fn check<S: Scalar>(rules: &[Rule<S>], input: &[S]) -> Result<usize, ProductError> {
    let first = rules.first().ok_or_else(|| ProductError::Domain("empty rule base".into()))?;
    let nu = first.u.len();
    for r in rules {
        if r.x.len() != input.len() || r.u.len() != nu {
            return Err(ProductError::Domain("rules and input must share their universes".into()));
        }
    }
    Ok(nu)
}

pub fn mamdani_control<S: Scalar>(rules: &[Rule<S>], input: &[S], method: ControlMethod) -> Result<Vec<S>, ProductError> {
    let nu = check(rules, input)?;
    let nx = input.len();
    let out = match method {
        ControlMethod::Simple => {
            let lambda = rules.iter().map(|r| possibility(input, &r.x)).collect::<Result<Vec<S>, _>>()?;
            (0..nu)
                .map(|u| rules.iter().zip(&lambda).fold(S::zero(), |acc, (r, &l)| acc.max(l.min(r.u[u]))))
                .collect()
        }
        ControlMethod::SupTFre => (0..nu)
            .map(|u| {
                (0..nx).fold(S::zero(), |acc, x| {
                    let rel = rules.iter().fold(S::one(), |m, r| m.min(godel(r.x[x], r.u[u])));
                    acc.max(input[x].min(rel))
                })
            })
            .collect(),
        ControlMethod::AdjointGodel => (0..nu)
            .map(|u| {
                (0..nx).fold(S::one(), |acc, x| {
                    let rel = rules.iter().fold(S::zero(), |m, r| m.max(r.x[x].min(r.u[u])));
                    acc.min(godel(input[x], rel))
                })
            })
            .collect(),
    };
    Ok(out)
}

/// Centre of gravity `Σ u·U(u) / Σ U(u)`.
pub fn centroid<S: Scalar>(universe: &[S], control: &[S]) -> Result<S, ProductError> {
    if universe.len() != control.len() {
        return Err(ProductError::Domain(format!("{} universe points, {} grades", universe.len(), control.len())));
    }
    let mass = control.iter().fold(S::zero(), |a, &v| a + v);
    if mass <= S::zero() {
        return Err(ProductError::EmptyControl);
    }
    Ok(universe.iter().zip(control).fold(S::zero(), |a, (&u, &v)| a + u * v) / mass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_rule_clips_at_height() {
        let x = vec![0.2, 0.7, 0.4];
        let r = Rule::new(x.clone(), vec![0.1, 1.0, 0.5]);
        let u = mamdani_control(&[r], &x, ControlMethod::Simple).unwrap();
        assert_eq!(u, vec![0.1, 0.7, 0.5]);
    }

    #[test]
    fn crisp_input_possibility() {
        let xi = [0.3, 0.8, 0.1];
        assert_eq!(possibility(&[0., 1., 0.], &xi).unwrap(), 0.8);
    }

    #[test]
    fn sup_t_on_crisp_input() {
        // a crisp input picks one row of the relation
        let rules = [Rule::new(vec![1.0, 0.2], vec![0.6, 1.0]), Rule::new(vec![0.0, 1.0], vec![1.0, 0.3])];
        let u = mamdani_control(&rules, &[1.0, 0.0], ControlMethod::SupTFre).unwrap();
        assert_eq!(u, vec![0.6, 1.0]);
        let u = mamdani_control(&rules, &[0.0, 1.0], ControlMethod::SupTFre).unwrap();
        assert_eq!(u, vec![1.0, 0.3]);
    }

    #[test]
    fn universes_must_match() {
        let rules = [Rule::new(vec![1.0, 0.2], vec![0.6])];
        assert!(mamdani_control(&rules, &[1.0], ControlMethod::Simple).is_err());
        assert!(mamdani_control::<f64>(&[], &[1.0], ControlMethod::Simple).is_err());
    }

    #[test]
    fn centre_of_gravity() {
        assert_eq!(centroid(&[0.0, 1.0, 2.0], &[0.0, 1.0, 1.0]).unwrap(), 1.5);
        assert!(matches!(centroid(&[0.0, 1.0], &[0.0, 0.0]), Err(ProductError::EmptyControl)));
    }

    #[test]
    fn method_names() {
        for m in [ControlMethod::Simple, ControlMethod::SupTFre, ControlMethod::AdjointGodel] {
            assert_eq!(ControlMethod::from_name(m.name()), Some(m));
        }
    }
}
